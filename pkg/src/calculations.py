import json
import logging
import math
import os
import time
from functools import reduce, wraps

from src.errors import ConfigError, IntegrityError

logger = logging.getLogger(__name__)

CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), "config.json")

DEFAULT_CONFIG = {
    "Log File": "app.log",
    "Log Level": "WARNING",
    "Spill Directory": None,
    "Memory Budget": 200000,
    "Jobs": 1,
    "Euler Class": [1, 2],
}


def get_dictionary(directory):
    """Get dictionary from json file"""
    with open(directory, "r") as file:
        dictionary = json.load(file)
    return dictionary


def load_config(path=None):
    """Load the configuration file on top of the built-in defaults

    Args:
        path (str): Location of the json file. Defaults to the repository config.json

    Returns:
        dict: Complete configuration dictionary
    """
    path = path or CONFIG_PATH
    config = dict(DEFAULT_CONFIG)
    if not os.path.exists(path):
        logger.debug("no configuration at %s, using defaults", path)
        return config
    try:
        loaded = get_dictionary(path)
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(f"cannot read configuration {path}: {err}") from err
    if not isinstance(loaded, dict):
        raise ConfigError(f"configuration {path} must hold a json object")
    config.update(loaded)
    if int(config["Jobs"]) < 1:
        raise ConfigError("'Jobs' must be at least 1")
    return config


def exact_divide(numerator, denominator, what="quotient"):
    """Divide two integers, refusing to round

    Args:
        numerator (int): Dividend
        denominator (int): Nonzero divisor
        what (str): Name of the quantity, used in the error message

    Returns:
        int: The exact quotient
    """
    quotient, remainder = divmod(numerator, denominator)
    if remainder != 0:
        raise IntegrityError(
            f"{what}: {numerator} is not divisible by {denominator} (remainder {remainder})"
        )
    return quotient


def gcd_of(values):
    """Nonnegative gcd of a sequence of integers, 0 for an all-zero sequence"""
    return reduce(math.gcd, (abs(value) for value in values), 0)


def mod2(values):
    """Reduce an integer vector modulo 2"""
    return tuple(value % 2 for value in values)


def multiple_factor(vector, generator):
    """The integer t with vector = t * generator, if there is one

    Args:
        vector (tuple of int): Candidate multiple
        generator (tuple of int): Nonzero generator

    Returns:
        int: The factor t, or None when vector is not an integer multiple
    """
    if len(vector) != len(generator):
        return None
    pivot = next((index for index, value in enumerate(generator) if value != 0), None)
    if pivot is None:
        return None
    factor, remainder = divmod(vector[pivot], generator[pivot])
    if remainder != 0:
        return None
    if all(v == factor * g for v, g in zip(vector, generator)):
        return factor
    return None


def stringify_integers(value):
    """Recursively render every integer as a decimal string, leaving booleans alone"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {key: stringify_integers(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [stringify_integers(item) for item in value]
    return value


def timeit(method):
    """Time the execution of a method"""

    @wraps(method)
    def timed(*args, **kw):
        ts = time.perf_counter()
        result = method(*args, **kw)
        te = time.perf_counter()
        logger.debug("%r  %2.2f ms", method.__name__, (te - ts) * 1000)
        return result

    return timed
