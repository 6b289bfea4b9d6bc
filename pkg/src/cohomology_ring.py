"""Integer cohomology of a product of projective spaces

H*(CP^{n_1} x ... x CP^{n_r}; Z) = Z[x_1, ..., x_r] / (x_1^{n_1+1}, ..., x_r^{n_r+1})

Classes are stored sparsely as a map from exponent vectors to Python integers,
so coefficients never overflow. Everything here is a pure value: operations
return new classes and never touch their inputs.
"""

import logging
import operator
from dataclasses import dataclass
from itertools import product

from src.errors import DomainError, IntegrityError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AmbientSpace:
    """A product of projective spaces CP^{n_1} x ... x CP^{n_r}

    Args:
        factor_dims (tuple of int): Complex dimensions (n_1, ..., n_r) of the factors
    """

    factor_dims: tuple

    def __post_init__(self):
        dims = tuple(self.factor_dims)
        if len(dims) == 0:
            raise DomainError("an ambient space needs at least one factor")
        if any(not isinstance(n, int) or isinstance(n, bool) or n < 1 for n in dims):
            raise DomainError(f"factor dimensions must be positive integers, got {dims}")
        object.__setattr__(self, "factor_dims", dims)

    @property
    def rank(self):
        """Number of factors r"""
        return len(self.factor_dims)

    @property
    def dimension(self):
        """Complex dimension of the product"""
        return sum(self.factor_dims)

    @property
    def top_exponent(self):
        """Exponent vector of the top monomial x_1^{n_1}...x_r^{n_r}"""
        return self.factor_dims

    def zero(self):
        return CohomologyClass(self)

    def one(self):
        return self.constant(1)

    def constant(self, value):
        """The class value * 1 in degree zero"""
        return CohomologyClass(self, {(0,) * self.rank: value})

    def generator(self, index):
        """The hyperplane class x_{index+1} pulled back from the factor at position index"""
        if not 0 <= index < self.rank:
            raise DomainError(f"factor index {index} out of range for {self}")
        exponent = tuple(1 if i == index else 0 for i in range(self.rank))
        return CohomologyClass(self, {exponent: 1})

    def linear(self, coefficients):
        """The degree-one class sum_i coefficients[i] * x_i"""
        if len(coefficients) != self.rank:
            raise DomainError(
                f"expected {self.rank} coefficients, got {len(coefficients)}"
            )
        terms = {}
        for index, value in enumerate(coefficients):
            exponent = tuple(1 if i == index else 0 for i in range(self.rank))
            terms[exponent] = value
        return CohomologyClass(self, terms)

    def monomials(self):
        """Every exponent vector allowed by the truncation, in lexicographic order"""
        return product(*(range(n + 1) for n in self.factor_dims))

    def __str__(self):
        return " x ".join(f"CP^{n}" for n in self.factor_dims)


class CohomologyClass:
    def __init__(self, ambient, terms=None):
        """An element of the truncated cohomology ring of an ambient space

        Monomials beyond the truncation are dropped on construction, as are zero
        coefficients, so two equal classes always have equal term maps.

        Args:
            ambient (AmbientSpace): The ambient product of projective spaces
            terms (dict): Map from exponent vectors (tuples of int) to integer coefficients
        """
        self.ambient = ambient
        canonical = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != ambient.rank:
                raise DomainError(
                    f"exponent {exponent} does not match ambient {ambient}"
                )
            if any(e < 0 for e in exponent):
                raise DomainError(f"negative exponent {exponent}")
            try:
                coefficient = operator.index(coefficient)
            except TypeError:
                raise DomainError(f"coefficient {coefficient!r} of {exponent} is not an integer")
            if any(e > n for e, n in zip(exponent, ambient.factor_dims)):
                continue
            if coefficient:
                canonical[exponent] = canonical.get(exponent, 0) + coefficient
                if canonical[exponent] == 0:
                    del canonical[exponent]
        self._terms = canonical

    @property
    def terms(self):
        """A copy of the exponent-to-coefficient map"""
        return dict(self._terms)

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), 0)

    @property
    def constant_term(self):
        return self.coefficient((0,) * self.ambient.rank)

    def is_zero(self):
        return not self._terms

    def degree_part(self, degree):
        """The homogeneous component of total complex degree `degree`"""
        return CohomologyClass(
            self.ambient,
            {e: c for e, c in self._terms.items() if sum(e) == degree},
        )

    def linear_coefficients(self):
        """Coefficients of x_1, ..., x_r in the degree-one part"""
        rank = self.ambient.rank
        return tuple(
            self.coefficient(tuple(1 if i == index else 0 for i in range(rank)))
            for index in range(rank)
        )

    def _check_ambient(self, other):
        if not isinstance(other, CohomologyClass):
            raise DomainError(f"cannot combine a class with {type(other).__name__}")
        if other.ambient != self.ambient:
            raise DomainError(
                f"ambient mismatch: {self.ambient} versus {other.ambient}"
            )

    def _coerce(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ambient.constant(other)
        self._check_ambient(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            terms[exponent] = terms.get(exponent, 0) + coefficient
        return CohomologyClass(self.ambient, terms)

    __radd__ = __add__

    def __neg__(self):
        return CohomologyClass(self.ambient, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return CohomologyClass(
                self.ambient, {e: c * other for e, c in self._terms.items()}
            )
        self._check_ambient(other)
        bounds = self.ambient.factor_dims
        terms = {}
        for left, a in self._terms.items():
            for right, b in other._terms.items():
                exponent = tuple(i + j for i, j in zip(left, right))
                if any(e > n for e, n in zip(exponent, bounds)):
                    continue
                terms[exponent] = terms.get(exponent, 0) + a * b
        return CohomologyClass(self.ambient, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError("classes can only be raised to nonnegative integer powers")
        result = self.ambient.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = self.ambient.constant(other)
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.ambient == other.ambient and self._terms == other._terms

    def __hash__(self):
        return hash((self.ambient, frozenset(self._terms.items())))

    def __repr__(self):
        return f"CohomologyClass({self.ambient}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exponent in sorted(self._terms):
            coefficient = self._terms[exponent]
            factors = []
            for index, power in enumerate(exponent):
                if power == 1:
                    factors.append(f"x{index + 1}")
                elif power > 1:
                    factors.append(f"x{index + 1}^{power}")
            monomial = "*".join(factors)
            magnitude = abs(coefficient)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            sign = "-" if coefficient < 0 else "+"
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)


def class_add(a, b):
    """Sum of two classes on the same ambient"""
    a._check_ambient(b)
    return a + b


def class_mul(a, b):
    """Cup product of two classes, truncated by x_i^{n_i+1} = 0"""
    a._check_ambient(b)
    return a * b


def unit_inverse(a):
    """Multiplicative inverse of a class with constant term 1

    The augmentation ideal is nilpotent in the truncated ring, so the geometric
    series sum_j (1 - a)^j stops after at most dim(ambient) terms.

    Args:
        a (CohomologyClass): Class whose degree-zero coefficient equals 1

    Returns:
        CohomologyClass: b with a * b = 1
    """
    if a.constant_term != 1:
        raise DomainError(
            f"only classes with constant term 1 are inverted, got {a.constant_term}"
        )
    one = a.ambient.one()
    nilpotent = one - a
    power = one
    inverse = one
    for _ in range(a.ambient.dimension):
        power = power * nilpotent
        if power.is_zero():
            break
        inverse = inverse + power
    if a * inverse != one:
        raise IntegrityError(f"geometric series failed to invert {a}")
    return inverse


def integrate(a):
    """Evaluate a class on the fundamental class of the ambient (top coefficient)"""
    return a.coefficient(a.ambient.top_exponent)
