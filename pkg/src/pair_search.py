"""Search for diffeomorphic complete intersection threefolds with different c1

Phase one buckets multidegrees on the closed-form key (d, m, k mod 2). Phase two
computes the Euler number through the ring only inside buckets holding at least
two multidegrees, and keeps groups with equal (d, m, e, k mod 2) but at least two
distinct values of k.

When the phase-one records outgrow the memory budget they are written to sorted
text runs and merged back as a stream. With an explicit spill directory every
finished leading-degree shard is recorded in checkpoint.json so a rerun with the
same bounds picks up where it stopped.
"""

import heapq
import json
import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from itertools import groupby, repeat
from operator import mul

from src.calculations import get_dictionary, stringify_integers, timeit
from src.complete_intersection import (
    CompleteIntersectionSpec,
    WallInvariants,
    are_diffeomorphic_wall,
    ci3_hodge,
    hodge_equal,
    wall_invariants,
)
from src.errors import DomainError, IntegrityError
from src.fixtures import TABLE2_ROWS

logger = logging.getLogger(__name__)

CANDIDATE_LABEL = "Wall-equivalent candidates"
CHECKPOINT_NAME = "checkpoint.json"


@dataclass(frozen=True)
class SearchBounds:
    """Limits of the multidegree enumeration

    Args:
        max_codim (int): Largest number r of equations
        max_degree (int): Largest single degree
        max_total_degree (int): Largest product of the degrees, None for no limit
        memory_budget (int): Phase-one records held in memory before spilling, None for no limit
    """

    max_codim: int
    max_degree: int
    max_total_degree: int = None
    memory_budget: int = None

    def __post_init__(self):
        if self.max_codim < 1:
            raise DomainError(f"max_codim must be at least 1, got {self.max_codim}")
        if self.max_degree < 2:
            raise DomainError(f"max_degree must be at least 2, got {self.max_degree}")
        if self.max_total_degree is not None and self.max_total_degree < 2:
            raise DomainError(f"max_total_degree must be at least 2, got {self.max_total_degree}")
        if self.memory_budget is not None and self.memory_budget < 1:
            raise DomainError(f"memory_budget must be positive, got {self.memory_budget}")

    def admits(self, degrees):
        return (
            1 <= len(degrees) <= self.max_codim
            and degrees[0] <= self.max_degree
            and (self.max_total_degree is None or _product(degrees) <= self.max_total_degree)
        )

    def signature(self):
        """The fields that determine the enumerated set"""
        return stringify_integers(
            {
                "max_codim": self.max_codim,
                "max_degree": self.max_degree,
                "max_total_degree": self.max_total_degree,
            }
        )


@dataclass(frozen=True, order=True)
class CollisionKey:
    d: int
    m: int
    e: int
    k_parity: int

    @classmethod
    def from_wall(cls, w):
        return cls(*w.key)

    def to_json(self):
        return stringify_integers(
            {"d": self.d, "m": self.m, "e": self.e, "k_parity": self.k_parity}
        )

    @classmethod
    def from_json(cls, data):
        return cls(int(data["d"]), int(data["m"]), int(data["e"]), int(data["k_parity"]))


@dataclass(frozen=True)
class CollisionGroup:
    key: CollisionKey
    members: tuple
    label: str = CANDIDATE_LABEL

    def to_json(self):
        return {
            "label": self.label,
            "key": self.key.to_json(),
            "members": [w.to_json() for w in self.members],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            key=CollisionKey.from_json(data["key"]),
            members=tuple(WallInvariants.from_json(w) for w in data["members"]),
            label=data.get("label", CANDIDATE_LABEL),
        )


def _product(degrees):
    return reduce(mul, degrees, 1)


def enumeration_order(degrees):
    """Sort key of the enumeration: by codimension, then lexicographically"""
    return (len(degrees), tuple(degrees))


def cheap_key(degrees):
    """(d, m, k mod 2) from the closed forms, no ring arithmetic"""
    r = len(degrees)
    k = 4 + r - sum(degrees)
    m = 4 + r - sum(x * x for x in degrees)
    return (_product(degrees), m, k % 2)


def _descending(length, ceiling, budget):
    """Descending tuples of the given length with entries in [2, ceiling] and product <= budget"""
    if length == 0:
        yield ()
        return
    for first in range(2, ceiling + 1):
        if budget is not None and first * 2 ** (length - 1) > budget:
            break
        rest_budget = None if budget is None else budget // first
        for rest in _descending(length - 1, first, rest_budget):
            yield (first,) + rest


def _shard(bounds, leading):
    """Every admissible multidegree with first entry `leading`, in enumeration order"""
    budget = bounds.max_total_degree
    for length in range(1, bounds.max_codim + 1):
        if budget is not None and leading * 2 ** (length - 1) > budget:
            break
        rest_budget = None if budget is None else budget // leading
        for rest in _descending(length - 1, leading, rest_budget):
            yield (leading,) + rest


def enumerate_multidegrees(bounds):
    """Stream every descending multidegree within the bounds exactly once

    Args:
        bounds (SearchBounds): Enumeration limits

    Yields:
        tuple of int: d_1 >= ... >= d_r >= 2, ordered by r and then lexicographically
    """
    budget = bounds.max_total_degree
    for length in range(1, bounds.max_codim + 1):
        if budget is not None and 2**length > budget:
            break
        yield from _descending(length, bounds.max_degree, budget)


def _shard_records(bounds, leading):
    """Phase-one records of one leading-degree shard, sorted"""
    records = [(cheap_key(degrees), degrees) for degrees in _shard(bounds, leading)]
    records.sort(key=_record_order)
    return records


def _record_order(record):
    return (record[0], enumeration_order(record[1]))


def _map_shards(bounds, leadings, jobs):
    if jobs <= 1:
        for leading in leadings:
            yield leading, _shard_records(bounds, leading)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from zip(leadings, pool.map(_shard_records, repeat(bounds), leadings))


class SpillRuns:
    def __init__(self, directory, budget=None, bounds=None, candidates=None):
        """Sorted on-disk runs of phase-one records

        One record per line: d, m and k mod 2 as fixed-width decimal fields, then
        the comma separated degrees. When `bounds` is given, finished shards are
        tracked in checkpoint.json.

        Args:
            directory (str): Where the runs and the checkpoint live
            budget (int): Largest number of records per run
            bounds (SearchBounds): Bounds the checkpoint belongs to
            candidates (list of tuple): Canonical candidate multidegrees, if the search is restricted
        """
        self.directory = directory
        self.budget = budget
        self.bounds = bounds
        self.candidates = candidates
        self.paths = []
        self.finished = {}
        self._held = 0
        os.makedirs(directory, exist_ok=True)
        if bounds is not None:
            self._load_checkpoint()

    def signature(self):
        signature = self.bounds.signature()
        if self.candidates is not None:
            signature["candidates"] = stringify_integers([list(c) for c in self.candidates])
        return signature

    @property
    def checkpoint_path(self):
        return os.path.join(self.directory, CHECKPOINT_NAME)

    def _load_checkpoint(self):
        if not os.path.exists(self.checkpoint_path):
            return
        try:
            checkpoint = get_dictionary(self.checkpoint_path)
        except (OSError, json.JSONDecodeError):
            logger.warning("unreadable checkpoint in %s, starting over", self.directory)
            return
        if checkpoint.get("bounds") != self.signature():
            logger.warning("checkpoint in %s belongs to other bounds, starting over", self.directory)
            return
        for leading, names in checkpoint.get("finished", {}).items():
            paths = [os.path.join(self.directory, name) for name in names]
            if all(os.path.exists(path) for path in paths):
                self.finished[int(leading)] = names
                self.paths.extend(paths)
        logger.info("resuming with %d finished shards", len(self.finished))

    def _save_checkpoint(self):
        checkpoint = {
            "bounds": self.signature(),
            "finished": {str(leading): names for leading, names in sorted(self.finished.items())},
        }
        partial = self.checkpoint_path + ".tmp"
        with open(partial, "w") as file:
            json.dump(checkpoint, file, indent=1)
        os.replace(partial, self.checkpoint_path)

    def _write_run(self, name, records):
        path = os.path.join(self.directory, name)
        with open(path, "w") as file:
            for (d, m, parity), degrees in records:
                file.write(f"{d:>24d} {m:>24d} {parity:d} {','.join(map(str, degrees))}\n")
        self.paths.append(path)
        return name

    def add_shard(self, leading, records):
        """Write one sorted shard, split into runs of at most `budget` records"""
        size = self.budget or max(len(records), 1)
        names = [
            self._write_run(f"shard-{leading:04d}-{part:03d}.run", records[start : start + size])
            for part, start in enumerate(range(0, len(records), size))
        ]
        self._held += len(records)
        if self.bounds is not None:
            self.finished[leading] = names
            self._save_checkpoint()
        logger.debug("shard %d spilled into %d runs", leading, len(names))

    def add_records(self, records):
        """Spill records that were held in memory"""
        records = sorted(records, key=_record_order)
        self._write_run(f"held-{len(self.paths):04d}.run", records)
        self._held += len(records)

    @staticmethod
    def _read(path):
        with open(path) as file:
            for line in file:
                d, m, parity, degrees = line.split()
                yield (int(d), int(m), int(parity)), tuple(int(x) for x in degrees.split(","))

    def buckets(self):
        """Multidegrees sharing a phase-one key, for keys held at least twice"""
        logger.info("merging %d runs", len(self.paths))
        merged = heapq.merge(*(self._read(path) for path in self.paths), key=_record_order)
        for _, records in groupby(merged, key=lambda record: record[0]):
            bucket = [degrees for _, degrees in records]
            if len(bucket) > 1:
                yield bucket


def _buckets_in_memory(records):
    grouped = {}
    for key, degrees in records:
        grouped.setdefault(key, []).append(degrees)
    logger.info("phase one: %d records in %d buckets", len(records), len(grouped))
    return [bucket for bucket in grouped.values() if len(bucket) > 1]


def _canonical_candidates(bounds, candidates):
    canonical = []
    for degrees in candidates:
        degrees = tuple(sorted((int(x) for x in degrees), reverse=True))
        if not degrees or degrees[-1] < 2:
            raise DomainError(f"candidate {degrees} needs degrees of at least 2")
        if not bounds.admits(degrees):
            raise DomainError(f"candidate {degrees} lies outside the search bounds")
        if degrees not in canonical:
            canonical.append(degrees)
    return sorted(canonical, key=enumeration_order)


def _checked_group(key, members):
    members = tuple(sorted(members, key=lambda w: enumeration_order(w.degrees)))
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if not are_diffeomorphic_wall(a, b):
                raise IntegrityError(f"{a.degrees} and {b.degrees} share no Wall key")
            if a.k == b.k:
                continue
            if hodge_equal(a, b) or ci3_hodge(a, a.d) == ci3_hodge(b, b.d):
                raise IntegrityError(
                    f"{a.degrees} and {b.degrees} have distinct c1 but equal Hodge numbers"
                )
    return CollisionGroup(key=key, members=members)


def _group_by_wall_key(invariants):
    grouped = {}
    for w in invariants:
        grouped.setdefault(CollisionKey.from_wall(w), []).append(w)
    return [
        _checked_group(key, members)
        for key, members in grouped.items()
        if len({w.k for w in members}) > 1
    ]


def _bucket_invariants(bucket):
    """Wall invariants of one phase-one bucket, through the ring"""
    return [wall_invariants(CompleteIntersectionSpec.threefold(degrees)) for degrees in bucket]


def _phase_two(buckets, jobs=1):
    buckets = list(buckets)
    examined = sum(len(bucket) for bucket in buckets)
    if jobs > 1 and len(buckets) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            computed = list(pool.map(_bucket_invariants, buckets))
    else:
        computed = [_bucket_invariants(bucket) for bucket in buckets]
    groups = []
    for invariants in computed:
        groups.extend(_group_by_wall_key(invariants))
    logger.info("phase two: Euler numbers for %d multidegrees", examined)
    groups.sort(key=lambda group: group.key)
    if groups:
        logger.warning(
            "%d groups reported as %s; torsion-sensitive cases are not separated",
            len(groups),
            CANDIDATE_LABEL,
        )
    return groups


def _candidate_shards(canonical):
    """Candidate records grouped by leading degree, each shard sorted"""
    shards = {}
    for degrees in canonical:
        shards.setdefault(degrees[0], []).append((cheap_key(degrees), degrees))
    for records in shards.values():
        records.sort(key=_record_order)
    return shards


def _shard_stream(bounds, leadings, jobs, candidate_shards):
    if candidate_shards is None:
        yield from _map_shards(bounds, leadings, jobs)
        return
    for leading in leadings:
        yield leading, candidate_shards[leading]


def _phase_one(bounds, jobs, spill_dir, candidates=None):
    if candidates is None:
        candidate_shards = None
        leadings = list(range(2, bounds.max_degree + 1))
    else:
        candidate_shards = _candidate_shards(candidates)
        leadings = sorted(candidate_shards)
    if spill_dir is not None:
        runs = SpillRuns(spill_dir, bounds.memory_budget, bounds, candidates)
        pending = [leading for leading in leadings if leading not in runs.finished]
        for leading, records in _shard_stream(bounds, pending, jobs, candidate_shards):
            runs.add_shard(leading, records)
        return list(runs.buckets())

    held = []
    with tempfile.TemporaryDirectory(prefix="pair-search-") as scratch:
        runs = None
        for leading, records in _shard_stream(bounds, leadings, jobs, candidate_shards):
            if runs is None and bounds.memory_budget is not None:
                if len(held) + len(records) > bounds.memory_budget:
                    logger.info("memory budget %d exceeded, spilling", bounds.memory_budget)
                    runs = SpillRuns(scratch, bounds.memory_budget)
                    if held:
                        runs.add_records(held)
                    held = []
            if runs is None:
                held.extend(records)
            else:
                runs.add_shard(leading, records)
        if runs is not None:
            return list(runs.buckets())
    return _buckets_in_memory(held)


@timeit
def search_collisions(bounds, candidates=None, jobs=1, spill_dir=None):
    """Groups of Wall-equivalent threefolds with distinct first Chern classes

    Args:
        bounds (SearchBounds): Enumeration limits
        candidates (list of tuple): Restrict the search to these multidegrees
        jobs (int): Worker processes for both phases
        spill_dir (str): Directory for runs and the checkpoint; None keeps records in memory

    Returns:
        list of CollisionGroup: Sorted by (d, m, e, k mod 2), members in enumeration order
    """
    if jobs < 1:
        raise DomainError(f"jobs must be at least 1, got {jobs}")
    if candidates is not None:
        candidates = _canonical_candidates(bounds, candidates)
    buckets = _phase_one(bounds, jobs, spill_dir, candidates)
    return _phase_two(buckets, jobs)


def search_collisions_single_phase(bounds):
    """Reference search computing the full Wall key for every multidegree"""
    invariants = [
        wall_invariants(CompleteIntersectionSpec.threefold(degrees))
        for degrees in enumerate_multidegrees(bounds)
    ]
    groups = _group_by_wall_key(invariants)
    groups.sort(key=lambda group: group.key)
    return groups


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    diff: tuple = ()

    def __bool__(self):
        return self.ok


def verify_known_pairs(rows=None):
    """Recompute (d, p1, e, c1) for the known pairs and compare with the published values

    Args:
        rows (list of dict): Rows with keys degrees, d, p1, e, c1; defaults to the published table

    Returns:
        VerificationResult: ok and one diff line per mismatching integer
    """
    rows = TABLE2_ROWS if rows is None else rows
    diff = []
    for row in rows:
        degrees = tuple(row["degrees"])
        w = wall_invariants(CompleteIntersectionSpec.threefold(degrees))
        computed = {"d": w.d, "p1": w.m, "e": w.e, "c1": w.k}
        for name, value in computed.items():
            if value != row[name]:
                diff.append(f"{degrees}: {name} expected {row[name]}, computed {value}")
    for line in diff:
        logger.warning(line)
    return VerificationResult(ok=not diff, diff=tuple(diff))
