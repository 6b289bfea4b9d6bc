"""Tuples of surfaces with equal Euler number and distinct c1^2

Hypersurfaces of bidegree (p, 3q) in CP^1 x CP^2 have

    c1   = (2 - p) x_1 + (3 - 3q) x_2
    c1^2 = 9 (q - 1)(3pq - p - 4q)
    c2   = 3 (p (3q - 1)^2 - 6q (q - 1)).

Choosing q values with pairwise coprime 3q - 1 and solving
n = 6q(1 - q) mod (3q - 1)^2 for all of them at once gives c2 = 3n for every q,
with p recovered by exact division.
"""

import logging
import math
from dataclasses import dataclass
from functools import reduce
from operator import mul

from src.calculations import exact_divide, gcd_of, stringify_integers, timeit
from src.cohomology_ring import AmbientSpace
from src.complete_intersection import CompleteIntersectionSpec, MultiDegree, chern_numbers
from src.errors import DomainError, IntegrityError

logger = logging.getLogger(__name__)

P1_X_P2 = AmbientSpace((1, 2))


@dataclass(frozen=True)
class SurfaceInvariants:
    """Invariants of a simply connected compact complex surface

    Derived fields follow from c1^2 and c2 through Noether's formula and
    b1 = 0; use `from_chern` rather than filling them in by hand.

    Args:
        c1_coeffs (tuple of int): c1 in the family's basis of H^2
        c1sq (int): c1^2
        c2 (int): Euler number
        chiO (int): Holomorphic Euler characteristic
        b2 (int): Second Betti number
        h02 (int): Geometric genus
        h11 (int): h^{1,1}
        signature (int): (c1^2 - 2 c2) / 3
        spin (bool): Whether the surface is spin
        c1_div (int): Divisibility of c1 (0 when c1 = 0)
        ample_canonical (bool): Whether K is ample
        c1_div_exact (bool): False when only the parity of c1_div is known
    """

    c1_coeffs: tuple
    c1sq: int
    c2: int
    chiO: int
    b2: int
    h02: int
    h11: int
    signature: int
    spin: bool
    c1_div: int
    ample_canonical: bool
    c1_div_exact: bool = True

    @classmethod
    def from_chern(
        cls, c1_coeffs, c1sq, c2, ample_canonical, spin=None, c1_div=None, c1_div_exact=True
    ):
        """Build the invariant record from c1 and the two Chern numbers

        Args:
            c1_coeffs (tuple of int): c1 in a basis of H^2
            c1sq (int): c1^2
            c2 (int): Euler number
            ample_canonical (bool): Whether K is ample
            spin (bool): Defaults to c1 being even in the given basis
            c1_div (int): Defaults to the gcd of the coefficients
            c1_div_exact (bool): Whether c1_div is the true divisibility
        """
        c1_coeffs = tuple(int(c) for c in c1_coeffs)
        chiO = exact_divide(c1sq + c2, 12, "Noether's formula")
        signature = exact_divide(c1sq - 2 * c2, 3, "signature")
        b2 = c2 - 2
        h02 = chiO - 1
        h11 = b2 - 2 * h02
        if min(b2, h02, h11) < 0:
            raise IntegrityError(
                f"negative Hodge data b2={b2}, h02={h02}, h11={h11} from c1^2={c1sq}, c2={c2}"
            )
        if spin is None:
            spin = all(c % 2 == 0 for c in c1_coeffs)
        if c1_div is None:
            c1_div = gcd_of(c1_coeffs)
        return cls(
            c1_coeffs=c1_coeffs,
            c1sq=c1sq,
            c2=c2,
            chiO=chiO,
            b2=b2,
            h02=h02,
            h11=h11,
            signature=signature,
            spin=bool(spin),
            c1_div=c1_div,
            ample_canonical=bool(ample_canonical),
            c1_div_exact=bool(c1_div_exact),
        )

    def to_json(self):
        return stringify_integers(
            {
                "c1_coeffs": list(self.c1_coeffs),
                "c1sq": self.c1sq,
                "c2": self.c2,
                "chiO": self.chiO,
                "b2": self.b2,
                "h02": self.h02,
                "h11": self.h11,
                "signature": self.signature,
                "spin": self.spin,
                "c1_div": self.c1_div,
                "ample_canonical": self.ample_canonical,
                "c1_div_exact": self.c1_div_exact,
            }
        )

    @classmethod
    def from_json(cls, data):
        return cls(
            c1_coeffs=tuple(int(c) for c in data["c1_coeffs"]),
            c1sq=int(data["c1sq"]),
            c2=int(data["c2"]),
            chiO=int(data["chiO"]),
            b2=int(data["b2"]),
            h02=int(data["h02"]),
            h11=int(data["h11"]),
            signature=int(data["signature"]),
            spin=bool(data["spin"]),
            c1_div=int(data["c1_div"]),
            ample_canonical=bool(data["ample_canonical"]),
            c1_div_exact=bool(data.get("c1_div_exact", True)),
        )


@dataclass(frozen=True)
class HypersurfaceP1P2:
    """Hypersurface of bidegree (p, 3q) in CP^1 x CP^2"""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise DomainError(f"p and q must be positive, got p={self.p}, q={self.q}")

    @property
    def bidegree(self):
        return (self.p, 3 * self.q)

    def spec(self):
        return CompleteIntersectionSpec(P1_X_P2, (MultiDegree(self.bidegree),))

    def invariants(self):
        return surface_invariants(self.p, self.q)


@dataclass(frozen=True)
class TupleRow:
    q: int
    p: int
    c1sq: int
    c2: int
    c1_div: int

    def to_json(self):
        return stringify_integers(
            {"q": self.q, "p": self.p, "c1sq": self.c1sq, "c2": self.c2, "d_c1": self.c1_div}
        )

    @classmethod
    def from_json(cls, data):
        return cls(
            q=int(data["q"]),
            p=int(data["p"]),
            c1sq=int(data["c1sq"]),
            c2=int(data["c2"]),
            c1_div=int(data["d_c1"]),
        )


@dataclass(frozen=True)
class TupleSearchResult:
    """Outcome of a congruence search

    Args:
        q_list (tuple of int): The q values, ascending
        n (int): Common value c2 / 3
        rows (tuple of TupleRow): One row per q
        groups (tuple of tuple of int): q values grouped by equal c1^2, in order of first appearance
    """

    q_list: tuple
    n: int
    rows: tuple
    groups: tuple

    def to_json(self):
        return {
            "q_list": stringify_integers(list(self.q_list)),
            "n": str(self.n),
            "rows": [row.to_json() for row in self.rows],
            "groups": stringify_integers([list(group) for group in self.groups]),
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            q_list=tuple(int(q) for q in data["q_list"]),
            n=int(data["n"]),
            rows=tuple(TupleRow.from_json(row) for row in data["rows"]),
            groups=tuple(tuple(int(q) for q in group) for group in data["groups"]),
        )


def c1sq_closed_form(p, q):
    return 9 * (q - 1) * (3 * p * q - p - 4 * q)


def c2_closed_form(p, q):
    return 3 * (p * (3 * q - 1) ** 2 - 6 * q * (q - 1))


def surface_invariants(p, q):
    """Invariants of the bidegree (p, 3q) hypersurface from the closed forms

    Args:
        p (int): Degree on CP^1
        q (int): A third of the degree on CP^2

    Returns:
        SurfaceInvariants: The invariant record, c1 in the basis (x_1, x_2)
    """
    if p < 1 or q < 1:
        raise DomainError(f"p and q must be positive, got p={p}, q={q}")
    return SurfaceInvariants.from_chern(
        c1_coeffs=(2 - p, 3 - 3 * q),
        c1sq=c1sq_closed_form(p, q),
        c2=c2_closed_form(p, q),
        ample_canonical=p > 2 and q > 1,
    )


def pipeline_cross_check(p, q):
    """Whether the adjunction computation reproduces the closed forms for (p, 3q)"""
    report = chern_numbers(HypersurfaceP1P2(p, q).spec())
    matches = (
        report.c1.linear_coefficients() == (2 - p, 3 - 3 * q)
        and report.numbers["c1sq"] == c1sq_closed_form(p, q)
        and report.numbers["c2"] == c2_closed_form(p, q)
    )
    if not matches:
        logger.error("closed forms disagree with the ring computation at p=%s, q=%s", p, q)
    return matches


def coprime_q_selection(count, parity=None, start=2):
    """Greedy ascending choice of q values with pairwise coprime 3q - 1

    Args:
        count (int): Number of values to select
        parity (str): "even" or "odd" to restrict q, None for no restriction
        start (int): Smallest q considered

    Returns:
        list of int: The first `count` admissible values
    """
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    if parity not in (None, "even", "odd"):
        raise DomainError(f"parity must be 'even', 'odd' or None, got {parity!r}")
    selected = []
    moduli = []
    q = start
    while len(selected) < count:
        if parity == "even" and q % 2:
            q += 1
            continue
        if parity == "odd" and not q % 2:
            q += 1
            continue
        candidate = 3 * q - 1
        if all(math.gcd(candidate, other) == 1 for other in moduli):
            selected.append(q)
            moduli.append(candidate)
        q += 1
    return selected


def crt_smallest_positive(pairs):
    """Smallest positive solution of a system of congruences with coprime moduli

    Args:
        pairs (list of tuple): (residue, modulus) pairs, moduli >= 2 and pairwise coprime

    Returns:
        int: The unique solution in [1, product of the moduli]
    """
    pairs = [(int(residue), int(modulus)) for residue, modulus in pairs]
    if not pairs:
        raise DomainError("at least one congruence is needed")
    moduli = [modulus for _, modulus in pairs]
    if any(modulus < 2 for modulus in moduli):
        raise DomainError(f"moduli must be at least 2, got {moduli}")
    for i, a in enumerate(moduli):
        for b in moduli[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise DomainError(f"moduli {a} and {b} are not coprime")
    product = reduce(mul, moduli, 1)
    solution = 0
    for residue, modulus in pairs:
        cofactor = product // modulus
        solution += residue * cofactor * pow(cofactor, -1, modulus)
    solution %= product
    logger.debug("CRT over %d moduli, product %d", len(pairs), product)
    return solution if solution else product


def tuple_row(q, n):
    """The hypersurface with c2 = 3n for a given q

    Args:
        q (int): A third of the CP^2 degree
        n (int): A solution of n = 6q(1 - q) mod (3q - 1)^2

    Returns:
        TupleRow: q, p, c1^2, c2 and the divisibility of c1
    """
    p = exact_divide(n + 6 * q * (q - 1), (3 * q - 1) ** 2, f"p for q={q}")
    c1sq = exact_divide(
        9 * (q - 1) * (n - 2 * q * (3 * q + 1)), 3 * q - 1, f"c1^2 for q={q}"
    )
    invariants = surface_invariants(p, q)
    if invariants.c2 != 3 * n:
        raise IntegrityError(f"q={q}, p={p} gives c2={invariants.c2}, expected {3 * n}")
    if invariants.c1sq != c1sq:
        raise IntegrityError(f"q={q}, p={p}: c1^2 {c1sq} versus {invariants.c1sq}")
    return TupleRow(q=q, p=p, c1sq=c1sq, c2=3 * n, c1_div=math.gcd(p - 2, 3 * q - 3))


def _check_override(q_values):
    if not q_values:
        raise DomainError("the q list is empty")
    if any(q < 1 for q in q_values):
        raise DomainError(f"q values must be positive, got {q_values}")
    if len(set(q_values)) != len(q_values):
        raise DomainError(f"q values repeat: {q_values}")
    moduli = [3 * q - 1 for q in q_values]
    for i, a in enumerate(moduli):
        for b in moduli[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise DomainError(f"3q - 1 values {a} and {b} are not coprime")


@timeit
def tuple_search(k, q_override=None, parity=None):
    """Solve the congruence system and group the resulting surfaces by c1^2

    Args:
        k (int): Number of distinct surfaces wanted; 3k values of q are used
        q_override (list of int): Explicit q values instead of the greedy choice
        parity (str): Parity restriction passed to the greedy choice

    Returns:
        TupleSearchResult: The common n, one row per q and the c1^2 groups
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if q_override:
        q_values = sorted(int(q) for q in q_override)
        _check_override(q_values)
    else:
        q_values = coprime_q_selection(3 * k, parity=parity)
    n = crt_smallest_positive([(6 * q * (1 - q), (3 * q - 1) ** 2) for q in q_values])
    logger.info("q values %s give n = %d", q_values, n)
    rows = tuple(tuple_row(q, n) for q in q_values)
    grouped = {}
    for row in rows:
        grouped.setdefault(row.c1sq, []).append(row.q)
    groups = tuple(tuple(group) for group in grouped.values())
    if len(groups) < -(-len(q_values) // 3):
        raise IntegrityError(
            f"{len(groups)} distinct c1^2 values among {len(q_values)} rows, "
            "a cubic in q cannot have that many coincidences"
        )
    if len(groups) < k:
        raise DomainError(f"only {len(groups)} distinct c1^2 values, {k} requested")
    return TupleSearchResult(q_list=tuple(q_values), n=n, rows=rows, groups=groups)


def distinct_tuple(result, k):
    """Pick k surfaces of the search with equal c2 and pairwise distinct c1^2

    Args:
        result (TupleSearchResult): Output of tuple_search
        k (int): Number of surfaces

    Returns:
        list of HypersurfaceP1P2: One representative (smallest q) per c1^2 group
    """
    if k < 1 or len(result.groups) < k:
        raise DomainError(f"{len(result.groups)} groups available, {k} requested")
    rows = {row.q: row for row in result.rows}
    chosen = [rows[group[0]] for group in result.groups[:k]]
    surfaces = [HypersurfaceP1P2(row.p, row.q) for row in chosen]
    invariants = [surface.invariants() for surface in surfaces]
    if len({inv.c2 for inv in invariants}) != 1:
        raise IntegrityError("surfaces of one tuple must share c2")
    if len({inv.c1sq for inv in invariants}) != k:
        raise IntegrityError("surfaces of one tuple must have distinct c1^2")
    return surfaces
