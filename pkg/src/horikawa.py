"""Surface families behind the paired negative structures

X_k is the complete intersection of bidegrees (2, 5) and (k, 1) in CP^1 x CP^3.
Y_i is the Horikawa surface, a double cover of the Hirzebruch surface Sigma_i
branched along B = 6 Delta + 2(2i + 3) F, and Z_k = Y_{8k+2} has the same b2 and
c2 as X_k but a different geometric genus.
"""

import logging
import math
from dataclasses import dataclass

from src.boothby_wang import (
    BaseSurfaceData,
    BoothbyWangReport,
    ContactVerdict,
    bw_classify,
    hamilton_obstruction,
)
from src.calculations import gcd_of, mod2, stringify_integers
from src.cohomology_ring import AmbientSpace
from src.complete_intersection import CompleteIntersectionSpec, chern_numbers
from src.errors import DomainError, IntegrityError
from src.surface_tuples import HypersurfaceP1P2, SurfaceInvariants, distinct_tuple, tuple_search

logger = logging.getLogger(__name__)

P1_X_P3 = AmbientSpace((1, 3))


@dataclass(frozen=True)
class HirzebruchClass:
    """The divisor class a Delta + b F on Sigma_i

    Args:
        i (int): Degree of the Hirzebruch surface, Delta^2 = -i
        a (int): Coefficient of the zero section Delta
        b (int): Coefficient of the fibre F
    """

    i: int
    a: int
    b: int

    def __post_init__(self):
        if self.i < 0:
            raise DomainError(f"Hirzebruch degree must be nonnegative, got {self.i}")

    def __add__(self, other):
        if not isinstance(other, HirzebruchClass):
            return NotImplemented
        if other.i != self.i:
            raise DomainError(f"classes on Sigma_{self.i} and Sigma_{other.i}")
        return HirzebruchClass(self.i, self.a + other.a, self.b + other.b)

    def __neg__(self):
        return HirzebruchClass(self.i, -self.a, -self.b)

    def half(self):
        """The class divided by 2; odd coefficients are rejected"""
        if self.a % 2 or self.b % 2:
            raise DomainError(f"{self} is not divisible by 2")
        return HirzebruchClass(self.i, self.a // 2, self.b // 2)

    def __str__(self):
        return f"{self.a}D + {self.b}F on Sigma_{self.i}"


def zero_section(i):
    return HirzebruchClass(i, 1, 0)


def fibre(i):
    return HirzebruchClass(i, 0, 1)


def hirzebruch_intersect(i, u, v):
    """Intersection number on Sigma_i, from Delta^2 = -i, Delta.F = 1, F^2 = 0"""
    if u.i != i or v.i != i:
        raise DomainError(f"classes on Sigma_{u.i} and Sigma_{v.i}, expected Sigma_{i}")
    return -i * u.a * v.a + u.a * v.b + v.a * u.b


def hirzebruch_ample(i, u):
    """Nakai-Moishezon on Sigma_i: a > 0 and b > a i"""
    if u.i != i:
        raise DomainError(f"class on Sigma_{u.i}, expected Sigma_{i}")
    return u.a > 0 and u.b > u.a * i


def branch_locus(i):
    """B = 6 Delta + 2(2i + 3) F"""
    return HirzebruchClass(i, 6, 2 * (2 * i + 3))


def hirzebruch_canonical(i):
    """K = -2 Delta - (i + 2) F"""
    return HirzebruchClass(i, -2, -(i + 2))


def horikawa_canonical_base(i):
    """K + B/2, whose pullback is the canonical class of Y_i"""
    base = hirzebruch_canonical(i) + branch_locus(i).half()
    if base != HirzebruchClass(i, 1, i + 1):
        raise IntegrityError(f"K + B/2 on Sigma_{i} came out as {base}")
    if not hirzebruch_ample(i, base):
        raise IntegrityError(f"{base} should be ample")
    return base


@dataclass(frozen=True)
class SpinVerdict:
    """Spin test for a double cover, with the odd intersection number that decides it"""

    spin: bool
    witness: int

    def __bool__(self):
        return self.spin


def horikawa_spin(i):
    """Y_i is spin iff B/2 is even; (B/2).F = 3 is odd for every i"""
    half_branch = branch_locus(i).half()
    witness = hirzebruch_intersect(i, half_branch, fibre(i))
    spin = half_branch.a % 2 == 0 and half_branch.b % 2 == 0
    if spin and witness % 2:
        raise IntegrityError(f"B/2 on Sigma_{i} is even but meets F in {witness}")
    return SpinVerdict(spin=spin, witness=witness)


def horikawa_invariants(i):
    """Invariants of the Horikawa surface Y_i

    c1 is recorded in the pulled-back basis (Delta, F), where it is -(Delta + (i + 1) F).
    Only the parity of its divisibility is known, so c1_div = 1 is stored as an
    odd representative with c1_div_exact = False.

    Args:
        i (int): Degree of the underlying Hirzebruch surface, at least 1

    Returns:
        SurfaceInvariants: c1^2 = 2i + 4, c2 = 10i + 56
    """
    if i < 1:
        raise DomainError(f"Horikawa index must be positive, got {i}")
    if not hirzebruch_ample(i, branch_locus(i)):
        logger.warning("branch locus %s fails the ampleness test", branch_locus(i))
    canonical = horikawa_canonical_base(i)
    inv = SurfaceInvariants.from_chern(
        c1_coeffs=(-canonical.a, -canonical.b),
        c1sq=2 * i + 4,
        c2=10 * i + 56,
        ample_canonical=True,
        spin=horikawa_spin(i).spin,
        c1_div=1,
        c1_div_exact=False,
    )
    if inv.c1sq != 2 * hirzebruch_intersect(i, canonical, canonical):
        raise IntegrityError(f"c1^2 of Y_{i} disagrees with twice (K + B/2)^2")
    if (inv.chiO, inv.h02, inv.h11) != (i + 5, i + 4, 8 * i + 46):
        raise IntegrityError(f"Hodge data of Y_{i} off the Noether line")
    return inv


def xk_spec(k):
    """X_k, cut out by bidegrees (2, 5) and (k, 1) in CP^1 x CP^3"""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    return CompleteIntersectionSpec(P1_X_P3, ((2, 5), (k, 1)))


def xk_invariants(k):
    """Invariants of X_k, cross-checked against the adjunction computation

    Args:
        k (int): Positive integer

    Returns:
        SurfaceInvariants: c1 = (-k, -2), c1^2 = 40k + 8, c2 = 80k + 76
    """
    inv = SurfaceInvariants.from_chern(
        c1_coeffs=(-k, -2),
        c1sq=40 * k + 8,
        c2=80 * k + 76,
        ample_canonical=True,
        c1_div=math.gcd(k, 2),
    )
    report = chern_numbers(xk_spec(k))
    if (
        report.c1.linear_coefficients() != inv.c1_coeffs
        or report.numbers["c1sq"] != inv.c1sq
        or report.numbers["c2"] != inv.c2
    ):
        raise IntegrityError(f"closed forms for X_{k} disagree with the ring computation")
    return inv


@dataclass(frozen=True)
class TheoremCPair:
    """X_k and Z_k with the canonical primitive Euler class on both sides

    Args:
        k (int): Family index
        xk (SurfaceInvariants): Invariants of X_k
        zk (SurfaceInvariants): Invariants of Z_k = Y_{8k+2}
        hodge_differ (bool): Whether the basic Hodge numbers differ
        contact_obstruction (ContactVerdict): Hamilton's verdict on the two contact structures
        reports (tuple of BoothbyWangReport): Boothby-Wang reports for X_k and Z_k
    """

    k: int
    xk: SurfaceInvariants
    zk: SurfaceInvariants
    hodge_differ: bool
    contact_obstruction: ContactVerdict
    reports: tuple = ()

    @property
    def manifold(self):
        return self.reports[0].manifold if self.reports else None

    def to_json(self):
        return {
            "k": str(self.k),
            "xk": self.xk.to_json(),
            "zk": self.zk.to_json(),
            "hodge_differ": self.hodge_differ,
            "contact_obstruction": self.contact_obstruction.value,
            "reports": [report.to_json() for report in self.reports],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            k=int(data["k"]),
            xk=SurfaceInvariants.from_json(data["xk"]),
            zk=SurfaceInvariants.from_json(data["zk"]),
            hodge_differ=bool(data["hodge_differ"]),
            contact_obstruction=ContactVerdict(data["contact_obstruction"]),
            reports=tuple(BoothbyWangReport.from_json(r) for r in data.get("reports", [])),
        )


def theorem_c_pair(k, i=None):
    """Pair X_k with the Horikawa surface Y_i, i = 8k + 2 unless given

    Args:
        k (int): Family index, at least 1
        i (int): Horikawa index; anything but 8k + 2 fails the b2 check

    Returns:
        TheoremCPair: Both invariant records, the Hodge comparison and Hamilton's verdict
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    i = 8 * k + 2 if i is None else i
    xk = xk_invariants(k)
    zk = horikawa_invariants(i)
    if xk.b2 != zk.b2 or xk.c2 != zk.c2:
        raise IntegrityError(
            f"X_{k} and Y_{i} differ in b2 ({xk.b2} vs {zk.b2}) or c2 ({xk.c2} vs {zk.c2})"
        )
    reports = (
        bw_classify(BaseSurfaceData.from_surface(xk)),
        bw_classify(BaseSurfaceData.from_surface(zk)),
    )
    verdict = hamilton_obstruction(*reports)
    logger.info("k=%d: %s, %s", k, reports[0].manifold, verdict.value)
    return TheoremCPair(
        k=k,
        xk=xk,
        zk=zk,
        hodge_differ=xk.h02 != zk.h02,
        contact_obstruction=verdict,
        reports=reports,
    )


@dataclass(frozen=True)
class NonspinEntry:
    """One hypersurface of a non-spin tuple with its Boothby-Wang report"""

    surface: HypersurfaceP1P2
    invariants: SurfaceInvariants
    euler_class: tuple
    report: BoothbyWangReport

    def to_json(self):
        return {
            "p": str(self.surface.p),
            "q": str(self.surface.q),
            "invariants": self.invariants.to_json(),
            "euler_class": stringify_integers(list(self.euler_class)),
            "report": self.report.to_json(),
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            surface=HypersurfaceP1P2(int(data["p"]), int(data["q"])),
            invariants=SurfaceInvariants.from_json(data["invariants"]),
            euler_class=tuple(int(c) for c in data["euler_class"]),
            report=BoothbyWangReport.from_json(data["report"]),
        )


def nonspin_tuple(k, euler_coeffs=None):
    """k surfaces over which the Euler class a x_1 + b x_2 gives non-spin total spaces

    Even q makes 3 - 3q odd, so c1 and an Euler class with even b never agree mod 2.

    Args:
        k (int): Number of surfaces
        euler_coeffs (tuple of int): (a, b), positive, coprime, b even; defaults to (1, 2)

    Returns:
        list of NonspinEntry: Surfaces with distinct Hodge numbers on one NonSpinSum(n)
    """
    a, b = tuple(euler_coeffs) if euler_coeffs is not None else (1, 2)
    if a <= 0 or b <= 0:
        raise DomainError(f"Euler class coefficients must be positive, got ({a}, {b})")
    if gcd_of((a, b)) != 1:
        raise DomainError(f"Euler class ({a}, {b}) is not primitive")
    if b % 2:
        raise DomainError(f"b = {b} must be even")
    surfaces = distinct_tuple(tuple_search(k, parity="even"), k)
    entries = []
    for surface in surfaces:
        inv = surface.invariants()
        if inv.spin or mod2(inv.c1_coeffs) == mod2((a, b)):
            raise IntegrityError(f"{surface} admits a spin total space")
        report = bw_classify(BaseSurfaceData(inv=inv, euler_class=(a, b)))
        if report.manifold.spin:
            raise IntegrityError(f"{surface} gave {report.manifold}")
        entries.append(
            NonspinEntry(surface=surface, invariants=inv, euler_class=(a, b), report=report)
        )
    if len({entry.report.manifold for entry in entries}) != 1:
        raise IntegrityError("the tuple does not share one total space")
    return entries
