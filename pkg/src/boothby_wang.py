"""Boothby-Wang total spaces over simply connected bases

A regular Sasaki structure is a circle bundle over a projective base X with a
primitive integral Kaehler class as Euler class. Its basic Hodge numbers are the
Hodge numbers of X, so everything below works on invariant records of the base:
the Smale-Barden type of a five-dimensional total space, the contact first Chern
class, Hamilton's divisibility obstruction, and the Kuenneth bookkeeping of the
higher-dimensional pairs.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from src.calculations import gcd_of, mod2, multiple_factor, stringify_integers
from src.complete_intersection import WallInvariants, are_diffeomorphic_wall, ci3_hodge
from src.errors import DomainError, IntegrityError
from src.surface_tuples import HypersurfaceP1P2, SurfaceInvariants

logger = logging.getLogger(__name__)


class ContactVerdict(str, Enum):
    INEQUIVALENT = "Inequivalent"
    INCONCLUSIVE = "Inconclusive"


class LinkSign(str, Enum):
    POSITIVE = "Positive"
    NULL = "Null"
    NEGATIVE = "NegativeSign"


@dataclass(frozen=True)
class FiveManifold:
    """Simply connected torsion-free five-manifold

    SpinSum(n) is the connected sum of n copies of S^2 x S^3 (S^5 for n = 0);
    NonSpinSum(n) adds one copy of the non-trivial bundle S^2 x~ S^3.
    """

    spin: bool
    n: int

    @property
    def label(self):
        return f"{'SpinSum' if self.spin else 'NonSpinSum'}({self.n})"

    def __str__(self):
        return self.label

    @classmethod
    def parse(cls, label):
        kind, _, rest = label.partition("(")
        if kind not in ("SpinSum", "NonSpinSum") or not rest.endswith(")"):
            raise DomainError(f"not a five-manifold label: {label!r}")
        return cls(spin=kind == "SpinSum", n=int(rest[:-1]))


@dataclass(frozen=True)
class BaseSurfaceData:
    """A base surface together with the Euler class of the circle bundle

    Args:
        inv (SurfaceInvariants): Invariants of the base
        euler_class (tuple of int): Euler class in the basis of inv.c1_coeffs
        simply_connected (bool): Asserted by the caller
    """

    inv: SurfaceInvariants
    euler_class: tuple
    simply_connected: bool = True

    @classmethod
    def from_surface(cls, inv, euler_class=None):
        """Base data with the given Euler class, or the primitive canonical multiple"""
        if euler_class is None:
            euler_class = canonical_euler_class(inv)
        return cls(inv=inv, euler_class=tuple(int(c) for c in euler_class))

    @classmethod
    def k3(cls, euler_class=(1,)):
        """A K3 surface; any primitive Kaehler class will do, c1 = 0"""
        inv = SurfaceInvariants.from_chern(c1_coeffs=(0,), c1sq=0, c2=24, ample_canonical=False)
        return cls(inv=inv, euler_class=tuple(euler_class))

    @classmethod
    def cp2(cls):
        """The projective plane with the hyperplane class as Euler class"""
        inv = SurfaceInvariants.from_chern(c1_coeffs=(3,), c1sq=9, c2=3, ample_canonical=False)
        return cls(inv=inv, euler_class=(1,))

    def to_json(self):
        return {
            "inv": self.inv.to_json(),
            "euler_class": stringify_integers(list(self.euler_class)),
            "simply_connected": self.simply_connected,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            inv=SurfaceInvariants.from_json(data["inv"]),
            euler_class=tuple(int(c) for c in data["euler_class"]),
            simply_connected=bool(data.get("simply_connected", True)),
        )


@dataclass(frozen=True)
class BoothbyWangReport:
    """Topology and basic Hodge numbers of a five-dimensional Boothby-Wang total space

    Args:
        manifold (FiveManifold): Smale-Barden type
        contact_c1_zero (bool): Whether the contact structure has trivial first Chern class
        hamilton_div (int): Divisibility of c1 of the base, 0 when c1 vanishes
        basic_hodge (tuple of int): (h02, h11, b2) of the base
        negative_type (bool): Ample canonical base with Euler class on the canonical ray
        hamilton_div_exact (bool): False when only the parity of hamilton_div is known
        notes (tuple of str): Remarks attached during classification
    """

    manifold: FiveManifold
    contact_c1_zero: bool
    hamilton_div: int
    basic_hodge: tuple
    negative_type: bool
    hamilton_div_exact: bool = True
    notes: tuple = ()

    def to_json(self):
        return {
            "manifold": self.manifold.label,
            "contact_c1_zero": self.contact_c1_zero,
            "hamilton_div": str(self.hamilton_div),
            "hamilton_div_exact": self.hamilton_div_exact,
            "basic_hodge": stringify_integers(list(self.basic_hodge)),
            "negative_type": self.negative_type,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            manifold=FiveManifold.parse(data["manifold"]),
            contact_c1_zero=bool(data["contact_c1_zero"]),
            hamilton_div=int(data["hamilton_div"]),
            basic_hodge=tuple(int(h) for h in data["basic_hodge"]),
            negative_type=bool(data["negative_type"]),
            hamilton_div_exact=bool(data.get("hamilton_div_exact", True)),
            notes=tuple(data.get("notes", [])),
        )


def canonical_euler_class(inv):
    """The primitive class on the ray of the canonical class, -c1 / d(c1)

    Args:
        inv (SurfaceInvariants): Base with ample canonical bundle

    Returns:
        tuple of int: Euler class in the basis of inv.c1_coeffs
    """
    if not inv.ample_canonical:
        raise DomainError("the canonical ray is a Kaehler ray only for ample canonical bundles")
    divisor = gcd_of(inv.c1_coeffs)
    if divisor == 0:
        raise DomainError("c1 = 0 has no canonical direction")
    return tuple(-c // divisor for c in inv.c1_coeffs)


def bw_classify(base):
    """Classify the Boothby-Wang total space over a simply connected surface

    Args:
        base (BaseSurfaceData): Base invariants and primitive Euler class

    Returns:
        BoothbyWangReport: Diffeomorphism type, contact c1, Hamilton data and basic Hodge numbers
    """
    inv = base.inv
    if not base.simply_connected:
        raise DomainError("the classification needs a simply connected base")
    if len(base.euler_class) != len(inv.c1_coeffs):
        raise DomainError(
            f"Euler class {base.euler_class} and c1 {inv.c1_coeffs} use different bases"
        )
    if gcd_of(base.euler_class) != 1:
        raise DomainError(f"Euler class {base.euler_class} is not primitive")
    spin = inv.spin or mod2(inv.c1_coeffs) == mod2(base.euler_class)
    n = inv.b2 - 1
    if n < 0:
        raise IntegrityError(f"b2 = {inv.b2} of a surface must be positive")
    factor = multiple_factor(inv.c1_coeffs, base.euler_class)
    notes = []
    negative_type = inv.ample_canonical and factor is not None and factor < 0
    if inv.ample_canonical and not negative_type:
        notes.append(
            "ample canonical base, but the Euler class is not on the canonical ray"
        )
    if not inv.c1_div_exact:
        notes.append("only the parity of d(c1) is known")
    return BoothbyWangReport(
        manifold=FiveManifold(spin=spin, n=n),
        contact_c1_zero=factor is not None,
        hamilton_div=inv.c1_div,
        basic_hodge=(inv.h02, inv.h11, inv.b2),
        negative_type=negative_type,
        hamilton_div_exact=inv.c1_div_exact,
        notes=tuple(notes),
    )


def hamilton_obstruction(r1, r2):
    """Hamilton's divisibility test for two regular structures on one five-manifold

    Equivalent contact structures with trivial c1 force equal divisibilities of
    c1 of the bases. The converse is not available, so equal divisibilities only
    give an inconclusive verdict. A divisibility known up to parity is compared
    by parity.
    """
    if r1.manifold != r2.manifold:
        raise DomainError(f"different manifolds {r1.manifold} and {r2.manifold}")
    if not (r1.contact_c1_zero and r2.contact_c1_zero):
        raise DomainError("Hamilton's test needs contact structures with trivial c1")
    if r1.hamilton_div_exact and r2.hamilton_div_exact:
        differ = r1.hamilton_div != r2.hamilton_div
    else:
        differ = r1.hamilton_div % 2 != r2.hamilton_div % 2
    return ContactVerdict.INEQUIVALENT if differ else ContactVerdict.INCONCLUSIVE


def contact_structure_lower_bound(reports):
    """Lower bound on pairwise inequivalent contact structures among the reports"""
    reports = list(reports)
    if not reports:
        return 0
    if len({r.manifold for r in reports}) != 1:
        raise DomainError("reports live on different manifolds")
    if not all(r.contact_c1_zero for r in reports):
        raise DomainError("Hamilton's test needs contact structures with trivial c1")
    exact = {r.hamilton_div for r in reports if r.hamilton_div_exact}
    parities = {r.hamilton_div % 2 for r in reports if not r.hamilton_div_exact}
    parities -= {value % 2 for value in exact}
    return len(exact) + len(parities)


def tuple_reports(surfaces):
    """Boothby-Wang with the canonical primitive class over every surface of a tuple

    Args:
        surfaces (list): HypersurfaceP1P2 or SurfaceInvariants with ample canonical bundle

    Returns:
        list of BoothbyWangReport: Reports sharing one five-manifold
    """
    reports = []
    for surface in surfaces:
        inv = surface.invariants() if isinstance(surface, HypersurfaceP1P2) else surface
        reports.append(bw_classify(BaseSurfaceData.from_surface(inv)))
    if len({r.manifold for r in reports}) > 1:
        raise IntegrityError("surfaces of a tuple gave different total spaces")
    return reports


def link_sign(weights, degree):
    """Sign of sum(w_i) - d for a weighted homogeneous link

    Only the positive case certifies a positive Sasaki structure.
    """
    if degree < 1 or not weights or any(w < 1 for w in weights):
        raise DomainError("weights and degree must be positive")
    value = sum(weights) - degree
    if value > 0:
        return LinkSign.POSITIVE
    if value == 0:
        return LinkSign.NULL
    return LinkSign.NEGATIVE


class HodgeDiamond:
    def __init__(self, matrix):
        """Hodge numbers h^{p,q}, stored as an integer matrix indexed [p, q]

        Args:
            matrix (array-like): Square matrix of nonnegative integers
        """
        rows = [[int(entry) for entry in row] for row in matrix]
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DomainError("a Hodge diamond needs a square matrix")
        matrix = np.empty((len(rows), len(rows)), dtype=object)
        for p, row in enumerate(rows):
            for q, entry in enumerate(row):
                matrix[p, q] = entry
        if matrix[0, 0] != 1:
            raise DomainError(f"h^(0,0) must be 1, got {matrix[0, 0]}")
        if any(entry < 0 for entry in matrix.flat):
            raise DomainError("Hodge numbers must be nonnegative")
        self.matrix = matrix
        if not (self.is_hodge_symmetric() and self.is_serre_symmetric()):
            raise DomainError("Hodge numbers must satisfy Hodge symmetry and Serre duality")

    @classmethod
    def point(cls):
        return cls([[1]])

    @classmethod
    def curve(cls, genus):
        if genus < 0:
            raise DomainError(f"genus must be nonnegative, got {genus}")
        return cls([[1, genus], [genus, 1]])

    @classmethod
    def plane_curve(cls, degree):
        """Smooth plane curve of the given degree, genus (d - 1)(d - 2) / 2"""
        if degree < 1:
            raise DomainError(f"degree must be positive, got {degree}")
        return cls.curve((degree - 1) * (degree - 2) // 2)

    @classmethod
    def surface(cls, inv):
        """Diamond of a simply connected surface"""
        return cls([[1, 0, inv.h02], [0, inv.h11, 0], [inv.h02, 0, 1]])

    @property
    def dim(self):
        return self.matrix.shape[0] - 1

    def __getitem__(self, index):
        p, q = index
        if not (0 <= p <= self.dim and 0 <= q <= self.dim):
            return 0
        return self.matrix[p, q]

    def __eq__(self, other):
        if not isinstance(other, HodgeDiamond):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool(
            np.array_equal(self.matrix, other.matrix)
        )

    def __mul__(self, other):
        return kunneth_hodge(self, other)

    def __repr__(self):
        return f"HodgeDiamond({self.matrix.tolist()})"

    def is_hodge_symmetric(self):
        return bool(np.array_equal(self.matrix, self.matrix.T))

    def is_serre_symmetric(self):
        return bool(np.array_equal(self.matrix, self.matrix[::-1, ::-1]))

    def betti(self):
        """Betti numbers b_0, ..., b_{2 dim}"""
        return [
            sum(self[p, i - p] for p in range(max(0, i - self.dim), min(i, self.dim) + 1))
            for i in range(2 * self.dim + 1)
        ]

    def euler(self):
        return sum((-1) ** i * b for i, b in enumerate(self.betti()))

    def middle_row(self):
        """(h^{n,0}, h^{n-1,1}, ..., h^{0,n})"""
        return tuple(self[self.dim - j, j] for j in range(self.dim + 1))

    def pprint(self):
        """Diamond layout, h^{dim,dim} on top and h^{0,0} at the bottom"""
        d = self.dim
        rows = []
        for i in range(2 * d, -1, -1):
            entries = [
                str(self[p, i - p]) for p in range(min(i, d), max(0, i - d) - 1, -1)
            ]
            rows.append(entries)
        width = max(len(entry) for row in rows for entry in row) + 2
        lines = []
        for row in rows:
            padding = (d + 1 - len(row)) * width // 2
            lines.append(" " * padding + "".join(entry.center(width) for entry in row))
        return "\n".join(line.rstrip() for line in lines)

    def to_json(self):
        return {"dim": str(self.dim), "matrix": stringify_integers(self.matrix.tolist())}

    @classmethod
    def from_json(cls, data):
        return cls([[int(entry) for entry in row] for row in data["matrix"]])


def kunneth_hodge(a, b):
    """Hodge diamond of a product, h^{p,q}(A x B) = sum h^{s,t}(A) h^{p-s,q-t}(B)"""
    size = a.dim + b.dim + 1
    result = np.zeros((size, size), dtype=object)
    for (s, t), value in np.ndenumerate(a.matrix):
        if value:
            result[s : s + b.dim + 1, t : t + b.dim + 1] += value * b.matrix
    return HodgeDiamond(result.tolist())


def ci3_diamond(w, d):
    """Hodge diamond of a complete intersection threefold

    Lefschetz gives h^{p,q} = h^{p,q}(CP^3) for p + q < 3; the middle row comes
    from ci3_hodge.
    """
    hodge = ci3_hodge(w, d)
    matrix = np.zeros((4, 4), dtype=object)
    for p in range(4):
        matrix[p, p] = 1
    matrix[3, 0] = matrix[0, 3] = hodge.h03
    matrix[2, 1] = matrix[1, 2] = hodge.h12
    return HodgeDiamond(matrix.tolist())


@dataclass(frozen=True)
class PairReport:
    """Two Sasaki structures on one manifold with their basic Hodge diamonds

    Args:
        total_dimension (int): Real dimension of the total spaces
        fundamental_group (str): Description of pi_1 of the total spaces
        pair (tuple of WallInvariants): The two threefolds
        diamonds (tuple of HodgeDiamond): Basic Hodge diamonds of the two structures
    """

    total_dimension: int
    fundamental_group: str
    pair: tuple
    diamonds: tuple = field(default=())

    def to_json(self):
        return {
            "total_dimension": str(self.total_dimension),
            "fundamental_group": self.fundamental_group,
            "pair": [w.to_json() for w in self.pair],
            "diamonds": [diamond.to_json() for diamond in self.diamonds],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            total_dimension=int(data["total_dimension"]),
            fundamental_group=data["fundamental_group"],
            pair=tuple(WallInvariants.from_json(w) for w in data["pair"]),
            diamonds=tuple(HodgeDiamond.from_json(h) for h in data["diamonds"]),
        )


def _check_pair(pair):
    if len(pair) != 2:
        raise DomainError("a pair needs exactly two threefolds")
    a, b = pair
    if not are_diffeomorphic_wall(a, b):
        raise DomainError("the threefolds are not Wall-diffeomorphic")
    if a.k == b.k:
        raise DomainError("the threefolds have the same first Chern class")
    return a, b


def seven_dim_pair(k, pair):
    """Seven-manifolds from Euler class k x over a Wall-diffeomorphic pair

    Args:
        k (int): Multiple of the positive generator used as Euler class
        pair (tuple of WallInvariants): Diffeomorphic threefolds with distinct c1

    Returns:
        PairReport: pi_1 = Z/k and the two basic Hodge diamonds
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    a, b = _check_pair(pair)
    diamonds = (ci3_diamond(a, a.d), ci3_diamond(b, b.d))
    if diamonds[0] == diamonds[1]:
        raise IntegrityError("distinct c1 must give distinct basic Hodge numbers")
    group = "trivial" if k == 1 else f"Z/{k}"
    return PairReport(total_dimension=7, fundamental_group=group, pair=(a, b), diamonds=diamonds)


def higher_dim_pair(pair, p_diamond, p_ample_canonical=True, p_simply_connected=False):
    """Products with a fixed factor P and Euler class x + K_P

    Args:
        pair (tuple of WallInvariants): Diffeomorphic threefolds with distinct c1
        p_diamond (HodgeDiamond): Hodge diamond of P
        p_ample_canonical (bool): Whether K_P is ample, required unless P is a point
        p_simply_connected (bool): Whether P is simply connected

    Returns:
        PairReport: Kuenneth diamonds of X_1 x P and X_2 x P
    """
    a, b = _check_pair(pair)
    if p_diamond.dim > 0 and not p_ample_canonical:
        raise DomainError("the factor P needs an ample canonical bundle")
    diamonds = (
        kunneth_hodge(ci3_diamond(a, a.d), p_diamond),
        kunneth_hodge(ci3_diamond(b, b.d), p_diamond),
    )
    if diamonds[0] == diamonds[1]:
        raise IntegrityError("Kuenneth products of distinct diamonds came out equal")
    if p_diamond.dim == 0 or p_simply_connected:
        group = "trivial"
    else:
        group = "pi_1(P)"
    return PairReport(
        total_dimension=2 * (3 + p_diamond.dim) + 1,
        fundamental_group=group,
        pair=(a, b),
        diamonds=diamonds,
    )
