"""Chern classes and Hodge numbers of complete intersections

The total Chern class of X cut out by hypersurfaces of multidegrees D_1, ..., D_c in
P = CP^{n_1} x ... x CP^{n_r} comes from adjunction,

    c(X) = prod_i (1 + x_i)^{n_i + 1} / prod_j (1 + D_j),

computed in the truncated ring of P, and integrals over X are pushed forward to P
by multiplying with the fundamental class prod_j D_j.
"""

import logging
from dataclasses import dataclass, field
from functools import reduce
from operator import mul

from src.calculations import exact_divide, stringify_integers
from src.cohomology_ring import AmbientSpace, CohomologyClass, integrate, unit_inverse
from src.errors import DomainError, IntegrityError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultiDegree:
    """Multidegree (d_1, ..., d_r) of one hypersurface, one entry per ambient factor"""

    degrees: tuple

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        if any(d < 0 for d in degrees):
            raise DomainError(f"multidegree entries must be nonnegative, got {degrees}")
        if not any(degrees):
            raise DomainError("a multidegree cannot be identically zero")
        object.__setattr__(self, "degrees", degrees)

    def divisor_class(self, ambient):
        """The class sum_i d_i x_i of the hypersurface"""
        if len(self.degrees) != ambient.rank:
            raise DomainError(
                f"multidegree {self.degrees} does not fit ambient {ambient}"
            )
        return ambient.linear(self.degrees)


@dataclass(frozen=True)
class CompleteIntersectionSpec:
    """A complete intersection of hypersurfaces in a product of projective spaces

    Hypersurfaces are stored sorted in descending order, so specs that differ only
    by the order of their equations compare equal.

    Args:
        ambient (AmbientSpace): The ambient product of projective spaces
        hypersurfaces (tuple of MultiDegree): The cutting hypersurfaces
    """

    ambient: AmbientSpace
    hypersurfaces: tuple = ()

    def __post_init__(self):
        hypersurfaces = tuple(
            h if isinstance(h, MultiDegree) else MultiDegree(tuple(h))
            for h in self.hypersurfaces
        )
        for hypersurface in hypersurfaces:
            if len(hypersurface.degrees) != self.ambient.rank:
                raise DomainError(
                    f"multidegree {hypersurface.degrees} does not fit ambient {self.ambient}"
                )
        hypersurfaces = tuple(
            sorted(hypersurfaces, key=lambda h: h.degrees, reverse=True)
        )
        object.__setattr__(self, "hypersurfaces", hypersurfaces)
        if self.dim < 1:
            raise DomainError(
                f"{len(hypersurfaces)} hypersurfaces in {self.ambient} leave dimension {self.dim}"
            )

    @classmethod
    def in_projective_space(cls, n, degrees):
        """Complete intersection of the given degrees in a single CP^n"""
        return cls(AmbientSpace((n,)), tuple(MultiDegree((d,)) for d in degrees))

    @classmethod
    def threefold(cls, degrees):
        """Complete intersection threefold of the given degrees in CP^{3+r}"""
        return cls.in_projective_space(3 + len(degrees), degrees)

    @property
    def dim(self):
        return self.ambient.dimension - len(self.hypersurfaces)

    @property
    def codimension(self):
        return len(self.hypersurfaces)

    @property
    def is_single_factor(self):
        return self.ambient.rank == 1

    def single_degrees(self):
        """Degrees (d_1, ..., d_r) of a complete intersection in one projective space"""
        if not self.is_single_factor:
            raise DomainError(f"{self.ambient} is not a single projective space")
        return tuple(h.degrees[0] for h in self.hypersurfaces)

    def fundamental_class(self):
        """Poincare dual of X in the ambient, prod_j D_j"""
        result = self.ambient.one()
        for hypersurface in self.hypersurfaces:
            result = result * hypersurface.divisor_class(self.ambient)
        return result


@dataclass(frozen=True)
class ChernReport:
    """Chern data of a complete intersection surface or threefold

    `numbers` holds, for dim 2: c1^2, c2, p1 (= c1^2 - 2 c2); for dim 3: c1^3, c1c2, c3
    and p1x, the pairings of p1 with each ambient generator x_i.
    """

    dim: int
    c1: CohomologyClass
    numbers: dict = field(default_factory=dict)

    @property
    def euler(self):
        return self.numbers["c2"] if self.dim == 2 else self.numbers["c3"]

    def to_json(self):
        return stringify_integers(
            {
                "dim": self.dim,
                "ambient": list(self.c1.ambient.factor_dims),
                "c1": [[list(e), c] for e, c in sorted(self.c1.terms.items())],
                "numbers": dict(self.numbers),
            }
        )

    @classmethod
    def from_json(cls, data):
        ambient = AmbientSpace(tuple(int(n) for n in data["ambient"]))
        c1 = CohomologyClass(
            ambient, {tuple(int(e) for e in exp): int(c) for exp, c in data["c1"]}
        )
        numbers = {}
        for key, value in data["numbers"].items():
            numbers[key] = (
                tuple(int(v) for v in value) if isinstance(value, list) else int(value)
            )
        return cls(int(data["dim"]), c1, numbers)


@dataclass(frozen=True)
class WallInvariants:
    """Wall data of a complete intersection threefold in CP^{3+r}

    Args:
        d (int): Total degree prod d_j
        k (int): c1 = k x
        m (int): p1 = m x^2
        e (int): Euler number
        k_parity (int): k mod 2
        degrees (tuple of int): The multidegree the data came from, if known
    """

    d: int
    k: int
    m: int
    e: int
    k_parity: int
    degrees: tuple = ()

    @property
    def key(self):
        """The tuple compared by Wall's classification"""
        return (self.d, self.m, self.e, self.k_parity)

    def to_json(self):
        return stringify_integers(
            {
                "degrees": list(self.degrees),
                "d": self.d,
                "k": self.k,
                "m": self.m,
                "e": self.e,
                "k_parity": self.k_parity,
            }
        )

    @classmethod
    def from_json(cls, data):
        return cls(
            d=int(data["d"]),
            k=int(data["k"]),
            m=int(data["m"]),
            e=int(data["e"]),
            k_parity=int(data["k_parity"]),
            degrees=tuple(int(x) for x in data.get("degrees", [])),
        )


@dataclass(frozen=True)
class ThreefoldHodge:
    """The only free Hodge numbers of a complete intersection threefold"""

    h03: int
    h12: int
    b3: int
    chiO: int

    def to_json(self):
        return stringify_integers(
            {"h03": self.h03, "h12": self.h12, "b3": self.b3, "chiO": self.chiO}
        )

    @classmethod
    def from_json(cls, data):
        return cls(
            h03=int(data["h03"]),
            h12=int(data["h12"]),
            b3=int(data["b3"]),
            chiO=int(data["chiO"]),
        )


def tangent_chern_class(spec):
    """Total Chern class of the complete intersection, in ambient coordinates

    Args:
        spec (CompleteIntersectionSpec): The complete intersection

    Returns:
        CohomologyClass: c(T_P) / c(N); its degree-q part represents c_q(X)
    """
    ambient = spec.ambient
    tangent = ambient.one()
    for index, n in enumerate(ambient.factor_dims):
        tangent = tangent * (ambient.one() + ambient.generator(index)) ** (n + 1)
    normal = ambient.one()
    for hypersurface in spec.hypersurfaces:
        normal = normal * (ambient.one() + hypersurface.divisor_class(ambient))
    return tangent * unit_inverse(normal)


def integrate_over_ci(spec, a):
    """Integral of (the restriction of) an ambient class over the complete intersection"""
    if a.ambient != spec.ambient:
        raise DomainError(f"class lives on {a.ambient}, not on {spec.ambient}")
    return integrate(a * spec.fundamental_class())


def chern_numbers(spec):
    """Chern numbers of a complete intersection surface or threefold

    Args:
        spec (CompleteIntersectionSpec): A complete intersection of dimension 2 or 3

    Returns:
        ChernReport: The first Chern class and the Chern numbers
    """
    if spec.dim not in (2, 3):
        raise DomainError(f"Chern numbers are computed in dimension 2 or 3, not {spec.dim}")
    total = tangent_chern_class(spec)
    c1 = total.degree_part(1)
    c2 = total.degree_part(2)
    p1 = c1 * c1 - c2 * 2
    numbers = {}
    if spec.dim == 2:
        numbers["c1sq"] = integrate_over_ci(spec, c1 * c1)
        numbers["c2"] = integrate_over_ci(spec, c2)
        numbers["p1"] = integrate_over_ci(spec, p1)
        if (numbers["c1sq"] + numbers["c2"]) % 12:
            raise IntegrityError(
                f"Noether's formula fails for {spec}: c1^2 + c2 = {numbers['c1sq'] + numbers['c2']}"
            )
    else:
        c3 = total.degree_part(3)
        numbers["c1cube"] = integrate_over_ci(spec, c1 * c1 * c1)
        numbers["c1c2"] = integrate_over_ci(spec, c1 * c2)
        numbers["c3"] = integrate_over_ci(spec, c3)
        numbers["p1x"] = tuple(
            integrate_over_ci(spec, p1 * spec.ambient.generator(i))
            for i in range(spec.ambient.rank)
        )
        if numbers["c1c2"] % 24:
            raise IntegrityError(
                f"c1c2 = {numbers['c1c2']} of {spec} is not divisible by 24"
            )
    return ChernReport(spec.dim, c1, numbers)


def c1c2_function(k, m):
    """f(k) = k(k^2 - m), so that 2 c1 c2 = f(k) x^3"""
    return k * (k * k - m)


def wall_invariants(spec):
    """Wall invariants of a complete intersection threefold in CP^{3+r}

    k and m come from the closed forms 4 + r - sum d_j and 4 + r - sum d_j^2; the
    Euler number comes from the ring computation, which is also checked against
    both closed forms.

    Args:
        spec (CompleteIntersectionSpec): Threefold in a single projective space, degrees >= 2

    Returns:
        WallInvariants: (d, k, m, e, k mod 2)
    """
    if not spec.is_single_factor:
        raise DomainError(f"Wall invariants need a single projective space, got {spec.ambient}")
    if spec.dim != 3:
        raise DomainError(f"Wall invariants need a threefold, got dimension {spec.dim}")
    degrees = spec.single_degrees()
    if any(d < 2 for d in degrees):
        raise DomainError(f"degrees must be at least 2, got {degrees}")
    r = len(degrees)
    d = reduce(mul, degrees, 1)
    k = 4 + r - sum(degrees)
    m = 4 + r - sum(x * x for x in degrees)
    report = chern_numbers(spec)
    ring_k = report.c1.linear_coefficients()[0]
    if ring_k != k:
        raise IntegrityError(f"c1 of {degrees}: ring gives {ring_k}, closed form {k}")
    if report.numbers["p1x"][0] != m * d:
        raise IntegrityError(
            f"p1 of {degrees}: ring pairing {report.numbers['p1x'][0]}, closed form {m * d}"
        )
    if 2 * report.numbers["c1c2"] != c1c2_function(k, m) * d:
        raise IntegrityError(f"2 c1 c2 of {degrees} disagrees with k(k^2 - m) d")
    e = report.numbers["c3"]
    if e % d:
        raise IntegrityError(f"Euler number {e} of {degrees} is not a multiple of d = {d}")
    return WallInvariants(d=d, k=k, m=m, e=e, k_parity=k % 2, degrees=degrees)


def ci3_hodge(w, d_from_spec):
    """Hodge numbers h^{0,3}, h^{1,2} of a complete intersection threefold

    Uses chi(O) = c1 c2 / 24 = k(k^2 - m) d / 48, h^{0,3} = 1 - chi(O) and
    2 h^{0,3} + 2 h^{1,2} = b_3 = 4 - e.

    Args:
        w (WallInvariants): Invariants of the threefold
        d_from_spec (int): Total degree

    Returns:
        ThreefoldHodge: h03, h12, b3 and chi(O)
    """
    twice_c1c2 = c1c2_function(w.k, w.m) * d_from_spec
    chiO = exact_divide(twice_c1c2, 48, "holomorphic Euler characteristic")
    h03 = 1 - chiO
    b3 = 4 - w.e
    if b3 < 0 or b3 % 2:
        raise IntegrityError(f"b3 = {b3} must be even and nonnegative")
    h12 = b3 // 2 - h03
    if h03 < 0 or h12 < 0:
        raise IntegrityError(f"negative Hodge number: h03 = {h03}, h12 = {h12}")
    return ThreefoldHodge(h03=h03, h12=h12, b3=b3, chiO=chiO)


def are_diffeomorphic_wall(a, b):
    """Whether two threefolds agree in total degree, p1, Euler number and c1 parity"""
    return a.key == b.key


def hodge_equal(a, b):
    """Whether two Wall-diffeomorphic threefolds have the same Hodge numbers

    f(k) = k(k^2 - m) is strictly increasing once m < 0, so equal Hodge numbers
    happen exactly when the first Chern classes agree.
    """
    if not are_diffeomorphic_wall(a, b):
        raise DomainError("Hodge comparison needs a Wall-diffeomorphic pair")
    if a.m >= 0:
        raise DomainError(
            f"m = {a.m} >= 0 only occurs for the quadric, which has no diffeomorphic partner"
        )
    return a.k == b.k
