"""Finitely generated submonoids of N^r and rational polyhedral cones.

Monoids are stored by integer generators, cones by rational generators
(reduced to one representative per extreme ray). Facet normals are derived on
demand by brute force over generator subsets, which is plenty at the sizes we
work with (ambient dimension <= 4, a dozen generators).
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Sequence

from . import _linalg as la
from ._fmt import vec_from_doc, vec_to_doc

LatticePoint = tuple  # tuple[int, ...]
RationalPoint = tuple  # tuple[Fraction, ...]

DEFAULT_COORDINATE_BOUND = 64


class DimensionMismatch(ValueError):
    pass


class NotStronglyConvex(ValueError):
    pass


class HilbertBoundExceeded(RuntimeError):
    """The certified enumeration box is larger than the configured bound."""

    def __init__(self, needed: int, allowed: int):
        super().__init__(
            f"Hilbert basis enumeration needs coordinate bound {needed}, "
            f"configured bound is {allowed}"
        )
        self.needed = needed
        self.allowed = allowed


def degree(p: Sequence) -> int:
    """Coordinate sum, the grading used throughout."""
    return sum(p)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _scale(k, v):
    return tuple(k * a for a in v)


@dataclass(frozen=True)
class FgMonoid:
    generators: tuple

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = tuple(int(c) for c in g)
            if any(c < 0 for c in g):
                raise ValueError(f"monoid generator {g} is not in N^r")
            if not any(g):
                raise ValueError("monoid generators must be nonzero")
            if g not in gens:
                gens.append(g)
        if not gens:
            raise ValueError("a monoid needs at least one generator")
        if len({len(g) for g in gens}) != 1:
            raise DimensionMismatch("generators of different lengths")
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def ambient_dim(self) -> int:
        return len(self.generators[0])

    def cone(self) -> "RationalCone":
        return RationalCone(self.generators)

    def contains(self, p) -> bool:
        return monoid_membership(self, p)[0]

    def points(self, max_degree: int) -> list[LatticePoint]:
        """All elements of degree <= max_degree, sorted by (degree, coords)."""
        return enumerate_points(self, max_degree=max_degree)

    def to_doc(self) -> dict:
        return {"dim": self.ambient_dim, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_doc(cls, doc: dict) -> "FgMonoid":
        gens = [tuple(int(c) for c in g) for g in doc["generators"]]
        dim = doc.get("dim", len(gens[0]) if gens else 0)
        if any(len(g) != dim for g in gens):
            raise DimensionMismatch("generator length differs from 'dim'")
        return cls(tuple(gens))


def enumerate_points(S: FgMonoid, max_degree: int | None = None, box: Sequence[int] | None = None):
    """Elements of S bounded by degree and/or a coordinate box, including 0."""
    if max_degree is None and box is None:
        raise ValueError("need a degree or a box bound")
    zero = (0,) * S.ambient_dim

    def ok(p):
        if max_degree is not None and degree(p) > max_degree:
            return False
        if box is not None and any(c > b for c, b in zip(p, box)):
            return False
        return True

    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for p in frontier:
            for g in S.generators:
                q = _add(p, g)
                if q not in seen and ok(q):
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen, key=lambda p: (degree(p), p))


def monoid_membership(S: FgMonoid, p) -> tuple[bool, tuple[int, ...] | None]:
    """Decide p in S; on success also return coefficients with p = sum c_i e_i."""
    p = tuple(p)
    if len(p) != S.ambient_dim:
        raise DimensionMismatch(f"point of length {len(p)} in ambient dimension {S.ambient_dim}")
    if any(Fraction(c).denominator != 1 for c in p):
        return False, None
    p = tuple(int(c) for c in p)
    if any(c < 0 for c in p):
        return False, None
    gens = S.generators
    n = len(gens)

    # the all-ones functional is positive on every generator, so each
    # coefficient is bounded by the coordinatewise quotient
    @lru_cache(maxsize=None)
    def search(i, rem):
        if not any(rem):
            return (0,) * (n - i)
        if i == n:
            return None
        g = gens[i]
        kmax = min(r // c for r, c in zip(rem, g) if c > 0)
        for k in range(kmax, -1, -1):
            rest = search(i + 1, _sub(rem, _scale(k, g)))
            if rest is not None:
                return (k,) + rest
        return None

    w = search(0, p)
    return (w is not None), w


def truncate(S: FgMonoid, kappa) -> FgMonoid:
    """The truncation sum N kappa_i e_i; an int kappa is applied uniformly."""
    if isinstance(kappa, int):
        kappa = [kappa] * len(S.generators)
    kappa = list(kappa)
    if len(kappa) != len(S.generators):
        raise ValueError("need one truncation factor per generator")
    if any(k <= 0 for k in kappa):
        raise ValueError("truncation factors must be positive")
    return FgMonoid(tuple(_scale(k, g) for k, g in zip(kappa, S.generators)))


def uniform_truncation_constant(b: Fraction) -> int:
    """floor(1/b)! -- the truncation used for curve systems."""
    b = Fraction(b)
    if not 0 < b <= 1:
        raise ValueError("b must lie in (0, 1]")
    return factorial(int(1 / b))


@dataclass(frozen=True)
class RationalHyperplane:
    normal: tuple

    def __post_init__(self):
        n = tuple(Fraction(c) for c in self.normal)
        if not any(n):
            raise ValueError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", n)

    def value(self, p) -> Fraction:
        return la.dot(self.normal, p)

    def contains(self, p) -> bool:
        return self.value(p) == 0


class ConePosition(str, enum.Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    RELATIVE_INTERIOR = "relative_interior"


@dataclass(frozen=True)
class HRep:
    """Inequalities a.x >= 0 (facets inside the span) and equations e.x = 0."""

    inequalities: tuple
    equations: tuple


@dataclass(frozen=True, eq=True)
class RationalCone:
    generators: tuple
    _hrep: HRep | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        gens = [la.as_fractions(g) for g in self.generators]
        if not gens:
            raise ValueError("a cone needs at least one generator")
        if len({len(g) for g in gens}) != 1:
            raise DimensionMismatch("generators of different lengths")
        if any(not any(g) for g in gens):
            raise ValueError("cone generators must be nonzero")
        kept, seen = [], set()
        for g in gens:
            key = la.primitive(g)
            if key in seen:
                continue
            seen.add(key)
            kept.append(g)
        r = la.rank(kept)
        if r == len(kept):
            # linearly independent generators: simplicial, pointed, all extreme
            hrep = _simplicial_hrep(kept)
        else:
            hrep = _hrep_from_generators(kept, r)
            _check_pointed(kept, hrep, r)
            kept = [g for g in kept if _is_extreme(g, hrep, r, len(g))]
        object.__setattr__(self, "generators", tuple(kept))
        object.__setattr__(self, "_hrep", hrep)

    @property
    def ambient_dim(self) -> int:
        return len(self.generators[0])

    @cached_property
    def dim(self) -> int:
        return la.rank(self.generators)

    @property
    def hrep(self) -> HRep:
        return self._hrep

    @property
    def facet_normals(self) -> tuple:
        return self._hrep.inequalities

    def is_simplicial(self) -> bool:
        return len(self.generators) == self.dim

    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, p) -> bool:
        return cone_position(self, p) is not ConePosition.OUTSIDE

    def to_doc(self) -> dict:
        return {"dim": self.ambient_dim, "generators": [vec_to_doc(g) for g in self.generators]}

    @classmethod
    def from_doc(cls, doc: dict) -> "RationalCone":
        gens = [vec_from_doc(g) for g in doc["generators"]]
        dim = doc.get("dim", len(gens[0]) if gens else 0)
        if any(len(g) != dim for g in gens):
            raise DimensionMismatch("generator length differs from 'dim'")
        return cls(tuple(gens))


def _simplicial_hrep(gens) -> HRep:
    n = len(gens[0])
    eqs = [la.primitive(e) for e in la.nullspace(gens, n)] if len(gens) < n else []
    ineqs = []
    for i in range(len(gens)):
        others = gens[:i] + gens[i + 1:]
        ker = la.nullspace(list(others) + eqs, n)
        # ker is one-dimensional since the generators are independent
        a = la.primitive(ker[0])
        if la.dot(a, gens[i]) < 0:
            a = tuple(-c for c in a)
        ineqs.append(a)
    if len(gens) == 1:
        ineqs = [la.primitive(gens[0])]
    return HRep(tuple(ineqs), tuple(eqs))


def _hrep_from_generators(gens, d) -> HRep:
    n = len(gens[0])
    eqs = [la.primitive(e) for e in la.nullspace(gens, n)] if d < n else []
    if d == 1:
        return HRep((la.primitive(gens[0]),), tuple(eqs))
    ineqs = []
    for subset in itertools.combinations(gens, d - 1):
        ker = la.nullspace(list(subset) + eqs, n)
        if len(ker) != 1:
            continue
        a = la.primitive(ker[0])
        vals = [la.dot(a, g) for g in gens]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            a = tuple(-c for c in a)
        else:
            continue
        if a not in ineqs:
            ineqs.append(a)
    return HRep(tuple(ineqs), tuple(eqs))


def _check_pointed(gens, hrep: HRep, d):
    if d == 1:
        ref = gens[0]
        if any(la.dot(g, ref) <= 0 for g in gens):
            raise NotStronglyConvex("cone contains a line")
        return
    # the sum of the facet normals is interior to the dual cone iff the cone is pointed
    if not hrep.inequalities:
        raise NotStronglyConvex("cone contains a line")
    total = tuple(sum(col) for col in zip(*hrep.inequalities))
    if any(la.dot(total, g) <= 0 for g in gens):
        raise NotStronglyConvex("cone contains a line")


def _is_extreme(g, hrep: HRep, d, n) -> bool:
    if d == 1:
        return True
    tight = [a for a in hrep.inequalities if la.dot(a, g) == 0]
    return la.rank(tight + list(hrep.equations)) == n - 1 if tight else False


def cone_position(C: RationalCone, p) -> ConePosition:
    p = la.as_fractions(p)
    if len(p) != C.ambient_dim:
        raise DimensionMismatch(f"point of length {len(p)} in ambient dimension {C.ambient_dim}")
    h = C.hrep
    if any(la.dot(e, p) != 0 for e in h.equations):
        return ConePosition.OUTSIDE
    vals = [la.dot(a, p) for a in h.inequalities]
    if any(v < 0 for v in vals):
        return ConePosition.OUTSIDE
    if not any(p) or all(v > 0 for v in vals):
        return ConePosition.RELATIVE_INTERIOR
    return ConePosition.BOUNDARY


def in_interior(C: RationalCone, p) -> bool:
    """Topological interior in R^r (requires a full-dimensional cone), origin excluded."""
    p = la.as_fractions(p)
    return (
        C.is_full_dimensional()
        and any(p)
        and cone_position(C, p) is ConePosition.RELATIVE_INTERIOR
    )


def simplicial_subdivision(C: RationalCone) -> list[RationalCone]:
    """Pulling triangulation from the first generator."""
    if C.is_simplicial():
        return [C]
    v = C.generators[0]
    pieces = []
    for a in C.facet_normals:
        if la.dot(a, v) == 0:
            continue
        facet_gens = tuple(g for g in C.generators if la.dot(a, g) == 0)
        for t in simplicial_subdivision(RationalCone(facet_gens)):
            pieces.append(RationalCone(t.generators + (v,)))
    return pieces


def _extreme_rays(G, H, n) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x : G x >= 0, H x = 0} in R^n."""
    hr = la.rank(H) if H else 0
    k = n - 1 - hr
    if k < 0:
        return []
    rays = []
    for subset in itertools.combinations(range(len(G)), k):
        rows = [G[i] for i in subset] + list(H)
        ker = la.nullspace(rows, n) if rows else la.nullspace([], n)
        if len(ker) != 1:
            continue
        x = ker[0]
        vals = [la.dot(g, x) for g in G]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            x = tuple(-c for c in x)
        else:
            continue
        r = la.primitive(x)
        if r not in rays:
            rays.append(r)
    return rays


def hilbert_enumeration_bound(S: FgMonoid, C: RationalCone) -> tuple[int, ...]:
    """Coordinate box certified to contain every irreducible of S & C.

    S & C is the image of the normal monoid L = {lam in N^n : sum lam_i e_i in C}.
    Every Hilbert basis element of L is an extreme ray or lies in a half-open
    parallelepiped spanned by at most dim(L) extreme rays, which bounds the
    image coordinatewise.
    """
    n = len(S.generators)
    E = S.generators
    G = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for a in C.hrep.inequalities:
        G.append(tuple(la.dot(a, e) for e in E))
    H = [tuple(la.dot(eq, e) for e in E) for eq in C.hrep.equations]
    H = [h for h in H if any(h)]
    rays = _extreme_rays(G, H, n)
    if not rays:
        return (0,) * S.ambient_dim
    d = la.rank(rays)
    images = [tuple(sum(r[i] * E[i][j] for i in range(n)) for j in range(S.ambient_dim)) for r in rays]
    box = []
    for j in range(S.ambient_dim):
        col = sorted((img[j] for img in images), reverse=True)
        box.append(int(sum(col[:d])))
    return tuple(box)


def hilbert_basis_intersection(
    S: FgMonoid, C: RationalCone, coordinate_bound: int = DEFAULT_COORDINATE_BOUND
) -> FgMonoid:
    """Minimal generating set of the monoid S & C (Gordan)."""
    if C.ambient_dim != S.ambient_dim:
        raise DimensionMismatch("monoid and cone live in different dimensions")
    box = hilbert_enumeration_bound(S, C)
    if max(box) > coordinate_bound:
        raise HilbertBoundExceeded(max(box), coordinate_bound)
    pts = [p for p in enumerate_points(S, box=box) if any(p) and C.contains(p)]
    if not pts:
        raise ValueError("the intersection of the monoid with the cone is trivial")
    members = set(pts)
    basis: list[tuple[int, ...]] = []
    for p in pts:  # sorted by degree
        if not any(_sub(p, g) in members for g in basis):
            basis.append(p)
    return FgMonoid(tuple(basis))


def sample_rational_points(C: RationalCone, count: int, rng, max_den: int = 7) -> list[RationalPoint]:
    """Random nonnegative rational combinations of the generators."""
    out = []
    for _ in range(count):
        coeffs = [Fraction(rng.randint(0, 3 * max_den), rng.randint(1, max_den)) for _ in C.generators]
        if not any(coeffs):
            coeffs[0] = Fraction(1)
        out.append(tuple(sum(c * g[j] for c, g in zip(coeffs, C.generators)) for j in range(C.ambient_dim)))
    return out


__all__ = [
    "ConePosition",
    "DimensionMismatch",
    "FgMonoid",
    "HilbertBoundExceeded",
    "NotStronglyConvex",
    "RationalCone",
    "RationalHyperplane",
    "cone_position",
    "degree",
    "enumerate_points",
    "hilbert_basis_intersection",
    "hilbert_enumeration_bound",
    "in_interior",
    "monoid_membership",
    "sample_rational_points",
    "simplicial_subdivision",
    "truncate",
    "uniform_truncation_constant",
]
