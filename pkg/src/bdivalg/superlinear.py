"""Superadditive functions on monoids, their straightenings, and PL detection."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator, Sequence

from . import _linalg as la
from ._fmt import q_to_doc, vec_to_doc
from .lattice_cone import (
    ConePosition,
    FgMonoid,
    RationalCone,
    cone_position,
    degree,
    enumerate_points,
    hilbert_basis_intersection,
    monoid_membership,
    simplicial_subdivision,
)

DEFAULT_CONFIRM = 20
DEFAULT_INDEX_CAP = 64


class DegreeBoundExceeded(ValueError):
    pass


class IndexNotFound(RuntimeError):
    def __init__(self, s, cap):
        super().__init__(f"no index <= {cap} found for {s}")
        self.point = s
        self.cap = cap


class PLInconclusive(RuntimeError):
    pass


class BallTouchesBoundary(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class MonoidFunction:
    """A rational-valued oracle on a finitely generated monoid, memoized.

    ``declared_degree_bound`` of None means the oracle is valid everywhere
    (closed-form expressions); tables set it to the largest degree they cover.
    """

    def __init__(self, domain: FgMonoid, evaluate: Callable, declared_degree_bound: int | None = None,
                 name: str = "f"):
        self.domain = domain
        self.evaluate = evaluate
        self.declared_degree_bound = declared_degree_bound
        self.name = name
        self.cache: dict = {}

    def __call__(self, p) -> Fraction:
        p = tuple(int(c) for c in p)
        try:
            return self.cache[p]
        except KeyError:
            pass
        if self.declared_degree_bound is not None and degree(p) > self.declared_degree_bound:
            raise DegreeBoundExceeded(
                f"{self.name} evaluated at {p} beyond its declared degree bound {self.declared_degree_bound}"
            )
        v = Fraction(self.evaluate(p))
        self.cache[p] = v
        return v

    def restrict(self, domain: FgMonoid) -> "MonoidFunction":
        g = MonoidFunction(domain, self.evaluate, self.declared_degree_bound, self.name)
        g.cache = self.cache
        return g

    def __repr__(self):
        return f"MonoidFunction({self.name}, generators={self.domain.generators})"


@dataclass
class SuperadditivityReport:
    ok: bool
    pairs_checked: int
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def _points_by_degree(S: FgMonoid, bound: int) -> list[list]:
    layers: list[list] = [[] for _ in range(bound + 1)]
    for p in enumerate_points(S, max_degree=bound):
        layers[degree(p)].append(p)
    return layers


def check_superadditive(f: MonoidFunction, degree_bound: int) -> SuperadditivityReport:
    """f(x) + f(y) <= f(x + y) for all x, y in the domain with deg(x + y) <= bound."""
    if f.declared_degree_bound is not None and degree_bound > f.declared_degree_bound:
        raise DegreeBoundExceeded("check bound exceeds the oracle's declared degree bound")
    layers = _points_by_degree(f.domain, degree_bound)
    checked = 0
    for total in range(degree_bound + 1):
        for dx in range(total // 2 + 1):
            for x in layers[dx]:
                for y in layers[total - dx]:
                    if dx == total - dx and y < x:
                        continue
                    checked += 1
                    z = tuple(a + b for a, b in zip(x, y))
                    if f(x) + f(y) > f(z):
                        return SuperadditivityReport(False, checked, (x, y))
    return SuperadditivityReport(True, checked)


def representations(S: FgMonoid, p, minimum: int = 0) -> Iterator[tuple[int, ...]]:
    """All coefficient vectors c with p = sum c_i e_i and every c_i >= minimum."""
    gens = S.generators
    base = tuple(a - minimum * sum(g[j] for g in gens) for j, a in enumerate(p))
    if any(c < 0 for c in base):
        return

    def rec(i, rem):
        if i == len(gens):
            if not any(rem):
                yield ()
            return
        g = gens[i]
        kmax = min(r // c for r, c in zip(rem, g) if c > 0)
        for k in range(kmax, -1, -1):
            for rest in rec(i + 1, tuple(r - k * c for r, c in zip(rem, g))):
                yield (k + minimum,) + rest

    yield from rec(0, base)


def one_point_additivity(f: MonoidFunction, s0, kappa_max: int) -> bool:
    """Check the hypothesis of the one-point additivity lemma at s0.

    True iff some representation s0 = sum s_i e_i with all s_i > 0 has
    f(s0) = sum s_i f(e_i), and f(k s0) = k f(s0) for k = 1..kappa_max.
    """
    s0 = tuple(s0)
    reps = list(itertools.islice(representations(f.domain, s0, minimum=1), 10_000))
    if not reps:
        raise ValueError(f"{s0} has no representation with every generator coefficient positive")
    fs0 = f(s0)
    gvals = [f(g) for g in f.domain.generators]
    if not any(fs0 == sum(c * v for c, v in zip(rep, gvals)) for rep in reps):
        return False
    return all(f(tuple(k * c for c in s0)) == k * fs0 for k in range(1, kappa_max + 1))


def compute_index(f: MonoidFunction, s, index_cap: int = DEFAULT_INDEX_CAP,
                  confirm: int = DEFAULT_CONFIRM) -> int:
    """Smallest lam <= index_cap with f(mu lam s) = mu f(lam s) for mu <= confirm."""
    s = tuple(s)
    for lam in range(1, index_cap + 1):
        base = tuple(lam * c for c in s)
        fb = f(base)
        if all(f(tuple(mu * c for c in base)) == mu * fb for mu in range(2, confirm + 1)):
            return lam
    raise IndexNotFound(s, index_cap)


def _clearing_multiple(S: FgMonoid, s, max_steps: int = 1_000) -> int:
    """Smallest k such that k s is a point of S, trying k = den, 2 den, ..."""
    den = la.lcm_denominators(s)
    for i in range(1, max_steps + 1):
        k = i * den
        p = tuple(int(c * k) for c in s)
        if monoid_membership(S, p)[0]:
            return k
    raise ValueError(f"no multiple of {s} up to {max_steps * den} lies in the monoid")


def straighten(f: MonoidFunction, s, index_cap: int = DEFAULT_INDEX_CAP, confirm: int = DEFAULT_CONFIRM,
               kappa: int | None = None) -> Fraction:
    """f#(s) = f(iota kappa s) / (iota kappa) with iota the index of kappa s."""
    s = la.as_fractions(s)
    if not any(s):
        return Fraction(0)
    if kappa is None:
        kappa = _clearing_multiple(f.domain, s)
    ks = tuple(int(c * kappa) for c in s)
    if any(Fraction(c) * kappa != k for c, k in zip(s, ks)):
        raise ValueError("kappa does not clear the denominators of s")
    iota = compute_index(f, ks, index_cap, confirm)
    return f(tuple(iota * c for c in ks)) / (iota * kappa)


class SuperlinearFunction:
    """A rational-valued function on the rational points of a cone."""

    def __init__(self, cone: RationalCone, evaluate: Callable, name: str = "f"):
        self.cone = cone
        self.evaluate = evaluate
        self.name = name
        self._memo: dict = {}

    def __call__(self, p) -> Fraction:
        p = la.as_fractions(p)
        try:
            return self._memo[p]
        except KeyError:
            v = Fraction(self.evaluate(p))
            self._memo[p] = v
            return v

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class StraightenedFunction(SuperlinearFunction):
    """The straightening f# of a superadditive monoid function with finite indices."""

    def __init__(self, base: MonoidFunction, index_cap: int = DEFAULT_INDEX_CAP, confirm: int = DEFAULT_CONFIRM):
        super().__init__(base.domain.cone(), self._value, name=f"{base.name}#")
        self.base = base
        self.index_cap = index_cap
        self.confirm = confirm
        self.index_table: dict = {}

    def index(self, s) -> int:
        s = tuple(int(c) for c in s)
        if s not in self.index_table:
            self.index_table[s] = compute_index(self.base, s, self.index_cap, self.confirm)
        return self.index_table[s]

    def _value(self, s):
        if not any(s):
            return Fraction(0)
        kappa = _clearing_multiple(self.base.domain, s)
        ks = tuple(int(c * kappa) for c in s)
        iota = self.index(ks)
        return self.base(tuple(iota * c for c in ks)) / (iota * kappa)


# ---------------------------------------------------------------------------
# Lipschitz estimate


@dataclass
class LipschitzReport:
    L: Fraction
    M: Fraction
    delta: Fraction
    pairs_checked: int
    max_ratio: Fraction
    ok: bool

    def __bool__(self):
        return self.ok


def _box_vertices(center, radius):
    return [tuple(c + s * radius for c, s in zip(center, signs))
            for signs in itertools.product((-1, 1), repeat=len(center))]


def lipschitz_estimate(F: SuperlinearFunction, center, radius, grid: int = 10) -> LipschitzReport:
    """L = 2M/delta on the sup-norm ball of radius delta around ``center``.

    M bounds |F - F(center)| on the doubled ball. For concave F the minimum over
    a box is attained at a vertex, and F(y) - F(c) <= F(c) - F(2c - y), so
    M = F(c) - min over vertices is certified by 2^r evaluations.
    """
    center = la.as_fractions(center)
    delta = Fraction(radius)
    if delta <= 0:
        raise ValueError("radius must be positive")
    if not F.cone.is_full_dimensional():
        raise BallTouchesBoundary("the domain cone has empty interior")
    doubled = _box_vertices(center, 2 * delta)
    for v in doubled:
        if not any(v) or cone_position(F.cone, v) is not ConePosition.RELATIVE_INTERIOR:
            raise BallTouchesBoundary(f"doubled ball around {center} reaches {v}")
    fc = F(center)
    M = fc - min(F(v) for v in doubled)
    L = 2 * M / delta
    steps = [Fraction(-1) + Fraction(2 * i, grid - 1) for i in range(grid)]
    pts = [tuple(c + s * delta for c, s in zip(center, combo))
           for combo in itertools.product(steps, repeat=len(center))]
    if len(pts) > 400:
        pts = pts[:: len(pts) // 400 + 1]
    vals = [F(p) for p in pts]
    max_ratio = Fraction(0)
    ok = True
    checked = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dist = max(abs(a - b) for a, b in zip(pts[i], pts[j]))
            diff = abs(vals[i] - vals[j])
            checked += 1
            if dist:
                max_ratio = max(max_ratio, diff / dist)
            if diff > L * dist:
                ok = False
    return LipschitzReport(L, M, delta, checked, max_ratio, ok)


# ---------------------------------------------------------------------------
# piecewise-linear detection


@dataclass
class LinearPiece:
    cone: RationalCone
    functional: tuple
    certificate: dict = field(default_factory=dict)

    def value(self, p) -> Fraction:
        return la.dot(self.functional, p)

    def to_doc(self) -> dict:
        return {
            "cone": self.cone.to_doc(),
            "functional": vec_to_doc(self.functional),
            "certificate": self.certificate,
        }


@dataclass
class PLDecomposition:
    pieces: list
    covered: RationalCone

    def functionals(self) -> list:
        out = []
        for piece in self.pieces:
            if piece.functional not in out:
                out.append(piece.functional)
        return out

    def verify(self, F: SuperlinearFunction, samples: Sequence) -> bool:
        """Every sample lies in some piece, and all pieces containing it agree with F."""
        for p in samples:
            hits = [pc for pc in self.pieces if pc.cone.contains(p)]
            if not hits:
                return False
            if any(pc.value(p) != F(p) for pc in hits):
                return False
        return True

    def to_doc(self) -> dict:
        return {"covered": self.covered.to_doc(), "pieces": [pc.to_doc() for pc in self.pieces]}


@dataclass
class NonPLEvidence:
    """Sampled rays carrying pairwise distinct local linear functionals.

    This is evidence, not a proof: non-PL behaviour is a statement about
    infinitely many pieces.
    """

    rays: list
    functionals: list
    unresolved: list
    resolution: int

    def distinct_slopes(self) -> int:
        return len(set(self.functionals))

    def to_doc(self) -> dict:
        return {
            "label": "evidence (not a certificate)",
            "resolution": f"2^-{self.resolution}",
            "rays": [vec_to_doc(r) for r in self.rays],
            "functionals": [vec_to_doc(f) for f in self.functionals],
            "unresolved": [[vec_to_doc(a), vec_to_doc(b)] for a, b in self.unresolved],
        }


def _unit(v):
    n = sum(abs(c) for c in v)
    return tuple(c / n for c in v)


def _sup_unit(v):
    n = max(abs(c) for c in v)
    return tuple(c / n for c in v)


def _functional_on(gens, values, equations) -> tuple:
    rows = [list(g) for g in gens] + [list(e) for e in equations]
    rhs = list(values) + [0] * len(equations)
    sol = la.solve(rows, rhs)
    if sol is None:
        raise ArithmeticError("inconsistent linear functional")
    return sol


class _Detector:
    def __init__(self, F, C, resolution, max_calls):
        self.F = F
        self.C = C
        self.res = Fraction(1, 2 ** resolution)
        self.eqs = C.hrep.equations
        self.calls = 0
        self.max_calls = max_calls

    def certify(self, gens):
        """Functional of F on cone(gens) if F(sum) = sum F, else None."""
        s0 = tuple(sum(col) for col in zip(*gens))
        vals = [self.F(g) for g in gens]
        if self.F(s0) != sum(vals):
            return None
        return _functional_on(gens, vals, self.eqs)

    # -- two-dimensional cones: walk the chord between the two rays

    def segments(self):
        A, B = (_unit(g) for g in self.C.generators)
        self.A, self.B = A, B
        pieces, unresolved = [], []
        self._explore(Fraction(0), Fraction(1), None, None, pieces, unresolved)
        pieces.sort()
        merged = []
        for t0, t1, ell in pieces:
            if merged and merged[-1][2] == ell and merged[-1][1] == t0:
                merged[-1] = (merged[-1][0], t1, ell)
            else:
                merged.append((t0, t1, ell))
        return merged, sorted(unresolved)

    def _pt(self, t):
        return tuple(a + t * (b - a) for a, b in zip(self.A, self.B))

    def _width(self, t0, t1):
        # rays compared in the sup-norm chart, i.e. on the affine slice where
        # the dominant coordinate is 1
        u, v = _sup_unit(self._pt(t0)), _sup_unit(self._pt(t1))
        return max(abs(a - b) for a, b in zip(u, v))

    def _local(self, t_from, t_to):
        width = t_to - t_from
        k = 1
        while self._width(t_from, t_from + width / 2 ** k) >= self.res:
            t = t_from + width / 2 ** k
            ell = self.certify([self._pt(t_from), self._pt(t)])
            if ell is not None:
                return ell
            k += 1
        return None

    def _explore(self, t0, t1, ell0, ell1, pieces, unresolved):
        self.calls += 1
        ell = self.certify([self._pt(t0), self._pt(t1)])
        if ell is not None:
            pieces.append((t0, t1, ell))
            return
        if self._width(t0, t1) < self.res or self.calls > self.max_calls:
            unresolved.append((t0, t1))
            return
        ell0 = ell0 or self._local(t0, t1)
        ell1 = ell1 or self._local(t1, t0)
        split = None
        if ell0 is not None and ell1 is not None and ell0 != ell1:
            diff = tuple(a - b for a, b in zip(ell0, ell1))
            num = -la.dot(diff, self.A)
            den = la.dot(diff, tuple(b - a for a, b in zip(self.A, self.B)))
            if den != 0:
                t = num / den
                if t0 < t < t1:
                    split = t
        if split is None:
            split = (t0 + t1) / 2
        self._explore(t0, split, ell0, None, pieces, unresolved)
        self._explore(split, t1, None, ell1, pieces, unresolved)

    # -- general dimension: split simplices along the wall between two local
    # functionals when the vertices disagree, otherwise bisect the longest edge

    def _vertex_functional(self, gens, i):
        v = gens[i]
        k = 1
        while True:
            shrunk = [v if j == i else tuple(a + (b - a) / 2 ** k for a, b in zip(v, g))
                      for j, g in enumerate(gens)]
            width = max(max(abs(a - b) for a, b in zip(_sup_unit(v), _sup_unit(g))) for g in shrunk)
            if width < self.res:
                return None
            ell = self.certify(shrunk)
            if ell is not None:
                return ell
            k += 1

    def _wall_split(self, gens):
        ells = [self._vertex_functional(gens, i) for i in range(len(gens))]
        for a, b in itertools.combinations([e for e in ells if e is not None], 2):
            if a == b:
                continue
            h = tuple(x - y for x, y in zip(a, b))
            vals = [la.dot(h, g) for g in gens]
            if not (any(v > 0 for v in vals) and any(v < 0 for v in vals)):
                continue
            cut = []
            for i, j in itertools.combinations(range(len(gens)), 2):
                if vals[i] * vals[j] < 0:
                    lam = vals[i] / (vals[i] - vals[j])
                    cut.append(tuple(x + lam * (y - x) for x, y in zip(gens[i], gens[j])))
            cut += [g for g, v in zip(gens, vals) if v == 0]
            sides = []
            for sign in (1, -1):
                side = [g for g, v in zip(gens, vals) if sign * v > 0] + cut
                for T in simplicial_subdivision(RationalCone(tuple(side))):
                    sides.append(tuple(_unit(g) for g in T.generators))
            return sides
        return None

    def simplices(self, max_pieces):
        todo = [tuple(_unit(g) for g in T.generators) for T in simplicial_subdivision(self.C)]
        pieces, unresolved = [], []
        while todo:
            gens = todo.pop()
            ell = self.certify(list(gens))
            if ell is not None:
                pieces.append((gens, ell))
                continue
            edges = [(sum(abs(a - b) for a, b in zip(gens[i], gens[j])), i, j)
                     for i in range(len(gens)) for j in range(i + 1, len(gens))]
            width, i, j = max(edges)
            if width < self.res or len(pieces) + len(todo) > max_pieces:
                unresolved.append(gens)
                continue
            split = self._wall_split(gens)
            if split is not None:
                todo.extend(split)
                continue
            mid = _unit(tuple((a + b) / 2 for a, b in zip(gens[i], gens[j])))
            todo.append(tuple(mid if k == i else g for k, g in enumerate(gens)))
            todo.append(tuple(mid if k == j else g for k, g in enumerate(gens)))
        return pieces, unresolved


def certify_piece(F: SuperlinearFunction, cone: RationalCone, functional, coordinate_bound: int = 512) -> dict:
    """Certificate for linearity of F on ``cone`` (one-point lemma at s0 = sum e_i).

    For straightenings the e_i are the Hilbert basis of cone & S, and the
    truncation mu (lcm of the indices involved) is checked with the monoid
    form of the lemma. Raises ArithmeticError if the certificate fails.
    """
    if isinstance(F, StraightenedFunction):
        hb = hilbert_basis_intersection(F.base.domain, cone, coordinate_bound=coordinate_bound).generators
    else:
        hb = tuple(la.primitive(g) for g in cone.generators)
    s0 = tuple(sum(col) for col in zip(*hb))
    values = [F(e) for e in hb]
    if F(s0) != sum(values):
        raise ArithmeticError(f"one-point certificate fails on {cone}")
    if any(la.dot(functional, e) != v for e, v in zip(hb, values)):
        raise ArithmeticError("functional does not reproduce the certificate values")
    cert = {
        "basis": [list(e) for e in hb],
        "s0": list(s0),
        "values": [q_to_doc(v) for v in values],
        "value_s0": q_to_doc(F(s0)),
    }
    if isinstance(F, StraightenedFunction):
        mu = 1
        for e in list(hb) + [s0]:
            mu = _lcm(mu, F.index(e))
        trunc = FgMonoid(tuple(tuple(mu * c for c in e) for e in hb))
        g = F.base.restrict(trunc)
        ok = one_point_additivity(g, tuple(mu * c for c in s0), DEFAULT_CONFIRM)
        if not ok:
            raise ArithmeticError("truncated one-point additivity fails")
        cert["truncation"] = mu
        cert["one_point_additivity"] = True
    return cert


def pl_detect(F: SuperlinearFunction, C: RationalCone, ray_resolution: int = 12, min_evidence: int = 10,
              max_calls: int = 20_000, certify: bool = True):
    """Certified rational PL decomposition of F on C, or non-PL evidence.

    Raises PLInconclusive when neither a full decomposition nor enough
    distinct slopes are found at the given resolution (2^-ray_resolution).
    """
    for g in C.generators:
        if cone_position(F.cone, g) is not ConePosition.RELATIVE_INTERIOR:
            raise ValueError(f"cone generator {g} is not interior to the domain cone")
    det = _Detector(F, C, ray_resolution, max_calls)
    if C.dim == 1:
        g = C.generators[0]
        raw = [((g,), _functional_on([g], [F(g)], C.hrep.equations))]
        unresolved = []
    elif C.dim == 2:
        segs, unresolved_t = det.segments()
        raw = [((det._pt(t0), det._pt(t1)), ell) for t0, t1, ell in segs]
        unresolved = [(det._pt(t0), det._pt(t1)) for t0, t1 in unresolved_t]
    else:
        raw, unresolved = det.simplices(max_calls)

    if not unresolved:
        pieces = []
        for gens, ell in raw:
            cone = RationalCone(tuple(la.primitive(g) for g in gens))
            cert = certify_piece(F, cone, ell) if certify else {}
            pieces.append(LinearPiece(cone, tuple(ell), cert))
        return PLDecomposition(pieces, C)

    rays, functionals = [], []
    for gens, ell in raw:
        if tuple(ell) in functionals:
            continue
        rays.append(tuple(sum(col) / len(gens) for col in zip(*gens)))
        functionals.append(tuple(ell))
    if len(functionals) >= min_evidence:
        unres = [(gens[0], gens[-1]) for gens in unresolved]
        return NonPLEvidence(rays, functionals, unres, ray_resolution)
    raise PLInconclusive(
        f"{len(unresolved)} region(s) unresolved at resolution 2^-{ray_resolution}, "
        f"only {len(functionals)} distinct slope(s) found"
    )


# ---------------------------------------------------------------------------
# the rational-valued, superlinear, non-PL example on cone((-1,1),(1,0))


class NonPLExample(SuperlinearFunction):
    """f(x_n) with x_n = (2^-n, 1), linear on each cone spanned by x_n, x_{n+1}.

    f(x_2) = 3, eps_2 = 23/8, f(x_n) = (f(x_{n-1}) + eps_{n-1}) / 2 and eps_n is
    the midpoint of (f(x_n) - 2^-n, eps_{n-1}). Both sequences converge to 17/6.
    """

    X1_VALUE = Fraction(1, 2)

    def __init__(self, check_upto: int = 60):
        cone = RationalCone(((-1, 1), (1, 0)))
        super().__init__(cone, self._value, name="example")
        self._fx = {2: Fraction(3)}
        self._eps = {2: Fraction(23, 8)}
        # d_n = f(x_n) - eps_n obeys d_n = d_{n-1}/4 + 2^-(n+1); summing gives 1/3
        total_gap = (Fraction(1, 8) + Fraction(1, 8)) / (1 - Fraction(1, 4))
        self.limit = self._fx[2] - total_gap / 2
        for n in range(3, check_upto + 1):
            lo = self.fx(n) - Fraction(1, 2 ** n)
            assert lo < self.eps(n) < self.eps(n - 1), n
            assert self.limit < self.eps(n)

    def fx(self, n: int) -> Fraction:
        if n not in self._fx:
            self._fx[n] = (self.fx(n - 1) + self.eps(n - 1)) / 2
        return self._fx[n]

    def eps(self, n: int) -> Fraction:
        if n not in self._eps:
            self._eps[n] = (self.fx(n) - Fraction(1, 2 ** n) + self.eps(n - 1)) / 2
        return self._eps[n]

    def slope(self, n: int) -> Fraction:
        """Slope along the line y = 1 on the segment [2^-(n+1), 2^-n]."""
        return (self.fx(n) - self.fx(n + 1)) * 2 ** (n + 1)

    def _value(self, p):
        a, b = p
        if b < 0 or a + b < 0:
            raise ValueError(f"{p} is outside the domain cone")
        if b == 0:
            return a * self.X1_VALUE
        t = a / b
        if t <= 0:
            return b * (self.limit + t)
        if t >= Fraction(1, 4):
            return b * (self.fx(2) + (t - Fraction(1, 4)) * self.X1_VALUE)
        inv = 1 / t
        n = (inv.numerator // inv.denominator).bit_length() - 1
        lo = Fraction(1, 2 ** (n + 1))
        return b * (self.fx(n + 1) + self.slope(n) * (t - lo))


def build_example_3_3() -> NonPLExample:
    return NonPLExample()


def example_pieces(F: NonPLExample, depth: int = 12) -> list:
    """Generator pairs of the linearity cones of the example, down to C_depth."""
    pieces = [((-1, 1), (0, 1)), ((Fraction(1, 4), 1), (1, 0))]
    for n in range(2, depth + 1):
        pieces.append(((Fraction(1, 2 ** (n + 1)), 1), (Fraction(1, 2 ** n), 1)))
    return pieces


def sample_cross_cone_pairs(F: NonPLExample, rng, count: int, depth: int = 12) -> list:
    """Pairs (x, y) drawn from two different linearity cones of the example."""
    pieces = example_pieces(F, depth)
    out = []
    for _ in range(count):
        i, j = rng.sample(range(len(pieces)), 2)
        pts = []
        for k in (i, j):
            g, h = pieces[k]
            lam = Fraction(rng.randint(1, 64), rng.randint(1, 16))
            mu = Fraction(rng.randint(0, 64), rng.randint(1, 16))
            pts.append(tuple(lam * a + mu * b for a, b in zip(g, h)))
        out.append((pts[0], pts[1]))
    return out
