"""Simultaneous Diophantine approximants, the u-system and the v_n walk.

Target points have coordinates in a field Q(sqrt(m1), ...), so every
comparison the walk needs (which cone contains v_n, which side of a wall,
nearest integers) is decided exactly.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .surd import Surd, parse_surd


class ApproximantNotFound(RuntimeError):
    pass


class DegenerateCoordinate(ValueError):
    def __init__(self, i: int):
        super().__init__(f"q x_{i} is an integer while x has irrational coordinates; u_{i} is undefined")
        self.index = i


class AmbiguousStep(RuntimeError):
    def __init__(self, n: int, candidates):
        super().__init__(f"step {n}: v_n lies on a wall between cones {sorted(candidates)}")
        self.step = n
        self.candidates = tuple(sorted(candidates))


@dataclass(frozen=True)
class TargetPoint:
    coords: tuple  # of Surd, coords[0] == 1

    def __post_init__(self):
        cs = tuple(Surd.coerce(c) for c in self.coords)
        if not cs or cs[0] != Surd(1):
            raise ValueError("the first coordinate of a target point must be 1")
        object.__setattr__(self, "coords", cs)

    @classmethod
    def parse(cls, descriptors: Sequence) -> "TargetPoint":
        return cls(tuple(parse_surd(str(d)) for d in descriptors))

    @property
    def r(self) -> int:
        return len(self.coords) - 1

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coords)

    def descriptors(self) -> list[str]:
        return [str(c) for c in self.coords]


@dataclass(frozen=True)
class Distance:
    """‖alpha‖ held exactly, with a rational enclosure for reporting."""

    value: Surd
    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self):
        return float(self.value)


def _precision_bits(precision) -> int:
    precision = Fraction(precision)
    return max(8, math.ceil(math.log2(1 / precision)) + 2)


def nearest_integer_distance(alpha, precision=Fraction(1, 10 ** 12)) -> Distance:
    alpha = Surd.coerce(alpha) if not isinstance(alpha, str) else parse_surd(alpha)
    lo_int = alpha.floor()
    value = min(alpha - lo_int, (lo_int + 1) - alpha)
    if value.is_rational():
        v = value.rational()
        return Distance(value, v, v)
    lo, hi = value.enclosure(_precision_bits(precision))
    return Distance(value, lo, hi)


@dataclass
class Approximant:
    q: int
    p: tuple
    errors: tuple  # Distance per coordinate
    certified_bits: int = 0

    def to_doc(self) -> dict:
        return {
            "q": self.q,
            "p": list(self.p),
            "errors": [str(e.value) for e in self.errors],
            "errors_float": [float(e) for e in self.errors],
        }


def _meets_bound(err: Surd, q: int, r: int) -> bool:
    # ‖q x_i‖ < q^(-1/r)  <=>  ‖q x_i‖^r * q < 1
    return (err ** r * q) < 1


def _certify_by_enclosure(errors, q: int, r: int) -> int:
    """Smallest enclosure width (in bits) whose upper bounds prove the bound; re-checked at double width."""
    bits = 16
    while True:
        if all(e.value.enclosure(bits)[1] ** r * q < 1 for e in errors):
            break
        bits *= 2
        if bits > 1 << 14:
            raise ArithmeticError("enclosures failed to certify an exactly valid approximant")
    if not all(e.value.enclosure(2 * bits)[1] ** r * q < 1 for e in errors):
        raise ArithmeticError("certification lost at doubled precision")
    return bits


def find_approximant(x: TargetPoint, q_max: int, q_min: int = 1, precision=Fraction(1, 10 ** 12)) -> Approximant:
    """Smallest q in [q_min, q_max] with ‖q x_i‖ < q^(-1/r) for every i.

    Only q with q^(1/r) > r (i.e. q > r^r) are admissible, which keeps
    sum ‖q x_i‖ < 1 so the u_0 weight is positive.
    """
    r = x.r
    if r < 1:
        raise ValueError("target point needs at least one coordinate after the leading 1")
    start = max(q_min, r ** r + 1, 1)
    for q in range(start, q_max + 1):
        errs = []
        for c in x.coords[1:]:
            e = nearest_integer_distance(c * q, precision)
            if not _meets_bound(e.value, q, r):
                break
            errs.append(e)
        else:
            p = tuple((c * q + Fraction(1, 2)).floor() for c in x.coords[1:])
            a = Approximant(q, p, tuple(errs))
            a.certified_bits = _certify_by_enclosure(a.errors, q, r)
            return a
    raise ApproximantNotFound(f"no approximant with {start} <= q <= {q_max}")


@dataclass
class USystem:
    u: tuple  # u_0 ... u_r, integer tuples
    weights: tuple  # Surd weights of u_0 ... u_r
    q: int
    p: tuple
    qx: tuple  # Surd coordinates of q x

    def relation_residual(self) -> tuple:
        """(1 - sum w_i) u_0 + sum w_i u_i - q x, exactly."""
        out = []
        for k in range(len(self.qx)):
            s = sum((w * u[k] for w, u in zip(self.weights, self.u)), Surd())
            out.append(s - self.qx[k])
        return tuple(out)

    def to_doc(self) -> dict:
        return {
            "u": [list(v) for v in self.u],
            "weights": [str(w) for w in self.weights],
            "weights_float": [float(w) for w in self.weights],
        }


def build_u_system(x: TargetPoint, a: Approximant) -> USystem:
    q, r = a.q, x.r
    qx = tuple(c * q for c in x.coords)
    u0 = (q,) + tuple(a.p)
    us = [u0]
    for i in range(1, r + 1):
        diff = qx[i] - a.p[i - 1]
        s = diff.sign()
        if s == 0:
            if not x.is_rational():
                raise DegenerateCoordinate(i)
            s = 1  # weight of u_i is 0; pick the ceiling side
        hat = a.p[i - 1] + (1 if s > 0 else -1)
        us.append(tuple(hat if k == i else c for k, c in enumerate(u0)))
    ws = [e.value for e in a.errors]
    w0 = 1 - sum(ws, Surd())
    system = USystem(tuple(us), (w0,) + tuple(ws), q, tuple(a.p), qx)
    if any(system.relation_residual()):
        raise ArithmeticError("convex relation fails; approximant is inconsistent with x")
    return system


# ---------------------------------------------------------------------------
# the walk


@dataclass
class WalkState:
    n: int
    v: tuple
    j: int
    e: Fraction | None = None


@dataclass
class WalkReport:
    N: int
    checkpoints: list  # dicts with n, d, block_max
    block_maxima_decreasing: bool
    tally: tuple
    tally_errors: tuple
    tally_ok: bool
    hyperplanes: int
    hyperplane_steps_checked: int
    hyperplane_violations: list
    e_negative: int = 0
    e_min: Fraction | None = None
    e_logged: list = field(default_factory=list)

    @property
    def d_final(self) -> float:
        return self.checkpoints[-1]["d"]


@dataclass
class WalkResult:
    system: USystem
    js: list
    report: WalkReport

    def states(self) -> "itertools.Iterator[WalkState]":
        v = tuple(sum(col) for col in zip(*self.system.u))
        for n, j in enumerate(self.js):
            yield WalkState(n, v, j)
            v = tuple(a + b for a, b in zip(v, self.system.u[j]))

    def j_rle(self) -> list:
        return [[j, len(list(g))] for j, g in itertools.groupby(self.js)]

    def to_doc(self) -> dict:
        rep = self.report
        return {
            "q": self.system.q,
            "p": list(self.system.p),
            **self.system.to_doc(),
            "N": rep.N,
            "checkpoints": rep.checkpoints,
            "block_maxima_decreasing": rep.block_maxima_decreasing,
            "tally": list(rep.tally),
            "tally_ok": rep.tally_ok,
            "hyperplanes": rep.hyperplanes,
            "hyperplane_steps_checked": rep.hyperplane_steps_checked,
            "hyperplane_violations": rep.hyperplane_violations[:20],
            "e_negative": rep.e_negative,
            "j_rle": self.j_rle(),
        }


class _RatioCompare:
    """Decide alpha_i / w_i < alpha_k / w_k with a float filter and an exact fallback."""

    def __init__(self, weights):
        self.w = weights
        self.wf = [float(w) for w in weights]

    def cmp(self, ai: int, i: int, ak: int, k: int) -> int:
        lhs = ai * self.wf[k]
        rhs = ak * self.wf[i]
        scale = max(abs(lhs), abs(rhs), 1e-300)
        if abs(lhs - rhs) > 1e-9 * scale:
            return -1 if lhs < rhs else 1
        return (self.w[k] * ai - self.w[i] * ak).sign()


class _IntSurds:
    """Surds over a fixed radical basis with a common denominator, as int tuples.

    The walk adds the same few increments 10^5 times; int tuples with a float
    sign filter are much cheaper than general Surd arithmetic. Signs that the
    filter cannot settle fall back to exact Surd signs.
    """

    def __init__(self, values):
        radicals = sorted({m for v in values for m in v.terms})
        den = 1
        for v in values:
            for c in v.terms.values():
                den = den * c.denominator // math.gcd(den, c.denominator)
        self.radicals = radicals or [1]
        self.den = den
        self.roots = [math.sqrt(m) for m in self.radicals]

    def encode(self, v: Surd) -> tuple:
        return tuple(int(v.terms.get(m, 0) * self.den) for m in self.radicals)

    def decode(self, c) -> Surd:
        return Surd({m: Fraction(k, self.den) for m, k in zip(self.radicals, c)})

    def sign(self, c) -> int:
        val = 0.0
        mag = 0.0
        for k, rt in zip(c, self.roots):
            val += k * rt
            mag += abs(k) * rt
        if abs(val) > 1e-12 * mag:
            return 1 if val > 0 else -1
        return self.decode(c).sign()


def _hyperplane_normals(system: USystem) -> list:
    """Normals (in the slice z_0 = q) of the hyperplanes through qx and r-1 of the u_j."""
    r = len(system.u) - 1
    qx = [c for c in system.qx[1:]]
    pts = [tuple(Fraction(c) for c in u[1:]) for u in system.u]
    normals = []
    for subset in itertools.combinations(range(r + 1), r - 1):
        dirs = [tuple(Surd(c) - x for c, x in zip(pts[j], qx)) for j in subset]
        # normal = generalized cross product of the r-1 directions in R^r
        a = []
        for col in range(r):
            minor = [[row[c] for c in range(r) if c != col] for row in dirs]
            a.append(_surd_det(minor) * (-1) ** col)
        if all(not c for c in a):
            continue
        normals.append((subset, tuple(a)))
    return normals


def _surd_det(rows) -> Surd:
    n = len(rows)
    if n == 0:
        return Surd(1)
    if n == 1:
        return rows[0][0]
    total = Surd()
    for c in range(n):
        minor = [row[:c] + row[c + 1:] for row in rows[1:]]
        total = total + rows[0][c] * _surd_det(minor) * (-1) ** c
    return total


def walk(system: USystem, x: TargetPoint, N: int, f=None, check_hyperplanes: bool = True,
         burn_in: int = 8) -> WalkResult:
    """Run N steps of v_{n+1} = v_n + u_{j_n} starting from v_0 = sum u_i."""
    r = len(system.u) - 1
    if any(not w for w in system.weights):
        zero = [i for i, w in enumerate(system.weights) if not w]
        raise AmbiguousStep(0, zero + [i for i in range(r + 1) if i not in zero][:1])
    cmp = _RatioCompare(system.weights)
    alpha = [1] * (r + 1)
    us = system.u
    v = [sum(col) for col in zip(*us)]
    qx_f = [float(c) for c in system.qx]

    normals = _hyperplane_normals(system) if check_hyperplanes else []
    # T_n = <a, v_n'> - (n+r+1) <a, qx'> in the slice z_0 = q; dist(w_n, H) = |T_n| / ((n+r+1)|a|)
    incs = []
    for _, a in normals:
        adx = sum((ai * xi for ai, xi in zip(a, system.qx[1:])), Surd())
        incs.append([sum((ai * ui for ai, ui in zip(a, u[1:])), Surd()) - adx for u in us])
    a_norm2 = [sum((c * c for c in a), Surd()) for _, a in normals]
    enc = _IntSurds([v for row in incs for v in row])
    inc_int = [[enc.encode(v) for v in row] for row in incs]
    t_vals = [tuple(map(sum, zip(*row))) for row in inc_int]
    t_sign = [enc.sign(t) for t in t_vals]
    diam2 = 2
    hp_checked = 0
    hp_viol: list = []

    js: list = []
    checkpoints = []
    next_cp = 1
    block_max = 0.0
    block_maxima = []
    e_neg, e_min, e_logged = 0, None, []
    fv = f(tuple(v)) if f is not None else None
    fu = [f(u) for u in us] if f is not None else None

    for n in range(N):
        # j = argmin alpha_i / w_i, required to be unique
        best = [0]
        for i in range(1, r + 1):
            c = cmp.cmp(alpha[i], i, alpha[best[0]], best[0])
            if c < 0:
                best = [i]
            elif c == 0:
                best.append(i)
        if len(best) > 1:
            raise AmbiguousStep(n, best)
        j = best[0]
        js.append(j)
        v = [a + b for a, b in zip(v, us[j])]
        alpha[j] += 1
        m = n + 1
        if f is not None:
            fn = f(tuple(v))
            e = fn - fv - fu[j]
            fv = fn
            if e < 0:
                e_neg += 1
            e_min = e if e_min is None else min(e_min, e)
            if m & (m - 1) == 0:
                e_logged.append({"n": m, "e": str(e)})
        for h in range(len(normals)):
            old = t_vals[h]
            new = tuple(a + b for a, b in zip(old, inc_int[h][j]))
            t_vals[h] = new
            so, sn = t_sign[h], enc.sign(new)
            t_sign[h] = sn
            hp_checked += 1
            if so != 0 and so == sn:
                # |new| / (m + r + 1) < |old| / (m + r)
                gap = tuple(so * (a * (m + r + 1) - b * (m + r)) for a, b in zip(old, new))
                if enc.sign(gap) <= 0:
                    hp_viol.append({"n": m, "hyperplane": list(normals[h][0]), "kind": "not-decreasing"})
            else:
                # dist(w_m, H)^2 < diam^2 / (m+r+1)^2  <=>  T^2 < diam^2 |a|^2
                tv = enc.decode(new)
                if not (tv * tv < a_norm2[h] * diam2):
                    hp_viol.append({"n": m, "hyperplane": list(normals[h][0]), "kind": "crossing-bound"})
        denom = m + r + 1
        d = math.sqrt(sum((vi / denom - xi) ** 2 for vi, xi in zip(v, qx_f)))
        block_max = max(block_max, d)
        if m == next_cp or m == N:
            exact_d2 = sum(((Surd(Fraction(vi, denom)) - xi) ** 2 for vi, xi in zip(v, system.qx)), Surd())
            lo, hi = exact_d2.enclosure(64)
            checkpoints.append({
                "n": m,
                "d": math.sqrt(float(hi)),
                "d_enclosure": [math.sqrt(float(lo)), math.sqrt(float(hi))],
                "block_max": block_max,
            })
            block_maxima.append(block_max)
            block_max = 0.0
            if m == next_cp:
                next_cp *= 2

    # blocks (2^(k-1), 2^k] from n > burn_in on; the last block may be partial
    full_blocks = [b for b, cp in zip(block_maxima, checkpoints) if cp["n"] > 2 * burn_in]
    decreasing = all(b < a for a, b in zip(full_blocks, full_blocks[1:]))
    total = N + r + 1
    d_final = checkpoints[-1]["d"] if checkpoints else float("inf")
    tally_err = tuple(abs(a / total - float(w)) for a, w in zip(alpha, system.weights))
    tally_ok = all(e <= 10 * d_final for e in tally_err)
    report = WalkReport(
        N=N,
        checkpoints=checkpoints,
        block_maxima_decreasing=decreasing,
        tally=tuple(alpha),
        tally_errors=tally_err,
        tally_ok=tally_ok,
        hyperplanes=len(normals),
        hyperplane_steps_checked=hp_checked,
        hyperplane_violations=hp_viol,
        e_negative=e_neg,
        e_min=e_min,
        e_logged=e_logged,
    )
    return WalkResult(system, js, report)
