"""Shared strategies and independent oracles.

The oracles here deliberately avoid the package's own linear algebra and
enumeration code so that tests compare two separate computations.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


# ---------------------------------------------------------------------------
# small exact linear algebra, written independently of bdivalg._linalg


def det(rows) -> Fraction:
    n = len(rows)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * Fraction(rows[0][j]) * det(minor)
    return total


def cramer(cols, p):
    """Coordinates of p in the basis cols (square, invertible), by Cramer's rule."""
    n = len(cols)
    A = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
    D = det(A)
    out = []
    for k in range(n):
        Ak = [row[:k] + [Fraction(p[i])] + row[k + 1:] for i, row in enumerate(A)]
        out.append(det(Ak) / D)
    return out


def in_simplicial_cone(gens, p) -> bool:
    return all(c >= 0 for c in cramer(gens, p))


def box_points(bound: int, r: int):
    return product(range(bound + 1), repeat=r)


def reachable_in_box(gens, bound: int, r: int) -> set:
    """All N-combinations of gens that stay inside [0, bound]^r."""
    zero = (0,) * r
    seen = {zero}
    stack = [zero]
    while stack:
        p = stack.pop()
        for g in gens:
            q = tuple(a + b for a, b in zip(p, g))
            if max(q) <= bound and q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def saturation_holds(m_of, f, s_points, B) -> bool:
    """ceil((mu/nu) m(nu s) - f) <= m(mu s), straight from the definition."""
    for s in s_points:
        for mu in range(1, B + 1):
            for nu in range(1, B + 1):
                lhs = math.ceil(Fraction(mu, nu) * m_of(tuple(nu * c for c in s)) - f)
                if lhs > m_of(tuple(mu * c for c in s)):
                    return False
    return True


def max_plus_closure(gens_vals, point, memo=None):
    """max sum of generator values over all N-decompositions of point (None if none)."""
    if memo is None:
        memo = {}
    if not any(point):
        return 0
    if point in memo:
        return memo[point]
    best = None
    for g, v in gens_vals:
        rest = tuple(a - b for a, b in zip(point, g))
        if min(rest) < 0:
            continue
        sub = max_plus_closure(gens_vals, rest, memo)
        if sub is not None and (best is None or sub + v > best):
            best = sub + v
    memo[point] = best
    return best


# ---------------------------------------------------------------------------
# strategies


small_pos = st.integers(min_value=1, max_value=6)


@st.composite
def monoid_generators(draw, r=None, max_coord=6, max_gens=4):
    r = r or draw(st.integers(1, 3))
    n = draw(st.integers(1, max_gens))
    gens = draw(st.lists(st.tuples(*[st.integers(0, max_coord)] * r).filter(any), min_size=n, max_size=n))
    if r > 1:
        # keep S full rank so the cones below can be interior
        gens += [tuple(int(i == j) for j in range(r)) for i in range(r)]
    return r, gens


@st.composite
def simplicial_generators(draw, r, max_coord=6):
    while True:
        gens = draw(st.lists(st.tuples(*[st.integers(0, max_coord)] * r).filter(any), min_size=r, max_size=r))
        if det([list(g) for g in gens]) != 0:
            return gens


positive_fractions = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=12)
