"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are printed
even when output capture is on.
"""
from fractions import Fraction
import math
import random
import time

import pytest

from bdivalg.curve_algebra import (
    SaturationDatum,
    check_saturation,
    dichotomy_check,
    finite_generation_pipeline,
    floor_linear_system,
    graded_piece_oracle,
    index_bound_check,
    oracle_minimal_generators,
    random_floor_linear_system,
    random_interior_cone,
)
from bdivalg.diophantine import TargetPoint, build_u_system, find_approximant, walk
from bdivalg.expressions import FloorExpression
from bdivalg.lattice_cone import FgMonoid, HilbertBoundExceeded, RationalCone, enumerate_points, hilbert_basis_intersection
from bdivalg.superlinear import NonPLEvidence, PLDecomposition, build_example_3_3, compute_index, pl_detect, sample_cross_cone_pairs

from conftest import det, in_simplicial_cone, max_plus_closure, reachable_in_box

N1 = FgMonoid(((1,),))


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
    return emit


def sharp_expression(expr: str, rank: int) -> FloorExpression:
    """The real-valued g with m = floor(g), read off a 'floor(...)' expression."""
    assert expr.startswith("floor(") and expr.endswith(")")
    return FloorExpression(expr[len("floor("):-1], rank)


# ---------------------------------------------------------------------------
# 1. Gordan / Hilbert basis


def _random_pair(rng):
    r = rng.randint(1, 3)
    while True:
        n = rng.randint(1, 3) if r == 1 else rng.randint(r, r + 2)
        sgens = [tuple(rng.randint(0, 6) for _ in range(r)) for _ in range(n)]
        sgens = [g for g in sgens if any(g)]
        cgens = [tuple(rng.randint(0, 6) for _ in range(r)) for _ in range(r)]
        if not sgens or det([list(g) for g in cgens]) == 0:
            continue
        S, C = FgMonoid(tuple(sgens)), RationalCone(tuple(cgens))
        try:
            hb = hilbert_basis_intersection(S, C, coordinate_bound=120)
        except (ValueError, HilbertBoundExceeded):
            continue
        return r, S, cgens, hb


def test_criterion_1_hilbert_basis(report):
    rng = random.Random(20240601)
    bound = 20
    failures, points = 0, 0
    for _ in range(50):
        r, S, cgens, hb = _random_pair(rng)
        target = {p for p in reachable_in_box(S.generators, bound, r) if any(p) and in_simplicial_cone(cgens, p)}
        generated = reachable_in_box(hb.generators, bound, r)
        points += len(target)
        if not target <= generated:
            failures += 1
    ok = failures == 0
    report(1, ok, f"50 (S, C) pairs, {points} lattice points of S&C in [0,20]^r checked, {failures} uncovered")
    assert ok


# ---------------------------------------------------------------------------
# 2. saturation => dichotomy => index bound


def _oracle_gap_and_index(inst, P, s):
    """e_s = frac(g(s)) and iota_s = denominator of g(s), from the closed form."""
    g = sharp_expression(inst.expressions[P], len(s)).evaluate_slow(s)
    return g - math.floor(g), g.denominator


def test_criterion_2_saturation_chain(report):
    t0 = time.perf_counter()
    violations = []
    oracle_checked = 0
    for seed in range(100):
        inst = random_floor_linear_system(seed, max_den=6)
        m, F = inst.system, inst.F
        for cert in (check_saturation(m, F, 50, 12), dichotomy_check(m, F, 50), index_bound_check(m, F, 50)):
            if not cert.passed:
                violations.append((seed, cert.check, cert.witnesses[:1]))
        # independent check of the dichotomy and the index bound on low degrees
        for P in m.declared_support:
            D = inst.denominators[P]
            b = Fraction(1, D)
            comp = m.component(P)
            for s in enumerate_points(m.domain, max_degree=12):
                if not any(s):
                    continue
                e, den = _oracle_gap_and_index(inst, P, s)
                oracle_checked += 1
                if not (e == 0 or b <= e <= 1 - b) or den > math.floor(1 / b):
                    violations.append((seed, "oracle", s))
                if compute_index(comp, s, 64, 12) != den:
                    violations.append((seed, "index-mismatch", s))
    elapsed = time.perf_counter() - t0
    ok = not violations
    report(2, ok, f"100 systems, bounds (50, 12), {len(violations)} violations, "
                  f"{oracle_checked} closed-form cross-checks, {elapsed:.1f}s")
    assert ok, violations[:3]


# ---------------------------------------------------------------------------
# 3. finite generation pipeline


def test_criterion_3_pipeline(report):
    rng = random.Random(7)
    bad = []
    for k in range(30):
        inst = random_floor_linear_system(1000 + k, rank=2)
        m, F = inst.system, inst.F
        C = random_interior_cone(rng, 2)
        res = finite_generation_pipeline(m, C, F, oracle_degree=30)
        expect_kappa = math.factorial(max(inst.denominators.values()))
        certified = all(isinstance(d, PLDecomposition) for d in res.decompositions.values())
        certified = certified and len(res.decompositions) == len(m.declared_support)
        if not (res.certificate.passed and certified and res.kappa == expect_kappa):
            bad.append((k, res.certificate.verdict.value, res.kappa, expect_kappa))
            continue
        if not all(all(c % res.kappa == 0 for c in g) for g in res.truncation.points()):
            bad.append((k, "truncation not in kappa-multiples"))
        oracle = res.oracle
        if not graded_piece_oracle(m, oracle, 30).passed:
            bad.append((k, "graded pieces"))
        # independent max-plus recomputation on a box, low degree
        target_pts = [p for p in reachable_in_box(res.oracle.target.generators, 10, 2) if any(p)]
        for P in m.declared_support:
            gv = [(g, d[P]) for g, d in oracle.entries]
            memo: dict = {}
            if any(max_plus_closure(gv, p, memo) != m(p)[P] for p in target_pts if sum(p) <= 30):
                bad.append((k, "max-plus oracle", P))

    m = floor_linear_system(N1, {"P": "floor(5n/3)"})
    res = finite_generation_pipeline(m, RationalCone(((1,),)), SaturationDatum({"P": Fraction(2, 3)}),
                                     oracle_degree=30)
    gens = [(s, d["P"]) for s, d in res.oracle.entries]
    worked = (res.certificate.passed and res.b["P"].b == Fraction(1, 3) and res.kappa == 6
              and gens == [((1,), 1), ((2,), 3), ((3,), 5)])
    ok = not bad and worked
    report(3, ok, f"30 rank-2 instances, {len(bad)} failures; floor(5n/3): b = {res.b['P'].b}, "
                  f"kappa = {res.kappa}, generators {[(s[0], f'{v}P') for s, v in gens]}")
    assert ok, bad[:3]


# ---------------------------------------------------------------------------
# 4. the walk towards q x for x = (1, sqrt 2)


def test_criterion_4_walk(report):
    x = TargetPoint.parse(["1", "sqrt(2)"])
    a = find_approximant(x, 100)
    system = build_u_system(x, a)
    N = 10 ** 5
    res = walk(system, x, N)
    rep = res.report
    d_final = rep.checkpoints[-1]["d"]
    ok = ((a.q, a.p) == (2, (3,)) and d_final < 0.05 and rep.block_maxima_decreasing
          and not rep.hyperplane_violations and rep.hyperplane_steps_checked == N and rep.tally_ok)
    report(4, ok, f"q = {a.q}, p = {a.p[0]}, d_N = {d_final:.3g} at N = {N}, block maxima decreasing "
                  f"= {rep.block_maxima_decreasing}, {len(rep.hyperplane_violations)} hyperplane violations in "
                  f"{rep.hyperplane_steps_checked} exact steps")
    assert ok


# ---------------------------------------------------------------------------
# 5. the rational-valued non-PL example


def test_criterion_5_non_pl_example(report):
    F = build_example_3_3()
    anchors = F.fx(2) == 3 and F.fx(3) == Fraction(47, 16)
    rng = random.Random(33)
    pairs = sample_cross_cone_pairs(F, rng, 1000)
    bad = sum(1 for p, q in pairs if F(p) + F(q) > F(tuple(a + b for a, b in zip(p, q))))
    res = pl_detect(F, RationalCone(((0, 1), (1, 1))), ray_resolution=12)
    slopes = res.distinct_slopes() if isinstance(res, NonPLEvidence) else 0
    ok = anchors and bad == 0 and slopes >= 10
    report(5, ok, f"f(x2) = {F.fx(2)}, f(x3) = {F.fx(3)}, {bad} superadditivity failures on 1000 "
                  f"cross-cone pairs, {slopes} distinct slopes at 2^-12")
    assert ok


# ---------------------------------------------------------------------------
# 6. boundary non-extension


def test_criterion_6_boundary(report):
    from bdivalg.curve_algebra import boundary_counterexample

    m = floor_linear_system(FgMonoid(((1, 0), (0, 1))), {"P": "a+b"})
    res = boundary_counterexample(m, SaturationDatum({"P": 0}), s_bound=30, mu_nu_bound=8)
    sat = res.certificate.details["saturation"]["verdict"]
    ok = res.certificate.passed and sat == "pass" and res.jump_ratio == 2
    report(6, ok, f"saturation at (30, 8): {sat}; interior limit / boundary value = {res.jump_ratio}")
    assert ok


# ---------------------------------------------------------------------------
# 7. oracle sensitivity


def test_criterion_7_oracle_sensitivity(report):
    m = floor_linear_system(N1, {"P": "floor(5n/3)"})
    gens = oracle_minimal_generators(m, N1, 30)
    full = graded_piece_oracle(m, gens, 30)
    cut = graded_piece_oracle(m, gens.without((3,)), 30)
    witness = cut.witnesses[0]["s"] if cut.witnesses else None
    ok = full.passed and not cut.passed and witness == [3]
    report(7, ok, f"full set {'passes' if full.passed else 'fails'}; without (3, 5P) the oracle "
                  f"{'fails' if not cut.passed else 'passes'} with witness s = {witness}")
    assert ok
