from fractions import Fraction
import math

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from bdivalg.curve_algebra import (
    Divisor,
    GeneratorSet,
    MobileSystem,
    SaturationDatum,
    Verdict,
    b_constant,
    boundary_counterexample,
    check_saturation,
    dichotomy_check,
    finite_generation_pipeline,
    floor_linear_system,
    graded_piece_oracle,
    index_bound_check,
    oracle_minimal_generators,
    random_floor_linear_system,
    table_system,
    truncation_integral_check,
    validate_system,
)
from bdivalg.lattice_cone import FgMonoid, RationalCone
from bdivalg.superlinear import StraightenedFunction

from conftest import max_plus_closure, saturation_holds

N1 = FgMonoid(((1,),))
N2 = FgMonoid(((1, 0), (0, 1)))


def five_thirds():
    return floor_linear_system(N1, {"P": "floor(5n/3)"})


def test_divisor_arithmetic():
    D = Divisor({"P": Fraction(5, 3), "Q": 0, "R": -1})
    assert D.support == {"P", "R"}
    assert not D.is_integral() and not D.is_effective()
    assert D.ceil() == Divisor({"P": 2, "R": -1})
    assert D.floor() == Divisor({"P": 1, "R": -1})
    assert D + Divisor({"R": 1}) == Divisor({"P": Fraction(5, 3)})
    assert Divisor({"P": 1}) <= Divisor({"P": 2, "Q": 0})
    assert D.to_doc() == {"P": "5/3", "R": -1}


def test_saturation_datum_rejects_f_ge_1():
    with pytest.raises(ValueError):
        SaturationDatum({"P": 1})


def test_b_constant():
    assert b_constant(Fraction(2, 3)).b == Fraction(1, 3)
    assert b_constant(Fraction(1, 4)).trivial
    assert not b_constant(Fraction(1, 2)).trivial
    assert b_constant(Fraction(1, 2)).b == Fraction(1, 2)


def test_five_thirds_chain():
    m = five_thirds()
    F = SaturationDatum({"P": Fraction(2, 3)})
    assert validate_system(m, 30, F=F).passed
    assert check_saturation(m, F, 50, 12).passed
    assert dichotomy_check(m, F, 50).passed
    cert = index_bound_check(m, F, 50)
    assert cert.passed and cert.details["max_index"]["P"] == 3


def test_saturation_witnesses():
    # m(1) = 1, m(n) = 2n otherwise, f = 1/2
    m = MobileSystem(N1, lambda s: {"P": 1 if s[0] == 1 else 2 * s[0]}, ["P"])
    cert = check_saturation(m, SaturationDatum({"P": Fraction(1, 2)}), 10, 4)
    assert not cert.passed
    w = cert.witnesses[0]
    assert (w["s"], w["mu"], w["nu"]) == ([1], 1, 2)

    m = floor_linear_system(N1, {"P": "floor(3n/2)"})
    assert check_saturation(m, SaturationDatum({"P": Fraction(1, 2)}), 50, 12).passed
    cert = check_saturation(m, SaturationDatum({"P": Fraction(1, 4)}), 50, 12)
    w = cert.witnesses[0]
    assert (w["s"], w["mu"], w["nu"]) == ([1], 1, 2)


def test_validate_reports_support_violation():
    m = MobileSystem(N1, lambda s: {"P": s[0], "Q": 1}, ["P"])
    cert = validate_system(m, 5)
    assert cert.verdict is Verdict.FAIL
    assert cert.witnesses[0]["kind"] == "support"
    assert cert.witnesses[0]["points"] == ["Q"]


def test_validate_reports_superadditivity_failure():
    m = floor_linear_system(N1, {"P": "ceil(n/2)"})
    cert = validate_system(m, 6)
    assert cert.verdict is Verdict.FAIL and cert.witnesses[0]["kind"] == "superadditivity"


def test_table_system():
    table = {(n,): {"P": 5 * n // 3} for n in range(1, 13)}
    m = table_system(N1, table, ["P"], 12)
    assert check_saturation(m, SaturationDatum({"P": Fraction(2, 3)}), 6, 2).passed
    with pytest.raises(ValueError):
        m((13,))


def test_graded_piece_oracle_five_thirds():
    m = five_thirds()
    gens = oracle_minimal_generators(m, N1, 30)
    assert gens.points() == [(1,), (2,), (3,)]
    assert [d["P"] for _, d in gens.entries] == [1, 3, 5]
    assert graded_piece_oracle(m, gens, 30).passed
    cert = graded_piece_oracle(m, gens.without((3,)), 30)
    assert not cert.passed and cert.witnesses[0]["s"] == [3]


@settings(max_examples=40)
@given(st.integers(1, 12), st.integers(1, 6), st.lists(st.integers(1, 6), min_size=1, max_size=3, unique=True))
def test_graded_piece_oracle_matches_max_plus(num, den, gen_points):
    m = floor_linear_system(N1, {"P": f"floor({num}n/{den})"})
    gens = GeneratorSet([((g,), m((g,))) for g in gen_points], "test", 0, N1)
    cert = graded_piece_oracle(m, gens, 20)
    gv = [((g,), m((g,))["P"]) for g in gen_points]
    memo: dict = {}
    expect = all(max_plus_closure(gv, (s,), memo) == m((s,))["P"] for s in range(1, 21))
    assert cert.passed == expect


def test_pipeline_five_thirds():
    res = finite_generation_pipeline(five_thirds(), RationalCone(((1,),)), SaturationDatum({"P": Fraction(2, 3)}),
                                     oracle_degree=30)
    assert res.certificate.passed
    assert res.kappa == 6 and res.b["P"].b == Fraction(1, 3)
    assert res.truncation.points() == [(6,)]
    assert res.oracle.points() == [(1,), (2,), (3,)]


def test_pipeline_rank2():
    m = floor_linear_system(N2, {"P": "floor((5a+4b)/3)"})
    res = finite_generation_pipeline(m, RationalCone(((2, 1), (1, 2))), SaturationDatum({"P": Fraction(2, 3)}),
                                     oracle_degree=12)
    assert res.certificate.passed
    assert res.kappa == 6
    assert all(all(c % 6 == 0 for c in g) for g in res.truncation.points())


def test_pipeline_additive_kappa_one():
    m = floor_linear_system(N2, {"P": "2a+3b"})
    res = finite_generation_pipeline(m, RationalCone(((1, 1), (1, 2), (2, 1))), SaturationDatum({"P": 0}),
                                     oracle_degree=10)
    assert res.certificate.passed and res.kappa == 1
    assert set(res.truncation.points()) == {(1, 1), (1, 2), (2, 1)}


def test_truncation_integral_check():
    m = five_thirds()
    assert truncation_integral_check(m, 6, [(1,), (2,), (3,)]).passed
    # ceil(n/2) is not superadditive: 2 m(1) = 2 > m(2) = 1
    bad = floor_linear_system(N1, {"P": "ceil(n/2)"})
    cert = truncation_integral_check(bad, 2, [(1,), (2,)])
    assert not cert.passed and cert.witnesses[0]["kind"] == "monomial"
    cert = truncation_integral_check(m, 6, [(1,), (2,)], truncated=FgMonoid(((12,),)))
    assert not cert.passed and cert.witnesses[0]["kind"] == "power outside truncation"


def test_boundary_counterexample():
    m = floor_linear_system(N2, {"P": "a+b"})
    res = boundary_counterexample(m, SaturationDatum({"P": 0}), 30, 8)
    assert res.certificate.passed
    assert res.jump_ratio == 2
    jumps = res.certificate.details["jumps"]["P"]
    assert jumps["boundary"] == 1 and jumps["interior_limit"] == 2


def test_boundary_counterexample_rejects_non_additive():
    m = floor_linear_system(N2, {"P": "floor((a+b)/2)"})
    with pytest.raises(ValueError):
        boundary_counterexample(m, SaturationDatum({"P": 0}))


# ---------------------------------------------------------------------------
# randomized properties over the provably saturated family


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_random_family_saturated_by_oracle(seed):
    inst = random_floor_linear_system(seed)
    m = inst.system
    r = m.domain.ambient_dim
    pts = [p for p in m.domain.points(6) if any(p)]
    for P in m.declared_support:
        comp = lambda s, P=P: m(s)[P]
        assert saturation_holds(comp, inst.F.at(P), pts, 6)
    assert check_saturation(m, inst.F, 6, 6).passed
    assert r in (1, 2)


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6))
def test_chain_and_floor_of_sharp(seed):
    inst = random_floor_linear_system(seed)
    m, F = inst.system, inst.F
    bound = 12 if m.domain.ambient_dim == 2 else 40
    assert check_saturation(m, F, bound, 8).passed
    assert dichotomy_check(m, F, bound).passed
    assert index_bound_check(m, F, bound).passed
    for P in m.declared_support:
        sharp = StraightenedFunction(m.component(P))
        for s in m.domain.points(8):
            if any(s):
                assert m(s)[P] == math.floor(sharp(s))


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6))
def test_component_independence(seed):
    inst = random_floor_linear_system(seed, points=2)
    m, F = inst.system, inst.F
    bound = 10
    full = [check_saturation(m, F, bound, 6).passed, dichotomy_check(m, F, bound).passed,
            index_bound_check(m, F, bound).passed]
    per_point = [True, True, True]
    for P in m.declared_support:
        mp = m.restricted_to(P)
        Fp = SaturationDatum({P: F.at(P)})
        per_point = [a and b for a, b in zip(per_point, [check_saturation(mp, Fp, bound, 6).passed,
                                                         dichotomy_check(mp, Fp, bound).passed,
                                                         index_bound_check(mp, Fp, bound).passed])]
    assert full == per_point


@settings(max_examples=20)
@given(st.integers(1, 12), st.integers(1, 6), st.fractions(min_value=0, max_value=Fraction(5, 6), max_denominator=6))
def test_saturation_check_matches_definition(num, den, f):
    m = floor_linear_system(N1, {"P": f"floor({num}n/{den})"})
    pts = [(s,) for s in range(1, 9)]
    expect = saturation_holds(lambda s: m(s)["P"], f, pts, 6)
    assert check_saturation(m, SaturationDatum({"P": f}), 8, 6).passed == expect


def test_certificates_are_reproducible():
    inst = random_floor_linear_system(7)
    a = check_saturation(inst.system, inst.F, 10, 6).to_doc()
    inst2 = random_floor_linear_system(7)
    b = check_saturation(inst2.system, inst2.F, 10, 6).to_doc()
    assert a == b
