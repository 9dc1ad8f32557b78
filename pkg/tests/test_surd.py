from fractions import Fraction
import math

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from bdivalg.surd import Surd, parse_surd, squarefree_split

SQUAREFREE = [2, 3, 5, 6, 7, 10]
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)


@st.composite
def surds(draw):
    terms = {1: draw(rationals)}
    for m in draw(st.lists(st.sampled_from(SQUAREFREE), max_size=3, unique=True)):
        terms[m] = draw(rationals)
    return Surd(terms)


def test_squarefree_split():
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(49) == (7, 1)
    assert squarefree_split(30) == (1, 30)


def test_sqrt_normalises():
    assert Surd.sqrt(8) == 2 * Surd.sqrt(2)
    assert Surd.sqrt(Fraction(1, 2)) == Surd({2: Fraction(1, 2)})
    assert Surd.sqrt(9) == 3
    assert Surd.sqrt(2) * Surd.sqrt(2) == 2
    assert Surd.sqrt(2) * Surd.sqrt(3) == Surd.sqrt(6)


def test_exact_signs_near_zero():
    # 99/70 is a convergent of sqrt 2, so the difference is ~ 7e-5
    assert (Surd.sqrt(2) - Fraction(99, 70)).sign() == -1
    assert (Surd.sqrt(2) - Fraction(140, 99)).sign() == 1
    # three radicals
    x = Surd.sqrt(2) + Surd.sqrt(3) - Surd.sqrt(10)
    assert x.sign() == (1 if math.sqrt(2) + math.sqrt(3) > math.sqrt(10) else -1)


def test_floor_ceil():
    assert (3 * Surd.sqrt(2)).floor() == 4
    assert (3 * Surd.sqrt(2)).ceil() == 5
    assert Surd(Fraction(-3, 2)).floor() == -2


def test_parse_descriptors():
    assert parse_surd("1") == 1
    assert parse_surd("3/4") == Fraction(3, 4)
    assert parse_surd("sqrt(2)") == Surd.sqrt(2)
    assert parse_surd("1/2 + 3/5*sqrt(7)") == Fraction(1, 2) + Fraction(3, 5) * Surd.sqrt(7)
    for bad in ("pi", "sqrt(2)**0.5", "__import__('os')", "2 +"):
        with pytest.raises(ValueError):
            parse_surd(bad)


@settings(max_examples=200)
@given(surds(), surds())
def test_sign_agrees_with_floats_when_well_separated(a, b):
    d = float(a) - float(b)
    if abs(d) > 1e-6:
        assert (a - b).sign() == (1 if d > 0 else -1)
        assert (a < b) == (d < 0)


@settings(max_examples=200)
@given(surds(), st.integers(8, 80))
def test_enclosures_contain_value(a, bits):
    lo, hi = a.enclosure(bits)
    assert lo <= hi
    assert (a - lo).sign() >= 0 and (hi - a).sign() >= 0


@settings(max_examples=100)
@given(surds(), surds(), surds())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - a == 0
    assert (a * b) * c == a * (b * c)


@settings(max_examples=100)
@given(surds())
def test_floor_is_exact(a):
    f = a.floor()
    assert (a - f).sign() >= 0 and (a - (f + 1)).sign() < 0
