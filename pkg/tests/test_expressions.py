from fractions import Fraction
import math

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from bdivalg.expressions import ExpressionError, FloorExpression, variables_for


def test_basic_forms():
    e = FloorExpression("floor(5n/3)", 1)
    assert [e((n,)) for n in range(7)] == [0, 1, 3, 5, 6, 8, 10]
    e = FloorExpression("floor((5a+4b)/3)", 2)
    assert e((2, 1)) == 4
    e = FloorExpression("2(a+b) - min(a, b)", 2)
    assert e((3, 5)) == 13
    assert FloorExpression("ceil(x/2) + y", 2)((3, 1)) == 3


def test_division_is_exact():
    assert FloorExpression("n/3", 1)((1,)) == Fraction(1, 3)


def test_variables_for_rank():
    assert variables_for(1) == ("n",)
    assert variables_for(3) == ("a", "b", "c")


@pytest.mark.parametrize("text,col", [
    ("floor(5q/3)", 8),
    ("floor(5n/3) +", 14),
    ("__import__('os')", None),
    ("n ** 2", None),
    ("floor(1.5 n)", None),
    ("open(n)", None),
])
def test_rejections(text, col):
    with pytest.raises(ExpressionError) as info:
        FloorExpression(text, 1)
    if col is not None:
        assert info.value.col == col


def test_wrong_arity_point():
    with pytest.raises(ValueError):
        FloorExpression("a+b", 2)((1,))


@st.composite
def expr_text(draw, depth=0):
    leaf = st.one_of(st.integers(0, 9).map(str), st.sampled_from(["a", "b"]))
    if depth > 2:
        return draw(leaf)
    kind = draw(st.sampled_from(["leaf", "bin", "floor", "min"]))
    if kind == "leaf":
        return draw(leaf)
    if kind == "bin":
        op = draw(st.sampled_from(["+", "-", "*", "/"]))
        rhs = draw(expr_text(depth=depth + 1))
        if op == "/":
            rhs = str(draw(st.integers(1, 7)))
        return f"({draw(expr_text(depth=depth + 1))}){op}({rhs})"
    if kind == "floor":
        return f"floor({draw(expr_text(depth=depth + 1))})"
    return f"min({draw(expr_text(depth=depth + 1))}, {draw(expr_text(depth=depth + 1))})"


@settings(max_examples=150)
@given(expr_text(), st.integers(0, 12), st.integers(0, 12))
def test_compiled_matches_tree_walk(text, a, b):
    e = FloorExpression(text, 2)
    assert e((a, b)) == e.evaluate_slow((a, b))


@settings(max_examples=100)
@given(st.integers(1, 18), st.integers(1, 18), st.integers(1, 6), st.integers(0, 30), st.integers(0, 30))
def test_floor_linear_matches_python(p, q, d, a, b):
    e = FloorExpression(f"floor(({p}a+{q}b)/{d})", 2)
    assert e((a, b)) == math.floor(Fraction(p * a + q * b, d))
