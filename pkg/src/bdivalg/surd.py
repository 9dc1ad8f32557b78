"""Exact arithmetic in Q(sqrt(m1), sqrt(m2), ...).

A ``Surd`` is a finite sum  c_1 sqrt(m_1) + ... + c_k sqrt(m_k)  with rational
c_i and distinct squarefree m_i >= 1 (m = 1 is the rational part). Square
roots of distinct squarefree integers are linearly independent over Q, so the
representation is unique: zero tests are exact, and the sign of a nonzero
value is found by refining interval enclosures until they exclude 0.
"""
from __future__ import annotations

import ast
import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """n = k^2 * m with m squarefree; returns (k, m)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    k, m = 1, n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1
    return k, m


def _sqrt_bounds(m: int, bits: int) -> tuple[Fraction, Fraction]:
    r = math.isqrt(m << (2 * bits))
    lo = Fraction(r, 1 << bits)
    hi = lo if r * r == m << (2 * bits) else Fraction(r + 1, 1 << bits)
    return lo, hi


class Surd:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        # terms: {squarefree m: nonzero Fraction}
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {1: Fraction(terms)}
        self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}
        self._hash = None

    # -- constructors

    @classmethod
    def sqrt(cls, x) -> "Surd":
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative number")
        if x == 0:
            return cls()
        # sqrt(p/q) = sqrt(p q) / q
        k, m = squarefree_split(x.numerator * x.denominator)
        return cls({m: Fraction(k, x.denominator)})

    @classmethod
    def coerce(cls, x) -> "Surd":
        return x if isinstance(x, Surd) else cls(x)

    # -- queries

    def is_rational(self) -> bool:
        return all(m == 1 for m in self.terms)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, Fraction(0))

    def enclosure(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for m, c in self.terms.items():
            if m == 1:
                lo += c
                hi += c
                continue
            a, b = _sqrt_bounds(m, bits)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi

    def sign(self) -> int:
        t = self.terms
        if not t:
            return 0
        if len(t) == 1:
            return 1 if next(iter(t.values())) > 0 else -1
        if len(t) == 2 and 1 in t:
            (m,) = (k for k in t if k != 1)
            a, b = t[1], t[m]
            if (a > 0) == (b > 0):
                return 1 if a > 0 else -1
            # a + b sqrt(m) with opposite signs: compare a^2 with b^2 m
            big = a * a - b * b * m
            return (1 if a > 0 else -1) if big > 0 else (1 if b > 0 else -1)
        bits = 32
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def floor(self) -> int:
        if self.is_rational():
            return math.floor(self.rational())
        bits = 32
        while True:
            lo, hi = self.enclosure(bits)
            if math.floor(lo) == math.floor(hi):
                # an irrational number is never an integer, so hi is not hit
                return math.floor(lo)
            bits *= 2

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self):
        return float(sum(float(c) * math.sqrt(m) for m, c in self.terms.items()))

    # -- arithmetic

    def __add__(self, other):
        other = Surd.coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Surd(t)

    __radd__ = __add__

    def __neg__(self):
        return Surd({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Surd.coerce(other))

    def __rsub__(self, other):
        return Surd.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Surd):
            other = Fraction(other)
            return Surd({m: c * other for m, c in self.terms.items()})
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                g = math.gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                t[m] = t.get(m, 0) + c1 * c2 * g
        return Surd(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Fraction(other)
        return Surd({m: c / other for m, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = Surd(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparisons

    def __eq__(self, other):
        try:
            other = Surd.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            if m == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({m})")
            else:
                parts.append(f"{c}*sqrt({m})")
        return " + ".join(parts).replace("+ -", "- ")


_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div)


def parse_surd(text: str) -> Surd:
    """Parse descriptors like "3/4", "sqrt(2)", "1/2 + 3/5*sqrt(7)"."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Surd(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if not b.is_rational() or b.rational() == 0:
                raise ValueError(f"division by {b} in {text!r}")
            return a / b.rational()
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt"
                and len(node.args) == 1 and not node.keywords):
            v = ev(node.args[0])
            if not v.is_rational():
                raise ValueError(f"nested radicals are not supported: {text!r}")
            return Surd.sqrt(v.rational())
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)
