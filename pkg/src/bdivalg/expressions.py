"""Safe parsing of closed-form oracles such as "floor((5a+4b)/3)".

Allowed: integer literals, the coordinate variables, + - * /, parentheses and
the functions floor, ceil, min, max. Implicit multiplication ("5a", "2(a+b)")
is accepted. Evaluation is exact over Fraction.
"""
from __future__ import annotations

import ast
import math
from fractions import Fraction

VARIABLE_SETS = (("n",), ("a", "b", "c", "d"), ("x", "y", "z", "w"))

_FUNCS = {
    "floor": lambda *a: math.floor(a[0]),
    "ceil": lambda *a: math.ceil(a[0]),
    "min": min,
    "max": max,
}


def _div(a, b):
    return Fraction(a) / b


class _DivToFraction(ast.NodeTransformer):
    def visit_BinOp(self, node):
        self.generic_visit(node)
        if isinstance(node.op, ast.Div):
            return ast.Call(func=ast.Name(id="_div", ctx=ast.Load()), args=[node.left, node.right], keywords=[])
        return node


class ExpressionError(ValueError):
    def __init__(self, msg: str, text: str, col: int | None = None):
        where = f" at column {col}" if col is not None else ""
        super().__init__(f"{msg}{where} in {text!r}")
        self.col = col


def _implicit_mult(text: str) -> tuple[str, list[int]]:
    """Insert "*" for juxtaposition; also return each output char's index in ``text``."""
    out: list[str] = []
    origin: list[int] = []
    prev, prev_i = "", -1
    for i, ch in enumerate(text):
        if not ch.isspace() and prev:
            # a one-letter variable before "(" multiplies; longer names are function calls
            single_var = prev.isalpha() and (prev_i == 0 or not (text[prev_i - 1].isalnum() or text[prev_i - 1] == "_"))
            digit_next = prev.isdigit() and (ch.isalpha() or ch == "(")
            paren_next = prev == ")" and (ch.isalnum() or ch == "(")
            if digit_next or paren_next or (single_var and ch == "("):
                out.append("*")
                origin.append(i)
        out.append(ch)
        origin.append(i)
        if not ch.isspace():
            prev, prev_i = ch, i
    origin.append(len(text))
    return "".join(out), origin


def variables_for(rank: int) -> tuple[str, ...]:
    if rank == 1:
        return ("n",)
    for names in VARIABLE_SETS[1:]:
        if rank <= len(names):
            return names[:rank]
    raise ValueError(f"no default variable names for rank {rank}")


class FloorExpression:
    """A compiled expression; call it with an integer (or rational) point."""

    def __init__(self, text: str, rank: int):
        self.text = text
        self.rank = rank
        self.names = variables_for(rank)
        src, self._origin = _implicit_mult(text)
        try:
            self.tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            # the parser reports offset 0 when input ends too early
            offset = exc.offset - 1 if exc.offset else len(src)
            raise ExpressionError(f"syntax error: {exc.msg}", text, self._col(offset)) from None
        self.names = self._pick_names()
        self._validate(self.tree.body)
        self._fn = self._compile()

    def _col(self, offset):
        """1-based column in the original text for a 0-based offset into the rewritten one."""
        if offset is None:
            return None
        offset = min(max(offset, 0), len(self._origin) - 1)
        return self._origin[offset] + 1

    def _pick_names(self):
        used = {n.id for n in ast.walk(self.tree) if isinstance(n, ast.Name) and n.id not in _FUNCS}
        for names in VARIABLE_SETS:
            if len(names) >= self.rank and used <= set(names[:self.rank]):
                return names[:self.rank]
        return self.names

    def _compile(self):
        # the tree has been validated, so compiling it only ever runs arithmetic
        body = _DivToFraction().visit(ast.parse(ast.unparse(self.tree), mode="eval")).body
        args = ast.arguments(posonlyargs=[], args=[ast.arg(arg=n) for n in self.names], vararg=None,
                             kwonlyargs=[], kw_defaults=[], kwarg=None, defaults=[])
        tree = ast.fix_missing_locations(ast.Expression(ast.Lambda(args=args, body=body)))
        env = {"__builtins__": {}, "_div": _div, **_FUNCS}
        return eval(compile(tree, "<floor-expression>", "eval"), env)

    def _validate(self, node):
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int) or isinstance(node.value, bool):
                raise ExpressionError("only integer literals are allowed", self.text, self._col(node.col_offset))
        elif isinstance(node, ast.Name):
            if node.id not in self.names:
                raise ExpressionError(f"unknown variable {node.id!r} (expected {', '.join(self.names)})",
                                      self.text, self._col(node.col_offset))
        elif isinstance(node, ast.BinOp):
            if not isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div)):
                raise ExpressionError("unsupported operator", self.text, self._col(node.col_offset))
            self._validate(node.left)
            self._validate(node.right)
        elif isinstance(node, ast.UnaryOp):
            if not isinstance(node.op, (ast.USub, ast.UAdd)):
                raise ExpressionError("unsupported operator", self.text, self._col(node.col_offset))
            self._validate(node.operand)
        elif isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS or node.keywords:
                raise ExpressionError("unsupported function call", self.text, self._col(node.col_offset))
            if not node.args or (node.func.id in ("floor", "ceil") and len(node.args) != 1):
                raise ExpressionError(f"bad arguments to {node.func.id}", self.text, self._col(node.col_offset))
            for a in node.args:
                self._validate(a)
        else:
            raise ExpressionError("unsupported syntax", self.text, self._col(getattr(node, "col_offset", None)))

    def _eval(self, node, env):
        if isinstance(node, ast.Constant):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            return env[node.id]
        if isinstance(node, ast.BinOp):
            a, b = self._eval(node.left, env), self._eval(node.right, env)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            return a / b
        if isinstance(node, ast.UnaryOp):
            v = self._eval(node.operand, env)
            return -v if isinstance(node.op, ast.USub) else v
        args = [self._eval(a, env) for a in node.args]
        return Fraction(_FUNCS[node.func.id](*args))

    def __call__(self, p) -> Fraction:
        if len(p) != self.rank:
            raise ValueError(f"expected a point of rank {self.rank}, got {p}")
        return Fraction(self._fn(*p))

    def evaluate_slow(self, p) -> Fraction:
        """Tree-walking evaluation, kept as an independent reference."""
        env = {name: Fraction(c) for name, c in zip(self.names, p)}
        return self._eval(self.tree.body, env)

    def __repr__(self):
        return f"FloorExpression({self.text!r})"
