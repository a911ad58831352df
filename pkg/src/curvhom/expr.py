"""Parse scalar functions of the coordinates (t, x, y) and evaluate them to jets.

Grammar (precedence climbing, tightest first):

    power  >  unary minus  >  * /  >  + -

with parentheses, function calls ``exp(...) log(...) sin(...) cos(...)
sqrt(...) abs(...)``, and ``^`` whose exponent must be a constant
(integer or real) subexpression.  Evaluation walks the AST with truncated
Taylor arithmetic from :mod:`curvhom.jets`, so derivative values are exact
to round-off.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import jets
from .jets import Jet

COORDS = ("t", "x", "y")
FUNCTIONS = ("exp", "log", "sin", "cos", "sqrt", "abs")


class ParseError(Exception):
    """Malformed expression text; `position` is a character offset."""

    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"{message} (at offset {position})")


class DomainError(Exception):
    """Evaluation left the function's domain; names the offending subexpression."""

    def __init__(self, subexpr: "Expr", message: str):
        self.subexpr = subexpr
        self.message = message
        super().__init__(f"{message} in '{pretty(subexpr)}'")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Var, Neg, Call, BinOp]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            at = len(text) - len(stripped)
            raise ParseError(at, f"unexpected character {stripped[0]!r}")
        if m.lastgroup is None:  # trailing whitespace
            break
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, symbol: str):
        tok = self.peek()
        if tok is None:
            raise ParseError(len(self.text), f"expected '{symbol}', found end of input")
        if tok[0] != "op" or tok[1] != symbol:
            raise ParseError(tok[2], f"expected '{symbol}', found {tok[1]!r}")
        self.advance()

    def parse(self) -> Expr:
        node = self.sum()
        tok = self.peek()
        if tok is not None:
            raise ParseError(tok[2], f"unexpected trailing input {tok[1]!r}")
        return node

    def sum(self) -> Expr:
        node = self.term()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.advance()
            node = BinOp(tok[1], node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "*/":
            self.advance()
            node = BinOp(tok[1], node, self.unary())
        return node

    def unary(self) -> Expr:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.advance()
            at = self.peek()[2] if self.peek() else len(self.text)
            exponent = self.unary()  # right associative, allows 2^-3
            if _references_variable(exponent):
                raise ParseError(at, "exponent must be a constant expression")
            return BinOp("^", node, exponent)
        return node

    def atom(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise ParseError(len(self.text), "empty operand")
        kind, value, at = tok
        if kind == "num":
            self.advance()
            return Num(float(value))
        if kind == "name":
            self.advance()
            if value in FUNCTIONS:
                self.expect_op("(")
                arg = self.sum()
                self.expect_op(")")
                return Call(value, arg)
            if value in self.variables:
                return Var(value)
            raise ParseError(at, f"unknown identifier {value!r}")
        if value == "(":
            self.advance()
            node = self.sum()
            self.expect_op(")")
            return node
        raise ParseError(at, f"unexpected token {value!r}")


def parse(text: str, variables: tuple[str, ...] = COORDS) -> Expr:
    """Parse expression text over the given coordinate names (default t, x, y)."""
    if not text.strip():
        raise ParseError(0, "empty expression")
    unknown = [v for v in variables if v in FUNCTIONS]
    if unknown:
        raise ParseError(0, f"coordinate name collides with function: {unknown[0]}")
    return _Parser(text, tuple(variables)).parse()


def _references_variable(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Neg):
        return _references_variable(e.arg)
    if isinstance(e, Call):
        return _references_variable(e.arg)
    if isinstance(e, BinOp):
        return _references_variable(e.left) or _references_variable(e.right)
    return False


def variables_of(e: Expr) -> set[str]:
    """Set of coordinate names appearing in the AST."""
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Neg):
        return variables_of(e.arg)
    if isinstance(e, Call):
        return variables_of(e.arg)
    if isinstance(e, BinOp):
        return variables_of(e.left) | variables_of(e.right)
    return set()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def pretty(e: Expr, parent_prec: int = 0, right_of: str | None = None) -> str:
    """Render an AST back to text; parse(pretty(e)) reproduces e."""
    if isinstance(e, Num):
        text = repr(e.value)
        return text
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}({pretty(e.arg)})"
    if isinstance(e, Neg):
        inner = pretty(e.arg, _PREC["neg"])
        text = f"-{inner}"
        needs = parent_prec > _PREC["neg"] or (
            parent_prec == _PREC["neg"] and right_of in ("-", "/")
        )
        return f"({text})" if needs else text
    if isinstance(e, BinOp):
        prec = _PREC[e.op]
        if e.op == "^":
            # right operand re-enters at unary level
            text = f"{pretty(e.left, prec + 1)}^{pretty(e.right, _PREC['neg'])}"
        else:
            text = (
                f"{pretty(e.left, prec)} {e.op} "
                f"{pretty(e.right, prec + 1, right_of=e.op)}"
            )
        needs = parent_prec > prec or (parent_prec == prec and right_of in ("-", "/"))
        return f"({text})" if needs else text
    raise TypeError(f"not an Expr node: {e!r}")


def eval_jet(e: Expr, point: tuple[float, float, float], order: int) -> Jet:
    """Table of all partial derivatives of e at `point` up to total `order`.

    Raises DomainError when the function is undefined at the point (log or
    sqrt out of range, division by zero, abs or non-integer power at a
    non-differentiable argument).
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if isinstance(e, Num):
        return jets.jet_constant(e.value, order)
    if isinstance(e, Var):
        return jets.jet_variable(COORDS.index(e.name), float(point[COORDS.index(e.name)]), order)
    if isinstance(e, Neg):
        return -eval_jet(e.arg, point, order)
    if isinstance(e, Call):
        arg = eval_jet(e.arg, point, order)
        try:
            if e.func == "exp":
                return jets.jet_exp(arg)
            if e.func == "log":
                return jets.jet_log(arg)
            if e.func == "sin":
                return jets.jet_sin(arg)
            if e.func == "cos":
                return jets.jet_cos(arg)
            if e.func == "sqrt":
                return jets.jet_sqrt(arg)
        except ValueError as err:
            raise DomainError(e, str(err)) from None
        if e.func == "abs":
            if arg.value == 0.0:
                raise DomainError(e, "abs is not differentiable at 0")
            return arg if arg.value > 0 else -arg
        raise ValueError(f"unknown function {e.func!r}")
    if isinstance(e, BinOp):
        if e.op == "^":
            return _eval_pow(e, point, order)
        left = eval_jet(e.left, point, order)
        right = eval_jet(e.right, point, order)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return jets.jet_mul(left, right)
        if e.op == "/":
            if right.value == 0.0:
                raise DomainError(e, "division by zero")
            return jets.jet_div(left, right)
    raise TypeError(f"not an Expr node: {e!r}")


def _eval_pow(e: BinOp, point, order: int) -> Jet:
    base = eval_jet(e.left, point, order)
    exponent = eval_jet(e.right, point, order).value
    if exponent == round(exponent):
        n = int(round(exponent))
        if n < 0 and base.value == 0.0:
            raise DomainError(e, "negative power of zero")
        return jets.jet_powi(base, n)
    # real exponent: exp(c * log(base)), defined for positive base only
    if base.value <= 0.0:
        raise DomainError(e, f"non-integer power of nonpositive base {base.value}")
    return jets.jet_exp(jets.jet_log(base) * exponent)
