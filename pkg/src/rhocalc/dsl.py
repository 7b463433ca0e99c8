"""Text syntax for expressions, point literals and domains.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := base ('^' power)?
    power  := INT | '-' INT | '(' '-'? NUMBER ('/' NUMBER)? ')'
    base   := NUMBER | 's' | 'rho' | 'i' | IDENT | IDENT '(' expr ')' | '(' expr ')'

Variables are ``x``, ``y``, ``z``; functions are the primitives plus
``delta`` and ``heaviside``.  Rational powers are accepted on ``s``/``rho``
and on numbers only, and must be parenthesized: ``s^1/2`` is rejected
because it reads as ``(s^1)/2``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .asymfunc import (
    Add,
    AsymptoticFunction,
    Comp,
    Const,
    Expr,
    IntPow,
    Mul,
    RhoPow,
    Var,
    delta_expr,
    evaluate,
    heaviside_expr,
    max_var,
)
from .asymvec import (
    AsymptoticPoint,
    AsymptoticVector,
    DomainSpec,
    annulus,
    ball,
    box,
    halfline,
    make_nearstandard,
    space,
    standard_point,
    union,
)
from .errors import DSLSyntaxError, UnboundVariable
from .lcfield import DEFAULT_ORDER, AsymptoticScalar, exponent
from .primitives import PRIMITIVES

VARIABLES = {"x": 0, "y": 1, "z": 2}
VARIABLE_NAMES = "xyz"
FUNCTIONS = set(PRIMITIVES) | {"delta", "heaviside"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    tokens, pos, line, line_start = [], 0, 1, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1, source)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise DSLSyntaxError(message, tok.line, tok.column, self.source)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.tok
        if not self.accept(text):
            shown = tok.text or "end of input"
            self.error(f"expected {text!r}, found {shown!r}")
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Add(e, _negate(rhs))
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            rhs = self.unary()
            if op == "/":
                rhs = _reciprocal(rhs)
            if isinstance(e, Const) and isinstance(rhs, Const):
                e = Const(e.value * rhs.value)
            else:
                e = Mul(e, rhs)
        return e

    def unary(self) -> Expr:
        if self.accept("-"):
            return _negate(self.unary())
        return self.factor()

    def factor(self) -> Expr:
        start = self.tok
        base, kind = self.base()
        if not self.accept("^"):
            return base
        q, bare = self.power()
        if kind == "scale" and bare and self.tok.text == "/" and self.peek().kind == "num":
            self.error("ambiguous power: write s^(p/q) for a rational exponent", start)
        if kind == "scale":
            return RhoPow(exponent(q) * base.q)
        if kind == "number":
            c = base.value
            if q.denominator != 1 and (c.imag != 0 or c.real < 0):
                self.error("rational powers need a positive real base", start)
            return Const(c.real ** float(q) if q.denominator != 1 else c ** int(q))
        if q.denominator != 1:
            self.error("rational powers are only supported on s, rho and numbers", start)
        return IntPow(base, int(q))

    def power(self) -> tuple[Fraction, bool]:
        """The exponent after '^' and whether it was written without parentheses."""
        if self.accept("("):
            neg = self.accept("-")
            num = self.number()
            q = Fraction(num)
            if self.accept("/"):
                den = self.number()
                if den == 0:
                    self.error("zero denominator in exponent")
                q = Fraction(num) / Fraction(den)
            self.expect(")")
            return (-q if neg else q), False
        neg = self.accept("-")
        tok = self.tok
        if tok.kind != "num" or not tok.text.isdigit():
            self.error("expected an integer exponent (use parentheses for rationals)")
        self.i += 1
        q = Fraction(int(tok.text))
        return (-q if neg else q), True

    def number(self) -> Fraction:
        tok = self.tok
        if tok.kind != "num":
            self.error(f"expected a number, found {tok.text or 'end of input'!r}")
        self.i += 1
        return Fraction(tok.text)

    def base(self) -> tuple[Expr, str]:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Const(float(tok.text)), "number"
        if tok.kind == "ident":
            self.i += 1
            name = tok.text
            if name in ("s", "rho"):
                return RhoPow(1), "scale"
            if name == "i":
                return Const(1j), "number"
            if name in VARIABLES:
                return Var(VARIABLES[name]), "expr"
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                if name == "delta":
                    return delta_expr(arg), "expr"
                if name == "heaviside":
                    return heaviside_expr(arg), "expr"
                return Comp(name, arg), "expr"
            raise UnboundVariable(f"unknown name {name!r} (line {tok.line}, column {tok.column})")
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            # folded constants and scale powers keep their kind, so (2^3)^2 folds like 2^3
            return e, ("number" if isinstance(e, Const) else "scale" if isinstance(e, RhoPow) else "expr")
        self.error(f"unexpected {tok.text or 'end of input'!r}")


def _negate(e: Expr) -> Expr:
    if isinstance(e, Const):
        return Const(-e.value)
    return Mul(Const(-1.0), e)


def _reciprocal(e: Expr) -> Expr:
    if isinstance(e, RhoPow):
        return RhoPow(-e.q)
    if isinstance(e, Const) and e.value != 0:
        return Const(1 / e.value)
    return IntPow(e, -1)


def parse_expr(source: str) -> Expr:
    return _Parser(source).parse()


# -- printing ----------------------------------------------------------------

def _num(c: float) -> str:
    text = repr(float(c))
    return f"({text})" if c < 0 else text


def _const(c: complex) -> str:
    if c.imag == 0:
        return _num(c.real)
    if c == 1j:
        return "i"
    if c.real == 0:
        return f"{_num(c.imag)}*i"
    return f"({repr(c.real)}{'+' if c.imag >= 0 else '-'}{repr(abs(c.imag))}*i)"


def _exp(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator) if q >= 0 else f"({q.numerator})"
    return f"({q.numerator}/{q.denominator})"


def _match_delta(e: Expr) -> Expr | None:
    if (isinstance(e, Mul) and e.left == RhoPow(-1) and isinstance(e.right, Comp)
            and e.right.prim == "gauss_phi" and isinstance(e.right.arg, Mul) and e.right.arg.right == RhoPow(-1)):
        return e.right.arg.left
    return None


def _match_heaviside(e: Expr) -> Expr | None:
    if (isinstance(e, Comp) and e.prim == "gauss_Phi" and isinstance(e.arg, Mul)
            and e.arg.right == RhoPow(-1)):
        return e.arg.left
    return None


# precedence: 1 sum, 2 product, 3 power operand
def to_source(e: Expr) -> str:
    """Inverse of :func:`parse_expr` up to evaluation (constants may print differently)."""
    text, _ = _show(e)
    return text


def _wrap(e: Expr, need: int) -> str:
    text, prec = _show(e)
    return f"({text})" if prec < need else text


def _show(e: Expr) -> tuple[str, int]:
    inner = _match_delta(e)
    if inner is not None:
        return f"delta({to_source(inner)})", 4
    inner = _match_heaviside(e)
    if inner is not None:
        return f"heaviside({to_source(inner)})", 4
    if isinstance(e, Var):
        if e.index >= len(VARIABLE_NAMES):
            raise ValueError("only x, y and z have a text form")
        return VARIABLE_NAMES[e.index], 4
    if isinstance(e, Const):
        text = _const(e.value)
        return text, 4 if text.startswith("(") or "*" not in text else 2
    if isinstance(e, RhoPow):
        return ("1.0", 4) if e.q == 0 else (f"s^{_exp(e.q)}", 3)
    if isinstance(e, Add):
        right = e.right
        if isinstance(right, Mul) and right.left == Const(-1.0):
            return f"{_wrap(e.left, 1)} - {_wrap(right.right, 2)}", 1
        return f"{_wrap(e.left, 1)} + {_wrap(right, 1)}", 1
    if isinstance(e, Mul):
        if e.left == Const(-1.0):
            return f"-{_wrap(e.right, 3)}", 2
        return f"{_wrap(e.left, 2)}*{_wrap(e.right, 3)}", 2
    if isinstance(e, IntPow):
        return f"{_wrap(e.base, 4)}^{_exp(Fraction(e.k))}", 3
    if isinstance(e, Comp):
        return f"{e.prim}({to_source(e.arg)})", 4
    raise TypeError(f"unknown node {e!r}")


# -- point and domain literals -----------------------------------------------

def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def constant_value(e: Expr, order=DEFAULT_ORDER):
    """Series value of a tree without variables."""
    if max_var(e) >= 0:
        raise UnboundVariable("a constant was expected but the expression has variables")
    # the tree reads no coordinate, so any point will do
    return evaluate(e, standard_point(0.0, order=order), order)


def parse_point(text: str, d: int | None = None, order=DEFAULT_ORDER) -> AsymptoticPoint:
    """``x=0.5+1*s^2, y=0``: per coordinate a standard number plus an infinitesimal series."""
    items = [p for p in _split_top(text) if p]
    if not items:
        raise DSLSyntaxError("empty point literal", 1, 1, text)
    values: dict[int, Expr] = {}
    for pos, item in enumerate(items):
        name, eq, rhs = item.partition("=")
        if not eq:
            name, rhs = VARIABLE_NAMES[pos] if pos < 3 else "?", item
        name = name.strip()
        if name not in VARIABLES:
            raise DSLSyntaxError(f"unknown coordinate {name!r}", 1, text.find(item) + 1, text)
        if VARIABLES[name] in values:
            raise DSLSyntaxError(f"coordinate {name!r} given twice", 1, text.find(item) + 1, text)
        values[VARIABLES[name]] = parse_expr(rhs)
    dim = max(values) + 1 if d is None else d
    missing = [VARIABLE_NAMES[i] for i in range(dim) if i not in values]
    if missing or max(values) >= dim:
        raise UnboundVariable(f"point literal must give exactly the coordinates {VARIABLE_NAMES[:dim]}")
    std, offs = [], []
    for i in range(dim):
        v = constant_value(values[i], order)
        if not v.is_real():
            raise ValueError("point coordinates must be real")
        x0 = v.re.coefficient(0)
        std.append(x0)
        offs.append(v.re - AsymptoticScalar.constant(x0, v.re.order))
    return make_nearstandard(std, AsymptoticVector(offs), order=order)


def _numbers(args: list[str], text: str) -> list[float]:
    try:
        return [float(a) for a in args]
    except ValueError:
        raise DSLSyntaxError(f"domain arguments must be numbers: {args}", 1, 1, text) from None


def parse_domain(text: str) -> DomainSpec:
    """``R``, ``R^2``, ``box(a,b[,c,d...])``, ``ball(c1,..,cd,r)``, ``annulus(cx,cy,r1,r2)``,
    ``halfline(a)``, ``union(D1, D2, ...)``."""
    t = text.strip()
    m = re.fullmatch(r"R(?:\^(\d+))?", t)
    if m:
        return space(int(m.group(1) or 1))
    m = re.fullmatch(r"(\w+)\s*\((.*)\)", t, re.DOTALL)
    if not m:
        raise DSLSyntaxError(f"cannot read domain {t!r}", 1, 1, text)
    kind, args = m.group(1), _split_top(m.group(2))
    if kind == "union":
        return union(*(parse_domain(a) for a in args))
    nums = _numbers(args, text)
    try:
        if kind == "box":
            return box(*nums)
        if kind == "ball":
            return ball(nums[:-1], nums[-1])
        if kind == "annulus":
            return annulus(nums[:2], nums[2], nums[3])
        if kind == "halfline":
            return halfline(*nums)
    except (IndexError, TypeError, ValueError) as exc:
        raise DSLSyntaxError(f"bad arguments for {kind}: {exc}", 1, 1, text) from None
    raise DSLSyntaxError(f"unknown domain {kind!r}", 1, 1, text)


@dataclass
class ParsedProgram:
    expr: Expr
    domain: DomainSpec
    bindings: dict[str, AsymptoticPoint] = field(default_factory=dict)

    @property
    def function(self) -> AsymptoticFunction:
        return AsymptoticFunction(self.expr, self.domain)


def parse(source: str, domain: str | DomainSpec | None = None, at: str | None = None,
          order=DEFAULT_ORDER) -> ParsedProgram:
    """Parse an expression together with its domain and an optional point literal."""
    expr = parse_expr(source)
    if isinstance(domain, str):
        domain = parse_domain(domain)
    bindings = {}
    if at is not None:
        d = domain.d if domain is not None else None
        bindings["at"] = parse_point(at, d, order)
    if domain is None:
        d = max(max_var(expr) + 1, bindings["at"].d if bindings else 1)
        domain = space(d)
    if max_var(expr) >= domain.d:
        raise UnboundVariable(f"{VARIABLE_NAMES[max_var(expr)]} is not a coordinate of {domain}")
    return ParsedProgram(expr, domain, bindings)
