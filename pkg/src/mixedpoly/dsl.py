"""A small expression language for generating functions over t and x.

The language covers exactly the textual shapes the generating functions in
this package are written in: rational constants, the indeterminate ``t``,
``+ - * /``, integer powers, ``log(...)``, ``exp(...)``, and ``base^x``
(``x`` may appear only as an exponent).  ``eval_series`` turns an
expression into an exact :class:`~mixedpoly.series.TSeries` at a requested
truncation.

Grammar (see docs/grammar.ebnf):

    expr    = term (("+" | "-") term)* ;
    term    = unary (("*" | "/") unary)* ;
    unary   = "-" unary | power ;
    power   = atom ("^" exponent)* ;
    exponent= INT | "x" | "(" ["-"] INT ")" ;
    atom    = INT | "t" | ("log" | "exp") "(" expr ")" | "(" expr ")" ;

Every failure is a positioned ``LexError``, ``ParseError``, or
``SemanticError``; no input text raises anything else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Union

from .series import (
    DivisionError,
    TSeries,
    XPoly,
    exp_xt,
    expm1,
    log1p,
)

__all__ = [
    "Add",
    "Ast",
    "Const",
    "DslError",
    "Div",
    "Exp",
    "LexError",
    "Log",
    "Mul",
    "Neg",
    "ParseError",
    "PowInt",
    "PowX",
    "SemanticError",
    "SemanticReason",
    "Sub",
    "Token",
    "TokenKind",
    "VarT",
    "eval_series",
    "eval_text",
    "line_col",
    "parse",
    "parse_text",
    "render",
    "tokenize",
]

# Exponents are literal integers; anything this large is a typo or abuse,
# and evaluating it would exhaust memory on constant bases.
MAX_EXPONENT = 10**6

Span = tuple[int, int]


class DslError(Exception):
    """Base class for positioned DSL errors."""

    def __init__(self, position: int, message: str):
        super().__init__(message)
        self.position = position
        self.message = message


class LexError(DslError):
    def __init__(self, position: int, found: str):
        super().__init__(position, f"unexpected character {found!r}")
        self.found = found


class ParseError(DslError):
    def __init__(self, position: int, expected: str, found: str):
        super().__init__(position, f"expected {expected}, found {found}")
        self.expected = expected
        self.found = found


class SemanticReason(Enum):
    NON_UNIT_DIVISOR = "NonUnitDivisor"
    LOG_ARG_NOT_ONE = "LogArgNotOne"
    EXP_ARG_NOT_ZERO = "ExpArgNotZero"
    POWX_BASE_NOT_ONE = "PowXBaseNotOne"
    T_DIVISION_IMPOSSIBLE = "TByTDivisionImpossible"


class SemanticError(DslError):
    def __init__(self, position: int, reason: SemanticReason, detail: str = ""):
        message = reason.value + (f": {detail}" if detail else "")
        super().__init__(position, message)
        self.reason = reason


def line_col(src: str, position: int) -> tuple[int, int]:
    """1-based line and column of a byte offset."""
    prefix = src[:position]
    line = prefix.count("\n") + 1
    col = position - (prefix.rfind("\n") + 1) + 1
    return line, col


class TokenKind(Enum):
    IDENT = "ident"
    INT = "int"
    PLUS = "+"
    MINUS = "-"
    STAR = "*"
    SLASH = "/"
    CARET = "^"
    LPAREN = "("
    RPAREN = ")"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    start: int
    end: int


_IDENTS = ("t", "x", "log", "exp")
_SINGLE = {
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "*": TokenKind.STAR,
    "/": TokenKind.SLASH,
    "^": TokenKind.CARET,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
}


def tokenize(src: str) -> list[Token]:
    """Longest-match lexing; spans cover all non-whitespace input.

    Only ``t``, ``x``, ``log``, ``exp`` are valid identifiers; rationals
    are not lexed as single tokens -- ``a/b`` arrives as INT SLASH INT and
    is folded at parse time.
    """
    tokens: list[Token] = []
    i = 0
    n = len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i + 1
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(Token(TokenKind.INT, src[i:j], i, j))
            i = j
            continue
        if c.isalpha():
            j = i + 1
            while j < n and src[j].isalpha():
                j += 1
            word = src[i:j]
            if word not in _IDENTS:
                raise LexError(i, word)
            tokens.append(Token(TokenKind.IDENT, word, i, j))
            i = j
            continue
        kind = _SINGLE.get(c)
        if kind is None:
            raise LexError(i, c)
        tokens.append(Token(kind, c, i, i + 1))
        i += 1
    return tokens


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Fraction
    span: Span = field(compare=False)


@dataclass(frozen=True)
class VarT:
    span: Span = field(compare=False)


@dataclass(frozen=True)
class Add:
    left: "Ast"
    right: "Ast"
    span: Span = field(compare=False)


@dataclass(frozen=True)
class Sub:
    left: "Ast"
    right: "Ast"
    span: Span = field(compare=False)


@dataclass(frozen=True)
class Mul:
    left: "Ast"
    right: "Ast"
    span: Span = field(compare=False)


@dataclass(frozen=True)
class Div:
    left: "Ast"
    right: "Ast"
    span: Span = field(compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Ast"
    span: Span = field(compare=False)


@dataclass(frozen=True)
class PowInt:
    base: "Ast"
    exponent: int
    span: Span = field(compare=False)


@dataclass(frozen=True)
class PowX:
    base: "Ast"
    span: Span = field(compare=False)


@dataclass(frozen=True)
class Log:
    arg: "Ast"
    span: Span = field(compare=False)


@dataclass(frozen=True)
class Exp:
    arg: "Ast"
    span: Span = field(compare=False)


Ast = Union[Const, VarT, Add, Sub, Mul, Div, Neg, PowInt, PowX, Log, Exp]


class _Parser:
    def __init__(self, tokens: list[Token], src_len: int):
        self.tokens = tokens
        self.pos = 0
        self.src_len = src_len

    def _peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _advance(self) -> Token:
        tok = self._peek()
        if tok is None:
            raise ParseError(self.src_len, "a token", "end of input")
        self.pos += 1
        return tok

    def _expect(self, kind: TokenKind, what: str) -> Token:
        tok = self._peek()
        if tok is None:
            raise ParseError(self.src_len, what, "end of input")
        if tok.kind is not kind:
            raise ParseError(tok.start, what, repr(tok.text))
        return self._advance()

    def parse_expr(self) -> Ast:
        node = self.parse_term()
        while (tok := self._peek()) is not None and tok.kind in (TokenKind.PLUS, TokenKind.MINUS):
            self._advance()
            rhs = self.parse_term()
            span = (_span_of(node)[0], _span_of(rhs)[1])
            node = Add(node, rhs, span) if tok.kind is TokenKind.PLUS else Sub(node, rhs, span)
        return node

    def parse_term(self) -> Ast:
        node = self.parse_unary()
        while (tok := self._peek()) is not None and tok.kind in (TokenKind.STAR, TokenKind.SLASH):
            self._advance()
            rhs = self.parse_unary()
            span = (_span_of(node)[0], _span_of(rhs)[1])
            if tok.kind is TokenKind.STAR:
                node = Mul(node, rhs, span)
            else:
                node = _make_div(node, rhs, span)
        return node

    def parse_unary(self) -> Ast:
        tok = self._peek()
        if tok is not None and tok.kind is TokenKind.MINUS:
            self._advance()
            operand = self.parse_unary()
            return Neg(operand, (tok.start, _span_of(operand)[1]))
        return self.parse_power()

    def parse_power(self) -> Ast:
        base = self.parse_atom()
        while (tok := self._peek()) is not None and tok.kind is TokenKind.CARET:
            self._advance()
            base = self._attach_exponent(base, tok)
        return base

    def _attach_exponent(self, base: Ast, caret: Token) -> Ast:
        tok = self._peek()
        if tok is None:
            raise ParseError(self.src_len, "an exponent", "end of input")
        start = _span_of(base)[0]
        if tok.kind is TokenKind.INT:
            self._advance()
            return PowInt(base, self._int_value(tok), (start, tok.end))
        if tok.kind is TokenKind.IDENT and tok.text == "x":
            self._advance()
            return PowX(base, (start, tok.end))
        if tok.kind is TokenKind.LPAREN:
            self._advance()
            sign = 1
            nxt = self._peek()
            if nxt is not None and nxt.kind is TokenKind.MINUS:
                self._advance()
                sign = -1
            num = self._expect(TokenKind.INT, "an integer exponent")
            close = self._expect(TokenKind.RPAREN, "')'")
            return PowInt(base, sign * self._int_value(num), (start, close.end))
        raise ParseError(
            tok.start,
            "an integer literal, x, or a parenthesized integer (negative exponents require parentheses)",
            repr(tok.text),
        )

    def _int_value(self, tok: Token) -> int:
        value = int(tok.text)
        if value > MAX_EXPONENT:
            raise ParseError(tok.start, f"an exponent of magnitude <= {MAX_EXPONENT}", tok.text)
        return value

    def parse_atom(self) -> Ast:
        tok = self._peek()
        if tok is None:
            raise ParseError(self.src_len, "an expression", "end of input")
        if tok.kind is TokenKind.INT:
            self._advance()
            return Const(Fraction(int(tok.text)), (tok.start, tok.end))
        if tok.kind is TokenKind.IDENT:
            if tok.text == "t":
                self._advance()
                return VarT((tok.start, tok.end))
            if tok.text == "x":
                raise ParseError(tok.start, "x only as an exponent (write base^x)", "x")
            self._advance()  # log or exp
            self._expect(TokenKind.LPAREN, "'('")
            arg = self.parse_expr()
            close = self._expect(TokenKind.RPAREN, "')'")
            span = (tok.start, close.end)
            return Log(arg, span) if tok.text == "log" else Exp(arg, span)
        if tok.kind is TokenKind.LPAREN:
            self._advance()
            inner = self.parse_expr()
            self._expect(TokenKind.RPAREN, "')'")
            return inner
        raise ParseError(tok.start, "an expression", repr(tok.text))


def _span_of(node: Ast) -> Span:
    return node.span


def _make_div(left: Ast, right: Ast, span: Span) -> Ast:
    # Rationals form at parse time: a quotient of constants with a nonzero
    # denominator folds into a single Const node.
    if isinstance(left, Const) and isinstance(right, Const) and right.value != 0:
        return Const(left.value / right.value, span)
    return Div(left, right, span)


def parse(tokens: list[Token], src_len: int = 0) -> Ast:
    """Parse a token list produced by :func:`tokenize`."""
    if tokens:
        src_len = max(src_len, tokens[-1].end)
    parser = _Parser(tokens, src_len)
    node = parser.parse_expr()
    leftover = parser._peek()
    if leftover is not None:
        raise ParseError(leftover.start, "end of input", repr(leftover.text))
    return node


def parse_text(src: str) -> Ast:
    return parse(tokenize(src), len(src))


# --------------------------------------------------------------------------
# Rendering (for round-trip testing and diagnostics)
# --------------------------------------------------------------------------


def render(node: Ast) -> str:
    """Unparse to text that reparses to a structurally identical tree."""
    if isinstance(node, Const):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, VarT):
        return "t"
    if isinstance(node, Add):
        return f"({render(node.left)} + {render(node.right)})"
    if isinstance(node, Sub):
        return f"({render(node.left)} - {render(node.right)})"
    if isinstance(node, Mul):
        return f"({render(node.left)} * {render(node.right)})"
    if isinstance(node, Div):
        return f"({render(node.left)} / {render(node.right)})"
    if isinstance(node, Neg):
        return f"(-{render(node.operand)})"
    if isinstance(node, PowInt):
        k = node.exponent
        suffix = f"^{k}" if k >= 0 else f"^({k})"
        return render(node.base) + suffix
    if isinstance(node, PowX):
        return render(node.base) + "^x"
    if isinstance(node, Log):
        return f"log({render(node.arg)})"
    if isinstance(node, Exp):
        return f"exp({render(node.arg)})"
    raise TypeError(f"not an AST node: {node!r}")


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------


def eval_series(node: Ast, trunc: int) -> TSeries:
    """Evaluate an AST to an exact truncated series.

    Division handles denominators of positive t-valuation (for example the
    bare ``t`` in ``log(1+t)/t``, or ``exp(t)-1`` in ``t/(exp(t)-1)``) by
    evaluating both sides at a raised truncation and shifting the common
    power of t out, so the result is still exact at the requested order.
    ``log`` requires a constant term of exactly 1, ``exp`` of exactly 0,
    and ``base^x`` a constant term of exactly 1; violations raise
    positioned :class:`SemanticError` values.
    """
    if trunc < 0:
        raise ValueError("truncation order must be >= 0")
    if isinstance(node, Const):
        return TSeries.constant(node.value, trunc)
    if isinstance(node, VarT):
        return TSeries.var(trunc)
    if isinstance(node, Add):
        return eval_series(node.left, trunc) + eval_series(node.right, trunc)
    if isinstance(node, Sub):
        return eval_series(node.left, trunc) - eval_series(node.right, trunc)
    if isinstance(node, Mul):
        return eval_series(node.left, trunc) * eval_series(node.right, trunc)
    if isinstance(node, Neg):
        return -eval_series(node.operand, trunc)
    if isinstance(node, Div):
        return _eval_div(node, trunc)
    if isinstance(node, PowInt):
        base = eval_series(node.base, trunc)
        try:
            return base**node.exponent
        except DivisionError as exc:
            raise SemanticError(node.span[0], SemanticReason.NON_UNIT_DIVISOR, str(exc)) from exc
    if isinstance(node, PowX):
        base = eval_series(node.base, trunc)
        if base.coeff(0) != XPoly.one():
            raise SemanticError(
                node.span[0],
                SemanticReason.POWX_BASE_NOT_ONE,
                "base of ^x must have constant term 1",
            )
        log_base = log1p(trunc).compose(base - 1)
        return exp_xt(trunc).compose(log_base)
    if isinstance(node, Log):
        arg = eval_series(node.arg, trunc)
        if arg.coeff(0) != XPoly.one():
            raise SemanticError(
                node.span[0],
                SemanticReason.LOG_ARG_NOT_ONE,
                "log argument must have constant term 1",
            )
        return log1p(trunc).compose(arg - 1)
    if isinstance(node, Exp):
        arg = eval_series(node.arg, trunc)
        if not arg.coeff(0).is_zero:
            raise SemanticError(
                node.span[0],
                SemanticReason.EXP_ARG_NOT_ZERO,
                "exp argument must have constant term 0",
            )
        return expm1(trunc).compose(arg) + 1
    raise TypeError(f"not an AST node: {node!r}")


def _literal_t_power(node: Ast) -> int | None:
    """k when the node is literally t or t^k with k > 0, else None."""
    if isinstance(node, VarT):
        return 1
    if isinstance(node, PowInt) and isinstance(node.base, VarT) and node.exponent > 0:
        return node.exponent
    return None


def _shift_quotient(node: Div, v: int, trunc: int) -> TSeries:
    num_hi = eval_series(node.left, trunc + v)
    for i in range(v):
        if not num_hi.coeff(i).is_zero:
            raise SemanticError(
                node.span[0],
                SemanticReason.T_DIVISION_IMPOSSIBLE,
                f"numerator coefficient of t^{i} is nonzero",
            )
    den_hi = eval_series(node.right, trunc + v)
    return num_hi.shift_down(v) / den_hi.shift_down(v)


def _eval_div(node: Div, trunc: int) -> TSeries:
    # A literal t (or t^k) denominator has known valuation, so it works at
    # any truncation, including ones too low to observe the leading term.
    literal = _literal_t_power(node.right)
    if literal is not None:
        return _shift_quotient(node, literal, trunc)
    den = eval_series(node.right, trunc)
    c0 = den.coeff(0)
    if not c0.is_zero:
        if not c0.is_scalar:
            raise SemanticError(
                node.span[0],
                SemanticReason.NON_UNIT_DIVISOR,
                "divisor constant term depends on x",
            )
        return eval_series(node.left, trunc) / den
    # Denominator is divisible by t: find its valuation v, re-evaluate both
    # sides exactly at truncation T + v, and shift t^v out of each.
    v = None
    for i in range(trunc + 1):
        if not den.coeff(i).is_zero:
            v = i
            break
    if v is None:
        raise SemanticError(
            node.span[0],
            SemanticReason.NON_UNIT_DIVISOR,
            f"divisor vanishes to order {trunc}",
        )
    if not den.coeff(v).is_scalar:
        raise SemanticError(
            node.span[0],
            SemanticReason.NON_UNIT_DIVISOR,
            "leading divisor coefficient depends on x",
        )
    return _shift_quotient(node, v, trunc)


def eval_text(src: str, trunc: int) -> TSeries:
    """Tokenize, parse, and evaluate in one step."""
    return eval_series(parse_text(src), trunc)
