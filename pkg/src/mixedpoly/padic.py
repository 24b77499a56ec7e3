"""Finite approximants of the bosonic and fermionic p-adic integrals.

The bosonic (Volkenborn) integral of f over the p-adic integers is the
p-adic limit of p^(-N) * sum_{x=0}^{p^N - 1} f(x); the fermionic integral
is the limit of the alternating sum sum_x (-1)^x f(x).  This module never
claims to compute those limits: it evaluates the finite level-N sums as
exact rationals and measures how fast they approach a supplied target in
the p-adic valuation.  All quantitative convergence thresholds asserted in
the test suite were frozen from oracle runs of these routines, not derived
analytically.

Integrands are either ``XPoly`` values or first-class binomial-basis
integrands C(x, n); the closed-form Volkenborn oracle lives in the
binomial basis, so it is never expanded into monomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Union

from .series import XPoly

__all__ = [
    "BinomialBasis",
    "BudgetExceededError",
    "DEFAULT_BUDGET",
    "IntegralKind",
    "PAdicContext",
    "PAdicError",
    "TraceRow",
    "ValuationTrace",
    "convergence_trace",
    "finite_integral",
    "is_odd_prime",
    "multifold_integral",
    "shift_residual",
    "vp",
]

DEFAULT_BUDGET = 10**7


class PAdicError(Exception):
    """Base class for p-adic approximant errors."""


class BudgetExceededError(PAdicError):
    """A requested summation exceeds the configured evaluation budget."""


class IntegralKind(Enum):
    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PAdicContext:
    """Summation level: p odd prime, sums run over 0 .. p^N - 1."""

    p: int
    N: int
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError("p must be an odd prime")
        if self.N < 1:
            raise ValueError("level N must be >= 1")
        if self.p**self.N > self.budget:
            raise BudgetExceededError(
                f"p^N = {self.p}^{self.N} exceeds budget {self.budget}"
            )

    @property
    def modulus(self) -> int:
        return self.p**self.N


@dataclass(frozen=True)
class BinomialBasis:
    """The integrand C(x, n) kept in the binomial basis."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("binomial index must be >= 0")


Integrand = Union[XPoly, BinomialBasis]


def _binom_at(z: Union[int, Fraction], n: int) -> Fraction:
    """Generalized binomial C(z, n) = z(z-1)..(z-n+1)/n!, exact."""
    if isinstance(z, int) or z.denominator == 1:
        zi = int(z)
        if zi >= 0:
            return Fraction(comb(zi, n))
    acc = Fraction(1)
    for i in range(n):
        acc *= z - i
    return acc / factorial(n)


def _eval_integrand(f: Integrand, z: Union[int, Fraction]) -> Fraction:
    if isinstance(f, BinomialBasis):
        return _binom_at(z, f.n)
    if isinstance(f, XPoly):
        return f(Fraction(z))
    raise TypeError(f"integrand must be XPoly or BinomialBasis, got {type(f).__name__}")


def vp(q: Union[Fraction, int], p: int) -> Union[int, float]:
    """Normalized p-adic valuation of a rational; +infinity for 0."""
    if not is_odd_prime(p) and p != 2:
        raise ValueError("p must be prime")
    q = Fraction(q)
    if q == 0:
        return math.inf
    return _vp_int(q.numerator, p) - _vp_int(q.denominator, p)


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def finite_integral(kind: IntegralKind, f: Integrand, ctx: PAdicContext) -> Fraction:
    """Level-N approximant of the bosonic or fermionic integral, exact.

    Bosonic:   p^(-N) * sum_{x=0}^{p^N-1} f(x)
    Fermionic: sum_{x=0}^{p^N-1} (-1)^x f(x)
    """
    M = ctx.modulus
    if kind is IntegralKind.BOSONIC:
        total = sum((_eval_integrand(f, x) for x in range(M)), Fraction(0))
        return total / M
    if kind is IntegralKind.FERMIONIC:
        total = Fraction(0)
        sign = 1
        for x in range(M):
            total += sign * _eval_integrand(f, x)
            sign = -sign
        return total
    raise ValueError(f"unknown integral kind {kind!r}")


def multifold_integral(
    kind: IntegralKind,
    f: Integrand,
    k: int,
    x0: Union[int, Fraction],
    ctx: PAdicContext,
) -> Fraction:
    """k-fold nested approximant of f evaluated at y_1 + ... + y_k + x0.

    Each nesting level carries the per-variable weight of ``kind``; the
    result is an exact rational.  Only k in {1, 2} is supported (desk
    scale), and p^(kN) must stay within the context budget.
    """
    if k not in (1, 2):
        raise ValueError("only 1- and 2-fold integrals are supported")
    M = ctx.modulus
    if M**k > ctx.budget:
        raise BudgetExceededError(
            f"p^(kN) = {ctx.p}^{k * ctx.N} exceeds budget {ctx.budget}"
        )
    if isinstance(x0, Fraction) and x0.denominator == 1:
        x0 = int(x0)
    if k == 1:
        if kind is IntegralKind.BOSONIC:
            total = sum((_eval_integrand(f, y + x0) for y in range(M)), Fraction(0))
            return total / M
        total = Fraction(0)
        sign = 1
        for y in range(M):
            total += sign * _eval_integrand(f, y + x0)
            sign = -sign
        return total
    # k == 2: the integrand depends only on y1 + y2, so group by the sum
    # with its lattice multiplicity; the fermionic weight (-1)^(y1+y2)
    # also depends only on the sum.
    counts = [min(s, M - 1) - max(0, s - M + 1) + 1 for s in range(2 * M - 1)]
    if kind is IntegralKind.BOSONIC:
        total = sum(
            (counts[s] * _eval_integrand(f, s + x0) for s in range(2 * M - 1)),
            Fraction(0),
        )
        return total / (M * M)
    total = Fraction(0)
    for s in range(2 * M - 1):
        term = counts[s] * _eval_integrand(f, s + x0)
        total += term if s % 2 == 0 else -term
    return total


def shift_residual(kind: IntegralKind, f: XPoly, ctx: PAdicContext) -> Fraction:
    """Exact defect of the shift identity at level N.

    With f1(x) = f(x+1), the p-adic limits satisfy
    I_0(f1) - I_0(f) = f'(0) and I_{-1}(f1) = -I_{-1}(f) + 2 f(0); at a
    finite level the corresponding combination leaves a rational residual
    whose valuation grows with N.
    """
    if not isinstance(f, XPoly):
        raise TypeError("shift_residual expects an XPoly integrand")
    f1 = f.shifted(1)
    if kind is IntegralKind.BOSONIC:
        return (
            finite_integral(kind, f1, ctx)
            - finite_integral(kind, f, ctx)
            - f.derivative()(0)
        )
    return (
        finite_integral(kind, f1, ctx)
        + finite_integral(kind, f, ctx)
        - 2 * f(0)
    )


@dataclass(frozen=True)
class TraceRow:
    N: int
    approximant: Fraction
    residual: Fraction
    vp: Union[int, float]


@dataclass(frozen=True)
class ValuationTrace:
    """Residual valuations of level-N approximants against a fixed target."""

    kind: IntegralKind
    p: int
    integrand: Integrand
    target: Fraction
    fold: int
    shift: Fraction
    rows: tuple[TraceRow, ...]

    def to_dict(self) -> dict:
        d = {
            "p": self.p,
            "kind": self.kind.value,
        }
        if isinstance(self.integrand, BinomialBasis):
            d["n"] = self.integrand.n
        else:
            d["integrand"] = str(self.integrand)
        d["k"] = self.fold
        d["x0"] = str(self.shift)
        d["target"] = str(self.target)
        d["rows"] = [
            {
                "N": row.N,
                "approx": str(row.approximant),
                "residual": str(row.residual),
                "vp": None if row.vp == math.inf else row.vp,
            }
            for row in self.rows
        ]
        return d


def convergence_trace(
    kind: IntegralKind,
    f: Integrand,
    target: Union[int, Fraction],
    p: int,
    N_range: Iterable[int],
    budget: int = DEFAULT_BUDGET,
    k: int = 1,
    x0: Union[int, Fraction] = 0,
) -> ValuationTrace:
    """Tabulate approximants and residual valuations over a range of levels.

    The target value is supplied by the caller (typically a family number
    or polynomial value divided by n!); monotonicity or growth of the
    valuations is asserted by the caller, not here.
    """
    target = Fraction(target)
    rows = []
    for N in sorted(set(N_range)):
        ctx = PAdicContext(p, N, budget)
        approx = multifold_integral(kind, f, k, x0, ctx)
        residual = approx - target
        rows.append(TraceRow(N, approx, residual, vp(residual, p)))
    return ValuationTrace(
        kind=kind,
        p=p,
        integrand=f,
        target=target,
        fold=k,
        shift=Fraction(x0),
        rows=tuple(rows),
    )
