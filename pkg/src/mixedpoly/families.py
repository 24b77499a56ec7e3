"""The five base polynomial families and their GF-free oracles.

Each family is defined by a generating function of the form

    kernel(t)^r * carrier(t, x)

where the carrier is e^(x t) for Bernoulli and Euler and (1+t)^x for
Daehee, Changhee, and Cauchy, and the order-1 kernels are

    Bernoulli   t / (e^t - 1)
    Euler       2 / (e^t + 1)
    Daehee      log(1+t) / t
    Changhee    2 / (t + 2)
    Cauchy      t / log(1+t)

``family_gf`` builds the exact truncated series; ``family_oracle``
recomputes the same polynomials through a completely different route
(number recurrences plus binomial convolution), so agreement between the
two is a genuine cross-check rather than a tautology.

Stirling numbers of both kinds and the falling factorial live here too;
they are the change-of-basis data used throughout the identity catalog.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from .series import (
    TSeries,
    XPoly,
    binomial_x,
    exp_xt,
    expm1,
    falling_factorial,
    geom2,
    log1p,
)

__all__ = [
    "FamilyKind",
    "FamilySpec",
    "PolyTable",
    "falling_factorial",
    "family_carrier",
    "family_gf",
    "family_kernel",
    "family_number",
    "family_numbers",
    "family_oracle",
    "family_poly",
    "poly_table",
    "stirling1",
    "stirling2",
]


class FamilyKind(Enum):
    BERNOULLI = "B"
    EULER = "E"
    DAEHEE = "D"
    CHANGHEE = "Ch"
    CAUCHY = "C"


# Families whose carrier is e^(x t); the rest use (1+t)^x.
_EXP_CARRIER = frozenset({FamilyKind.BERNOULLI, FamilyKind.EULER})


@dataclass(frozen=True)
class FamilySpec:
    """A family selector: which kind, at which order.

    Order 0 is admitted and yields the bare carrier (empty kernel product);
    it is useful as a trivial test anchor even though the classical
    definitions start at order 1.
    """

    kind: FamilyKind
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("family order must be >= 0")


@dataclass(frozen=True)
class PolyTable:
    """Rows (n, P_n(x)) for n = 0..n_max, in order."""

    spec: object
    rows: tuple[tuple[int, XPoly], ...]


@lru_cache(maxsize=None)
def stirling1(n: int, m: int) -> int:
    """Signed Stirling number of the first kind.

    Defined by (x)_n = sum_m S1(n, m) x^m, computed by the recurrence
    S1(n+1, m) = S1(n, m-1) - n * S1(n, m) with S1(0, 0) = 1.
    Out-of-triangle arguments return 0.
    """
    if n == 0 and m == 0:
        return 1
    if n <= 0 or m <= 0 or m > n:
        return 0
    return stirling1(n - 1, m - 1) - (n - 1) * stirling1(n - 1, m)


@lru_cache(maxsize=None)
def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind.

    Defined by (e^t - 1)^m / m! = sum_{n>=m} S2(n, m) t^n / n!, computed by
    S2(n+1, m) = m * S2(n, m) + S2(n, m-1).  Out-of-triangle arguments
    return 0.
    """
    if n == 0 and m == 0:
        return 1
    if n <= 0 or m <= 0 or m > n:
        return 0
    return m * stirling2(n - 1, m) + stirling2(n - 1, m - 1)


@lru_cache(maxsize=None)
def family_kernel(kind: FamilyKind, trunc: int) -> TSeries:
    """Order-1 generating kernel of a family, exact at the given truncation.

    The kernels involving a bare t (Daehee, Cauchy, Bernoulli) are built by
    an index shift of a series constructed one order higher, never by
    dividing by t inside the ring, where t is not a unit.
    """
    if kind is FamilyKind.DAEHEE:
        return log1p(trunc + 1).shift_down()
    if kind is FamilyKind.CAUCHY:
        return TSeries.constant(1, trunc) / log1p(trunc + 1).shift_down()
    if kind is FamilyKind.CHANGHEE:
        return geom2(trunc)
    if kind is FamilyKind.BERNOULLI:
        return TSeries.constant(1, trunc) / expm1(trunc + 1).shift_down()
    if kind is FamilyKind.EULER:
        return TSeries.constant(2, trunc) / (expm1(trunc) + 2)
    raise ValueError(f"unknown family kind {kind!r}")


def family_carrier(kind: FamilyKind, trunc: int) -> TSeries:
    """The x-carrying factor: e^(x t) or (1+t)^x depending on the family."""
    return exp_xt(trunc) if kind in _EXP_CARRIER else binomial_x(trunc)


@lru_cache(maxsize=None)
def _family_gf(kind: FamilyKind, order: int, trunc: int) -> TSeries:
    return family_kernel(kind, trunc) ** order * family_carrier(kind, trunc)


def family_gf(spec: FamilySpec, trunc: int) -> TSeries:
    """Exact truncated generating function kernel^order * carrier."""
    return _family_gf(spec.kind, spec.order, trunc)


def family_poly(spec: FamilySpec, n: int, trunc: int | None = None) -> XPoly:
    """P_n(x) extracted from the generating function (n! times [t^n])."""
    if trunc is None:
        trunc = n
    if n > trunc:
        raise ValueError(f"cannot extract degree {n} from truncation {trunc}")
    return family_gf(spec, trunc).poly(n)


@lru_cache(maxsize=None)
def _order1_numbers(kind: FamilyKind, n_max: int) -> tuple[Fraction, ...]:
    """Order-1 number sequence P_0..P_{n_max} at x = 0, GF-free.

    Bernoulli and Euler come from their classical linear recurrences,
    Daehee and Changhee from closed forms, Cauchy from exact term-wise
    integration of the falling factorial over [0, 1].
    """
    out: list[Fraction] = []
    if kind is FamilyKind.BERNOULLI:
        out.append(Fraction(1))
        for n in range(1, n_max + 1):
            acc = sum((comb(n + 1, k) * out[k] for k in range(n)), Fraction(0))
            out.append(-acc / (n + 1))
    elif kind is FamilyKind.EULER:
        out.append(Fraction(1))
        for n in range(1, n_max + 1):
            acc = sum((comb(n, k) * out[k] for k in range(n)), Fraction(0))
            out.append(-acc / 2)
    elif kind is FamilyKind.DAEHEE:
        for n in range(n_max + 1):
            out.append(Fraction((-1) ** n * factorial(n), n + 1))
    elif kind is FamilyKind.CHANGHEE:
        for n in range(n_max + 1):
            out.append(Fraction((-1) ** n * factorial(n), 2**n))
    elif kind is FamilyKind.CAUCHY:
        for n in range(n_max + 1):
            p = falling_factorial(n)
            out.append(sum((p.coeff(i) / (i + 1) for i in range(n + 1)), Fraction(0)))
    else:
        raise ValueError(f"unknown family kind {kind!r}")
    return tuple(out)


def _binomial_convolve(a: tuple[Fraction, ...], b: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    n_max = min(len(a), len(b)) - 1
    return tuple(
        sum((comb(n, k) * a[k] * b[n - k] for k in range(n + 1)), Fraction(0))
        for n in range(n_max + 1)
    )


@lru_cache(maxsize=None)
def family_numbers(spec: FamilySpec, n_max: int) -> tuple[Fraction, ...]:
    """Order-r numbers P_0^(r)..P_{n_max}^(r), by (r-1)-fold binomial convolution."""
    if spec.order == 0:
        return (Fraction(1),) + (Fraction(0),) * n_max
    base = _order1_numbers(spec.kind, n_max)
    acc = base
    for _ in range(spec.order - 1):
        acc = _binomial_convolve(acc, base)
    return acc


def family_number(spec: FamilySpec, n: int) -> Fraction:
    return family_numbers(spec, n)[n]


@lru_cache(maxsize=None)
def family_oracle(spec: FamilySpec, n: int) -> XPoly:
    """P_n^(r)(x) through the GF-free route.

    Numbers come from ``family_numbers``; the polynomial is rebuilt from
    them in the basis matching the carrier:

        e^(x t) carrier:   P_n(x) = sum_k C(n, k) P_k x^(n-k)
        (1+t)^x carrier:   P_n(x) = sum_k C(n, k) P_k (x)_(n-k)
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    nums = family_numbers(spec, n)
    use_monomials = spec.kind in _EXP_CARRIER
    acc = XPoly.zero()
    for k in range(n + 1):
        if nums[k] == 0:
            continue
        if use_monomials:
            basis = XPoly([0] * (n - k) + [1])
        else:
            basis = falling_factorial(n - k)
        acc = acc + basis * (comb(n, k) * nums[k])
    return acc


def poly_table(spec: FamilySpec, n_max: int) -> PolyTable:
    """Materialize rows n = 0..n_max via generating-function extraction."""
    gf = family_gf(spec, n_max)
    return PolyTable(spec=spec, rows=tuple((n, gf.poly(n)) for n in range(n_max + 1)))
