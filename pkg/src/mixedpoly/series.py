"""Truncated formal power series over polynomials with exact rational coefficients.

Two nested commutative rings:

* ``XPoly`` -- dense univariate polynomial in ``x`` over ``fractions.Fraction``.
* ``TSeries`` -- power series in ``t``, truncated at a fixed order ``T``, whose
  coefficients are ``XPoly`` values.

Every generating function handled by this package lives in ``TSeries``; all
arithmetic is exact, and a series never pretends to know coefficients beyond
its truncation order.  Mixing two series with different truncations is a hard
error rather than a silent re-truncation, so that an equality asserted at
order ``T`` is provably exact at that order.

Both classes are immutable value types; every operation returns a new object.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Union

Rat = Fraction

Scalar = Union[Fraction, int]


class SeriesError(Exception):
    """Base class for series-ring errors."""


class TruncationError(SeriesError):
    """Operands carry different truncation orders."""


class DivisionError(SeriesError):
    """Divisor is not invertible in the truncated ring."""


class CompositionError(SeriesError):
    """Inner series of a composition has a nonzero constant term."""


def _rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class XPoly:
    """Dense polynomial in x, ascending coefficient order, always normalized.

    The zero polynomial stores an empty coefficient tuple; any other value
    has a nonzero leading coefficient, so equality is structural.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, value: Scalar) -> "XPoly":
        return cls((value,))

    @classmethod
    def zero(cls) -> "XPoly":
        return cls()

    @classmethod
    def one(cls) -> "XPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "XPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_scalar(self) -> bool:
        """True when the value is a constant (degree <= 0)."""
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> Fraction:
        """Coefficient of x**i (zero beyond the degree)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __add__(self, other) -> "XPoly":
        other = _as_xpoly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return XPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "XPoly":
        return XPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "XPoly":
        other = _as_xpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "XPoly":
        other = _as_xpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "XPoly":
        if isinstance(other, (Fraction, int)):
            if other == 0:
                return XPoly()
            return XPoly(tuple(c * other for c in self.coeffs))
        if isinstance(other, XPoly):
            if self.is_zero or other.is_zero:
                return XPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b != 0:
                        out[i + j] += a * b
            return XPoly(out)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = _as_xpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        # Degree-0 values compare equal to bare rationals, so they must
        # hash like them.
        if len(self.coeffs) <= 1:
            return hash(self.coeff(0))
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, value: Scalar) -> Fraction:
        """Evaluate at a rational point by Horner's rule, exactly."""
        v = _rat(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self) -> "XPoly":
        """Formal derivative."""
        return XPoly(tuple(self.coeffs[i] * i for i in range(1, len(self.coeffs))))

    def shifted(self, c: Scalar) -> "XPoly":
        """The polynomial p(x + c), computed by Horner in the polynomial ring."""
        if self.is_zero:
            return XPoly()
        lin = XPoly((_rat(c), 1))
        acc = XPoly.const(self.coeffs[-1])
        for i in range(len(self.coeffs) - 2, -1, -1):
            acc = acc * lin + XPoly.const(self.coeffs[i])
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                term = str(mag)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                term = xs if mag == 1 else f"{mag}*{xs}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"XPoly({self})"


def _as_xpoly(value) -> "XPoly":
    if isinstance(value, XPoly):
        return value
    if isinstance(value, (Fraction, int)):
        return XPoly((value,))
    return NotImplemented


_ZERO_POLY = XPoly()
_ONE_POLY = XPoly((1,))


class TSeries:
    """Power series in t truncated at order T, with XPoly coefficients.

    Exactly ``T + 1`` coefficients are stored; coefficients beyond ``T`` are
    undefined and never consulted.  Binary operations require both operands
    to carry the same truncation and raise :class:`TruncationError` otherwise.
    """

    __slots__ = ("trunc", "coeffs")

    def __init__(self, trunc: int, coeffs: Iterable = ()):
        if trunc < 0:
            raise ValueError("truncation order must be >= 0")
        cs = [c if isinstance(c, XPoly) else _require_xpoly(c) for c in coeffs]
        if len(cs) > trunc + 1:
            raise ValueError(f"got {len(cs)} coefficients for truncation {trunc}")
        cs.extend([_ZERO_POLY] * (trunc + 1 - len(cs)))
        self.trunc = trunc
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, value: Union[Scalar, XPoly], trunc: int) -> "TSeries":
        return cls(trunc, (value,))

    @classmethod
    def zero(cls, trunc: int) -> "TSeries":
        return cls(trunc, ())

    @classmethod
    def var(cls, trunc: int) -> "TSeries":
        """The series t itself."""
        if trunc == 0:
            return cls(0, ())
        return cls(trunc, (_ZERO_POLY, _ONE_POLY))

    def coeff(self, n: int) -> XPoly:
        """Raw coefficient of t**n."""
        if not 0 <= n <= self.trunc:
            raise ValueError(f"coefficient index {n} out of range 0..{self.trunc}")
        return self.coeffs[n]

    def poly(self, n: int) -> XPoly:
        """n-th extracted polynomial: n! times the coefficient of t**n.

        This is the extraction convention matching generating functions of
        the form sum_n P_n(x) t**n / n!.
        """
        return self.coeff(n) * factorial(n)

    def _check(self, other: "TSeries") -> None:
        if self.trunc != other.trunc:
            raise TruncationError(
                f"truncation mismatch: {self.trunc} vs {other.trunc}"
            )

    def __add__(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            self._check(other)
            return TSeries(
                self.trunc, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
            )
        p = _as_xpoly(other)
        if p is NotImplemented:
            return NotImplemented
        out = list(self.coeffs)
        out[0] = out[0] + p
        return TSeries(self.trunc, out)

    __radd__ = __add__

    def __neg__(self) -> "TSeries":
        return TSeries(self.trunc, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            self._check(other)
            return TSeries(
                self.trunc, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
            )
        p = _as_xpoly(other)
        if p is NotImplemented:
            return NotImplemented
        return self + (-p)

    def __rsub__(self, other) -> "TSeries":
        return (-self) + other

    def __mul__(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            self._check(other)
            T = self.trunc
            out = []
            for n in range(T + 1):
                acc = _ZERO_POLY
                for k in range(n + 1):
                    a = self.coeffs[k]
                    if a.is_zero:
                        continue
                    b = other.coeffs[n - k]
                    if not b.is_zero:
                        acc = acc + a * b
                out.append(acc)
            return TSeries(T, out)
        if isinstance(other, (XPoly, Fraction, int)):
            return TSeries(self.trunc, tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TSeries":
        """Division by forward substitution.

        The divisor's constant term must be a nonzero scalar; x-dependent
        units are rejected because structural equality of the quotient would
        then require rational-function coefficients.
        """
        if isinstance(other, (Fraction, int)):
            if other == 0:
                raise DivisionError("division by zero scalar")
            return self * (Fraction(1) / other)
        if not isinstance(other, TSeries):
            return NotImplemented
        self._check(other)
        g0 = other.coeffs[0]
        if g0.is_zero:
            raise DivisionError("divisor has zero constant term")
        if not g0.is_scalar:
            raise DivisionError("divisor has x-dependent constant term")
        inv = Fraction(1) / g0.coeff(0)
        T = self.trunc
        out: list[XPoly] = []
        for n in range(T + 1):
            acc = self.coeffs[n]
            for k in range(1, n + 1):
                gk = other.coeffs[k]
                if not gk.is_zero:
                    acc = acc - gk * out[n - k]
            out.append(acc * inv)
        return TSeries(T, out)

    def __rtruediv__(self, other) -> "TSeries":
        p = _as_xpoly(other)
        if p is NotImplemented:
            return NotImplemented
        return TSeries.constant(p, self.trunc) / self

    def __pow__(self, exponent: int) -> "TSeries":
        """Integer power by repeated squaring; f**0 is the constant 1.

        Negative exponents require an invertible series (nonzero scalar
        constant term).
        """
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent == 0:
            return TSeries.constant(1, self.trunc)
        base = self
        if exponent < 0:
            base = TSeries.constant(1, self.trunc) / self
            exponent = -exponent
        result = None
        while exponent:
            if exponent & 1:
                result = base if result is None else result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def compose(self, inner: "TSeries") -> "TSeries":
        """Substitute ``inner`` for t, truncated at the shared order.

        Evaluated by Horner in the series ring: with outer coefficients
        a_0..a_T, the result is (..(a_T * g + a_{T-1}) * g + ..) + a_0.
        Requires equal truncations and a vanishing inner constant term so
        that the substituted series is well defined order by order.
        """
        self._check(inner)
        if not inner.coeffs[0].is_zero:
            raise CompositionError("inner series has nonzero constant term")
        T = self.trunc
        acc = TSeries.constant(self.coeffs[T], T)
        for k in range(T - 1, -1, -1):
            acc = acc * inner + self.coeffs[k]
        return acc

    def shift_down(self, k: int = 1) -> "TSeries":
        """Exact division by t**k via index shift; truncation drops by k.

        Only legal when the k low-order coefficients vanish.  This is the
        one sanctioned way to divide by t, which is not a unit of the ring.
        """
        if k < 0:
            raise ValueError("shift must be non-negative")
        if k == 0:
            return self
        if k > self.trunc:
            raise DivisionError("shift exceeds truncation order")
        for i in range(k):
            if not self.coeffs[i].is_zero:
                raise DivisionError(
                    f"cannot divide by t^{k}: coefficient of t^{i} is nonzero"
                )
        return TSeries(self.trunc - k, self.coeffs[k:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.trunc, self.coeffs))

    def __str__(self) -> str:
        terms: list[str] = []
        for n, p in enumerate(self.coeffs):
            if p.is_zero:
                continue
            tpart = "" if n == 0 else ("t" if n == 1 else f"t^{n}")
            if not tpart:
                terms.append(str(p))
            elif p == _ONE_POLY:
                terms.append(tpart)
            else:
                body = str(p)
                needs_parens = len([c for c in p.coeffs if c != 0]) > 1 or body.startswith("-")
                terms.append(f"({body})*{tpart}" if needs_parens else f"{body}*{tpart}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"TSeries(T={self.trunc}: {self})"


def _require_xpoly(c) -> XPoly:
    p = _as_xpoly(c)
    if p is NotImplemented:
        raise TypeError(f"series coefficients must be XPoly or rational, got {type(c).__name__}")
    return p


def falling_factorial(n: int) -> XPoly:
    """(x)_n = x (x-1) ... (x-n+1), with (x)_0 = 1."""
    if n < 0:
        raise ValueError("falling factorial needs n >= 0")
    p = XPoly.one()
    for i in range(n):
        p = p * XPoly((-i, 1))
    return p


def log1p(trunc: int) -> TSeries:
    """log(1+t) = sum_{n>=1} (-1)^(n+1) t^n / n."""
    coeffs = [_ZERO_POLY]
    for n in range(1, trunc + 1):
        coeffs.append(XPoly.const(Fraction((-1) ** (n + 1), n)))
    return TSeries(trunc, coeffs[: trunc + 1])


def expm1(trunc: int) -> TSeries:
    """e^t - 1 = sum_{n>=1} t^n / n!."""
    coeffs = [_ZERO_POLY]
    for n in range(1, trunc + 1):
        coeffs.append(XPoly.const(Fraction(1, factorial(n))))
    return TSeries(trunc, coeffs[: trunc + 1])


def exp_xt(trunc: int) -> TSeries:
    """e^(x t): the coefficient of t^n is x^n / n!."""
    coeffs = []
    for n in range(trunc + 1):
        coeffs.append(XPoly([0] * n + [Fraction(1, factorial(n))]))
    return TSeries(trunc, coeffs)


def binomial_x(trunc: int) -> TSeries:
    """(1+t)^x: the coefficient of t^n is (x)_n / n!."""
    coeffs = []
    for n in range(trunc + 1):
        coeffs.append(falling_factorial(n) * Fraction(1, factorial(n)))
    return TSeries(trunc, coeffs)


def geom2(trunc: int) -> TSeries:
    """2/(2+t) = sum_n (-1/2)^n t^n."""
    coeffs = [XPoly.const(Fraction(-1, 2) ** n) for n in range(trunc + 1)]
    return TSeries(trunc, coeffs)
