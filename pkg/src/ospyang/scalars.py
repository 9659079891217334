"""Exact scalars: rationals, truncated series in 1/u, and the Gamma-based
normalisation factor.

Everything identity-shaped is done over `fractions.Fraction`; floating point
enters only through `gamma1`/`rho`, which are kept strictly out of the exact
checks.
"""

from __future__ import annotations

import math
from fractions import Fraction

# Coefficient field used everywhere.  Fraction is arbitrary precision,
# always reduced, with positive denominator.
Rational = Fraction

KAPPA = Fraction(3, 2)


def rat(a, b=None) -> Fraction:
    """Build a Fraction from ints, a 'p/q' string, or pass one through."""
    if b is not None:
        return Fraction(a, b)
    if isinstance(a, Fraction):
        return a
    if isinstance(a, str):
        return Fraction(a)
    if isinstance(a, int):
        return Fraction(a)
    raise TypeError(f"cannot build an exact rational from {a!r}")


class SeriesError(ValueError):
    pass


class TruncatedSeries:
    """Finitely supported sum  sum_n c_n u^{-n}  truncated at u^{-order}.

    Exponents n may be negative (positive powers of u, needed for the
    negative-half generating functions); `low` caps those.  Stored
    coefficients are never zero.  Coefficients live in any ring with
    +, -, * and a multiplicative unit `one`.
    """

    __slots__ = ("coeffs", "order", "low", "one")

    def __init__(self, coeffs, order, low=0, one=Fraction(1)):
        if low > 0:
            raise SeriesError("low bound must be <= 0")
        self.order = order
        self.low = low
        self.one = one
        zero = one - one
        self.coeffs = {
            n: c for n, c in coeffs.items() if low <= n <= order and c != zero
        }

    @classmethod
    def constant(cls, c, order, low=0, one=Fraction(1)):
        return cls({0: c}, order, low, one)

    @classmethod
    def one_series(cls, order, low=0, one=Fraction(1)):
        return cls({0: one}, order, low, one)

    def _like(self, coeffs):
        return TruncatedSeries(coeffs, self.order, self.low, self.one)

    def __getitem__(self, n):
        return self.coeffs.get(n, self.one - self.one)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for n, c in other.coeffs.items():
            coeffs[n] = coeffs.get(n, self.one - self.one) + c
        return self._like(coeffs)

    def __sub__(self, other):
        coeffs = dict(self.coeffs)
        for n, c in other.coeffs.items():
            coeffs[n] = coeffs.get(n, self.one - self.one) - c
        return self._like(coeffs)

    def __neg__(self):
        return self._like({n: -c for n, c in self.coeffs.items()})

    def scale(self, r):
        return self._like({n: c * r for n, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        coeffs = {}
        zero = self.one - self.one
        for n, a in self.coeffs.items():
            for m, b in other.coeffs.items():
                k = n + m
                if self.low <= k <= self.order:
                    coeffs[k] = coeffs.get(k, zero) + a * b
        return self._like(coeffs)

    __rmul__ = scale

    def shift(self, k):
        """Multiply by u^{-k}."""
        return self._like({n + k: c for n, c in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "TruncatedSeries(0)"
        terms = ", ".join(f"u^-{n}: {c}" for n, c in sorted(self.coeffs.items()))
        return f"TruncatedSeries({terms}; order={self.order})"


def series_invert(s: TruncatedSeries) -> TruncatedSeries:
    """Inverse of a series with invertible constant term, through s.order.

    Only the u^{-1}-half is supported: positive powers of u in the input are
    rejected, since their inverses are not finitely representable.
    """
    if any(n < 0 for n in s.coeffs):
        raise SeriesError("series_invert: input has positive powers of u")
    c0 = s[0]
    zero = s.one - s.one
    if c0 == zero:
        raise SeriesError(f"series_invert: constant term {c0!r} is not invertible")
    try:
        inv0 = s.one / c0 if isinstance(c0, Fraction) else c0.__rtruediv__(s.one)
    except (TypeError, ZeroDivisionError) as exc:
        raise SeriesError(
            f"series_invert: constant term {c0!r} is not invertible"
        ) from exc
    # Newton-free direct recursion: b_n = -inv0 * sum_{k=1..n} a_k b_{n-k}.
    inv = {0: inv0}
    for n in range(1, s.order + 1):
        acc = zero
        for k in range(1, n + 1):
            a_k = s[k]
            if a_k != zero and (n - k) in inv:
                acc = acc + a_k * inv[n - k]
        if acc != zero:
            inv[n] = -(inv0 * acc)
    return TruncatedSeries(inv, s.order, s.low, s.one)


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """log of a series with constant term 1, through s.order."""
    if any(n < 0 for n in s.coeffs):
        raise SeriesError("series_log: input has positive powers of u")
    if s[0] != s.one:
        raise SeriesError(f"series_log: constant term is {s[0]!r}, expected 1")
    # log(1+x) = sum (-1)^{k+1} x^k / k with x = s - 1, nilpotent mod order.
    x = s - TruncatedSeries.one_series(s.order, s.low, s.one)
    out = TruncatedSeries({}, s.order, s.low, s.one)
    power = TruncatedSeries.one_series(s.order, s.low, s.one)
    for k in range(1, s.order + 1):
        power = power * x
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with zero constant term, through s.order."""
    if any(n < 0 for n in s.coeffs):
        raise SeriesError("series_exp: input has positive powers of u")
    zero = s.one - s.one
    if s[0] != zero:
        raise SeriesError(f"series_exp: constant term is {s[0]!r}, expected 0")
    out = TruncatedSeries.one_series(s.order, s.low, s.one)
    power = TruncatedSeries.one_series(s.order, s.low, s.one)
    fact = 1
    for k in range(1, s.order + 1):
        power = power * s
        if power.is_zero():
            break
        fact *= k
        out = out + power.scale(Fraction(1, fact))
    return out


# ---------------------------------------------------------------------------
# Gamma, Gamma_1 and the scalar factor rho
# ---------------------------------------------------------------------------

class GammaPoleError(ValueError):
    pass


# Lanczos coefficients, g = 7, n = 9 (double precision standard set).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def gamma(x: float) -> float:
    """Real Gamma via Lanczos, reflection formula for x < 1/2.

    Accurate to ~13 significant digits away from the poles at 0, -1, -2, ...
    """
    if x <= 0.0 and x == math.floor(x):
        raise GammaPoleError(f"Gamma pole at x = {x}")
    if x < 0.5:
        # Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * t ** (x + 0.5) * math.exp(-t) * acc


def log_gamma(x: float) -> float:
    """log Gamma for x > 0, overflow-free (used for large-argument ratios)."""
    if x <= 0.0:
        raise GammaPoleError(f"log_gamma needs x > 0, got {x}")
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    y = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (y + i)
    t = y + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (y + 0.5) * math.log(t) - t + math.log(acc)


def gamma1(x: float, omega: float) -> float:
    """Normalised Gamma of period omega:  omega^{x/omega} / sqrt(2 pi omega) * Gamma(x/omega)."""
    if omega <= 0.0:
        raise ValueError("gamma1 needs omega > 0")
    t = x / omega
    if t <= 0.0 and t == math.floor(t):
        raise GammaPoleError(f"gamma1 pole: x/omega = {t} at x = {x}, omega = {omega}")
    return omega ** t / math.sqrt(2.0 * math.pi * omega) * gamma(t)


def rho(u: float) -> float:
    """Scalar normalisation of the R-matrix: the 7-factor gamma1 ratio of
    period 2*kappa = 3."""
    w = float(2 * KAPPA)
    k = float(KAPPA)
    num = (
        gamma1(u, w)
        * gamma1(u + k - 1.0, w)
        * gamma1(u + k + 1.0, w)
        * gamma1(u + 2.0 * k, w)
    )
    den = (
        gamma1(u + 1.0, w)
        * gamma1(u + k, w) ** 2
        * gamma1(u + 2.0 * k - 1.0, w)
    )
    return num / den
