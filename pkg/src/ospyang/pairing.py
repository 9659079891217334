"""Closed-form Hopf pairing between the negative and positive halves.

Generator-level values, the factorial pairing on dual PBW monomials, the
triangular factorisation, and the series/recursion oracles for the h-h
pairing.  Everything is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .currents import PBWIndex

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PairingDomainError(ValueError):
    pass


class UnsupportedPairingError(ValueError):
    """Raised for pairings the closed forms do not determine (multi-h)."""


def pair_generators(a, b) -> Fraction:
    """<a, b> for single mode generators, a negative-moded, b non-negative.

    <f_{-k-1}, e_n> = -delta_{nk};  <e_{-k-1}, f_n> = delta_{nk};
    <h_{-k-1}, h_n> = -(1/3) (2 + (-1/2)^{n-k}) C(n, k);
    all cross-family pairs vanish.
    """
    fam_a, mode_a = a
    fam_b, mode_b = b
    if fam_a not in ("e", "f", "h") or fam_b not in ("e", "f", "h"):
        raise PairingDomainError(f"mode generators expected, got {a}, {b}")
    if mode_a >= 0:
        raise PairingDomainError(f"left slot needs a negative mode, got {a}")
    if mode_b < 0:
        raise PairingDomainError(f"right slot needs a non-negative mode, got {b}")
    k = -mode_a - 1
    n = mode_b
    if fam_a == "f" and fam_b == "e":
        return -_ONE if n == k else _ZERO
    if fam_a == "e" and fam_b == "f":
        return _ONE if n == k else _ZERO
    if fam_a == "h" and fam_b == "h":
        if k > n:
            return _ZERO
        return Fraction(-1, 3) * (2 + Fraction(-1, 2) ** (n - k)) * math.comb(n, k)
    return _ZERO


def pair_pbw(b_minus: PBWIndex, b_plus: PBWIndex) -> Fraction:
    """Pairing of dual-side PBW monomials.

    Nonzero exactly when the exponent patterns match level by level, and
    then equal to the sign-dressed product of factorials.
    """
    if (b_minus.side, b_plus.side) == ("F-", "E+"):
        signed = True
    elif (b_minus.side, b_plus.side) == ("E-", "F+"):
        signed = False
    else:
        raise PairingDomainError(
            f"sides {b_minus.side} and {b_plus.side} are not dual"
        )
    if b_minus.levels != b_plus.levels:
        return _ZERO
    cs = [c for (_a, _b, c) in b_minus.levels]
    cross = sum(cs[n] * cs[m] for n in range(len(cs)) for m in range(n + 1, len(cs)))
    val = _ONE if cross % 2 == 0 else -_ONE
    for (a, b, c) in b_minus.levels:
        val *= math.factorial(a) * math.factorial(b)
        if signed and c:
            val = -val
    return val


def _h_letters(word):
    return [l for l in word if l[0] == "h"]


def pair_mixed(f_minus, h_minus, e_minus, e_plus, h_plus, f_plus) -> Fraction:
    """Triangular factorisation of the pairing:

        <f- h- e-, e+ h+ f+>
            = (-1)^{p(e+) p(e-)} <f-, e+> <h-, h+> <e-, f+>.

    The h slots take a single generator (a letter tuple) or None; products
    of h's are not determined by the displayed closed forms and are
    refused.  PBW slots take a PBWIndex or None for the unit.
    """
    for h in (h_minus, h_plus):
        if h is not None and isinstance(h, tuple) and h and isinstance(h[0], tuple):
            raise UnsupportedPairingError(
                "unsupported: pairing of h-monomials of length >= 2 requires "
                "the coproduct of h"
            )
    # unit bookkeeping: <1, x> = counit(x) kills any nonempty slot
    def slot_pair(minus, plus, pair_fn):
        if minus is None and plus is None:
            return _ONE
        if minus is None or plus is None:
            return _ZERO
        return pair_fn(minus, plus)

    p_minus = 0 if e_minus is None else e_minus.parity()
    p_plus = 0 if e_plus is None else e_plus.parity()
    sign = -_ONE if p_minus and p_plus else _ONE
    fe = slot_pair(f_minus, e_plus, pair_pbw)
    if fe == 0:
        return _ZERO
    hh = slot_pair(h_minus, h_plus, pair_generators)
    if hh == 0:
        return _ZERO
    ef = slot_pair(e_minus, f_plus, pair_pbw)
    return sign * fe * hh * ef


# ---------------------------------------------------------------------------
# h-h generating function oracles
# ---------------------------------------------------------------------------

def hminus_hn_poly(n: int):
    """<h^-(u), h_n> as a polynomial in u (coefficients list, low to high),
    assembled from the mode values."""
    coeffs = [_ZERO] * (n + 1)
    for k in range(n + 1):
        coeffs[k] = -pair_generators(("h", -k - 1), ("h", n))
    return coeffs


def _poly_mul(p, q):
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_add(p, q):
    n = max(len(p), len(q))
    return [
        (p[i] if i < len(p) else _ZERO) + (q[i] if i < len(q) else _ZERO)
        for i in range(n)
    ]


def _poly_scale(p, c):
    return [c * a for a in p]


def _poly_pow(p, n):
    out = [_ONE]
    for _ in range(n):
        out = _poly_mul(out, p)
    return out


def hh_expansion_coefficient(k: int, n: int) -> Fraction:
    """Coefficient of u^k v^{-n-1} in the expansion of
    (u-v-1)(2u-2v+1) / ((u-v+1)(2u-2v-1)) for |u|, 1 << |v|.

    The region is chosen so that the extraction matches the mode pairing:
    <h^-(u), h^+(v)> = 1 - sum_{k,n} <h_{-k-1}, h_n> u^k v^{-n-1}.
    """
    # 1/(u - v + 1)   = -sum_m (u+1)^m v^{-m-1}
    # 1/(2u - 2v - 1) = -(1/2) sum_m (u-1/2)^m v^{-m-1}
    # numerator (u-v-1)(2u-2v+1) = 2v^2 - v(4u-1) + (u-1)(2u+1)
    half = Fraction(1, 2)
    terms = {}  # (k exponent of u, j exponent of v) -> coeff, j <= 1

    def add(ku, jv, c):
        if c:
            terms[(ku, jv)] = terms.get((ku, jv), _ZERO) + c

    # product of the two geometric series, truncated where it can matter
    for m1 in range(n + 3):
        p1 = _poly_pow([_ONE, _ONE], m1)  # (u+1)^m1
        for m2 in range(n + 3 - m1):
            p2 = _poly_pow([-half, _ONE], m2)  # (u-1/2)^m2
            prod = _poly_mul(p1, p2)
            c0 = half  # (-1) * (-1/2)
            jv = -(m1 + m2 + 2)
            for i, a in enumerate(prod):
                add(i, jv, c0 * a)
    out = _ZERO
    # multiply by the numerator and pick the u^k v^{-n-1} term
    for (ku, jv), c in terms.items():
        # 2 v^2 term
        if ku == k and jv + 2 == -n - 1:
            out += 2 * c
        # -v(4u - 1): -4 u v + v
        if ku + 1 == k and jv + 1 == -n - 1:
            out += -4 * c
        if ku == k and jv + 1 == -n - 1:
            out += c
        # (u-1)(2u+1) = 2u^2 - u - 1
        if ku + 2 == k and jv == -n - 1:
            out += 2 * c
        if ku + 1 == k and jv == -n - 1:
            out += -c
        if ku == k and jv == -n - 1:
            out += -c
    return out


def hh_series_check(max_order: int) -> bool:
    """Three independent oracles for the h-h pairing closed form:

    (a) the double series expansion of the rational generating function
        reproduces every mode value <h_{-k-1}, h_n> for n, k <= max_order;
    (b) the three-term recursion with its seeds annihilates the polynomials
        <h^-(u), h_n>;
    (c) the induction closed form matches those polynomials.
    """
    if max_order < 2:
        raise ValueError("max_order must be >= 2")
    for n in range(max_order + 1):
        for k in range(max_order + 1):
            expanded = hh_expansion_coefficient(k, n)
            mode = pair_generators(("h", -k - 1), ("h", n))
            if expanded != -mode:
                return False
    polys = [hminus_hn_poly(n) for n in range(max_order + 3)]
    if polys[0] != [_ONE] or polys[1] != [Fraction(1, 2), _ONE]:
        return False
    half = Fraction(1, 2)
    for n in range(max_order + 1):
        # p_{n+2} - (2u + 1/2) p_{n+1} + (u+1)(u-1/2) p_n = 0
        lhs = _poly_add(
            polys[n + 2],
            _poly_scale(_poly_mul([half, Fraction(2)], polys[n + 1]), -1),
        )
        lhs = _poly_add(lhs, _poly_mul(_poly_mul([_ONE, _ONE], [-half, _ONE]), polys[n]))
        if any(c != 0 for c in lhs):
            return False
        # closed form (1/3)(u-1/2)^{n+2} + (2/3)(u+1/2)(u+1)^{n+1} + (1/3)(u+1)^{n+1}
        third = Fraction(1, 3)
        closed = _poly_scale(_poly_pow([-half, _ONE], n + 2), third)
        closed = _poly_add(
            closed,
            _poly_scale(
                _poly_mul([half, _ONE], _poly_pow([_ONE, _ONE], n + 1)),
                Fraction(2, 3),
            ),
        )
        closed = _poly_add(closed, _poly_scale(_poly_pow([_ONE, _ONE], n + 1), third))
        m = max(len(closed), len(polys[n + 2]))
        a = closed + [_ZERO] * (m - len(closed))
        b = polys[n + 2] + [_ZERO] * (m - len(polys[n + 2]))
        if a != b:
            return False
    return True
