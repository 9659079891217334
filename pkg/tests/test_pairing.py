from fractions import Fraction as F

import pytest

from ospyang.currents import PBWIndex, pbw_enumerate
from ospyang.pairing import (
    PairingDomainError,
    UnsupportedPairingError,
    hh_expansion_coefficient,
    hh_series_check,
    hminus_hn_poly,
    pair_generators,
    pair_mixed,
    pair_pbw,
)


def test_generator_values():
    assert pair_generators(("f", -1), ("e", 0)) == -1
    assert pair_generators(("e", -1), ("f", 0)) == 1
    assert pair_generators(("h", -1), ("h", 0)) == -1
    assert pair_generators(("h", -1), ("h", 1)) == F(-1, 2)
    assert pair_generators(("h", -2), ("h", 0)) == 0
    assert pair_generators(("f", -2), ("e", 0)) == 0
    assert pair_generators(("f", -1), ("f", 0)) == 0  # cross family


def test_generator_domain():
    with pytest.raises(PairingDomainError):
        pair_generators(("e", 0), ("f", 0))
    with pytest.raises(PairingDomainError):
        pair_generators(("e", -1), ("f", -1))


def test_antisymmetry_structure():
    for n in range(13):
        for k in range(13):
            assert pair_generators(("e", -k - 1), ("f", n)) == -pair_generators(
                ("f", -k - 1), ("e", n)
            )


def test_pbw_paper_values():
    # <F_{-1}, e0^2> = 1
    assert pair_pbw(PBWIndex("F-", ((0, 1, 0),)), PBWIndex("E+", ((0, 1, 0),))) == 1
    # <f_{-1}^2, E_1> = 1
    assert pair_pbw(PBWIndex("F-", ((1, 0, 0),)), PBWIndex("E+", ((1, 0, 0),))) == 1
    # <F_{-1}^2, e0^4> = 2
    assert pair_pbw(PBWIndex("F-", ((0, 2, 0),)), PBWIndex("E+", ((0, 2, 0),))) == 2
    # <f_{-1}, e0> = -1 (c = 1 sign case)
    assert pair_pbw(PBWIndex("F-", ((0, 0, 1),)), PBWIndex("E+", ((0, 0, 1),))) == -1
    # F side carries no per-level sign: <e_{-1}^2, F_1> = 1, <e_{-1}, f_0> = +1
    assert pair_pbw(PBWIndex("E-", ((1, 0, 0),)), PBWIndex("F+", ((1, 0, 0),))) == 1
    assert pair_pbw(PBWIndex("E-", ((0, 0, 1),)), PBWIndex("F+", ((0, 0, 1),))) == 1


def test_pbw_degenerate_matches_generators():
    # a = b = 0, c = 1 at level k reduces to <f_{-k-1}, e_k> = -1
    for k in range(4):
        levels = tuple((0, 0, 0) for _ in range(k)) + ((0, 0, 1),)
        assert pair_pbw(PBWIndex("F-", levels), PBWIndex("E+", levels)) == -1


def test_pbw_cross_sign():
    # two odd levels: (-1)^{c0 c1} on top of the per-level signs
    levels = ((0, 0, 1), (0, 0, 1))
    val = pair_pbw(PBWIndex("F-", levels), PBWIndex("E+", levels))
    assert val == -(-1) * (-1) * 1  # cross factor -1, two (-1)^c factors
    assert val == -1


def test_pbw_mismatch_is_zero():
    a = PBWIndex("F-", ((1, 0, 0),))
    b = PBWIndex("E+", ((0, 1, 0),))
    assert pair_pbw(a, b) == 0


def test_pbw_wrong_sides():
    with pytest.raises(PairingDomainError):
        pair_pbw(PBWIndex("E+", ((0, 0, 1),)), PBWIndex("F-", ((0, 0, 1),)))


def test_duality_diagonality_sweep():
    # nonzero exactly on matching patterns, with the factorial-sign value
    import math

    for b_plus in pbw_enumerate("E+", 6, 4):
        partner = b_plus.partner()
        val = pair_pbw(partner, b_plus)
        assert val != 0
        expect = 1
        cs = [c for (_a, _b, c) in b_plus.levels]
        cross = sum(cs[i] * cs[j] for i in range(len(cs)) for j in range(i + 1, len(cs)))
        if cross % 2:
            expect = -expect
        for (a, b, c) in b_plus.levels:
            expect *= math.factorial(a) * math.factorial(b)
            if c:
                expect = -expect
        assert val == expect


def test_pair_mixed():
    fm = PBWIndex("F-", ((0, 0, 1),))
    em = PBWIndex("E-", ((0, 0, 1),))
    ep = PBWIndex("E+", ((0, 0, 1),))
    fp = PBWIndex("F+", ((0, 0, 1),))
    assert pair_mixed(fm, ("h", -1), em, ep, ("h", 0), fp) == -1
    assert pair_mixed(None, None, None, None, None, None) == 1
    assert pair_mixed(None, ("h", -1), None, None, ("h", 0), None) == -1
    # counit kills unbalanced slots
    assert pair_mixed(fm, None, None, None, None, None) == 0


def test_pair_mixed_multi_h_unsupported():
    fm = PBWIndex("F-", ((0, 0, 1),))
    ep = PBWIndex("E+", ((0, 0, 1),))
    with pytest.raises(UnsupportedPairingError):
        pair_mixed(fm, (("h", -1), ("h", -2)), None, ep, None, None)


def test_hh_series_check():
    assert hh_series_check(12)


def test_hh_expansion_single_values():
    # n = k = 0 coefficient reproduces <h_{-1}, h_0> = -1
    assert hh_expansion_coefficient(0, 0) == 1  # equals -<h_{-1},h_0>
    assert hh_expansion_coefficient(1, 1) == -pair_generators(("h", -2), ("h", 1))


def test_hminus_polynomials():
    assert hminus_hn_poly(0) == [F(1)]
    assert hminus_hn_poly(1) == [F(1, 2), F(1)]
    # closed form at n = 3, u = 2 equals the recursion value
    p3 = hminus_hn_poly(3)
    val = sum(c * F(2) ** i for i, c in enumerate(p3))
    third = F(1, 3)
    u = F(2)
    closed = third * (u - F(1, 2)) ** 3 + F(2, 3) * (u + F(1, 2)) * (u + 1) ** 2 + third * (u + 1) ** 2
    assert val == closed
