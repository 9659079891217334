import math
from fractions import Fraction as F

import pytest

from ospyang.currents import PBWIndex
from ospyang.scalars import rho
from ospyang.urmatrix import (
    RegionError,
    assemble_evaluated_r,
    dual_basis_consistency,
    evaluate_factor,
    evaluate_rh,
    expand_factor,
    factor_slot_closed_forms,
    factor_slot_coefficients,
    factor_tail_bound,
    rh_slot_value,
)

Z, W = F(1, 10), F(23, 10)


def test_expand_identity_term():
    fac = expand_factor("E", 0)
    assert fac.terms == {(PBWIndex("E+", ()), PBWIndex("F-", ())): F(1)}


def test_expand_displayed_coefficients():
    fac = expand_factor("E", 4)
    # coefficient of e0 (x) f_{-1} is -1 (the middle factor's minus sign)
    key = (PBWIndex("E+", ((0, 0, 1),)), PBWIndex("F-", ((0, 0, 1),)))
    assert fac.coefficient(*key) == -1
    # coefficient of e0^2 (x) F_{-1} is +1 (first exponential)
    key = (PBWIndex("E+", ((0, 1, 0),)), PBWIndex("F-", ((0, 1, 0),)))
    assert fac.coefficient(*key) == 1
    # coefficient of E_1 (x) f_{-1}^2 is +1 (second exponential)
    key = (PBWIndex("E+", ((1, 0, 0),)), PBWIndex("F-", ((1, 0, 0),)))
    assert fac.coefficient(*key) == 1


def test_expand_extension_property():
    small = expand_factor("E", 4)
    large = expand_factor("E", 6)
    for key, val in small.terms.items():
        assert large.terms[key] == val


def test_dual_basis_consistency_d6():
    assert dual_basis_consistency(6, "both")


def test_dual_basis_perturbed_fails():
    assert not dual_basis_consistency(3, "E", perturb=True)


def test_factor_closed_forms_match_display():
    d = Z - W
    cf = factor_slot_closed_forms("E", Z, W)
    assert cf[((1, 2), (2, 1))] == 1 / d
    assert cf[((2, 3), (3, 2))] == -1 / d
    assert cf[((1, 2), (3, 2))] == -1 / (d - F(1, 2))
    assert cf[((2, 3), (2, 1))] == 1 / (d + F(1, 2))
    assert cf[((1, 3), (3, 1))] == (4 * d + 3) / (d * (2 * d + 1))


def test_factor_partials_within_tail_bound():
    for side in ("E", "F"):
        cf = factor_slot_closed_forms(side, Z, W)
        for m in (20, 40, 60):
            pc = factor_slot_coefficients(side, Z, W, m)
            bound = factor_tail_bound(Z, W, m)
            for key in cf:
                assert abs(cf[key] - pc[key]) <= bound


def test_factor_partial_doubling_bound():
    m = 25
    a = factor_slot_coefficients("E", Z, W, m)
    b = factor_slot_coefficients("E", Z, W, 2 * m)
    bound = factor_tail_bound(Z, W, m)
    for key in a:
        assert abs(a[key] - b[key]) <= bound


def test_factor_mirror_structure():
    # single-generator slots of the F factor mirror the E factor's under
    # exchanging the tensor slots and z <-> w
    e_at_wz = factor_slot_closed_forms("E", Z, W)
    f_at = factor_slot_closed_forms("F", Z, W)
    d = Z - W

    def e_swapped(slot):
        # closed forms are rational in z - w only; swap flips the sign of d
        return {
            ((1, 2), (2, 1)): -1 / d,
            ((2, 3), (3, 2)): 1 / d,
            ((1, 2), (3, 2)): -1 / (-d - F(1, 2)),
            ((2, 3), (2, 1)): 1 / (-d + F(1, 2)),
        }[slot]

    assert f_at[((2, 1), (1, 2))] == e_swapped(((1, 2), (2, 1)))
    assert f_at[((3, 2), (2, 3))] == e_swapped(((2, 3), (3, 2)))
    assert f_at[((2, 1), (2, 3))] == e_swapped(((2, 3), (2, 1)))
    assert f_at[((3, 2), (1, 2))] == e_swapped(((1, 2), (3, 2)))
    # and the two corner coefficients agree at the same (z, w)
    assert f_at[((3, 1), (1, 3))] == e_at_wz[((1, 3), (3, 1))]


def test_region_error():
    with pytest.raises(RegionError):
        factor_slot_coefficients("E", F(3), F(1), 10)


def test_rh_output_diagonal_and_corner():
    diag, _tail = evaluate_rh(Z, W, 200)
    assert len(diag) == 9
    assert diag[0] == pytest.approx(rho(float(Z - W)), rel=1e-12)


def test_rh_cutoff_independence():
    v100, _ = rh_slot_value(2, 3, Z, W, 100)
    v200, _ = rh_slot_value(2, 3, Z, W, 200)
    assert abs(v100 - v200) < 1e-10


def test_rh_gamma_ladder_instance():
    # one ladder family: prod_{n>=0} prod_s H(a + 3n + s) telescopes into
    # Gamma ratios; the (1,1) slot against the gamma1-built rho is the
    # sharpest instance of that collapse
    v, _ = rh_slot_value(1, 1, Z, W, 50)
    assert v == pytest.approx(rho(float(Z - W)), rel=1e-11)


def test_rh_pole_error():
    from ospyang.urmatrix import RHPoleError

    with pytest.raises(RHPoleError):
        # z - w integer makes a ladder rung vanish
        rh_slot_value(1, 1, F(1), F(3), 10)


def test_assembly_default_point():
    rep = assemble_evaluated_r(Z, W, 60, 200)
    assert rep["pass"] and rep["max_abs_error"] < 1e-8
    assert rep["slot_order"] == "plus_first"


def test_assembly_pure_normalization_slot():
    # corner entry of the assembled matrix isolates rho(z - w): the E and F
    # factors are the identity on that slot
    me = evaluate_factor("E", Z, W, 60).to_float()
    mf = evaluate_factor("F", Z, W, 60).to_float()
    diag, _ = evaluate_rh(Z, W, 200)
    assert me[0][0] == 1.0 and mf[0][0] == 1.0
    assert diag[0] == pytest.approx(rho(float(Z - W)), rel=1e-12)


def test_assembly_forced_wrong_slot_order_fails():
    rep = assemble_evaluated_r(Z, W, 40, 100, slot_order="minus_first")
    assert not rep["pass"]
