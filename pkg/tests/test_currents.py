import itertools
import random
from fractions import Fraction as F

import pytest

from ospyang.currents import (
    Element,
    PBWIndex,
    UnorderableError,
    WindowError,
    acom_ee,
    acom_ff,
    anticommutator,
    block_separate,
    com_he,
    com_hf,
    commutator,
    default_serre_window,
    dy_serre_coefficient,
    expand_element,
    graded_limit_check,
    normal_order_by_steps,
    normal_order_plus,
    pbw_enumerate,
    rewrite_step,
    serre_mode_check,
    serre_relation,
    serre_relation_check,
    word_degree,
    word_parity,
)

E = Element


def test_rewrite_step_examples():
    # f0 e5 -> -e5 f0 + h5
    r = rewrite_step((("f", 0), ("e", 5)), 0)
    assert r == E({(("e", 5), ("f", 0)): F(-1), (("h", 5),): F(1)})
    # h0 e3 -> e3 h0 + e3
    r = rewrite_step((("h", 0), ("e", 3)), 0)
    assert r == E({(("e", 3), ("h", 0)): F(1), (("e", 3),): F(1)})
    # h1 e0 -> e0 h1 + e0 h0 + e1 + e0/2  (after cascading the h0 base case)
    r = rewrite_step((("h", 1), ("e", 0)), 0)
    assert r == E(
        {
            (("e", 0), ("h", 1)): 1,
            (("e", 0), ("h", 0)): 1,
            (("e", 1),): 1,
            (("e", 0),): F(1, 2),
        }
    )


def test_rewrite_step_requires_inversion():
    with pytest.raises(ValueError):
        rewrite_step((("e", 0), ("h", 1)), 0)


def test_negative_h_unorderable():
    with pytest.raises(UnorderableError):
        rewrite_step((("h", -1), ("e", 2)), 0)
    with pytest.raises(UnorderableError):
        normal_order_plus(E.word((("h", -1), ("e", 2))))


def test_normal_order_examples():
    x = E.gen("h", 0) * E.gen("e", 3)
    assert normal_order_plus(x) == E(
        {(("e", 3), ("h", 0)): 1, (("e", 3),): 1}
    )


def test_normal_order_idempotent():
    x = E.word((("e", 1), ("f", 0), ("h", 2), ("e", 0)))
    nf = normal_order_plus(x)
    assert normal_order_plus(nf) == nf


def test_serre_combination_normal_form():
    # [{e0, e1}, e0] - 2 e0^3 is in the defining ideal: normal form 0
    x = commutator(
        anticommutator(E.gen("e", 0), E.gen("e", 1)), E.gen("e", 0)
    ) - (E.gen("e", 0) * E.gen("e", 0) * E.gen("e", 0)).scale(2)
    assert not normal_order_plus(x)


def test_parity_conservation():
    x = E.word((("e", 1), ("f", 0), ("e", 2)))
    nf = normal_order_plus(x)
    assert all(word_parity(w) == 1 for w in nf.terms)


def test_filtration_compatibility():
    x = E.word((("h", 2), ("e", 1)))
    nf = normal_order_plus(x)
    assert nf.degree() <= 3
    # top part of [h2, e1] is e3
    assert com_he(2, 1).top_part() == E.gen("e", 3)


def test_acom_closed_forms_match_reducer():
    for (m, n) in [(1, 0), (2, 0), (3, 1), (4, 2)]:
        w = E.word((("e", m), ("e", n))) + E.word((("e", n), ("e", m)))
        assert normal_order_plus(w) == acom_ee(m, n)
        w = E.word((("f", m), ("f", n))) + E.word((("f", n), ("f", m)))
        assert normal_order_plus(w) == acom_ff(m, n)


def test_abbreviation_coherence():
    # expanding E_{2k+1} and normal ordering returns the E letter
    for k in (0, 1, 2):
        assert normal_order_plus(expand_element(E.gen("E", 2 * k + 1))) == E.gen(
            "E", 2 * k + 1
        )
        assert normal_order_plus(expand_element(E.gen("F", 2 * k + 1))) == E.gen(
            "F", 2 * k + 1
        )


def test_confluence_random_strategies():
    src = random.Random(5)
    fams = ["e", "f", "h"]
    for trial in range(12):
        length = src.randint(2, 5)
        word = tuple((src.choice(fams), src.randint(0, 3)) for _ in range(length))
        x = E.word(word)
        a = normal_order_by_steps(x, rng=random.Random(100 + trial))
        b = normal_order_by_steps(x, rng=random.Random(200 + trial))
        c = normal_order_by_steps(x)
        nf = normal_order_plus(x)
        assert a == b == c == nf, word


def test_block_separation_shape():
    x = E.word((("f", 1), ("h", 0), ("e", 2)))
    sep = block_separate(x)
    for w in sep.terms:
        blocks = [0 if f == "e" else (1 if f == "h" else 2) for f, _m in w]
        assert blocks == sorted(blocks)


# --- PBW enumeration ---------------------------------------------------------

def test_pbw_enumerate_example():
    words = {b.word() for b in pbw_enumerate("E+", 2, 1)}
    expected = {
        (),
        (("e", 0),),
        (("e", 1),),
        (("E", 1),),
        (("e", 0), ("e", 0)),
        (("e", 0), ("e", 1)),
        (("e", 0), ("E", 1)),
        (("e", 1), ("e", 1)),
        (("E", 1), ("e", 1)),
        (("E", 1), ("E", 1)),
    }
    assert words == expected


def test_pbw_enumerate_f_minus_shape():
    words = [b.word() for b in pbw_enumerate("F-", 2, 1) if b.levels]
    # level-0 letters are F_{-1} (before) and f_{-1}
    assert (("F", -1),) in words
    assert (("F", -1), ("f", -1)) in words
    assert (("f", -1), ("F", -1)) not in words


def test_pbw_count_against_brute_force():
    # independent enumeration of exponent tuples, letter count <= 4, mode <= 2
    count = 0
    # letters: e0, e1, e2 (mode <= 2) and E1 (label 1 <= 2); levels 0 and 1
    # exponents: e0^x0 E1^y0 e1^x1 e2^x2 with letter count x0+y0+x1+x2 <= 4
    for x0 in range(5):
        for y0 in range(5):
            for x1 in range(5):
                for x2 in range(5):
                    if x0 + y0 + x1 + x2 <= 4:
                        count += 1
    assert len(pbw_enumerate("E+", 4, 2)) == count


def test_pbw_index_validation():
    with pytest.raises(ValueError):
        PBWIndex("E+", ((0, 0, 2),))
    with pytest.raises(ValueError):
        PBWIndex("X", ((0, 0, 1),))
    with pytest.raises(ValueError):
        PBWIndex("E+", ((0, 0, 1), (0, 0, 0)))


def test_pbw_degree_and_parity():
    b = PBWIndex("E+", ((1, 1, 1),))  # e0^3 E1^1
    assert b.word() == (("e", 0),) * 3 + (("E", 1),)
    assert b.degree() == 1
    assert b.parity() == 1
    assert b.partner().side == "F-"


# --- Serre ideal membership --------------------------------------------------

def test_serre_k0_both_families():
    assert serre_mode_check("e", 0)
    assert serre_mode_check("f", 0)


def test_serre_negative_control():
    assert not serre_relation_check("e", 0, 1, flip_rhs=True)
    assert not serre_relation_check("f", 0, 1, flip_rhs=True)


def test_serre_window_too_small():
    with pytest.raises(WindowError):
        serre_relation_check("e", 2, 3, window=(3, 8))


def test_serre_relation_shapes():
    # relation 1 at k=0 equals the u^{-2} coefficient combination
    rel = serre_relation("e", 0, 1)
    assert rel.degree() == 1
    assert rel.parity() == 1


def test_graded_limit_small():
    assert graded_limit_check(max_mode=2, cubic_max_mode=1)


# --- double Serre extraction --------------------------------------------------

def test_dy_boundary_refused():
    with pytest.raises(ValueError):
        dy_serre_coefficient("e", "+", -1)


def test_dy_coefficient_plus_branch_vanishes_in_rep():
    from ospyang.evalrep import EvalPoint, pi_element

    pt = EvalPoint(F(3, 2))
    for fam in ("e", "f"):
        for p in (-2, -3, -4):
            rel = dy_serre_coefficient(fam, "+", p)
            assert rel  # nonempty extraction
            assert pi_element(pt, rel).is_zero()


def test_dy_coefficient_minus_branch():
    from ospyang.evalrep import EvalPoint, pi_element

    pt = EvalPoint(F(3, 2))
    rel = dy_serre_coefficient("e", "-", 2)
    assert rel
    assert pi_element(pt, rel).is_zero()
