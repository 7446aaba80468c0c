import pytest
from hypothesis import given, settings, strategies as st

import sandpiles as sp


# ----------------------------------------------------------------------
# spanning-tree closed forms
# ----------------------------------------------------------------------

def test_geometric_sum():
    assert sp.geometric_sum(2, 4) == 15
    assert sp.geometric_sum(3, 3) == 13
    assert sp.geometric_sum(1, 5) == 5
    assert sp.geometric_sum(2, 0) == 0


def test_root_subgroup_order_frozen():
    assert sp.root_subgroup_order(3, 4) == 15
    assert sp.root_subgroup_order(3, 2) == 3
    assert sp.root_subgroup_order(4, 3) == 13
    with pytest.raises(ValueError):
        sp.root_subgroup_order(3, 1)


def test_product_formula_frozen():
    assert sp.spanning_tree_product(3, 2) == 3
    assert sp.spanning_tree_product(3, 4) == 945
    assert sp.spanning_tree_product(4, 3) == 208


def test_recurrence_frozen():
    assert sp.spanning_tree_recurrence(3, 4, 21, 3) == 945
    assert sp.spanning_tree_recurrence(3, 5, 945, 21) == 945 * 1953
    with pytest.raises(ValueError):
        sp.spanning_tree_recurrence(3, 3, 21, 3)


def test_path_form_frozen():
    counts = {1: 1, 2: 3, 3: 21}
    assert sp.spanning_tree_path_form(3, 4, counts) == 441 + 8 * 63
    with pytest.raises(ValueError):
        sp.spanning_tree_path_form(3, 4, {2: 3, 3: 21})  # missing height 1


def test_three_routes_agree_small():
    for d in (3, 4, 5):
        dets = {}
        for n in range(2, 6):
            g = sp.build_wired_regular_tree(d, n)
            dets[n] = sp.spanning_tree_count(g)
            assert sp.spanning_tree_product(d, n) == dets[n]
            if n >= 4:
                assert sp.spanning_tree_recurrence(
                    d, n, dets[n - 1], dets[n - 2]) == dets[n]


def test_path_form_matches_determinant():
    counts = {1: 1}
    for n in range(2, 6):
        counts[n] = sp.spanning_tree_count(sp.build_wired_regular_tree(3, n))
    for n in (4, 5):
        assert sp.spanning_tree_path_form(3, n, counts) == counts[n]


# ----------------------------------------------------------------------
# group decompositions
# ----------------------------------------------------------------------

def test_theorem_decomposition_frozen():
    assert sp.theorem_decomposition(3, 4).summands.summands == \
        ((3, 2), (7, 1), (15, 1))
    assert sp.theorem_decomposition(3, 2).summands.summands == ((3, 1),)
    assert sp.theorem_decomposition(4, 4).summands.summands == \
        ((4, 6), (13, 2), (40, 1))


def test_theorem_decomposition_order():
    for d in (3, 4, 5):
        for n in range(2, 7):
            dec = sp.theorem_decomposition(d, n)
            assert dec.order() == sp.spanning_tree_product(d, n)


def test_ball_quotient_frozen():
    assert sp.ball_quotient_decomposition(3, 2).summands == ((7, 2), (3, 3))
    assert sp.ball_quotient_decomposition(3, 1).summands == ((3, 2),)


def test_ball_order_consistency():
    for d, n in ((3, 1), (3, 2), (4, 1), (4, 2)):
        g = sp.build_wired_ball(d, n)
        order = (sp.ball_root_subgroup_order(d, n)
                 * sp.ball_quotient_decomposition(d, n).order())
        assert order == sp.spanning_tree_count(g)


def test_ball_root_subgroup_is_root_order():
    # d(d-1)^n equals the order of the root generator, computed by firing
    for d, n in ((3, 1), (3, 2), (4, 1)):
        g = sp.build_wired_ball(d, n)
        r_hat = sp.recurrent_rep(sp.ChipConfig.unit(g, 0))
        assert sp.element_order(r_hat) == sp.ball_root_subgroup_order(d, n)


# ----------------------------------------------------------------------
# Sylow data
# ----------------------------------------------------------------------

def test_multiplicative_order():
    assert sp.multiplicative_order(2, 7) == 3
    assert sp.multiplicative_order(2, 5) == 4
    assert sp.multiplicative_order(3, 13) == 3


def test_modulus_period_frozen():
    assert sp.modulus_period(3, 7) == 3
    assert sp.modulus_period(3, 5) == 4
    assert sp.modulus_period(5, 3) == 3  # a = 4 = 1 mod 3, period is p
    with pytest.raises(ValueError):
        sp.modulus_period(3, 6)  # not prime
    with pytest.raises(ValueError):
        sp.modulus_period(3, 3)  # divides d(d-1)


def test_modulus_period_is_least():
    for d, p in ((3, 7), (3, 5), (3, 13), (4, 5), (5, 3), (5, 7)):
        t = sp.modulus_period(d, p)
        assert sp.geometric_sum(d - 1, t) % p == 0
        for k in range(1, t):
            assert sp.geometric_sum(d - 1, k) % p != 0


def test_sylow_rank_formula_frozen():
    assert sp.sylow_rank_ball_formula(3, 2, 7) == 2
    assert sp.sylow_rank_ball_formula(3, 3, 5) == 2
    assert sp.sylow_rank_ball_formula(3, 3, 7) == 3
    with pytest.raises(ValueError):
        sp.sylow_rank_ball_formula(4, 2, 3)  # 3 divides d(d-1)


# ----------------------------------------------------------------------
# level vectors in recurrent form
# ----------------------------------------------------------------------

def test_recurrent_form():
    assert sp.is_recurrent_form((2, 0, 2), 3)
    assert sp.is_recurrent_form((2, 2, 2), 3)
    assert not sp.is_recurrent_form((0, 0, 2), 3)  # zero without full prefix
    assert not sp.is_recurrent_form((1, 0, 2), 3)
    assert not sp.is_recurrent_form((2, 3, 2), 3)  # entry out of range


def test_lex_successor_frozen_steps():
    assert sp.lex_successor((2, 0, 2), 3) == (0, 1, 2)
    assert sp.lex_successor((2, 2, 2), 3) == (2, 2, 0)
    assert sp.lex_successor((2, 2, 1), 3) == (2, 0, 2)
    with pytest.raises(ValueError):
        sp.lex_successor((1, 0, 2), 3)


def test_lex_successor_cycles_through_all_forms():
    for d, length in ((3, 2), (3, 3), (4, 2)):
        start = (d - 1,) * length
        seen = {start}
        vec = sp.lex_successor(start, d)
        while vec != start:
            assert sp.is_recurrent_form(vec, d)
            seen.add(vec)
            vec = sp.lex_successor(vec, d)
        assert len(seen) == sp.root_subgroup_order(d, length + 1)


@settings(max_examples=100)
@given(st.integers(min_value=3, max_value=5),
       st.integers(min_value=2, max_value=6))
def test_root_subgroup_order_divides_group_order(d, n):
    assert sp.spanning_tree_product(d, n) % sp.root_subgroup_order(d, n) == 0
