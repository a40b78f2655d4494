import pytest

from towerdecomp.matryoshka import (
    EQUAL,
    HIGHER,
    LOWER,
    compare_order,
    head_data,
    indicator,
    is_simple,
    mono_le,
    order_key,
    project,
)


def test_projections_of_running_example(tower_li):
    T = tower_li
    x, t1, t2, t3 = T.gens
    f = 1 / (t1 * t2) + (t2 - 2 * x * t1) / t1**2 + t3
    proj = project(T.element(f))
    assert proj[0].value == t3
    assert proj[1].value == (t2 - 2 * x * t1) / t1**2
    assert proj[2].value == 1 / (t1 * t2)
    assert not proj[3]
    assert sum(p.value for p in proj) == f


def test_projection_of_polynomial_part(tower_li):
    T = tower_li
    x, t1, t2, t3 = T.gens
    f = x * t2 + 1 / x + t2 / t1
    proj = project(T.element(f))
    assert proj[0].value == x * t2 + 1 / x
    assert proj[1].value == t2 / t1


def test_head_data(tower_li):
    T = tower_li
    x, t1, t2, t3 = T.gens
    f = 1 / (t1 * t2) + (t2 - 2 * x * t1) / t1**2 + t3
    hd = head_data(T.element(f))
    assert hd.hm == (0, 0, 1)
    assert hd.hc == 1
    assert hd.index_set == frozenset({0})
    # two projections sharing the head monomial add their coefficients
    g = t2 / x + t2 / t1
    hd2 = head_data(T.element(g))
    assert hd2.hm == (0, 1, 0)
    assert hd2.index_set == frozenset({0, 1})
    assert hd2.hc == 1 / x + 1 / t1


def test_monomial_order_reversed_lex():
    assert mono_le((3, 0, 0), (0, 1, 0))
    assert mono_le((0, 5, 0), (0, 0, 1))
    assert not mono_le((0, 0, 1), (4, 2, 0))
    assert mono_le(None, (0, 0, 0))


def test_indicator():
    assert indicator((0, 2, 1), 3) == 2
    assert indicator((1, 0, 0), 3) == 1
    assert indicator((0, 0, 0), 3) == 3


def test_order_key_and_compare(tower_li):
    T = tower_li
    x, t1, t2, t3 = T.gens
    f = T.element(t3**2)
    g = T.element(t3)
    assert order_key(f) > order_key(g)
    assert compare_order(g, f) == LOWER
    assert compare_order(f, g) == HIGHER
    assert compare_order(f, f) == EQUAL
    # the denominator degree counts powers of the top generator only
    assert order_key(T.element(1 / t3)).den_degree == 1
    assert order_key(T.element(1 / (t1 * t2))).den_degree == 0


def test_is_simple(tower_li):
    T = tower_li
    x, t1, t2, t3 = T.gens
    assert is_simple(T.element(1 / (t1 * t2)))
    assert is_simple(T.element(0))
    assert not is_simple(T.element(t3))  # projection 0 not proper
    assert not is_simple(T.element(1 / t1**2))  # denominator not squarefree


def test_simple_rejects_higher_generator_in_projection(tower_li):
    T = tower_li
    x, t1, t2, t3 = T.gens
    # t2/t1 sits in projection 1 with a higher-generator numerator
    assert not is_simple(T.element(t2 / t1))
