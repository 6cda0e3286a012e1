import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from triposkit.basecat import (FINSET, FinMap, FinObj, SizeGuard, TypeMismatch, bang,
                               chosen_product, compose, diagonal, fin_map, homs, identity,
                               pairing, product_map, terminal)


def maps(max_size=3):
    return st.integers(0, max_size).flatmap(
        lambda n: st.integers(1, max_size).flatmap(
            lambda m: st.lists(st.integers(0, m - 1), min_size=n, max_size=n).map(
                lambda t: fin_map(n, m, t))))


def test_identity_and_swap():
    f = fin_map(2, 3, [2, 0])
    assert compose(identity(FinObj(3)), f) == f
    swap = fin_map(2, 2, [1, 0])
    assert compose(swap, swap) == identity(FinObj(2))


@settings(max_examples=60, deadline=None)
@given(maps(), st.data())
def test_compose_matches_table_lookup(f, data):
    m = f.cod.size
    k = data.draw(st.integers(1, 3))
    g = fin_map(m, k, data.draw(st.lists(st.integers(0, k - 1), min_size=m, max_size=m)))
    gf = compose(g, f)
    assert gf.tolist() == [g(f(i)) for i in range(f.dom.size)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(1, 3), st.integers(1, 3), st.data())
def test_product_laws(n, a, b, data):
    f = fin_map(n, a, data.draw(st.lists(st.integers(0, a - 1), min_size=n, max_size=n)))
    g = fin_map(n, b, data.draw(st.lists(st.integers(0, b - 1), min_size=n, max_size=n)))
    XY, p1, p2 = chosen_product(f.cod, g.cod)
    h = pairing(f, g)
    assert compose(p1, h) == f and compose(p2, h) == g
    assert pairing(compose(p1, h), compose(p2, h)) == h


def test_small_facts():
    assert chosen_product(FinObj(2), FinObj(3))[0].size == 6
    assert diagonal(FinObj(2)).tolist() == [0, 3]
    assert terminal().size == 1 and bang(FinObj(3)).tolist() == [0, 0, 0]
    f, g = fin_map(2, 2, [1, 0]), fin_map(1, 2, [1])
    # (i, 0) |-> (f i, 1) at index 2 f(i) + 1
    assert product_map(f, g).tolist() == [3, 1]


def test_errors():
    with pytest.raises(TypeMismatch):
        fin_map(2, 2, [0, 2])
    with pytest.raises(TypeMismatch):
        compose(fin_map(2, 2, [0, 1]), fin_map(1, 3, [0]))
    with pytest.raises(SizeGuard):
        list(homs(FinObj(10), FinObj(10), guard=1000))


def test_homs_enumeration():
    hs = list(homs(FinObj(2), FinObj(3)))
    assert len(hs) == 9 and len(set(hs)) == 9
    assert FINSET.objects(2) == [FinObj(0), FinObj(1), FinObj(2)]


def test_labels_ignored_by_equality():
    assert FinObj(2, ("a", "b")) == FinObj(2)
    assert fin_map(FinObj(1, ("x",)), 2, [1]) == fin_map(1, 2, [1])
