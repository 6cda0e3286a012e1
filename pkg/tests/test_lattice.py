import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from triposkit.lattice import (NotALattice, booleans, builtin, chain, check_heyting_laws,
                               diagonal_map, dump_locale, from_order, is_join_hom, is_meet_hom,
                               join_map, load_locale, meet_map, product, three_chain, trivial,
                               vee, with_imp)


def brute_imp(H, a, b):
    cands = [c for c in range(H.size) if H.leq[H.meet[c, a], b]]
    return next(c for c in cands if all(H.leq[d, c] for d in cands))


def test_booleans_implication():
    B = booleans()
    assert B.imp[1, 0] == 0
    assert all(B.imp[0, x] == 1 for x in range(2))


def test_three_chain_implication():
    H = three_chain()
    h, z, one = H.index("h"), H.index("0"), H.index("1")
    assert H.imp[h, z] == z
    assert H.imp[one, h] == h


@pytest.mark.parametrize("H", [booleans(), three_chain(), vee(), product(booleans(), booleans())])
def test_implication_matches_brute_force(H):
    for a, b in itertools.product(range(H.size), repeat=2):
        assert H.imp[a, b] == brute_imp(H, a, b)


def test_antichain_is_not_a_lattice():
    with pytest.raises(NotALattice):
        from_order(["a", "b"], [[True, False], [False, True]])


def test_products():
    B = booleans()
    BB = product(B, B)
    assert BB.size == 4 and BB.top == 3
    assert product(B, three_chain()).size == 6
    P = product(three_chain(), trivial())
    assert P.size == 3
    assert np.array_equal(P.leq, three_chain().leq)


@pytest.mark.parametrize("H", [booleans(), three_chain(), vee(), chain(4)])
def test_heyting_laws_pass(H):
    assert check_heyting_laws(H).ok


def test_corrupted_implication_fails_residuation():
    H = three_chain()
    h, z = H.index("h"), H.index("0")
    imp = np.array(H.imp)
    imp[h, z] = h
    rep = check_heyting_laws(with_imp(H, imp))
    bad = {e.check_id: e.witness for e in rep.failures()}
    assert "residuation" in bad
    assert bad["residuation"] == "fails at (h,h,0)"


def test_meet_and_join_homs():
    B = booleans()
    assert is_meet_hom(diagonal_map(B)) and is_join_hom(diagonal_map(B))
    assert is_meet_hom(meet_map(B))
    assert not is_meet_hom(join_map(B))


def test_locale_roundtrip(tmp_path):
    V = vee()
    p = tmp_path / "v.json"
    p.write_text(dump_locale(V))
    W = load_locale(str(p))
    assert W.elems == V.elems and np.array_equal(W.imp, V.imp)
    assert load_locale({"elements": ["0", "1"], "leq": [[True, True], [False, True]]}).size == 2
    assert builtin("chain3").size == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.data())
def test_random_chains_and_products(n, data):
    H = chain(n)
    a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert H.leq[H.meet[c, a], b] == H.leq[c, H.imp[a, b]]
    P = product(H, booleans())
    i, j = data.draw(st.integers(0, P.size - 1)), data.draw(st.integers(0, P.size - 1))
    assert P.meet[i, j] == H.meet[i // 2, j // 2] * 2 + min(i % 2, j % 2)
