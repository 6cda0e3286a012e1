import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from triposkit.basecat import FINSET, FinObj, fin_map
from triposkit.hol.semantics import Interpretation
from triposkit.hol.syntax import And, Base, Exists, Judgment, Rel, Top, Var
from triposkit.hol.typing import Signature
from triposkit.lattice import booleans, diagonal_map, join_map, meet_map, product, three_chain
from triposkit.tripos import (FamPredicate, FamTripos, FragmentViolation, NotMeetHom,
                              check_adjunctions, check_beck_chevalley,
                              check_judgment_preservation, check_power_object,
                              check_tripos_morphism, fam_morphism, identity_morphism,
                              is_regular_morphism, tripos_law_suite)


class SwappedQuantifiers(FamTripos):
    """A mutant with exists and forall exchanged."""

    def exists_along(self, f, phi):
        return FamTripos.forall_along(self, f, phi)

    def forall_along(self, f, phi):
        return FamTripos.exists_along(self, f, phi)


def oracle_exists(A, f, phi):
    out = [A.bot] * f.cod.size
    for i in range(f.dom.size):
        out[f(i)] = int(A.join[out[f(i)], phi.values[i]])
    return out


def oracle_forall(A, f, phi):
    out = [A.top] * f.cod.size
    for i in range(f.dom.size):
        out[f(i)] = int(A.meet[out[f(i)], phi.values[i]])
    return out


def test_quantifiers_three_chain(T3, C3):
    f = fin_map(2, 1, [0, 0])
    phi = T3.pred(2, ["h", "0"])
    assert T3.exists_along(f, phi).tolist() == [C3.index("h")]
    assert T3.forall_along(f, phi).tolist() == [C3.index("0")]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 3), st.integers(1, 3), st.data())
def test_quantifiers_match_fiberwise_oracle(n, m, data):
    A = three_chain()
    T = FamTripos(A)
    f = fin_map(n, m, data.draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n)))
    phi = FamPredicate(FinObj(n), data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n)))
    assert T.exists_along(f, phi).tolist() == oracle_exists(A, f, phi)
    assert T.forall_along(f, phi).tolist() == oracle_forall(A, f, phi)


def test_eq_and_power(TB, T3):
    assert TB.eq(FinObj(2)).tolist() == [1, 0, 0, 1]
    P1, mem = T3.power(FinObj(1))
    assert P1.size == 3 and mem.tolist() == [0, 1, 2]


def test_adjunctions_exhaustive_small(TB, T3):
    for X, Y in itertools.product(FINSET.objects(2), repeat=2):
        for f in FINSET.homs(X, Y):
            assert check_adjunctions(TB, f).ok
    assert check_adjunctions(T3, FINSET.diagonal(FinObj(2))).ok


def test_mutant_fails_with_witness():
    T = SwappedQuantifiers(booleans())
    rep = check_adjunctions(T, fin_map(2, 1, [0, 0]))
    assert not rep.ok
    assert all(e.witness for e in rep.failures())


def test_beck_chevalley_identity(T3):
    f = fin_map(2, 1, [0, 0])
    g = FINSET.identity(FinObj(2))
    for phi in T3.enumerate_preds(FinObj(2)):
        assert check_beck_chevalley(T3, f, g, phi)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_beck_chevalley_random_three_chain(data):
    T = FamTripos(three_chain())
    sizes = [data.draw(st.integers(0, 3)) for _ in range(4)]
    a, b, x, y = sizes
    b, y = max(b, 1), max(y, 1)
    f = fin_map(a, b, data.draw(st.lists(st.integers(0, b - 1), min_size=a, max_size=a)))
    g = fin_map(x, y, data.draw(st.lists(st.integers(0, y - 1), min_size=x, max_size=x)))
    n = b * x
    phi = FamPredicate(FinObj(n), data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n)))
    assert check_beck_chevalley(T, f, g, phi)


def test_power_object(TB, T3):
    two = FinObj(2)
    for phi in TB.enumerate_preds(FinObj(4)):
        assert check_power_object(TB, two, two, phi)
    top = TB.top(FinObj(4))
    assert TB.chi(two, two, top).tolist() == [3, 3]
    for phi in T3.enumerate_preds(two):
        assert check_power_object(T3, two, FinObj(1), phi)


@pytest.mark.parametrize("A", [booleans(), three_chain()])
def test_tripos_law_suite(A):
    assert tripos_law_suite(FamTripos(A), 2).ok


def test_fam_morphisms(B):
    TB, TBB = FamTripos(B), FamTripos(product(B, B))
    d = fam_morphism(diagonal_map(B), TB, TBB)
    w = fam_morphism(meet_map(B), TBB, TB)
    assert check_tripos_morphism(d).ok and check_tripos_morphism(w).ok
    with pytest.raises(NotMeetHom):
        fam_morphism(join_map(B))
    assert is_regular_morphism(d)
    assert not is_regular_morphism(w)
    assert is_regular_morphism(identity_morphism(TB))


def _interp(T):
    I = Interpretation(T, sig=Signature())
    I.declare_type("A", FinObj(2))
    a = Base("A")
    I.declare_rel("R", [a], FamPredicate(FinObj(2), [1, 3]))
    I.declare_rel("S", [a], FamPredicate(FinObj(2), [3, 1]))
    return I, a


def test_judgment_preservation(B):
    TBB = FamTripos(product(B, B))
    w = fam_morphism(meet_map(B), TBB, FamTripos(B))
    I, a = _interp(TBB)
    assert check_judgment_preservation(w, Judgment((), (), Top()), I)
    j = Judgment((a,), (Rel("R", (Var(0),)), Rel("S", (Var(0),))),
                 And(Rel("S", (Var(0),)), Rel("R", (Var(0),))))
    assert check_judgment_preservation(w, j, I)
    with pytest.raises(FragmentViolation):
        check_judgment_preservation(w, Judgment((), (), Exists(a, Rel("R", (Var(0),)))), I)
