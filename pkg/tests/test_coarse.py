import itertools

import pytest

from triposkit.basecat import FinObj, SizeGuard
from triposkit.biadj import _bool_setup
from triposkit.coarse import (J_morphism, J_morphism_formula, J_object, J_unit, T_functor,
                              check_J_morphism, check_nat_inv, check_oplax_coherence,
                              check_oplax_unit, check_reflection, coarse_objects, counit,
                              is_coarse, reflect, t_composition_constraint,
                              t_identity_constraint, topos_checks)
from triposkit.lattice import booleans, three_chain, vee
from triposkit.pertopos import PerMor, PerObj, build_F, identity_functor
from triposkit.tripos import FamPredicate, FamTripos


def oracle_coarse(H, X):
    """Every singleton on X is a restriction of one of its points."""
    A = H.T.A
    n = X.base.size
    rho = X.rho.values.reshape(n, n)
    for s in itertools.product(range(A.size), repeat=n):
        if not all(A.leq[s[x], rho[x, x]] for x in range(n)):
            continue
        if not all(A.leq[A.meet[s[x], rho[x, y]], s[y]] for x in range(n) for y in range(n)):
            continue
        if not all(A.leq[A.meet[s[x], s[y]], rho[x, y]] for x in range(n) for y in range(n)):
            continue
        e = A.join_all(s)
        if not any(all(s[y] == A.meet[e, rho[x, y]] for y in range(n)) for x in range(n)):
            return False
    return True


@pytest.mark.parametrize("A", [booleans(), three_chain(), vee()])
def test_is_coarse_matches_singleton_oracle(A):
    H = build_F(FamTripos(A))
    for X in H.objects(2):
        assert is_coarse(H, X) == oracle_coarse(H, X), X


def test_discrete_objects_are_coarse(HB):
    for n in range(1, 4):
        R = reflect(HB, HB.discrete(FinObj(n)))
        assert HB.inverse(R.unit) is not None


def test_empty_object_reflects_to_bottom_point(HB):
    E = HB.discrete(FinObj(0))
    assert not is_coarse(HB, E)
    J = J_object(HB, E)
    assert J.base.size == 1 and J.rho.tolist() == [0]


def test_h_singleton_is_coarse(H3):
    # the subterminal object of extent h is a sheaf
    X = PerObj(FinObj(1), FamPredicate(FinObj(1), [1]))
    assert is_coarse(H3, X) and oracle_coarse(H3, X)


def test_idempotent_and_cocover_leg(H3):
    for X in H3.objects(2):
        R = reflect(H3, X)
        assert H3.is_mono(R.unit) and H3.is_epi(R.unit)
        assert H3.inverse(reflect(H3, R.coarse).unit) is not None
        assert check_reflection(H3, X)


def test_power_objects_coarse(H3):
    PX, _ = H3.omega()
    assert is_coarse(H3, PX)


def test_J_morphism_agrees_with_formula(H3):
    objs = H3.objects(1)
    for X, Y in itertools.product(objs, repeat=2):
        for f in H3.homs(X, Y):
            assert check_J_morphism(H3, f)
            assert H3.mor_equal(J_morphism(H3, f), J_morphism_formula(H3, f))


def test_counit_inverts_unit(HB):
    for X in coarse_objects(HB, 2):
        u = J_unit(HB, X)
        assert HB.mor_equal(HB.compose(counit(HB, X), u), HB.identity(X))


def test_T_of_identity_is_reflection(HB):
    TI = T_functor(identity_functor(HB))
    for X in HB.objects(1):
        assert TI.obj(X) == J_object(HB, X)
    c = t_identity_constraint(HB)
    for X in coarse_objects(HB, 1):
        assert HB.inverse(c.at(X)) is not None


def test_T_of_diagonal_functor():
    B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw = _bool_setup()
    A = HB.discrete(FinObj(2))
    TA = T_functor(Fd).obj(A)
    assert is_coarse(HBB, TA)
    # (2, eq) over BxB is not coarse; its reflection has four points
    assert TA.base.size == 4
    assert is_coarse(HB, T_functor(identity_functor(HB)).obj(A))


def test_constraints_invertible_at_coarse_composites():
    B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw = _bool_setup()
    A = HB.discrete(FinObj(2))
    c = t_composition_constraint(Fd, identity_functor(HB)).at(A)
    assert HBB.inverse(c) is not None
    assert check_nat_inv(Fd, A)
    assert not check_nat_inv(Fw, Fd.obj(A))
    assert check_nat_inv(identity_functor(HB), A)


def test_oplax_coherence_and_unit():
    B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw = _bool_setup()
    for X in HB.objects(1):
        assert check_oplax_coherence(Fd, Fw, Fd, X)
    for X in coarse_objects(HB, 2):
        assert check_oplax_unit(Fd, X)


@pytest.mark.parametrize("A", [booleans(), three_chain()])
def test_topos_checks(A):
    assert topos_checks(build_F(FamTripos(A)), 2).ok


def test_topos_checks_with_non_coarse_extra(H3):
    X = H3.discrete(FinObj(0))
    assert topos_checks(H3, 1, extra=[X]).ok


def test_size_guard():
    H = build_F(FamTripos(three_chain()))
    with pytest.raises(SizeGuard):
        reflect(H, H.discrete(FinObj(13)))
