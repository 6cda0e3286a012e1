import itertools

import pytest

from triposkit.basecat import FinObj, fin_map
from triposkit.biadj import (NotAnAdjunction, _bool_setup, biadj_suite, check_triangle_1,
                             check_triangle_2, check_unit_cell, composite_unit_factorization,
                             counit_functor, demo_intro, demo_unit_factorization,
                             diagonal_product_adjunction, eps_morphism, eps_object, eps_witness,
                             fs_objects, mu_component, nu_component, subquotient_span,
                             transport_adjunction, unit_constraint, unit_constraint_invertible,
                             unit_eta)
from triposkit.lattice import booleans, lattice_map, three_chain
from triposkit.pertopos import CompatPred, PerMor, PerObj, build_F, cocover_tripos
from triposkit.tripos import (FamTripos, compose_morphisms, fam_morphism, fam_transformation,
                              identity_morphism, identity_transformation)


def test_unit_cell(TB, HB):
    U = unit_eta(TB, HB)
    two = FinObj(2)
    assert U.D(two) == PerObj(two, TB.eq(two))
    d = U.Delta(TB.top(two))
    assert HB.T.pred_equal(d.phi, HB.support(U.D(two)))
    assert check_unit_cell(U, 2).ok


def test_unit_cell_three_chain(T3):
    assert check_unit_cell(unit_eta(T3), 2).ok


def test_unit_constraints():
    B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw = _bool_setup()
    for n in range(3):
        assert unit_constraint_invertible(w, FinObj(n), HBB, HB)
        assert unit_constraint_invertible(d, FinObj(n), HB, HBB)
    C3 = three_chain()
    T3 = FamTripos(C3)
    raise_ = fam_morphism(lattice_map(C3, C3, lambda a: [1, 2, 2][a], "raise"), T3, T3)
    two = FinObj(2)
    c = unit_constraint(raise_).at(two)
    # Phi(eq) lies strictly above eq
    assert T3.entails(c.dom.rho, c.cod.rho) and not T3.entails(c.cod.rho, c.dom.rho)
    assert not unit_constraint_invertible(raise_, two)


def test_counit_on_trivial_and_top(HB):
    S = cocover_tripos(HB)
    two = FinObj(2)
    Y = HB.discrete(two)
    YY = HB.product(Y, Y)[0]
    X = PerObj(Y, CompatPred(YY, Y.rho))
    assert eps_object(X) == Y
    top = PerObj(Y, CompatPred(YY, HB.T.top(FinObj(4))))
    assert eps_object(top) == HB.indiscrete(two)
    C0, m, e = subquotient_span(HB, top)
    assert HB.is_mono(m) and HB.is_epi(e)
    eps = counit_functor(HB)
    assert eps.obj(X) == Y


def test_nu_and_mu(TB, HB):
    U = unit_eta(TB, HB)
    X = U.D(FinObj(2))
    nu = nu_component(U, X)
    assert nu.rep.tolist() == [0, 1]
    inv = HB.inverse(nu)
    assert HB.mor_equal(HB.compose(nu, inv), HB.identity(X))
    for Y in HB.objects(2):
        assert HB.inverse(mu_component(HB, Y)) is not None


@pytest.mark.parametrize("A", [booleans(), three_chain()])
def test_triangle_1(A):
    P = FamTripos(A)
    for n in range(3):
        assert check_triangle_1(P, FinObj(n))


@pytest.mark.parametrize("A", [booleans(), three_chain()])
def test_triangle_2(A):
    H = build_F(FamTripos(A))
    for X in fs_objects(H, 2):
        assert check_triangle_2(H, X)


def test_triangle_2_example(HB):
    S = cocover_tripos(HB)
    Y = HB.discrete(FinObj(2))
    YY = HB.product(Y, Y)[0]
    X = PerObj(Y, CompatPred(YY, HB.T.top(FinObj(4))))
    assert check_triangle_2(HB, X)


def test_triangle_detects_wrong_component(TB, HB):
    # the triangle-1 composite with mu replaced by the swap is not the identity
    U = unit_eta(TB, HB)
    X = U.D(FinObj(2))
    mu = mu_component(HB, X)
    swap = PerMor(mu.dom, mu.cod, fin_map(2, 2, [1, 0]))
    assert HB.mor_wellformed(swap) and HB.inverse(swap) is not None
    c = unit_constraint(U.morphism, HB, build_F(U.SFP)).at(FinObj(2))
    nu = nu_component(U, X)
    good = HB.compose(nu, HB.compose(eps_morphism(c), mu))
    bad = HB.compose(nu, HB.compose(eps_morphism(c), swap))
    assert HB.mor_equal(good, HB.identity(X))
    assert not HB.mor_equal(bad, HB.identity(X))


def test_factorization_wedge():
    B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw = _bool_setup()
    fz = composite_unit_factorization(w, FinObj(2), HBB, HB)
    assert fz.epi_iso and fz.is_mono and not fz.mono_iso and fz.composite_equal


def test_factorization_delta_and_identity():
    B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw = _bool_setup()
    for n in range(3):
        fz = composite_unit_factorization(d, FinObj(n), HB, HBB)
        assert fz.epi_iso and fz.mono_iso and fz.composite_equal
        fz = composite_unit_factorization(identity_morphism(TB), FinObj(n), HB, HB)
        assert fz.epi_iso and fz.mono_iso
        assert HB.mor_equal(fz.epi, HB.identity(fz.epi.dom))


def test_demo_intro():
    d = demo_intro()
    assert d.ok
    assert d.data["component"] == [0, 3]
    assert d.data["candidates"] == 16 and d.data["inverses"] == 0
    assert "other_order" in d.data


def test_demo_unit_factorization():
    d = demo_unit_factorization(3)
    assert d.ok
    assert d.data[2]["proper_mono"] and d.data[3]["proper_mono"]


def test_eps_witness():
    d = eps_witness()
    assert d.ok
    assert d.data["source_globals"] == 0 and d.data["target_globals"] == 1
    assert not d.data["invertible"]


def test_transport_diagonal_product():
    d = transport_adjunction(*diagonal_product_adjunction())
    assert d.ok


def test_transport_identity(TB):
    i = identity_morphism(TB)
    d = transport_adjunction(i, i, identity_transformation(i), identity_transformation(i))
    assert d.ok and d.data["counit_iso"]


def test_non_adjoint_pair_rejected():
    dd, ww, _, _ = diagonal_product_adjunction()
    unit = fam_transformation(identity_morphism(ww.src), compose_morphisms(dd, ww))
    cou = fam_transformation(compose_morphisms(ww, dd), identity_morphism(dd.src))
    with pytest.raises(NotAnAdjunction):
        transport_adjunction(ww, dd, unit, cou)


def test_suite():
    assert biadj_suite(1).ok
