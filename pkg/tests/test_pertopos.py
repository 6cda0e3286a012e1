import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from triposkit.basecat import FinMap, FinObj, fin_map
from triposkit.lattice import booleans, three_chain
from triposkit.pertopos import (CompatPred, NotAPer, PerMor, PerObj, build_F, cocover_tripos,
                                compress, oracle_homs, oracle_is_epi, oracle_is_mono,
                                pertopos_suite)
from triposkit.tripos import FamPredicate, FamTripos


def per(H, n, vals):
    A = H.T.A
    return H.per(FinObj(n), FamPredicate(FinObj(n * n), [A.index(v) for v in vals]))


def test_basic_objects(HB):
    assert build_F(HB.T) is HB
    X = HB.discrete(FinObj(2))
    assert HB.is_per(X)[0]
    assert HB.is_per(PerObj(FinObj(1), HB.T.bot(FinObj(1))))[0]
    with pytest.raises(NotAPer):
        per(HB, 2, [1, 1, 0, 1])


def test_wellformed_and_equality(HB, H3):
    X = HB.discrete(FinObj(2))
    i = HB.identity(X)
    assert HB.mor_wellformed(i) and HB.mor_equal(i, i)
    top = H3.indiscrete(FinObj(2))
    for a, b in itertools.product(H3.all_reps(top, top), repeat=2):
        assert H3.mor_equal(PerMor(top, top, a), PerMor(top, top, b))
    # sending the supported point of ({0}, eq) to the unsupported point of the target
    Y = per(HB, 2, [1, 0, 0, 0])
    bad = PerMor(X, Y, fin_map(2, 2, [1, 1]))
    ok, w = HB.mor_wellformed(bad, witness=True)
    assert not ok and w is not None


def test_products_and_equalizers(HB):
    top = HB.indiscrete(FinObj(2))
    XY, p1, p2 = HB.product(top, top)
    assert XY == HB.indiscrete(FinObj(4))
    X = HB.discrete(FinObj(2))
    f = HB.identity(X)
    E, e = HB.equalizer(f, f)
    assert HB.inverse(e) is not None


def test_epi_mono_examples(HB):
    two = FinObj(2)
    f = PerMor(HB.discrete(two), HB.indiscrete(two), fin_map(2, 2, [0, 1]))
    assert HB.is_epi(f)
    inc = PerMor(HB.discrete(FinObj(1)), HB.discrete(two), fin_map(1, 2, [0]))
    ok, w = HB.is_epi(inc, witness=True)
    assert not ok and w == 1
    assert HB.is_mono(inc)


def test_epi_mono_agree_with_cancellation(HB):
    objs = HB.objects(2)
    for X, Y in itertools.product(objs, repeat=2):
        for f in oracle_homs(HB, X, Y):
            assert HB.is_epi(f) == oracle_is_epi(HB, f, objs)
            assert HB.is_mono(f) == oracle_is_mono(HB, f, objs)


def test_compat_and_cocovers(HB):
    S = cocover_tripos(HB)
    X = HB.discrete(FinObj(2))
    m = HB.compat_to_cocover(CompatPred(X, HB.support(X)))
    assert HB.inverse(m) is not None
    for Y in HB.objects(2):
        for p in S.enumerate_preds(Y):
            q = HB.cocover_to_compat(HB.compat_to_cocover(p))
            assert HB.T.pred_equal(p.phi, q.phi)
            r = HB.reindex_compat(HB.identity(Y), p)
            assert HB.T.pred_equal(r.phi, HB.T.and_(p.phi, HB.support(Y)))


def test_image_factorization_extremes(HB):
    for X, Y in itertools.product(HB.objects(2), repeat=2):
        for f in HB.homs(X, Y):
            e, m = HB.image_factorization(f)
            if HB.is_epi(f):
                assert HB.inverse(m) is not None
            if HB.is_cocover(f):
                assert HB.inverse(e) is not None


def test_quotients(HB):
    X = HB.discrete(FinObj(2))
    Q, e = HB.quotient(X, X.rho)
    assert HB.inverse(e) is not None
    Q, e = HB.quotient(X, HB.T.top(FinObj(4)))
    assert Q == HB.indiscrete(FinObj(2)) and HB.is_epi(e)


def test_power_objects(HB, H3):
    X = HB.indiscrete(FinObj(1))
    PX, mem = HB.power_object(X)
    assert PX.base.size == 2
    assert PX.rho.tolist() == [1, 0, 0, 1]
    for H in (HB, H3):
        A = H.T.A
        Om, _ = H.omega()
        vals = Om.rho.values.reshape(A.size, A.size)
        for p, q in itertools.product(range(A.size), repeat=2):
            assert vals[p, q] == A.meet[A.imp[p, q], A.imp[q, p]]


def test_cocover_tripos_fibers(HB, H3):
    S = cocover_tripos(H3)
    X = H3.discrete(FinObj(2))
    fiber = list(S.enumerate_preds(X))
    assert len(fiber) == 9
    for p, q in itertools.product(fiber, repeat=2):
        assert S.and_(p, q).phi.tolist() == [min(a, b) for a, b in zip(p.phi.tolist(), q.phi.tolist())]
    SB = cocover_tripos(HB)
    top = HB.indiscrete(FinObj(2))
    preds = list(SB.enumerate_preds(top))
    for a, b, c in itertools.product(preds, repeat=3):
        assert SB.entails(SB.and_(c, a), b) == SB.entails(c, SB.imp(a, b))


def test_compress_is_iso(H3):
    for X in H3.objects(2):
        Y, to, back = compress(H3, X)
        assert H3._is_inverse(to, back)


@pytest.mark.parametrize("A", [booleans()])
def test_structure_suite(A):
    assert pertopos_suite(build_F(FamTripos(A)), 2).ok


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_hom_search_matches_brute_force(data):
    H = build_F(FamTripos(three_chain()))
    objs = H.objects(2)
    X = data.draw(st.sampled_from(objs))
    Y = data.draw(st.sampled_from(objs))
    fast = H.homs(X, Y)
    slow = oracle_homs(H, X, Y)
    assert len(fast) == len(slow)
    assert all(any(H.mor_equal(f, g) for g in slow) for f in fast)
