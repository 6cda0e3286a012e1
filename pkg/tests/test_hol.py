import random

import pytest
from hypothesis import given, settings, strategies as st

from triposkit.basecat import FINSET, FinMap, FinObj, compose
from triposkit.hol.checks import (EXACT_TOP, RULES, Gen, check_prop_encodings,
                                  check_soundness_rules, check_substitution, encoding_suite,
                                  make_instance, prop_encoding_interp, sample_interpretation,
                                  soundness_suite)
from triposkit.hol.parser import parse, parse_formula
from triposkit.hol.semantics import Interpretation, eval_formula, eval_term, holds
from triposkit.hol.syntax import (PROP, App, Base, Eq, HolTypeError, Judgment, Mem, Pow,
                                  UnknownSymbol, Var)
from triposkit.hol.theory import load_theory
from triposkit.hol.typing import Signature
from triposkit.lattice import booleans, three_chain
from triposkit.tripos import FamPredicate, FamTripos


@pytest.fixture
def sig():
    s = Signature()
    s.add_type("A")
    return s


def test_parse_shapes(sig):
    j = parse("x:A | x = x", sig)
    assert j.concl == Eq(Var(0), Var(0))
    j = parse("m:P(A), x:A | x in m", sig)
    assert j.concl == Mem(Var(0), Var(1)) and j.ctx == (Pow(Base("A")), Base("A"))


def test_parse_errors(sig):
    with pytest.raises(HolTypeError):
        parse("x:A | x in x", sig)
    with pytest.raises(UnknownSymbol):
        parse("x:A | Q(x)", sig)


def _chain_theory():
    return load_theory("""
        locale chain3;
        type A = set 2;
        type C = set 3;
        fun f : A -> A = [1, 0];
        fun g : C -> A = [0, 1, 1];
        rel R : A = [h, 0];
    """)


def test_eval_terms():
    th = _chain_theory()
    I = th.interp
    A, C = Base("A"), Base("C")
    assert eval_term(I, (A,), Var(0)) == FINSET.identity(FinObj(2))
    _, p1, _ = FINSET.product(FinObj(2), FinObj(3))
    assert eval_term(I, (A, C), Var(1)) == p1
    t = App("f", (App("g", (Var(0),)),))
    assert eval_term(I, (C,), t) == compose(I.funs["f"], I.funs["g"])


def test_eval_quantifiers():
    th = _chain_theory()
    I, T = th.interp, th.tripos
    h = th.locale.index("h")
    ex = parse_formula("exists x:A. R(x)", th.sig)
    al = parse_formula("forall x:A. R(x)", th.sig)
    assert eval_formula(I, (), ex).tolist() == [h]
    assert eval_formula(I, (), al).tolist() == [0]
    top = eval_formula(I, (Base("A"),), parse_formula("x = x", th.sig, ["x"], [Base("A")]))
    assert T.pred_equal(top, T.top(FinObj(2)))


def test_holds_and_countermodels():
    th = _chain_theory()
    I = th.interp
    assert holds(I, parse("x:A | R(x) |- R(x)", th.sig))
    r = holds(I, parse(" | |- forall x:A. R(x)", th.sig))
    assert not r
    r = holds(I, parse("x:A | |- R(x)", th.sig))
    # R = (h, 0) fails to be top at both points; the first is reported
    assert not r and r.witness == 0
    lem = parse(" | |- forall p:P(1). * in p \\/ (* in p -> false)", th.sig)
    assert not holds(I, lem)
    bool_th = load_theory("locale B; type A = set 1;")
    assert holds(bool_th.interp, parse(" | |- forall p:P(1). * in p \\/ (* in p -> false)",
                                       bool_th.sig))


@pytest.mark.parametrize("A", [booleans(), three_chain()])
def test_substitution_variables(A):
    I = sample_interpretation(A, 3)
    a = Base("A")
    phi = parse_formula("R(x) /\\ f(y) = x", I.sig, ["x", "y"], [a, a])
    assert check_substitution(I, (a, a), phi, [Var(0), Var(1)], (a, a))
    eq = parse_formula("x = y", I.sig, ["x", "y"], [a, a])
    assert check_substitution(I, (a, a), eq, [App("f", (Var(0),)), Var(0)], (a,))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(RULES))
def test_rules_sound_on_random_instances(seed, rule):
    A = three_chain() if seed % 2 else booleans()
    I = sample_interpretation(A, seed % 5)
    rng = random.Random(seed)
    gen = Gen(I.sig, rng, quant_types=(Base("A"), Base("C")))
    inst = make_instance(rule, gen, (Base("A"),), [Base("A"), Base("C")])
    assert check_soundness_rules(I, rule, inst)


def test_comprehension_is_exactly_top():
    I = sample_interpretation(three_chain(), 1)
    rng = random.Random(5)
    gen = Gen(I.sig, rng, quant_types=(Base("A"), Base("C")))
    for _ in range(20):
        inst = make_instance("comprehension", gen, (Base("A"),), [Base("A")])
        assert inst.exact_top
        j = inst.conclusion
        val = eval_formula(I, j.ctx, j.concl)
        assert val.tolist() == [I.tripos.A.top] * I.ctx_obj(j.ctx).size


def test_soundness_suite_small():
    rep = soundness_suite(booleans(), per_rule=20, seed=1)
    assert rep.ok and len(rep.entries) == len(RULES)


def test_encodings_three_chain():
    rep = encoding_suite(three_chain())
    assert rep.ok and len(rep.entries) == 7


def test_encodings_booleans():
    assert encoding_suite(booleans()).ok


def test_theory_errors():
    from triposkit.hol.syntax import ParseError
    with pytest.raises(ParseError):
        load_theory("type = ;")
    with pytest.raises(ParseError):
        load_theory("locale nosuch;")
