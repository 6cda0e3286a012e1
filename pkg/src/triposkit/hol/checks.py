"""Semantic checks of the internal language: substitution, soundness, encodings."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from ..basecat import FinMap, FinObj
from ..reports import LawReport
from ..tripos import FamPredicate, FamTripos
from .semantics import Interpretation, eval_formula, eval_term, holds
from .syntax import (PROP, And, App, Base, Bot, Eq, Exists, Forall, Imp, Judgment, Mem,
                     Not, Or, Pair, Pow, Prod, Proj, Rel, Star, Top, Tr, Unit, Var, Iff,
                     shift, substitute, weaken)
from .typing import Signature, type_of


# ---------------------------------------------------------------------------
# substitution lemma
# ---------------------------------------------------------------------------

def check_substitution(interp: Interpretation, ctx, x, terms, target_ctx) -> bool:
    """[[x[s/ctx]]] equals [[x]] after the tuple <[[s1]], ..., [[sn]]>.

    ``x`` is a term or formula in ``ctx``; ``terms`` has one term per
    variable of ``ctx``, each in ``target_ctx``.
    """
    B, T = interp.base, interp.tripos
    ctx, target_ctx = tuple(ctx), tuple(target_ctx)
    sub = substitute(x, terms)
    if ctx:
        tup = eval_term(interp, target_ctx, terms[0])
        for t in terms[1:]:
            tup = B.pairing(tup, eval_term(interp, target_ctx, t))
    else:
        tup = B.bang(interp.ctx_obj(target_ctx))
    if _is_formula(x):
        lhs = eval_formula(interp, target_ctx, sub)
        rhs = T.reindex(tup, eval_formula(interp, ctx, x))
        return T.pred_equal(lhs, rhs)
    lhs = eval_term(interp, target_ctx, sub)
    rhs = B.compose(eval_term(interp, ctx, x), tup)
    return B.mor_equal(lhs, rhs)


def _is_formula(x) -> bool:
    return isinstance(x, (Top, Bot, And, Or, Imp, Eq, Mem, Exists, Forall, Rel))


# ---------------------------------------------------------------------------
# random generation
# ---------------------------------------------------------------------------

@dataclass
class Gen:
    """Seeded generator of well-typed terms and formulas over a signature."""

    sig: Signature
    rng: random.Random
    quant_types: tuple = ()

    def _vars_of(self, ctx, ty):
        n = len(ctx)
        return [Var(n - 1 - i) for i, t in enumerate(ctx) if t == ty]

    def can_make(self, ctx, ty, depth=2) -> bool:
        if isinstance(ty, Unit) or self._vars_of(ctx, ty):
            return True
        if depth <= 0:
            return False
        if isinstance(ty, Prod) and self.can_make(ctx, ty.left, depth - 1) \
                and self.can_make(ctx, ty.right, depth - 1):
            return True
        if any(isinstance(t, Prod) and ty in (t.left, t.right) for t in ctx):
            return True
        for name, (args, res) in self.sig.funs.items():
            if res == ty and all(self.can_make(ctx, a, depth - 1) for a in args):
                return True
        return False

    def term(self, ctx, ty, depth: int = 2):
        ctx = tuple(ctx)
        opts = []
        vs = self._vars_of(ctx, ty)
        if vs:
            opts.append(lambda: self.rng.choice(vs))
        if isinstance(ty, Unit):
            opts.append(lambda: Star())
        if depth > 0:
            if isinstance(ty, Prod) and self.can_make(ctx, ty.left, depth - 1) \
                    and self.can_make(ctx, ty.right, depth - 1):
                opts.append(lambda: Pair(self.term(ctx, ty.left, depth - 1),
                                         self.term(ctx, ty.right, depth - 1)))
            for name, (args, res) in sorted(self.sig.funs.items()):
                if res == ty and all(self.can_make(ctx, a, depth - 1) for a in args):
                    opts.append(lambda n=name, a=args: App(
                        n, tuple(self.term(ctx, t, depth - 1) for t in a)))
            for i, t in enumerate(ctx):
                if isinstance(t, Prod) and ty in (t.left, t.right):
                    k = 1 if t.left == ty else 2
                    opts.append(lambda i=i, k=k: Proj(k, Var(len(ctx) - 1 - i)))
        if not opts:
            raise ValueError(f"no term of type {ty} in context {ctx}")
        return self.rng.choice(opts)()

    def formula(self, ctx, depth: int = 2):
        ctx = tuple(ctx)
        r = self.rng
        atoms = [lambda: Top(), lambda: Bot()]
        for name, args in sorted(self.sig.rels.items()):
            if all(self.can_make(ctx, a, 1) for a in args):
                atoms.append(lambda n=name, a=args: Rel(n, tuple(self.term(ctx, t, 1) for t in a)))
        eq_types = [t for t in set(ctx) | set(self.quant_types) if self.can_make(ctx, t, 1)]
        eq_types.sort(key=str)
        for ty in eq_types:
            atoms.append(lambda ty=ty: Eq(self.term(ctx, ty, 1), self.term(ctx, ty, 1)))
        for ty in sorted(set(ctx), key=str):
            if isinstance(ty, Pow) and self.can_make(ctx, ty.elem, 1):
                atoms.append(lambda ty=ty: Mem(self.term(ctx, ty.elem, 1), self.term(ctx, ty, 0)))
        if depth <= 0 or r.random() < 0.3:
            return r.choice(atoms)()
        k = r.randrange(5)
        if k == 0:
            return And(self.formula(ctx, depth - 1), self.formula(ctx, depth - 1))
        if k == 1:
            return Or(self.formula(ctx, depth - 1), self.formula(ctx, depth - 1))
        if k == 2:
            return Imp(self.formula(ctx, depth - 1), self.formula(ctx, depth - 1))
        if self.quant_types:
            ty = r.choice(self.quant_types)
            body = self.formula(ctx + (ty,), depth - 1)
            return (Exists if k == 3 else Forall)(ty, body)
        return r.choice(atoms)()


# ---------------------------------------------------------------------------
# soundness: the deduction rules as semantic rule instances
# ---------------------------------------------------------------------------

RULES = (
    "top-intro", "bot-elim", "and-intro", "and-elim-1", "and-elim-2", "or-intro-1",
    "or-intro-2", "or-elim", "imp-intro", "imp-elim", "forall-intro", "forall-elim",
    "exists-intro", "exists-elim", "eq-refl", "eq-elim", "comprehension", "product",
)

#: Axioms whose conclusion formula must evaluate to top, not merely be entailed.
EXACT_TOP = ("comprehension", "product")


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    premises: tuple
    conclusion: Judgment
    exact_top: bool = False


def check_soundness_rules(interp: Interpretation, rule: str, instance: RuleInstance) -> bool:
    """If every premise holds, the conclusion holds (axioms: evaluates to top)."""
    if instance.rule != rule:
        raise ValueError(f"instance of {instance.rule} checked as {rule}")
    if instance.exact_top:
        T = interp.tripos
        j = instance.conclusion
        val = eval_formula(interp, j.ctx, j.concl)
        return T.pred_equal(val, T.top(interp.ctx_obj(j.ctx)))
    if all(holds(interp, p) for p in instance.premises):
        return bool(holds(interp, instance.conclusion))
    return True


def premises_hold(interp: Interpretation, instance: RuleInstance) -> bool:
    return all(holds(interp, p) for p in instance.premises)


def _ids(n, shift_by=0):
    """Terms for the variables of a length-n context, shifted into a longer one."""
    return [Var(n - 1 - i + shift_by) for i in range(n)]


def exists_unique(ty, body):
    """exists! z:ty. body  :=  exists z. body /\\ forall z'. body[z'] -> z' = z."""
    inner = Forall(ty, Imp(shift(body, 1, 1), Eq(Var(0), Var(1))), "z'")
    return Exists(ty, And(body, inner), "z")


def make_instance(rule: str, gen: Gen, ctx, types) -> RuleInstance:
    """A random instance of a rule in context ctx; types are candidate types for x."""
    r = gen.rng
    ctx = tuple(ctx)
    n = len(ctx)
    G = [gen.formula(ctx, 1) for _ in range(r.randrange(3))]

    def J(hyps, concl, c=ctx):
        return Judgment(tuple(c), tuple(hyps), concl)

    def inject(*fs):
        # put the formulas needed for the premises into Gamma, usually
        return G + list(fs) if r.random() < 0.8 else G

    phi, psi, gam = (gen.formula(ctx, 2) for _ in range(3))
    if rule == "top-intro":
        return RuleInstance(rule, (), J(G, Top()))
    if rule == "bot-elim":
        g = inject(psi, Not(psi))
        return RuleInstance(rule, (J(g, Bot()),), J(g, phi))
    if rule == "and-intro":
        g = inject(phi, psi)
        return RuleInstance(rule, (J(g, phi), J(g, psi)), J(g, And(phi, psi)))
    if rule in ("and-elim-1", "and-elim-2"):
        g = inject(And(phi, psi))
        return RuleInstance(rule, (J(g, And(phi, psi)),), J(g, phi if rule[-1] == "1" else psi))
    if rule in ("or-intro-1", "or-intro-2"):
        pick = phi if rule[-1] == "1" else psi
        g = inject(pick)
        return RuleInstance(rule, (J(g, pick),), J(g, Or(phi, psi)))
    if rule == "or-elim":
        g = inject(Or(phi, psi), Imp(phi, gam), Imp(psi, gam))
        prem = (J(g, Or(phi, psi)), J(g + [phi], gam), J(g + [psi], gam))
        return RuleInstance(rule, prem, J(g, gam))
    if rule == "imp-intro":
        g = inject(psi)
        return RuleInstance(rule, (J(g + [phi], psi),), J(g, Imp(phi, psi)))
    if rule == "imp-elim":
        g = inject(Imp(phi, psi), phi)
        return RuleInstance(rule, (J(g, Imp(phi, psi)), J(g, phi)), J(g, psi))
    # witness terms t : ty must exist in ctx
    ty = r.choice([t for t in types if gen.can_make(ctx, t, 2)] or list(types))
    if not gen.can_make(ctx, ty, 2):
        return make_instance(rule, gen, ctx + (ty,), types)
    xctx = ctx + (ty,)
    xi = gen.formula(xctx, 2)
    if rule == "forall-intro":
        if G and r.random() < 0.7:
            xi = Or(weaken(r.choice(G)), xi)
        Gw = [weaken(h) for h in G]
        return RuleInstance(rule, (J(Gw, xi, xctx),), J(G, Forall(ty, xi)))
    if rule in ("forall-elim", "exists-intro", "exists-elim"):
        t = gen.term(ctx, ty, 2)
        xi_t = substitute(xi, _ids(n) + [t])
        if rule == "forall-elim":
            g = inject(Forall(ty, xi))
            return RuleInstance(rule, (J(g, Forall(ty, xi)),), J(g, xi_t))
        if rule == "exists-intro":
            g = inject(xi_t)
            return RuleInstance(rule, (J(g, xi_t),), J(g, Exists(ty, xi)))
        g = inject(Exists(ty, xi), Forall(ty, Imp(xi, weaken(psi))))
        gw = [weaken(h) for h in g]
        prem = (J(g, Exists(ty, xi)), J(gw + [xi], weaken(psi), xctx))
        return RuleInstance(rule, prem, J(g, psi))
    if rule == "eq-refl":
        t = gen.term(ctx, ty, 2)
        return RuleInstance(rule, (), J(G, Eq(t, t)))
    if rule == "eq-elim":
        # Theta[x, y] and rho[x, y] live in ctx, x:ty, y:ty
        c2 = ctx + (ty, ty)
        theta = [gen.formula(c2, 1) for _ in range(r.randrange(2))]
        if r.random() < 0.8:
            theta.append(Eq(Var(1), Var(0)))
        rho = gen.formula(c2, 2)
        if r.random() < 0.5:
            rho = Or(Eq(Var(1), Var(0)), rho)
        s, t = gen.term(ctx, ty, 2), gen.term(ctx, ty, 2)
        st = _ids(n) + [s, t]
        xx = _ids(n, 1) + [Var(0), Var(0)]
        th_st = [substitute(h, st) for h in theta]
        th_xx = [substitute(h, xx) for h in theta]
        prem = (J(th_st, Eq(s, t)), J(th_xx, substitute(rho, xx), xctx))
        return RuleInstance(rule, prem, J(th_st, substitute(rho, st)))
    if rule == "comprehension":
        # exists m:P(ty). forall x:ty. x in m <-> xi[x]
        body = Forall(ty, Iff(Mem(Var(0), Var(1)), shift(xi, 1, 1)))
        return RuleInstance(rule, (), J(G, Exists(Pow(ty), body, "m")), exact_top=True)
    if rule == "product":
        ty2 = r.choice(types)
        c2 = ctx + (ty, ty2)
        P = Prod(ty, ty2)
        body = And(Eq(Proj(1, Var(0)), Var(2)), Eq(Proj(2, Var(0)), Var(1)))
        Gw = [shift(h, 2) for h in G]
        return RuleInstance(rule, (), J(Gw, exists_unique(P, body), c2), exact_top=True)
    raise ValueError(f"unknown rule {rule!r}")


def _rand_table(rng, size, cod):
    return [rng.randrange(cod) for _ in range(size)] if cod else []


def sample_interpretation(A, seed: int = 0) -> Interpretation:
    """A small random structure over fam(A): types A (2 points) and C (3 points)."""
    rng = random.Random(seed)
    T = FamTripos(A)
    I = Interpretation(T, sig=Signature())
    I.declare_type("A", FinObj(2))
    I.declare_type("C", FinObj(3))
    a, c = Base("A"), Base("C")
    I.declare_fun("f", [a], a, FinMap(FinObj(2), FinObj(2), _rand_table(rng, 2, 2)))
    I.declare_fun("g", [a, a], c, FinMap(FinObj(4), FinObj(3), _rand_table(rng, 4, 3)))
    I.declare_fun("h", [c], a, FinMap(FinObj(3), FinObj(2), _rand_table(rng, 3, 2)))
    I.declare_rel("R", [a], FamPredicate(FinObj(2), _rand_table(rng, 2, A.size)))
    I.declare_rel("S", [a, c], FamPredicate(FinObj(6), _rand_table(rng, 6, A.size)))
    return I


def _random_ctx(rng):
    a, c = Base("A"), Base("C")
    pool = [a, c, Pow(a), Prod(a, a)]
    return tuple(rng.choice(pool) for _ in range(rng.randrange(1, 3)))


def soundness_suite(A, per_rule: int = 200, seed: int = 0, rules=RULES) -> LawReport:
    """Check every rule on per_rule seeded random instances over fam(A)."""
    rep = LawReport(f"soundness:{A.name}")
    interp = sample_interpretation(A, seed)
    a, c = Base("A"), Base("C")
    for k, rule in enumerate(rules):
        rng = random.Random(seed * 1_000_003 + k)
        gen = Gen(interp.sig, rng, quant_types=(a, c))
        bad, live = None, 0
        for _ in range(per_rule):
            ctx = _random_ctx(rng)
            inst = make_instance(rule, gen, ctx, [a, c])
            if inst.exact_top or premises_hold(interp, inst):
                live += 1
            if not check_soundness_rules(interp, rule, inst):
                bad = bad or str(inst.conclusion)
        rep.add(f"{A.name}.{rule}", bad is None, bad or f"{per_rule} instances, {live} non-vacuous")
    return rep


def substitution_suite(A, count: int = 200, seed: int = 0) -> LawReport:
    rep = LawReport(f"substitution:{A.name}")
    interp = sample_interpretation(A, seed)
    rng = random.Random(seed + 17)
    a, c = Base("A"), Base("C")
    gen = Gen(interp.sig, rng, quant_types=(a, c))
    bad_t = bad_f = None
    for _ in range(count):
        ctx = _random_ctx(rng)
        target = _random_ctx(rng)
        while not all(gen.can_make(target, t, 2) for t in ctx):
            target = target + (rng.choice(ctx),)
        terms = [gen.term(target, t, 2) for t in ctx]
        ty = rng.choice([a, c, Prod(a, c)])
        if gen.can_make(ctx, ty, 3):
            t = gen.term(ctx, ty, 3)
            if not check_substitution(interp, ctx, t, terms, target):
                bad_t = bad_t or f"{t} in {ctx}"
        phi = gen.formula(ctx, 2)
        if not check_substitution(interp, ctx, phi, terms, target):
            bad_f = bad_f or f"{phi} in {ctx}"
    rep.add(f"{A.name}.substitution-terms", bad_t is None, bad_t or f"{count} instances")
    rep.add(f"{A.name}.substitution-formulas", bad_f is None, bad_f or f"{count} instances")
    return rep


def weakening_suite(A, count: int = 100, seed: int = 0) -> LawReport:
    rep = LawReport(f"weakening:{A.name}")
    interp = sample_interpretation(A, seed)
    rng = random.Random(seed + 29)
    a, c = Base("A"), Base("C")
    gen = Gen(interp.sig, rng, quant_types=(a, c))
    bad = None
    for _ in range(count):
        ctx = _random_ctx(rng)
        j = Judgment(ctx, tuple(gen.formula(ctx, 1) for _ in range(rng.randrange(2))),
                     gen.formula(ctx, 2))
        if holds(interp, j):
            ty = rng.choice([a, c])
            jw = Judgment(ctx + (ty,), tuple(weaken(h) for h in j.hyps), weaken(j.concl))
            if not holds(interp, jw):
                bad = bad or str(j)
    rep.add(f"{A.name}.weakening", bad is None, bad or f"{count} instances")
    return rep


# ---------------------------------------------------------------------------
# propositional encodings, evaluated in the cocover tripos of F(fam(A))
# ---------------------------------------------------------------------------

ENCODING_ROWS = ("top", "and", "imp", "forall", "bot", "or", "exists")


def prop_encoding_interp(A, domain_size: int = 2) -> Interpretation:
    """Interpretation over S(F(fam(A))) with the symbols the encodings need.

    Declares a type ``A`` (the discrete object on ``domain_size`` points) and
    function symbols ``top : -> prop``, ``conj : prop, prop -> prop`` (the
    classifier of the encoded conjunction) and ``all : -> P(A)`` (the
    classifier of the true predicate on A).
    """
    from ..pertopos import build_F, cocover_tripos

    H = build_F(FamTripos(A))
    S = cocover_tripos(H)
    I = Interpretation(S, sig=Signature())
    I.declare_type("A", H.discrete(FinObj(domain_size)))
    one = H.terminal()
    I.declare_fun("top", [], PROP, S.chi(one, one, S.top(H.product(one, one)[0])))
    # conj classifies (p, q) = (top, top) over (prop x prop) x 1
    pq = (PROP, PROP)
    enc = Eq(Pair(Var(1), Var(0)), Pair(App("top"), App("top")))
    conj_pred = eval_formula(I, pq, enc)
    PP = I.ctx_obj(pq)
    PP1, p1, _ = H.product(PP, one)
    I.declare_fun("conj", list(pq), PROP, S.chi(PP, one, S.reindex(p1, conj_pred)))
    Aobj = I.obj(Base("A"))
    I.declare_fun("all", [], Pow(Base("A")), S.chi(one, Aobj, S.top(H.product(one, Aobj)[0])))
    return I


def encoding_pairs(ctx, p, q, k=None):
    """(row, encoded formula, native formula) for the seven encoding rows."""
    a = Base("A")
    top = App("top")
    tr_p, tr_q = Tr(p), Tr(q)
    rows = [
        ("top", Eq(Star(), Star()), Top()),
        ("and", Eq(Pair(p, q), Pair(top, top)), And(tr_p, tr_q)),
        ("imp", Eq(App("conj", (p, q)), p), Imp(tr_p, tr_q)),
    ]
    if k is not None:
        rows.append(("forall", Eq(k, App("all")), Forall(a, Mem(Var(0), shift(k, 1)))))
    z = Var(0)
    rows.append(("bot", Forall(PROP, Tr(z), "z"), Bot()))
    p1, q1 = shift(p, 1), shift(q, 1)
    rows.append(("or", Forall(PROP, Imp(And(Imp(Tr(p1), Tr(z)), Imp(Tr(q1), Tr(z))), Tr(z)), "z"),
                 Or(tr_p, tr_q)))
    if k is not None:
        k1 = shift(k, 1)
        inner = Forall(a, Imp(Mem(Var(0), shift(k1, 1)), Tr(Var(1))))
        rows.append(("exists", Forall(PROP, Imp(inner, Tr(z)), "z"),
                     Exists(a, Mem(Var(0), shift(k, 1)))))
    return rows


def check_prop_encodings(interp: Interpretation, ctx, p, q, k=None) -> LawReport:
    """Compare each encoded connective with the native one, as predicates over ctx.

    ``p`` and ``q`` are prop-valued terms; ``k`` (of type P(A)) supplies the
    predicate p[x] = (x in k) for the quantifier rows.
    """
    T = interp.tripos
    ctx = tuple(ctx)
    rep = LawReport("prop-encodings")
    for row, enc, nat in encoding_pairs(ctx, p, q, k):
        e = eval_formula(interp, ctx, enc)
        n = eval_formula(interp, ctx, nat)
        ok = T.pred_equal(e, n)
        w = "" if ok else f"{T.show(e) if hasattr(T, 'show') else e} vs {T.show(n) if hasattr(T, 'show') else n}"
        rep.add(row, ok, w or "equal")
    return rep


def encoding_suite(A, domain_size: int = 2) -> LawReport:
    """All seven rows, exhaustively over prop pairs and k : P(A)."""
    I = prop_encoding_interp(A, domain_size)
    ctx = (PROP, PROP, Pow(Base("A")))
    r = check_prop_encodings(I, ctx, Var(2), Var(1), Var(0))
    rep = LawReport(f"encodings:{A.name}")
    for e in r.entries:
        rep.add(f"{A.name}.encoding-{e.check_id}", e.passed, e.witness)
    return rep


def prop_facts(A) -> LawReport:
    """prop has |A| inhabitants and tr is a bijection onto the fiber over 1."""
    rep = LawReport(f"prop:{A.name}")
    T = FamTripos(A)
    interp = Interpretation(T, sig=Signature())
    P = interp.obj(PROP)
    rep.add(f"{A.name}.prop-size", P.size == A.size, f"{P.size} elements")
    tr = eval_formula(interp, (PROP,), Tr(Var(0)))
    rep.add(f"{A.name}.tr-bijective", sorted(tr.tolist()) == list(range(A.size)), str(tr.tolist()))
    return rep


def hol_law_suite(seed: int = 0, per_rule: int = 200, algebras=None) -> LawReport:
    from ..lattice import booleans, three_chain

    algebras = algebras or (booleans(), three_chain())
    rep = LawReport("hol")
    for A in algebras:
        rep.extend(prop_facts(A))
        rep.extend(substitution_suite(A, seed=seed))
        rep.extend(weakening_suite(A, seed=seed))
        rep.extend(soundness_suite(A, per_rule=per_rule, seed=seed))
        rep.extend(encoding_suite(A))
    return rep
