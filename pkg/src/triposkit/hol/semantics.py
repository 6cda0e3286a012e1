"""Interpretation of the internal language in a tripos.

Contexts denote left-associated chosen products: ``[[A1, A2, A3]]`` is
``(A1 x A2) x A3``; the empty context is the terminal object and a single
variable denotes its own type.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (And, App, Base, Bot, Eq, Exists, Forall, HType, Imp, Judgment,
                     Mem, Or, Pair, Pow, Prod, Proj, Rel, Star, Top, Unit, Var)
from .typing import Signature, type_of


@dataclass
class Interpretation:
    """Assignments of base types, function and relation symbols in a tripos."""

    tripos: object
    types: dict = field(default_factory=dict)
    funs: dict = field(default_factory=dict)
    rels: dict = field(default_factory=dict)
    sig: Signature = field(default_factory=Signature)

    def __post_init__(self):
        self._objs: dict = {}
        self._ctx: dict = {}

    @property
    def base(self):
        return self.tripos.base

    # -- declarations ------------------------------------------------------------
    def declare_type(self, name: str, obj) -> None:
        self.sig.add_type(name)
        self.types[name] = obj
        self._objs.clear()
        self._ctx.clear()

    def declare_fun(self, name: str, args, result: HType, mor) -> None:
        self.sig.add_fun(name, args, result)
        want_dom = self.ctx_obj(tuple(args))
        B = self.base
        if B.dom(mor) != want_dom or B.cod(mor) != self.obj(result):
            raise TypeError(f"interpretation of {name} does not have the declared type")
        self.funs[name] = mor

    def declare_rel(self, name: str, args, pred) -> None:
        self.sig.add_rel(name, args)
        if self.tripos.over(pred) != self.ctx_obj(tuple(args)):
            raise TypeError(f"interpretation of {name} is not over the declared type")
        self.rels[name] = pred

    def copy_with(self, tripos=None, funs=None, rels=None, types=None) -> "Interpretation":
        return Interpretation(tripos or self.tripos, dict(types or self.types),
                              dict(funs or self.funs), dict(rels or self.rels), self.sig.copy())

    # -- objects -------------------------------------------------------------------
    def obj(self, ty: HType):
        hit = self._objs.get(ty)
        if hit is not None:
            return hit
        B = self.base
        if isinstance(ty, Base):
            o = self.types[ty.name]
        elif isinstance(ty, Unit):
            o = B.terminal()
        elif isinstance(ty, Prod):
            o = B.product(self.obj(ty.left), self.obj(ty.right))[0]
        elif isinstance(ty, Pow):
            o = self.tripos.power(self.obj(ty.elem))[0]
        else:
            raise TypeError(f"not a type: {ty!r}")
        self._objs[ty] = o
        return o

    def ctx_obj(self, ctx):
        return self.context(tuple(ctx))[0]

    def context(self, ctx):
        """Return ``(object, projections)`` for a context; projections in context order."""
        ctx = tuple(ctx)
        hit = self._ctx.get(ctx)
        if hit is not None:
            return hit
        B = self.base
        if not ctx:
            res = (B.terminal(), [])
        elif len(ctx) == 1:
            o = self.obj(ctx[0])
            res = (o, [B.identity(o)])
        else:
            prev, projs = self.context(ctx[:-1])
            last = self.obj(ctx[-1])
            o, p1, p2 = B.product(prev, last)
            res = (o, [B.compose(p, p1) for p in projs] + [p2])
        self._ctx[ctx] = res
        return res

    def weakening(self, ctx):
        """The projection [[ctx, A]] -> [[ctx]] forgetting the last variable's slot."""
        B = self.base
        if not ctx[:-1]:
            return B.bang(self.obj(ctx[-1]))
        prev = self.ctx_obj(ctx[:-1])
        _, p1, _ = B.product(prev, self.obj(ctx[-1]))
        return p1


def _tuple(interp, ctx, args):
    B = interp.base
    if not args:
        return B.bang(interp.ctx_obj(ctx))
    m = eval_term(interp, ctx, args[0])
    for a in args[1:]:
        m = B.pairing(m, eval_term(interp, ctx, a))
    return m


def eval_term(interp: Interpretation, ctx, t):
    """The morphism [[ctx]] -> [[A]] denoted by a term of type A."""
    ctx = tuple(ctx)
    B = interp.base
    if isinstance(t, Var):
        return interp.context(ctx)[1][len(ctx) - 1 - t.index]
    if isinstance(t, Star):
        return B.bang(interp.ctx_obj(ctx))
    if isinstance(t, Pair):
        return B.pairing(eval_term(interp, ctx, t.left), eval_term(interp, ctx, t.right))
    if isinstance(t, Proj):
        ty = type_of(interp.sig, ctx, t.term)
        _, p1, p2 = B.product(interp.obj(ty.left), interp.obj(ty.right))
        return B.compose(p1 if t.i == 1 else p2, eval_term(interp, ctx, t.term))
    if isinstance(t, App):
        return B.compose(interp.funs[t.sym], _tuple(interp, ctx, t.args))
    raise TypeError(f"not a term: {t!r}")


def eval_formula(interp: Interpretation, ctx, phi):
    """The predicate over [[ctx]] denoted by a formula."""
    ctx = tuple(ctx)
    T = interp.tripos
    B = interp.base
    if isinstance(phi, Top):
        return T.top(interp.ctx_obj(ctx))
    if isinstance(phi, Bot):
        return T.bot(interp.ctx_obj(ctx))
    if isinstance(phi, And):
        return T.and_(eval_formula(interp, ctx, phi.left), eval_formula(interp, ctx, phi.right))
    if isinstance(phi, Or):
        return T.or_(eval_formula(interp, ctx, phi.left), eval_formula(interp, ctx, phi.right))
    if isinstance(phi, Imp):
        return T.imp(eval_formula(interp, ctx, phi.left), eval_formula(interp, ctx, phi.right))
    if isinstance(phi, Eq):
        s = eval_term(interp, ctx, phi.left)
        t = eval_term(interp, ctx, phi.right)
        return T.reindex(B.pairing(s, t), T.eq(B.cod(s)))
    if isinstance(phi, Mem):
        s = eval_term(interp, ctx, phi.elem)
        t = eval_term(interp, ctx, phi.coll)
        _, mem = T.power(B.cod(s))
        return T.reindex(B.pairing(t, s), mem)
    if isinstance(phi, Rel):
        return T.reindex(_tuple(interp, ctx, phi.args), interp.rels[phi.sym])
    if isinstance(phi, (Exists, Forall)):
        inner = ctx + (phi.ty,)
        body = eval_formula(interp, inner, phi.body)
        q = T.exists_along if isinstance(phi, Exists) else T.forall_along
        return q(interp.weakening(inner), body)
    raise TypeError(f"not a formula: {phi!r}")


class HoldsResult:
    """Truth of a judgment; ``witness`` is a failing context point (fam only)."""

    def __init__(self, ok: bool, witness=None):
        self.ok = bool(ok)
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"HoldsResult({self.ok}, witness={self.witness})"


def hypotheses(interp: Interpretation, j: Judgment):
    T = interp.tripos
    return T.meet_all(interp.ctx_obj(j.ctx), [eval_formula(interp, j.ctx, h) for h in j.hyps])


def holds(interp: Interpretation, j: Judgment) -> HoldsResult:
    """Delta | Gamma |- phi holds iff the meet of Gamma entails phi in the fiber."""
    T = interp.tripos
    g = hypotheses(interp, j)
    c = eval_formula(interp, j.ctx, j.concl)
    if T.entails(g, c):
        return HoldsResult(True)
    return HoldsResult(False, T.countermodel(g, c))


def translate_interpretation(interp: Interpretation, m) -> Interpretation:
    """Push an interpretation along a tripos morphism with identity base (fam morphisms)."""
    types = {k: m.obj(v) for k, v in interp.types.items()}
    funs = {k: m.mor(v) for k, v in interp.funs.items()}
    rels = {k: m.fib(v) for k, v in interp.rels.items()}
    return Interpretation(m.tgt, types, funs, rels, interp.sig.copy())
