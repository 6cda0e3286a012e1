"""Triposes, the family tripos fam(A), tripos morphisms and transformations.

A :class:`TriposInstance` is an operation record over a base category
handle (``T.base``).  Predicates carry the object they live over, so the
binary connectives need no extra argument.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basecat import FINSET, GUARD, FinMap, FinObj, SizeGuard, TypeMismatch
from .lattice import FiniteHeyting, LatticeMap, is_join_hom, is_meet_hom
from .reports import LawReport


class NotMeetHom(ValueError):
    """A map of algebras that does not preserve finite meets."""


class FragmentViolation(ValueError):
    """A judgment uses connectives a non-regular morphism need not preserve."""


class TriposInstance:
    """Interface of a tripos: fibers, reindexing, quantifiers, power objects."""

    base = None
    name = "tripos"

    def over(self, phi):
        return phi.over

    # entailment ------------------------------------------------------------
    def entails(self, phi, psi) -> bool:
        raise NotImplementedError

    def pred_equal(self, phi, psi) -> bool:
        return self.entails(phi, psi) and self.entails(psi, phi)

    def countermodel(self, phi, psi):
        """A point where phi does not entail psi, if the instance has points."""
        return None

    # fiber structure -----------------------------------------------------------
    def top(self, X):
        raise NotImplementedError

    def bot(self, X):
        raise NotImplementedError

    def and_(self, phi, psi):
        raise NotImplementedError

    def or_(self, phi, psi):
        raise NotImplementedError

    def imp(self, phi, psi):
        raise NotImplementedError

    def iff(self, phi, psi):
        return self.and_(self.imp(phi, psi), self.imp(psi, phi))

    def meet_all(self, X, phis):
        r = self.top(X)
        for p in phis:
            r = self.and_(r, p)
        return r

    # change of base ------------------------------------------------------------
    def reindex(self, f, phi):
        raise NotImplementedError

    def exists_along(self, f, phi):
        raise NotImplementedError

    def forall_along(self, f, phi):
        raise NotImplementedError

    # higher-order structure ------------------------------------------------------
    def power(self, X):
        """Return ``(PX, mem)`` with mem a predicate over ``PX x X``."""
        raise NotImplementedError

    def chi(self, C, X, phi):
        """A map ``C -> PX`` classifying phi over ``C x X``."""
        raise NotImplementedError

    def eq(self, X):
        return self.exists_along(self.base.diagonal(X), self.top(X))

    def enumerate_preds(self, X):
        """All predicates over X (only for instances with finite fibers)."""
        raise NotImplementedError

    def __repr__(self):
        return f"<{self.name}>"


# ---------------------------------------------------------------------------
# fam(A)
# ---------------------------------------------------------------------------

def _ro(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64).reshape(-1)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FamPredicate:
    over: FinObj
    values: np.ndarray

    def __post_init__(self):
        v = _ro(self.values)
        if v.shape[0] != self.over.size:
            raise TypeMismatch(f"{v.shape[0]} values over a set of size {self.over.size}")
        object.__setattr__(self, "values", v)

    def __eq__(self, other):
        return (isinstance(other, FamPredicate) and self.over == other.over
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.over.size, self.values.tobytes()))

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]

    def __repr__(self):
        return f"FamPredicate({self.tolist()})"


def group_reduce(op: np.ndarray, unit: int, values: np.ndarray, keys: np.ndarray,
                 ncod: int) -> np.ndarray:
    """Fold a binary table operation over the fibers of ``keys``."""
    out = np.full(ncod, unit, dtype=np.int64)
    if values.size == 0 or ncod == 0:
        return out
    order = np.argsort(keys, kind="stable")
    k = keys[order]
    v = values[order]
    counts = np.bincount(keys, minlength=ncod)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    rank = np.arange(k.size) - starts[k]
    M = np.full((ncod, int(counts.max())), unit, dtype=np.int64)
    M[k, rank] = v
    for c in range(M.shape[1]):
        out = op[out, M[:, c]]
    return out


class FamTripos(TriposInstance):
    """The family tripos of a finite Heyting algebra A over finite sets."""

    def __init__(self, A: FiniteHeyting, guard: int = GUARD):
        self.A = A
        self.base = FINSET
        self.guard = guard
        self.name = f"fam({A.name or 'A'})"
        self._powers: dict[int, tuple] = {}

    # convenience
    def pred(self, X, values) -> FamPredicate:
        if isinstance(X, int):
            X = FinObj(X)
        return FamPredicate(X, [self.A.index(v) for v in values])

    def const(self, X, a) -> FamPredicate:
        return FamPredicate(X, np.full(X.size, self.A.index(a), dtype=np.int64))

    def _same(self, phi, psi):
        if phi.over != psi.over:
            raise TypeMismatch(f"predicates over {phi.over} and {psi.over}")

    def entails(self, phi, psi) -> bool:
        self._same(phi, psi)
        return bool(np.all(self.A.leq[phi.values, psi.values]))

    def pred_equal(self, phi, psi) -> bool:
        self._same(phi, psi)
        return bool(np.array_equal(phi.values, psi.values))

    def countermodel(self, phi, psi):
        bad = np.nonzero(~self.A.leq[phi.values, psi.values])[0]
        return int(bad[0]) if bad.size else None

    def top(self, X):
        return self.const(X, self.A.top)

    def bot(self, X):
        return self.const(X, self.A.bot)

    def and_(self, phi, psi):
        self._same(phi, psi)
        return FamPredicate(phi.over, self.A.meet[phi.values, psi.values])

    def or_(self, phi, psi):
        self._same(phi, psi)
        return FamPredicate(phi.over, self.A.join[phi.values, psi.values])

    def imp(self, phi, psi):
        self._same(phi, psi)
        return FamPredicate(phi.over, self.A.imp[phi.values, psi.values])

    def reindex(self, f: FinMap, phi):
        if f.cod != phi.over:
            raise TypeMismatch(f"reindexing {phi} along {f}")
        return FamPredicate(f.dom, phi.values[f.table])

    def exists_along(self, f: FinMap, phi):
        if f.dom != phi.over:
            raise TypeMismatch(f"quantifying {phi} along {f}")
        return FamPredicate(f.cod, group_reduce(self.A.join, self.A.bot, phi.values,
                                                f.table, f.cod.size))

    def forall_along(self, f: FinMap, phi):
        if f.dom != phi.over:
            raise TypeMismatch(f"quantifying {phi} along {f}")
        return FamPredicate(f.cod, group_reduce(self.A.meet, self.A.top, phi.values,
                                                f.table, f.cod.size))

    def _functions(self, n: int) -> np.ndarray:
        """Row p lists the values of the p-th function n -> A (first point most significant)."""
        a = self.A.size
        count = a ** n
        if count > self.guard:
            raise SizeGuard(f"power object of a {n}-set over {a} truth values has "
                            f"{count} elements (guard {self.guard})")
        p = np.arange(count, dtype=np.int64)
        weights = a ** np.arange(n - 1, -1, -1, dtype=np.int64)
        return (p[:, None] // weights[None, :]) % a

    def power(self, X: FinObj):
        hit = self._powers.get(X.size)
        if hit is None:
            funcs = self._functions(X.size)
            PX = FinObj(funcs.shape[0])
            mem = FamPredicate(FinObj(PX.size * X.size), funcs.reshape(-1))
            hit = (PX, mem)
            self._powers[X.size] = hit
        return hit

    def chi(self, C: FinObj, X: FinObj, phi) -> FinMap:
        if phi.over.size != C.size * X.size:
            raise TypeMismatch("chi expects a predicate over C x X")
        PX, _ = self.power(X)
        a = self.A.size
        weights = a ** np.arange(X.size - 1, -1, -1, dtype=np.int64)
        vals = phi.values.reshape(C.size, X.size)
        return FinMap(C, PX, vals @ weights if X.size else np.zeros(C.size, dtype=np.int64))

    def enumerate_preds(self, X: FinObj):
        count = self.A.size ** X.size
        if count > self.guard:
            raise SizeGuard(f"{count} predicates exceed guard")
        for vals in itertools.product(range(self.A.size), repeat=X.size):
            yield FamPredicate(X, np.array(vals, dtype=np.int64))

    def value(self, phi, i: int) -> int:
        return int(phi.values[i])

    def show(self, phi) -> str:
        return "[" + ",".join(self.A.elems[v] for v in phi.values) + "]"


def fam_tripos(A: FiniteHeyting, guard: int = GUARD) -> FamTripos:
    return FamTripos(A, guard)


# ---------------------------------------------------------------------------
# law checks
# ---------------------------------------------------------------------------

def _preds(T, X, sample):
    if sample is not None:
        return list(sample)
    return list(T.enumerate_preds(X))


def check_adjunctions(T, f, src_sample=None, tgt_sample=None) -> LawReport:
    """exists_f -| f* -| forall_f, over all (or the sampled) predicates."""
    B = T.base
    rep = LawReport("adjunctions")
    phis = _preds(T, B.dom(f), src_sample)
    psis = _preds(T, B.cod(f), tgt_sample)
    left = right = None
    for phi in phis:
        ex = T.exists_along(f, phi)
        fa = None
        for psi in psis:
            fpsi = T.reindex(f, psi)
            if left is None and T.entails(ex, psi) != T.entails(phi, fpsi):
                left = f"phi={phi}, psi={psi}"
            if right is None:
                if fa is None:
                    fa = T.forall_along(f, phi)
                if T.entails(fpsi, phi) != T.entails(psi, fa):
                    right = f"phi={phi}, psi={psi}"
    rep.add("exists-left-adjoint", left is None, left or "")
    rep.add("forall-right-adjoint", right is None, right or "")
    return rep


def check_beck_chevalley(T, f, g, phi) -> bool:
    """Q_{A x g}((f x X)* phi) = (f x Y)* (Q_{B x g} phi) for Q in {exists, forall}."""
    B = T.base
    A_, Bo = B.dom(f), B.cod(f)
    X, Y = B.dom(g), B.cod(g)
    BX, _, _ = B.product(Bo, X)
    if T.over(phi) != BX:
        raise TypeMismatch("Beck-Chevalley expects phi over B x X")
    fX = B.product_map(f, B.identity(X))
    fY = B.product_map(f, B.identity(Y))
    Ag = B.product_map(B.identity(A_), g)
    Bg = B.product_map(B.identity(Bo), g)
    for Q in (T.exists_along, T.forall_along):
        if not T.pred_equal(Q(Ag, T.reindex(fX, phi)), T.reindex(fY, Q(Bg, phi))):
            return False
    return True


def check_frobenius(T, f, phi, psi) -> bool:
    """exists_f(phi /\\ f* psi) = exists_f phi /\\ psi."""
    lhs = T.exists_along(f, T.and_(phi, T.reindex(f, psi)))
    return T.pred_equal(lhs, T.and_(T.exists_along(f, phi), psi))


def check_power_object(T, X, C, phi) -> bool:
    """phi = (chi(phi) x X)* mem."""
    B = T.base
    PX, mem = T.power(X)
    c = T.chi(C, X, phi)
    return T.pred_equal(phi, T.reindex(B.product_map(c, B.identity(X)), mem))


def check_reindex_connectives(T, f, phi, psi) -> bool:
    """Reindexing along f preserves top, bottom, and binary connectives."""
    B = T.base
    X = B.cod(f)
    ok = (T.pred_equal(T.reindex(f, T.top(X)), T.top(B.dom(f)))
          and T.pred_equal(T.reindex(f, T.bot(X)), T.bot(B.dom(f))))
    for op in (T.and_, T.or_, T.imp):
        ok = ok and T.pred_equal(T.reindex(f, op(phi, psi)),
                                 op(T.reindex(f, phi), T.reindex(f, psi)))
    return ok


def _maps_up_to(B, max_size):
    objs = B.objects(max_size)
    for X in objs:
        for Y in objs:
            yield from B.homs(X, Y)


def tripos_law_suite(T, max_size: int = 2) -> LawReport:
    """Exhaustive tripos laws over all maps between sets of size <= max_size."""
    B = T.base
    rep = LawReport(f"tripos:{T.name}")
    maps = list(_maps_up_to(B, max_size))
    objs = B.objects(max_size)
    fibers = {X: list(T.enumerate_preds(X)) for X in objs}
    counts = dict(adj=0, reidx=0, frob=0, bc=0, power=0, heyting=0)
    wit: dict[str, str] = {}

    def fail(key, msg):
        wit.setdefault(key, msg)

    # fibers are Heyting algebras (residuation)
    for X in objs:
        for a, b, c in itertools.product(fibers[X], repeat=3):
            counts["heyting"] += 1
            if T.entails(T.and_(c, a), b) != T.entails(c, T.imp(a, b)):
                fail("fiber-residuation", f"over {X}: c={c} a={a} b={b}")
    for f in maps:
        src, tgt = fibers[f.dom], fibers[f.cod]
        r = check_adjunctions(T, f, src, tgt)
        counts["adj"] += len(src) * len(tgt)
        for e in r.failures():
            fail(e.check_id, f"f={f}: {e.witness}")
        for phi in tgt:
            for psi in tgt:
                counts["reidx"] += 1
                if not check_reindex_connectives(T, f, phi, psi):
                    fail("reindex-connectives", f"f={f} phi={phi} psi={psi}")
        for phi in src:
            for psi in tgt:
                counts["frob"] += 1
                if not check_frobenius(T, f, phi, psi):
                    fail("frobenius", f"f={f} phi={phi} psi={psi}")
    for f in maps:
        for g in maps:
            BX, _, _ = B.product(f.cod, g.dom)
            if BX.size > max_size ** 2:
                continue
            for phi in T.enumerate_preds(BX):
                counts["bc"] += 1
                if not check_beck_chevalley(T, f, g, phi):
                    fail("beck-chevalley", f"f={f} g={g} phi={phi}")
    for C in objs:
        for X in objs:
            CX, _, _ = B.product(C, X)
            for phi in T.enumerate_preds(CX):
                counts["power"] += 1
                if not check_power_object(T, X, C, phi):
                    fail("power-object", f"C={C} X={X} phi={phi}")
    for X in objs:
        counts["eq"] = counts.get("eq", 0) + 1
        d = T.reindex(B.diagonal(X), T.eq(X))
        if not T.pred_equal(d, T.top(X)):
            fail("eq-reflexive", f"over {X}")
    names = {
        "fiber-residuation": "heyting", "exists-left-adjoint": "adj",
        "forall-right-adjoint": "adj", "reindex-connectives": "reidx",
        "frobenius": "frob", "beck-chevalley": "bc", "power-object": "power",
        "eq-reflexive": "eq",
    }
    for key, cnt in names.items():
        w = wit.get(key)
        rep.add(f"{T.name}.{key}", w is None, w or f"{counts[cnt]} instances")
    return rep


# ---------------------------------------------------------------------------
# morphisms and transformations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TriposMorphism:
    """(F, Phi): objects, morphisms, predicates, plus product comparisons.

    ``prodcmp(X, Y)`` is the iso ``F X x F Y -> F(X x Y)``.
    """

    src: TriposInstance
    tgt: TriposInstance
    objmap: Callable
    mormap: Callable
    fibmap: Callable
    prodcmp: Callable
    name: str = ""

    def obj(self, X):
        return self.objmap(X)

    def mor(self, f):
        return self.mormap(f)

    def fib(self, phi):
        return self.fibmap(phi)

    def fib_ctx(self, X, Y, phi):
        """Phi over a binary product: sigma* (Phi phi) over F X x F Y."""
        return self.tgt.reindex(self.prodcmp(X, Y), self.fibmap(phi))

    def __repr__(self):
        return f"<TriposMorphism {self.name}: {self.src.name} -> {self.tgt.name}>"


def fam_morphism(h: LatticeMap, src: FamTripos | None = None,
                 tgt: FamTripos | None = None) -> TriposMorphism:
    """fam(h) for a meet-preserving h: identity on the base, Phi = h o phi."""
    if not is_meet_hom(h):
        raise NotMeetHom(f"{h.name or 'map'} does not preserve finite meets")
    src = src or FamTripos(h.dom)
    tgt = tgt or FamTripos(h.cod)
    if src.A != h.dom or tgt.A != h.cod:
        raise TypeMismatch("fam_morphism: triposes do not match the map")
    table = h.table
    ident = FINSET.identity
    return TriposMorphism(
        src, tgt,
        objmap=lambda X: X,
        mormap=lambda f: f,
        fibmap=lambda phi: FamPredicate(phi.over, table[phi.values]),
        prodcmp=lambda X, Y: ident(FINSET.product(X, Y)[0]),
        name=f"fam({h.name or 'h'})")


def identity_morphism(T: TriposInstance) -> TriposMorphism:
    B = T.base
    return TriposMorphism(T, T, lambda X: X, lambda f: f, lambda phi: phi,
                          lambda X, Y: B.identity(B.product(X, Y)[0]), name="id")


def compose_morphisms(n: TriposMorphism, m: TriposMorphism) -> TriposMorphism:
    """n after m."""
    if m.tgt is not n.src:
        raise TypeMismatch("tripos morphisms are not composable")
    B = n.tgt.base

    def prodcmp(X, Y):
        s_n = n.prodcmp(m.obj(X), m.obj(Y))
        return B.compose(n.mor(m.prodcmp(X, Y)), s_n)

    return TriposMorphism(m.src, n.tgt, lambda X: n.obj(m.obj(X)),
                          lambda f: n.mor(m.mor(f)), lambda phi: n.fib(m.fib(phi)),
                          prodcmp, name=f"{n.name}.{m.name}")


def _default_sample(T, max_size=2):
    B = T.base
    for f in _maps_up_to(B, max_size):
        for phi in T.enumerate_preds(B.dom(f)):
            yield f, phi


def is_regular_morphism(m: TriposMorphism, sample=None) -> bool:
    """Phi(exists_f phi) = exists_{Ff}(Phi phi) on all sampled (f, phi)."""
    S, T = m.src, m.tgt
    for f, phi in (sample if sample is not None else _default_sample(S)):
        lhs = m.fib(S.exists_along(f, phi))
        rhs = T.exists_along(m.mor(f), m.fib(phi))
        if not T.pred_equal(lhs, rhs):
            return False
    return True


def check_tripos_morphism(m: TriposMorphism, sample=None) -> LawReport:
    """Phi commutes with reindexing and preserves finite meets (sampled)."""
    S, T = m.src, m.tgt
    rep = LawReport(f"morphism:{m.name}")
    bad_r = bad_m = None
    for f, phi in (sample if sample is not None else _default_sample(S)):
        psi = phi
        X = S.base.dom(f)
        if bad_r is None:
            Y = S.base.cod(f)
            for chi_ in S.enumerate_preds(Y):
                if not T.pred_equal(m.fib(S.reindex(f, chi_)), T.reindex(m.mor(f), m.fib(chi_))):
                    bad_r = f"f={f} psi={chi_}"
                    break
        if bad_m is None:
            if not T.pred_equal(m.fib(S.top(X)), T.top(m.obj(X))):
                bad_m = f"top over {X}"
            elif not T.pred_equal(m.fib(S.and_(phi, psi)), T.and_(m.fib(phi), m.fib(psi))):
                bad_m = f"meet at {phi}"
    rep.add("reindexing", bad_r is None, bad_r or "")
    rep.add("meets", bad_m is None, bad_m or "")
    return rep


@dataclass(frozen=True, eq=False)
class TriposTransformation:
    """Components eta_C : F C -> G C between two tripos morphisms."""

    src: TriposMorphism
    tgt: TriposMorphism
    component: Callable
    name: str = ""

    def at(self, X):
        return self.component(X)


def identity_transformation(m: TriposMorphism) -> TriposTransformation:
    B = m.tgt.base
    return TriposTransformation(m, m, lambda X: B.identity(m.obj(X)), name="id")


def check_transformation(theta: TriposTransformation, maps, preds) -> LawReport:
    """Naturality on sampled maps and the 2-cell law Phi psi |- eta* Gamma psi."""
    F, G = theta.src, theta.tgt
    T = F.tgt
    B = T.base
    rep = LawReport(f"transformation:{theta.name}")
    bad = None
    for f in maps:
        lhs = B.compose(G.mor(f), theta.at(F.src.base.dom(f)))
        rhs = B.compose(theta.at(F.src.base.cod(f)), F.mor(f))
        if not B.mor_equal(lhs, rhs):
            bad = f"naturality fails at {f}"
            break
    rep.add("naturality", bad is None, bad or "")
    bad = None
    for psi in preds:
        X = F.src.over(psi)
        if not T.entails(F.fib(psi), T.reindex(theta.at(X), G.fib(psi))):
            bad = f"2-cell law fails at {psi}"
            break
    rep.add("two-cell", bad is None, bad or "")
    return rep


def fam_transformation(src: TriposMorphism, tgt: TriposMorphism, name: str = "") -> TriposTransformation:
    """The identity-component transformation between two fam morphisms."""
    return TriposTransformation(src, tgt, lambda X: FINSET.identity(X), name=name)


def check_judgment_preservation(m: TriposMorphism, judgment, interp) -> bool:
    """Corollary-style check: a valid judgment stays valid under m.

    Only the meet fragment (plus exists and = when m is regular) is allowed.
    """
    from .hol.semantics import holds, translate_interpretation
    from .hol.syntax import formula_nodes

    regular = is_regular_morphism(m)
    allowed = {"Top", "And", "Rel"}
    if regular:
        allowed |= {"Exists", "Eq"}
    for phi in list(judgment.hyps) + [judgment.concl]:
        for node in formula_nodes(phi):
            kind = type(node).__name__
            if kind not in allowed:
                raise FragmentViolation(
                    f"{kind} is outside the fragment preserved by "
                    f"{'a regular' if regular else 'a non-regular'} morphism {m.name}")
    if not holds(interp, judgment):
        return True
    return bool(holds(translate_interpretation(interp, m), judgment))
