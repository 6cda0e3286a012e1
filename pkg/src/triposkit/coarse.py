"""Coarse objects of F(P), the reflection J onto them, and the functor T.

An object is coarse when every monic-epic map into it lifts uniquely.  The
reflection of A is the image of the singleton map ``A -> PA``; A is coarse
exactly when the unit of this reflection is invertible.  T acts on
functors by ``T F = J . F . I`` where I is the (identity) inclusion of the
coarse objects; its oplax constraint cells are computed explicitly.

Everything that builds power objects or searches hom-sets needs a fam
instance underneath.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .basecat import FinMap, FinObj, TypeMismatch
from .pertopos import (CompatPred, PerMor, PerObj, QFunctor, QTopos, compose_functors,
                       compress, cocover_tripos, identity_functor)
from .reports import LawReport
from .tripos import FamPredicate


class NotCoarse(ValueError):
    """An operation needing a coarse object was given another one."""


@dataclass(frozen=True)
class Reflection:
    """J A with its unit.

    A is first compressed to A' (``pre``, inverse ``pre_back``).  ``raw`` is
    the image of the singleton map A' -> PA', kept only on its supported
    points: ``points[i]`` is the index in PA' of the i-th point of ``raw``.
    ``coarse`` is a compressed copy of ``raw`` with inverse isomorphisms
    ``lift: raw -> coarse`` and ``drop: coarse -> raw``.
    """

    source: PerObj
    coarse: PerObj
    unit: PerMor
    raw: PerObj
    points: np.ndarray
    lift: PerMor
    drop: PerMor
    pre: PerMor
    pre_back: PerMor


def _cache(H) -> dict:
    c = getattr(H, "_reflect_cache", None)
    if c is None:
        c = {}
        H._reflect_cache = c
    return c


def _power_pieces(T, Y: PerObj):
    """Functions n -> A, the singletons, and the power PER evaluated at them.

    Returns ``(funcs, sing, c12, c3)`` where ``c12[m]`` is the part of
    ``Prho(m, m')`` depending on m alone and ``c3(m, m')`` is extensional
    equality, passed as a function on index arrays.
    """
    A = T.A
    n = Y.base.size
    r = Y.rho.values.reshape(n, n)
    funcs = T._functions(n)
    weights = A.size ** np.arange(n - 1, -1, -1, dtype=np.int64)
    sing = r @ weights if n else np.zeros(0, dtype=np.int64)
    c12 = np.full(funcs.shape[0], A.top, dtype=np.int64)
    for x in range(n):
        c12 = A.meet[c12, A.imp[funcs[:, x], r[x, x]]]
        for y in range(n):
            c12 = A.meet[c12, A.imp[A.meet[funcs[:, x], r[x, y]], funcs[:, y]]]

    def c3(ms, ns):
        out = np.full(np.broadcast(ms, ns).shape, A.top, dtype=np.int64)
        for z in range(n):
            a, b = funcs[ms, z], funcs[ns, z]
            out = A.meet[out, A.meet[A.imp[a, b], A.imp[b, a]]]
        return out

    return funcs, sing, c12, c3


def reflect(H: QTopos, A: PerObj) -> Reflection:
    """Factor the singleton map of A through its image and compress.

    Only the points of PA' in the support of the image are materialized.
    """
    cache = _cache(H)
    hit = cache.get(A)
    if hit is not None:
        return hit
    T = H._fam()
    L = T.A
    Y, to, back = compress(H, A)
    n = Y.base.size
    r = Y.rho.values.reshape(n, n)
    funcs, sing, c12, c3 = _power_pieces(T, Y)
    allm = np.arange(funcs.shape[0])
    # psi(m) = exists x. r(x, x) /\ Prho({x}, m)
    psi = np.full(allm.size, L.bot, dtype=np.int64)
    for x in range(n):
        prx = L.meet[c12[sing[x]], c3(np.full(allm.size, sing[x]), allm)]
        psi = L.join[psi, L.meet[r[x, x], prx]]
    pts = np.union1d(np.nonzero(psi != L.bot)[0], sing).astype(np.int64)
    if pts.size == 0:
        # dropping unsupported points is iso only while one point remains
        pts = np.zeros(1, dtype=np.int64)
    k = pts.size
    mm, nn = np.meshgrid(pts, pts, indexing="ij")
    prho = L.meet[L.meet[c12[mm], c3(mm, nn)], L.meet[psi[mm], psi[nn]]]
    raw = PerObj(FinObj(k), FamPredicate(FinObj(k * k), prho.reshape(-1)))
    e = PerMor(Y, raw, FinMap(Y.base, raw.base, np.searchsorted(pts, sing)))
    C, lift, drop = compress(H, raw)
    unit = H.compose(lift, H.compose(e, to))
    R = Reflection(A, C, unit, raw, pts, lift, drop, to, back)
    cache[A] = R
    return R


def cocover_leg(H: QTopos, R: Reflection) -> PerMor:
    """The inclusion raw -> PA' as a morphism into the full power object."""
    Y = R.pre.cod
    PY, _ = H.power_object(Y)
    return PerMor(R.raw, PY, FinMap(R.raw.base, PY.base, R.points))


def check_reflection(H: QTopos, A: PerObj) -> bool:
    """Compare the sparse construction with the image factorization in PA'."""
    R = reflect(H, A)
    Y = R.pre.cod
    YY = H.product(Y, Y)[0]
    s = H.chi(Y, Y, CompatPred(YY, Y.rho))
    _, m = H.image_factorization(s)
    leg = cocover_leg(H, R)
    ok = H.is_cocover(leg) and H.mor_wellformed(leg)
    # raw carries exactly the restriction of the image PER to its points
    img = m.dom.rho.values.reshape(m.dom.base.size, -1)
    sub = img[np.ix_(R.points, R.points)].reshape(-1)
    ok = ok and np.array_equal(sub, R.raw.rho.values)
    # and every supported point of the image is kept
    diag = np.diag(img)
    keep = set(R.points.tolist())
    return bool(ok and all(d == H.T.A.bot or i in keep for i, d in enumerate(diag)))


def _outputs(H) -> set:
    c = getattr(H, "_coarse_outputs", None)
    if c is None:
        c = set()
        H._coarse_outputs = c
    return c


def J_unit(H: QTopos, A: PerObj) -> PerMor:
    """The chosen unit A -> J A.

    Objects produced by J are coarse, so J is chosen to be the identity on
    them; this keeps iterated reflections at their original size.
    """
    memo = getattr(H, "_unit_memo", None)
    if memo is None:
        memo = H._unit_memo = {}
    hit = memo.get(A)
    if hit is not None:
        return hit
    if A in _outputs(H):
        u = H.identity(A)
    else:
        u = reflect(H, A).unit
        if u.cod == A:
            u = H.identity(A)
        _outputs(H).add(u.cod)
    memo[A] = u
    return u


def J_object(H: QTopos, A: PerObj) -> PerObj:
    return J_unit(H, A).cod


def is_coarse(H: QTopos, A: PerObj) -> bool:
    """True iff the reflection unit at A has an inverse."""
    return H.inverse(reflect(H, A).unit) is not None


def counit(H: QTopos, A: PerObj) -> PerMor:
    """For coarse A, the inverse J A -> A of the chosen unit."""
    inv = H.inverse(J_unit(H, A))
    if inv is None:
        raise NotCoarse(f"{A} is not coarse")
    return inv


def J_morphism(H: QTopos, f: PerMor) -> PerMor:
    """The unique Jf : JX -> JY with Jf . eta_X = eta_Y . f, found by search."""
    T = H._fam()
    A = T.A
    le = A.leq
    uX, uY = J_unit(H, f.dom), J_unit(H, f.cod)
    k = H.compose(uY, f)
    X = f.dom
    n = X.base.size
    rho = X.rho.values.reshape(n, n)
    JY = uY.cod
    m = JY.base.size
    sig = JY.rho.values.reshape(m, m)
    pre: dict[int, list[int]] = {}
    for x in range(n):
        if rho[x, x] != A.bot:
            pre.setdefault(int(uX.rep.table[x]), []).append(x)
    kt = k.rep.table

    def unary(p, d):
        return all(le[rho[x, x], sig[d, kt[x]]] for x in pre.get(p, ()))

    for r in H.candidate_reps(uX.cod, JY, unary=unary, limit=1):
        return PerMor(uX.cod, JY, r)
    raise NotCoarse(f"no lift of {f} through the reflection")


def J_morphism_formula(H: QTopos, f: PerMor) -> PerMor:
    """Jf between the genuine reflections, computed through power objects.

    On a point m of the image, Jf(m) classifies
    ``d |-> exists a. rho'(a, a) /\\ m ~ {a} /\\ d in eta_Y(f a)``.
    """
    T = H._fam()
    A = T.A
    RX, RY = reflect(H, f.dom), reflect(H, f.cod)
    # the compressed copy X' and the rep back into X
    Xc = RX.pre.cod
    nX = Xc.base.size
    back = RX.pre_back.rep.table
    # k : X' -> PY', the singleton of f(a)
    raw = RX.raw
    nm = raw.base.size
    Yc = RY.pre.cod
    nY = Yc.base.size
    singY = T.chi(Yc.base, Yc.base, Yc.rho).table
    k = singY[RY.pre.rep.table[f.rep.table[back]]] if nX else np.zeros(0, np.int64)
    memv = T._functions(nY)
    rhoX = Xc.rho.values.reshape(nX, nX) if nX else np.zeros((0, 0), np.int64)
    sing = np.searchsorted(RX.points, T.chi(Xc.base, Xc.base, Xc.rho).table)
    Prho = raw.rho.values.reshape(nm, nm)
    val = np.full((nm, nY), A.bot, dtype=np.int64)
    for a in range(nX):
        da = rhoX[a, a]
        if da == A.bot:
            continue
        w = A.meet[da, Prho[sing[a], :]]  # over m
        val = A.join[val, A.meet[w[:, None], memv[k[a]][None, :]]]
    g = T.chi(raw.base, Yc.base, FamPredicate(T.base.product(raw.base, Yc.base)[0],
                                               val.reshape(-1))).table
    # a classified function outside the kept points is unsupported
    pos = np.searchsorted(RY.points, g)
    pos = np.minimum(pos, RY.points.size - 1)
    pos = np.where(RY.points[pos] == g, pos, 0)
    rep_raw = PerMor(raw, RY.raw, FinMap(raw.base, RY.raw.base, pos))
    out = H.compose(RY.lift, H.compose(rep_raw, RX.drop))
    return out


def reflector(H: QTopos) -> QFunctor:
    """J as an endofunctor of F(P), landing in the coarse objects."""
    return QFunctor(H, H, lambda X: J_object(H, X), lambda f: J_morphism(H, f),
                    name="J", regular=True)


def check_J_morphism(H: QTopos, f: PerMor) -> bool:
    """Jf is well defined and makes the unit square commute."""
    Jf = J_morphism(H, f)
    return (H.mor_wellformed(Jf)
            and H.mor_equal(H.compose(Jf, J_unit(H, f.dom)), H.compose(J_unit(H, f.cod), f)))


# ---------------------------------------------------------------------------
# T on objects, functors and transformations
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class ConstraintCell:
    """A natural transformation presented by its components."""

    src: object
    tgt: object
    component: Callable
    name: str = ""

    def at(self, X) -> PerMor:
        return self.component(X)


def T_object(H: QTopos, A: PerObj) -> PerObj:
    return J_object(H, A)


def T_functor(F: QFunctor) -> QFunctor:
    """T F = J . F . I (I is the identity assignment on coarse objects)."""
    K = F.tgt
    return QFunctor(F.src, K, lambda X: J_object(K, F.obj(X)),
                    lambda f: J_morphism(K, F.mor(f)), name=f"T{F.name}", regular=F.regular)


def T_2cell(theta: ConstraintCell, K: QTopos) -> ConstraintCell:
    """T theta = J theta I."""
    return ConstraintCell(theta.src, theta.tgt, lambda A: J_morphism(K, theta.at(A)),
                          name=f"T{theta.name}")


def t_composition_constraint(G: QFunctor, F: QFunctor) -> ConstraintCell:
    """T(GF) -> TG.TF with component J(G eta_{FA}) : JGFA -> JGJFA."""
    H = F.tgt
    K = G.tgt

    def comp(A):
        return J_morphism(K, G.mor(J_unit(H, F.obj(A))))

    return ConstraintCell(T_functor(compose_functors(G, F)),
                          compose_functors(T_functor(G), T_functor(F)), comp,
                          name=f"c[{G.name},{F.name}]")


def t_identity_constraint(H: QTopos) -> ConstraintCell:
    """T(Id) -> Id on coarse objects: the inverse of the unit."""
    return ConstraintCell(T_functor(identity_functor(H)), identity_functor(H),
                          lambda A: counit(H, A), name="iota")


def check_nat_inv(G: QFunctor, C: PerObj) -> bool:
    """Is J(G eta_C) : JGC -> JGJC invertible?"""
    H, K = G.src, G.tgt
    c = J_morphism(K, G.mor(J_unit(H, C)))
    return K.inverse(c) is not None


def check_oplax_coherence(K: QFunctor, G: QFunctor, F: QFunctor, A: PerObj) -> bool:
    """Associativity of the composition constraints at A."""
    HF, HG, HK = F.tgt, G.tgt, K.tgt
    cGF = t_composition_constraint(G, F)
    cK_GF = t_composition_constraint(K, compose_functors(G, F))
    cKG_F = t_composition_constraint(compose_functors(K, G), F)
    cKG = t_composition_constraint(K, G)
    TK = T_functor(K)
    left = HK.compose(TK.mor(cGF.at(A)), cK_GF.at(A))
    right = HK.compose(cKG.at(J_object(HF, F.obj(A))), cKG_F.at(A))
    del HG
    return HK.mor_equal(left, right)


def check_oplax_unit(F: QFunctor, A: PerObj) -> bool:
    """TF(iota_A) . c[F, Id]_A = id and iota_{TFA} . c[Id, F]_A = id, at coarse A."""
    H, K = F.src, F.tgt
    c1 = t_composition_constraint(F, identity_functor(H)).at(A)
    left = K.compose(T_functor(F).mor(counit(H, A)), c1)
    ok1 = K.mor_equal(left, K.identity(left.dom))
    c2 = t_composition_constraint(identity_functor(K), F).at(A)
    right = K.compose(counit(K, J_object(K, F.obj(A))), c2)
    ok2 = K.mor_equal(right, K.identity(right.dom))
    return ok1 and ok2


# ---------------------------------------------------------------------------
# the topos of coarse objects
# ---------------------------------------------------------------------------

def coarse_objects(H: QTopos, max_size: int = 2):
    return [X for X in H.objects(max_size) if is_coarse(H, X)]


def topos_checks(H: QTopos, max_size: int = 2, extra=()) -> LawReport:
    """Reflection laws and topos properties on the coarse fragment."""
    rep = LawReport(f"coarse:{H.name}")
    wit: dict[str, str] = {}
    cnt: dict[str, int] = {}

    def note(key, ok, msg):
        cnt[key] = cnt.get(key, 0) + 1
        if not ok:
            wit.setdefault(key, msg)

    objs = list(H.objects(max_size)) + list(extra)
    coarse = []
    for X in objs:
        R = reflect(H, X)
        note("unit-monic-epic", H.is_mono(R.unit) and H.is_epi(R.unit), f"{X}")
        note("reflection-coarse", is_coarse(H, R.coarse), f"{X}")
        note("idempotent", H.inverse(reflect(H, R.coarse).unit) is not None, f"{X}")
        note("cocover-leg", check_reflection(H, X), f"{X}")
        # eps_J . J eta = id for the chosen units
        u = J_unit(H, X)
        Jeta = J_morphism(H, u)
        note("reflection-triangle", H.mor_equal(H.compose(counit(H, u.cod), Jeta),
                                                H.identity(u.cod)), f"{X}")
        if is_coarse(H, X):
            coarse.append(X)
            note("counit-unit", H.mor_equal(H.compose(counit(H, X), u), H.identity(X)),
                 f"{X}")
    # power objects are coarse
    one = H.terminal()
    for X in [one] + [X for X in coarse if X.base.size <= 1]:
        PX, _ = H.power_object(X)
        note("power-coarse", is_coarse(H, PX), f"P{X}")
    # finite limits of coarse objects are coarse and preserved by J
    note("terminal-coarse", is_coarse(H, one), "1")
    for X, Y in itertools.product(coarse, repeat=2):
        XY = H.product(X, Y)[0]
        note("product-coarse", is_coarse(H, XY), f"{X} x {Y}")
    for X, Y in itertools.product(objs, repeat=2):
        if X.base.size * Y.base.size > 4:
            continue
        XY, p1, p2 = H.product(X, Y)
        JXY, q1, q2 = H.product(J_object(H, X), J_object(H, Y))
        cmp_ = H.pairing(J_morphism(H, p1), J_morphism(H, p2))
        note("J-products", H.inverse(cmp_) is not None, f"{X} x {Y}")
    S = cocover_tripos(H)
    for X in coarse:
        for p in S.enumerate_preds(X):
            note("subobject-coarse", is_coarse(H, H.compat_to_cocover(p).dom), f"{p} on {X}")
    # maps: epis, equalizers, monos-are-cocovers, balance
    for X, Y in itertools.product(objs, repeat=2):
        both = X in coarse and Y in coarse
        hs = H.homs(X, Y)
        for f in hs:
            Jf = J_morphism(H, f)
            note("J-wellformed", check_J_morphism(H, f), f"{f}: {X} -> {Y}")
            if X.base.size <= 2 and Y.base.size <= 2:
                g = J_morphism_formula(H, f)
                RX, RY = reflect(H, X), reflect(H, Y)
                note("J-formula", H.mor_wellformed(g) and H.mor_equal(
                    H.compose(g, RX.unit), H.compose(RY.unit, f)), f"{f}: {X} -> {Y}")
            if H.is_epi(f):
                note("J-epi", H.is_epi(Jf), f"{f}: {X} -> {Y}")
            if both:
                mono, epi = H.is_mono(f), H.is_epi(f)
                if mono:
                    note("mono-is-cocover", H.is_cocover(f), f"{f}: {X} -> {Y}")
                if mono and epi:
                    note("balanced", H.inverse(f) is not None, f"{f}: {X} -> {Y}")
        if X.base.size <= 2 and Y.base.size <= 2:
            for f, g in itertools.combinations(hs, 2):
                E, e = H.equalizer(f, g)
                JE, je = H.equalizer(J_morphism(H, f), J_morphism(H, g))
                # comparison J E -> equalizer of (Jf, Jg) factors J e through je
                Je = J_morphism(H, e)
                cmp_ = PerMor(J_object(H, E), JE, Je.rep)
                ok = H.mor_wellformed(cmp_) and H.inverse(cmp_) is not None
                note("J-equalizers", ok, f"{f}, {g}: {X} -> {Y}")
    for key in sorted(cnt):
        w = wit.get(key)
        rep.add(key, w is None, w or f"{cnt[key]} instances")
    return rep


__all__ = [
    "NotCoarse", "Reflection", "reflect", "J_unit", "J_object", "J_morphism",
    "J_morphism_formula", "is_coarse", "counit", "cocover_leg", "check_reflection",
    "reflector", "check_J_morphism", "ConstraintCell", "T_object", "T_functor", "T_2cell",
    "t_composition_constraint", "t_identity_constraint", "check_nat_inv",
    "check_oplax_coherence", "check_oplax_unit", "coarse_objects", "topos_checks",
]
