"""The category F(P) of partial equivalence relations over a tripos.

Objects are pairs ``(C, rho)`` with rho a symmetric, transitive predicate on
``C x C``; morphisms are base maps that respect the relations, identified
when they agree on the support.  Everything here is written against the
:class:`~triposkit.tripos.TriposInstance` interface; the hom-set search and
:func:`compress` additionally use the pointwise structure of fam instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .basecat import GUARD, FinMap, FinObj, SizeGuard, TypeMismatch
from .reports import LawReport
from .tripos import FamPredicate, FamTripos, TriposInstance


class NotAPer(ValueError):
    pass


class NotCompatible(ValueError):
    pass


class NotStrongEqRel(ValueError):
    pass


class NotWellDefined(ValueError):
    pass


@dataclass(frozen=True)
class PerObj:
    base: object
    rho: object

    def __repr__(self):
        return f"PerObj({self.base}, {self.rho})"


@dataclass(frozen=True)
class PerMor:
    dom: PerObj
    cod: PerObj
    rep: object

    def __repr__(self):
        rep = self.rep.tolist() if hasattr(self.rep, "tolist") else self.rep
        return f"PerMor({rep})"


@dataclass(frozen=True)
class CompatPred:
    over: PerObj
    phi: object

    def __repr__(self):
        return f"CompatPred({self.phi})"


def _ctx(B, *objs):
    """Left-associated product of objs with its projections (in order)."""
    if not objs:
        return B.terminal(), []
    o, projs = objs[0], [B.identity(objs[0])]
    for nxt in objs[1:]:
        o, p1, p2 = B.product(o, nxt)
        projs = [B.compose(p, p1) for p in projs] + [p2]
    return o, projs


class QTopos:
    """Handle for F(T) with chosen finite limits, quotients and power objects.

    Exposes the base-category method names of
    :class:`~triposkit.basecat.FinSetCat` so triposes over F(T) (the
    cocover tripos) can use it as their base.
    """

    def __init__(self, T: TriposInstance, guard: int = GUARD):
        self.T = T
        self.B = T.base
        self.guard = guard
        self.name = f"F({T.name})"
        self._power: dict = {}

    def __repr__(self):
        return f"<{self.name}>"

    # -- internal-logic helpers --------------------------------------------------
    def at(self, rho, f, g):
        """rho(f(-), g(-)) as a predicate over the common domain of f and g."""
        return self.T.reindex(self.B.pairing(f, g), rho)

    def support(self, X: PerObj):
        return self.T.reindex(self.B.diagonal(X.base), X.rho)

    def _holds(self, lhs, rhs):
        T = self.T
        if T.entails(lhs, rhs):
            return True, None
        return False, T.countermodel(lhs, rhs)

    # -- objects ---------------------------------------------------------------
    def per(self, C, rho) -> PerObj:
        X = PerObj(C, rho)
        ok, why = self.is_per(X)
        if not ok:
            raise NotAPer(why)
        return X

    def is_per(self, X: PerObj):
        T, B = self.T, self.B
        C = X.base
        CC, p1, p2 = B.product(C, C)
        if T.over(X.rho) != CC:
            return False, "relation is not over C x C"
        ok, w = self._holds(X.rho, self.at(X.rho, p2, p1))
        if not ok:
            return False, f"not symmetric at {w}"
        _, (x, y, z) = _ctx(B, C, C, C)
        lhs = T.and_(self.at(X.rho, x, y), self.at(X.rho, y, z))
        ok, w = self._holds(lhs, self.at(X.rho, x, z))
        if not ok:
            return False, f"not transitive at {w}"
        return True, None

    def discrete(self, C) -> PerObj:
        """(C, eq): the image of C under the diagonal embedding."""
        return PerObj(C, self.T.eq(C))

    def indiscrete(self, C) -> PerObj:
        CC = self.B.product(C, C)[0]
        return PerObj(C, self.T.top(CC))

    # -- morphisms -------------------------------------------------------------
    def mor(self, X: PerObj, Y: PerObj, rep) -> PerMor:
        f = PerMor(X, Y, rep)
        ok, w = self.mor_wellformed(f, witness=True)
        if not ok:
            raise NotWellDefined(f"{rep} does not respect the relations (witness {w})")
        return f

    def mor_wellformed(self, f: PerMor, witness: bool = False):
        B = self.B
        if B.dom(f.rep) != f.dom.base or B.cod(f.rep) != f.cod.base:
            raise TypeMismatch("representative does not match the carriers")
        ff = B.product_map(f.rep, f.rep)
        ok, w = self._holds(f.dom.rho, self.T.reindex(ff, f.cod.rho))
        return (ok, w) if witness else ok

    def mor_equal(self, f: PerMor, g: PerMor) -> bool:
        if f.dom != g.dom or f.cod != g.cod:
            raise TypeMismatch("morphisms are not parallel")
        return self.T.entails(self.support(f.dom), self.at(f.cod.rho, f.rep, g.rep))

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def compose(self, g: PerMor, f: PerMor) -> PerMor:
        if f.cod != g.dom:
            raise TypeMismatch("morphisms do not compose")
        return PerMor(f.dom, g.cod, self.B.compose(g.rep, f.rep))

    def identity(self, X: PerObj) -> PerMor:
        return PerMor(X, X, self.B.identity(X.base))

    # -- finite limits -----------------------------------------------------------
    def terminal(self) -> PerObj:
        one = self.B.terminal()
        return PerObj(one, self.T.top(self.B.product(one, one)[0]))

    def bang(self, X: PerObj) -> PerMor:
        return PerMor(X, self.terminal(), self.B.bang(X.base))

    def product(self, X: PerObj, Y: PerObj):
        """Return ``(X x Y, p1, p2)`` with carrier C x D and rho x sigma."""
        B, T = self.B, self.T
        CD, q1, q2 = B.product(X.base, Y.base)
        _, (a, b) = _ctx(B, CD, CD)
        rel = T.and_(self.at(X.rho, B.compose(q1, a), B.compose(q1, b)),
                     self.at(Y.rho, B.compose(q2, a), B.compose(q2, b)))
        XY = PerObj(CD, rel)
        return XY, PerMor(XY, X, q1), PerMor(XY, Y, q2)

    def pairing(self, f: PerMor, g: PerMor) -> PerMor:
        if f.dom != g.dom:
            raise TypeMismatch("pairing needs a common domain")
        XY = self.product(f.cod, g.cod)[0]
        return PerMor(f.dom, XY, self.B.pairing(f.rep, g.rep))

    def diagonal(self, X: PerObj) -> PerMor:
        i = self.identity(X)
        return self.pairing(i, i)

    def product_map(self, f: PerMor, g: PerMor) -> PerMor:
        _, p1, p2 = self.product(f.dom, g.dom)
        return self.pairing(self.compose(f, p1), self.compose(g, p2))

    def equalizer(self, f: PerMor, g: PerMor):
        """Return ``(E, e)``: tau(x, y) = rho(x, y) /\\ sigma(fx, gx), identity rep."""
        if f.dom != g.dom or f.cod != g.cod:
            raise TypeMismatch("equalizer needs parallel morphisms")
        B, T = self.B, self.T
        X = f.dom
        _, p1, _ = B.product(X.base, X.base)
        tau = T.and_(X.rho, self.at(f.cod.rho, B.compose(f.rep, p1), B.compose(g.rep, p1)))
        E = PerObj(X.base, tau)
        return E, PerMor(E, X, B.identity(X.base))

    def pullback(self, f: PerMor, g: PerMor):
        """Return ``(P, p1, p2)`` as the equalizer of f.p1 and g.p2 on the product."""
        if f.cod != g.cod:
            raise TypeMismatch("pullback needs a cospan")
        XY, p1, p2 = self.product(f.dom, g.dom)
        E, e = self.equalizer(self.compose(f, p1), self.compose(g, p2))
        return E, self.compose(p1, e), self.compose(p2, e)

    # -- epis and monos -----------------------------------------------------------
    def _image_pred(self, f: PerMor):
        """psi(y) = exists x. rho(x, x) /\\ sigma(fx, y), over the codomain carrier."""
        B, T = self.B, self.T
        DC, (y, x) = _ctx(B, f.cod.base, f.dom.base)
        body = T.and_(self.at(f.dom.rho, x, x), self.at(f.cod.rho, B.compose(f.rep, x), y))
        _, q1, _ = B.product(f.cod.base, f.dom.base)
        return T.exists_along(q1, body)

    def is_epi(self, f: PerMor, witness: bool = False):
        ok, w = self._holds(self.support(f.cod), self._image_pred(f))
        return (ok, w) if witness else ok

    def is_mono(self, f: PerMor, witness: bool = False):
        B, T = self.B, self.T
        C = f.dom.base
        _, p1, p2 = B.product(C, C)
        lhs = T.and_(T.and_(self.at(f.dom.rho, p1, p1), self.at(f.dom.rho, p2, p2)),
                     self.at(f.cod.rho, B.compose(f.rep, p1), B.compose(f.rep, p2)))
        ok, w = self._holds(lhs, f.dom.rho)
        return (ok, w) if witness else ok

    def is_iso(self, f: PerMor) -> bool:
        # F(P) need not be balanced (e.g. the empty carrier into (1, bot)),
        # so look for an actual inverse
        return self.is_epi(f) and self.is_mono(f) and self.inverse(f) is not None

    # -- compatible predicates and cocovers ---------------------------------------
    def is_compat(self, p: CompatPred):
        B, T = self.B, self.T
        X = p.over
        ok, w = self._holds(p.phi, self.support(X))
        if not ok:
            return False, f"outside the support at {w}"
        _, p1, p2 = B.product(X.base, X.base)
        ok, w = self._holds(T.and_(T.reindex(p1, p.phi), X.rho), T.reindex(p2, p.phi))
        if not ok:
            return False, f"not a union of classes at {w}"
        return True, None

    def compat(self, X: PerObj, phi) -> CompatPred:
        p = CompatPred(X, phi)
        ok, why = self.is_compat(p)
        if not ok:
            raise NotCompatible(why)
        return p

    def restrict(self, X: PerObj, phi) -> PerObj:
        """(C, rho|phi) with rho|phi(x, y) = rho(x, y) /\\ phi(x) /\\ phi(y)."""
        B, T = self.B, self.T
        _, p1, p2 = B.product(X.base, X.base)
        return PerObj(X.base, T.and_(X.rho, T.and_(T.reindex(p1, phi), T.reindex(p2, phi))))

    def compat_to_cocover(self, p: CompatPred) -> PerMor:
        ok, why = self.is_compat(p)
        if not ok:
            raise NotCompatible(why)
        return PerMor(self.restrict(p.over, p.phi), p.over, self.B.identity(p.over.base))

    def cocover_to_compat(self, m: PerMor) -> CompatPred:
        return CompatPred(m.cod, self._image_pred(m))

    def reindex_compat(self, f: PerMor, p: CompatPred) -> CompatPred:
        if p.over != f.cod:
            raise TypeMismatch("predicate is not over the codomain")
        return CompatPred(f.dom, self.T.and_(self.support(f.dom), self.T.reindex(f.rep, p.phi)))

    def is_cocover(self, m: PerMor) -> bool:
        """m is mono and factors isomorphically through its image cocover."""
        if not self.is_mono(m):
            return False
        e, _ = self.image_factorization(m)
        return self.is_iso(e)

    def image_factorization(self, f: PerMor):
        """Return ``(e, m)`` with e epi, m a cocover and ``m . e = f``."""
        psi = CompatPred(f.cod, self._image_pred(f))
        m = self.compat_to_cocover(psi)
        e = PerMor(f.dom, m.dom, f.rep)
        return e, m

    # -- quotients ---------------------------------------------------------------
    def quotient(self, X: PerObj, tau):
        """Quotient by a strong equivalence relation given as a PER on the carrier."""
        B, T = self.B, self.T
        Q = PerObj(X.base, tau)
        ok, why = self.is_per(Q)
        if not ok:
            raise NotStrongEqRel(why)
        ok, w = self._holds(T.reindex(B.diagonal(X.base), tau), self.support(X))
        if not ok:
            raise NotStrongEqRel(f"tau(x, x) does not entail rho(x, x) at {w}")
        ok, w = self._holds(X.rho, tau)
        if not ok:
            raise NotStrongEqRel(f"rho does not entail tau at {w}")
        return Q, PerMor(X, Q, B.identity(X.base))

    def kernel_pair(self, f: PerMor):
        return self.pullback(f, f)

    # -- power objects -----------------------------------------------------------
    def power_object(self, X: PerObj):
        """Return ``(PX, mem)`` with mem a CompatPred over ``PX x X``."""
        key = X
        hit = self._power.get(key)
        if hit is not None:
            return hit
        B, T = self.B, self.T
        C = X.base
        PC, mem = T.power(C)
        n = getattr(PC, "size", None)
        c = getattr(C, "size", None)
        if n is not None and n * n * max(c, 1) > self.guard:
            raise SizeGuard(f"power object needs {n * n * max(c, 1)} evaluation points "
                            f"(guard {self.guard})")
        # clause 1 and 2 depend on m alone
        _, (m, x) = _ctx(B, PC, C)
        PCxC, q1, _ = B.product(PC, C)
        c1 = T.forall_along(q1, T.imp(T.reindex(B.pairing(m, x), mem), self.at(X.rho, x, x)))
        PCCC, (m3, x3, y3) = _ctx(B, PC, C, C)
        body = T.imp(T.and_(T.reindex(B.pairing(m3, x3), mem), self.at(X.rho, x3, y3)),
                     T.reindex(B.pairing(m3, y3), mem))
        c2 = T.forall_along(m3, body)
        # clause 3 is extensional equality of m and n
        _, (mm, nn, xx) = _ctx(B, PC, PC, C)
        PP, r1, r2 = B.product(PC, PC)
        _, s1, _ = B.product(PP, C)
        c3 = T.forall_along(s1, T.iff(T.reindex(B.pairing(mm, xx), mem),
                                      T.reindex(B.pairing(nn, xx), mem)))
        Prho = T.and_(T.reindex(r1, T.and_(c1, c2)), c3)
        PX = PerObj(PC, Prho)
        PXX, _, _ = self.product(PX, X)
        _, (u, _v) = _ctx(B, PC, C)
        mem_rho = T.and_(mem, self.at(Prho, u, u))
        res = (PX, CompatPred(PXX, mem_rho))
        self._power[key] = res
        return res

    def chi(self, Y: PerObj, X: PerObj, p: CompatPred) -> PerMor:
        """The map Y -> PX classifying a compatible predicate over Y x X."""
        PX, _ = self.power_object(X)
        return PerMor(Y, PX, self.T.chi(Y.base, X.base, p.phi))

    def omega(self):
        """The object of propositions, the power object of the terminal object."""
        return self.power_object(self.terminal())

    # -- enumeration (fam instances) ----------------------------------------------
    def _fam(self) -> FamTripos:
        if not isinstance(self.T, FamTripos):
            raise TypeError("enumeration needs a fam tripos")
        return self.T

    def objects(self, max_size: int):
        """All PERs on carriers of size <= max_size (fam instances only)."""
        T = self._fam()
        out = []
        for n in range(max_size + 1):
            C = FinObj(n)
            CC = self.B.product(C, C)[0]
            for rho in T.enumerate_preds(CC):
                X = PerObj(C, rho)
                if self.is_per(X)[0]:
                    out.append(X)
        return out

    def candidate_reps(self, X: PerObj, Y: PerObj, guard: int | None = None,
                       unary=None, limit: int | None = None):
        """All well-defined representatives X -> Y, found by constraint propagation.

        Values on points outside the support of X do not matter for equality
        of morphisms; there we fix the representative to 0.  ``unary(c, d)``
        further restricts the value at c; the search stops after ``limit``
        solutions.
        """
        T = self._fam()
        A = T.A
        guard = guard or self.guard
        n, k = X.base.size, Y.base.size
        if n == 0:
            return [FinMap(X.base, Y.base, [])]
        if k == 0:
            return []
        rho = X.rho.values.reshape(n, n)
        sig = Y.rho.values.reshape(k, k)
        le = A.leq
        bot = A.bot
        supported = [c for c in range(n) if rho[c, c] != bot]
        cands = {c: [d for d in range(k) if le[rho[c, c], sig[d, d]]
                     and (unary is None or unary(c, d))] for c in supported}
        if any(not v for v in cands.values()):
            return []
        order = sorted(supported, key=lambda c: len(cands[c]))
        total = 1
        for c in order:
            total *= len(cands[c])
        out = []
        assign: dict[int, int] = {}
        steps = [0]

        def ok(c, d):
            for c2, d2 in assign.items():
                if not le[rho[c, c2], sig[d, d2]] or not le[rho[c2, c], sig[d2, d]]:
                    return False
            return True

        def go(i):
            steps[0] += 1
            if steps[0] > guard:
                raise SizeGuard(f"hom search {X} -> {Y} exceeded {guard} steps")
            if i == len(order):
                tab = np.zeros(n, dtype=np.int64)
                for c, d in assign.items():
                    tab[c] = d
                out.append(FinMap(X.base, Y.base, tab))
                return
            c = order[i]
            for d in cands[c]:
                if limit is not None and len(out) >= limit:
                    return
                if ok(c, d):
                    assign[c] = d
                    go(i + 1)
                    del assign[c]

        go(0)
        return out

    def homs(self, X: PerObj, Y: PerObj, guard: int | None = None):
        """Representatives of all morphisms X -> Y, one per equivalence class."""
        out: list[PerMor] = []
        for r in self.candidate_reps(X, Y, guard):
            f = PerMor(X, Y, r)
            if not any(self.mor_equal(f, g) for g in out):
                out.append(f)
        return out

    def all_reps(self, X: PerObj, Y: PerObj, guard: int | None = None):
        """Every base map X.base -> Y.base, well-defined or not (brute force)."""
        from .basecat import homs as base_homs
        return list(base_homs(X.base, Y.base, guard or self.guard))

    def find_iso(self, X: PerObj, Y: PerObj):
        """Return ``(f, g)`` mutually inverse, or None."""
        fs = self.homs(X, Y)
        if not fs:
            return None
        gs = self.homs(Y, X)
        idX, idY = self.identity(X), self.identity(Y)
        for f in fs:
            if not (self.is_mono(f) and self.is_epi(f)):
                continue
            for g in gs:
                if (self.mor_equal(self.compose(g, f), idX)
                        and self.mor_equal(self.compose(f, g), idY)):
                    return f, g
        return None

    def _is_inverse(self, f: PerMor, g: PerMor) -> bool:
        return (self.mor_equal(self.compose(g, f), self.identity(f.dom))
                and self.mor_equal(self.compose(f, g), self.identity(f.cod)))

    def inverse(self, f: PerMor):
        """The inverse of an isomorphism, or None if f is not invertible."""
        X, Y = f.dom, f.cod
        if X.base == Y.base:
            g = PerMor(Y, X, self.B.identity(X.base))
            if self.mor_wellformed(g) and self._is_inverse(f, g):
                return g
        if not isinstance(self.T, FamTripos):
            return None
        A = self.T.A
        le = A.leq
        n, k = X.base.size, Y.base.size
        rho = X.rho.values.reshape(n, n)
        sig = Y.rho.values.reshape(k, k)
        ft = f.rep.table
        fibre: dict[int, list[int]] = {}
        for x in range(n):
            fibre.setdefault(int(ft[x]), []).append(x)

        # g(f(x)) ~ x on the support of X, f(g(y)) ~ y on the support of Y
        def unary(y, c):
            if not le[sig[y, y], sig[ft[c], y]]:
                return False
            return all(le[rho[x, x], rho[c, x]] for x in fibre.get(y, ()))

        for r in self.candidate_reps(Y, X, unary=unary, limit=1):
            g = PerMor(Y, X, r)
            if self._is_inverse(f, g):
                return g
        return None

    def global_elements(self, X: PerObj):
        return self.homs(self.terminal(), X)


def build_F(T: TriposInstance, guard: int = GUARD) -> QTopos:
    """F(T); one handle per tripos instance and guard."""
    cache = T.__dict__.setdefault("_F_handles", {})
    H = cache.get(guard)
    if H is None:
        H = cache[guard] = QTopos(T, guard)
    return H


# ---------------------------------------------------------------------------
# compression (fam instances)
# ---------------------------------------------------------------------------

def compress(H: QTopos, X: PerObj):
    """An isomorphic copy of X on a set of maximal points.

    A point x is a restriction of y when ``rho(x, x) <= rho(x, y)``; every
    point is sent to the first kept point it restricts, and only maximal
    points (one per class) are kept.  Unsupported points restrict every
    point.  Returns ``(Y, to, back)`` with ``to: X -> Y`` and ``back: Y -> X``
    inverse isomorphisms.
    """
    T = H._fam()
    A = T.A
    n = X.base.size
    if n == 0:
        return X, H.identity(X), H.identity(X)
    rho = X.rho.values.reshape(n, n)
    below = A.leq[np.diag(rho)[:, None], rho]
    keep: list[int] = []
    for x in range(n):
        maximal = all(below[y, x] for y in range(n) if below[x, y])
        if maximal and not any(below[x, k] for k in keep):
            keep.append(x)
    cls = np.array([next(j for j, k in enumerate(keep) if below[x, k]) for x in range(n)],
                   dtype=np.int64)
    m = len(keep)
    C = FinObj(m)
    Y = PerObj(C, FamPredicate(FinObj(m * m), rho[np.ix_(keep, keep)].reshape(-1)))
    to = PerMor(X, Y, FinMap(X.base, C, cls))
    back = PerMor(Y, X, FinMap(C, X.base, keep))
    return Y, to, back


# ---------------------------------------------------------------------------
# the cocover tripos S(F(T))
# ---------------------------------------------------------------------------

class CocoverTripos(TriposInstance):
    """Compatible predicates over objects of F(T), i.e. cocovers."""

    def __init__(self, H: QTopos):
        self.H = H
        self.T = H.T
        self.base = H
        self.name = f"S({H.name})"

    def over(self, p):
        return p.over

    def _same(self, p, q):
        if p.over != q.over:
            raise TypeMismatch("predicates over different objects")

    def entails(self, p, q) -> bool:
        self._same(p, q)
        return self.T.entails(p.phi, q.phi)

    def pred_equal(self, p, q) -> bool:
        self._same(p, q)
        return self.T.pred_equal(p.phi, q.phi)

    def countermodel(self, p, q):
        return self.T.countermodel(p.phi, q.phi)

    def top(self, X):
        return CompatPred(X, self.H.support(X))

    def bot(self, X):
        return CompatPred(X, self.T.bot(X.base))

    def and_(self, p, q):
        self._same(p, q)
        return CompatPred(p.over, self.T.and_(p.phi, q.phi))

    def or_(self, p, q):
        self._same(p, q)
        return CompatPred(p.over, self.T.or_(p.phi, q.phi))

    def imp(self, p, q):
        """x |-> rho(x, x) /\\ forall y. rho(x, y) /\\ p(y) => q(y)."""
        self._same(p, q)
        H, T, B = self.H, self.T, self.H.B
        X = p.over
        _, p1, p2 = B.product(X.base, X.base)
        body = T.imp(T.and_(X.rho, T.reindex(p2, p.phi)), T.reindex(p2, q.phi))
        return CompatPred(X, T.and_(H.support(X), T.forall_along(p1, body)))

    def reindex(self, f, p):
        return self.H.reindex_compat(f, p)

    def exists_along(self, f, p):
        """y |-> exists x. p(x) /\\ sigma(fx, y)."""
        if p.over != f.dom:
            raise TypeMismatch("predicate is not over the domain")
        H, T, B = self.H, self.T, self.H.B
        CD, x, y = B.product(f.dom.base, f.cod.base)
        body = T.and_(T.reindex(x, p.phi), H.at(f.cod.rho, B.compose(f.rep, x), y))
        return CompatPred(f.cod, T.exists_along(y, body))

    def forall_along(self, f, p):
        """y |-> sigma(y, y) /\\ forall x. rho(x, x) /\\ sigma(fx, y) => p(x)."""
        if p.over != f.dom:
            raise TypeMismatch("predicate is not over the domain")
        H, T, B = self.H, self.T, self.H.B
        CD, x, y = B.product(f.dom.base, f.cod.base)
        guard = T.and_(H.at(f.dom.rho, x, x), H.at(f.cod.rho, B.compose(f.rep, x), y))
        body = T.imp(guard, T.reindex(x, p.phi))
        return CompatPred(f.cod, T.and_(H.support(f.cod), T.forall_along(y, body)))

    def eq(self, X):
        XX = self.H.product(X, X)[0]
        return CompatPred(XX, X.rho)

    def power(self, X):
        return self.H.power_object(X)

    def chi(self, Y, X, p):
        return self.H.chi(Y, X, p)

    def enumerate_preds(self, X):
        for phi in self.T.enumerate_preds(X.base):
            p = CompatPred(X, phi)
            if self.H.is_compat(p)[0]:
                yield p

    def show(self, p) -> str:
        return self.T.show(p.phi) if hasattr(self.T, "show") else repr(p)


def cocover_tripos(H: QTopos) -> CocoverTripos:
    """S(H), one instance per handle."""
    S = getattr(H, "_cocover", None)
    if S is None:
        S = H._cocover = CocoverTripos(H)
    return S


# ---------------------------------------------------------------------------
# functors between F(T) handles, F on 1- and 2-cells, S on functors
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class QFunctor:
    """A functor description between two :class:`QTopos` (or F-like) handles.

    ``regular`` records whether the functor preserves epis and regular epis
    (None when unknown).  ``strict_products`` means the chosen products are
    preserved on the nose with identity comparison reps.
    """

    src: object
    tgt: object
    objmap: object
    mormap: object
    name: str = ""
    regular: bool | None = None
    strict_products: bool = False

    def obj(self, X):
        return self.objmap(X)

    def mor(self, f):
        return self.mormap(f)

    def prodcmp(self, X, Y):
        """The comparison F X x F Y -> F(X x Y)."""
        K = self.tgt
        XY, p1, p2 = self.src.product(X, Y)
        FXY = self.obj(XY)
        FX_FY = K.product(self.obj(X), self.obj(Y))[0]
        if self.strict_products and FXY.base == FX_FY.base:
            return PerMor(FX_FY, FXY, K.B.identity(FXY.base))
        pair = K.pairing(self.mor(p1), self.mor(p2))
        inv = K.inverse(pair)
        if inv is None:
            raise TypeMismatch(f"{self.name} does not preserve the product {X} x {Y}")
        return inv

    def __repr__(self):
        return f"<QFunctor {self.name}>"


def identity_functor(H) -> QFunctor:
    return QFunctor(H, H, lambda X: X, lambda f: f, name="Id", regular=True,
                    strict_products=True)


def compose_functors(G: QFunctor, F: QFunctor) -> QFunctor:
    """G after F."""
    reg = None if F.regular is None or G.regular is None else (F.regular and G.regular)
    return QFunctor(F.src, G.tgt, lambda X: G.obj(F.obj(X)), lambda f: G.mor(F.mor(f)),
                    name=f"{G.name}.{F.name}", regular=reg,
                    strict_products=F.strict_products and G.strict_products)


def F_functor(m, src: QTopos | None = None, tgt: QTopos | None = None,
              regular: bool | None = None) -> QFunctor:
    """F(m): (C, rho) |-> (mC, Phi rho), with the same representatives."""
    HS = src or build_F(m.src)
    HT = tgt or build_F(m.tgt)

    def obj(X):
        return PerObj(m.obj(X.base), m.fib_ctx(X.base, X.base, X.rho))

    def mor(f):
        return PerMor(obj(f.dom), obj(f.cod), m.mor(f.rep))

    return QFunctor(HS, HT, obj, mor, name=f"F{m.name}", regular=regular,
                    strict_products=True)


def F_transformation(theta, F: QFunctor, G: QFunctor):
    """F(theta) for a tripos transformation theta: m -> n, as a component map."""
    def component(X):
        return PerMor(F.obj(X), G.obj(X), theta.at(X.base))
    return component


def S_functor(Fn: QFunctor, SH=None, SK=None):
    """S(F): the tripos morphism S(src) -> S(tgt) induced by a functor.

    Predicates are transported as cocovers: phi |-> image of F(cocover of phi).
    """
    from .tripos import TriposMorphism
    H, K = Fn.src, Fn.tgt
    SH = SH or cocover_tripos(H)
    SK = SK or cocover_tripos(K)

    def fib(p):
        return K.cocover_to_compat(Fn.mor(H.compat_to_cocover(p)))

    return TriposMorphism(SH, SK, Fn.obj, Fn.mor, fib, Fn.prodcmp, name=f"S{Fn.name}")


# ---------------------------------------------------------------------------
# structure suite (fam instances)
# ---------------------------------------------------------------------------

def _unique_up_to_equal(H, cands):
    """Number of distinct morphisms (under mor_equal) among cands."""
    seen: list = []
    for f in cands:
        if not any(H.mor_equal(f, g) for g in seen):
            seen.append(f)
    return len(seen)


def _wellformed_reps(H, X, Y):
    """Oracle hom-set: every base map, filtered by well-definedness (no CSP)."""
    out = []
    for r in H.all_reps(X, Y):
        f = PerMor(X, Y, r)
        if H.mor_wellformed(f):
            out.append(f)
    return out


def oracle_homs(H, X, Y):
    out: list = []
    for f in _wellformed_reps(H, X, Y):
        if not any(H.mor_equal(f, g) for g in out):
            out.append(f)
    return out


def oracle_is_epi(H, f, tests):
    """f is right-cancellable against every pair of maps into the test objects."""
    for Z in tests:
        hs = oracle_homs(H, f.cod, Z)
        for g, h in itertools.combinations(hs, 2):
            if H.mor_equal(H.compose(g, f), H.compose(h, f)):
                return False
    return True


def oracle_is_mono(H, f, tests):
    """f is left-cancellable against every pair of maps from the test objects."""
    for Z in tests:
        hs = oracle_homs(H, Z, f.dom)
        for g, h in itertools.combinations(hs, 2):
            if H.mor_equal(H.compose(f, g), H.compose(f, h)):
                return False
    return True


def pertopos_suite(H: QTopos, max_size: int = 2) -> LawReport:
    """Universal properties of the chosen structure against brute-force oracles."""
    rep = LawReport(f"pertopos:{H.name}")
    objs = H.objects(max_size)
    homs = {(X, Y): oracle_homs(H, X, Y) for X in objs for Y in objs}
    wit: dict[str, str] = {}
    cnt: dict[str, int] = {}

    def note(key, ok, msg):
        cnt[key] = cnt.get(key, 0) + 1
        if not ok:
            wit.setdefault(key, msg)

    for X in objs:
        note("is-per", H.is_per(X)[0], f"{X}")
    # hom search agrees with brute force
    for (X, Y), hs in homs.items():
        note("hom-search", _unique_up_to_equal(H, hs) == len(H.homs(X, Y))
             and all(any(H.mor_equal(f, g) for g in H.homs(X, Y)) for f in hs),
             f"{X} -> {Y}")
    # epi / mono against cancellation
    for (X, Y), hs in homs.items():
        for f in hs:
            note("epi-oracle", H.is_epi(f) == oracle_is_epi(H, f, objs), f"{f}: {X} -> {Y}")
            note("mono-oracle", H.is_mono(f) == oracle_is_mono(H, f, objs), f"{f}: {X} -> {Y}")
    one = H.terminal()
    for Z in objs:
        note("terminal", len(oracle_homs(H, Z, one)) == 1, f"{Z}")
    # products
    small = [X for X in objs if X.base.size <= 2]
    for X, Y in itertools.product(small, repeat=2):
        XY, p1, p2 = H.product(X, Y)
        for Z in objs:
            for a in homs[(Z, X)]:
                for b in homs[(Z, Y)]:
                    meds = [m for m in oracle_homs(H, Z, XY)
                            if H.mor_equal(H.compose(p1, m), a)
                            and H.mor_equal(H.compose(p2, m), b)]
                    ok = (_unique_up_to_equal(H, meds) == 1
                          and H.mor_equal(meds[0], H.pairing(a, b)))
                    note("product", ok, f"{X} x {Y} from {Z}")
    # equalizers
    for (X, Y), hs in homs.items():
        for f, g in itertools.product(hs, repeat=2):
            E, e = H.equalizer(f, g)
            note("equalizer-wellformed", H.mor_wellformed(e), f"{f}, {g}")
            for Z in objs:
                for h in homs[(Z, X)]:
                    eqz = H.mor_equal(H.compose(f, h), H.compose(g, h))
                    meds = [m for m in oracle_homs(H, Z, E) if H.mor_equal(H.compose(e, m), h)]
                    n = _unique_up_to_equal(H, meds)
                    note("equalizer", n == (1 if eqz else 0), f"{f}, {g} via {h}")
    # image factorization and orthogonality
    for (X, Y), hs in homs.items():
        for f in hs:
            e, m = H.image_factorization(f)
            ok = (H.mor_wellformed(e) and H.mor_wellformed(m) and H.is_epi(e) and H.is_mono(m)
                  and H.mor_equal(H.compose(m, e), f))
            note("image-factorization", ok, f"{f}: {X} -> {Y}")
            p = H.cocover_to_compat(m)
            note("cocover-roundtrip", H.T.pred_equal(p.phi, H._image_pred(f)), f"{f}")
    epis = [f for hs in homs.values() for f in hs if H.is_epi(f)]
    for e in epis:
        for (C, D), ms in homs.items():
            for m in ms:
                if not H.is_cocover(m):
                    continue
                for u in homs[(e.dom, C)]:
                    for v in homs[(e.cod, D)]:
                        if not H.mor_equal(H.compose(m, u), H.compose(v, e)):
                            continue
                        lifts = [d for d in homs[(e.cod, C)]
                                 if H.mor_equal(H.compose(d, e), u)
                                 and H.mor_equal(H.compose(m, d), v)]
                        note("orthogonality", len(lifts) == 1, f"e={e} m={m} u={u} v={v}")
    # compat <-> cocover bijection
    S = cocover_tripos(H)
    for X in objs:
        for p in S.enumerate_preds(X):
            q = H.cocover_to_compat(H.compat_to_cocover(p))
            note("compat-roundtrip", H.T.pred_equal(p.phi, q.phi), f"{p}")
    # quotients: coequalizer property and effectiveness
    for X in objs:
        CC = H.B.product(X.base, X.base)[0]
        for tau in H.T.enumerate_preds(CC):
            try:
                Q, e = H.quotient(X, tau)
            except NotStrongEqRel:
                continue
            note("quotient-epi", H.is_epi(e), f"{X} / {tau}")
            for Z in objs:
                for k in homs[(X, Z)]:
                    factors = H.mor_wellformed(PerMor(Q, Z, k.rep))
                    meds = [m for m in oracle_homs(H, Q, Z) if H.mor_equal(H.compose(m, e), k)]
                    note("quotient-universal", _unique_up_to_equal(H, meds) == (1 if factors else 0),
                         f"{X} / {tau} -> {Z}")
            K, k1, k2 = H.kernel_pair(e)
            XX = H.product(X, X)[0]
            rel = H.cocover_to_compat(H.pairing(k1, k2))
            note("quotient-effective", rel.over == XX and H.T.pred_equal(rel.phi, tau),
                 f"{X} / {tau}")
    # power objects: every compatible predicate is classified, uniquely
    for X in [X for X in objs if X.base.size <= 1 or max_size <= 2]:
        PX, mem = H.power_object(X)
        note("power-per", H.is_per(PX)[0], f"{X}")
        for Z in objs:
            ZX = H.product(Z, X)[0]
            maps = H.homs(Z, PX)
            for p in S.enumerate_preds(ZX):
                c = H.chi(Z, X, p)
                back = S.reindex(H.product_map(c, H.identity(X)), mem)
                ok = H.mor_wellformed(c) and H.T.pred_equal(back.phi, p.phi)
                same = [g for g in maps
                        if H.T.pred_equal(S.reindex(H.product_map(g, H.identity(X)), mem).phi,
                                          p.phi)]
                ok = ok and len(same) == 1
                note("power-classifies", ok, f"{X} from {Z}: {p}")
    for key in sorted(cnt):
        w = wit.get(key)
        rep.add(key, w is None, w or f"{cnt[key]} instances")
    return rep
