"""Componentwise data of the special biadjunction between triposes and q-toposes.

The unit at a tripos P is the tripos morphism ``(D, Delta): P -> S F P``
with ``D C = (C, =)``; the counit at a q-topos C (here an F(P) handle) is
``eps: F S C -> C``, sending ``(X, tau)`` to the quotient of the support
of tau.  Cocovers are carried as compatible predicates, so eps is the
identity on carriers and on representatives.  The modifications nu and
mu, the triangle identities, the factorization of the composite unit
constraint and the introductory example are all decided by comparing
representatives with ``mor_equal``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .basecat import FinMap, FinObj, TypeMismatch, homs as base_homs
from .coarse import (J_morphism, J_object, J_unit, check_nat_inv, coarse_objects,
                     counit as coarse_counit,
                     is_coarse, reflect, reflector, t_composition_constraint)
from .lattice import (FiniteHeyting, booleans, diagonal_map, identity_map, lattice_map,
                      meet_map, product, three_chain, top_test_map, vee)
from .pertopos import (CompatPred, PerMor, PerObj, QFunctor, QTopos, S_functor, build_F,
                       cocover_tripos, compose_functors, F_functor)
from .reports import LawReport
from .tripos import (FamPredicate, FamTripos, TriposMorphism, TriposTransformation,
                     check_transformation, compose_morphisms, fam_morphism,
                     fam_transformation, identity_morphism, identity_transformation)


class NotAnAdjunction(ValueError):
    """The given unit and counit do not exhibit an adjunction."""


# ---------------------------------------------------------------------------
# unit
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class UnitCell:
    """eta_P = (D_P, Delta_P) : P -> S F P."""

    P: object
    FP: QTopos
    SFP: object
    morphism: TriposMorphism

    def D(self, C) -> PerObj:
        return self.morphism.obj(C)

    def D_mor(self, f) -> PerMor:
        return self.morphism.mor(f)

    def Delta(self, phi) -> CompatPred:
        return self.morphism.fib(phi)


def unit_eta(P, FP: QTopos | None = None) -> UnitCell:
    FP = FP or build_F(P)
    SFP = cocover_tripos(FP)
    B = P.base

    def D(C):
        return PerObj(C, P.eq(C))

    def Dm(f):
        return PerMor(D(B.dom(f)), D(B.cod(f)), f)

    def Delta(phi):
        X = D(P.over(phi))
        return CompatPred(X, P.and_(phi, FP.support(X)))

    def prodcmp(X, Y):
        XY = B.product(X, Y)[0]
        return PerMor(FP.product(D(X), D(Y))[0], D(XY), B.identity(XY))

    m = TriposMorphism(P, SFP, D, Dm, Delta, prodcmp, name="eta")
    return UnitCell(P, FP, SFP, m)


def _base_objects(P, max_size):
    B = P.base
    if hasattr(B, "objects"):
        return list(B.objects(max_size))
    raise TypeError("base category cannot enumerate objects")


def check_unit_cell(U: UnitCell, max_size: int = 2) -> LawReport:
    """D preserves chosen products strictly; Delta is fibered, meet-preserving, regular."""
    P, FP, S = U.P, U.FP, U.SFP
    B = P.base
    rep = LawReport(f"unit:{P.name}")
    objs = _base_objects(P, max_size)
    bad = None
    for X, Y in itertools.product(objs, repeat=2):
        if FP.product(U.D(X), U.D(Y))[0] != U.D(B.product(X, Y)[0]):
            bad = f"{X} x {Y}"
            break
    rep.add("D-products", bad is None, bad or "")
    bad_r = bad_m = bad_e = None
    for X in objs:
        if not S.pred_equal(U.Delta(P.top(X)), S.top(U.D(X))):
            bad_m = f"top over {X}"
        for Y in objs:
            for f in B.homs(X, Y):
                for phi in P.enumerate_preds(Y):
                    if not S.pred_equal(U.Delta(P.reindex(f, phi)),
                                        S.reindex(U.D_mor(f), U.Delta(phi))):
                        bad_r = bad_r or f"{f}, {phi}"
                for phi in P.enumerate_preds(X):
                    if not S.pred_equal(U.Delta(P.exists_along(f, phi)),
                                        S.exists_along(U.D_mor(f), U.Delta(phi))):
                        bad_e = bad_e or f"{f}, {phi}"
        for phi, psi in itertools.product(list(P.enumerate_preds(X)), repeat=2):
            if not S.pred_equal(U.Delta(P.and_(phi, psi)),
                                S.and_(U.Delta(phi), U.Delta(psi))):
                bad_m = bad_m or f"{phi} /\\ {psi}"
    rep.add("Delta-fibered", bad_r is None, bad_r or "")
    rep.add("Delta-meets", bad_m is None, bad_m or "")
    rep.add("Delta-regular", bad_e is None, bad_e or "")
    return rep


def unit_constraint(m: TriposMorphism, HP: QTopos | None = None, HQ: QTopos | None = None):
    """Components id : (mC, =) -> F m (C, =) of the unit constraint at m."""
    from .coarse import ConstraintCell
    P, Q = m.src, m.tgt
    HP = HP or build_F(P)
    HQ = HQ or build_F(Q)
    Fm = F_functor(m, HP, HQ)

    def comp(C):
        mC = m.obj(C)
        return PerMor(PerObj(mC, Q.eq(mC)), Fm.obj(PerObj(C, P.eq(C))), Q.base.identity(mC))

    return ConstraintCell(None, None, comp, name=f"eta[{m.name}]")


def unit_constraint_invertible(m: TriposMorphism, C, HP=None, HQ=None) -> bool:
    HQ = HQ or build_F(m.tgt)
    c = unit_constraint(m, HP, HQ).at(C)
    return HQ.inverse(c) is not None


# ---------------------------------------------------------------------------
# counit
# ---------------------------------------------------------------------------

def eps_object(X: PerObj) -> PerObj:
    """eps(X, tau) = (carrier of X, tau) in normalized form."""
    return PerObj(X.base.base, X.rho.phi)


def eps_morphism(f: PerMor) -> PerMor:
    return PerMor(eps_object(f.dom), eps_object(f.cod), f.rep.rep)


@dataclass(eq=False)
class CounitCell:
    H: QTopos
    FSH: QTopos
    functor: QFunctor


def counit_functor(H: QTopos) -> QFunctor:
    FSH = build_F(cocover_tripos(H))
    return QFunctor(FSH, H, eps_object, eps_morphism, name="eps", regular=True,
                    strict_products=True)


def counit_eps(H: QTopos) -> CounitCell:
    F = counit_functor(H)
    return CounitCell(H, F.src, F)


def subquotient_span(H: QTopos, X: PerObj):
    """For X = (Y, tau) in F S H: ``(C0, m, e)`` with m: C0 >-> Y, e: C0 ->> eps X."""
    Y, tau = X.base, X.rho
    supp = H.T.reindex(H.B.diagonal(Y.base), tau.phi)
    C0 = H.restrict(Y, supp)
    ident = H.B.identity(Y.base)
    return C0, PerMor(C0, Y, ident), PerMor(C0, eps_object(X), ident)


def FS_functor(Fn: QFunctor) -> QFunctor:
    """F S F : F S C -> F S D."""
    SH, SK = cocover_tripos(Fn.src), cocover_tripos(Fn.tgt)
    return F_functor(S_functor(Fn, SH, SK), build_F(SH), build_F(SK))


def eps_F_component(Fn: QFunctor, X: PerObj) -> PerMor:
    """The constraint eps_D(F S F X) -> F(eps_C X), the mediator out of the quotient.

    With C0 the support of tau, the map is determined by
    ``h . e' = F e . kappa`` where ``e'`` is the identity-rep quotient map and
    kappa inverts the corestriction of ``F(C0 >-> Y)`` to its image.
    """
    Hs, K = Fn.src, Fn.tgt
    L = eps_object(FS_functor(Fn).obj(X))
    R = Fn.obj(eps_object(X))
    Y, tau = X.base, X.rho
    supp = Hs.T.reindex(Hs.B.diagonal(Y.base), tau.phi)
    C0 = Hs.restrict(Y, supp)
    ident = Hs.B.identity(Y.base)
    m = PerMor(C0, Y, ident)
    e = PerMor(C0, eps_object(X), ident)
    e1, _ = K.image_factorization(Fn.mor(m))
    kappa = K.inverse(e1)
    if kappa is None:
        raise TypeMismatch(f"{Fn.name} does not send the support cocover to a cocover")
    h = K.compose(Fn.mor(e), kappa)
    return PerMor(L, R, h.rep)


# ---------------------------------------------------------------------------
# the modifications
# ---------------------------------------------------------------------------

def nu_component(U: UnitCell, X: PerObj) -> PerMor:
    """nu : eps_{FP}(F eta_P X) -> X, identity on representatives."""
    Feta = F_functor(U.morphism, U.FP, build_F(U.SFP))
    return PerMor(eps_object(Feta.obj(X)), X, U.P.base.identity(X.base))


def mu_component(H: QTopos, X: PerObj) -> PerMor:
    """mu : X -> eps(D X), the composite of the two span isomorphisms."""
    S = cocover_tripos(H)
    DX = PerObj(X, S.eq(X))
    return PerMor(X, eps_object(DX), H.B.identity(X.base))


def _legs_ok(H, legs) -> bool:
    return all(H.mor_wellformed(f) for f in legs)


def check_triangle_1(P, C, HP: QTopos | None = None) -> bool:
    """nu . eps(eta_{eta_P, C}) . mu = id on D_P C."""
    U = unit_eta(P, HP)
    HP = U.FP
    X = U.D(C)
    mu = mu_component(HP, X)
    c = unit_constraint(U.morphism, HP, build_F(U.SFP)).at(C)
    e = eps_morphism(c)
    nu = nu_component(U, X)
    try:
        comp = HP.compose(nu, HP.compose(e, mu))
    except TypeMismatch:
        return False
    return (_legs_ok(HP, [mu, e, nu]) and HP.inverse(nu) is not None
            and HP.inverse(mu) is not None and HP.mor_equal(comp, HP.identity(X)))


def check_triangle_2(H: QTopos, X: PerObj) -> bool:
    """eps(nu) . eps_{eps}(F eta X) . eps(F mu X) = id on eps X, for X in F S H."""
    SH = cocover_tripos(H)
    FSH = build_F(SH)
    U = unit_eta(SH, FSH)
    FSFSH = build_F(U.SFP)
    Feta = F_functor(U.morphism, FSH, FSFSH)
    Z = Feta.obj(X)
    epsC = counit_functor(H)
    Seps = S_functor(epsC, U.SFP, SH)
    n = compose_morphisms(Seps, U.morphism)
    Fn = F_functor(n, FSH, FSH)
    Y = X.base
    Fmu = PerMor(X, Fn.obj(X), mu_component(H, Y))
    left = eps_morphism(Fmu)
    top = eps_F_component(epsC, Z)
    right = eps_morphism(nu_component(U, X))
    try:
        comp = H.compose(right, H.compose(top, left))
    except TypeMismatch:
        return False
    return (_legs_ok(H, [left, top, right]) and FSH.mor_wellformed(Fmu)
            and H.mor_equal(comp, H.identity(eps_object(X))))


def fs_objects(H: QTopos, max_size: int = 2, pred_limit: int | None = None):
    """Objects (Y, r) of F S H with Y of size <= max_size (fam handles)."""
    SH = cocover_tripos(H)
    FSH = build_F(SH)
    out = []
    for Y in H.objects(max_size):
        YY = H.product(Y, Y)[0]
        count = 0
        for r in SH.enumerate_preds(YY):
            X = PerObj(Y, r)
            if FSH.is_per(X)[0]:
                out.append(X)
                count += 1
                if pred_limit is not None and count >= pred_limit:
                    break
    return out


# ---------------------------------------------------------------------------
# the composite unit constraint and its factorization
# ---------------------------------------------------------------------------

@dataclass
class Factorization:
    epi: PerMor
    mono: PerMor
    pasted: PerMor
    is_epi: bool
    is_mono: bool
    epi_iso: bool
    mono_iso: bool
    composite_equal: bool

    @property
    def proper_mono(self) -> bool:
        return self.is_mono and not self.mono_iso


def composite_unit_factorization(m: TriposMorphism, C, HP: QTopos | None = None,
                                 HQ: QTopos | None = None) -> Factorization:
    """J(eta_{m,C}) followed by J F(m)(eta_{D C}), against J of their composite."""
    HP = HP or build_F(m.src)
    HQ = HQ or build_F(m.tgt)
    Fm = F_functor(m, HP, HQ)
    u = unit_constraint(m, HP, HQ).at(C)
    DC = PerObj(C, m.src.eq(C))
    step = Fm.mor(J_unit(HP, DC))
    epi = J_morphism(HQ, u)
    mono = J_morphism(HQ, step)
    pasted = J_morphism(HQ, HQ.compose(step, u))
    return Factorization(
        epi, mono, pasted,
        is_epi=HQ.is_epi(epi), is_mono=HQ.is_mono(mono),
        epi_iso=HQ.inverse(epi) is not None, mono_iso=HQ.inverse(mono) is not None,
        composite_equal=HQ.mor_equal(HQ.compose(mono, epi), pasted))


# ---------------------------------------------------------------------------
# demonstrations
# ---------------------------------------------------------------------------

@dataclass
class Demo:
    name: str
    lines: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    report: LawReport | None = None

    def say(self, line: str) -> None:
        self.lines.append(line)

    @property
    def ok(self) -> bool:
        return self.report is None or self.report.ok

    def to_text(self) -> str:
        out = "\n".join(self.lines) + "\n"
        if self.report is not None:
            out += self.report.to_human()
        return out


def _bool_setup():
    B = booleans()
    BB = product(B, B)
    TB, TBB = FamTripos(B), FamTripos(BB)
    HB, HBB = build_F(TB), build_F(TBB)
    d = fam_morphism(diagonal_map(B), TB, TBB)
    w = fam_morphism(meet_map(B), TBB, TB)
    Fd = F_functor(d, HB, HBB, regular=True)
    Fw = F_functor(w, HBB, HB, regular=False)
    return B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw


def demo_intro() -> Demo:
    """T.F does not preserve the unit of the diagonal / product adjunction strictly."""
    B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw = _bool_setup()
    demo = Demo("intro")
    rep = LawReport("demo:intro")
    two = FinObj(2)
    A = PerObj(two, TB.eq(two))
    demo.say("A = (2, =) in F(fam(B)); F = F(fam(delta)), G = F(fam(wedge)).")
    rep.add("A-coarse", is_coarse(HB, A), f"{A}")
    FA = Fd.obj(A)
    demo.say(f"FA = {FA} over BxB; coarse: {is_coarse(HBB, FA)}")
    c = t_composition_constraint(Fw, Fd).at(A)
    demo.say(f"constraint component J(G eta_FA) : JGFA -> JGJFA has rep {c.rep.tolist()}"
             f" ({c.dom.base.size} -> {c.cod.base.size} points)")
    # identify JGJFA with A x A: the pair (a, a') is the glued section of FA
    R = reflect(HBB, FA)
    if J_unit(HBB, FA) != R.unit:
        raise TypeMismatch("FA unexpectedly coarse")
    AA = HB.product(A, A)[0]
    n = R.pre.cod.base.size
    rho = R.pre.cod.rho.values.reshape(n, n)
    k = BB.size
    weights = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    table = []
    for a, a2 in itertools.product(range(2), repeat=2):
        x, x2 = R.pre.rep.table[a], R.pre.rep.table[a2]
        vals = np.array([(rho[x, z] // B.size) * B.size + rho[x2, z] % B.size
                         for z in range(n)], dtype=np.int64)
        f = int(vals @ weights)
        pos = int(np.searchsorted(R.points, f))
        table.append(int(R.lift.rep.table[pos]))
    JFA = J_object(HBB, FA)
    GJFA = Fw.obj(JFA)
    kappa = HB.compose(J_unit(HB, GJFA), PerMor(AA, GJFA, FinMap(AA.base, GJFA.base, table)))
    kinv = HB.inverse(kappa)
    rep.add("kappa-iso", kinv is not None and HB.mor_wellformed(kappa), f"{kappa}")
    eta = J_unit(HB, Fw.obj(FA))
    norm = HB.compose(kinv, HB.compose(c, eta))
    tab = norm.rep.tolist()
    demo.data["component"] = tab
    demo.say(f"normalized to A -> A x A: table {tab} (pairs (a, a') at index 2a + a')")
    rep.add("diagonal-table", tab == [0, 3], f"table {tab}")
    # no inverse among all base maps 4 -> 2
    cands = list(base_homs(AA.base, A.base))
    inverses = [g for g in cands
                if HB.mor_wellformed(PerMor(AA, A, g))
                and HB._is_inverse(norm, PerMor(AA, A, g))]
    demo.data["candidates"] = len(cands)
    demo.data["inverses"] = len(inverses)
    demo.say(f"inverse search: {len(inverses)} of {len(cands)} candidate reps invert it")
    rep.add("no-inverse", len(cands) == 16 and not inverses and HB.inverse(c) is None,
            f"{len(inverses)} inverses among {len(cands)}")
    # the other order: delta after wedge, at a coarse object over BxB
    A2 = J_object(HBB, PerObj(two, TBB.eq(two)))
    c2 = t_composition_constraint(Fd, Fw).at(A2)
    inv2 = HBB.inverse(c2) is not None
    demo.data["other_order"] = {"rep": c2.rep.tolist(), "invertible": inv2}
    demo.say(f"other order J(F eta_GA') at {A2.base.size}-point coarse A' over BxB: "
             f"rep {c2.rep.tolist()}, invertible: {inv2}")
    demo.report = rep
    return demo


def demo_unit_factorization(max_size: int = 3) -> Demo:
    B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw = _bool_setup()
    demo = Demo("unit-factorization")
    rep = LawReport("demo:unit-factorization")
    demo.say("m = fam(wedge): fam(BxB) -> fam(B); eta_m,C factored as J(eta_m,C) then "
             "J F(m)(eta_DC).")
    for n in range(max_size + 1):
        C = FinObj(n)
        fz = composite_unit_factorization(w, C, HBB, HB)
        demo.say(f"|C|={n}: epi {fz.epi.rep.tolist()} (iso {fz.epi_iso}), "
                 f"mono {fz.mono.rep.tolist()} (mono {fz.is_mono}, iso {fz.mono_iso}), "
                 f"composite equal {fz.composite_equal}")
        rep.add(f"size-{n}.epi", fz.is_epi and fz.epi_iso, f"{fz.epi}")
        rep.add(f"size-{n}.mono", fz.is_mono, f"{fz.mono}")
        rep.add(f"size-{n}.composite", fz.composite_equal, "")
        demo.data[n] = {"epi": fz.epi.rep.tolist(), "mono": fz.mono.rep.tolist(),
                        "proper_mono": fz.proper_mono}
    demo.report = rep
    return demo


def eps_witness() -> Demo:
    """A non-invertible eps_F component for F = Gamma . J : F(fam(vee)) -> F(fam(B)).

    Gamma is induced by ``a |-> [a = top]``, which preserves meets but not
    joins.  At X = (2, rho) with disjoint supports l and r and tau the
    largest PER on the same support, the two sides of the component are
    told apart by their global elements.
    """
    V = vee()
    TV, TB = FamTripos(V), FamTripos(booleans())
    HV, HB = build_F(TV), build_F(TB)
    gamma = fam_morphism(top_test_map(V), TV, TB)
    Fn = compose_functors(F_functor(gamma, HV, HB, regular=False), reflector(HV))
    two = FinObj(2)
    l, r, b, z = (V.index(x) for x in ("l", "r", "b", "0"))
    Y = PerObj(two, FamPredicate(FinObj(4), [l, z, z, r]))
    YY = HV.product(Y, Y)[0]
    tau = CompatPred(YY, FamPredicate(FinObj(4), [l, b, b, r]))
    X = PerObj(Y, tau)
    demo = Demo("eps-witness")
    rep = LawReport("demo:eps-witness")
    rep.add("object", build_F(cocover_tripos(HV)).is_per(X)[0], f"{X}")
    h = eps_F_component(Fn, X)
    ge_l = len(HB.global_elements(h.dom))
    ge_r = len(HB.global_elements(h.cod))
    inv = HB.inverse(h)
    demo.say("F = Gamma . J with Gamma = F(fam(a |-> [a = top])) : F(fam(vee)) -> F(fam(B))")
    demo.say(f"X = ((2, [[l,0],[0,r]]), tau = [[l,b],[b,r]])")
    demo.say(f"component eps_F : {h.dom} -> {h.cod}, rep {h.rep.tolist()}")
    demo.say(f"global elements: source {ge_l}, target {ge_r}; inverse found: {inv is not None}")
    demo.data.update(source_globals=ge_l, target_globals=ge_r, invertible=inv is not None)
    rep.add("wellformed", HB.mor_wellformed(h), f"{h}")
    rep.add("non-invertible", inv is None and ge_l != ge_r, f"globals {ge_l} vs {ge_r}")
    demo.report = rep
    return demo


# ---------------------------------------------------------------------------
# transporting adjunctions along T . F
# ---------------------------------------------------------------------------

def _check_tripos_adjunction(left, right, unit, counit, max_size=2):
    P, Q = left.src, left.tgt
    mapsP = [f for X in P.base.objects(max_size) for Y in P.base.objects(max_size)
             for f in P.base.homs(X, Y)]
    mapsQ = [f for X in Q.base.objects(max_size) for Y in Q.base.objects(max_size)
             for f in Q.base.homs(X, Y)]
    predsP = [p for X in P.base.objects(max_size) for p in P.enumerate_preds(X)]
    predsQ = [p for X in Q.base.objects(max_size) for p in Q.enumerate_preds(X)]
    r1 = check_transformation(unit, mapsP, predsP)
    r2 = check_transformation(counit, mapsQ, predsQ)
    bad = [e for e in r1.failures()] + [e for e in r2.failures()]
    if bad:
        raise NotAnAdjunction(f"{bad[0].check_id}: {bad[0].witness}")
    # triangles on components
    for X in P.base.objects(max_size):
        t = Q.base.compose(counit.at(left.obj(X)), left.mor(unit.at(X)))
        if not Q.base.mor_equal(t, Q.base.identity(left.obj(X))):
            raise NotAnAdjunction(f"first triangle fails at {X}")
    for Y in Q.base.objects(max_size):
        t = P.base.compose(right.mor(counit.at(Y)), unit.at(right.obj(Y)))
        if not P.base.mor_equal(t, P.base.identity(right.obj(Y))):
            raise NotAnAdjunction(f"second triangle fails at {Y}")


def transport_adjunction(left: TriposMorphism, right: TriposMorphism,
                         unit: TriposTransformation, counit: TriposTransformation,
                         objs_left=None, objs_right=None) -> Demo:
    """Apply T.F to an adjunction of triposes and re-check its triangles.

    The transported unit is ``c[R,L] . J(F unit) . eta`` and the transported
    counit is ``eps . J(F counit) . c[L,R]^-1``, where c are the composition
    constraints of T.  Objects are sampled from the coarse fragments.
    """
    _check_tripos_adjunction(left, right, unit, counit)
    HP, HQ = build_F(left.src), build_F(left.tgt)
    Fl = F_functor(left, HP, HQ)
    Fr = F_functor(right, HQ, HP)
    TL_obj = lambda A: J_object(HQ, Fl.obj(A))
    TR_obj = lambda B_: J_object(HP, Fr.obj(B_))
    cRL = t_composition_constraint(Fr, Fl)
    cLR = t_composition_constraint(Fl, Fr)
    demo = Demo(f"transport:{left.name}-|{right.name}")
    rep = LawReport(demo.name)

    def unit_at(A):
        theta = PerMor(A, Fr.obj(Fl.obj(A)), unit.at(A.base))
        return HP.compose(cRL.at(A), HP.compose(J_morphism(HP, theta), J_unit(HP, A)))

    def counit_at(B_):
        c = cLR.at(B_)
        cinv = HQ.inverse(c)
        if cinv is None:
            return None
        kappa = PerMor(Fl.obj(Fr.obj(B_)), B_, counit.at(B_.base))
        return HQ.compose(coarse_counit(HQ, B_),
                          HQ.compose(J_morphism(HQ, kappa), cinv))

    objs_left = objs_left if objs_left is not None else coarse_objects(HP, 2)
    if objs_right is None:
        objs_right = coarse_objects(HQ, 1)
        two = FinObj(2)
        objs_right.append(J_object(HQ, PerObj(two, left.tgt.eq(two))))
    for A in objs_left:
        eA = unit_at(A)
        TLA = TL_obj(A)
        rep.add(f"unit-wellformed[{A}]", HP.mor_wellformed(eA), f"{eA}")
        e2 = counit_at(TLA)
        if e2 is None:
            rep.add(f"triangle-1[{A}]", False, "composition constraint not invertible")
            continue
        lhs = HQ.compose(e2, J_morphism(HQ, Fl.mor(eA)))
        rep.add(f"triangle-1[{A}]", HQ.mor_equal(lhs, HQ.identity(TLA)), f"{lhs}")
    iso_counit = True
    for B_ in objs_right:
        eB = counit_at(B_)
        if eB is None:
            rep.add(f"triangle-2[{B_}]", False, "composition constraint not invertible")
            continue
        rep.add(f"counit-wellformed[{B_}]", HQ.mor_wellformed(eB), f"{eB}")
        iso_counit = iso_counit and HQ.inverse(eB) is not None
        TRB = TR_obj(B_)
        lhs = HP.compose(J_morphism(HP, Fr.mor(eB)), unit_at(TRB))
        rep.add(f"triangle-2[{B_}]", HP.mor_equal(lhs, HP.identity(TRB)), f"{lhs}")
    demo.data["counit_iso"] = iso_counit
    demo.say(f"transported {left.name} -| {right.name}: {rep.counts['passed']}/"
             f"{rep.counts['total']} checks pass; counit invertible on samples: {iso_counit}")
    demo.report = rep
    return demo


def diagonal_product_adjunction():
    """fam(delta) -| fam(wedge) with identity-component unit and counit."""
    B = booleans()
    BB = product(B, B)
    TB, TBB = FamTripos(B), FamTripos(BB)
    d = fam_morphism(diagonal_map(B), TB, TBB)
    w = fam_morphism(meet_map(B), TBB, TB)
    unit = fam_transformation(identity_morphism(TB), compose_morphisms(w, d), "unit")
    cou = fam_transformation(compose_morphisms(d, w), identity_morphism(TBB), "counit")
    return d, w, unit, cou


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

def biadj_suite(max_size: int = 2, algebras=None, fs_size: int | None = None) -> LawReport:
    """Triangle identities, unit and counit laws, nu and mu, and the demonstrations."""
    algebras = algebras or [booleans(), three_chain()]
    fs_size = max_size if fs_size is None else fs_size
    rep = LawReport("biadj")
    for A in algebras:
        P = FamTripos(A)
        H = build_F(P)
        nm = A.name
        rep.extend(check_unit_cell(unit_eta(P, H), max_size), f"{nm}.")
        bad = [n for n in range(max_size + 1) if not check_triangle_1(P, FinObj(n), H)]
        rep.add(f"{nm}.triangle-1", not bad, f"fails at sizes {bad}")
        objs = fs_objects(H, fs_size)
        bad2 = [X for X in objs if not check_triangle_2(H, X)]
        rep.add(f"{nm}.triangle-2", not bad2,
                f"{len(bad2)} of {len(objs)} fail, e.g. {bad2[:1]}" if bad2 else
                f"{len(objs)} objects")
        U = unit_eta(P, H)
        bad_nm = []
        for X in H.objects(max_size):
            nu = nu_component(U, X)
            mu = mu_component(H, X)
            if H.inverse(nu) is None or H.inverse(mu) is None:
                bad_nm.append(X)
        rep.add(f"{nm}.nu-mu-iso", not bad_nm, f"{bad_nm[:1]}")
        eps = counit_functor(H)
        FSH = eps.src
        bad_e = [X for X in objs if not H.is_per(eps.obj(X))[0]]
        rep.add(f"{nm}.eps-objects", not bad_e, f"{bad_e[:1]}")
        one = FSH.terminal()
        rep.add(f"{nm}.eps-terminal", eps.obj(one) == H.terminal(), f"{eps.obj(one)}")
        bad_p = []
        for X, Y in itertools.product(objs[:6], repeat=2):
            if eps.obj(FSH.product(X, Y)[0]) != H.product(eps.obj(X), eps.obj(Y))[0]:
                bad_p.append((X, Y))
        rep.add(f"{nm}.eps-products", not bad_p, f"{bad_p[:1]}")
    # unit constraints
    B, BB, TB, TBB, HB, HBB, d, w, Fd, Fw = _bool_setup()
    two = FinObj(2)
    rep.add("unit-constraint.wedge-invertible",
            all(unit_constraint_invertible(w, FinObj(n), HBB, HB) for n in range(3)), "")
    rep.add("unit-constraint.delta-invertible",
            all(unit_constraint_invertible(d, FinObj(n), HB, HBB) for n in range(3)), "")
    C3 = three_chain()
    lift = fam_morphism(lattice_map(C3, C3, lambda a: [1, 2, 2][a], "raise"),
                        FamTripos(C3), FamTripos(C3))
    rep.add("unit-constraint.raise-not-invertible",
            not unit_constraint_invertible(lift, two), "")
    # nat inv
    A = PerObj(two, TB.eq(two))
    rep.add("nat-inv.regular", check_nat_inv(Fd, A), "")
    rep.add("nat-inv.wedge-witness", not check_nat_inv(Fw, Fd.obj(A)), "")
    # demonstrations
    rep.extend(demo_intro().report, "intro.")
    rep.extend(eps_witness().report, "eps-witness.")
    dd, ww, un, co = diagonal_product_adjunction()
    rep.extend(transport_adjunction(dd, ww, un, co).report, "transport.")
    return rep


__all__ = [
    "NotAnAdjunction", "UnitCell", "unit_eta", "check_unit_cell", "unit_constraint",
    "unit_constraint_invertible", "eps_object", "eps_morphism", "CounitCell",
    "counit_functor", "counit_eps", "subquotient_span", "FS_functor", "eps_F_component",
    "nu_component", "mu_component", "check_triangle_1", "check_triangle_2", "fs_objects",
    "Factorization", "composite_unit_factorization", "Demo", "demo_intro",
    "demo_unit_factorization", "eps_witness", "transport_adjunction",
    "diagonal_product_adjunction", "biadj_suite",
]
