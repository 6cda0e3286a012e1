"""Finite Heyting algebras with eagerly tabulated operations.

Elements are dense integer indices ``0..n-1``; labels are metadata only.
All operations are looked up in numpy tables so that vectorized fiber
computations in :mod:`triposkit.tripos` can index them directly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .reports import LawReport


class NotALattice(ValueError):
    """Some pair of elements lacks a greatest lower or least upper bound."""


class NotHeyting(ValueError):
    """Some relative pseudo-complement does not exist."""


def _frozen(a) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteHeyting:
    elems: tuple[str, ...]
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    imp: np.ndarray
    top: int
    bot: int
    name: str = ""

    @property
    def size(self) -> int:
        return len(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def index(self, label) -> int:
        """Index of an element given by label (or already an index)."""
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.size:
                return int(label)
            raise KeyError(label)
        try:
            return self.elems.index(str(label))
        except ValueError:
            raise KeyError(label) from None

    def label(self, i: int) -> str:
        return self.elems[i]

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def iff(self, a: int, b: int) -> int:
        return int(self.meet[self.imp[a, b], self.imp[b, a]])

    def join_all(self, xs) -> int:
        r = self.bot
        for x in xs:
            r = int(self.join[r, x])
        return r

    def meet_all(self, xs) -> int:
        r = self.top
        for x in xs:
            r = int(self.meet[r, x])
        return r

    def key(self):
        return (self.elems, self.leq.tobytes())

    def __eq__(self, other):
        return isinstance(other, FiniteHeyting) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        nm = self.name or "FiniteHeyting"
        return f"<{nm} {list(self.elems)}>"


def _check_partial_order(leq: np.ndarray) -> None:
    n = leq.shape[0]
    for a in range(n):
        if not leq[a, a]:
            raise NotALattice(f"leq not reflexive at {a}")
    for a, b in itertools.product(range(n), repeat=2):
        if a != b and leq[a, b] and leq[b, a]:
            raise NotALattice(f"leq not antisymmetric at ({a},{b})")
    for a, b, c in itertools.product(range(n), repeat=3):
        if leq[a, b] and leq[b, c] and not leq[a, c]:
            raise NotALattice(f"leq not transitive at ({a},{b},{c})")


def from_order(elems: Sequence, leq, name: str = "") -> FiniteHeyting:
    """Build the Heyting algebra determined by a finite partial order.

    meet and join are found as unique glb/lub; ``imp(a, b)`` is the maximum
    of ``{c : c /\\ a <= b}``.
    """
    elems = tuple(str(e) for e in elems)
    n = len(elems)
    if n == 0:
        raise NotALattice("empty order has no top")
    L = np.array(leq, dtype=bool).reshape(n, n)
    _check_partial_order(L)

    def extreme(cands, upper):
        # greatest (upper=False) or least (upper=True) among cands
        for c in cands:
            if all((L[c, d] if upper else L[d, c]) for d in cands):
                return c
        return None

    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    for a, b in itertools.product(range(n), repeat=2):
        lower = [c for c in range(n) if L[c, a] and L[c, b]]
        upper = [c for c in range(n) if L[a, c] and L[b, c]]
        m = extreme(lower, upper=False)
        j = extreme(upper, upper=True)
        if m is None:
            raise NotALattice(f"no greatest lower bound of {elems[a]!r}, {elems[b]!r}")
        if j is None:
            raise NotALattice(f"no least upper bound of {elems[a]!r}, {elems[b]!r}")
        meet[a, b], join[a, b] = m, j
    top = extreme(list(range(n)), upper=False)
    bot = extreme(list(range(n)), upper=True)
    if top is None or bot is None:
        raise NotALattice("no top or bottom element")

    imp = np.zeros((n, n), dtype=np.int64)
    for a, b in itertools.product(range(n), repeat=2):
        cands = [c for c in range(n) if L[meet[c, a], b]]
        m = extreme(cands, upper=False)
        if m is None:
            raise NotHeyting(f"no implication {elems[a]!r} -> {elems[b]!r}")
        imp[a, b] = m
    return FiniteHeyting(elems, _frozen(L), _frozen(meet), _frozen(join),
                         _frozen(imp), int(top), int(bot), name)


def chain(n: int, labels: Sequence[str] | None = None) -> FiniteHeyting:
    """The n-element chain 0 < 1 < ... (labels default to 0, h, 1 for n=3)."""
    if labels is None:
        if n == 2:
            labels = ["0", "1"]
        elif n == 3:
            labels = ["0", "h", "1"]
        else:
            labels = [str(i) for i in range(n)]
    leq = [[i <= j for j in range(n)] for i in range(n)]
    return from_order(labels, leq, name=f"chain{n}")


def booleans() -> FiniteHeyting:
    """The two-element Boolean algebra B."""
    H = chain(2)
    return FiniteHeyting(H.elems, H.leq, H.meet, H.join, H.imp, H.top, H.bot, "B")


def three_chain() -> FiniteHeyting:
    return chain(3)


def trivial() -> FiniteHeyting:
    return from_order(["*"], [[True]], name="trivial")


def vee() -> FiniteHeyting:
    """Down-sets of the poset with a bottom point below two incomparable points.

    Elements 0 < b < l, r < 1 with l /\\ r = b.  Not Boolean: the
    pseudo-complement of l is 0.
    """
    labels = ["0", "b", "l", "r", "1"]
    below = {"0": {"0"}, "b": {"0", "b"}, "l": {"0", "b", "l"},
             "r": {"0", "b", "r"}, "1": set(labels)}
    leq = [[x in below[y] for y in labels] for x in labels]
    return from_order(labels, leq, name="vee")


def product(H: FiniteHeyting, K: FiniteHeyting) -> FiniteHeyting:
    """Componentwise product; pair (i, j) gets index i*|K| + j."""
    n, m = H.size, K.size
    elems = tuple(f"({a},{b})" for a in H.elems for b in K.elems)
    i = np.arange(n * m) // m
    j = np.arange(n * m) % m
    leq = H.leq[i[:, None], i[None, :]] & K.leq[j[:, None], j[None, :]]

    def comb(T, S):
        return T[i[:, None], i[None, :]] * m + S[j[:, None], j[None, :]]

    return FiniteHeyting(elems, _frozen(leq), _frozen(comb(H.meet, K.meet)),
                         _frozen(comb(H.join, K.join)), _frozen(comb(H.imp, K.imp)),
                         H.top * m + K.top, H.bot * m + K.bot,
                         f"{H.name or 'H'}x{K.name or 'K'}")


def check_heyting_laws(H: FiniteHeyting) -> LawReport:
    """Exhaustively verify order axioms, bound laws and residuation."""
    rep = LawReport(f"heyting:{H.name or 'algebra'}")
    n = H.size
    L = H.leq
    lab = H.elems

    def first(pred, arity):
        for t in itertools.product(range(n), repeat=arity):
            if not pred(*t):
                return "(" + ",".join(lab[x] for x in t) + ")"
        return None

    laws = [
        ("order.reflexive", 1, lambda a: L[a, a]),
        ("order.antisymmetric", 2, lambda a, b: a == b or not (L[a, b] and L[b, a])),
        ("order.transitive", 3, lambda a, b, c: not (L[a, b] and L[b, c]) or L[a, c]),
        ("meet.lower", 2, lambda a, b: L[H.meet[a, b], a] and L[H.meet[a, b], b]),
        ("meet.greatest", 3, lambda c, a, b: not (L[c, a] and L[c, b]) or L[c, H.meet[a, b]]),
        ("join.upper", 2, lambda a, b: L[a, H.join[a, b]] and L[b, H.join[a, b]]),
        ("join.least", 3, lambda c, a, b: not (L[a, c] and L[b, c]) or L[H.join[a, b], c]),
        ("top.greatest", 1, lambda a: L[a, H.top]),
        ("bot.least", 1, lambda a: L[H.bot, a]),
        ("residuation", 3, lambda c, a, b: bool(L[H.meet[c, a], b]) == bool(L[c, H.imp[a, b]])),
        ("distributive", 3, lambda a, b, c:
            H.meet[a, H.join[b, c]] == H.join[H.meet[a, b], H.meet[a, c]]),
    ]
    for name, arity, pred in laws:
        w = first(pred, arity)
        rep.add(name, w is None, "" if w is None else f"fails at {w}")
    return rep


def with_imp(H: FiniteHeyting, imp) -> FiniteHeyting:
    """Copy of H with a replaced implication table (used for mutation tests)."""
    return FiniteHeyting(H.elems, H.leq, H.meet, H.join, _frozen(np.array(imp)),
                         H.top, H.bot, H.name + "*")


@dataclass(frozen=True, eq=False)
class LatticeMap:
    """A total function between carriers of two finite Heyting algebras."""

    dom: FiniteHeyting
    cod: FiniteHeyting
    table: np.ndarray
    name: str = ""

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        if t.shape != (self.dom.size,) or (t.size and (t.min() < 0 or t.max() >= self.cod.size)):
            raise ValueError("lattice map table does not fit its carriers")
        object.__setattr__(self, "table", _frozen(t))

    def __call__(self, a: int) -> int:
        return int(self.table[a])


def lattice_map(dom, cod, fn, name: str = "") -> LatticeMap:
    return LatticeMap(dom, cod, np.array([fn(a) for a in range(dom.size)], dtype=np.int64), name)


def is_meet_hom(h: LatticeMap) -> bool:
    H, K, t = h.dom, h.cod, h.table
    if t[H.top] != K.top:
        return False
    return bool(np.all(t[H.meet] == K.meet[t[:, None], t[None, :]]))


def is_join_hom(h: LatticeMap) -> bool:
    H, K, t = h.dom, h.cod, h.table
    if t[H.bot] != K.bot:
        return False
    return bool(np.all(t[H.join] == K.join[t[:, None], t[None, :]]))


def diagonal_map(H: FiniteHeyting) -> LatticeMap:
    """x -> (x, x) into H x H."""
    P = product(H, H)
    return lattice_map(H, P, lambda a: a * H.size + a, "delta")


def meet_map(H: FiniteHeyting) -> LatticeMap:
    """(a, b) -> a /\\ b from H x H."""
    P = product(H, H)
    n = H.size
    return lattice_map(P, H, lambda p: int(H.meet[p // n, p % n]), "wedge")


def join_map(H: FiniteHeyting) -> LatticeMap:
    P = product(H, H)
    n = H.size
    return lattice_map(P, H, lambda p: int(H.join[p // n, p % n]), "vee")


def identity_map(H: FiniteHeyting) -> LatticeMap:
    return lattice_map(H, H, lambda a: a, "id")


def top_test_map(H: FiniteHeyting) -> LatticeMap:
    """a -> [a = top] into B; preserves meets and top but not joins in general."""
    B = booleans()
    return lattice_map(H, B, lambda a: int(a == H.top), "is_top")


# -- locale files -----------------------------------------------------------

def load_locale(source) -> FiniteHeyting:
    """Read ``{"elements": [...], "leq": [[bool]]}`` from a path, str or dict."""
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
        else:
            with open(text) as fh:
                data = json.load(fh)
    return from_order(data["elements"], data["leq"], name=data.get("name", ""))


def dump_locale(H: FiniteHeyting) -> str:
    return json.dumps({"elements": list(H.elems),
                       "leq": [[bool(x) for x in row] for row in H.leq]})


BUILTIN = {
    "bool": booleans,
    "B": booleans,
    "chain3": three_chain,
    "bool2": lambda: product(booleans(), booleans()),
    "vee": vee,
}


def builtin(name: str) -> FiniteHeyting:
    try:
        return BUILTIN[name]()
    except KeyError:
        raise KeyError(f"unknown builtin locale {name!r}; known: {sorted(BUILTIN)}") from None
