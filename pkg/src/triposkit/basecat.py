"""The base category of finite sets with chosen products.

Objects are :class:`FinObj` (elements are ``0..size-1``); morphisms are
:class:`FinMap` tables.  The pair ``(i, j)`` of ``X x Y`` has index
``i * |Y| + j``, so product equations hold as table equalities.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

GUARD = 10**6


class TypeMismatch(TypeError):
    """Domains and codomains do not line up."""


class SizeGuard(RuntimeError):
    """An enumeration would exceed the configured size limit."""


@dataclass(frozen=True)
class FinObj:
    size: int
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("negative size")
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError("labels do not match size")

    def __repr__(self):
        return f"FinObj({self.size})"


def _ro(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FinMap:
    dom: FinObj
    cod: FinObj
    table: np.ndarray

    def __post_init__(self):
        t = _ro(self.table).reshape(-1)
        if t.shape[0] != self.dom.size:
            raise TypeMismatch(f"table of length {t.shape[0]} for domain of size {self.dom.size}")
        if t.size and (t.min() < 0 or t.max() >= self.cod.size):
            raise TypeMismatch("table entry outside codomain")
        object.__setattr__(self, "table", t)

    def __call__(self, i: int) -> int:
        return int(self.table[i])

    def __eq__(self, other):
        return (isinstance(other, FinMap) and self.dom == other.dom
                and self.cod == other.cod and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.dom.size, self.cod.size, self.table.tobytes()))

    def tolist(self) -> list[int]:
        return [int(x) for x in self.table]

    def __repr__(self):
        return f"FinMap({self.dom.size}->{self.cod.size}, {self.tolist()})"


def _trusted(dom: FinObj, cod: FinObj, table) -> FinMap:
    """Build a FinMap from a table known to fit, skipping validation."""
    f = object.__new__(FinMap)
    t = np.asarray(table, dtype=np.int64).reshape(-1)
    t.setflags(write=False)
    object.__setattr__(f, "dom", dom)
    object.__setattr__(f, "cod", cod)
    object.__setattr__(f, "table", t)
    return f


def fin_map(dom, cod, table) -> FinMap:
    if isinstance(dom, int):
        dom = FinObj(dom)
    if isinstance(cod, int):
        cod = FinObj(cod)
    return FinMap(dom, cod, table)


def compose(g: FinMap, f: FinMap) -> FinMap:
    """g after f."""
    if f.cod != g.dom:
        raise TypeMismatch(f"cannot compose {g} after {f}")
    return _trusted(f.dom, g.cod, g.table[f.table])


def identity(X: FinObj) -> FinMap:
    return _trusted(X, X, np.arange(X.size))


def terminal() -> FinObj:
    return FinObj(1)


def bang(X: FinObj) -> FinMap:
    return _trusted(X, terminal(), np.zeros(X.size, dtype=np.int64))


@functools.lru_cache(maxsize=4096)
def _product_tables(n: int, m: int):
    idx = np.arange(n * m)
    a, b = idx // max(m, 1), idx % max(m, 1)
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b


def chosen_product(X: FinObj, Y: FinObj):
    """Return ``(XY, proj1, proj2)`` under the lexicographic pair encoding."""
    XY = FinObj(X.size * Y.size)
    a, b = _product_tables(X.size, Y.size)
    return XY, _trusted(XY, X, a), _trusted(XY, Y, b)


def product_obj(X: FinObj, Y: FinObj) -> FinObj:
    return FinObj(X.size * Y.size)


def pairing(f: FinMap, g: FinMap) -> FinMap:
    if f.dom != g.dom:
        raise TypeMismatch("pairing needs a common domain")
    return _trusted(f.dom, product_obj(f.cod, g.cod), f.table * g.cod.size + g.table)


def diagonal(X: FinObj) -> FinMap:
    i = identity(X)
    return pairing(i, i)


def product_map(f: FinMap, g: FinMap) -> FinMap:
    """f x g : A x X -> B x Y."""
    AX, p1, p2 = chosen_product(f.dom, g.dom)
    return pairing(compose(f, p1), compose(g, p2))


def homs(X: FinObj, Y: FinObj, guard: int = GUARD):
    """All maps X -> Y in lexicographic order of tables."""
    count = Y.size ** X.size
    if count > guard:
        raise SizeGuard(f"{count} maps {X.size} -> {Y.size} exceed guard {guard}")
    for t in itertools.product(range(Y.size), repeat=X.size):
        yield FinMap(X, Y, np.array(t, dtype=np.int64))


class FinSetCat:
    """Handle bundling the chosen finite-product structure of finite sets.

    :class:`triposkit.pertopos.QTopos` exposes the same method names, so
    code written against a tripos base works for both.
    """

    name = "FinSet"

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def compose(self, g, f):
        return compose(g, f)

    def identity(self, X):
        return identity(X)

    def terminal(self):
        return terminal()

    def bang(self, X):
        return bang(X)

    def product(self, X, Y):
        return chosen_product(X, Y)

    def pairing(self, f, g):
        return pairing(f, g)

    def diagonal(self, X):
        return diagonal(X)

    def product_map(self, f, g):
        return product_map(f, g)

    def mor_equal(self, f, g) -> bool:
        return f == g

    def homs(self, X, Y, guard: int = GUARD):
        return homs(X, Y, guard)

    def objects(self, max_size: int):
        return [FinObj(n) for n in range(max_size + 1)]


FINSET = FinSetCat()
