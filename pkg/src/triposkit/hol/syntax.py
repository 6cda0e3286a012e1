"""Abstract syntax of the internal higher-order language.

Variables are de Bruijn indices: ``Var(0)`` is the last variable of the
context.  Contexts are tuples of types, outermost first.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class HolError(Exception):
    pass


class ParseError(HolError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(msg + where)


class UnknownSymbol(ParseError):
    pass


class HolTypeError(HolError, TypeError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(msg + where)


# -- types -------------------------------------------------------------------

class HType:
    pass


@dataclass(frozen=True)
class Base(HType):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Unit(HType):
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Prod(HType):
    left: HType
    right: HType

    def __str__(self):
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Pow(HType):
    elem: HType

    def __str__(self):
        return f"P({self.elem})"


PROP = Pow(Unit())


# -- terms -------------------------------------------------------------------

class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    index: int

    def __str__(self):
        return f"#{self.index}"


@dataclass(frozen=True)
class App(Term):
    sym: str
    args: tuple = ()

    def __str__(self):
        return f"{self.sym}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Proj(Term):
    i: int
    term: Term

    def __str__(self):
        return f"pi{self.i}({self.term})"


@dataclass(frozen=True)
class Pair(Term):
    left: Term
    right: Term

    def __str__(self):
        return f"({self.left}, {self.right})"


@dataclass(frozen=True)
class Star(Term):
    def __str__(self):
        return "*"


# -- formulas ----------------------------------------------------------------

class Formula:
    pass


@dataclass(frozen=True)
class Top(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class Bot(Formula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} /\\ {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} \\/ {self.right})"


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} -> {self.right})"


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term

    def __str__(self):
        return f"{self.left} = {self.right}"


@dataclass(frozen=True)
class Mem(Formula):
    """``elem in coll``."""

    elem: Term
    coll: Term

    def __str__(self):
        return f"{self.elem} in {self.coll}"


@dataclass(frozen=True)
class Exists(Formula):
    ty: HType
    body: Formula
    hint: str = field(default="x", compare=False)

    def __str__(self):
        return f"(exists {self.hint}:{self.ty}. {self.body})"


@dataclass(frozen=True)
class Forall(Formula):
    ty: HType
    body: Formula
    hint: str = field(default="x", compare=False)

    def __str__(self):
        return f"(forall {self.hint}:{self.ty}. {self.body})"


@dataclass(frozen=True)
class Rel(Formula):
    sym: str
    args: tuple = ()

    def __str__(self):
        return f"{self.sym}({', '.join(map(str, self.args))})"


def Iff(a, b):
    return And(Imp(a, b), Imp(b, a))


def Not(a):
    return Imp(a, Bot())


def Tr(t: Term) -> Formula:
    """tr(p) := exists x:1. x in p, for p of type P(1)."""
    return Exists(Unit(), Mem(Var(0), shift(t, 1)), "u")


def big_and(fs):
    fs = list(fs)
    if not fs:
        return Top()
    r = fs[0]
    for f in fs[1:]:
        r = And(r, f)
    return r


@dataclass(frozen=True)
class Judgment:
    ctx: tuple
    hyps: tuple
    concl: Formula
    names: tuple = field(default=(), compare=False)

    def __str__(self):
        names = self.names or tuple(f"x{i}" for i in range(len(self.ctx)))
        ctx = ", ".join(f"{n}:{t}" for n, t in zip(names, self.ctx))
        return f"{ctx} | {', '.join(map(str, self.hyps))} |- {self.concl}"


def judgment(ctx, hyps, concl, names=()) -> Judgment:
    return Judgment(tuple(ctx), tuple(hyps), concl, tuple(names))


# -- traversal, shifting, substitution -----------------------------------------

def formula_nodes(phi):
    """All formula nodes of phi in preorder."""
    yield phi
    if isinstance(phi, (And, Or, Imp)):
        yield from formula_nodes(phi.left)
        yield from formula_nodes(phi.right)
    elif isinstance(phi, (Exists, Forall)):
        yield from formula_nodes(phi.body)


def subst(x, fn, depth: int = 0):
    """Replace free variables: ``Var(depth + i)`` becomes ``shift(fn(i), depth)``.

    ``fn`` maps a de Bruijn index of the outer context to a term in the
    target context.
    """
    if isinstance(x, Var):
        if x.index < depth:
            return x
        t = fn(x.index - depth)
        return shift_raw(t, depth) if depth else t
    if isinstance(x, App):
        return App(x.sym, tuple(subst(a, fn, depth) for a in x.args))
    if isinstance(x, Rel):
        return Rel(x.sym, tuple(subst(a, fn, depth) for a in x.args))
    if isinstance(x, Proj):
        return Proj(x.i, subst(x.term, fn, depth))
    if isinstance(x, Pair):
        return Pair(subst(x.left, fn, depth), subst(x.right, fn, depth))
    if isinstance(x, (Star, Top, Bot)):
        return x
    if isinstance(x, (And, Or, Imp)):
        return type(x)(subst(x.left, fn, depth), subst(x.right, fn, depth))
    if isinstance(x, Eq):
        return Eq(subst(x.left, fn, depth), subst(x.right, fn, depth))
    if isinstance(x, Mem):
        return Mem(subst(x.elem, fn, depth), subst(x.coll, fn, depth))
    if isinstance(x, (Exists, Forall)):
        return type(x)(x.ty, subst(x.body, fn, depth + 1), x.hint)
    raise TypeError(f"not a term or formula: {x!r}")


def shift_raw(t, d: int, cutoff: int = 0):
    if isinstance(t, Var):
        return Var(t.index + d) if t.index >= cutoff else t
    if isinstance(t, App):
        return App(t.sym, tuple(shift_raw(a, d, cutoff) for a in t.args))
    if isinstance(t, Rel):
        return Rel(t.sym, tuple(shift_raw(a, d, cutoff) for a in t.args))
    if isinstance(t, Proj):
        return Proj(t.i, shift_raw(t.term, d, cutoff))
    if isinstance(t, Pair):
        return Pair(shift_raw(t.left, d, cutoff), shift_raw(t.right, d, cutoff))
    if isinstance(t, (Star, Top, Bot)):
        return t
    if isinstance(t, (And, Or, Imp)):
        return type(t)(shift_raw(t.left, d, cutoff), shift_raw(t.right, d, cutoff))
    if isinstance(t, Eq):
        return Eq(shift_raw(t.left, d, cutoff), shift_raw(t.right, d, cutoff))
    if isinstance(t, Mem):
        return Mem(shift_raw(t.elem, d, cutoff), shift_raw(t.coll, d, cutoff))
    if isinstance(t, (Exists, Forall)):
        return type(t)(t.ty, shift_raw(t.body, d, cutoff + 1), t.hint)
    raise TypeError(f"not a term or formula: {t!r}")


def shift(x, d: int, cutoff: int = 0):
    """Add d to every free variable index >= cutoff."""
    return shift_raw(x, d, cutoff)


def substitute(x, terms):
    """Simultaneous substitution for a whole context.

    ``terms`` lists one term per variable of the source context in context
    order (outermost first), each living in the target context.
    """
    terms = list(terms)
    n = len(terms)

    def fn(i):
        if i >= n:
            raise IndexError(f"free variable #{i} outside a context of length {n}")
        return terms[n - 1 - i]

    return subst(x, fn, 0)


def weaken(x, k: int = 1):
    """Move x from context Delta into Delta, y1..yk (new variables appended)."""
    return shift_raw(x, k)
