"""Signatures and the typing rules for terms and formulas in context."""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (And, App, Base, Bot, Eq, Exists, Forall, HolTypeError, HType, Imp,
                     Judgment, Mem, Or, Pair, Pow, Prod, Proj, Rel, Star, Top, Unit,
                     UnknownSymbol, Var)


@dataclass
class Signature:
    """Base-type names, function symbols ``f : A1..An -> B`` and relation symbols."""

    types: set = field(default_factory=set)
    funs: dict = field(default_factory=dict)
    rels: dict = field(default_factory=dict)

    def add_type(self, name: str) -> None:
        self.types.add(name)

    def add_fun(self, name: str, args, result: HType) -> None:
        self.funs[name] = (tuple(args), result)

    def add_rel(self, name: str, args) -> None:
        self.rels[name] = tuple(args)

    def copy(self) -> "Signature":
        return Signature(set(self.types), dict(self.funs), dict(self.rels))

    def check_type(self, ty: HType) -> None:
        if isinstance(ty, Base):
            if ty.name not in self.types:
                raise UnknownSymbol(f"unknown type {ty.name!r}")
        elif isinstance(ty, Prod):
            self.check_type(ty.left)
            self.check_type(ty.right)
        elif isinstance(ty, Pow):
            self.check_type(ty.elem)
        elif not isinstance(ty, Unit):
            raise HolTypeError(f"not a type: {ty!r}")


def type_of(sig: Signature, ctx, t) -> HType:
    """Type of a term in a context (a tuple of types, outermost first)."""
    if isinstance(t, Var):
        if not 0 <= t.index < len(ctx):
            raise HolTypeError(f"variable #{t.index} not bound in a context of length {len(ctx)}")
        return ctx[len(ctx) - 1 - t.index]
    if isinstance(t, Star):
        return Unit()
    if isinstance(t, Pair):
        return Prod(type_of(sig, ctx, t.left), type_of(sig, ctx, t.right))
    if isinstance(t, Proj):
        ty = type_of(sig, ctx, t.term)
        if not isinstance(ty, Prod):
            raise HolTypeError(f"pi{t.i} applied to a term of type {ty}")
        return ty.left if t.i == 1 else ty.right
    if isinstance(t, App):
        if t.sym not in sig.funs:
            raise UnknownSymbol(f"unknown function symbol {t.sym!r}")
        args, res = sig.funs[t.sym]
        if len(args) != len(t.args):
            raise HolTypeError(f"{t.sym} expects {len(args)} arguments, got {len(t.args)}")
        for a, want in zip(t.args, args):
            got = type_of(sig, ctx, a)
            if got != want:
                raise HolTypeError(f"argument of {t.sym} has type {got}, expected {want}")
        return res
    raise HolTypeError(f"not a term: {t!r}")


def check_formula(sig: Signature, ctx, phi) -> None:
    """Raise HolTypeError unless phi is a well-typed formula in ctx."""
    if isinstance(phi, (Top, Bot)):
        return
    if isinstance(phi, (And, Or, Imp)):
        check_formula(sig, ctx, phi.left)
        check_formula(sig, ctx, phi.right)
    elif isinstance(phi, Eq):
        a, b = type_of(sig, ctx, phi.left), type_of(sig, ctx, phi.right)
        if a != b:
            raise HolTypeError(f"equation between types {a} and {b}")
    elif isinstance(phi, Mem):
        a, b = type_of(sig, ctx, phi.elem), type_of(sig, ctx, phi.coll)
        if not isinstance(b, Pow):
            raise HolTypeError(f"right side of 'in' has type {b}, not a power type")
        if b.elem != a:
            raise HolTypeError(f"membership of a {a} in a {b}")
    elif isinstance(phi, (Exists, Forall)):
        sig.check_type(phi.ty)
        check_formula(sig, tuple(ctx) + (phi.ty,), phi.body)
    elif isinstance(phi, Rel):
        if phi.sym not in sig.rels:
            raise UnknownSymbol(f"unknown relation symbol {phi.sym!r}")
        args = sig.rels[phi.sym]
        if len(args) != len(phi.args):
            raise HolTypeError(f"{phi.sym} expects {len(args)} arguments, got {len(phi.args)}")
        for a, want in zip(phi.args, args):
            got = type_of(sig, ctx, a)
            if got != want:
                raise HolTypeError(f"argument of {phi.sym} has type {got}, expected {want}")
    else:
        raise HolTypeError(f"not a formula: {phi!r}")


def typecheck(sig: Signature, ctx, ast):
    """Type of a term, or ``"ok"`` for a well-typed formula or judgment."""
    ctx = tuple(ctx)
    for ty in ctx:
        sig.check_type(ty)
    if isinstance(ast, Judgment):
        for ty in ast.ctx:
            sig.check_type(ty)
        for h in ast.hyps:
            check_formula(sig, ast.ctx, h)
        check_formula(sig, ast.ctx, ast.concl)
        return "ok"
    if isinstance(ast, (Top, Bot, And, Or, Imp, Eq, Mem, Exists, Forall, Rel)):
        check_formula(sig, ctx, ast)
        return "ok"
    return type_of(sig, ctx, ast)
