"""Recursive-descent parser for the ASCII syntax of the internal language.

Grammar (informal)::

    type     := atom ('*' atom)*          atom := 1 | prop | P(type) | (type) | NAME
    ctx      := [NAME ':' type (',' NAME ':' type)*]
    judgment := ctx '|' [formula (',' formula)*] '|-' formula  |  ctx '|' formula
    formula  := imp ['<->' imp]           imp  := or ['->' imp]
    or       := and ('\\/' and)*          and  := unary ('/\\' unary)*
    unary    := '~' unary | (exists|forall) NAME ':' type (',' ...)* '.' formula | atom
    atom     := true | false | tr(term) | (formula) | R(term, ...) | term (= | in) term
    term     := NAME | f(term, ...) | * | (term, term, ...) | pi1 term | pi2 term
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (And, App, Base, Bot, Eq, Exists, Forall, HolTypeError, Iff, Imp,
                     Judgment, Mem, Not, Or, Pair, ParseError, Pow, Prod, Proj, Rel,
                     Star, Top, Tr, Unit, UnknownSymbol, Var)
from .typing import Signature, check_formula, type_of

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*|//[^\n]*)
  | (?P<str>"[^"\n]*")
  | (?P<op>\|-|<->|->|/\\|\\/|[()\[\]{},:;.=*|~])
  | (?P<num>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_']*)
""", re.X)

KEYWORDS = {"true", "false", "exists", "forall", "in", "tr", "pi1", "pi2", "P", "prop"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    toks = []
    pos, line, lstart = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - lstart + 1)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            toks.append(Token(kind, text, line, pos - lstart + 1))
        nl = text.count("\n")
        if nl:
            line += nl
            lstart = pos + text.rindex("\n") + 1
        pos = m.end()
    toks.append(Token("eof", "", line, pos - lstart + 1))
    return toks


class Parser:
    def __init__(self, src: str, sig: Signature):
        self.toks = tokenize(src)
        self.i = 0
        self.sig = sig

    # -- token helpers -------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, *texts) -> bool:
        t = self.tok
        return t.kind in ("op", "id", "num") and t.text in texts

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def name(self) -> str:
        t = self.tok
        if t.kind != "id" or t.text in KEYWORDS:
            raise self.error(f"expected a name, found {t.text or 'end of input'!r}")
        self.i += 1
        return t.text

    def done(self) -> None:
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")

    # -- types -------------------------------------------------------------
    def type_(self):
        ty = self.type_atom()
        while self.at("*"):
            self.i += 1
            ty = Prod(ty, self.type_atom())
        return ty

    def type_atom(self):
        t = self.tok
        if t.kind == "num" and t.text == "1":
            self.i += 1
            return Unit()
        if self.accept("prop"):
            return Pow(Unit())
        if self.at("P") and self.peek().text == "(":
            self.i += 2
            inner = self.type_()
            self.expect(")")
            return Pow(inner)
        if self.accept("("):
            ty = self.type_()
            self.expect(")")
            return ty
        if t.kind == "id" and t.text not in KEYWORDS:
            if t.text not in self.sig.types:
                raise self.error(f"unknown type {t.text!r}", t, UnknownSymbol)
            self.i += 1
            return Base(t.text)
        raise self.error(f"expected a type, found {t.text or 'end of input'!r}")

    # -- contexts and judgments ------------------------------------------------
    def context(self):
        names, types = [], []
        if self.at("|", "|-") or self.tok.kind == "eof":
            return names, types
        while True:
            names.append(self.name())
            self.expect(":")
            types.append(self.type_())
            if not self.accept(","):
                break
        return names, types

    def judgment(self) -> Judgment:
        names, types = self.context()
        scope = (list(names), list(types))
        if self.accept("|-"):
            return Judgment(tuple(types), (), self.formula(scope), tuple(names))
        self.expect("|")
        hyps = []
        if self.accept("|-"):
            return Judgment(tuple(types), (), self.formula(scope), tuple(names))
        hyps.append(self.formula(scope))
        while self.accept(","):
            hyps.append(self.formula(scope))
        if self.accept("|-"):
            return Judgment(tuple(types), tuple(hyps), self.formula(scope), tuple(names))
        if len(hyps) != 1:
            raise self.error("expected '|-' after a list of hypotheses")
        return Judgment(tuple(types), (), hyps[0], tuple(names))

    # -- formulas ------------------------------------------------------------
    def formula(self, scope):
        left = self.implication(scope)
        if self.accept("<->"):
            return Iff(left, self.implication(scope))
        return left

    def implication(self, scope):
        left = self.disjunction(scope)
        if self.accept("->"):
            return Imp(left, self.implication(scope))
        return left

    def disjunction(self, scope):
        left = self.conjunction(scope)
        while self.accept("\\/"):
            left = Or(left, self.conjunction(scope))
        return left

    def conjunction(self, scope):
        left = self.unary(scope)
        while self.accept("/\\"):
            left = And(left, self.unary(scope))
        return left

    def unary(self, scope):
        if self.accept("~"):
            return Not(self.unary(scope))
        if self.at("exists", "forall"):
            kind = Exists if self.tok.text == "exists" else Forall
            self.i += 1
            binders = []
            while True:
                n = self.name()
                self.expect(":")
                binders.append((n, self.type_()))
                if not self.accept(","):
                    break
            self.expect(".")
            names, types = scope
            inner = (names + [b[0] for b in binders], types + [b[1] for b in binders])
            body = self.formula(inner)
            for n, ty in reversed(binders):
                body = kind(ty, body, n)
            return body
        return self.atom(scope)

    def _checked(self, scope, node, tok):
        try:
            check_formula(self.sig, tuple(scope[1]), node)
        except HolTypeError as e:
            raise HolTypeError(str(e).split(" at line")[0], tok.line, tok.col) from None
        return node

    def atom(self, scope):
        t = self.tok
        if self.accept("true"):
            return Top()
        if self.accept("false"):
            return Bot()
        if self.at("tr") and self.peek().text == "(":
            self.i += 2
            arg = self.term(scope)
            self.expect(")")
            node = Tr(arg)
            return self._checked(scope, node, t)
        if self.at("("):
            save = self.i
            try:
                self.i += 1
                inner = self.formula(scope)
                self.expect(")")
                if not self.at("=", "in"):
                    return inner
            except (ParseError, HolTypeError):
                pass
            self.i = save
        if (t.kind == "id" and t.text in self.sig.rels and t.text not in scope[0]):
            self.i += 1
            args = self.arguments(scope) if self.at("(") else ()
            return self._checked(scope, Rel(t.text, tuple(args)), t)
        left = self.term(scope)
        op = self.tok
        if self.accept("="):
            node = Eq(left, self.term(scope))
        elif self.accept("in"):
            node = Mem(left, self.term(scope))
        else:
            raise self.error(f"expected '=' or 'in' after a term, found {op.text or 'end of input'!r}")
        return self._checked(scope, node, op)

    # -- terms ---------------------------------------------------------------
    def arguments(self, scope):
        self.expect("(")
        args = []
        if self.accept(")"):
            return args
        args.append(self.term(scope))
        while self.accept(","):
            args.append(self.term(scope))
        self.expect(")")
        return args

    def term(self, scope):
        t = self.tok
        if self.at("pi1", "pi2"):
            self.i += 1
            i = 1 if t.text == "pi1" else 2
            node = Proj(i, self.term(scope))
            return self._typed(scope, node, t)
        if self.accept("*"):
            return Star()
        if self.at("("):
            self.i += 1
            items = [self.term(scope)]
            while self.accept(","):
                items.append(self.term(scope))
            self.expect(")")
            node = items[0]
            for it in items[1:]:
                node = Pair(node, it)
            return node
        if t.kind == "id" and t.text not in KEYWORDS:
            names = scope[0]
            if t.text in names:
                self.i += 1
                pos = len(names) - 1 - names[::-1].index(t.text)
                return Var(len(names) - 1 - pos)
            if t.text in self.sig.funs:
                self.i += 1
                args = self.arguments(scope) if self.at("(") else []
                return self._typed(scope, App(t.text, tuple(args)), t)
            raise self.error(f"unknown symbol {t.text!r}", t, UnknownSymbol)
        raise self.error(f"expected a term, found {t.text or 'end of input'!r}")

    def _typed(self, scope, node, tok):
        try:
            type_of(self.sig, tuple(scope[1]), node)
        except HolTypeError as e:
            raise HolTypeError(str(e).split(" at line")[0], tok.line, tok.col) from None
        return node


def parse_type(src: str, sig: Signature):
    p = Parser(src, sig)
    ty = p.type_()
    p.done()
    return ty


def parse_judgment(src: str, sig: Signature) -> Judgment:
    p = Parser(src, sig)
    j = p.judgment()
    p.done()
    return j


def parse_formula(src: str, sig: Signature, names=(), types=()):
    p = Parser(src, sig)
    phi = p.formula((list(names), list(types)))
    p.done()
    return phi


def parse_term(src: str, sig: Signature, names=(), types=()):
    p = Parser(src, sig)
    t = p.term((list(names), list(types)))
    p.done()
    return t


def parse(src: str, sig: Signature | None = None):
    """Parse a judgment or formula in context (``ctx | phi`` or ``ctx | G |- phi``)."""
    return parse_judgment(src, sig or Signature())
