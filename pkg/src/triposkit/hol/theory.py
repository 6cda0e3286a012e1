"""Theory files: a locale, finite base types, symbol tables and named judgments.

Example::

    locale chain3;
    type A = set 2;
    fun f : A -> A = [1, 0];
    rel R : A = [h, 0];
    judgment j1 : x:A | R(x) |- exists y:A. R(y);
    per X : A = [[h, 0], [0, 1]];
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..basecat import FinMap, FinObj
from ..lattice import FiniteHeyting, booleans, builtin, load_locale
from ..tripos import FamPredicate, FamTripos
from .parser import Parser
from .semantics import Interpretation
from .syntax import Judgment, ParseError, Unit
from .typing import Signature


@dataclass
class Theory:
    locale: FiniteHeyting
    interp: Interpretation
    judgments: dict = field(default_factory=dict)
    pers: dict = field(default_factory=dict)

    @property
    def tripos(self) -> FamTripos:
        return self.interp.tripos

    @property
    def sig(self) -> Signature:
        return self.interp.sig


class _TheoryParser(Parser):
    def __init__(self, src, base_dir="."):
        super().__init__(src, Signature())
        self.base_dir = base_dir
        self.theory: Theory | None = None

    def _ensure(self):
        if self.theory is None:
            A = booleans()
            self.theory = Theory(A, Interpretation(FamTripos(A), sig=self.sig))
        return self.theory

    def values(self):
        """A bracketed list of numbers / names, possibly nested."""
        self.expect("[")
        out = []
        if self.accept("]"):
            return out
        while True:
            t = self.tok
            if self.at("["):
                out.append(self.values())
            elif t.kind in ("num", "id", "str"):
                self.i += 1
                out.append(t.text.strip('"'))
            else:
                raise self.error(f"expected a table entry, found {t.text!r}")
            if not self.accept(","):
                break
        self.expect("]")
        return out

    def type_list(self, stop):
        args = []
        if self.at(*stop):
            return args
        args.append(self.type_())
        while self.accept(","):
            args.append(self.type_())
        return args

    def run(self) -> Theory:
        while self.tok.kind != "eof":
            start = self.tok
            kw = self.name() if self.tok.kind == "id" else None
            if kw == "locale":
                if self.theory is not None:
                    raise self.error("locale must come first", start)
                t = self.tok
                self.i += 1
                try:
                    if t.kind == "str":
                        path = os.path.join(self.base_dir, t.text.strip('"'))
                        A = load_locale(path)
                    else:
                        A = builtin(t.text)
                except (KeyError, OSError, ValueError) as e:
                    raise ParseError(f"cannot load locale: {e}", t.line, t.col) from None
                self.theory = Theory(A, Interpretation(FamTripos(A), sig=self.sig))
            elif kw == "type":
                th = self._ensure()
                name = self.name()
                self.expect("=")
                if self.name() != "set":
                    raise self.error("expected 'set'", start)
                if self.at("{"):
                    self.i += 1
                    labels = [self.name()]
                    while self.accept(","):
                        labels.append(self.name())
                    self.expect("}")
                    obj = FinObj(len(labels), tuple(labels))
                else:
                    t = self.tok
                    if t.kind != "num":
                        raise self.error("expected a set size")
                    self.i += 1
                    obj = FinObj(int(t.text))
                th.interp.declare_type(name, obj)
            elif kw == "fun":
                th = self._ensure()
                name = self.name()
                self.expect(":")
                args = self.type_list(("->",))
                self.expect("->")
                res = self.type_()
                self.expect("=")
                tab = self.values()
                dom = th.interp.ctx_obj(tuple(args))
                cod = th.interp.obj(res)
                try:
                    table = [int(v) for v in tab]
                    mor = FinMap(dom, cod, table)
                except (ValueError, TypeError) as e:
                    raise ParseError(f"bad table for {name}: {e}", start.line, start.col) from None
                th.interp.declare_fun(name, args, res, mor)
            elif kw == "rel":
                th = self._ensure()
                name = self.name()
                self.expect(":")
                args = self.type_list(("=",))
                self.expect("=")
                tab = self.values()
                over = th.interp.ctx_obj(tuple(args))
                try:
                    pred = FamPredicate(over, [th.locale.index(v) for v in tab])
                except (KeyError, TypeError) as e:
                    raise ParseError(f"bad values for {name}: {e}", start.line, start.col) from None
                th.interp.declare_rel(name, args, pred)
            elif kw == "judgment":
                th = self._ensure()
                name = self.name()
                self.expect(":")
                th.judgments[name] = self.judgment()
            elif kw == "per":
                th = self._ensure()
                name = self.name()
                self.expect(":")
                ty = self.type_()
                self.expect("=")
                if self.at("["):
                    spec = self.values()
                else:
                    spec = self.name()
                th.pers[name] = (ty, spec, start)
            else:
                raise self.error(f"unknown declaration {start.text!r}", start)
            self.expect(";")
        return self._ensure()


def load_theory(src: str, base_dir: str = ".") -> Theory:
    """Parse theory text (not a path)."""
    return _TheoryParser(src, base_dir).run()


def load_theory_file(path: str) -> Theory:
    with open(path) as fh:
        return load_theory(fh.read(), os.path.dirname(os.path.abspath(path)))


def per_object(theory: Theory, name: str, H=None):
    """Build the PerObj named in a theory inside ``H = build_F(fam(locale))``."""
    from ..pertopos import NotAPer, PerObj, build_F

    if name not in theory.pers:
        raise KeyError(f"no per named {name!r}")
    ty, spec, tok = theory.pers[name]
    T = theory.tripos
    H = H or build_F(T)
    C = theory.interp.obj(ty)
    CC = T.base.product(C, C)[0]
    if spec == "eq":
        rho = T.eq(C)
    elif spec == "top":
        rho = T.top(CC)
    elif isinstance(spec, list):
        flat = []
        for row in spec:
            flat.extend(row if isinstance(row, list) else [row])
        try:
            rho = FamPredicate(CC, [theory.locale.index(v) for v in flat])
        except (KeyError, TypeError) as e:
            raise ParseError(f"bad PER table for {name}: {e}", tok.line, tok.col) from None
    else:
        raise ParseError(f"unknown PER form {spec!r}", tok.line, tok.col)
    X = PerObj(C, rho)
    ok, why = H.is_per(X)
    if not ok:
        raise NotAPer(f"{name} is not a partial equivalence relation: {why}")
    return H, X


__all__ = ["Theory", "load_theory", "load_theory_file", "per_object", "Unit", "Judgment"]
