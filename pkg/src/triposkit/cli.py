"""Command-line front end.

    triposkit check THEORY JUDGMENT
    triposkit laws {heyting,tripos,hol,pertopos,coarse,biadj,all}
    triposkit demo {intro,unit-factorization,eps-witness}
    triposkit reflect THEORY OBJECT

Exit codes: 0 pass, 1 semantic failure, 2 usage or parse error, 3 size guard.
"""

from __future__ import annotations

import argparse
import sys

from .basecat import SizeGuard
from .reports import LawReport

SUITES = ("heyting", "tripos", "hol", "pertopos", "coarse", "biadj", "all")
DEMOS = ("intro", "unit-factorization", "eps-witness")
# exhaustive suites enumerate every PER up to this carrier size
LAWS_MAX_SIZE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-size", type=int, default=2)
    common.add_argument("--format", choices=("human", "jsonl"), default="human")
    common.add_argument("--out", default=None)
    p = _Parser(prog="triposkit",
                description="Finite triposes, PER toposes and coarse reflection.")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)
    c = sub.add_parser("check", parents=[common], help="decide a judgment of a theory file")
    c.add_argument("theory")
    c.add_argument("judgment")
    lw = sub.add_parser("laws", parents=[common], help="run a law suite")
    lw.add_argument("suite", choices=SUITES)
    d = sub.add_parser("demo", parents=[common], help="print a worked scenario")
    d.add_argument("name", choices=DEMOS)
    r = sub.add_parser("reflect", parents=[common], help="coarse reflection of a PER object")
    r.add_argument("theory")
    r.add_argument("object")
    return p


# ---------------------------------------------------------------------------

def run_suite(name: str, seed: int = 0, max_size: int = 2) -> LawReport:
    from .lattice import booleans, check_heyting_laws, three_chain, vee
    from .pertopos import build_F, pertopos_suite
    from .tripos import FamTripos, tripos_law_suite

    algebras = [booleans(), three_chain()]
    rep = LawReport(name, seed=seed)
    if name in ("heyting", "all"):
        for A in algebras + [vee()]:
            rep.extend(check_heyting_laws(A), f"heyting.{A.name}.")
    if name in ("tripos", "all"):
        for A in algebras:
            rep.extend(tripos_law_suite(FamTripos(A), max_size), f"tripos.{A.name}.")
    if name in ("hol", "all"):
        from .hol.checks import hol_law_suite
        rep.extend(hol_law_suite(seed=seed, algebras=algebras), "hol.")
    if name in ("pertopos", "all"):
        for A in algebras:
            rep.extend(pertopos_suite(build_F(FamTripos(A)), max_size), f"pertopos.{A.name}.")
    if name in ("coarse", "all"):
        from .coarse import topos_checks
        for A in algebras:
            rep.extend(topos_checks(build_F(FamTripos(A)), max_size), f"coarse.{A.name}.")
    if name in ("biadj", "all"):
        from .biadj import biadj_suite
        rep.extend(biadj_suite(max_size), "biadj.")
    return rep


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_laws(args) -> int:
    if args.max_size < 0 or args.max_size > LAWS_MAX_SIZE:
        print(f"SizeGuard: --max-size {args.max_size} exceeds the exhaustive limit "
              f"{LAWS_MAX_SIZE}", file=sys.stderr)
        return 2
    try:
        rep = run_suite(args.suite, args.seed, args.max_size)
    except SizeGuard as e:
        print(f"SizeGuard: {e}", file=sys.stderr)
        return 2
    _emit(rep.to_jsonl() if args.format == "jsonl" else rep.to_human(), args.out)
    return 0 if rep.ok else 1


def cmd_check(args) -> int:
    from .hol.semantics import holds
    from .hol.theory import load_theory_file

    th = load_theory_file(args.theory)
    if args.judgment not in th.judgments:
        raise UsageError(f"no judgment named {args.judgment!r}")
    res = holds(th.interp, th.judgments[args.judgment])
    if args.format == "jsonl":
        import json
        text = json.dumps({"judgment": args.judgment, "holds": res.ok,
                           "witness": None if res.witness is None else str(res.witness)},
                          sort_keys=True) + "\n"
    else:
        text = f"{args.judgment}: holds\n" if res.ok else (
            f"{args.judgment}: fails\ncountermodel: context point {res.witness}\n")
    _emit(text, args.out)
    return 0 if res.ok else 1


def cmd_demo(args) -> int:
    from . import biadj

    if args.name == "intro":
        d = biadj.demo_intro()
    elif args.name == "unit-factorization":
        d = biadj.demo_unit_factorization(max(args.max_size, 3))
    else:
        d = biadj.eps_witness()
    if args.format == "jsonl":
        d.report.seed = args.seed
        text = d.report.to_jsonl()
    else:
        text = d.to_text()
    _emit(text, args.out)
    return 0 if d.ok else 1


def cmd_reflect(args) -> int:
    from .coarse import reflect
    from .hol.theory import load_theory_file, per_object

    th = load_theory_file(args.theory)
    try:
        H, X = per_object(th, args.object)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    R = reflect(H, X)
    coarse = H.inverse(R.unit) is not None
    A = th.locale
    n = R.coarse.base.size
    rows = R.coarse.rho.values.reshape(n, n)
    lines = [f"object {args.object}: {X.base.size} points over {A.name}",
             f"reflection: {n} points",
             "relation:"]
    lines += ["  [" + ", ".join(A.label(int(v)) for v in row) + "]" for row in rows]
    lines.append(f"unit rep: {R.unit.rep.tolist()}")
    lines.append(f"coarse: {'yes' if coarse else 'no'} (unit {'invertible' if coarse else 'not invertible'})")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    from .hol.syntax import HolError
    from .pertopos import NotAPer

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.cmd is None:
            raise UsageError("a command is required")
        handler = {"check": cmd_check, "laws": cmd_laws, "demo": cmd_demo,
                   "reflect": cmd_reflect}[args.cmd]
        return handler(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (HolError, NotAPer, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SizeGuard as e:
        print(f"SizeGuard: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
