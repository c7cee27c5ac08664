"""``argshift`` command-line front end.

Every verb builds an ordered report dict.  Text mode prints it as
``key=value`` lines (lists as ``key.1=...``); ``--json`` dumps the same dict.
Exit codes: 0 success, 1 a mathematical check failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb
from typing import Any

from . import formal, lie, pencil, shifts
from .corpus import load_algebra, load_corpus, resolve, verify_corpus
from .errors import ArgshiftError, CheckFailed, InputError, LineInSingError, SingularPointError
from .io import parse_invariants, parse_point, read_text
from .poly import Poly, format_poly, format_unipoly

MAX_UNKNOWNS = 10**5
DEFAULT_ORDER = 3


class Failed(Exception):
    """Carries a report whose mathematical check did not pass (exit 1)."""

    def __init__(self, report):
        super().__init__("check failed")
        self.report = report


def _q(v) -> str:
    return str(Fraction(v))


def _vec(v) -> list[str]:
    return [_q(c) for c in v]


def _point(arg: str | None, alg: lie.LieAlgebra, flag: str) -> tuple[Fraction, ...]:
    if arg is None:
        raise InputError(f"{flag} is required")
    try:
        text = read_text(resolve(arg))
    except InputError:
        text = arg
    return parse_point(text, alg.dim)


def _invariants(args, alg):
    if not args.invariants:
        raise InputError("--invariants is required")
    return [p for _, p in parse_invariants(read_text(resolve(args.invariants)), alg.labels)]


def _guard_order(alg, order: int):
    if order < 1:
        raise InputError("--order must be at least 1")
    size = comb(alg.dim + order - 1, order)
    if size > MAX_UNKNOWNS:
        raise InputError(f"order {order} needs {size} unknowns per step (limit {MAX_UNKNOWNS})")


# -- verbs ------------------------------------------------------------------

def cmd_validate(args, alg):
    bad = lie.validate(alg)
    report = {"valid": not bad,
              "violations": [f"{i + 1} {j + 1} {k + 1} {m + 1} {_q(v)}" for (i, j, k, m), v in bad]}
    if bad:
        raise Failed(report)
    return report


def cmd_index(args, alg):
    res = lie.index(alg, args.seed)
    return {"index": res.index, "probabilistic": True, "witness": _vec(res.witness),
            "samples": res.samples, "seed": res.seed}


def cmd_ann(args, alg):
    a = _point(args.point, alg, "--point")
    basis = lie.annihilator(alg, a)
    return {"dim": len(basis), "basis": [format_poly(Poly.linear(v), alg.labels) for v in basis]}


def cmd_regular(args, alg):
    a = _point(args.point, alg, "--point")
    ind = lie.index(alg, args.seed).index
    return {"regular": lie.ann_dim(alg, a) == ind, "ann_dim": lie.ann_dim(alg, a), "index": ind}


def cmd_shift_basis(args, alg):
    a = _point(args.point, alg, "--point")
    _guard_order(alg, args.order)
    basis = formal.build_basis(alg, a, args.order, seed=args.seed)
    report: dict[str, Any] = {}
    for i, m in enumerate(basis.members, start=1):
        for k, t in enumerate(m.terms, start=1):
            report[f"f{i}.{k}"] = format_poly(t, alg.labels)
    return report


def _gens_report(S, alg):
    return {"kind": S.kind, "count": len(S),
            "generators": [format_poly(g, alg.labels) for g in S.generators],
            "provenance": [f"{i + 1}:{k}" for i, k in S.provenance]}


def cmd_build_fa(args, alg):
    a = _point(args.point, alg, "--point")
    _guard_order(alg, args.order)
    return _gens_report(shifts.build_Fa(alg, a, args.order, seed=args.seed), alg)


def cmd_build_ya(args, alg):
    a = _point(args.point, alg, "--point")
    return _gens_report(shifts.build_Ya(alg, a, _invariants(args, alg)), alg)


def _generator_set(args, alg, a):
    if args.invariants:
        return shifts.build_Ya(alg, a, _invariants(args, alg))
    _guard_order(alg, args.order)
    return shifts.build_Fa(alg, a, args.order, seed=args.seed)


def cmd_commute(args, alg):
    a = _point(args.point, alg, "--point")
    S = _generator_set(args, alg, a)
    rep = shifts.commutativity_check(alg, a, S)

    def fail(f):
        if f is None:
            return "none"
        i, j, v = f
        return f"{i + 1},{j + 1}: {format_poly(v, alg.labels)}"

    report = {"commute": rep.ok, "kind": S.kind, "pairs": rep.pairs,
              "poisson_failure": fail(rep.poisson_failure), "frozen_failure": fail(rep.frozen_failure)}
    if not rep.ok:
        raise Failed(report)
    return report


def cmd_trdeg(args, alg):
    a = _point(args.point, alg, "--point")
    S = _generator_set(args, alg, a)
    res = shifts.trdeg(alg, S, seed=args.seed)
    return {"trdeg": res.trdeg, "probabilistic": True, "kind": S.kind, "samples": res.samples,
            "seed": res.seed}


def cmd_compare(args, alg):
    a = _point(args.point, alg, "--point")
    x = _point(args.x, alg, "--x")
    res = shifts.span_compare(alg, a, _invariants(args, alg), x, seed=args.seed)
    report = {"dim_dYa": res.dim_dYa, "dim_dFa": res.dim_dFa, "included": res.included,
              "equal": res.equal,
              "linear_Ya": [format_poly(g, alg.labels) for g in res.linear_Ya],
              "linear_Fa_dim": res.linear_Fa_dim,
              "swap_checked": res.swap_checked,
              "swap_holds": "n/a" if res.swap_holds is None else res.swap_holds}
    if res.swap_holds is False:
        raise Failed(report)
    return report


def cmd_crit(args, alg):
    y = _point(args.point, alg, "--point")
    return {"crit": shifts.crit_test(alg, _invariants(args, alg), y, seed=args.seed)}


def cmd_prop1(args, alg):
    a = _point(args.point, alg, "--point")
    res = shifts.prop1_test(alg, a, _invariants(args, alg), seed=args.seed)
    return {"condition1": res.condition1, "condition2": res.condition2, "agree": res.agree,
            "probabilistic": True, "samples": res.samples, "seed": res.seed}


def cmd_semiinv_degree(args, alg):
    res = pencil.semiinvariant_degree(alg, seed=args.seed)
    return {"semiinv_degree": res.degree, "probabilistic": True, "line_degrees": list(res.degrees),
            "seed": res.seed}


def cmd_complete(args, alg):
    res = pencil.semiinvariant_degree(alg, seed=args.seed)
    return {"complete": res.degree == 0, "probabilistic": True, "semiinv_degree": res.degree,
            "seed": res.seed}


def cmd_dim_dfa(args, alg):
    x = _point(args.point, alg, "--point")
    a = _point(args.shift, alg, "--shift")
    value = pencil.dim_dFa(alg, x, a, seed=args.seed)
    rep = pencil.line_gcd(alg, x, a, seed=args.seed)
    return {"dim_dFa": value, "p_xa": format_unipoly(rep.p_xa), "degree": rep.degree,
            "minor_count": rep.minor_count, "minor_size": rep.minor_size,
            "pencil_rank": rep.pencil_rank, "sampled_lambdas": _vec(rep.sampled_lambdas)}


def cmd_sing1(args, alg):
    a = _point(args.point, alg, "--point")
    res = pencil.sing1_test(alg, a, seed=args.seed)
    return {"in_sing1": res.in_sing1, "probabilistic": res.probabilistic,
            "certificate": "none" if res.certificate is None else _vec(res.certificate),
            "target_degree": res.target_degree, "samples": res.samples}


def cmd_verify_corpus(args, _alg):
    entries = load_corpus(args.corpus) if args.corpus else load_corpus()
    results = verify_corpus(entries, seed=args.seed)
    report: dict[str, Any] = {"facts": len(results), "failed": sum(not r.ok for r in results)}
    if not results:
        report["warning"] = "empty corpus"
    for r in results:
        key = f"{r.entry}.{r.fact}"
        n = 2
        while key in report:
            key = f"{r.entry}.{r.fact}#{n}"
            n += 1
        report[key] = "pass" if r.ok else f"FAIL expected={r.expected!r} actual={r.actual!r}"
    if report["failed"]:
        raise Failed(report)
    return report


VERBS = {
    "validate": cmd_validate,
    "index": cmd_index,
    "ann": cmd_ann,
    "regular": cmd_regular,
    "shift-basis": cmd_shift_basis,
    "build-fa": cmd_build_fa,
    "build-ya": cmd_build_ya,
    "commute": cmd_commute,
    "trdeg": cmd_trdeg,
    "compare": cmd_compare,
    "crit": cmd_crit,
    "prop1": cmd_prop1,
    "semiinv-degree": cmd_semiinv_degree,
    "complete": cmd_complete,
    "dim-dfa": cmd_dim_dfa,
    "sing1": cmd_sing1,
    "verify-corpus": cmd_verify_corpus,
}


# -- output -----------------------------------------------------------------

def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def flatten(report: dict) -> list[tuple[str, str]]:
    """The ``key=value`` lines of the text format, before annotation."""
    out = []
    for k, v in report.items():
        if isinstance(v, list):
            if not v:
                out.append((k, "[]"))
            for i, item in enumerate(v, start=1):
                if isinstance(item, list):
                    item = " ".join(_scalar(c) for c in item)
                out.append((f"{k}.{i}", _scalar(item)))
        else:
            out.append((k, _scalar(v)))
    return out


def render_text(report: dict) -> str:
    lines = flatten({k: v for k, v in report.items() if k != "probabilistic"})
    if report.get("probabilistic") and lines:
        k, v = lines[0]
        lines[0] = (k, v + " (probabilistic)")
    return "".join(f"{k}={v}\n" for k, v in lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="argshift",
                                description="Shift-method commutative subalgebras over Q.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("--algebra", help="structure-constant file (or corpus/NAME.alg)")
    p.add_argument("--point", help="point file or comma-separated rationals")
    p.add_argument("--x", help="evaluation point for compare")
    p.add_argument("--shift", help="shift direction for dim-dfa")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--invariants", help="file with one invariant polynomial per line")
    p.add_argument("--corpus", help="directory of *.facts.json for verify-corpus")
    p.add_argument("--seed", type=int, default=lie.DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    code = 0
    try:
        alg = None
        if args.verb != "verify-corpus":
            if not args.algebra:
                raise InputError("--algebra is required")
            alg = load_algebra(args.algebra)
        try:
            report = VERBS[args.verb](args, alg)
        except Failed as f:
            report, code = f.report, 1
    except InputError as exc:
        print(f"argshift: input error: {exc}", file=err)
        return 2
    except (SingularPointError, LineInSingError) as exc:
        print(f"argshift: {exc}", file=err)
        return 2
    except (CheckFailed, ArgshiftError) as exc:
        print(f"argshift: check failed: {exc}", file=err)
        return 1
    if args.json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(render_text(report))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
