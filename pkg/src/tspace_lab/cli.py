"""Command-line front end: ``tspace-lab <command> ...``.

Exit codes: 0 when every check passes, 1 on any failure, 2 when something
was skipped or inconclusive, 64 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from math import comb
from pathlib import Path
from typing import Optional

import numpy as np

from .binom import prime_of, special_binomial, special_case, special_domain
from .bivar import check_g_formula, check_h, g_closed_form, g_of, random_alphas
from .constructions import b1r_set, en_set, un_basis, wn_generators, yn_set
from .gf import FieldError, field_of_order
from .poly import parse_poly
from .quotient import project, quot_ctx
from .subspace import sp_contains
from .suites import SUITES, SuiteReport, pick_strategy
from .tclosure import Certificate, CertificateError, ClosureError, replay, s_closure, verify_certificate

EXIT_OK, EXIT_FAIL, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _status_code(status: str) -> int:
    return {"pass": EXIT_OK, "info": EXIT_OK, "fail": EXIT_FAIL}.get(status, EXIT_UNDECIDED)


# ---- suite -------------------------------------------------------------------------

def _suite_kwargs(args) -> dict:
    name = args.name
    common = {"strategy": args.strategy, "seed": 0 if args.seed is None else args.seed, "stall": args.stall}
    if name == "bases":
        return {"q": args.q, "n": args.n or 1, **common}
    if name == "wn-props":
        return {"q": args.q, "n": args.n or 1, "trials": args.trials, "seed": 42 if args.seed is None else args.seed}
    if name == "containment":
        return {"q": args.q, "r": args.r or 0, "m": 3 if args.m is None else args.m, **common}
    if name == "sum":
        return {"q": args.q, "r": args.r or 0, "s": 1 if args.s is None else args.s, **common}
    if name == "maximality":
        return {"q": args.q, "n": args.n or 1, **common}
    return {"q": args.q}


def _write_certs(rep: SuiteReport, root: Path) -> None:
    folder = root / rep.suite
    folder.mkdir(parents=True, exist_ok=True)
    for key, cert in sorted(rep.certificates.items()):
        (folder / f"{key}.json").write_text(_dump(cert.to_json()))


def cmd_suite(args) -> int:
    try:
        rep = SUITES[args.name](**_suite_kwargs(args))
    except (ValueError, OverflowError) as exc:
        raise UsageError(str(exc)) from exc
    for rec in rep.records:
        print(f"{rec.status:<12} {rec.claim}")
    counts = ", ".join(f"{k}={v}" for k, v in rep.counts().items() if v)
    print(f"{rep.suite}: {counts}")
    if args.json:
        Path(args.json).write_text(rep.dumps(args.timings))
    if args.certs:
        _write_certs(rep, Path(args.certs))
    return rep.exit_code()


# ---- emit --------------------------------------------------------------------------

def cmd_emit(args) -> int:
    F = field_of_order(args.q)
    n = args.n or 1
    try:
        if args.object == "wn":
            polys = wn_generators(F, n)
        elif args.object == "un":
            polys = un_basis(F, n, args.count or quot_ctx(F, n).D)
        elif args.object == "en":
            polys = en_set(F, n)
        elif args.object == "yn":
            polys = yn_set(F, n)
        else:
            if args.r is None:
                raise UsageError("--object b1r needs --r")
            polys = b1r_set(F, args.r)
    except (ValueError, OverflowError) as exc:
        raise UsageError(str(exc)) from exc
    out = {
        "object": args.object,
        "field": F.to_json(),
        "n": n,
        "count": len(polys),
        "elements": [p.to_json() for p in polys],
        "display": [str(p) for p in polys],
    }
    if args.object == "b1r":
        out["r"] = args.r
    sys.stdout.write(_dump(out))
    return EXIT_OK


# ---- closure / membership -------------------------------------------------------

def _closure_setup(args):
    F = field_of_order(args.q)
    ctx = quot_ctx(F, args.n or 1)
    try:
        gens = [parse_poly(F, g) for g in args.gens]
        strat = pick_strategy(args.strategy, ctx, args.seed or 0, args.stall, fallback=False)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return F, ctx, gens, strat


def cmd_closure(args) -> int:
    F, ctx, gens, strat = _closure_setup(args)
    try:
        B, cert = s_closure(gens, ctx, strat)
    except ClosureError as exc:
        print(f"skipped: {exc}")
        return EXIT_UNDECIDED
    out = {"field": F.to_json(), "n": ctx.n, "D": ctx.D, "dim": B.dim(), "codim": ctx.D - B.dim(),
           "generators": [str(g) for g in gens], "strategy": strat.to_json(), "basis": B.to_json()}
    sys.stdout.write(_dump(out))
    if args.json:
        Path(args.json).write_text(_dump(out))
    if args.cert:
        Path(args.cert).write_text(_dump(cert.to_json()))
    return EXIT_OK


def cmd_membership(args) -> int:
    F, ctx, gens, strat = _closure_setup(args)
    try:
        target = parse_poly(F, args.target)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        B, _ = s_closure(gens, ctx, strat)
    except ClosureError as exc:
        print(f"skipped: {exc}")
        return EXIT_UNDECIDED
    inside = sp_contains(B, project(target, ctx))
    if inside:
        verdict = "member"
    elif strat.exact:
        verdict = "nonmember"
    else:
        # a randomized closure is only a lower bound
        verdict = "undecided"
    if verdict == "undecided":
        status = "inconclusive"
    else:
        status = "pass" if verdict == args.expect else "fail"
    out = {"target": str(target), "generators": [str(g) for g in gens], "n": ctx.n, "closure_dim": B.dim(),
           "verdict": verdict, "expect": args.expect, "status": status, "strategy": strat.to_json()}
    sys.stdout.write(_dump(out))
    if args.json:
        Path(args.json).write_text(_dump(out))
    return _status_code(status)


# ---- binom-table ---------------------------------------------------------------------

def cmd_binom_table(args) -> int:
    try:
        p = prime_of(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["r", "t", "j", "formula", "oracle", "match"])
    bad = 0
    for r, t, j in special_domain(args.case, args.q):
        M, N = special_binomial(args.case, r, t, j, args.q)
        formula = special_case(args.case, r, t, j, args.q)
        oracle = comb(M, N) % p
        bad += formula != oracle
        writer.writerow([r, t, j, formula, oracle, int(formula == oracle)])
    return EXIT_FAIL if bad else EXIT_OK


# ---- identity-check ---------------------------------------------------------------

def cmd_identity_check(args) -> int:
    F = field_of_order(args.q)
    rec: dict = {"which": args.which, "q": args.q}
    if args.which == "h":
        if args.r is None:
            raise UsageError("--which h needs --r")
        try:
            res = check_h(F, args.r)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        rec.update(res.to_json())
        rec["status"] = "pass" if res.ok else "fail"
    else:
        rs = [1] if args.which == "g-base" else ([args.r] if args.r is not None else list(range(2, args.q)))
        if any(not 1 <= r <= args.q - 1 for r in rs) or (args.which == "g-step" and 1 in rs):
            raise UsageError(f"r out of range for {args.which}")
        rng = np.random.default_rng(0 if args.seed is None else args.seed)
        failures = []
        for r in rs:
            for _ in range(args.trials):
                alphas = random_alphas(F, r, rng)
                if not check_g_formula(F, r, alphas):
                    failures.append({"r": r, "alphas": {str(k): v.code for k, v in sorted(alphas.items())},
                                     "computed": g_of(alphas, r, F).to_json(),
                                     "closed_form": g_closed_form(alphas, r, F).to_json()})
        rec.update({"r": rs, "trials": args.trials, "seed": 0 if args.seed is None else args.seed})
        rec["status"] = "fail" if failures else "pass"
        if failures:
            rec["counterexample"] = failures[0]
            rec["failures"] = len(failures)
    sys.stdout.write(_dump(rec))
    return _status_code(rec["status"])


# ---- check-cert -------------------------------------------------------------------------

def cmd_check_cert(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text())
        cert = Certificate.from_json(data)
    except (OSError, json.JSONDecodeError, CertificateError) as exc:
        print(f"invalid: {exc}")
        return EXIT_FAIL
    B = replay(cert)
    ok = verify_certificate(cert)
    print(f"{'valid' if ok else 'invalid'}: claim={cert.claim} dim={cert.dim} replayed={B.dim()} "
          f"D={cert.ctx.D} witnesses={len(cert.witnesses)}")
    return EXIT_OK if ok else EXIT_FAIL


# ---- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tspace-lab", description="Verify T-space claims over GF(q) by exact computation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def search_flags(p, seed_default=None):
        p.add_argument("--strategy", choices=["exhaustive", "random"], default=None)
        p.add_argument("--seed", type=int, default=seed_default)
        p.add_argument("--stall", type=int, default=None, help="stall threshold for randomized search")

    p = sub.add_parser("suite", help="run a verification suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--q", type=int, required=True)
    for flag in ("--n", "--r", "--s", "--m"):
        p.add_argument(flag, type=int, default=None)
    p.add_argument("--trials", type=int, default=1000)
    search_flags(p)
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--certs", metavar="DIR")
    p.add_argument("--timings", action="store_true", help="include wall times in the JSON report")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("emit", help="print a construction as canonical JSON")
    p.add_argument("--object", choices=["wn", "un", "en", "yn", "b1r"], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--count", type=int, default=None, help="number of U_n basis elements")
    p.set_defaults(func=cmd_emit)

    helps = {"closure": "image in A_n of the T-space generated by --gens",
             "membership": "test whether --target lies in that image"}
    for name, func in (("closure", cmd_closure), ("membership", cmd_membership)):
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--gens", nargs="+", required=True, metavar="POLY")
        search_flags(p)
        p.add_argument("--json", metavar="PATH")
        if name == "closure":
            p.add_argument("--cert", metavar="PATH", help="write the closure certificate here")
        else:
            p.add_argument("--target", required=True, metavar="POLY")
            p.add_argument("--expect", choices=["member", "nonmember"], default="member")
        p.set_defaults(func=func)

    p = sub.add_parser("binom-table", help="CSV of the special binomial cases against an exact oracle")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--case", choices=["I", "II", "III", "IV"], required=True)
    p.set_defaults(func=cmd_binom_table)

    p = sub.add_parser("identity-check", help="check the g and h identities")
    p.add_argument("--which", choices=["g-base", "g-step", "h"], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_identity_check)

    p = sub.add_parser("check-cert", help="replay a closure certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_cert)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FieldError) as exc:
        print(f"tspace-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


cli_main = main


if __name__ == "__main__":
    sys.exit(main())
