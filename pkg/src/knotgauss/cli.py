"""Command-line interface: one JSON report per invocation on stdout.

Exit codes: 0 success, 1 a verification found counterexamples, 2 usage or
input errors.  Logs go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from typing import Sequence

from . import __version__
from .codes import DiagramError, KnotDiagram, load_fixtures, parse_code
from .constructions import (pretzel_diagram, torus_braid_diagram, twist_knot_diagram,
                            whitehead_double)
from .enumerate import (IDENTITY_CHECKS, OBJECTIVES, THEOREMS, BudgetExceeded,
                        DiagramFilter, check_lemmas, check_loop_signature, check_pretzels,
                        check_symmetry, check_whitehead, enumerate_diagrams, extremal_search,
                        oracle_identity_suite, verify_theorem)
from .gauss import lemma_checks
from .invariants import config_census, report
from .oracles import BudgetExceeded as OracleBudget
from .oracles import conway, jones, signature_and_det, vassiliev_from_jones
from .planar import (MoveNotApplicable, apply_t2bar, find_clasps, genus, loop_move, reduce,
                     resolve_clasp)

SCHEMA_VERSION = "1.0"
CSV_COLUMNS = ["code", "c", "s", "g", "lk", "v2", "v3", "writhe", "status"]
PROPERTIES = ("loop-sigma", "symmetry", "lemmas", "whitehead", "pretzel")

log = logging.getLogger("knotgauss")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# helpers


def _diagram(args) -> KnotDiagram:
    if getattr(args, "fixture", None):
        fx = load_fixtures()
        if args.fixture not in fx:
            raise UsageError(f"unknown fixture {args.fixture!r}; known: {', '.join(fx)}")
        return fx[args.fixture]
    if args.code is None:
        raise UsageError("one of --code or --fixture is required")
    return parse_code(args.code)


def _csv_list(text: str | None) -> list[str]:
    return [t.strip().lower() for t in text.split(",") if t.strip()] if text else []


def _int_list(text: str, n: int, what: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} expects {n} comma-separated integers") from None
    if len(vals) != n:
        raise UsageError(f"{what} expects {n} comma-separated integers")
    return vals


def _crossing_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise UsageError(f"bad crossing range {text!r}; use a..b or n") from None


def _filter(spec: str | None, lo: int, hi: int) -> DiagramFilter:
    kw = dict(min_c=lo, max_c=hi, positivity=None)
    for tok in _csv_list(spec):
        if tok == "positive":
            kw["positivity"] = 0
        elif tok in ("almost-positive", "almostpositive"):
            kw["positivity"] = 1
        elif tok.startswith("k-negative="):
            kw["positivity"] = int(tok.split("=", 1)[1])
        elif tok == "any":
            kw["positivity"] = None
        elif tok in ("connected", "prime"):
            kw["connected"] = True
        elif tok == "reduced":
            kw["reduced"] = True
        elif tok == "bireduced":
            kw["bireduced"] = True
        elif tok in ("no-clasp", "noclasp"):
            kw["no_clasp"] = True
        elif tok == "all-symmetric":
            kw["unique"] = False
        else:
            raise UsageError(f"unknown filter token {tok!r}")
    return DiagramFilter(**kw)


def _invariants(d: KnotDiagram, wanted: list[str]) -> dict:
    rep = report(d).to_dict()
    out = {}
    for key in wanted:
        if key == "genus":
            out.update(c=rep["c"], s=rep["s"], g=rep["g"])
        elif key in rep:
            out[key] = rep[key]
        elif key == "census":
            out["census"] = config_census(d).to_dict()
        elif key == "lemmas":
            out["lemmas"] = lemma_checks(d, positive_only=True).to_dict()
        elif key == "clasps":
            out["clasps"] = [{"crossings": [a + 1, b + 1], "kind": cl.kind}
                             for cl in find_clasps(d) for a, b in [cl.crossings]]
        else:
            raise UsageError(f"unknown invariant {key!r}")
    return out


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, exit code)


def cmd_compute(args):
    d = _diagram(args)
    wanted = _csv_list(args.invariants) or ["v2", "v3", "lk", "writhe", "genus", "status"]
    return {"code": d.gauss_code(), "invariants": _invariants(d, wanted)}, 0


def cmd_oracle(args):
    if args.check:
        rep = oracle_identity_suite(_csv_list(args.check), args.max_crossings, args.jobs)
        return rep, (0 if rep.passed else 1)
    d = _diagram(args)
    out = {"code": d.gauss_code()}
    for key in _csv_list(args.emit) or ["jones", "conway", "sigma", "det"]:
        if key == "jones":
            V = jones(d)
            out["jones"] = str(V)
            out["v2_v3_from_jones"] = list(vassiliev_from_jones(V))
        elif key == "conway":
            out["conway"] = str(conway(d))
        elif key in ("sigma", "det"):
            if "sigma_paper" not in out:
                sd = signature_and_det(d)
                out.update(sd.to_dict())
                if args.standard_signature:
                    out["sigma"] = sd.sigma_standard
                else:
                    out["sigma"] = sd.sigma_paper
        else:
            raise UsageError(f"unknown oracle {key!r}")
    return out, 0


def cmd_make(args):
    if args.twist is not None:
        d = twist_knot_diagram(args.twist, args.variant)
        what = {"family": "twist", "n": args.twist, "variant": args.variant}
    elif args.pretzel is not None:
        p, q, r = _int_list(args.pretzel, 3, "--pretzel")
        d = pretzel_diagram(p, q, r)
        what = {"family": "pretzel", "parameters": [p, q, r]}
    elif args.torus is not None:
        p, q = _int_list(args.torus, 2, "--torus")
        d = torus_braid_diagram(p, q)
        what = {"family": "torus", "parameters": [p, q]}
    else:
        raise UsageError("make needs one of --twist, --pretzel, --torus")
    return {**what, "code": d.gauss_code(), "pd": d.pd_code(), "c": d.c}, 0


def cmd_double(args):
    d = _diagram(args)
    sign = {"+": 1, "-": -1, "+1": 1, "-1": -1}.get(args.clasp)
    if sign is None:
        raise UsageError("--clasp must be + or -")
    w = whitehead_double(d, sign, args.twists)
    return {"companion": d.gauss_code(), "clasp": args.clasp, "twists": args.twists,
            "code": w.gauss_code(), "c": w.c}, 0


def cmd_move(args):
    d = _diagram(args)
    if args.op == "reduce":
        e = reduce(d)
    elif args.op == "t2bar":
        e = apply_t2bar(d, _crossing(args, d))
    elif args.op == "resolve-clasp":
        clasps = find_clasps(d)
        if args.at is None:
            pick = [cl for cl in clasps if cl.kind == "Resolved"]
            if not pick:
                raise MoveNotApplicable("the diagram has no resolved clasp")
            e = resolve_clasp(d, pick[0])
        else:
            k = _crossing(args, d)
            pick = [cl for cl in clasps if k in cl.crossings]
            if not pick:
                raise MoveNotApplicable(f"crossing {k + 1} is in no clasp")
            e = resolve_clasp(d, pick[0])
    elif args.op == "loop":
        e = loop_move(d, _crossing(args, d), args.side, args.passage)
    else:
        raise UsageError(f"unknown move {args.op!r}")
    return {"op": args.op, "before": d.gauss_code(), "after": e.gauss_code(),
            "c_before": d.c, "c_after": e.c, "genus_after": genus(e).g}, 0


def _crossing(args, d: KnotDiagram) -> int:
    if args.at is None:
        raise UsageError(f"--at is required for {args.op}")
    if not 1 <= args.at <= d.c:
        raise UsageError(f"--at must be between 1 and {d.c}")
    return args.at - 1


def cmd_enumerate(args):
    lo, hi = _crossing_range(args.crossings)
    flt = _filter(args.filter, lo, hi)
    if args.objective:
        res = extremal_search(args.objective, flt, args.jobs)
        return {"filter": flt.describe(), **res.to_dict()}, 0
    if args.emit == "count":
        per_c: dict[int, int] = {}
        for d in enumerate_diagrams(flt, args.jobs):
            per_c[d.c] = per_c.get(d.c, 0) + 1
        return {"filter": flt.describe(), "count": sum(per_c.values()),
                "per_crossing_number": {str(c): per_c.get(c, 0) for c in range(lo, hi + 1)}}, 0
    if args.emit == "codes":
        codes = [d.gauss_code() for d in enumerate_diagrams(flt, args.jobs)]
        return {"filter": flt.describe(), "count": len(codes), "codes": codes}, 0
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    n = 0
    for d in enumerate_diagrams(flt, args.jobs):
        row = report(d).to_dict()
        row["code"] = d.gauss_code()
        writer.writerow({k: row[k] for k in CSV_COLUMNS})
        n += 1
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
        return {"filter": flt.describe(), "count": n, "csv": args.output}, 0
    sys.stdout.write(buf.getvalue())
    return None, 0


def cmd_verify(args):
    if args.theorem:
        rep = verify_theorem(args.theorem, args.max_crossings, args.jobs)
    elif args.property == "loop-sigma":
        rep = check_loop_signature(args.samples, args.seed, args.max_crossings, args.jobs)
    elif args.property == "symmetry":
        fx = load_fixtures()
        rep = check_symmetry(args.max_crossings, [fx[k] for k in ("3_1", "4_1", "5_2", "!6_1")
                                                  if k in fx], args.jobs)
    elif args.property == "lemmas":
        rep = check_lemmas(args.max_crossings, args.jobs)
    elif args.property == "whitehead":
        fx = load_fixtures()
        rep = check_whitehead({k: fx[k] for k in ("unknot", "3_1", "4_1", "5_1", "5_2", "6_1")
                               if k in fx})
    elif args.property == "pretzel":
        rep = check_pretzels()
    else:
        raise UsageError("verify needs --theorem or --property")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(rep.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return rep, (0 if rep.passed else 1)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")

    source = _Parser(add_help=False)
    source.add_argument("--code", help="signed Gauss code or PD code")
    source.add_argument("--fixture", help="named diagram from the fixture file")

    p = _Parser(prog="knotgauss", description="Gauss-sum knot invariants and checks.")
    p.add_argument("--version", action="version", version=f"knotgauss {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("compute", parents=[common, source], help="Gauss-sum invariants")
    c.add_argument("--invariants", help="comma list: v2,v3,lk,writhe,genus,status,census,"
                                        "lemmas,clasps")
    c.set_defaults(func=cmd_compute)

    o = sub.add_parser("oracle", parents=[common, source], help="polynomial oracles")
    o.add_argument("--emit", help="comma list: jones,conway,sigma,det")
    o.add_argument("--standard-signature", action="store_true",
                   help="report the standard signature instead of sigma_paper")
    o.add_argument("--check", help=f"identity suites: {','.join(IDENTITY_CHECKS)}")
    o.add_argument("--max-crossings", type=int, default=7)
    o.set_defaults(func=cmd_oracle)

    m = sub.add_parser("make", parents=[common], help="generate a diagram family member")
    m.add_argument("--twist", type=int)
    m.add_argument("--variant", default="apu", help="apu or alternating")
    m.add_argument("--pretzel", help="p,q,r")
    m.add_argument("--torus", help="p,q")
    m.set_defaults(func=cmd_make)

    d = sub.add_parser("double", parents=[common, source], help="untwisted Whitehead double")
    d.add_argument("--clasp", required=True, help="+ or -")
    d.add_argument("--twists", type=int, default=0, help="framing in full twists")
    d.set_defaults(func=cmd_double)

    mv = sub.add_parser("move", parents=[common, source], help="apply a diagram move")
    mv.add_argument("--op", required=True, choices=["reduce", "t2bar", "resolve-clasp", "loop"])
    mv.add_argument("--at", type=int, help="1-based crossing label")
    mv.add_argument("--side", default="Left", choices=["Left", "Right", "left", "right"])
    mv.add_argument("--passage", default="over", choices=["over", "under"])
    mv.set_defaults(func=cmd_move)

    e = sub.add_parser("enumerate", parents=[common], help="enumerate small diagrams")
    e.add_argument("--crossings", required=True, help="a..b or n")
    e.add_argument("--filter", help="comma list: positive, almost-positive, k-negative=K, any, "
                                    "connected, reduced, bireduced, no-clasp")
    e.add_argument("--emit", default="count", choices=["count", "codes", "csv"])
    e.add_argument("--output", help="write CSV here instead of stdout")
    e.add_argument("--objective", choices=list(OBJECTIVES), help="extremal search instead")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", parents=[common], help="exhaustive theorem checks")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--theorem", type=str.upper, choices=list(THEOREMS))
    g.add_argument("--property", choices=list(PROPERTIES))
    v.add_argument("--max-crossings", type=int, default=None)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--report", help="also write the payload to this JSON file")
    v.set_defaults(func=cmd_verify)
    return p


_DEFAULT_MAX = {"loop-sigma": 9, "symmetry": 6, "lemmas": 8}


def _dump(obj, pretty: bool) -> str:
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=True)


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            raise UsageError("knotgauss: error: a subcommand is required")
        logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                            stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
        if args.command == "verify" and args.max_crossings is None:
            args.max_crossings = _DEFAULT_MAX.get(args.property, 8)
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        start = time.perf_counter()
        payload, code = args.func(args)
        elapsed = time.perf_counter() - start
    except UsageError as err:
        print(err, file=sys.stderr)
        return 2
    except SystemExit as err:
        # --help and --version
        return int(err.code or 0)
    except (DiagramError, MoveNotApplicable, BudgetExceeded, OracleBudget, ValueError) as err:
        print(f"knotgauss: error: {err}", file=sys.stderr)
        return 2
    if payload is None:
        return code
    timing = {"elapsed_s": round(elapsed, 3)}
    if hasattr(payload, "to_dict"):
        timing["check_elapsed_s"] = round(payload.elapsed, 3)
        payload = payload.to_dict(timing=False)
    out = {"schema_version": SCHEMA_VERSION, "command": argv,
           "payload": payload, "timing": timing}
    print(_dump(out, args.pretty))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
