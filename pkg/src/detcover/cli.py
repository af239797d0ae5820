"""Command line interface.

Exit codes: 0 when every verdict is true, 2 when some verdict is false,
1 on operational errors.  Output is JSON on stdout (or --out).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import planner
from .cover import ADAPTIVE, THEOREM, run_cover, verify_cover
from .detmethod import certify_padic_divisibility, evaluation_matrix, fd_basis
from .enumeration import DEFAULT_WORK_LIMIT, enumerate_points, regular_points
from .heights import as_fraction, canonicalize
from .polyform import parse_form
from .residue import class_report
from .variety import Variety, load_variety, variety_from_json

EXIT_OK, EXIT_ERROR, EXIT_FALSE = 0, 1, 2


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    return json.loads(Path(path).read_text())


def _variety(path: str) -> Variety:
    return variety_from_json(_read_json(path)) if path == "-" else load_variety(path)


def _config(args, X: Variety) -> planner.PlanConfig:
    data = {"M": X.ambient_dim, "n": X.dim, "d": X.degree}
    if getattr(args, "config", None):
        data.update(_read_json(args.config))
    return planner.PlanConfig.from_dict(data)


def _points(path: str):
    return [canonicalize(p) for p in _read_json(path)]


def _emit(args, payload) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def cmd_enumerate(args) -> int:
    X = _variety(args.variety)
    fn = regular_points if args.regular_only else enumerate_points
    pts = fn(X, as_fraction(args.bound), args.work_limit, args.workers)
    _emit(args, [list(P.coords) for P in pts])
    return EXIT_OK


def cmd_reduce(args) -> int:
    X = _variety(args.variety)
    report = class_report(X, args.prime, args.power)
    _emit(args, report)
    return EXIT_FALSE if report["gl02_applies"] and not report["gl02_holds"] else EXIT_OK


def cmd_detmat(args) -> int:
    X = _variety(args.variety)
    pts = _points(args.points)
    basis = fd_basis(X, args.degree)
    A = evaluation_matrix(basis, pts)
    bounds = basis.bounds()
    payload = {
        "D": args.degree,
        "r1": basis.r1,
        "rows": A.rows,
        "cols": A.cols,
        "basis": [list(m) for m in basis.monomials],
        "chardin_upper": bounds["chardin_upper"],
        "sombra_lower": str(bounds["sombra_lower"]) if "sombra_lower" in bounds else None,
    }
    code = EXIT_OK
    if args.prime is not None:
        mu = args.mu if args.mu is not None else min(len(pts), basis.r1)
        cert = certify_padic_divisibility(X, args.prime, args.power, pts, mu,
                                          degree=args.degree, seed=args.seed)
        payload["certification"] = cert.to_json()
        code = EXIT_OK if cert.passed else EXIT_FALSE
    _emit(args, payload)
    return code


def cmd_plan(args) -> int:
    X = _variety(args.variety)
    plan = planner.make_plan(as_fraction(args.bound), _config(args, X))
    _emit(args, plan.to_json())
    return EXIT_OK


def cmd_cover(args) -> int:
    X = _variety(args.variety)
    report = run_cover(X, as_fraction(args.bound), mode=args.mode, config=_config(args, X),
                       a=args.power, max_primes=args.max_primes, work_limit=args.work_limit,
                       with_timing=args.timing)
    payload = report.to_json()
    payload["seed"] = args.seed
    _emit(args, payload)
    return EXIT_OK if report.all_true else EXIT_FALSE


def cmd_verify(args) -> int:
    X = _variety(args.variety)
    data = _read_json(args.forms)
    if isinstance(data, dict):
        data = data.get("hypersurfaces", [])
    forms = [parse_form(s, X.num_vars) for s in data]
    result = verify_cover(X, as_fraction(args.bound), forms, D=args.degree,
                          work_limit=args.work_limit)
    _emit(args, result)
    ok = result["covered"] and result["proper"] and result["degree_uniform"]
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detcover", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for all sampling")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bound=True):
        p.add_argument("--variety", required=True, help="variety JSON file ('-' for stdin)")
        if bound:
            p.add_argument("--bound", required=True, help="height bound B (integer, rational or decimal)")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = sub.add_parser("enumerate", help="list S(X,B) or S_1(X,B)")
    common(p)
    p.add_argument("--regular-only", action="store_true")
    p.add_argument("--work-limit", type=int, default=DEFAULT_WORK_LIMIT)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("reduce", help="residue classes of X mod p^a")
    common(p, bound=False)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--power", type=int, default=1)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("detmat", help="evaluation matrix data and p-adic certification")
    common(p, bound=False)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--points", required=True, help="JSON list of coordinate vectors")
    p.add_argument("--prime", type=int)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--mu", type=int)
    p.set_defaults(func=cmd_detmat)

    p = sub.add_parser("plan", help="evaluate all planner constants")
    common(p)
    p.add_argument("--config", help="PlanConfig JSON overrides")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("cover", help="build a hypersurface cover of S_1(X,B)")
    common(p)
    p.add_argument("--mode", choices=[THEOREM, ADAPTIVE], default=ADAPTIVE)
    p.add_argument("--config", help="PlanConfig JSON overrides")
    p.add_argument("--power", type=int, default=None, help="override the exponent a")
    p.add_argument("--max-primes", type=int, default=50)
    p.add_argument("--work-limit", type=int, default=DEFAULT_WORK_LIMIT)
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="independently re-check a cover")
    common(p)
    p.add_argument("--forms", required=True, help="JSON list of forms, or a cover report")
    p.add_argument("--degree", type=int, help="expected degree (default ceil(d log B))")
    p.add_argument("--work-limit", type=int, default=DEFAULT_WORK_LIMIT)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
