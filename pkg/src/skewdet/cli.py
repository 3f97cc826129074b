"""Command-line front end: ``skewdet <command> [--input PATH | --json TEXT] ...``.

Every invocation prints one JSON report::

    {"command": ..., "result": {...}, "oracles": {...}, "timing": {...}, "exit_code": 0}

Exit codes: 0 success, 2 malformed input, 3 domain error, 4 oracle
disagreement, 5 selftest property failure.
"""

import argparse
import json
import sys
import time

from .endos import DEFAULT_SAMPLES, kernel_rank, t_module_rank
from .errors import OracleMismatch, ParseError, PropertyFailure, SkewDetError
from .matrix import INFINITY, deg_det, invert, row_echelon
from .ode import assemble_system, companion_system, solution_dimension
from .oracles import UNSTABLE, commutative_oracle, quotient_dim_oracle
from .selftest import FAULTS, Caps, run_selftest
from .serialize import InputError, matrix_from_json, matrix_to_json, system_from_json

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_ORACLE = 4
EXIT_PROPERTY = 5

COMMANDS = ("degdet", "echelon", "invert", "kernel-rank", "tmodule-rank", "ode-dim", "selftest")


def _value(v):
    if v is INFINITY:
        return "infinite"
    if v is UNSTABLE:
        return "unstable"
    return v


def run_oracles(a) -> dict:
    """Independent deg det routes for ``a``; raises OracleMismatch on disagreement."""
    main = deg_det(a).value
    out = {"deg_det": _value(main)}
    qd = quotient_dim_oracle(a)
    out["quotient_dim"] = {"value": _value(qd), "agree": qd == main}
    if a.ring.field.trivial_twist:
        co = commutative_oracle(a)
        out["commutative"] = {"value": _value(co), "agree": co == main}
    out["agree"] = all(v["agree"] for k, v in out.items() if isinstance(v, dict))
    return out


def _phi_spec(spec):
    if isinstance(spec, dict) and "phi" in spec:
        return spec["phi"], spec.get("samples")
    return spec, None


def _degdet(spec):
    a = matrix_from_json(spec)
    return deg_det(a).to_json(), a


def _echelon(spec):
    a = matrix_from_json(spec)
    ech = row_echelon(a)
    return {**ech.to_json(), **deg_det(a).to_json()}, a


def _invert(spec):
    a = matrix_from_json(spec)
    return {"inverse": matrix_to_json(invert(a))["entries"], "degdet": 0}, a


def _kernel_rank(spec):
    phi, _ = _phi_spec(spec)
    a = matrix_from_json(phi)
    return kernel_rank(a).to_json(), a


def _tmodule_rank(spec):
    phi, samples = _phi_spec(spec)
    a = matrix_from_json(phi)
    if samples is None:
        samples = DEFAULT_SAMPLES
    elif not isinstance(samples, list) or not all(isinstance(s, list) and s for s in samples):
        raise InputError("samples must be a list of nonempty coefficient lists")
    try:
        return t_module_rank(a, samples).to_json(), a
    except ValueError as exc:
        if isinstance(exc, SkewDetError):
            raise
        raise InputError(str(exc)) from None


def _ode_dim(spec):
    ring, mats, op = system_from_json(spec)
    if op is not None:
        mats = companion_system(op)
    a = assemble_system(ring, mats)
    return solution_dimension(a).to_json(), a


HANDLERS = {
    "degdet": _degdet,
    "echelon": _echelon,
    "invert": _invert,
    "kernel-rank": _kernel_rank,
    "tmodule-rank": _tmodule_rank,
    "ode-dim": _ode_dim,
}


def _error(exc) -> dict:
    err = {"kind": getattr(exc, "kind", type(exc).__name__), "message": str(exc)}
    if isinstance(exc, ParseError):
        err["message"] = exc.message
        if exc.position is not None:
            err["position"] = exc.position
        entry = getattr(exc, "entry", None)
        if entry is not None:
            err["entry"] = list(entry)
    return err


def _load(args):
    if args.json is not None:
        text = args.json
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos, text) from None


def run_command(args) -> dict:
    """Executes one parsed request and returns the report (without timing)."""
    report = {"command": args.command}
    try:
        if args.command == "selftest":
            result = run_selftest(seed=args.seed, caps=Caps(args.max_n, args.max_deg),
                                  fault=args.inject_fault)
            report["result"] = result
            if not result["passed"]:
                ce = result["counterexample"]
                raise PropertyFailure(f"{ce['suite']} suite failed on {ce['instance']}")
            report["exit_code"] = EXIT_OK
            return report
        if args.input is None and args.json is None:
            raise InputError("one of --input or --json is required")
        result, matrix = HANDLERS[args.command](_load(args))
        report["result"] = result
        if args.oracle:
            oracles = run_oracles(matrix)
            report["oracles"] = oracles
            if not oracles["agree"]:
                raise OracleMismatch("deg det routes disagree")
        report["exit_code"] = EXIT_OK
    except ParseError as exc:
        report["error"] = _error(exc)
        report["exit_code"] = EXIT_INPUT
    except OSError as exc:
        report["error"] = {"kind": "InputError", "message": str(exc)}
        report["exit_code"] = EXIT_INPUT
    except OracleMismatch as exc:
        report["error"] = _error(exc)
        report["exit_code"] = EXIT_ORACLE
    except PropertyFailure as exc:
        report["error"] = _error(exc)
        report["exit_code"] = EXIT_PROPERTY
    except SkewDetError as exc:
        report["error"] = _error(exc)
        report["exit_code"] = EXIT_DOMAIN
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="read the request JSON from a file")
    src.add_argument("--json", metavar="TEXT", help="request JSON given inline")
    common.add_argument("--output", metavar="PATH", help="write the report here (default: stdout)")
    common.add_argument("--oracle", action="store_true",
                        help="cross-check deg det with the independent oracles")
    common.add_argument("--seed", type=int, default=0, help="selftest seed (default 0)")
    common.add_argument("--max-n", type=int, default=3, help="selftest matrix size cap")
    common.add_argument("--max-deg", type=int, default=2, help="selftest entry degree cap")
    common.add_argument("--no-timing", action="store_true", help="omit the timing section")
    common.add_argument("--inject-fault", choices=FAULTS, default=None,
                        help="selftest only: run against a deliberately broken ring")

    parser = argparse.ArgumentParser(prog="skewdet",
                                     description="Degree of the Dieudonne determinant over skew polynomial rings.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "degdet": "deg det of a matrix",
        "echelon": "row-echelon form with replayable operation log",
        "invert": "two-sided inverse of a unit",
        "kernel-rank": "rank p^(deg det) of the kernel of an endomorphism of G_a^n",
        "tmodule-rank": "rank of a t-module from phi_t",
        "ode-dim": "solution dimension of a differential or q-difference system",
        "selftest": "seeded randomized property suites",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name], description=helps[name])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_n < 1 or args.max_deg < 0:
        print("skewdet: error: --max-n must be >= 1 and --max-deg >= 0", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    report = run_command(args)
    code = report.pop("exit_code")
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    report["exit_code"] = code
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
