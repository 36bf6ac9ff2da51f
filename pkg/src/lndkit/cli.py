"""Command line interface: JSON reports on stdout, a one-line summary on stderr.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error, 3 bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .constructions import default_ntr_instance, default_tr_instance, verify_example1, verify_example2, \
    verify_example3, verify_instance
from .derivation import (
    DEFAULT_BOUND,
    certify_nilpotent,
    d_apply,
    deg_d,
    homogeneity_degree,
    is_local_slice,
    jacobian_derivation,
    linear_filtration,
    rank_upper,
    strict_triple,
)
from .errors import (
    BoundExceeded,
    LndError,
    NonTermination,
    NotAPthPower,
    NotInKernel,
    ParseError,
    RewriteNonExact,
    ShapeViolation,
)
from .newton import newton_polygon, np_check
from .normal_form import kernel_partner, kernel_variable, ntr_normal_form, triangular_test
from .report import jsonable
from .session import SessionSpec, parse_session

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3
STATUS = {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_INPUT: "input_error", EXIT_BOUND: "bound_exceeded"}
_CHECK_ERRORS = (ShapeViolation, NotAPthPower, RewriteNonExact, NonTermination, NotInKernel)


class Outcome:
    def __init__(self, result, witnesses=None, passed: bool = True):
        self.result = result
        self.witnesses = witnesses or {}
        self.passed = passed


def _s(f, spec: SessionSpec) -> str:
    return f.to_str(spec.vars)


def _derivation(spec: SessionSpec, need: bool = True):
    if need and not spec.derivation:
        raise ParseError("no derivation given; pass --session with D lines", 1, 1, ("--session FILE",))
    return spec.build_derivation()


# ---------------------------------------------------------------------------
# commands


def cmd_nilpotent(spec, args):
    cert = certify_nilpotent(_derivation(spec), args.bound)
    if not cert.certified:
        raise BoundExceeded(f"D^{args.bound}({spec.vars[cert.witness_var]}) is not zero", cert.witness, args.bound)
    return Outcome({"certified": True, "orders": dict(zip(spec.vars, cert.orders))},
                   {"images": spec.image_strings(), "bound": args.bound})


def cmd_degd(spec, args):
    D = _derivation(spec)
    f = spec.poly(args.expr)
    return Outcome(deg_d(D, f, args.bound), {"f": _s(f, spec)})


def cmd_homogeneity(spec, args):
    w = spec.weight_vector()
    deg = homogeneity_degree(_derivation(spec), w)
    return Outcome(deg, {"weights": list(w)}, deg is not None)


def cmd_kernel(spec, args):
    D = _derivation(spec)
    f = spec.poly(args.expr)
    img = d_apply(D, f)
    return Outcome(img.is_zero(), {"D(f)": _s(img, spec)}, img.is_zero())


def cmd_slice(spec, args):
    D = _derivation(spec)
    f = spec.poly(args.expr)
    d1 = d_apply(D, f)
    d2 = d_apply(D, d1)
    ok = is_local_slice(D, f, args.bound)
    return Outcome(ok, {"D(f)": _s(d1, spec), "D^2(f)": _s(d2, spec)}, ok)


def cmd_jacobian(spec, args):
    if len(spec.vars) != 3:
        raise ParseError("jacobian needs three variables", 1, 1, ("vars a b c",))
    F, G = spec.poly(args.f), spec.poly(args.g)
    J = jacobian_derivation(F, G)
    ok = d_apply(J, F).is_zero() and d_apply(J, G).is_zero()
    images = {v: _s(J.images[i], spec) for i, v in enumerate(spec.vars)}
    return Outcome(images, {"D(F)": _s(d_apply(J, F), spec), "D(G)": _s(d_apply(J, G), spec)}, ok)


def _form(L, spec):
    return L.to_str(spec.vars)


def cmd_filtration(spec, args):
    filt = linear_filtration(_derivation(spec), args.bound)
    strata = [{"m": s.m, "dim": s.dim, "basis": [_form(L, spec) for L in s.basis]} for s in filt.strata]
    return Outcome({"jumps": list(filt.jumps), "strata": strata}, {"orders": list(filt.orders)})


def cmd_triple(spec, args):
    triple = strict_triple(_derivation(spec), args.bound)
    if triple is None:
        return Outcome(None, {}, False)
    return Outcome([{"form": _form(L, spec), "m": m} for L, m in triple])


def cmd_rank(spec, args):
    rb = rank_upper(_derivation(spec), args.bound)
    res = {
        "bound": rb.bound,
        "status": rb.status,
        "kernel_forms": [_form(L, spec) for L in rb.kernel_forms],
        "certified_rows": [[str(c) for c in r] for r in rb.certified],
    }
    wit = {}
    if rb.bezout:
        minors, cof = rb.bezout
        wit["bezout"] = {"minors": [str(m) for m in minors], "cofactors": [str(c) for c in cof]}
    return Outcome(res, wit)


def _normal_inputs(spec, args):
    D = _derivation(spec)
    X = spec.poly(args.x) if args.x else kernel_variable(D, args.bound)
    P = spec.poly(args.kernel_poly) if args.kernel_poly else kernel_partner(D, X)
    return D, X, P


def cmd_triangular(spec, args):
    D, X, P = _normal_inputs(spec, args)
    rep = triangular_test(D, X, P, bound=args.bound)
    sb = rep.sb
    res = {
        "triangular": rep.triangular,
        "d": rep.d,
        "coordinates": rep.coords.row_strings(spec.vars),
        "normal_P": _s(rep.sa.P, spec),
        "images": [_s(f, spec) for f in rep.images],
        "deg_y": rep.deg_y,
        "deg_z": rep.deg_z,
        "z_degree": sb.e,
    }
    wit = {"X": _s(X, spec), "P": _s(P, spec), "gamma": str(rep.sa.gamma), "beta": str(sb.beta)}
    return Outcome(res, wit, rep.triangular)


def cmd_ntr(spec, args):
    if args.p is None or args.q is None:
        raise ParseError("ntr needs --p and --q", 1, 1, ("--p P", "--q Q"))
    D, X, P = _normal_inputs(spec, args)
    rep = ntr_normal_form(D, X, P, args.p, args.q, args.bound)
    back = rep.reconstruct() == P
    res = {
        "p": rep.p,
        "q": rep.q,
        "swapped": rep.swapped,
        "h": _s(rep.h, spec),
        "c": [str(c) for c in rep.c],
        "coordinates": rep.coords.row_strings(spec.vars),
        "normal_form": _s(rep.normal_poly(), spec),
        "deg_y": rep.deg_y,
        "deg_z": rep.deg_z,
        "round_trip": back,
    }
    return Outcome(res, {"X": _s(X, spec), "P": _s(P, spec), "gamma": str(rep.gamma), "rounds": rep.rounds}, back)


def cmd_newton(spec, args):
    f = spec.poly(args.expr)
    pair = []
    for v in args.pair:
        if v in spec.vars:
            pair.append(spec.vars.index(v))
        elif v.isdigit() and int(v) < len(spec.vars):
            pair.append(int(v))
        else:
            raise ParseError(f"unknown variable {v!r} for --vars", 1, 1, spec.vars)
    poly = newton_polygon(f, tuple(pair))
    ok = np_check(poly)
    return Outcome({"vertices": [list(v) for v in poly.vertices], "divides": ok}, {"f": _s(f, spec)}, ok)


def cmd_verify_paper(spec, args):
    ex = args.example
    if ex == "1":
        rep = verify_example1(args.bound)
    elif ex == "2":
        rep = verify_example2(args.d or 0, args.bound)
    elif ex == "3":
        rep = verify_example3(args.d or 0, args.bound)
    elif ex == "tr":
        rep = verify_instance(default_tr_instance(1 if args.d is None else args.d), args.bound)
    else:
        rep = verify_instance(default_ntr_instance(args.p or 2, args.q or 2), args.bound)
    values = {c.name: jsonable(c.value) for c in rep.checks}
    checks = []
    for c in rep.checks:
        item = {"name": c.name, "pass": c.passed}
        if c.expected is not None:
            item["expected"] = jsonable(c.expected)
        checks.append(item)
    return Outcome(values, {"instance": rep.instance, "checks": checks, "notes": rep.notes}, rep.passed)


COMMANDS: Dict[str, Callable] = {
    "nilpotent": cmd_nilpotent,
    "degd": cmd_degd,
    "homogeneity": cmd_homogeneity,
    "kernel": cmd_kernel,
    "slice": cmd_slice,
    "jacobian": cmd_jacobian,
    "filtration": cmd_filtration,
    "triple": cmd_triple,
    "rank": cmd_rank,
    "triangular": cmd_triangular,
    "ntr": cmd_ntr,
    "newton": cmd_newton,
    "verify-paper": cmd_verify_paper,
}


# ---------------------------------------------------------------------------
# argument parsing and report assembly


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--session", metavar="FILE", help="session file, or - for stdin")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="nilpotence bound (default 64)")
    p.add_argument("--d", type=int, help="value substituted for d in session files")
    p.add_argument("--p", type=int, help="value of p (session files, ntr, verify-paper)")
    p.add_argument("--q", type=int, help="value of q (session files, ntr, verify-paper)")
    p.add_argument("--json-only", action="store_true", help="no summary on stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="lndkit", description="Exact checks for locally nilpotent derivations.")
    ap.add_argument("--version", action="version", version=f"lndkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("nilpotent", "homogeneity", "filtration", "triple", "rank"):
        sub.add_parser(name, parents=[common])
    for name in ("degd", "kernel", "slice"):
        sub.add_parser(name, parents=[common]).add_argument("expr")
    j = sub.add_parser("jacobian", parents=[common])
    j.add_argument("f")
    j.add_argument("g")
    for name in ("triangular", "ntr"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--x", help="kernel variable X (found from D when omitted)")
        s.add_argument("--kernel-poly", help="P with D = c*Delta_(X,P) (found from D when omitted)")
    nw = sub.add_parser("newton", parents=[common])
    nw.add_argument("expr")
    nw.add_argument("--vars", dest="pair", nargs=2, required=True, metavar=("I", "J"))
    vp = sub.add_parser("verify-paper", parents=[common])
    vp.add_argument("--example", required=True, choices=["1", "2", "3", "tr", "ntr"])
    run = sub.add_parser("run", parents=[common])
    run.add_argument("file", help="session file whose queries are executed, or -")
    return ap


def _params(args) -> Dict[str, int]:
    return {k: getattr(args, k) for k in ("d", "p", "q") if getattr(args, k) is not None}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _session_inputs(spec: SessionSpec) -> dict:
    out = {"ring": spec.ring.value, "vars": list(spec.vars)}
    if spec.derivation:
        out["derivation"] = spec.image_strings()
    if spec.weights is not None:
        out["weights"] = list(spec.weights)
    return out


def _arg_inputs(args) -> dict:
    skip = {"command", "session", "json_only", "file"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def execute(spec: SessionSpec, args) -> Tuple[int, dict]:
    """Run one command; returns the exit code and the JSON report."""
    report = {"command": args.command, "inputs": {}, "result": None, "witnesses": {}, "status": None,
              "version": __version__}
    try:
        report["inputs"] = {**_session_inputs(spec), **_arg_inputs(args)}
        out = COMMANDS[args.command](spec, args)
        code = EXIT_PASS if out.passed else EXIT_FAIL
        report["result"] = jsonable(out.result)
        report["witnesses"] = jsonable(out.witnesses)
    except ParseError as exc:
        code = EXIT_INPUT
        report["witnesses"] = {"error": str(exc), "line": exc.line, "column": exc.column,
                               "expected": list(exc.expected)}
    except BoundExceeded as exc:
        code = EXIT_BOUND
        w = exc.witness
        report["witnesses"] = {"error": str(exc), "bound": exc.bound,
                               "witness": w.to_str(spec.vars) if hasattr(w, "to_str") else jsonable(w)}
    except _CHECK_ERRORS as exc:
        code = EXIT_FAIL
        w = getattr(exc, "witness", None)
        report["witnesses"] = {"check": type(exc).__name__, "error": str(exc),
                               "witness": w.to_str(spec.vars) if hasattr(w, "to_str") else jsonable(w)}
    except LndError as exc:
        code = EXIT_INPUT
        report["witnesses"] = {"error": f"{type(exc).__name__}: {exc}"}
    report["status"] = STATUS[code]
    return code, report


def _summary(report: dict) -> str:
    res = report["result"]
    text = json.dumps(res) if res is not None else report["witnesses"].get("error", "")
    if len(text) > 120:
        text = text[:117] + "..."
    return f"{report['command']}: {report['status']} {text}"


def _load(args, path: Optional[str]) -> SessionSpec:
    if path is None:
        return SessionSpec(params=_params(args))
    return parse_session(_read(path), _params(args))


def _emit(report: dict, args):
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    if not args.json_only:
        sys.stderr.write(_summary(report) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(_hoist(list(sys.argv[1:] if argv is None else argv)))
    path = args.file if args.command == "run" else args.session
    try:
        spec = _load(args, path)
    except (ParseError, OSError) as exc:
        report = {"command": args.command, "inputs": {"session": path}, "result": None,
                  "witnesses": {"error": str(exc)}, "status": STATUS[EXIT_INPUT], "version": __version__}
        if isinstance(exc, ParseError):
            report["witnesses"].update(line=exc.line, column=exc.column, expected=list(exc.expected))
        _emit(report, args)
        return EXIT_INPUT
    if args.command != "run":
        code, report = execute(spec, args)
        _emit(report, args)
        return code
    results, worst = [], EXIT_PASS
    for q in spec.queries:
        try:
            qargs = ap.parse_args([q.args[0]] + _forward(args) + list(q.args[1:]))
        except SystemExit:
            code, rep = EXIT_INPUT, {"command": q.args[0], "result": None, "status": STATUS[EXIT_INPUT],
                                     "witnesses": {"error": "bad query arguments", "line": q.line}}
        else:
            if qargs.command == "run":
                code, rep = EXIT_INPUT, {"command": "run", "result": None, "status": STATUS[EXIT_INPUT],
                                         "witnesses": {"error": "run cannot be nested", "line": q.line}}
            else:
                code, rep = execute(spec, qargs)
        rep["line"] = q.line
        results.append(rep)
        worst = max(worst, code)
    report = {"command": "run", "inputs": {"session": path, **_session_inputs(spec)}, "result": results,
              "witnesses": {}, "status": STATUS[worst], "version": __version__}
    _emit(report, args)
    return worst


def _hoist(argv: List[str]) -> List[str]:
    """Allow the shared flags before the command name too."""
    names = set(COMMANDS) | {"run"}
    for i, a in enumerate(argv):
        if a in names:
            return [a] + argv[:i] + argv[i + 1:] if i else argv
    return argv


def _forward(args) -> List[str]:
    """Global flags of ``run`` that apply to each query."""
    out = ["--bound", str(args.bound)]
    for k in ("d", "p", "q"):
        v = getattr(args, k)
        if v is not None:
            out += [f"--{k}", str(v)]
    return out


if __name__ == "__main__":
    sys.exit(main())
