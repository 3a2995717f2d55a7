"""Command-line front end.

    flagdual example {figure8|hyperbolic|cr|double} [--param Z] [-o FILE]
    flagdual coords INPUT [-o FILE]
    flagdual dualize INPUT [-o FILE]
    flagdual conjugate INPUT [-o FILE]
    flagdual check INPUT [--tolerance EPS]
    flagdual beta INPUT
    flagdual volume INPUT
    flagdual defect INPUT
    flagdual solve INPUT [-o FILE] [--tolerance EPS]

Exit status: 0 success, 1 parse/usage error, 2 domain error or failed
check (the offending tetrahedron/face/edge class is named), 3 solver
failure.  --json switches stdout to a stable machine-readable encoding.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bundled, fileio
from .complexes import (beta_complex, check_edges, check_faces,
                        conjugate_complex, dualize, duality_defect,
                        volume_complex)
from .errors import (BackendMismatch, DegenerateInput, LeftDomain,
                     MalformedPairing, NotOnSphere, NotVeryGeneric,
                     OutOfDomain, ParseError, SingularMatrix, SolverDiverged,
                     Unsupported, WSingular)
from .prebloch import canonicalize_six, eval_D
from .scalars import parse_exact
from .solver import solve_consistency
from .tetra import volume_tetra

_PARSE_ERRORS = (ParseError,)
_DOMAIN_ERRORS = (DegenerateInput, NotVeryGeneric, OutOfDomain, WSingular,
                  MalformedPairing, BackendMismatch, Unsupported,
                  NotOnSphere, SingularMatrix)
_SOLVER_ERRORS = (SolverDiverged, LeftDomain)


def _parse_param(text):
    """Shape parameter: exact 'a/b+c/d*i' first, then a complex literal."""
    try:
        return parse_exact(text)
    except ParseError:
        pass
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise ParseError(f"cannot parse shape parameter {text!r}") from None


def _emit_complex(dc, args, extra=None, keep_flags=False):
    payload = fileio.dump_complex_flags(dc) if keep_flags \
        else fileio.dump_complex(dc)
    if args.output:
        fileio.write_complex(args.output, dc, keep_flags=keep_flags)
        if args.json:
            out = {"written": args.output}
            out.update(extra or {})
            print(json.dumps(out))
        else:
            for k, v in (extra or {}).items():
                print(f"{k}: {v}")
            print(f"wrote {args.output}")
    else:
        if args.json or not extra:
            out = {"complex": payload}
            out.update(extra or {})
            print(json.dumps(out) if args.json
                  else json.dumps(payload, indent=1))
        else:
            for k, v in extra.items():
                print(f"{k}: {v}", file=sys.stderr)
            print(json.dumps(payload, indent=1))


def _load(args):
    return fileio.read_complex(args.input, args.backend)


def _cmd_example(args):
    name = args.name
    if name == "figure8":
        dc, keep = bundled.figure_eight_complex(), False
    elif name == "hyperbolic":
        shape = _parse_param(args.param or "2")
        dc, keep = bundled.hyperbolic_complex(shape), False
    elif name == "cr":
        dc, keep = bundled.cr_complex(), True
    elif name == "double":
        dc, keep = bundled.twisted_double_complex(), False
    else:  # unreachable via argparse choices
        raise ParseError(f"unknown example {name!r}")
    _emit_complex(dc, args, keep_flags=keep)
    return 0


def _cmd_coords(args):
    dc = _load(args)
    _emit_complex(dc, args)
    return 0


def _cmd_dualize(args):
    dc = _load(args)
    _emit_complex(dualize(dc), args)
    return 0


def _cmd_conjugate(args):
    dc = _load(args)
    _emit_complex(conjugate_complex(dc), args)
    return 0


def _fmt_res(x):
    return f"{x:.3e}"


def _cmd_check(args):
    dc = _load(args)
    faces = check_faces(dc)
    edges = check_edges(dc)
    tol = args.tolerance
    ok = faces.passed(tol) and edges.passed(tol)
    if args.json:
        print(json.dumps({
            "faces": faces.to_json(),
            "edges": edges.to_json(),
            "tolerance": tol,
            "pass": ok,
        }))
    else:
        print(f"face equations ({len(faces.items)} pairings):")
        for it in faces.items:
            print(f"  {it.label}   |prod-1| = {_fmt_res(it.residual)}")
        print(f"edge equations ({len(edges.items)} classes):")
        for it in edges.items:
            print(f"  {it.label}   max|prod-1| = {_fmt_res(it.residual)}")
        worst = max(faces.max_residual, edges.max_residual)
        print(f"max residual {_fmt_res(worst)}   tolerance {tol:.1e}   "
              f"{'PASS' if ok else 'FAIL'}")
    if ok:
        return 0
    bad = faces.failures(tol) + edges.failures(tol)
    label = bad[0].label if bad else "unknown"
    print(f"error: consistency violated at {label}", file=sys.stderr)
    return 2


def _cmd_beta(args):
    dc = _load(args)
    b = beta_complex(dc)
    d = eval_D(b)
    if args.json:
        print(json.dumps({"beta": b.to_json(), "D": d, "volume": d / 4.0}))
    else:
        print(f"beta(K,z) = {b}")
        print(f"D(beta)   = {d!r}")
        print(f"Vol = D/4 = {d / 4.0!r}")
    return 0


def _cmd_volume(args):
    dc = _load(args)
    vols = [volume_tetra(c) for c in dc.coords]
    total = volume_complex(dc)
    if args.json:
        print(json.dumps({"tetrahedra": vols, "volume": total}))
    else:
        for n, v in enumerate(vols):
            print(f"Vol(T{n}) = {v!r}")
        print(f"Vol(K,z) = {total!r}")
    return 0


def _cmd_defect(args):
    dc = _load(args)
    raw = duality_defect(dc)
    canon = canonicalize_six(raw)
    d = eval_D(raw)
    if args.json:
        print(json.dumps({
            "defect": raw.to_json(),
            "canonicalized": canon.to_json(),
            "D": d,
        }))
    else:
        print(f"duality defect            = {raw}")
        print(f"canonicalized             = {canon}")
        print(f"D(defect) = D(b) - D(b*)  = {d!r}")
    return 0


def _cmd_solve(args):
    dc = _load(args)
    result = solve_consistency(dc, tol=args.tolerance)
    extra = {"iterations": result.iterations,
             "residual": result.residual}
    _emit_complex(result.decorated, args, extra=extra)
    return 0


_COMMANDS = {
    "example": _cmd_example,
    "coords": _cmd_coords,
    "dualize": _cmd_dualize,
    "conjugate": _cmd_conjugate,
    "check": _cmd_check,
    "beta": _cmd_beta,
    "volume": _cmd_volume,
    "defect": _cmd_defect,
    "solve": _cmd_solve,
}


def _common(sub, input_file=True):
    if input_file:
        sub.add_argument("input", help="complex JSON file")
    sub.add_argument("--backend", choices=("auto", "exact", "float"),
                     default="auto",
                     help="scalar backend for loading (default: follow file)")
    sub.add_argument("--tolerance", type=float, default=1e-9,
                     help="residual tolerance (default 1e-9)")
    sub.add_argument("--json", action="store_true",
                     help="machine-readable stdout")
    sub.add_argument("-o", "--output", help="write resulting complex here")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="flagdual",
        description="Flag tetrahedra in CP^2: coordinates, duality, and "
                    "pre-Bloch volumes of decorated triangulations.")
    subs = ap.add_subparsers(dest="verb", required=True)
    ex = subs.add_parser("example", help="emit a bundled example complex")
    ex.add_argument("name", choices=("figure8", "hyperbolic", "cr", "double"))
    ex.add_argument("--param", help="shape parameter for 'hyperbolic' "
                                    "(exact 'a/b+c/d*i' or complex '1+2j')")
    _common(ex, input_file=False)
    for verb, help_text in (
            ("coords", "measure coordinates (flags files become coords)"),
            ("dualize", "apply the duality involution to the decoration"),
            ("conjugate", "complex-conjugate the decoration"),
            ("check", "evaluate face and edge consistency equations"),
            ("beta", "the pre-Bloch invariant and its dilogarithm"),
            ("volume", "volumes of the tetrahedra and the complex"),
            ("defect", "duality defect, canonicalized, with D value"),
            ("solve", "Newton-solve the consistency equations")):
        _common(subs.add_parser(verb, help=help_text))
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _SOLVER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
