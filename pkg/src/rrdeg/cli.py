"""Command-line front end: ``rrdeg degree | verify | bw | project | selftest``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from math import factorial
from typing import Callable, List, Optional, Tuple

from . import eigensolve, formulas, tensor
from .bw import HomogeneousForm, bw_dist_sq, bw_inner, bw_norm_sq
from .errors import DegenerateInput, InvalidArgument, NotFound, NumericFailure, UnsupportedParameter

EXIT_OK = 0
EXIT_CROSS_CHECK = 2
EXIT_MISMATCH = 3
EXIT_DEGENERATE = 4
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_json(path: str):
    if path.startswith("data:"):
        return json.loads(resources.files("rrdeg.data").joinpath(path[5:]).read_text())
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_form(path: str) -> HomogeneousForm:
    return HomogeneousForm.from_json(_load_json(path))


def _load_faces(path: str):
    obj = _load_json(path)
    try:
        return [(int(f["codim"]), int(f["volume"])) for f in obj["faces"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgument(f"malformed faces file: {exc}") from exc


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# degree

_NEEDS = {
    "complete-intersection": ("n", "deltas", "omega"),
    "hypersurface": ("n", "delta", "omega"),
    "morphism": ("m", "d", "omega"),
    "general": ("m", "chern_data", "omega"),
    "toric": ("faces", "omega"),
    "sv-general": ("m", "d", "omega"),
    "sv-bw": ("m", "d", "omega"),
    "lines-general": ("k", "omega"),
    "lines-bw": ("k", "omega"),
    "matrix-bw": ("m1", "m2", "omega"),
    "gdd-chern": ("m", "chern_data"),
    "gdd-veronese": ("m", "d", "omega"),
    "span-codim": ("m", "d", "omega"),
}
_SCALAR_MD = {"morphism", "general", "gdd-chern", "gdd-veronese"}


def _degree_params(args) -> dict:
    p = {}
    for key in _NEEDS[args.variant]:
        val = getattr(args, key)
        if val is None:
            raise InvalidArgument(f"variant {args.variant} needs --{key.replace('_', '-')}")
        if key == "faces":
            val = _load_faces(val)
        elif key in ("m", "d") and args.variant in _SCALAR_MD:
            if len(val) != 1:
                raise InvalidArgument(f"--{key} takes a single integer for {args.variant}")
            val = val[0]
        p[key] = val
    return p


def cmd_degree(args) -> int:
    report = formulas.compute(args.variant, _degree_params(args), cross_check=args.cross_check)
    if args.json:
        print(_dump(report.to_json()))
    else:
        print(report.degree)
        print(f"# {report.provenance}")
        for name, value, ok in report.cross_checks:
            print(f"# {'agree' if ok else 'DISAGREE'}: {name} = {value}")
    return EXIT_OK if report.consistent else EXIT_CROSS_CHECK


# ---------------------------------------------------------------------------
# verify

def _maybe_form(path: Optional[str]) -> Optional[HomogeneousForm]:
    return None if path in (None, "random") else _load_form(path)


def _run_verify(args):
    v = args.variety
    if v == "pn":
        if args.f in (None, "random"):
            import numpy as np

            f = eigensolve.random_form(np.random.default_rng(args.seed), 2, args.omega)
        else:
            f = _load_form(args.f)
        report = eigensolve.verify_pn(f)
        report.seed = args.seed if args.f in (None, "random") else None
        return report
    if v == "rational-normal-curve":
        return eigensolve.verify_rational_normal_curve(args.d, args.omega, args.seed, _maybe_form(args.f))
    if v == "conic-bw":
        return eigensolve.verify_conic_bw(args.seed, _maybe_form(args.f))
    if v == "plane-curve":
        return eigensolve.verify_plane_curve(args.delta, args.omega, args.seed, _maybe_form(args.f1), _maybe_form(args.f))
    if v == "segre-2x2":
        H = None if args.H in (None, "random") else tensor.SymMatrix.from_json(_load_json(args.H))
        return tensor.verify_segre_2x2(args.seed, H)
    raise InvalidArgument(f"unknown variety {v!r}")


def cmd_verify(args) -> int:
    try:
        report = _run_verify(args)
    except DegenerateInput as exc:
        print(_dump({"schema": 1, "variant": args.variety, "seed": args.seed, "degenerate": [str(exc)]}))
        return EXIT_DEGENERATE
    if args.expect is not None:
        report.expected_degree = args.expect
    print(_dump(report.to_json()))
    if report.degenerate:
        return EXIT_DEGENERATE
    if report.match is False:
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# bw and project

def cmd_bw(args) -> int:
    f = _load_form(args.f)
    out = {"schema": 1, "norm_sq_f": _frac(bw_norm_sq(f))}
    if args.g:
        g = _load_form(args.g)
        out.update({"norm_sq_g": _frac(bw_norm_sq(g)), "inner": _frac(bw_inner(f, g)),
                    "dist_sq": _frac(bw_dist_sq(f, g))})
    out["scaled"] = [_frac(c) for c in f.scaled_vector()]
    print(_dump(out))
    return EXIT_OK


def cmd_project(args) -> int:
    H = tensor.SymMatrix.from_json(_load_json(args.H))
    F = tensor.project_sym2(H)
    print(_dump({"schema": 1, "in_span": tensor.span_membership(H), "projection": F.to_json()}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# selftest

def selftest_checks() -> List[Tuple[str, Callable[[], bool]]]:
    hexagon = _load_faces("data:hexagon_faces.json")
    checks = [
        ("sv-general [2,3] [2,2] omega=3 = 117240",
         lambda: formulas.rrdeg_segre_veronese_general([2, 3], [2, 2], 3) == 117240),
        ("toric hexagon omega=2 = 54", lambda: formulas.rrdeg_toric(hexagon, 2) == 54),
        ("lines-bw k=2 omega=2 = 8", lambda: formulas.rrdeg_product_lines_bw(2, 2) == 8),
        ("conic under BW = 4", lambda: formulas.rrdeg_segre_veronese_bw([1], [2], 2) == 4),
        ("span codim [1,1] [1,1] = 1", lambda: formulas.span_codim([1, 1], [1, 1], 2) == 1),
    ]
    for k, want in zip(range(2, 7), (12, 88, 848, 9888, 135616)):
        checks.append((f"product of {k} lines omega=2 = {want}",
                       lambda k=k, want=want: formulas.rrdeg_product_lines_general(k, 2) == want))
    checks.append(("omega^k k! grid k<=5 omega<=4", lambda: all(
        formulas.rrdeg_product_lines_bw(k, w) == w ** k * factorial(k)
        == formulas.rrdeg_segre_veronese_bw([1] * k, [1] * k, w)
        for k in range(1, 6) for w in range(1, 5))))

    def sturm(name, want):
        f = _load_form(f"data:{name}")
        p = eigensolve.critical_binary_form(eigensolve.rational_normal_curve(2), f, eigensolve.euclidean_quadric(3))
        return eigensolve.sturm_real_count(p) == want

    checks.append(("conic objective 1 has 2 real eigenpoints", lambda: sturm("conic_objective_1.json", 2)))
    checks.append(("conic objective 2 has 4 real eigenpoints", lambda: sturm("conic_objective_2.json", 4)))

    def fermat():
        rep = eigensolve.verify_plane_curve(f1=_load_form("data:fermat_cubic.json"),
                                            f=_load_form("data:fermat_objective.json"))
        lam = max(e["lambda"] for e in rep.eigenpairs)
        return bool(rep.match) and abs(lam - 8) < 1e-8

    checks.append(("Fermat cubic: 12 eigenpoints, max eigenvalue 8", fermat))
    checks.append(("binary cubic: 3 eigenpoints", lambda: bool(
        eigensolve.verify_pn(_load_form("data:binary_cubic.json")).match)))
    checks.append(("Segre 2x2 seed 0: 8 singular pairs", lambda: bool(tensor.verify_segre_2x2(0).match)))
    return checks


def cmd_selftest(args) -> int:
    results = []
    for name, fn in selftest_checks():
        try:
            ok = bool(fn())
        except Exception as exc:  # a crashing check is a failing check
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        results.append((name, ok))
    if args.json:
        print(_dump({"schema": 1, "checks": [{"name": n, "pass": ok} for n, ok in results]}))
    else:
        for name, ok in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if all(ok for _, ok in results) else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rrdeg", description="Rayleigh-Ritz degrees and eigenpoint verification")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("degree", help="evaluate a degree formula")
    d.add_argument("variant", choices=formulas.VARIANTS)
    d.add_argument("--n", type=int)
    d.add_argument("--delta", type=int)
    d.add_argument("--deltas", type=_ints)
    d.add_argument("--m", type=_ints)
    d.add_argument("--d", type=_ints)
    d.add_argument("--k", type=int)
    d.add_argument("--m1", type=int)
    d.add_argument("--m2", type=int)
    d.add_argument("--omega", type=int)
    d.add_argument("--chern-data", dest="chern_data", type=_ints)
    d.add_argument("--faces", help="JSON file with {\"faces\": [{\"codim\", \"volume\"}, ...]}")
    d.add_argument("--cross-check", action="store_true")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_degree)

    v = sub.add_parser("verify", help="solve for eigenpoints and compare with the degree formula")
    v.add_argument("variety", choices=("pn", "rational-normal-curve", "plane-curve", "conic-bw", "segre-2x2"))
    v.add_argument("--f", help="objective form JSON, or 'random'")
    v.add_argument("--f1", help="plane curve equation JSON, or 'random'")
    v.add_argument("--H", help="symmetric 4x4 matrix JSON, or 'random'")
    v.add_argument("--d", type=int, default=2)
    v.add_argument("--delta", type=int, default=3)
    v.add_argument("--omega", type=int, default=2)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--expect", type=int)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bw", help="Bombieri-Weyl norms and distances")
    b.add_argument("--f", required=True)
    b.add_argument("--g")
    b.set_defaults(func=cmd_bw)

    p = sub.add_parser("project", help="project a symmetric matrix onto multihomogeneous quadrics")
    p.add_argument("--H", required=True)
    p.set_defaults(func=cmd_project)

    s = sub.add_parser("selftest", help="run the built-in regression table")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidArgument, UnsupportedParameter, NotFound, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"rrdeg: error: {exc}\n")
        return EXIT_USAGE
    except NumericFailure as exc:
        sys.stderr.write(f"rrdeg: numeric failure: {exc} {getattr(exc, 'diagnostics', '')}\n")
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
