"""Command-line front end.

Exit codes: 0 success / all checks passed, 2 a numerical tolerance was not
met, 1 usage or configuration error.  A JSON config file can preload any
flag; explicit command-line flags win.  All emitted numbers use 17
significant digits so reruns are byte-comparable.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import specfun
from .bessel_limits import LimitKernelId, limit_kernel
from .cauchy import CauchyEvalConfig, cauchy_transform
from .equilibrium import solve_equilibrium, variational_residuals
from .finite_kernels import KernelFamily, w_kernel
from .oracle import (
    average_char_poly,
    average_inverse_pair,
    average_product_pair,
    average_ratio,
    make_joint_density,
)
from .orthopoly import (
    PotentialSpec,
    RecurrenceTable,
    WeightSpec,
    build_recurrence,
    eval_monic,
)
from .parametrix import PsiSector, check_gamma2_jump, psi_alpha
from .scaled import ScaledComplex
from .universality import (
    Theorem,
    TheoremCase,
    convergence_study,
    ratio_convergence_check,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_c(z: complex) -> str:
    return f"{_fmt(z.real)} {'+' if z.imag >= 0 else '-'} {_fmt(abs(z.imag))}i"


def _parse_potential(text: str) -> PotentialSpec:
    try:
        coeffs = tuple(float(v) for v in text.split(","))
        return PotentialSpec(coeffs)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"invalid --potential {text!r}: {exc}") from exc


def _parse_complex(text: str) -> complex:
    try:
        re, im = (float(v) for v in text.split(","))
        return complex(re, im)
    except ValueError as exc:
        raise UsageError(f"invalid complex value {text!r}; expected 're,im'") from exc


def _parse_int_list(text: str):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"invalid integer list {text!r}") from exc


def _threads() -> int:
    raw = os.environ.get("RMT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _print_scaled(label: str, v: ScaledComplex):
    print(f"{label}: mantissa = {_fmt_c(v.mantissa)}, log_scale = {_fmt(v.log_scale)}")


def _table_to_json(t: RecurrenceTable) -> dict:
    return {
        "alpha": t.weight.alpha,
        "n": t.weight.n,
        "coeffs": list(t.weight.potential.coeffs),
        "max_degree": t.max_degree,
        "a": [float(v) for v in t.a],
        "b": [float(v) for v in t.b],
        "log_norm_sq": [float(v) for v in t.log_norm_sq],
        "orthogonality_residual": t.orthogonality_residual,
    }


def _load_table(path: str) -> RecurrenceTable:
    """Rebuild the table from the stored weight; verify against stored data."""
    with open(path) as fh:
        doc = json.load(fh)
    w = WeightSpec(doc["alpha"], doc["n"], PotentialSpec(tuple(doc["coeffs"])))
    t = build_recurrence(w, doc["max_degree"])
    stored = np.asarray(doc["a"])
    if np.max(np.abs(stored - t.a)) > 1e-9 * (1 + np.max(np.abs(stored))):
        raise UsageError(f"table file {path} does not match a rebuilt table")
    return t


def _cmd_recurrence(args) -> int:
    p = _parse_potential(args.potential)
    t = build_recurrence(WeightSpec(args.alpha, args.n, p), args.max_degree)
    doc = _table_to_json(t)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=1)
        print(f"wrote {args.out}")
    else:
        json.dump(doc, sys.stdout, indent=1)
        print()
    print(f"orthogonality residual: {_fmt(t.orthogonality_residual)}")
    return EXIT_OK


def _cmd_cauchy(args) -> int:
    t = _load_table(args.table)
    z = _parse_complex(args.z)
    v = cauchy_transform(t, args.j, z)
    _print_scaled(f"h_{args.j}({_fmt_c(z)})", v)
    return EXIT_OK


def _cmd_kernel(args) -> int:
    t = _load_table(args.table)
    fam = KernelFamily(args.family)
    zeta = _parse_complex(args.zeta)
    eta = _parse_complex(args.eta)
    v = w_kernel(fam, t, args.m, zeta, eta)
    _print_scaled(f"W_{fam.value},{t.weight.n}+{args.m}", v)
    return EXIT_OK


def _cmd_limit_kernel(args) -> int:
    kid = LimitKernelId(args.kernel)
    zeta = _parse_complex(args.zeta)
    eta = _parse_complex(args.eta)
    v = limit_kernel(kid, args.alpha, zeta, eta)
    print(f"J_{{{_fmt(args.alpha)},{kid.value}}}({_fmt_c(zeta)}, {_fmt_c(eta)}) = {_fmt_c(v)}")
    return EXIT_OK


def _cmd_equilibrium(args) -> int:
    p = _parse_potential(args.potential)
    eq = solve_equilibrium(p)
    grid = list(np.linspace(eq.b0 * 0.95, eq.a1 * 0.95, 10)) + \
        [eq.b0 - 0.5, eq.a1 + 0.5, eq.b0 - 2.0, eq.a1 + 2.0]
    rep = variational_residuals(eq, p, grid)
    doc = {
        "b0": eq.b0,
        "a1": eq.a1,
        "psi0": eq.psi0,
        "ell": eq.ell,
        "cheb_coeffs": [float(v) for v in eq.cheb_coeffs],
        "residual_summary": {
            "max_inside_residual": rep.max_inside_residual,
            "min_outside_margin": rep.min_outside_margin,
        },
    }
    text = json.dumps(doc, indent=1)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.report}")
    else:
        print(text)
    ok = rep.max_inside_residual < 1e-6 and rep.min_outside_margin > -1e-8
    print(f"variational check: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_TOLERANCE


def _cmd_universality(args) -> int:
    p = _parse_potential(args.potential)
    case = TheoremCase(
        theorem=Theorem(args.case), alpha=args.alpha, potential=p, m=args.m,
        n_list=_parse_int_list(args.n),
    )
    rep = convergence_study(case)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("n,zeta_re,zeta_im,eta_re,eta_im,lhs_re,lhs_im,"
                     "limit_re,limit_im,abs_err\n")
            for n, zeta, eta, lhs, tgt, err in rep.records:
                row = [n, zeta.real, zeta.imag, eta.real, eta.imag,
                       lhs.real, lhs.imag, tgt.real, tgt.imag, err]
                fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v)
                                  for v in row) + "\n")
        print(f"wrote {args.out}")
    summary = {
        "case": args.case,
        "alpha": args.alpha,
        "m": args.m,
        "n_list": rep.n_list,
        "sup_errors": [float(e) for e in rep.errors],
        "slope": rep.slope,
        "decay_ratio": rep.decay_ratio,
        "pass": rep.passed,
    }
    print(json.dumps(summary, indent=1))
    return EXIT_OK if rep.passed else EXIT_TOLERANCE


def _cmd_oracle(args) -> int:
    p = _parse_potential(args.potential)
    w = WeightSpec(args.alpha, args.n, p)
    d = make_joint_density(w)
    t = build_recurrence(w, args.n + 2)
    pts = [_parse_complex(s) for s in args.points.split(";")] if args.points else []

    def done(label, lhs, rhs, tol):
        lhs, rhs = lhs.to_complex(), rhs.to_complex()
        rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
        ok = rel < tol
        print(f"{label}: lhs = {_fmt_c(lhs)}, rhs = {_fmt_c(rhs)}, "
              f"rel err = {_fmt(rel)} -> {'PASS' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_TOLERANCE

    if args.check == "heine":
        x = pts[0] if pts else complex(0.7, 0.0)
        return done("heine", average_char_poly(d, x), eval_monic(t, args.n, x), 1e-6)
    if args.check == "product":
        x, y = (pts + [complex(0.5), complex(-0.4)])[:2]
        rhs = w_kernel(KernelFamily.I, t, 1, x, y)
        return done("product", average_product_pair(d, x, y), rhs, 1e-5)
    if args.check == "ratio":
        x, y = (pts + [complex(0.2, 0.4), complex(0.1)])[:2]
        rhs = ScaledComplex.from_complex(2j * math.pi * (x - y)) * \
            t.gamma_sq(args.n - 1) * w_kernel(KernelFamily.II, t, 0, x, y)
        return done("ratio", average_ratio(d, x, y), rhs, 1e-5)
    # inverse
    if args.n != 3:
        raise UsageError("--check inverse requires --n 3")
    x1, x2 = (pts + [complex(0.3, 0.5), complex(-0.2, 0.5)])[:2]
    c1 = ScaledComplex.from_parts(-2j * math.pi, t.log_gamma_sq(1))
    c2 = ScaledComplex.from_parts(-2j * math.pi, t.log_gamma_sq(2))
    rhs = (-0.5) * (c1 * c2 * (w_kernel(KernelFamily.III, t, -1, x1, x2)
                               + w_kernel(KernelFamily.III, t, -1, x2, x1)))
    return done("inverse", average_inverse_pair(d, x1, x2), rhs, 1e-4)


def _cmd_ratio_check(args) -> int:
    p = _parse_potential(args.potential)
    rep = ratio_convergence_check(args.alpha, p, _parse_complex(args.zeta),
                                  _parse_int_list(args.n))
    for n, val, err in zip(rep.n_list, rep.values, rep.errors):
        print(f"n = {n}: value = {_fmt_c(val)}, |value - 1| = {_fmt(err)}")
    print(f"{'PASS' if rep.passed else 'FAIL'}")
    return EXIT_OK if rep.passed else EXIT_TOLERANCE


def _cmd_parametrix(args) -> int:
    sector = PsiSector.S1 if args.sector == 1 else PsiSector.S2
    m = psi_alpha(args.alpha, _parse_complex(args.zeta), sector)
    for i in range(2):
        print("  ".join(_fmt_c(m[i, j]) for j in range(2)))
    return EXIT_OK


def _cmd_parametrix_jump_test(args) -> int:
    worst = 0.0
    for alpha in (0.0, 0.3, 1.2):
        res = check_gamma2_jump(alpha)
        worst = max(worst, res.max_residual)
        print(f"alpha = {_fmt(alpha)}: max jump residual = {_fmt(res.max_residual)}")
    ok = worst < 1e-10
    print(f"{'PASS' if ok else 'FAIL'} (threshold 1e-10)")
    return EXIT_OK if ok else EXIT_TOLERANCE


def _cmd_specfun_selftest(args) -> int:
    rows = specfun.selftest_rows()
    worst = max(r[3] for r in rows)
    by_identity = {}
    for name, alpha, z, resid in rows:
        key = (name, alpha)
        by_identity[key] = max(by_identity.get(key, 0.0), resid)
    for (name, alpha), resid in sorted(by_identity.items()):
        print(f"{name} alpha={_fmt(alpha)}: max residual {_fmt(resid)}")
    ok = worst < 1e-10
    print(f"{'PASS' if ok else 'FAIL'} (worst {_fmt(worst)}, threshold 1e-10)")
    return EXIT_OK if ok else EXIT_TOLERANCE


def build_parser() -> _Parser:
    p = _Parser(prog="rmtkernels")
    p.add_argument("--config", help="JSON file preloading flag values")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized point selection")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("recurrence")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--potential", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-degree", dest="max_degree", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_recurrence)

    sp = sub.add_parser("cauchy")
    sp.add_argument("--table", required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--z", required=True)
    sp.set_defaults(func=_cmd_cauchy)

    sp = sub.add_parser("kernel")
    sp.add_argument("--family", choices=["I", "II", "III"], required=True)
    sp.add_argument("--table", required=True)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--zeta", required=True)
    sp.add_argument("--eta", required=True)
    sp.set_defaults(func=_cmd_kernel)

    sp = sub.add_parser("limit-kernel")
    sp.add_argument("--kernel", choices=[k.value for k in LimitKernelId],
                    required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--zeta", required=True)
    sp.add_argument("--eta", required=True)
    sp.set_defaults(func=_cmd_limit_kernel)

    sp = sub.add_parser("equilibrium")
    sp.add_argument("--potential", required=True)
    sp.add_argument("--report")
    sp.set_defaults(func=_cmd_equilibrium)

    sp = sub.add_parser("universality")
    sp.add_argument("--case", choices=[t.value for t in Theorem], required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--potential", required=True)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--n", default="8,16,32,64")
    sp.add_argument("--grid", default="default", choices=["default"])
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_universality)

    sp = sub.add_parser("ratio-check")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--potential", required=True)
    sp.add_argument("--zeta", default="0.5,0.5")
    sp.add_argument("--n", default="8,16,32,64")
    sp.set_defaults(func=_cmd_ratio_check)

    sp = sub.add_parser("oracle")
    sp.add_argument("--check", choices=["heine", "product", "ratio", "inverse"],
                    required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--potential", required=True)
    sp.add_argument("--points", help="semicolon-separated 're,im' pairs")
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("parametrix")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--zeta", required=True)
    sp.add_argument("--sector", type=int, choices=[1, 2], required=True)
    sp.set_defaults(func=_cmd_parametrix)

    sp = sub.add_parser("parametrix-jump-test")
    sp.set_defaults(func=_cmd_parametrix_jump_test)

    sp = sub.add_parser("specfun-selftest")
    sp.set_defaults(func=_cmd_specfun_selftest)

    return p


def _apply_config(parser: _Parser, argv):
    """Pre-parse --config and inject file values for flags not on the CLI."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    try:
        path = argv[idx + 1]
    except IndexError:
        raise UsageError("--config needs a file path")
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    if not isinstance(doc, dict):
        raise UsageError("config must be a JSON object")
    known = set()
    for action_group in parser._subparsers._group_actions:
        for sub_parser in action_group.choices.values():
            for action in sub_parser._actions:
                for opt in action.option_strings:
                    known.add(opt.lstrip("-"))
    extra = []
    for key, value in sorted(doc.items()):
        flag = f"--{key}"
        if key not in known:
            raise UsageError(f"unknown config key {key!r}")
        if flag in argv:
            continue  # explicit flag wins
        extra.extend([flag, str(value)])
    return argv + extra


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(parser, argv)
        args = parser.parse_args(argv)
        np.random.seed(args.seed)
        os.environ.setdefault("OMP_NUM_THREADS", str(_threads()))
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
