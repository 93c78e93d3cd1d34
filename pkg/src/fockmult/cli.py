"""Batch front door: norms, sweeps, verifications, identifications.

Every run emits one report — JSON `{config, results, verdict, runtime_ms}`
(or two-column CSV where the result is a level/value table) — and exits with
0  pass / converged
1  usage, parse, or capacity error
2  power iteration failed to converge
3  a verification or identification check failed

All randomness flows from --seed (default 0); identical configs produce
byte-identical reports apart from runtime_ms.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from ._power import DEFAULT_TOL, default_backend
from .errors import FockmultError, UnsupportedOperationError
from .fock import (
    FockVector,
    apply_U,
    convolve_left,
    parse_polynomial,
    polynomial_to_json,
    random_polynomial,
)
from .matricial import ruan_axiom_check
from .multiplier import (
    circulant_of,
    finfty_sweep,
    hardy_norm_grid,
    make_pair,
    pair_adjoint,
    pair_norm,
    pair_norm_estimate,
    pair_product,
    verify_intertwine,
)
from .operators import flip_matrix, left_mult_matrix, right_mult_matrix
from .semigroups import (
    FreeMonoid,
    MonoidSpec,
    NonNegIntegers,
    NonNegVectors,
    parse_spec,
    reverse_word,
    window,
)

EVIDENCE_NOTE = "finite-truncation lower bounds: evidence of boundedness, not a proof"

VERIFY_CHECKS = ("cstar", "flip", "intertwine", "ruan", "ustar", "abelian")
IDENTIFY_TARGETS = ("circulant", "hardy", "popescu")

_DEFAULT_CHECK_TOL = {
    "cstar": 1e-8,
    "flip": 1e-12,
    "intertwine": 1e-12,
    "ruan": 1e-8,
    "ustar": 1e-12,
    "abelian": 1e-12,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _is_finite(spec: MonoidSpec) -> bool:
    return spec.window_size(3) == spec.window_size(0)


def _default_level(spec: MonoidSpec) -> int:
    return 0 if _is_finite(spec) else 3


def _read_symbol_arg(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return text


# -- verification checks -------------------------------------------------------


def _check_cstar(spec, level, trials, seed, tol):
    if not spec.is_group or not _is_finite(spec):
        raise UnsupportedOperationError(
            f"the C*-identity check needs a finite group, not {spec.short_name()}"
        )
    rng = np.random.default_rng(seed)
    full = window(spec, 0)
    worst = 0.0
    for _ in range(trials):
        p = make_pair(spec, random_polynomial(rng, full), 0)
        prod = pair_product(pair_adjoint(p), p)
        np_, npp = pair_norm(p), pair_norm(prod)
        worst = max(worst, abs(npp - np_ * np_) / max(1.0, np_ * np_))
    return {"worst_residual": worst}, worst <= tol


def _check_flip(spec, level, trials, seed, tol):
    """L by a symbol equals W . R by the word-reversed symbol . W."""
    if not isinstance(spec, FreeMonoid):
        raise UnsupportedOperationError("the flip check needs a free monoid")
    if level is None:
        level = 3
    rng = np.random.default_rng(seed)
    dom = window(spec, level)
    sym_w = window(spec, min(2, level))
    wd = flip_matrix(spec, dom).mat
    worst = 0.0
    for _ in range(trials):
        phi = random_polynomial(rng, sym_w, max_terms=4)
        lmat = left_mult_matrix(spec, phi, dom)
        rev = FockVector(sym_w, {reverse_word(spec, x): c for x, c in phi.coeffs.items()})
        rmat = right_mult_matrix(spec, rev, dom)
        wc = flip_matrix(spec, lmat.codomain).mat
        diff = lmat.mat - wc.T.conjugate() @ rmat.mat @ wd
        worst = max(worst, float(abs(diff).max()) if diff.nnz else 0.0)
    return {"worst_residual": worst, "level": level}, worst <= tol


def _check_intertwine(spec, level, trials, seed, tol):
    if level is None:
        level = _default_level(spec)
    rng = np.random.default_rng(seed)
    sym_w = window(spec, min(2, level))
    worst = 0.0
    witness = None
    for _ in range(trials):
        phi = random_polynomial(rng, sym_w, max_terms=4)
        p = make_pair(spec, phi, level)
        v = verify_intertwine(p, trials=5, seed=int(rng.integers(2 ** 32)), tol=tol)
        if v.max_residual > worst:
            worst = v.max_residual
            if not v.passed and v.witness is not None:
                f, g = v.witness
                witness = {
                    "symbol": polynomial_to_json(phi),
                    "f": polynomial_to_json(f),
                    "g": polynomial_to_json(g),
                }
    out = {"worst_residual": worst, "level": level}
    if witness is not None:
        out["witness"] = witness
    return out, worst <= tol


def _check_ruan(spec, level, trials, seed, tol):
    v = ruan_axiom_check(spec, n=2, trials=trials, seed=seed, tol=tol, level=level)
    out = {
        "worst_violation": v.worst_violation,
        "failures": [list(f) for f in v.failures],
    }
    return out, v.passed


def _check_ustar(spec, level, trials, seed, tol):
    if not spec.is_group:
        raise UnsupportedOperationError(
            f"the U laws need a group, not {spec.short_name()}"
        )
    if level is None:
        level = 0 if _is_finite(spec) else 8
    rng = np.random.default_rng(seed)
    win = window(spec, level)
    target = win if _is_finite(spec) else window(spec, 2 * level)
    worst = 0.0
    for _ in range(trials):
        f = random_polynomial(rng, win, max_terms=6)
        phi = random_polynomial(rng, win, max_terms=6)
        if apply_U(apply_U(f)) != f:
            return {"worst_residual": float("inf"), "level": level}, False
        lhs = apply_U(convolve_left(f, phi, target))
        rhs = convolve_left(apply_U(phi), apply_U(f), target)
        worst = max(worst, (lhs - rhs).norm())
    return {"worst_residual": worst, "level": level}, worst <= tol


def _check_abelian(spec, level, trials, seed, tol):
    if not spec.is_abelian:
        raise UnsupportedOperationError(
            f"the commutation check needs an abelian monoid, not {spec.short_name()}"
        )
    if level is None:
        level = 0 if _is_finite(spec) else 4
    rng = np.random.default_rng(seed)
    dom = window(spec, level)
    sym_w = window(spec, min(2, level))
    worst = 0.0
    for _ in range(trials):
        phi = random_polynomial(rng, sym_w, max_terms=4)
        diff = left_mult_matrix(spec, phi, dom).mat - right_mult_matrix(spec, phi, dom).mat
        worst = max(worst, float(abs(diff).max()) if diff.nnz else 0.0)
    return {"worst_residual": worst, "level": level}, worst <= tol


_CHECKS = {
    "cstar": _check_cstar,
    "flip": _check_flip,
    "intertwine": _check_intertwine,
    "ruan": _check_ruan,
    "ustar": _check_ustar,
    "abelian": _check_abelian,
}


# -- command runners -----------------------------------------------------------


def _cmd_norm(args, config):
    spec = parse_spec(args.spec)
    phi = parse_polynomial(spec, _read_symbol_arg(args.symbol))
    level = args.level if args.level is not None else phi.degree()
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    config.update(spec=spec.to_json(), symbol=polynomial_to_json(phi), level=level, tol=tol)
    est = pair_norm_estimate(make_pair(spec, phi, level), tol=tol, seed=args.seed)
    results = {
        "value": est.value,
        "l_norm": est.l_estimate.sigma,
        "r_norm": est.r_estimate.sigma,
        "iterations": est.l_estimate.iterations + est.r_estimate.iterations,
        "converged": est.converged,
    }
    verdict = "converged" if est.converged else "non-converged"
    return results, verdict, (0 if est.converged else 2), None


def _cmd_sweep(args, config):
    spec = parse_spec(args.spec)
    phi = parse_polynomial(spec, _read_symbol_arg(args.symbol))
    if not args.levels:
        raise ValueError("sweep needs --levels a,b,c")
    tol = args.tol if args.tol is not None else 1e-6
    config.update(spec=spec.to_json(), symbol=polynomial_to_json(phi),
                  levels=list(args.levels), tol=tol)
    report = finfty_sweep(spec, phi, args.levels, tol=tol, seed=args.seed)
    results = report.to_json_obj()
    results["note"] = EVIDENCE_NOTE
    verdict = "converged" if report.converged else "non-converged"
    return results, verdict, (0 if report.converged else 2), report.to_csv_text()


def _cmd_verify(args, config):
    spec = parse_spec(args.spec)
    tol = args.tol if args.tol is not None else _DEFAULT_CHECK_TOL[args.check]
    trials = args.trials if args.trials is not None else 20
    config.update(spec=spec.to_json(), check=args.check, tol=tol,
                  trials=trials, level=args.level)
    results, passed = _CHECKS[args.check](spec, args.level, trials, args.seed, tol)
    results["tol"] = tol
    return results, ("pass" if passed else "fail"), (0 if passed else 3), None


def _cmd_identify(args, config):
    spec = parse_spec(args.spec)
    phi = parse_polynomial(spec, _read_symbol_arg(args.symbol))
    config.update(spec=spec.to_json(), symbol=polynomial_to_json(phi), target=args.target)

    if args.target == "circulant":
        tol = args.tol if args.tol is not None else 1e-12
        config.update(tol=tol)
        rep = circulant_of(spec, phi, tol=tol)
        results = {
            "max_deviation": rep.max_deviation,
            "symbol": [[v.real, v.imag] for v in rep.symbol],
            "round_trip_exact": rep.round_trip_exact,
            "matrix": [[[v.real, v.imag] for v in row] for row in rep.matrix.tolist()],
        }
        ok = rep.passed and rep.round_trip_exact
        return results, ("pass" if ok else "fail"), (0 if ok else 3), None

    if args.target == "hardy":
        if isinstance(spec, NonNegIntegers):
            d = 1
        elif isinstance(spec, NonNegVectors):
            d = spec.d
        else:
            raise UnsupportedOperationError(
                "hardy identification needs zplus or zplus_d"
            )
        levels = args.levels or {1: (128, 512), 2: (8, 16, 24), 3: (2, 3, 4)}[min(d, 3)]
        tol = args.tol if args.tol is not None else (1e-3 if d == 1 else 1e-2)
        config.update(levels=list(levels), tol=tol, grid=args.grid)
        report = finfty_sweep(spec, phi, levels, norm_tol=1e-10, seed=args.seed)
        grid_val = hardy_norm_grid(spec, phi, args.grid)
        gap = grid_val - report.extrapolate
        results = {
            "levels": list(report.levels),
            "norms": list(report.norms),
            "sweep_value": report.extrapolate,
            "grid_value": grid_val,
            "gap": gap,
            "note": EVIDENCE_NOTE,
        }
        ok = -1e-9 <= gap <= tol
        return results, ("pass" if ok else "fail"), (0 if ok else 3), None

    # popescu
    if not isinstance(spec, FreeMonoid):
        raise UnsupportedOperationError("popescu identification needs a free monoid")
    depths = args.levels or tuple(range(1, (args.level or 6) + 1))
    tol = args.tol if args.tol is not None else 1e-10
    config.update(levels=list(depths), tol=tol)
    values, lns, rns = [], [], []
    ok = True
    for k in depths:
        est = pair_norm_estimate(make_pair(spec, phi, k), tol=1e-13, seed=args.seed)
        values.append(est.value)
        lns.append(est.l_estimate.sigma)
        rns.append(est.r_estimate.sigma)
        ok = ok and est.converged
    ok = ok and all(b >= a - tol for a, b in zip(values, values[1:]))
    results = {
        "depths": list(depths),
        "values": values,
        "l_norms": lns,
        "r_norms": rns,
        "note": EVIDENCE_NOTE,
    }
    csv = "depth,value\n" + "".join(f"{k},{v:.17g}\n" for k, v in zip(depths, values))
    return results, ("pass" if ok else "fail"), (0 if ok else 3), csv


_RUNNERS = {
    "norm": _cmd_norm,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "identify": _cmd_identify,
}


# -- parser --------------------------------------------------------------------


def _levels_arg(text: str) -> tuple:
    try:
        out = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad level list {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty level list")
    return out


def _add_common(p: argparse.ArgumentParser, symbol: bool):
    if symbol:
        p.add_argument("--symbol", required=True,
                       help="polynomial JSON, or @file to read from a path")
    p.add_argument("--spec", required=True, help="monoid spec JSON")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--levels", type=_levels_arg, default=None,
                   help="comma-separated strictly increasing levels")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fockmult",
                     description="multiplier norms on exact truncations")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_common(sub.add_parser("norm", help="pair norm at one level"), symbol=True)
    _add_common(sub.add_parser("sweep", help="pair norms over increasing levels"),
                symbol=True)
    pv = sub.add_parser("verify", help="sampled verification of an algebra law")
    pv.add_argument("check", choices=VERIFY_CHECKS)
    _add_common(pv, symbol=False)
    pi = sub.add_parser("identify", help="match a truncation family to its model")
    pi.add_argument("target", choices=IDENTIFY_TARGETS)
    _add_common(pi, symbol=True)
    return parser


def main(argv=None) -> int:
    t0 = time.perf_counter()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    config = {
        "command": args.command,
        "seed": args.seed,
        "format": args.format,
        "backend": default_backend(),
    }
    try:
        results, verdict, code, csv_text = _RUNNERS[args.command](args, config)
        if args.format == "csv" and csv_text is None:
            raise ValueError(
                "csv output is not available for this command; use --format json"
            )
    except FockmultError as e:
        print(f"fockmult: error: {e}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        print(f"fockmult: error: {e}", file=sys.stderr)
        return 1

    if args.format == "csv":
        text = csv_text
    else:
        report = {
            "config": config,
            "results": results,
            "verdict": verdict,
            "runtime_ms": int((time.perf_counter() - t0) * 1000),
        }
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
