"""Command-line front end: ``symqsp solve|decay|verify|constants``."""

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from .analysis import abs_x_cubed_target, decay_profile, max_pointwise_error
from .chebyshev import ChebyshevCoefficients, forward_map, jacobi_anger
from .kernel import Parity, ReducedPhaseFactors
from .solver import DivergenceError, SolverConfig, constants, fpi_solve

ARTIFACT_FORMAT = "symqsp-run/1"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_CONVERGED = 2


class InputError(ValueError):
    pass


# --- lossless JSON ---------------------------------------------------------------


def _fmt_float(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj, indent=0):
    """JSON text with every real written at 17 significant digits."""
    pad = "  " * (indent + 1)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v, indent + 1) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# --- target descriptions -----------------------------------------------------


def _number(doc, key, default=None):
    if key not in doc:
        if default is None:
            raise InputError(f"target description is missing {key!r}")
        return default
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
        raise InputError(f"{key!r} must be a finite number")
    return float(val)


def build_target(doc):
    """Coefficients and a normalized echo for a target description."""
    if not isinstance(doc, dict):
        raise InputError("target description must be a JSON object")
    kind = doc.get("kind")
    if kind == "coefficients":
        try:
            parity = Parity.parse(doc.get("parity"))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        coeffs = doc.get("coeffs")
        if not isinstance(coeffs, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)
            for v in coeffs
        ):
            raise InputError("'coeffs' must be a list of finite numbers")
        echo = {"kind": kind, "parity": parity.value, "coeffs": [float(v) for v in coeffs]}
        return ChebyshevCoefficients(coeffs, parity), echo
    if kind in ("jacobi-anger-even", "jacobi-anger-odd"):
        tau = _number(doc, "tau")
        eps0 = _number(doc, "eps0", 1e-14)
        scale = _number(doc, "scale", 0.5)
        try:
            c_even, c_odd, d = jacobi_anger(tau, eps0, scale)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        echo = {"kind": kind, "tau": tau, "eps0": eps0, "scale": scale, "degree_cutoff": d}
        return (c_even if kind.endswith("even") else c_odd), echo
    if kind == "abs-x-cubed":
        scale = _number(doc, "scale", 0.8)
        truncation = _number(doc, "truncation", 1000)
        if truncation < 0 or truncation != int(truncation):
            raise InputError("'truncation' must be a non-negative integer")
        echo = {"kind": kind, "scale": scale, "truncation": int(truncation)}
        return abs_x_cubed_target(scale, int(truncation)), echo
    raise InputError(
        f"unknown target kind {kind!r}; expected coefficients, jacobi-anger-even, "
        "jacobi-anger-odd or abs-x-cubed"
    )


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None


# --- artifacts ---------------------------------------------------------------


def make_artifact(echo, c, config, report, diverged_at, seconds):
    phi = report.phi
    return {
        "format": ARTIFACT_FORMAT,
        "target": echo,
        "parity": c.parity.value,
        "coefficients": list(c.coeffs),
        "config": {
            "tol": config.tol,
            "max_iter": int(config.max_iter),
            "divergence_factor": config.divergence_factor,
        },
        "phase_factors": list(phi.values),
        "residual_history": list(report.residual_history),
        "iterations": report.iterations,
        "converged": report.converged,
        "diverged_at": diverged_at,
        "guarantee": report.guarantee.value,
        "norms": {
            "c_one_norm": c.one_norm(),
            "phi_one_norm": phi.one_norm(),
            "apriori_bound": report.apriori_phi_bound,
        },
        "timing": {"wall_clock_seconds": seconds},
    }


def load_artifact(path, need=("parity", "coefficients", "phase_factors")):
    """Read an artifact and return ``(data, c, phi)``."""
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path} does not hold a run artifact")
    missing = [k for k in need if k not in data]
    if missing:
        raise InputError(f"{path} is missing field(s): {', '.join(missing)}")
    try:
        parity = Parity.parse(data["parity"])
        c = ChebyshevCoefficients(np.asarray(data["coefficients"], dtype=float), parity)
        phi = ReducedPhaseFactors(np.asarray(data["phase_factors"], dtype=float), parity)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed artifact ({exc})") from None
    if len(c) != len(phi):
        raise InputError(f"{path}: coefficients and phase_factors differ in length")
    return data, c, phi


def verification(c, phi):
    """(L(phi), ||F(phi) - c||_1) for a stored solve."""
    resid = float(np.sum(np.abs(forward_map(phi).coeffs - c.coeffs))) if len(c) else 0.0
    return max_pointwise_error(phi, c), resid


# --- commands -------------------------------------------------------------------


def cmd_solve(args):
    doc = _read_json(args.input)
    c, echo = build_target(doc)
    try:
        config = SolverConfig(args.tol, args.max_iter, args.divergence_factor)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    diverged_at = None
    start = time.perf_counter()
    try:
        report = fpi_solve(c, config)
    except DivergenceError as exc:
        report = exc.report
        diverged_at = exc.iteration
    seconds = time.perf_counter() - start
    artifact = make_artifact(echo, c, config, report, diverged_at, seconds)
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps(artifact) + "\n")
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc.strerror}") from None
    if not report.converged:
        why = f"diverged at iteration {diverged_at}" if diverged_at is not None else "hit max-iter"
        print(f"symqsp: not converged ({why}); residual {report.residual:.3e}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_decay(args):
    _, c, phi = load_artifact(args.input)
    profile = decay_profile(c, phi)
    rhs = profile.bound_rhs()
    try:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["n", "tail_c", "tail_phi", "bound_rhs"])
            for n in range(len(c)):
                writer.writerow(
                    [
                        n,
                        _fmt_float(profile.tail_sums_c[n]),
                        _fmt_float(profile.tail_sums_phi[n]),
                        "" if rhs is None else _fmt_float(rhs[n]),
                    ]
                )
            fh.write(
                f"# fitted_rate_c={_fmt_float(profile.fitted_rate_c)},"
                f"fitted_rate_phi={_fmt_float(profile.fitted_rate_phi)}\n"
            )
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc.strerror}") from None
    return EXIT_OK


def cmd_verify(args):
    _, c, phi = load_artifact(args.input)
    lmax, resid = verification(c, phi)
    print(f"max_pointwise_error {_fmt_float(lmax)}")
    print(f"residual_one_norm {_fmt_float(resid)}")
    return EXIT_OK


def cmd_constants(args):
    print(dumps(constants().as_dict()))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="symqsp", description="Symmetric QSP phase factors by fixed-point iteration.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve for phase factors of a target")
    p.add_argument("--input", required=True, help="target description (JSON)")
    p.add_argument("--output", required=True, help="run artifact to write (JSON)")
    p.add_argument("--tol", type=float, default=1e-12, help="l1 residual tolerance")
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--divergence-factor", type=float, default=10.0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("decay", help="tail-sum profile of a run artifact as CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_decay)

    p = sub.add_parser("verify", help="recompute L(phi) and ||F(phi) - c||_1")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constants", help="print convergence-region constants")
    p.set_defaults(func=cmd_constants)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"symqsp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
