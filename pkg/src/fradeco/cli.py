"""Command-line front end.

Exit codes: 0 success, 1 mathematical negative (e.g. not decomposable),
2 usage or input error, 3 numerically undecidable (no singular-value gap).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import binary, errors, power, variety
from .decomposition import format_decomposition, read_decomposition, verify_decomposition
from .equations import KNOWN_EQUATIONS, get_equation
from .funtf import format_frame, read_frame, sample_frame
from .tensor import format_symtensor, read_symtensor, synthesize

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INDETERMINATE = 0, 1, 2, 3

# errors that mean the input or the request was malformed
USAGE_ERRORS = (
    errors.ShapeMismatch, errors.UnsupportedR, errors.OrderTooSmall,
    errors.UnknownEquation, errors.BudgetExceeded, errors.NotUnitQuaternion,
    errors.ZeroColumn,
)


class Report:
    """Ordered key/value report rendered as text or JSON, ending with ``result``."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.fields: dict[str, object] = {}
        self.blocks: list[str] = []

    def add(self, key: str, value) -> None:
        self.fields[key] = value

    def block(self, text: str) -> None:
        """Free-form text (a tensor or frame file) printed before the fields."""
        self.blocks.append(text)

    def emit(self, result: int, out=None) -> None:
        out = sys.stdout if out is None else out
        self.fields["result"] = int(result)
        if self.as_json:
            json.dump(_jsonable(self.fields), out, sort_keys=False)
            out.write("\n")
            return
        for b in self.blocks:
            out.write(b)
        for k, v in self.fields.items():
            out.write(f"{k}: {_text(v)}\n")


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, (np.floating, float)):
        f = float(v)
        return f if np.isfinite(f) else str(f)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def _text(v) -> str:
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(_text(x) for x in v)
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    try:
        return max(1, int(os.environ.get("FRADECO_THREADS", "1")))
    except ValueError:
        return 1


# --- commands ------------------------------------------------------------------

def cmd_sample(args, rep: Report) -> int:
    rng = np.random.default_rng(args.seed)
    frames = []
    for k in range(args.count):
        f = sample_frame(args.r, args.n, seed=int(rng.integers(2**63 - 1)))
        frames.append(f)
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"frame_{k:04d}.txt").write_text(format_frame(f))
        else:
            rep.block(format_frame(f))
    rep.add("frames", args.count)
    rep.add("max_residual", max(f.residual for f in frames) if frames else 0.0)
    if rep.as_json and not args.out:
        rep.add("V", [f.V for f in frames])
    return args.count


def cmd_synth(args, rep: Report) -> int:
    frame = read_frame(args.frame)
    if args.weights:
        w = np.array([float(x) for x in args.weights.split(",")])
    else:
        w = np.ones(frame.r)
    T = synthesize(frame.V, w, args.d)
    if args.out:
        Path(args.out).write_text(format_symtensor(T))
        rep.add("written", args.out)
    else:
        rep.block(format_symtensor(T))
    if rep.as_json:
        rep.add("n", T.n)
        rep.add("d", T.d)
        rep.add("coords", np.asarray(T.coords, dtype=float))
    return 0


def cmd_decompose(args, rep: Report) -> int:
    T = read_symtensor(args.input)
    if T.n == 2:
        if args.rank is None:
            reports, r = binary.fradeco_rank(T)
            rep.add("ranks", [f"M_{x.r}:{x.numerical_rank}" for x in reports])
            if r is None:
                raise errors.NotRankDeficient("no M_r with 3 <= r <= 9 is rank deficient")
        else:
            r = args.rank
        dec = binary.decompose_binary(T, r, tol=args.tol)
    elif (T.n, T.d) == (3, 4):
        dec = variety.waring_frame_search(T, restarts=args.restarts, seed=args.seed, tol=args.tol)
    else:
        raise errors.ShapeMismatch(
            f"decompose supports binary forms and ternary quartics, got n={T.n}, d={T.d}"
        )
    text = format_decomposition(dec)
    if args.out:
        Path(args.out).write_text(text)
        rep.add("written", args.out)
    else:
        rep.block(text)
    rep.add("r", dec.r)
    rep.add("fit_residual", dec.fit_residual)
    rep.add("frame_residual", dec.frame.residual)
    rep.add("complex_roots", dec.complex_roots)
    if rep.as_json:
        rep.add("V", np.real(dec.frame.V))
        rep.add("weights", np.real(dec.weights))
    return dec.r


def cmd_eigen(args, rep: Report) -> int:
    T = read_symtensor(args.input)
    pts = power.robust_eigenvectors(T, trials=args.trials, seed=args.seed)
    rows = []
    lines = ["# basin attracting x"]
    for p in pts:
        rows.append({"x": p.x, "basin": p.basin_count, "attracting": p.attracting,
                     "value": p.eigenvalue_proxy})
        lines.append(f"{p.basin_count} {int(p.attracting)} " + " ".join(f"{v:.12g}" for v in p.x))
    rep.block("\n".join(lines) + "\n")
    rep.add("clusters", len(pts))
    if rep.as_json:
        rep.add("points", rows)
    if T.n == 2:
        form = power.eigen_discriminant_binary(T)
        rep.add("discriminant", form.coefficients)
        rep.add("real_roots", [list(np.round(u, 12)) + [m] for u, m in form.real_roots]
                if rep.as_json else [f"({u[0]:.12g}:{u[1]:.12g})x{m}" for u, m in form.real_roots])
    return sum(p.attracting for p in pts)


def cmd_hilbert(args, rep: Report) -> int:
    res = variety.hilbert_value(args.r, args.n, args.d, args.e, nsamples=args.samples,
                                seed=args.seed, threads=_threads(args), strict=False)
    for key in ("r", "n", "d", "e", "ambient_dim", "samples", "kernel_dim", "gap_ratio"):
        rep.add(key, getattr(res, key))
    rep.add("confident", res.confident)
    rep.add("singular_values", res.singular_values)
    if not res.confident:
        rep.emit(-1)
        raise errors.Indeterminate(f"gap ratio {res.gap_ratio:.3g} below {1e3:g}")
    return res.kernel_dim


def cmd_dim(args, rep: Report) -> int:
    e = variety.expected_dim(args.r, args.n, args.d)
    rep.add("expected_dim", e)
    if args.tangent:
        t = variety.tangent_dim(args.r, args.n, args.d, seed=args.seed, samples=args.samples)
        rep.add("tangent_dim", t)
        return t
    return e


def cmd_check_eq(args, rep: Report) -> int:
    eq = get_equation(args.name)
    T = read_symtensor(args.input)
    value = eq(T)
    scale = max(float(np.max(np.abs(np.asarray(T.coords, dtype=float)))), 1e-300)
    rel = abs(float(value)) / scale ** eq.degree
    vanishes = rel <= args.tol
    rep.add("equation", eq.name)
    rep.add("degree", eq.degree)
    rep.add("value", str(value) if not isinstance(value, float) else value)
    rep.add("relative_value", rel)
    rep.add("vanishes", vanishes)
    return int(vanishes)


def cmd_verify(args, rep: Report) -> int:
    T = read_symtensor(args.input)
    dec = read_decomposition(args.dec)
    v = verify_decomposition(T, dec, tol=args.tol)
    rep.add("coord_residual", v.coord_residual)
    rep.add("frame_residual", v.frame_residual)
    rep.add("passed", v.passed)
    return int(v.passed)


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $FRADECO_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="fradeco", description="Frame decompositions of symmetric tensors.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", parents=[common], help="sample unit norm tight frames")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="directory for frame files (default: stdout)")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("synth", parents=[common], help="tensor from a frame and weights")
    s.add_argument("--frame", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--weights", help="comma-separated weights (default: all ones)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("decompose", parents=[common], help="frame decomposition of a tensor")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--rank", type=int)
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--restarts", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("eigen", parents=[common], help="robust eigenvectors by power iteration")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_eigen)

    s = sub.add_parser("hilbert", parents=[common], help="numerical Hilbert function value")
    for k in ("r", "n", "d", "e"):
        s.add_argument(f"--{k}", type=int, required=True)
    s.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("dim", parents=[common], help="dimension of a fradeco variety")
    for k in ("r", "n", "d"):
        s.add_argument(f"--{k}", type=int, required=True)
    s.add_argument("--tangent", action="store_true", help="also compute the tangent-space dimension")
    s.add_argument("--samples", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("check-eq", parents=[common], help="evaluate a known defining equation")
    s.add_argument("--name", required=True, choices=sorted(KNOWN_EQUATIONS))
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--tol", type=float, default=1e-8,
                   help="vanishing threshold relative to max|t| ** degree")
    s.set_defaults(func=cmd_check_eq)

    s = sub.add_parser("verify", parents=[common], help="check a decomposition against a tensor")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--dec", required=True)
    s.add_argument("--tol", type=float, default=1e-8)
    s.set_defaults(func=cmd_verify)
    return p


# commands whose zero-like result is a mathematical negative
_NEGATIVE_ON_ZERO = {"check-eq", "verify"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    rep = Report(args.json)
    try:
        result = args.func(args, rep)
    except errors.Indeterminate as e:
        print(f"indeterminate: {e}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except USAGE_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except errors.FradecoError as e:
        print(str(e), file=sys.stderr)
        rep.add("error", type(e).__name__)
        rep.add("message", str(e))
        rep.emit(0)
        return EXIT_NEGATIVE
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    rep.emit(result)
    if args.command in _NEGATIVE_ON_ZERO and result == 0:
        return EXIT_NEGATIVE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
