"""Command-line front end: ``hardyq <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 domain or numerical error,
3 a verification check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .constant import beta_critical, solve_c, tan_residual
from .errors import HardyDomainError, NonConvergence
from .estimator import quad_rayleigh, sector_oracle
from .geometry import AuxFrame, build_gamma, normalize, sample_quadrilaterals, write_svg
from .profile import build_profile, potential_v
from .verifier import boundary_flux, flux_gradient_check, lemma_betas, lemma_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3
_FULL_TURN_SNAP = 5e-5

COMMANDS = ("constant", "critical-angle", "profile", "classify", "verify", "estimate", "sector")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    quad: str | None = None
    beta: float | None = None
    n: int | None = None
    h: float | None = None
    refine: int = 0
    seed: int = 0
    samples: int | None = None
    grid: str = "graded"
    fmt: str = "json"
    output: str | None = None
    svg: str | None = None


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default=None,
                        help="output format (default json; csv for profile)")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--degrees", action="store_true",
                        help="read --beta in degrees instead of radians")

    parser = _Parser(prog="hardyq",
                     description="Hardy constants of non-convex quadrilaterals.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("constant", parents=[common], help="Hardy constant of a sector")
    p.add_argument("--beta", type=float, required=True)

    sub.add_parser("critical-angle", parents=[common], help="largest angle with constant 1/4")

    p = sub.add_parser("profile", parents=[common], help="tabulate theta, psi, f, g, V")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--samples", type=int, default=200)

    p = sub.add_parser("classify", parents=[common], help="normalize and classify a quadrilateral")
    p.add_argument("--quad", required=True, help='JSON file {"vertices": [[x, y], ...]}')
    p.add_argument("--svg", help="also draw the quadrilateral and its equidistance curve")

    p = sub.add_parser("verify", parents=[common], help="run the numerical checks")
    target = p.add_mutually_exclusive_group()
    target.add_argument("--beta", type=float, help="profile inequalities for one angle")
    target.add_argument("--quad", help="boundary flux for one quadrilateral")
    p.add_argument("--seed", type=int, default=0, help="seed for random quadrilaterals")
    p.add_argument("--samples", type=int, default=10,
                   help="random quadrilaterals per type when neither --beta nor --quad")

    p = sub.add_parser("estimate", parents=[common], help="2D grid eigenvalue estimate")
    p.add_argument("--quad", required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--refine", type=int, default=0, help="number of extra h-halvings")

    p = sub.add_parser("sector", parents=[common], help="1D sector eigenvalue estimate")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n", type=int, default=4000)
    p.add_argument("--grid", choices=("graded", "uniform"), default="graded")
    return parser


def parse_args(argv) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    if ns.command is None:
        raise UsageError(f"a command is required: {', '.join(COMMANDS)}")
    beta = getattr(ns, "beta", None)
    if beta is not None:
        if not math.isfinite(beta):
            raise UsageError("--beta must be finite")
        if ns.degrees:
            beta = math.radians(beta)
        if abs(beta - 2.0 * math.pi) <= _FULL_TURN_SNAP:
            # 2pi typed to four decimals (6.2832) means the full turn
            beta = 2.0 * math.pi
    for flag in ("samples", "n", "refine"):
        value = getattr(ns, flag, None)
        if value is not None and value < (0 if flag == "refine" else 1):
            raise UsageError(f"--{flag} must be {'non-negative' if flag == 'refine' else 'positive'}")
    h = getattr(ns, "h", None)
    if h is not None and not (h > 0.0 and math.isfinite(h)):
        raise UsageError("--h must be a positive number")
    fmt = ns.fmt or ("csv" if ns.command == "profile" else "json")
    return RunConfig(command=ns.command, quad=getattr(ns, "quad", None), beta=beta,
                     n=getattr(ns, "n", None), h=h, refine=getattr(ns, "refine", 0) or 0,
                     seed=getattr(ns, "seed", 0) or 0, samples=getattr(ns, "samples", None),
                     grid=getattr(ns, "grid", "graded"), fmt=fmt, output=ns.output,
                     svg=getattr(ns, "svg", None))


def load_quad(path: str):
    """Read ``{"vertices": [[x, y] x 4]}``; any start vertex, either orientation."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"--quad: cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"--quad: {path} is not valid JSON: {exc.msg}") from exc
    verts = data.get("vertices") if isinstance(data, dict) else None
    if not isinstance(verts, list) or len(verts) != 4:
        raise UsageError('--quad: expected {"vertices": [[x, y], [x, y], [x, y], [x, y]]}')
    try:
        return np.array(verts, dtype=float).reshape(4, 2)
    except (TypeError, ValueError) as exc:
        raise UsageError("--quad: vertices must be four numeric [x, y] pairs") from exc


# --------------------------------------------------------------------------
# commands

def _cmd_constant(cfg: RunConfig):
    p = solve_c(cfg.beta)
    return {"beta": p.beta, "beta_over_pi": p.beta / math.pi, "c": p.c, "alpha": p.alpha,
            "x": p.x, "tan_residual": tan_residual(p.c, p.beta)}, True


def _cmd_critical(cfg: RunConfig):
    b = beta_critical()
    return {"beta_cr": b, "beta_cr_over_pi": b / math.pi}, True


def _cmd_profile(cfg: RunConfig):
    sol = build_profile(cfg.beta)
    theta = sol.beta * np.arange(1, cfg.samples + 1) / (cfg.samples + 1)
    cols = (theta, sol.psi(theta), sol.f(theta), sol.g(theta), potential_v(theta, sol.beta))
    rows = [dict(zip(("theta", "psi", "f", "g", "V"), map(float, r))) for r in zip(*cols)]
    return rows, True


def classify_quad(raw) -> dict:
    q = normalize(raw)
    if q.is_convex:
        kind, c, alpha = "Convex", 0.25, 0.5
    else:
        kind = build_gamma(q).quad_type
        p = solve_c(q.beta)
        c, alpha = p.c, p.alpha
    names = ("beta", "gamma", "delta", "zeta")
    return {
        "type": kind,
        "c": c,
        "alpha": alpha,
        "mirrored": q.mirrored,
        "vertices": [list(map(float, v)) for v in q.vertices],
        "labels": ["O", "A", "B", "C"],
        "angles": {"radians": dict(zip(names, q.angles)),
                   "degrees": {k: math.degrees(v) for k, v in zip(names, q.angles)}},
    }


def _cmd_classify(cfg: RunConfig):
    raw = load_quad(cfg.quad)
    out = classify_quad(raw)
    if cfg.svg:
        q = normalize(raw)
        curve = None if q.is_convex else build_gamma(q)
        frame = AuxFrame.from_quad(q) if (curve is not None and q.b_type) else None
        write_svg(cfg.svg, q, curve, frame)
    return out, True


def _cmd_verify(cfg: RunConfig):
    if cfg.beta is not None:
        reports = lemma_suite([cfg.beta])
    elif cfg.quad is not None:
        q = normalize(load_quad(cfg.quad))
        reports = [boundary_flux(q, seed=None), flux_gradient_check(q)]
    else:
        reports = lemma_suite(lemma_betas())
        for bucket in sample_quadrilaterals(cfg.seed, per_type=cfg.samples).values():
            reports.extend(boundary_flux(q, seed=cfg.seed) for q in bucket)
    return [r.to_dict() for r in reports], all(r.passed for r in reports)


def _cmd_estimate(cfg: RunConfig):
    q = normalize(load_quad(cfg.quad))
    reports = [quad_rayleigh(q, cfg.h / 2 ** k).to_dict() for k in range(cfg.refine + 1)]
    return reports, True


def _cmd_sector(cfg: RunConfig):
    return sector_oracle(cfg.beta, cfg.n, cfg.grid).to_dict(), True


_DISPATCH = {
    "constant": _cmd_constant,
    "critical-angle": _cmd_critical,
    "profile": _cmd_profile,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "estimate": _cmd_estimate,
    "sector": _cmd_sector,
}


def _render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    rows = payload if isinstance(payload, list) else [payload]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v
                         for k, v in row.items()})
    return buf.getvalue()


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit code, rendered output)."""
    payload, ok = _DISPATCH[cfg.command](cfg)
    return (EXIT_OK if ok else EXIT_VERIFY), _render(payload, cfg.fmt)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
        code, text = run(cfg)
    except UsageError as exc:
        print(f"hardyq: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HardyDomainError, NonConvergence) as exc:
        print(f"hardyq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
