"""Numerical evidence for the profile inequalities and the boundary flux sign.

Every check evaluates a quantity that should be non-negative on a
deterministic grid and reports its minimum (``min_margin``).  A check passes
when ``min_margin >= -tol``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .constant import beta_critical
from .errors import HardyDomainError
from .geometry import (
    AuxFrame,
    GammaCurve,
    GammaSegment,
    Quadrilateral,
    build_gamma,
    distance_minus,
    distance_plus,
)
from .profile import ProfileSolution, build_profile, f_log_deriv, g_aux, psi

__all__ = [
    "CheckReport",
    "lemma_betas",
    "check_lemma4",
    "check_lemma5",
    "check_lemma6",
    "check_lemma7",
    "boundary_flux",
    "flux_gradient_check",
    "lemma_suite",
]

HALF_PI = 0.5 * math.pi
LEMMA_TOL = 1e-10
MONOTONE_TOL = 1e-12
FLUX_TOL = 1e-8
FD_TOL = 1e-6
FD_STEP = 1e-6
FD_MIN_DISTANCE = 0.02
_TINY = 1e-15


def lemma_betas() -> tuple[float, ...]:
    """Sector angles used for the one-dimensional checks."""
    pi = math.pi
    return (pi + 0.02, 1.2 * pi, 1.4 * pi, beta_critical(), 1.6 * pi, 1.8 * pi, 2.0 * pi)


@dataclass
class CheckReport:
    name: str
    grid: dict
    min_margin: float
    worst_point: dict
    tol: float
    passed: bool = field(init=False)
    seed: int | None = None
    sub_checks: list = field(default_factory=list)

    def __post_init__(self):
        self.passed = bool(self.min_margin >= -self.tol)
        self.passed = self.passed and all(s.passed for s in self.sub_checks)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["sub_checks"] = [s.to_dict() for s in self.sub_checks]
        return out


def _check_beta(beta: float) -> None:
    if not (math.pi < beta <= 2.0 * math.pi):
        raise HardyDomainError(f"beta must lie in (pi, 2pi], got {beta!r}")


def _profile(beta_or_sol) -> ProfileSolution:
    if isinstance(beta_or_sol, ProfileSolution):
        return beta_or_sol
    _check_beta(beta_or_sol)
    return build_profile(beta_or_sol)


def _worst(margin: np.ndarray, **coords) -> tuple[float, dict]:
    idx = np.unravel_index(int(np.argmin(margin)), margin.shape)
    point = {k: float(np.broadcast_to(v, margin.shape)[idx]) for k, v in coords.items()}
    return float(margin[idx]), point


# --------------------------------------------------------------------------
# one-dimensional inequalities

def check_lemma4(beta, n: int = 10_000) -> CheckReport:
    """g is non-increasing on (0, pi/2]."""
    sol = _profile(beta)
    if n < 100:
        raise HardyDomainError("n must be at least 100")
    theta = HALF_PI * np.arange(1, n + 1) / n
    g = g_aux(theta, sol)
    margin = g[:-1] - g[1:]
    mm, wp = _worst(margin, theta=theta[:-1])
    return CheckReport("lemma4_g_monotone", {"beta": sol.beta, "n": n}, mm, wp, MONOTONE_TOL)


def _theta1_from_cot(cot):
    return np.arctan2(1.0, cot)


def check_lemma5(beta, n: int = 1000) -> CheckReport:
    """(2 + cos g) / (1 + sin^2 g) f(t1) >= f(pi/2) with cot t1 = sin g."""
    sol = _profile(beta)
    gam = np.linspace(HALF_PI, math.pi, n)
    t1 = _theta1_from_cot(np.sin(gam))
    lhs = (2.0 + np.cos(gam)) / (1.0 + np.sin(gam) ** 2) * f_log_deriv(t1, sol)
    margin = lhs - f_log_deriv(HALF_PI, sol)
    mm, wp = _worst(margin, gamma=gam, theta1=t1)
    return CheckReport("lemma5", {"beta": sol.beta, "n": n}, mm, wp, LEMMA_TOL)


def check_lemma6(beta, m: int = 50, n: int = 200) -> CheckReport:
    """f(t1) >= f(t) (1 + cos^2(t+g)) / (2 + sin(t+g)) with cot t1 = -cos(t+g)."""
    sol = _profile(beta)
    gam = np.linspace(HALF_PI, math.pi, m)[:, None]
    s = np.linspace(0.0, 1.0, n)[None, :]
    theta = HALF_PI + s * (math.pi - gam)      # [pi/2, 3pi/2 - gamma]
    w = theta + gam
    t1 = _theta1_from_cot(-np.cos(w))
    rhs = f_log_deriv(theta, sol) * (1.0 + np.cos(w) ** 2) / (2.0 + np.sin(w))
    margin = f_log_deriv(t1, sol) - rhs
    mm, wp = _worst(margin, gamma=gam, theta=theta, theta1=t1)
    return CheckReport("lemma6", {"beta": sol.beta, "m": m, "n": n}, mm, wp, LEMMA_TOL)


def check_lemma7(beta, m: int = 20, n: int = 200) -> CheckReport:
    """The three mixed inequalities between f, alpha and a tilt angle omega."""
    sol = _profile(beta)
    b, alpha = sol.beta, sol.alpha
    subs = []

    om = np.linspace(0.0, 0.25 * math.pi, m)[:, None]
    th = np.maximum(np.linspace(0.0, HALF_PI, n), _TINY)[None, :]
    margin = g_aux(th, sol) * np.cos(th + om) + alpha * np.cos(om)
    mm, wp = _worst(margin, omega=om, theta=th)
    subs.append(CheckReport("lemma7_i", {"m": m, "n": n}, mm, wp, LEMMA_TOL))

    th = np.linspace(HALF_PI, b - HALF_PI, n)[None, :]
    f = f_log_deriv(th, sol)
    om = np.linspace(1.5 * math.pi - b, 2.0 * math.pi - b, m)[:, None]
    margin = f * np.cos(th + om) + alpha * (1.0 + np.sin(th + om))
    mm, wp = _worst(margin, omega=om, theta=th)
    subs.append(CheckReport("lemma7_ii", {"m": m, "n": n}, mm, wp, LEMMA_TOL))

    om = np.linspace(0.0, 2.0 * math.pi - b, m)[:, None]
    margin = -f * np.cos(th + om) + alpha * (1.0 - np.sin(th + om))
    mm, wp = _worst(margin, omega=om, theta=th)
    subs.append(CheckReport("lemma7_iii", {"m": m, "n": n}, mm, wp, LEMMA_TOL))

    worst = min(subs, key=lambda r: r.min_margin)
    return CheckReport("lemma7", {"beta": b, "m": m, "n": n}, worst.min_margin,
                       dict(worst.worst_point, sub_check=worst.name), LEMMA_TOL,
                       sub_checks=subs)


def lemma_suite(betas=None) -> list[CheckReport]:
    """All one-dimensional checks on the standard angle grid."""
    out = []
    for beta in betas or lemma_betas():
        sol = build_profile(beta)
        out += [check_lemma4(sol), check_lemma5(sol), check_lemma6(sol), check_lemma7(sol)]
    return out


# --------------------------------------------------------------------------
# boundary flux along Gamma

def _near_gradient(feature: str, theta: np.ndarray, beta: float) -> np.ndarray:
    if feature == "OA":
        return np.broadcast_to(np.array([0.0, 1.0]), theta.shape + (2,))
    if feature == "OC":
        return np.broadcast_to(np.array([math.sin(beta), -math.cos(beta)]), theta.shape + (2,))
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def _near_weighted_f(feature: str, theta: np.ndarray, sol: ProfileSolution) -> np.ndarray:
    """f(theta) times distance/r, i.e. d * |grad log psi(theta)|."""
    b = sol.beta
    if feature == "OA":
        return g_aux(np.maximum(theta, _TINY), sol)
    if feature == "OC":
        return -g_aux(np.maximum(b - theta, _TINY), sol)
    return f_log_deriv(theta, sol)


def _rowdot(a, b):
    return np.einsum("...i,...i->...", a, b)


class _FluxModel:
    """Analytic log-gradients of the test functions on both sides of Gamma."""

    def __init__(self, q: Quadrilateral, curve: GammaCurve, sol: ProfileSolution):
        self.q, self.curve, self.sol = q, curve, sol
        self.b_type = q.b_type
        self.frame = AuxFrame.from_quad(q) if self.b_type else None
        self.normals = {}
        self.offsets = {}
        for seg in curve.segments:
            self.normals[seg.near_plus] = np.asarray(seg.plus_normal)
            self.offsets[seg.near_plus] = seg.plus_offset

    # analytic pieces, all multiplied by the local distance d > 0
    def minus_term(self, seg: GammaSegment, theta, nu):
        tangent = np.stack([-np.sin(theta), np.cos(theta)], axis=-1)
        return _near_weighted_f(seg.near_minus, theta, self.sol) * _rowdot(tangent, nu)

    def aux_term(self, pts, nu):
        _, t1 = self.frame.polar(pts)
        t1 = np.maximum(t1, _TINY)
        e1, e2 = self.frame.e1, self.frame.e2
        direction = -np.sin(t1)[..., None] * e1 + np.cos(t1)[..., None] * e2
        return g_aux(t1, self.sol) * _rowdot(direction, nu)

    def plus_term(self, seg: GammaSegment, pts, nu):
        n = self.normals[seg.near_plus]
        if not self.b_type:
            return self.sol.alpha * _rowdot(nu, n)
        if seg.near_plus == "AB":
            return self.aux_term(pts, nu)
        return 0.5 * _rowdot(nu, n)

    def segment_normal(self, seg: GammaSegment, theta):
        grad = _near_gradient(seg.near_minus, theta, self.sol.beta) - np.asarray(seg.plus_normal)
        return grad / np.linalg.norm(grad, axis=-1, keepdims=True)

    # log-gradients without the distance factor, for the finite-difference check
    def log_grad_minus(self, pts):
        theta = np.mod(np.arctan2(pts[..., 1], pts[..., 0]), 2.0 * math.pi)
        r = np.hypot(pts[..., 0], pts[..., 1])
        tangent = np.stack([-np.sin(theta), np.cos(theta)], axis=-1)
        return (f_log_deriv(theta, self.sol) / r)[..., None] * tangent

    def log_minus(self, pts):
        theta = np.mod(np.arctan2(pts[..., 1], pts[..., 0]), 2.0 * math.pi)
        return np.log(psi(theta, self.sol))

    def log_grad_plus(self, feature, pts):
        n = self.normals[feature]
        d = pts @ n + self.offsets[feature]
        if not self.b_type:
            return self.sol.alpha * n / d[..., None]
        if feature == "BC":
            return 0.5 * n / d[..., None]
        r1, t1 = self.frame.polar(pts)
        e1, e2 = self.frame.e1, self.frame.e2
        direction = -np.sin(t1)[..., None] * e1 + np.cos(t1)[..., None] * e2
        return (f_log_deriv(t1, self.sol) / r1)[..., None] * direction

    def log_plus(self, feature, pts):
        n = self.normals[feature]
        d = pts @ n + self.offsets[feature]
        if not self.b_type:
            return self.sol.alpha * np.log(d)
        if feature == "BC":
            return 0.5 * np.log(d)
        _, t1 = self.frame.polar(pts)
        return np.log(psi(t1, self.sol))


def _flux_samples(q: Quadrilateral, curve: GammaCurve, n: int):
    """(label, segment, theta, points) for every non-empty segment."""
    out = []
    for i, seg in enumerate(curve.segments, start=1):
        if seg.empty:
            continue
        theta = seg.sample(n)
        out.append((f"Gamma{i}", seg, theta, seg.points(theta)))
    return out


def boundary_flux(q: Quadrilateral, n_per_segment: int = 200,
                  curve: GammaCurve | None = None,
                  sol: ProfileSolution | None = None,
                  seed: int | None = None) -> CheckReport:
    """Minimum of d * (flux integrand) over Gamma and, for B-types, over SB.

    The factor d > 0 is the common distance of the sample point to both
    boundary pairs; it removes the singular prefactor without changing signs.
    """
    if q.is_convex:
        raise HardyDomainError("boundary flux is defined for non-convex quadrilaterals")
    curve = curve or build_gamma(q)
    sol = sol or build_profile(q.beta)
    model = _FluxModel(q, curve, sol)
    worst_val, worst_pt = math.inf, {}
    per_segment = {}
    for label, seg, theta, pts in _flux_samples(q, curve, n_per_segment):
        nu = model.segment_normal(seg, theta)
        margin = model.minus_term(seg, theta, nu) - model.plus_term(seg, pts, nu)
        k = int(np.argmin(margin))
        per_segment[label] = float(margin[k])
        if margin[k] < worst_val:
            worst_val = float(margin[k])
            worst_pt = {"segment": label, "kind": seg.kind, "theta": float(theta[k]),
                        "x": float(pts[k, 0]), "y": float(pts[k, 1])}
    if q.b_type:
        s, b = np.asarray(curve.gamma_star[0]), np.asarray(curve.gamma_star[1])
        t = np.linspace(0.0, 1.0, n_per_segment)
        pts = s + t[:, None] * (b - s)
        n_ab, n_bc = model.normals["AB"], model.normals["BC"]
        nu = (n_ab - n_bc) / np.linalg.norm(n_ab - n_bc)
        nu = np.broadcast_to(nu, pts.shape)
        margin = model.aux_term(pts, nu) - 0.5 * _rowdot(nu, n_bc)
        k = int(np.argmin(margin))
        per_segment["Gamma_star"] = float(margin[k])
        if margin[k] < worst_val:
            worst_val = float(margin[k])
            worst_pt = {"segment": "Gamma_star", "kind": "line", "t": float(t[k]),
                        "x": float(pts[k, 0]), "y": float(pts[k, 1])}
    grid = {"n_per_segment": n_per_segment, "type": curve.quad_type,
            "beta": q.beta, "segment_margins": per_segment}
    return CheckReport("boundary_flux", grid, worst_val, worst_pt, FLUX_TOL, seed=seed)


def flux_gradient_check(q: Quadrilateral, n_per_segment: int = 200,
                        curve: GammaCurve | None = None,
                        sol: ProfileSolution | None = None,
                        h: float = FD_STEP) -> CheckReport:
    """Analytic log-gradients against centered differences of log phi.

    Points closer than ``FD_MIN_DISTANCE`` to the boundary are skipped: the
    difference quotient's truncation error grows like h^2 / d^3 there.
    """
    curve = curve or build_gamma(q)
    sol = sol or build_profile(q.beta)
    model = _FluxModel(q, curve, sol)
    ex, ey = np.array([h, 0.0]), np.array([0.0, h])

    def fd(fun, pts):
        gx = (fun(pts + ex) - fun(pts - ex)) / (2.0 * h)
        gy = (fun(pts + ey) - fun(pts - ey)) / (2.0 * h)
        return np.stack([gx, gy], axis=-1)

    worst_err, worst_pt, checked = 0.0, {}, 0
    for label, seg, theta, pts in _flux_samples(q, curve, n_per_segment):
        d = np.minimum(distance_minus(pts, q), distance_plus(pts, q))
        keep = d > FD_MIN_DISTANCE
        if not np.any(keep):
            continue
        p = pts[keep]
        checked += len(p)
        pairs = [(model.log_grad_minus(p), fd(model.log_minus, p))]
        feat = seg.near_plus
        pairs.append((model.log_grad_plus(feat, p), fd(lambda z: model.log_plus(feat, z), p)))
        for analytic, numeric in pairs:
            err = np.linalg.norm(analytic - numeric, axis=-1)
            k = int(np.argmax(err))
            if err[k] > worst_err:
                worst_err = float(err[k])
                worst_pt = {"segment": label, "theta": float(theta[keep][k])}
    grid = {"n_per_segment": n_per_segment, "h": h, "points_checked": checked,
            "type": curve.quad_type}
    return CheckReport("flux_fd_gradient", grid, -worst_err, worst_pt, FD_TOL)
