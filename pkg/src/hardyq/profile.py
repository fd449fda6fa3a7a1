"""Principal profile of the sector problem -psi'' = c V(theta) psi on (0, beta).

The profile is symmetric about ``beta/2`` and is built from three pieces:

* ``0 < theta <= pi/2``: a hypergeometric branch in ``xi = sin^2(theta/2)``;
* ``pi/2 <= theta <= beta - pi/2``: ``cos(sqrt(c)(beta/2 - theta))``;
* ``beta - pi/2 <= theta < beta``: the mirror image of the first piece.

Above the critical angle the first piece is the single regular solution
``K sin^a(theta/2) cos^(1-a)(theta/2) F(1/2, 1/2, a+1/2; xi)``.  At or below
it (``c = 1/4``) the second, logarithmic solution enters with a non-negative
weight fixed by matching the derivative at ``pi/2``.

Everything is normalized so that ``psi(beta/2) = 1``; ``a0`` records the
leading power-series coefficient of ``psi(theta) ~ a0 theta^alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import Chebyshev

from .constant import HardyParams, beta_critical, solve_c
from .errors import HardyDomainError
from .specfun import hyp2f1, hyp2f1_with_derivative

__all__ = [
    "ProfileSolution",
    "build_profile",
    "potential_v",
    "psi",
    "f_log_deriv",
    "g_aux",
    "ode_residual",
    "log_integral",
]

HALF_PI = 0.5 * math.pi
_CHEB_DEGREE = 48


def _f_quarter(t):
    return hyp2f1(0.5, 0.5, 1.0, t)


def _log_integrand_regular(t):
    """1/(t(1-t)F^2) - 1/t, with F = F(1/2, 1/2, 1; t); smooth on [0, 1/2]."""
    t = np.asarray(t, dtype=float)
    f = _f_quarter(t)
    q = (1.0 - t) * f * f
    return (1.0 - q) / (t * q)


@lru_cache(maxsize=1)
def _regular_integral() -> Chebyshev:
    # interpolation nodes are interior, so the removable 0/0 at t = 0 is never hit
    interp = Chebyshev.interpolate(_log_integrand_regular, _CHEB_DEGREE, domain=[0.0, 0.5])
    return -interp.integ(lbnd=0.5)


def log_integral(xi):
    """Integral of dt / (t (1-t) F(1/2,1/2,1;t)^2) from ``xi`` to 1/2."""
    xi = np.asarray(xi, dtype=float)
    with np.errstate(divide="ignore"):
        return -math.log(2.0) - np.log(xi) + _regular_integral()(xi)


@dataclass(frozen=True)
class ProfileSolution:
    """Normalized principal profile for one sector angle.

    ``c1`` multiplies the regular hypergeometric solution on ``(0, pi/2]``;
    ``c2`` multiplies the logarithmic second solution and is zero above the
    critical angle.  ``f_half`` is ``F(1/2, 1/2, alpha+1/2; 1/2)``.
    """

    params: HardyParams
    c1: float
    c2: float
    f_half: float
    a0: float | None

    @property
    def beta(self) -> float:
        return self.params.beta

    @property
    def alpha(self) -> float:
        return self.params.alpha

    @property
    def c(self) -> float:
        return self.params.c

    @property
    def log_branch(self) -> bool:
        return self.c2 != 0.0

    def psi(self, theta):
        return psi(theta, self)

    def f(self, theta):
        return f_log_deriv(theta, self)

    def g(self, theta):
        return g_aux(theta, self)


def build_profile(beta: float) -> ProfileSolution:
    """Solve for the Hardy constant of the sector and assemble its profile."""
    params = solve_c(beta)
    alpha = params.alpha
    f_half, df_half = hyp2f1_with_derivative(0.5, 0.5, alpha + 0.5, 0.5)
    mid = math.cos(params.sqrt_c * (params.beta - math.pi) / 2.0)
    if params.beta > beta_critical():
        c1 = math.sqrt(2.0) * mid / f_half
        return ProfileSolution(params, c1, 0.0, f_half, c1 * 2.0 ** -alpha)
    # c = 1/4: value matching gives c1, derivative matching gives c2 >= 0
    c1 = math.sqrt(2.0) * mid / f_half
    f_regular = 0.5 * df_half / f_half  # log-derivative of sqrt(sin th / 2) F at pi/2
    target = 0.5 * math.tan((params.beta - math.pi) / 4.0)
    c2 = 0.5 * c1 * f_half * f_half * (f_regular - target)
    if c2 <= 1e-14 * c1:
        # at the critical angle the second solution drops out
        c2 = 0.0
    return ProfileSolution(params, c1, c2, f_half, c1 * 2.0 ** -alpha if c2 == 0.0 else None)


def _as_array(theta):
    arr = np.asarray(theta, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


def potential_v(theta, beta: float):
    """Weight V(theta) of the sector problem; equals 1 at both junctions."""
    th, scalar = _as_array(theta)
    if np.any(~((th > 0.0) & (th < beta))):
        raise HardyDomainError("potential_v requires 0 < theta < beta")
    dist = np.minimum(th, beta - th)
    out = np.ones_like(th)
    edge = dist < HALF_PI
    out[edge] = 1.0 / np.sin(dist[edge]) ** 2
    return _ret(out, scalar)


def _left_branch(th: np.ndarray, sol: ProfileSolution):
    """psi and g on 0 <= th <= pi/2 (g by a cancellation-free formula)."""
    alpha = sol.alpha
    s = np.sin(0.5 * th)
    co = np.cos(0.5 * th)
    xi = s * s
    fv, dfv = hyp2f1_with_derivative(0.5, 0.5, alpha + 0.5, xi)
    sin_th = np.sin(th)
    ratio = 0.5 * sin_th * sin_th * dfv / fv
    if not sol.log_branch:
        psi_v = sol.c1 * s ** alpha * co ** (1.0 - alpha) * fv
        g_v = alpha * co * co - (1.0 - alpha) * s * s + ratio
        return psi_v, g_v
    pos = th > 0.0
    weight = np.full_like(th, np.inf)
    weight[pos] = sol.c1 + sol.c2 * log_integral(xi[pos])
    psi_v = np.zeros_like(th)
    psi_v[pos] = np.sqrt(s[pos] * co[pos]) * fv[pos] * weight[pos]
    g_v = 0.5 * np.cos(th) + ratio - 2.0 * sol.c2 / (fv * fv * weight)
    return psi_v, g_v


def _evaluate(th: np.ndarray, sol: ProfileSolution):
    """psi, f and g at angles in [0, beta]; f is inf/-inf at the endpoints."""
    beta = sol.beta
    sc = sol.params.sqrt_c
    psi_v = np.empty_like(th)
    f_v = np.empty_like(th)
    g_v = np.empty_like(th)

    left = th <= HALF_PI
    right = th >= beta - HALF_PI
    mid = ~(left | right)

    if np.any(mid):
        arg = sc * (0.5 * beta - th[mid])
        psi_v[mid] = np.cos(arg)
        f_v[mid] = sc * np.tan(arg)
        g_v[mid] = f_v[mid] * np.sin(th[mid])
    for mask, sign in ((left, 1.0), (right, -1.0)):
        if not np.any(mask):
            continue
        t = th[mask] if sign > 0 else beta - th[mask]
        p, g = _left_branch(t, sol)
        with np.errstate(divide="ignore", invalid="ignore"):
            f = np.where(t > 0.0, g / np.sin(t), np.inf)
        psi_v[mask] = p
        f_v[mask] = sign * f
        # g(theta) = f(theta) sin(theta) with the mirrored f
        g_v[mask] = g if sign > 0 else -f * np.sin(th[mask])
    return psi_v, f_v, g_v


def psi(theta, sol: ProfileSolution):
    """Profile value; ``psi(beta/2) = 1`` and ``psi(0) = psi(beta) = 0``."""
    th, scalar = _as_array(theta)
    if np.any(~((th >= 0.0) & (th <= sol.beta))):
        raise HardyDomainError("psi requires 0 <= theta <= beta")
    return _ret(_evaluate(th, sol)[0], scalar)


def f_log_deriv(theta, sol: ProfileSolution):
    """Logarithmic derivative psi'/psi, analytic on every branch."""
    th, scalar = _as_array(theta)
    if np.any(~((th > 0.0) & (th < sol.beta))):
        raise HardyDomainError("f is defined only for 0 < theta < beta")
    return _ret(_evaluate(th, sol)[1], scalar)


def g_aux(theta, sol: ProfileSolution):
    """g = f sin(theta).

    Defined on all of (0, beta); the lemma-level statements concern
    (0, pi/2], where it is computed without forming f first.
    """
    th, scalar = _as_array(theta)
    if np.any(~((th > 0.0) & (th < sol.beta))):
        raise HardyDomainError("g is defined only for 0 < theta < beta")
    return _ret(_evaluate(th, sol)[2], scalar)


def ode_residual(theta: float, sol: ProfileSolution, h: float) -> float:
    """|psi_h'' + c V psi| / |psi| with a centered second difference."""
    if not h > 0.0:
        raise HardyDomainError("h must be positive")
    beta = sol.beta
    lo, hi = theta - h, theta + h
    if lo <= 0.0 or hi >= beta:
        raise HardyDomainError("stencil leaves (0, beta)")
    for junction in (HALF_PI, beta - HALF_PI):
        if lo < junction < hi:
            raise HardyDomainError(f"stencil straddles the junction at {junction:.6g}")
    vals = psi(np.array([lo, theta, hi]), sol)
    second = (vals[0] - 2.0 * vals[1] + vals[2]) / (h * h)
    return abs(second + sol.c * potential_v(theta, beta) * vals[1]) / abs(vals[1])
