"""Hardy constant of a reflex sector from its transcendental characterization.

With ``x = sqrt(1 - 4c)`` the constant for ``beta >= beta_cr`` is the unique
zero in ``[0, 1)`` of

    G(x, beta) = 1/2 (1-x^2)^(1/4) tan^(1/2)((1-x^2)^(1/2) (beta-pi)/4)
                 - Gamma((3+x)/4) / Gamma((1+x)/4),

which is strictly decreasing in ``x``.  Below the critical angle the
constant is exactly 1/4.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable

from .errors import HardyDomainError, NonConvergence
from .specfun import digamma, gamma_ratio

__all__ = [
    "HardyParams",
    "g_implicit",
    "g_implicit_dx",
    "tan_residual",
    "beta_critical",
    "solve_c",
    "alpha_from_c",
]

ROOT_TOL = 1e-13
_X_UPPER = 1.0 - 1e-9


@dataclass(frozen=True)
class HardyParams:
    """The sector angle with its Hardy constant and profile exponent."""

    beta: float
    c: float
    x: float
    alpha: float

    @property
    def sqrt_c(self) -> float:
        return math.sqrt(self.c)


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (math.pi < beta <= 2.0 * math.pi):
        raise HardyDomainError(f"beta must lie in (pi, 2pi], got {beta!r}")
    return beta


def _tan_arg(x: float, beta: float) -> float:
    if not 0.0 <= x < 1.0:
        raise HardyDomainError(f"x must lie in [0, 1), got {x!r}")
    arg = math.sqrt(1.0 - x * x) * (beta - math.pi) / 4.0
    if arg >= math.pi / 2.0:
        raise HardyDomainError("tangent argument reaches pi/2")
    if arg < 0.0:
        raise HardyDomainError(f"beta must exceed pi, got {beta!r}")
    return arg


def g_implicit(x: float, beta: float) -> float:
    """G(x, beta); its zero in x encodes the Hardy constant."""
    arg = _tan_arg(x, beta)
    s = 1.0 - x * x
    lhs = 0.5 * s ** 0.25 * math.sqrt(math.tan(arg))
    return lhs - gamma_ratio((3.0 + x) / 4.0, (1.0 + x) / 4.0)


def g_implicit_dx(x: float, beta: float) -> float:
    """Partial derivative of G in x (closed form, digamma based)."""
    arg = _tan_arg(x, beta)
    s = 1.0 - x * x
    t = math.tan(arg)
    if x == 0.0:
        trig = 0.0
    else:
        trig = (-x * (beta - math.pi) / (16.0 * s ** 0.25) * (1.0 + t * t) / math.sqrt(t)
                - x / (4.0 * s ** 0.75) * math.sqrt(t))
    ratio = gamma_ratio((3.0 + x) / 4.0, (1.0 + x) / 4.0)
    return trig - ratio / 4.0 * (digamma((3.0 + x) / 4.0) - digamma((1.0 + x) / 4.0))


def tan_residual(c: float, beta: float) -> float:
    """sqrt(c) tan(sqrt(c)(beta-pi)/2) - 2 (Gamma ratio)^2 at the given c."""
    sc = math.sqrt(c)
    x = math.sqrt(max(1.0 - 4.0 * c, 0.0))
    ratio = gamma_ratio((3.0 + x) / 4.0, (1.0 + x) / 4.0)
    return sc * math.tan(sc * (beta - math.pi) / 2.0) - 2.0 * ratio * ratio


def _bracketed_newton(fun: Callable[[float], float], dfun: Callable[[float], float],
                      lo: float, hi: float, tol: float, max_iter: int = 200) -> float:
    """Root of a monotone function on [lo, hi] by safeguarded Newton."""
    flo, fhi = fun(lo), fun(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise HardyDomainError("root is not bracketed")
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = fun(x)
        if abs(fx) < tol:
            return x
        if (fx < 0.0) == (flo < 0.0):
            lo, flo = x, fx
        else:
            hi = x
        d = dfun(x)
        step = x - fx / d if d != 0.0 else math.nan
        # fall back to bisection whenever Newton leaves the bracket
        x = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo < 4.0 * math.ulp(max(abs(lo), abs(hi))) and abs(fun(x)) < 1e3 * tol:
            return x
    raise NonConvergence(f"bracketed Newton did not reach |f| < {tol}")


_beta_cr_lock = threading.Lock()
_beta_cr_cache: list[float] = []


def _compute_beta_critical() -> float:
    r = gamma_ratio(0.75, 0.25)
    target = 4.0 * r * r

    def fun(b):
        return math.tan((b - math.pi) / 4.0) - target

    def dfun(b):
        t = math.tan((b - math.pi) / 4.0)
        return 0.25 * (1.0 + t * t)

    return _bracketed_newton(fun, dfun, math.pi, 2.0 * math.pi, ROOT_TOL)


def beta_critical() -> float:
    """Largest reflex angle whose sector still has Hardy constant 1/4."""
    if not _beta_cr_cache:
        with _beta_cr_lock:
            if not _beta_cr_cache:
                _beta_cr_cache.append(_compute_beta_critical())
    return _beta_cr_cache[0]


def alpha_from_c(c: float) -> float:
    """Larger root of a(1 - a) = c."""
    c = float(c)
    if not 0.0 < c <= 0.25:
        raise HardyDomainError(f"c must lie in (0, 1/4], got {c!r}")
    return 0.5 * (1.0 + math.sqrt(1.0 - 4.0 * c))


def solve_c(beta: float) -> HardyParams:
    """Hardy constant of the sector with opening angle ``beta``."""
    beta = _check_beta(beta)
    if beta <= beta_critical():
        return HardyParams(beta=beta, c=0.25, x=0.0, alpha=0.5)
    x = _bracketed_newton(lambda t: g_implicit(t, beta),
                          lambda t: g_implicit_dx(t, beta),
                          0.0, _X_UPPER, ROOT_TOL)
    c = (1.0 - x * x) / 4.0
    return HardyParams(beta=beta, c=c, x=x, alpha=(1.0 + x) / 2.0)
