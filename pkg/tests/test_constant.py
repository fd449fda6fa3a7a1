import math
import threading
import time

import numpy as np
import pytest

import oracle_values as ov
from hardyq import constant
from hardyq.constant import (
    alpha_from_c,
    beta_critical,
    g_implicit,
    g_implicit_dx,
    solve_c,
    tan_residual,
)
from hardyq.errors import HardyDomainError


def test_critical_angle_value():
    assert beta_critical() == pytest.approx(ov.BETA_CR, abs=1e-13)
    assert 1.5455 * math.pi <= beta_critical() <= 1.5465 * math.pi


def test_critical_angle_is_fast_and_cached():
    start = time.perf_counter()
    constant._compute_beta_critical()
    assert time.perf_counter() - start < 0.01
    assert beta_critical() is beta_critical()


def test_critical_angle_thread_safe():
    results = []
    threads = [threading.Thread(target=lambda: results.append(beta_critical())) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1


@pytest.mark.parametrize("k", sorted(ov.SECTOR_C))
def test_solve_c_against_oracle(k):
    p = solve_c(k * math.pi)
    c_ref, a_ref = ov.SECTOR_C[k]
    assert p.c == pytest.approx(c_ref, abs=1e-13)
    assert p.alpha == pytest.approx(a_ref, abs=1e-12)
    assert p.alpha * (1 - p.alpha) == pytest.approx(p.c, abs=1e-15)
    assert abs(tan_residual(p.c, p.beta)) < 1e-12


@pytest.mark.parametrize("beta", [math.pi + 1e-9, 1.1 * math.pi, 1.3 * math.pi, 1.5 * math.pi])
def test_quarter_below_critical(beta):
    p = solve_c(beta)
    assert p.c == 0.25 and p.alpha == 0.5 and p.x == 0.0


def test_critical_angle_itself_gives_quarter_and_zero_residual():
    assert solve_c(beta_critical()).c == 0.25
    assert abs(tan_residual(0.25, beta_critical())) < 1e-13


def test_c_continuous_at_critical_angle():
    # x ~ 4e-10 here, so c rounds to exactly 1/4
    assert solve_c(beta_critical() + 1e-9).c == pytest.approx(0.25, abs=1e-15)
    p = solve_c(beta_critical() + 1e-4)
    assert 0.25 - 1e-4 < p.c < 0.25


@pytest.mark.parametrize("beta", [1.6 * math.pi, 1.9 * math.pi, 2 * math.pi])
def test_implicit_function_decreasing_in_x(beta):
    xs = np.linspace(0.0, 0.95, 200)
    vals = [g_implicit(x, beta) for x in xs]
    assert np.all(np.diff(vals) < 0)


@pytest.mark.parametrize("x", [0.0, 0.1, 0.42, 0.8])
def test_implicit_derivative_matches_difference(x):
    beta, h = 1.85 * math.pi, 1e-6
    lo = max(x - h, 0.0)
    fd = (g_implicit(x + h, beta) - g_implicit(lo, beta)) / (x + h - lo)
    assert g_implicit_dx(x, beta) == pytest.approx(fd, rel=1e-5, abs=1e-8)


def test_domain_errors():
    for beta in (math.pi, 3.0, 2 * math.pi + 1e-6, math.nan):
        with pytest.raises(HardyDomainError):
            solve_c(beta)
    with pytest.raises(HardyDomainError):
        g_implicit(1.0, 5.0)
    with pytest.raises(HardyDomainError):
        alpha_from_c(0.3)


def test_alpha_from_c():
    assert alpha_from_c(0.25) == 0.5
    a = alpha_from_c(0.21)
    assert a > 0.5 and a * (1 - a) == pytest.approx(0.21, abs=1e-15)
