"""Acceptance criteria, one test each.

Every criterion prints a single ``[PASS]``/``[FAIL]`` line with the measured
numbers; the lines are repeated in the pytest terminal summary.  Run
``python3 tests/test_acceptance.py`` to get only the report.
"""

import math
import sys
import time

import numpy as np
import pytest

from hardyq import constant
from hardyq.constant import beta_critical, solve_c, tan_residual
from hardyq.estimator import quad_rayleigh, sector_oracle
from hardyq.geometry import (
    build_gamma,
    classify,
    distance_minus,
    distance_plus,
    normalize,
    random_quadrilateral,
    sample_quadrilaterals,
    symmetric_dart,
)
from hardyq.profile import build_profile, ode_residual
from hardyq.verifier import boundary_flux, lemma_suite

PI = math.pi
HALF_PI = 0.5 * PI
EPS = np.finfo(float).eps

CRITERIA = {}
LINES = []


def criterion(number, title):
    def register(fn):
        CRITERIA[number] = (title, fn)
        return fn
    return register


def evaluate(number):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail}"
    print(line)
    LINES.append(line)
    return ok, line


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


@criterion(1, "critical angle")
def critical_angle():
    value, elapsed = _timed(constant._compute_beta_critical)
    ok = 1.5455 * PI <= value <= 1.5465 * PI and elapsed < 0.01 and beta_critical() == value
    return ok, f"beta_cr = {value:.12f} = {value / PI:.6f} pi, computed in {elapsed * 1e3:.3f} ms"


@criterion(2, "constant at 2pi")
def constant_full_turn():
    p = solve_c(2 * PI)
    res = abs(tan_residual(p.c, p.beta))
    ok = abs(p.c - 0.20536) <= 1e-4 and res < 1e-10
    return ok, f"c = {p.c:.12f}, tan residual {res:.2e}"


@criterion(3, "quarter below the critical angle")
def quarter_regime():
    betas = (1.1 * PI, 1.3 * PI, beta_critical())
    cs = [solve_c(b).c for b in betas]
    return all(c == 0.25 for c in cs), f"c = {cs} at beta/pi = {[round(b / PI, 5) for b in betas]}"


@criterion(4, "strict monotonicity of c")
def monotone():
    betas = np.linspace(beta_critical(), 2 * PI, 200)
    cs, elapsed = _timed(lambda: np.array([solve_c(b).c for b in betas]))
    steps = np.diff(cs)
    ok = bool(np.all(steps < 0)) and elapsed < 1.0
    return ok, f"max step {steps.max():.3e} (< 0 required), {elapsed * 1e3:.1f} ms for 200 solves"


@criterion(5, "profile matching at pi/2")
def matching():
    worst_v = worst_f = 0.0
    for beta in (beta_critical(), 1.6 * PI, 1.8 * PI, 2 * PI):
        sol = build_profile(beta)
        left, right = HALF_PI, np.nextafter(HALF_PI, 10.0)   # left branch ends at pi/2
        worst_v = max(worst_v, abs(sol.psi(left) - sol.psi(right)))
        worst_f = max(worst_f, abs(sol.f(left) - sol.f(right)))
    return worst_v < 1e-10 and worst_f < 1e-8, f"value gap {worst_v:.2e}, f gap {worst_f:.2e}"


def _branch_points(beta):
    out = {"left": np.linspace(0.1, HALF_PI - 0.01, 100),
           "right": np.linspace(beta - HALF_PI + 0.01, beta - 0.1, 100)}
    if beta - PI > 0.04:
        out["middle"] = np.linspace(HALF_PI + 0.01, beta - HALF_PI - 0.01, 100)
    return out


@criterion(6, "ODE residual and O(h^2) decay")
def ode():
    h1, h2 = 1e-4, 1e-5
    # a second difference of values carrying k ulps of error is off by up to 4 k eps / h^2
    floor = 4 * 8 * EPS / h2 ** 2
    worst1 = 0.0
    worst_excess = -math.inf
    orders = []
    for beta in (1.4 * PI, beta_critical(), 1.6 * PI, 1.8 * PI, 2 * PI):
        sol = build_profile(beta)
        for pts in _branch_points(beta).values():
            e1 = np.array([ode_residual(t, sol, h1) for t in pts])
            e2 = np.array([ode_residual(t, sol, h2) for t in pts])
            worst1 = max(worst1, e1.max())
            worst_excess = max(worst_excess, float(np.max(e2 - (4 * e1 * (h2 / h1) ** 2 + floor))))
        # truncation dominates roundoff only close to the endpoints
        near = np.linspace(0.002, 0.01, 20)
        orders.append(np.median([math.log10(ode_residual(t, sol, h1) / ode_residual(t, sol, h2))
                                 for t in near]))
    ok = worst1 < 1e-5 and worst_excess <= 0 and all(1.8 <= p <= 2.2 for p in orders)
    return ok, (f"max residual {worst1:.2e} at h=1e-4; h=1e-5 within roundoff-aware bound: "
                f"{worst_excess <= 0}; observed orders {[round(float(p), 3) for p in orders]}")


@criterion(7, "small-angle expansion of g")
def g_asymptotics():
    worst0 = worst2 = 0.0
    for beta in (1.6 * PI, 1.8 * PI, 2 * PI):
        sol = build_profile(beta)
        a = sol.alpha
        a2 = -a * (1 - a) / (6 * (1 + 2 * a))
        worst0 = max(worst0, abs(sol.g(1e-4) - a))
        coef = (sol.g(1e-2) - a) / 1e-4
        worst2 = max(worst2, abs(coef - (2 * a2 - a / 6)))
    return worst0 < 1e-6 and worst2 < 1e-3, f"|g(1e-4) - alpha| <= {worst0:.2e}, theta^2 coefficient error <= {worst2:.2e}"


@criterion(8, "profile inequalities")
def lemmas():
    reports, elapsed = _timed(lemma_suite)
    worst = min(reports, key=lambda r: r.min_margin)
    ok = all(r.passed for r in reports) and elapsed < 30
    return ok, (f"{sum(r.passed for r in reports)}/{len(reports)} pass, worst margin "
                f"{worst.min_margin:.2e} ({worst.name}), {elapsed:.2f} s")


@criterion(9, "boundary flux on 50 random quadrilaterals")
def flux():
    def work():
        quads = sample_quadrilaterals(seed=2024, per_type=10)
        margins, gaps = {}, []
        for kind, qs in quads.items():
            for q in qs:
                curve = build_gamma(q)
                _, pts = curve.sample(200)
                gaps.append(np.max(np.abs(distance_minus(pts, q) - distance_plus(pts, q))))
                rep = boundary_flux(q, 200, curve=curve)
                margins[kind] = min(margins.get(kind, math.inf), rep.min_margin)
        return margins, max(gaps), sum(len(v) for v in quads.values())

    (margins, gap, count), elapsed = _timed(work)
    ok = count == 50 and min(margins.values()) >= -1e-8 and gap < 1e-9 and elapsed < 60
    summary = ", ".join(f"{k} {v:+.3f}" for k, v in sorted(margins.items()))
    return ok, f"{count} quads, min margins {summary}; max Gamma gap {gap:.1e}; {elapsed:.1f} s"


@criterion(10, "sector oracle cross-check")
def sector():
    def work():
        return sector_oracle(2 * PI, 4000).lambda_min, sector_oracle(1.4 * PI, 4000).lambda_min

    (full, low), elapsed = _timed(work)
    c = solve_c(2 * PI).c
    ok = abs(full - c) <= 2e-3 and low >= 0.245 and elapsed < 10
    return ok, f"2pi: {full:.6f} vs {c:.6f} (diff {full - c:.1e}); 1.4pi: {low:.6f}; {elapsed:.2f} s"


@criterion(11, "grid estimate on the 1.9pi dart")
def dart_refinement():
    q = normalize(symmetric_dart(1.9 * PI, 0.045 * PI))
    c = solve_c(1.9 * PI).c
    est, elapsed = _timed(lambda: [quad_rayleigh(q, h).lambda_min for h in (1 / 64, 1 / 128, 1 / 256)])
    dist = [abs(e - c) for e in est]
    monotone = all(a > b for a, b in zip(dist, dist[1:]))
    in_band = c - 0.02 <= est[-1] <= c + 0.05
    ok = monotone and in_band and elapsed < 60
    return ok, (f"estimates {[round(e, 4) for e in est]} toward c = {c:.4f}: monotone {monotone}, "
                f"final in [{c - 0.02:.4f}, {c + 0.05:.4f}] {in_band}; {elapsed:.1f} s")


@criterion(12, "similarity invariance of classification and c")
def similarity():
    rng = np.random.default_rng(12)
    trials = worst = 0
    mismatches = 0
    while trials < 100:
        raw = random_quadrilateral(rng)
        try:
            q = normalize(raw)
            kind, c = classify(q), solve_c(q.beta).c
        except ValueError:
            continue
        ang = rng.uniform(0, 2 * PI)
        rot = np.array([[math.cos(ang), -math.sin(ang)], [math.sin(ang), math.cos(ang)]])
        if rng.random() < 0.5:
            rot = rot @ np.diag([1.0, -1.0])
        moved = math.exp(rng.uniform(-5, 5)) * raw @ rot.T + rng.uniform(-1e3, 1e3, 2)
        q2 = normalize(np.roll(moved, int(rng.integers(4)), axis=0))
        c2 = solve_c(q2.beta).c
        mismatches += classify(q2) != kind
        worst = max(worst, abs(c2 - c))
        trials += 1
    return mismatches == 0 and worst <= 1e-12, f"{trials} trials, {mismatches} type changes, max |dc| {worst:.1e}"


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"{n:02d}-{CRITERIA[n][0].replace(' ', '_')}")
def test_acceptance(number):
    ok, line = evaluate(number)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n)[0] for n in sorted(CRITERIA)]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
