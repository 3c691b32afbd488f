"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Tolerances and sweep bounds are pinned here, not configurable.
"""

import math
import time

import numpy as np
import pytest
from scipy import integrate

import hypoexp as hx
from oracles import eme_density_richardson

SLOW = pytest.mark.slow


def _report(num, passed, detail):
    status = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {num:>2} {status}: {detail}")
    assert passed, f"criterion {num}: {detail}"


# --------------------------------------------------------------------------
# 1 + 2: identity sweeps (exact, then floating)
# --------------------------------------------------------------------------

@pytest.fixture(scope="module")
def identity_report():
    return hx.run_identity_checks(
        exact_max_n=30,
        shift_max_m=10,
        n_rationals=40,
        bracket_max_n=20,
        float_max_n=10,
        float_ws=(0.1, 0.5, 1.5, 2.0, 5.0, 10.0),
        grid_points=100,
        seed=20260101,
    )


def test_criterion_1_exact_identities(identity_report):
    exact = [f for f in identity_report.families if f.exact]
    failures = sum(f.failures for f in exact)
    checks = sum(f.checks for f in exact)
    elapsed = sum(f.elapsed for f in exact)
    _report(
        1,
        failures == 0 and elapsed < 60.0,
        f"exact identities: {checks} checks, {failures} failures, {elapsed:.1f}s (< 60s)",
    )


def test_criterion_2_floating_identities(identity_report):
    floats = [f for f in identity_report.families if not f.exact]
    failures = sum(f.failures for f in floats)
    checks = sum(f.checks for f in floats)
    worst = max(f.worst_residual for f in floats)
    elapsed = sum(f.elapsed for f in floats)
    _report(
        2,
        failures == 0 and worst <= 1e-10 and elapsed < 10.0,
        f"transform identities: {checks} checks, worst residual {worst:.2e} "
        f"(<= 1e-10), {elapsed:.1f}s (< 10s)",
    )


# --------------------------------------------------------------------------
# 3: EME density vs n-fold trapezoidal convolution + normalization
# --------------------------------------------------------------------------

@SLOW
def test_criterion_3_density_against_convolution_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(33)
    worst_pdf = 0.0
    worst_norm = 0.0
    for trial in range(20):
        n = int(rng.integers(1, 5))
        rate = float(rng.uniform(0.4, 3.0))
        w = float(rng.uniform(0.15, 0.9)) if trial % 2 else float(rng.uniform(1.1, 5.0))
        dist = hx.EME(n, rate, w)
        sd = math.sqrt(dist.var)
        x_max = dist.mean + 10.0 * sd
        grid, oracle, gap = eme_density_richardson(n, rate, w, x_max, 16384)
        assert gap < 5e-7, f"convolution oracle not converged (gap {gap:.1e})"
        worst_pdf = max(worst_pdf, float(np.abs(dist.pdf(grid) - oracle).max()))
        total, _ = integrate.quad(dist.pdf, 0.0, dist.mean + 40.0 * sd,
                                  limit=400, epsabs=1e-11)
        worst_norm = max(worst_norm, abs(total - 1.0))
    elapsed = time.perf_counter() - start
    _report(
        3,
        worst_pdf <= 1e-6 and worst_norm <= 1e-8 and elapsed < 120.0,
        f"20 random EME vs convolution oracle: max pdf error {worst_pdf:.2e} "
        f"(<= 1e-6), max normalization error {worst_norm:.2e} (<= 1e-8), "
        f"{elapsed:.0f}s (< 120s)",
    )


# --------------------------------------------------------------------------
# 4: n = 1 halved-second-stage law equals the two-rate hypoexponential
# --------------------------------------------------------------------------

def test_criterion_4_n1_consistency():
    worst = 0.0
    for rate in (0.7, 1.0, 2.3):
        eme = hx.EME(1, rate, 0.5)  # X1 + X2/2
        hypo = hx.Hypoexponential((rate, 2.0 * rate))
        x = np.linspace(0.0, eme.mean + 8.0 * math.sqrt(eme.var), 200)
        worst = max(worst, float(np.abs(eme.pdf(x) - hypo.pdf(x)).max()))
    _report(4, worst <= 1e-12,
            f"EME(1, rate, 1/2) vs Hypoexponential(rate, 2 rate): max gap {worst:.2e} (<= 1e-12)")


# --------------------------------------------------------------------------
# 5: forward direction by Monte Carlo (KS against the EME law)
# --------------------------------------------------------------------------

@SLOW
def test_criterion_5_forward_direction_monte_carlo():
    results = []
    for (n, w) in [(1, 2.0), (2, 2.0), (3, 0.5)]:
        rate = 1.0
        ref = hx.EME(n, rate, w)
        chain = hx.eme_chain(n, rate, rate / w)
        passed = 0
        for seed in range(100):
            times = hx.simulate_absorption(
                chain, 100_000, hx.derive_rng(20260105, "forward", n, int(10 * w), seed)
            )
            passed += hx.validate_against(times, ref).passed
        results.append(((n, w), passed))
    ok = all(p >= 95 for _, p in results)
    detail = ", ".join(f"(n={n},w={w}): {p}/100" for (n, w), p in results)
    _report(5, ok, f"component sums pass KS vs EME law in >= 95/100 seeds: {detail}")


# --------------------------------------------------------------------------
# 6: converse direction as rejection power of the functional equation
# --------------------------------------------------------------------------

def test_criterion_6_functional_equation_discriminates():
    def psi_erlang2(t):
        return (1.0 + t) ** 2

    coeffs = hx.reciprocal_series_from_moments([1.0 / (k + 1) for k in range(1, 31)], 30)

    def psi_uniform(t):
        acc = 0.0
        for c in coeffs[::-1]:
            acc = acc * t + c
        return acc

    worst_min = math.inf
    for name, psi, t_cap in (("erlang2", psi_erlang2, None), ("uniform", psi_uniform, 5.5)):
        for n in (1, 2, 3):
            for w in (0.5, 2.0, 5.0):
                # for the moment-built evaluator, keep w*t inside the series'
                # convergence disc (radius 2*pi for the uniform transform)
                t_max = 3.0 if t_cap is None else min(4.0, t_cap / max(w, 1.0))
                grid = np.linspace(0.0, t_max, 61)
                peak = max(
                    hx.functional_equation_residual(n, w, psi, float(t)) for t in grid
                )
                worst_min = min(worst_min, peak)
                if peak <= 0.05:
                    _report(6, False,
                            f"{name} Psi undetected at n={n}, w={w} (peak {peak:.3f})")
    _report(6, worst_min > 0.05,
            f"non-exponential reciprocal transforms violate the equation at every "
            f"tested (n, w); smallest peak residual {worst_min:.3f} (> 0.05)")


# --------------------------------------------------------------------------
# 7: series coefficients of the exponential signature
# --------------------------------------------------------------------------

def test_criterion_7_series_coefficients():
    worst_a1 = 0.0
    worst_tail = 0.0
    for rate in (0.5, 1.0, 3.0):
        m = [math.factorial(k) / rate**k for k in range(1, 9)]
        a = hx.reciprocal_series_from_moments(m, 8)
        worst_a1 = max(worst_a1, abs(a[0] - 1.0), abs(a[1] - 1.0 / rate))
        worst_tail = max(worst_tail, float(np.abs(a[2:9]).max()))
    _report(
        7,
        worst_a1 <= 1e-12 and worst_tail < 1e-10,
        f"exponential moments give a0=1, a1=1/rate to {worst_a1:.1e} (<= 1e-12) "
        f"and |a_j| <= {worst_tail:.1e} (< 1e-10) for 2 <= j <= 8",
    )


# --------------------------------------------------------------------------
# 8 + 9: bootstrap test size and power (N=200, B=999, alpha=0.05, 500 reps)
# --------------------------------------------------------------------------

def _rejection_rate(draw, reps=500, n_obs=200, label="x"):
    rejects = 0
    for r in range(reps):
        data_rng = hx.derive_rng(20260108, label, r)
        x = draw(data_rng, n_obs)
        res = hx.gof_test(x, hx.GofConfig(bootstrap_reps=999, level=0.05, seed=r))
        rejects += res.reject
    return rejects / reps


@SLOW
def test_criterion_8_size_calibration():
    start = time.perf_counter()
    rate = _rejection_rate(lambda rng, n: rng.exponential(1.0 / 3.0, n), label="size")
    elapsed = time.perf_counter() - start
    _report(
        8,
        0.03 <= rate <= 0.07 and elapsed < 600.0,
        f"size under Exp(3) data: rejection rate {rate:.4f} in [0.03, 0.07], "
        f"{elapsed:.0f}s (< 10min)",
    )


@SLOW
def test_criterion_9_power():
    power_ln = _rejection_rate(lambda rng, n: rng.lognormal(0.0, 1.0, n), label="lognormal")
    power_wb = _rejection_rate(lambda rng, n: rng.weibull(0.5, n), label="weibull")
    _report(
        9,
        power_ln >= 0.5 and power_wb >= 0.5,
        f"power: lognormal(0,1) {power_ln:.3f}, Weibull(0.5) {power_wb:.3f} (both >= 0.5)",
    )


# --------------------------------------------------------------------------
# 10: fit recovery at N = 1e5
# --------------------------------------------------------------------------

@SLOW
def test_criterion_10_fit_recovery():
    outcomes = []
    for (n, rate, w) in [(2, 1.0, 4.0), (3, 2.0, 0.25)]:
        data = hx.EME(n, rate, w).sample(100_000, hx.derive_rng(20260110, "fit", n))
        fit, _ = hx.fit_eme(data, n=n)
        rate_err = abs(fit.rate - rate) / rate
        w_err = abs(fit.w - w) / w
        outcomes.append(((n, rate, w), rate_err, w_err))
    ok = all(re <= 0.05 and we <= 0.10 for _, re, we in outcomes)
    detail = "; ".join(
        f"(n={n},rate={r},w={w}): rate err {re:.1%} (<=5%), w err {we:.1%} (<=10%)"
        for (n, r, w), re, we in outcomes
    )
    _report(10, ok, detail)
