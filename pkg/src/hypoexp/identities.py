"""Verification of the transform and summation identities behind the
exponential characterization.

Combinatorial identities are certified in exact rational arithmetic
(``fractions.Fraction``): a "zero" here is the integer zero and a "nonzero"
claim is certified, not approximated.  Transform-level identities are checked
in compensated double-double floating point (:class:`DD`), whose ~32 digits
keep the residuals meaningful even where the geometric terms reach 1e10.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._ddouble import DD
from .errors import ParameterError

__all__ = [
    "DD",
    "binomial_sum_residual",
    "shifted_binomial_sum_residual",
    "geometric_weight_gap",
    "geometric_weight_gap_closed_form",
    "gap_vanishes",
    "CoefficientBrackets",
    "series_coefficient_brackets",
    "exp_lt_identity_residual",
    "partial_fraction_residual",
    "functional_equation_residual",
    "characterization_residual",
    "reciprocal_series_from_moments",
    "FamilyReport",
    "IdentityReport",
    "run_identity_checks",
]


def _as_fraction(v, name="v"):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, float, str)):
        return Fraction(v)
    raise ParameterError(f"{name} must be rational (Fraction, int, str), got {type(v)}")


def _check_positive_int(value, name):
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < 1:
        raise ParameterError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


# ---------------------------------------------------------------------------
# exact combinatorial identities
# ---------------------------------------------------------------------------

def binomial_sum_residual(n, j, v):
    """Exact residual of the binomial-geometric summation identity

        v sum_{k<n} C(k, j-1) v^k + (v-1) sum_{k<n} C(k, j) v^k = C(n, j) v^n

    for integers n >= 1, j >= 1 and rational v != 1.  Returns a Fraction;
    the identity holds, so the result is the exact rational zero.
    """
    n = _check_positive_int(n, "n")
    j = _check_positive_int(j, "j")
    v = _as_fraction(v)
    if v == 1:
        raise ParameterError("v = 1 is excluded")
    p, q = v.numerator, v.denominator
    # clear denominators: residual * q^n is an integer
    acc = 0
    pk = 1  # p^k
    qk = q ** (n - 1)  # q^(n-1-k)
    for k in range(n):
        acc += math.comb(k, j - 1) * p * pk * qk
        acc += math.comb(k, j) * (p - q) * pk * qk
        pk *= p
        if k < n - 1:
            qk //= q
    acc -= math.comb(n, j) * p**n
    return Fraction(acc, q**n)


def shifted_binomial_sum_residual(n, m, j, v):
    """Exact residual of the index-shifted variant

        v sum_{k<n} C(k+m, j-1) v^k + (v-1) sum_{k<n} C(k+m, j) v^k
            = C(n+m, j) v^n - C(m, j).

    The constant C(m, j) is the k = 0 boundary term of the telescoping sum;
    it vanishes when j > m, which is why the unshifted identity has no such
    term.  Returns the exact rational zero for all n >= 1, m >= 0, j >= 1.
    """
    n = _check_positive_int(n, "n")
    j = _check_positive_int(j, "j")
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 0:
        raise ParameterError(f"m must be a nonnegative integer, got {m!r}")
    m = int(m)
    v = _as_fraction(v)
    if v == 1:
        raise ParameterError("v = 1 is excluded")
    p, q = v.numerator, v.denominator
    acc = 0
    pk = 1
    qk = q ** (n - 1)
    for k in range(n):
        acc += math.comb(k + m, j - 1) * p * pk * qk
        acc += math.comb(k + m, j) * (p - q) * pk * qk
        pk *= p
        if k < n - 1:
            qk //= q
    acc -= math.comb(n + m, j) * p**n
    acc += math.comb(m, j) * q**n
    return Fraction(acc, q**n)


def geometric_weight_gap(n, j, v):
    """Exact value of

        (v/(v-1))^{j-1} v sum_{k<n} v^k + (v-1) sum_{k<n} k v^k - n v^n

    computed termwise (brute force) for n >= 1, j >= 2, rational v not in
    {0, 1}.  Equals :func:`geometric_weight_gap_closed_form`, which is nonzero
    except on the boundary cases flagged by :func:`gap_vanishes`.
    """
    n = _check_positive_int(n, "n")
    j = _check_positive_int(j, "j")
    if j < 2:
        raise ParameterError(f"j must be >= 2, got {j}")
    v = _as_fraction(v)
    if v == 0 or v == 1:
        raise ParameterError("v in {0, 1} is excluded")
    geo = Fraction(0)
    weighted = Fraction(0)
    vk = Fraction(1)
    for k in range(n):
        geo += vk
        weighted += k * vk
        vk *= v
    # vk is now v^n
    return (v / (v - 1)) ** (j - 1) * v * geo + (v - 1) * weighted - n * vk


def geometric_weight_gap_closed_form(n, j, v):
    """[(v/(v-1))^j - v/(v-1)] (v^n - 1), the resolved form of the gap."""
    n = _check_positive_int(n, "n")
    j = _check_positive_int(j, "j")
    if j < 2:
        raise ParameterError(f"j must be >= 2, got {j}")
    v = _as_fraction(v)
    if v == 0 or v == 1:
        raise ParameterError("v in {0, 1} is excluded")
    s = v / (v - 1)
    return (s**j - s) * (v**n - 1)


def gap_vanishes(n, j, v):
    """True where the gap's closed form provably vanishes.

    That happens when v^n = 1 (e.g. v = -1 with n even) or when
    (v/(v-1))^{j-1} = 1 (only v = 1/2 with j odd, where v/(v-1) = -1).
    These boundary cases are recorded rather than asserted nonzero; neither
    arises from v = w/(w-1) with w > 0.
    """
    n = _check_positive_int(n, "n")
    j = _check_positive_int(j, "j")
    v = _as_fraction(v)
    if v == 0 or v == 1:
        raise ParameterError("v in {0, 1} is excluded")
    return v**n == 1 or (v / (v - 1)) ** (j - 1) == 1


@dataclass(frozen=True)
class CoefficientBrackets:
    """The two bracketed sums multiplying a_1^j and a_j in the j-th derivative
    of the characterization's functional equation at t = 0."""

    a1_bracket: Fraction
    aj_bracket: Fraction
    n: int
    j: int
    v: Fraction


def series_coefficient_brackets(n, j, v):
    """Brackets in front of a_1^j and a_j for integers n >= 2, j >= 2.

        a1_bracket = C(n,j) v^n - v sum C(k,j-1) v^k - (v-1) sum C(k,j) v^k
        aj_bracket = n v^n - (v/(v-1))^{j-1} v sum v^k - (v-1) sum k v^k

    The sign arrangement is the one annihilated by the binomial-sum identity
    (a1_bracket = 0 exactly) and kept nonzero by the geometric-weight gap
    (aj_bracket != 0 whenever ``gap_vanishes`` is false), which is what pins
    the reciprocal-transform series coefficients a_j, j >= 2, to zero.
    """
    n = _check_positive_int(n, "n")
    j = _check_positive_int(j, "j")
    if n < 2 or j < 2:
        raise ParameterError(f"brackets need n >= 2 and j >= 2, got n={n}, j={j}")
    v = _as_fraction(v)
    if v == 0 or v == 1:
        raise ParameterError("v in {0, 1} is excluded")
    a1 = -binomial_sum_residual(n, j, v)
    aj = -geometric_weight_gap(n, j, v)
    return CoefficientBrackets(a1_bracket=a1, aj_bracket=aj, n=n, j=j, v=v)


# ---------------------------------------------------------------------------
# transform-level identities (double-double floating point)
# ---------------------------------------------------------------------------

def _check_w(w):
    w = float(w)
    if not math.isfinite(w) or w <= 0.0 or w == 1.0:
        raise ParameterError(f"w must be positive, finite and != 1, got {w!r}")
    return w


def _check_nonneg(t, name="t"):
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise ParameterError(f"{name} must be a finite nonnegative real, got {t!r}")
    return t


def exp_lt_identity_residual(n, w, rate, t):
    """|Phi1 Phi2^n - Phi1 + sum_{k=1}^n Phi2^k| for the exponential Laplace
    transform Phi(s) = rate/(rate + s), with the scaled factors

        Phi1(t) = (w-1) Phi(w t),   Phi2(t) = ((w-1)/w) Phi(t).

    The identity Phi1 Phi2^n = Phi1 - sum Phi2^k holds exactly for the
    exponential transform; the returned residual is pure rounding noise
    (double-double evaluation keeps it far below 1e-12 for n <= 10 and
    w in [0.1, 10]).
    """
    n = _check_positive_int(n, "n")
    w = _check_w(w)
    rate = float(rate)
    if not math.isfinite(rate) or rate <= 0.0:
        raise ParameterError(f"rate must be positive, got {rate!r}")
    t = _check_nonneg(t)

    wd = DD(w)
    td = DD(t)
    lam = DD(rate)
    phi1 = (wd - 1.0) * (lam / (lam + wd * td))
    phi2 = ((wd - 1.0) / wd) * (lam / (lam + td))
    power = DD(1.0)
    geo = DD(0.0)
    for _ in range(n):
        power = power * phi2
        geo = geo + power
    residual = phi1 * power - phi1 + geo
    return abs(float(residual))


def partial_fraction_residual(w, t):
    """|(w-1)/((1+wt)(1+t)) - w/(1+wt) + 1/(1+t)|, the two-factor linear
    fraction split that seeds the transform identity.  Exact algebraically;
    the return value is rounding noise below 1e-14 on any sane (w, t)."""
    w = _check_w(w)
    t = _check_nonneg(t)
    wd = DD(w)
    td = DD(t)
    lhs = (wd - 1.0) / ((1.0 + wd * td) * (1.0 + td))
    rhs = wd / (1.0 + wd * td) - 1.0 / (1.0 + td)
    return abs(float(lhs - rhs))


def functional_equation_residual(n, w, psi, t):
    """Residual of  1 = v^n Psi^n(t) - (v-1) Psi(wt) sum_{k<n} v^k Psi^k(t)
    with v = w/(w-1), for a reciprocal-transform evaluator ``psi``.

    ``psi`` is called with the same numeric type as ``t``; pass a ``DD`` for
    full double-double precision (any evaluator built from +,-,*,/ and integer
    powers works transparently).  Psi(t) = 1 + t/rate, the reciprocal of the
    exponential transform, satisfies the equation identically; any other Psi
    with Psi(0) = 1 violates it at some t.
    """
    n = _check_positive_int(n, "n")
    w = _check_w(w)
    use_dd = isinstance(t, DD)
    if use_dd:
        wd = DD(w)
        one = DD(1.0)
    else:
        t = _check_nonneg(t)
        wd = w
        one = 1.0
    v = wd / (wd - 1.0)
    psi_t = psi(t)
    psi_wt = psi(wd * t)
    vp = one
    psip = one
    acc = one  # k = 0 term of sum v^k Psi^k
    for _ in range(1, n):
        vp = vp * v
        psip = psip * psi_t
        acc = acc + vp * psip
    vn_psin = vp * v * psip * psi_t  # v^n Psi^n
    residual = one - vn_psin + (v - one) * psi_wt * acc
    return abs(float(residual))


def characterization_residual(n, w, phi, t):
    """Residual of the scaled product-vs-sum arrangement

        (w-1)^{n+1}/w^n phi(wt) phi(t)^n
            = (w-1) phi(wt) - sum_{k=1}^n ((w-1)/w)^k phi(t)^k

    for a transform evaluator ``phi``.  Zero (to rounding) exactly when phi is
    an exponential transform; this is the population version of the
    goodness-of-fit residual.  Like :func:`functional_equation_residual`,
    evaluation follows the numeric type of ``t``.
    """
    n = _check_positive_int(n, "n")
    w = _check_w(w)
    if isinstance(t, DD):
        wd, one, zero = DD(w), DD(1.0), DD(0.0)
    else:
        t = _check_nonneg(t)
        wd, one, zero = w, 1.0, 0.0
    phi_t = phi(t)
    phi_wt = phi(wd * t)
    ratio = (wd - 1.0) / wd
    lead = (wd - 1.0) * ratio**n * phi_wt
    power = one
    rk = one
    acc = zero
    for _ in range(n):
        rk = rk * ratio
        power = power * phi_t
        acc = acc + rk * power
    residual = lead * power - (wd - 1.0) * phi_wt + acc
    return abs(float(residual))


# ---------------------------------------------------------------------------
# series coefficients from moments
# ---------------------------------------------------------------------------

def reciprocal_series_from_moments(moments, order):
    """Coefficients a_0..a_order of the reciprocal 1/Phi(t) where Phi has the
    moment expansion Phi(t) = sum_k (-1)^k m_k t^k / k!  (m_0 = 1).

    The reciprocal is the formal power-series inverse:
    a_0 = 1 and a_j = -sum_{i=1}^{j} b_i a_{j-i} with b_i = (-1)^i m_i / i!.
    For exponential moments m_k = k!/rate^k this returns
    [1, 1/rate, 0, 0, ...], the signature that characterizes the family.
    """
    if not isinstance(order, (int, np.integer)) or isinstance(order, bool) or order < 0:
        raise ParameterError(f"order must be a nonnegative integer, got {order!r}")
    order = int(order)
    m = np.asarray(moments, dtype=float)
    if m.size < order:
        raise ParameterError(
            f"need at least {order} moments for order {order}, got {m.size}"
        )
    b = np.empty(order + 1)
    b[0] = 1.0
    for k in range(1, order + 1):
        b[k] = (-1) ** k * m[k - 1] / math.factorial(k)
    a = np.zeros(order + 1)
    a[0] = 1.0
    for j in range(1, order + 1):
        a[j] = -np.dot(b[1 : j + 1], a[j - 1 :: -1])
    return a


# ---------------------------------------------------------------------------
# sweep runner
# ---------------------------------------------------------------------------

@dataclass
class FamilyReport:
    name: str
    sweep: str
    checks: int
    failures: int
    worst_residual: float  # 0.0 for exact families when everything passed
    exact: bool
    elapsed: float

    def to_record(self):
        return {
            "family": self.name,
            "sweep": self.sweep,
            "checks": self.checks,
            "failures": self.failures,
            "worst_residual": self.worst_residual,
            "exact": self.exact,
        }


@dataclass
class IdentityReport:
    families: list

    @property
    def total_checks(self):
        return sum(f.checks for f in self.families)

    @property
    def total_failures(self):
        return sum(f.failures for f in self.families)

    @property
    def worst_float_residual(self):
        floats = [f.worst_residual for f in self.families if not f.exact]
        return max(floats) if floats else 0.0

    def render_text(self):
        lines = ["identity verification report", "=" * 68]
        for f in self.families:
            kind = "exact" if f.exact else f"worst residual {f.worst_residual:.3e}"
            lines.append(
                f"{f.name:<38} checks {f.checks:>7}  failures {f.failures:>3}  {kind}"
            )
            lines.append(f"{'':<38} sweep: {f.sweep}  ({f.elapsed:.2f}s)")
        lines.append("-" * 68)
        lines.append(
            f"total: {self.total_checks} checks, {self.total_failures} failures, "
            f"worst floating residual {self.worst_float_residual:.3e}"
        )
        return "\n".join(lines)


def random_rationals(count, rng, bound=10**6, exclude=(0, 1)):
    """Deterministic pool of nonzero random Fractions with numerator and
    denominator magnitudes up to ``bound``."""
    out = []
    excluded = {Fraction(e) for e in exclude}
    while len(out) < count:
        num = int(rng.integers(-bound, bound + 1))
        den = int(rng.integers(1, bound + 1))
        cand = Fraction(num, den)
        if cand not in excluded:
            out.append(cand)
    return out


def _timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def run_identity_checks(
    exact_max_n=30,
    shift_max_m=10,
    n_rationals=40,
    bracket_max_n=20,
    float_max_n=10,
    float_ws=(0.1, 0.5, 1.5, 2.0, 5.0, 10.0),
    float_rates=(1.0, 2.0),
    grid_points=100,
    seed=20260101,
):
    """Run every identity family over its sweep and collect a report.

    Defaults reproduce the certified sweeps: exact identities for
    n <= 30 (j <= n, shifts m <= 10) over ``n_rationals`` random rationals,
    brackets for n <= 20 over v = w/(w-1) with w in {1/5, 1/2, 3/2, 2, 5},
    and the transform identities for n <= 10, w in ``float_ws`` on
    ``grid_points``-point t-grids.
    """
    rng = np.random.default_rng(seed)
    vs = random_rationals(n_rationals, rng)
    families = []

    def binomial_family():
        checks = failures = 0
        for v in vs:
            for n in range(1, exact_max_n + 1):
                for j in range(1, n + 1):
                    checks += 1
                    if binomial_sum_residual(n, j, v) != 0:
                        failures += 1
        return checks, failures, 0.0

    def shifted_family():
        checks = failures = 0
        for v in vs:
            for n in range(1, exact_max_n + 1):
                for m in range(0, shift_max_m + 1):
                    for j in range(1, n + m + 1):
                        checks += 1
                        if shifted_binomial_sum_residual(n, m, j, v) != 0:
                            failures += 1
        return checks, failures, 0.0

    def gap_family():
        checks = failures = 0
        for v in vs:
            for n in range(1, exact_max_n + 1):
                for j in range(2, n + 1):
                    checks += 1
                    gap = geometric_weight_gap(n, j, v)
                    closed = geometric_weight_gap_closed_form(n, j, v)
                    if gap != closed:
                        failures += 1
                    elif gap_vanishes(n, j, v):
                        if gap != 0:
                            failures += 1
                    elif gap == 0:
                        failures += 1
        return checks, failures, 0.0

    def bracket_family():
        checks = failures = 0
        for w in (Fraction(1, 5), Fraction(1, 2), Fraction(3, 2), Fraction(2), Fraction(5)):
            v = w / (w - 1)
            for n in range(2, bracket_max_n + 1):
                for j in range(2, n + 6):
                    checks += 1
                    br = series_coefficient_brackets(n, j, v)
                    if br.a1_bracket != 0:
                        failures += 1
                    elif not gap_vanishes(n, j, v) and br.aj_bracket == 0:
                        failures += 1
        return checks, failures, 0.0

    def lt_identity_family():
        checks = failures = 0
        worst = 0.0
        for rate in float_rates:
            grid = np.linspace(0.0, 10.0 * rate, grid_points)
            for w in float_ws:
                for n in range(1, float_max_n + 1):
                    for t in grid:
                        checks += 1
                        r = exp_lt_identity_residual(n, w, rate, float(t))
                        worst = max(worst, r)
                        if r > 1e-12:
                            failures += 1
        return checks, failures, worst

    def partial_fraction_family():
        checks = failures = 0
        worst = 0.0
        grid = np.linspace(0.0, 10.0, grid_points)
        for w in float_ws:
            for t in grid:
                checks += 1
                r = partial_fraction_residual(w, float(t))
                worst = max(worst, r)
                if r > 1e-14:
                    failures += 1
        return checks, failures, worst

    def functional_equation_family():
        checks = failures = 0
        worst = 0.0
        for rate in float_rates:
            grid = np.linspace(0.0, 10.0 * rate, grid_points)

            def psi(t, _rate=rate):
                return 1.0 + t / _rate

            for w in float_ws:
                for n in range(1, float_max_n + 1):
                    for t in grid:
                        checks += 1
                        r = functional_equation_residual(n, w, psi, DD(float(t)))
                        worst = max(worst, r)
                        if r > 1e-10:
                            failures += 1
        return checks, failures, worst

    specs = [
        ("binomial weighted sum", f"n<={exact_max_n}, j<=n, {n_rationals} rationals",
         True, binomial_family),
        ("shifted binomial weighted sum",
         f"n<={exact_max_n}, m<={shift_max_m}, j<=n+m, {n_rationals} rationals",
         True, shifted_family),
        ("geometric weight gap vs closed form",
         f"n<={exact_max_n}, 2<=j<=n, {n_rationals} rationals", True, gap_family),
        ("series coefficient brackets",
         f"2<=n<={bracket_max_n}, 2<=j<=n+5, w in {{1/5,1/2,3/2,2,5}}",
         True, bracket_family),
        ("scaled-transform product identity",
         f"n<={float_max_n}, w in {float_ws}, {grid_points}-pt t-grid, tol 1e-12",
         False, lt_identity_family),
        ("partial fraction split",
         f"w in {float_ws}, {grid_points}-pt t-grid, tol 1e-14",
         False, partial_fraction_family),
        ("functional equation (reciprocal exp)",
         f"n<={float_max_n}, w in {float_ws}, {grid_points}-pt t-grid, tol 1e-10",
         False, functional_equation_family),
    ]
    for name, sweep, exact, fn in specs:
        (checks, failures, worst), elapsed = _timed(fn)
        families.append(
            FamilyReport(
                name=name,
                sweep=sweep,
                checks=checks,
                failures=failures,
                worst_residual=worst,
                exact=exact,
                elapsed=elapsed,
            )
        )
    return IdentityReport(families=families)
