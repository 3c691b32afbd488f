"""The identities that pin down the exponential distribution.

The sum of n unit stages plus one w-scaled stage has transform
Phi(wt) Phi(t)^n.  For the exponential transform, and only for it, this
product collapses into a weighted difference of the component transforms.
This script walks through each layer of that fact: the scalar partial
fraction split, the product identity, the functional equation, and the
exact combinatorics that make the series coefficients vanish.

Run:  python demos/02_identities.py
"""

from fractions import Fraction

import numpy as np

from hypoexp import (
    DD,
    binomial_sum_residual,
    exp_lt_identity_residual,
    functional_equation_residual,
    geometric_weight_gap,
    geometric_weight_gap_closed_form,
    partial_fraction_residual,
    reciprocal_series_from_moments,
    run_identity_checks,
    series_coefficient_brackets,
)

print("1) partial fraction split: (w-1)/((1+wt)(1+t)) = w/(1+wt) - 1/(1+t)")
for w, t in [(2.0, 1.0), (0.25, 5.0), (10.0, 0.3)]:
    print(f"   w={w:<5g} t={t:<4g} residual {partial_fraction_residual(w, t):.2e}")

print("\n2) product identity for the exponential transform")
print("   Phi1 Phi2^n = Phi1 - sum Phi2^k,  Phi1=(w-1)Phi(wt), Phi2=((w-1)/w)Phi(t)")
for n, w in [(1, 2.0), (5, 0.5), (10, 0.1)]:
    worst = max(
        exp_lt_identity_residual(n, w, 1.0, float(t)) for t in np.linspace(0.0, 10.0, 50)
    )
    print(f"   n={n:<3} w={w:<5g} worst residual on t-grid: {worst:.2e}")

print("\n3) functional equation 1 = v^n Psi^n - (v-1) Psi(wt) sum v^k Psi^k")
print("   satisfied by the exponential reciprocal Psi(t) = 1 + t ...")
worst = max(
    functional_equation_residual(3, 2.0, lambda t: 1.0 + t, DD(float(t)))
    for t in np.linspace(0.0, 10.0, 50)
)
print(f"   worst residual: {worst:.2e}")
print("   ... and violated by anything else, e.g. the Erlang-2 reciprocal (1+t)^2:")
res = functional_equation_residual(3, 2.0, lambda t: (1.0 + t) ** 2, 1.0)
print(f"   residual at t=1: {res:.1f}")

print("\n4) the combinatorial engine, in exact rational arithmetic")
v = Fraction(7, 3)
print(f"   v = {v}")
print(f"   binomial weighted sum residual (n=12, j=5):  {binomial_sum_residual(12, 5, v)}")
gap = geometric_weight_gap(9, 4, v)
closed = geometric_weight_gap_closed_form(9, 4, v)
print(f"   geometric weight gap (n=9, j=4): {gap}")
print(f"   closed form:                     {closed}  (equal: {gap == closed})")
br = series_coefficient_brackets(6, 3, v)
print(f"   series brackets (n=6, j=3): a1 bracket {br.a1_bracket}, aj bracket {br.aj_bracket}")
print("   a1 bracket = 0 kills the a_1^j term; aj bracket != 0 forces a_j = 0.")

print("\n5) consequence: the reciprocal-transform series of Exp(rate) is 1 + t/rate")
import math

for rate in (0.5, 2.0):
    moms = [math.factorial(k) / rate**k for k in range(1, 8)]
    coeffs = reciprocal_series_from_moments(moms, 6)
    print(f"   rate={rate}: a = {np.round(coeffs, 12)}")

print("\n6) full sweep (abbreviated bounds for the demo)")
report = run_identity_checks(exact_max_n=12, shift_max_m=4, n_rationals=10,
                             bracket_max_n=10, float_max_n=6, grid_points=40)
print(report.render_text())
