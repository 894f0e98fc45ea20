#!/usr/bin/env python3
"""Find the best series/asymptotic crossover for a float64 K0 implementation.

Series (small x):   K0 = -(ln(x/2)+gamma_E) I0(x) + sum_{k>=1} (x^2/4)^k/(k!)^2 H_k
Asymptotic (large): K0 = sqrt(pi/2x) e^{-x} sum_k a_k, a_0=1,
                    a_{k+1} = a_k * (-(2k+1)^2)/(8(k+1)x), truncated at the
                    smallest term (divergent series, optimal truncation).
Reference: mpmath at 50 digits.
"""
import math
import mpmath as mp

mp.mp.dps = 50
EULER = 0.57721566490153286060651209008240243104215933593992


def k0_series(x):
    t = (x * x) / 4.0
    i0 = 1.0
    s = 0.0
    term = 1.0
    h = 0.0
    for k in range(1, 200):
        term *= t / (k * k)
        h += 1.0 / k
        i0 += term
        s += term * h
        if term * (h + 1.0) < 1e-18 * (abs(s) + i0):
            break
    return -(math.log(x / 2.0) + EULER) * i0 + s


def k0_asym(x):
    a = 1.0
    s = 1.0
    prev = 1.0
    for k in range(0, 60):
        a *= -((2 * k + 1) ** 2) / (8.0 * (k + 1) * x)
        if abs(a) >= prev:      # series started diverging: stop before this term
            break
        s += a
        prev = abs(a)
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * s


for x in [0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 8.5, 9.0, 9.5, 10.0, 10.5,
          11.0, 12.0, 14.0, 16.0, 20.0, 30.0, 50.0, 100.0]:
    ref = mp.besselk(0, mp.mpf(x))
    es = abs(k0_series(x) / float(ref) - 1.0) if x < 30 else float("nan")
    ea = abs(k0_asym(x) / float(ref) - 1.0)
    print(f"x={x:7.2f}  series_rel={es:9.2e}  asym_rel={ea:9.2e}")
