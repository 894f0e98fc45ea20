#!/usr/bin/env python3
"""Measure sampler moments (Var a_i, Cov(a_i, da_i), Var da_i) and the
site-restricted f*mudot^2 expectation at boundary sites, vs eigen-formulas."""
import numpy as np
import mpmath as mp
from scipy.fft import dst

mp.mp.dps = 30
xi = float(mp.findroot(lambda x: 2 * x * mp.coth(2 * x) - 3, mp.mpf("1.5")))
T = P = 1.0
M = 512
gamL = 1.0
dt = T / M
m_osc = T / (2 * xi**2 * P)
Om = 2 * xi / T
alpha = np.arange(1, M)
nu = (4 / dt**2) * np.sin(np.pi * alpha / (2 * M)) ** 2
Q = m_osc * dt * (nu + Om**2)
j_idx = np.arange(1, M)
V = np.sqrt(2 / M) * np.sin(np.pi * np.outer(j_idx, alpha) / M)
DV = (2 / dt) * np.sqrt(2 / M) * (np.sin(np.pi * alpha / (2 * M))
      * np.cos(np.pi * np.outer(2 * np.arange(M) + 1, alpha) / (2 * M)))
sigma2 = (V**2 / Q).sum(axis=1)
W_i = (DV[1:, :] * V / Q).sum(axis=1)
Raw = (DV**2 / Q).sum(axis=1)


def f_poly(mu):
    return (mu * (10206 + 21303 * mu**2 + 15399 * mu**4 + 4644 * mu**6 + 496 * mu**8)
            / (15 * (3 + mu**2) ** 3 * (9 + 4 * mu**2) ** 2))


rng = np.random.default_rng(12345)
N = 2_000_000
batch = 20_000
sites = [1, 2, 256]                  # j values
mom = {j: np.zeros(3) for j in sites}
fm = {j: 0.0 for j in sites}
for k in range(N // batch):
    za = rng.standard_normal((batch, M - 1))
    zb = rng.standard_normal((batch, M - 1))
    a = dst(za / np.sqrt(Q), type=1, axis=1) * np.sqrt(1 / (2 * M))
    b = dst(zb / np.sqrt(Q), type=1, axis=1) * np.sqrt(1 / (2 * M))
    af = np.concatenate([np.zeros((batch, 1)), a, np.zeros((batch, 1))], axis=1)
    bf = np.concatenate([np.zeros((batch, 1)), b, np.zeros((batch, 1))], axis=1)
    for j in sites:
        aj = af[:, j]
        daj = (af[:, j + 1] - af[:, j]) / dt
        bj = bf[:, j]
        dbj = (bf[:, j + 1] - bf[:, j]) / dt
        mom[j] += np.array([(aj**2).sum(), (aj * daj).sum(), (daj**2).sum()])
        mu_j = gamL * (aj**2 + bj**2)
        mudot_j = 2 * gamL * (aj * daj + bj * dbj)
        fm[j] += (f_poly(mu_j) * mudot_j**2).sum()

for j in sites:
    va, cav, vda = mom[j] / N
    print(f"j={j}: Var(a)={va:.6g} (pred {sigma2[j-1]:.6g})  "
          f"Cov={cav:.6g} (pred {W_i[j-1]:.6g})  "
          f"Var(da)={vda:.6g} (pred {Raw[j]:.6g})")
    s2, W, R = sigma2[j - 1], W_i[j - 1], Raw[j]
    Vc = R - W**2 / s2
    # sigma^4 conditional prediction via 2D Gauss-Laguerre-free quadrature
    from scipy.special import roots_laguerre
    u_k, w_k = roots_laguerre(300)
    s = 2 * s2 * u_k
    pred4 = 4 * gamL**2 * (f_poly(gamL * s) * (s * Vc + s**2 * W**2 / s2**2 * (1 / s2**2) * s2**2)).dot(w_k)
    pred4b = 4 * gamL**2 * (f_poly(gamL * s) * (s * Vc + s**2 * W**2 / s2**4 * s2**2)).dot(w_k)
    print(f"   E[f mudot^2] MC = {fm[j]/N:.6g}   "
          f"pred(sig4) = {4*gamL**2*(f_poly(gamL*s)*(s*Vc + s**2*W**2/s2**4)).dot(w_k):.6g}   "
          f"pred(sig2) = {4*gamL**2*(f_poly(gamL*s)*(s*Vc + s**2*W**2/s2**2)).dot(w_k):.6g}")
