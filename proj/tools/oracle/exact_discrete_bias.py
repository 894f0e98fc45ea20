#!/usr/bin/env python3
"""Exact finite-M expectations of the discrete ensemble functionals.

s_i = a_i^2 + b_i^2 is exponential with scale 2*sigma_i^2, so
  E<g_d>      = (dt/T) sum_i E[g_d(gamL * s)]
  E<f mudot^2>= (dt/T) sum_i E[f(gamL*s) * 4 gamL^2 (s V_i + s^2 W_i^2/sig_i^4)]
evaluated with Gauss-Laguerre; compared against the continuum quadratures.
"""
import numpy as np
import mpmath as mp
from scipy.integrate import quad
from scipy.special import k0, roots_laguerre

mp.mp.dps = 30
xi = float(mp.findroot(lambda x: 2 * x * mp.coth(2 * x) - 3, mp.mpf("1.5")))
sh2 = np.sinh(2 * xi)
coth2 = np.cosh(2 * xi) / np.sinh(2 * xi)
T = P = 1.0
u_k, w_k = roots_laguerre(300)


def f_poly(mu):
    return (mu * (10206 + 21303 * mu**2 + 15399 * mu**4 + 4644 * mu**6 + 496 * mu**8)
            / (15 * (3 + mu**2) ** 3 * (9 + 4 * mu**2) ** 2))


def g_d(mu):
    return 4 * mu**3 / (15 * (3 + mu**2))


def Id_quad(g):
    v = quad(lambda y: y**3 * k0(y / sh2) * np.exp(-y * coth2)
             / (3 + (g * xi) ** 2 * y**2), 0, np.inf, limit=400)[0]
    return (1 / 12) * (2 / 15) * xi**2 * g**3 * v


def IX_quad(g):
    v = quad(lambda y: y * f_poly(g * xi * y) * k0(y / sh2)
             * np.exp(-y * coth2), 0, np.inf, limit=400)[0]
    return g**2 * v


def exact(M, gamL):
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
    WX2 = (2 / (m_osc * P * T)) * (nu / (nu + Om**2)).sum()
    Vc = Raw[1:] - W_i**2 / sigma2

    s = 2 * sigma2[:, None] * u_k[None, :]          # (M-1, K)
    mu = gamL * s
    Egd = (g_d(mu) @ w_k).sum() * dt / T
    integ = f_poly(mu) * 4 * gamL**2 * (s * Vc[:, None]
            + s**2 * (W_i**2 / sigma2**2)[:, None])
    Efm = (integ @ w_k).sum() * dt / T
    return Egd, Efm / WX2, WX2


for gamL in (1.0, 2.0):
    ref_g = 12 * Id_quad(gamL)
    ref_x = IX_quad(gamL)
    print(f"gamma L P = {gamL}: ref <g_d>={ref_g:.9g} I_X={ref_x:.9g}")
    for M in (256, 512, 1024, 2048, 4096, 8192):
        eg, ex, wx2 = exact(M, gamL)
        print(f"  M={M:5d}: g_d rel {(eg/ref_g-1)*100:+.4f}%"
              f"   IX rel {(ex/ref_x-1)*100:+.4f}%"
              f"   IXbias*M {(ex/ref_x-1)*M:+.3f}   WX2={wx2:.6g}")
