#!/usr/bin/env python3
"""Prototype of the discrete Gaussian-oscillator ensemble and its averages.

Checks, at M=512, T=1, P=1:
  1. sine-basis sampling reproduces the discrete covariance and mean power P
  2. discrete bandwidth W_X^2 formula == 2/(mPT) sum_a nu_a/(nu_a+Om^2)
  3. per-site <da^2> (Raw_i) == (1/2) P W_X^2 - cosine-sum correction
  4. MC <int dt/T g_d(mu)> vs analytic 12*I_d(g)  (g = gammaL*P)
  5. MC mudot^2-functional (direct fwd-diff AND conditional-moment form)
     divided by W_X^2 vs analytic I_X(g), at g in {1, 2}
Reports standard errors to size the production run.
"""
import numpy as np
import mpmath as mp
from scipy.fft import dst
from scipy.integrate import quad
from scipy.special import k0

mp.mp.dps = 30
xi = float(mp.findroot(lambda x: 2 * x * mp.coth(2 * x) - 3, mp.mpf("1.5")))
sh2 = np.sinh(2 * xi)
coth2 = np.cosh(2 * xi) / np.sinh(2 * xi)

M = 512
T = 1.0
P = 1.0
dt = T / M
m_osc = T / (2 * xi**2 * P)
Om = 2 * xi / T

alpha = np.arange(1, M)                      # sine-mode index
nu = (4 / dt**2) * np.sin(np.pi * alpha / (2 * M)) ** 2
Q = m_osc * dt * (nu + Om**2)                # per-mode precision
i_idx = np.arange(0, M)                      # forward-difference rows
j_idx = np.arange(1, M)                      # interior sites

# v_j^(a) = sqrt(2/M) sin(pi j a / M); (Dv)_i^(a) closed form
V = np.sqrt(2 / M) * np.sin(np.pi * np.outer(j_idx, alpha) / M)      # (M-1, M-1)
DV = (2 / dt) * np.sqrt(2 / M) * (np.sin(np.pi * alpha / (2 * M))
      * np.cos(np.pi * np.outer(2 * i_idx + 1, alpha) / (2 * M)))    # (M, M-1)

sigma2 = (V**2 / Q).sum(axis=1)              # (Q^-1)_jj, interior sites
W_i = (DV[1:, :] * V / Q).sum(axis=1)        # sum_j D_ij (Q^-1)_ji at i=1..M-1
Raw = (DV**2 / Q).sum(axis=1)                # <(Da)_i^2>, all M rows

WX2 = 2 * (M - 1) / (m_osc * P * T) - (2 * Om**2 / (m_osc * P * T)) * (1 / (nu + Om**2)).sum()
WX2_alt = (2 / (m_osc * P * T)) * (nu / (nu + Om**2)).sum()
print(f"W_X^2 disc = {WX2:.12g}  (alt {WX2_alt:.12g})  8 xi^2/T^2 = {8*xi**2/T**2:.6g}")

# check 3: Raw_i vs renormalized split
cossum = (np.cos(np.pi * np.outer(2 * i_idx + 1, alpha) / M) / (nu + Om**2)).sum(axis=1)
Raw_split = 0.5 * P * WX2 - (Om**2 / (m_osc * T)) * cossum
print(f"Raw vs split max rel err = {np.abs(Raw/Raw_split - 1).max():.3e}")

# check 1/2: power and covariance site-checks
power_disc = (2 * dt / T) * (1 / Q).sum()


def C_cont(t, s):
    lo, hi = min(t, s), max(t, s)
    return (np.sinh(Om * (T / 2 + lo)) * np.sinh(Om * (T / 2 - hi))
            / (m_osc * Om * np.sinh(Om * T)))


t_sites = -T / 2 + j_idx * dt
mid = (M - 1) // 2
print(f"disc power = {power_disc:.9g} (want {P})")
print(f"sigma2 mid = {sigma2[mid]:.9g}  C_cont = {C_cont(t_sites[mid], t_sites[mid]):.9g}")


def f_poly(mu):
    return (mu * (10206 + 21303 * mu**2 + 15399 * mu**4 + 4644 * mu**6 + 496 * mu**8)
            / (15 * (3 + mu**2) ** 3 * (9 + 4 * mu**2) ** 2))


def g_d(mu):
    return 4 * mu**3 / (15 * (3 + mu**2))


def Id_quad(g):
    val = quad(lambda y: y**3 * k0(y / sh2) * np.exp(-y * coth2)
               / (3 + (g * xi) ** 2 * y**2), 0, np.inf, limit=400)[0]
    return (1 / 12) * (2 / 15) * xi**2 * g**3 * val


def IX_quad(g):
    val = quad(lambda y: y * f_poly(g * xi * y) * k0(y / sh2)
               * np.exp(-y * coth2), 0, np.inf, limit=400)[0]
    return g**2 * val


rng = np.random.default_rng(20260822)
N = 100_000
batch = 5_000

for gamL in (1.0, 2.0):
    acc_gd, acc_dir, acc_rb = [], [], []
    for _ in range(N // batch):
        za = rng.standard_normal((batch, M - 1))
        zb = rng.standard_normal((batch, M - 1))
        # a_j = sum_a z_a v_j^(a)/sqrt(Q_a); dst-I: y_j = 2 sum_n x_n sin(...)
        a = dst(za / np.sqrt(Q), type=1, axis=1) * np.sqrt(1 / (2 * M))
        b = dst(zb / np.sqrt(Q), type=1, axis=1) * np.sqrt(1 / (2 * M))
        s = a**2 + b**2
        mu = gamL * s
        acc_gd.append(g_d(mu).sum(axis=1) * dt / T)

        # direct: mudot_i = 2 gamL (a_i da_i + b_i db_i), rows i=0..M-1
        af = np.concatenate([np.zeros((batch, 1)), a, np.zeros((batch, 1))], axis=1)
        bf = np.concatenate([np.zeros((batch, 1)), b, np.zeros((batch, 1))], axis=1)
        da = np.diff(af, axis=1) / dt        # (batch, M)
        db = np.diff(bf, axis=1) / dt
        mudot = 2 * gamL * (af[:, :-1] * da + bf[:, :-1] * db)
        mu_rows = gamL * (af[:, :-1] ** 2 + bf[:, :-1] ** 2)
        acc_dir.append((f_poly(mu_rows) * mudot**2).sum(axis=1) * dt / T)

        # conditional-moment (renormalized) estimator, interior rows only
        Vc = Raw[1:] - W_i**2 / sigma2
        rb = (f_poly(mu) * 4 * gamL**2
              * (s * Vc + s**2 * W_i**2 / sigma2**2)).sum(axis=1) * dt / T
        acc_rb.append(rb)

    def report(name, chunks, ref):
        x = np.concatenate(chunks)
        mean, se = x.mean(), x.std(ddof=1) / np.sqrt(len(x))
        print(f"  {name}: {mean:.6g} +- {se:.2g}  ref {ref:.6g}  "
              f"pull {(mean-ref)/se:+.2f} sigma  rel {(mean/ref-1):+.3e}")

    print(f"gamma L P = {gamL}:")
    report("<g_d>      ", acc_gd, 12 * Id_quad(gamL))
    report("fmu'2 dir/W", [c / WX2 for c in acc_dir], IX_quad(gamL))
    report("fmu'2 rb /W", [c / WX2 for c in acc_rb], IX_quad(gamL))
