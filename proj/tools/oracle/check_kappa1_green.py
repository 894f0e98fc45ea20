#!/usr/bin/env python3
"""Numeric verification of the kappa1 boundary-value problem Green kernels.

True operator (from the Euler-Lagrange equations of the noise action):
    D[k] = d2k/dz2 - 2 i w dk/dz - 4 w^2 Re[k],   w = mu/L,
with Dirichlet BCs k(0)=k(L)=0 and source F:  D[k] = F.

The closed-form kernels G_F, G_Fbar are checked by computing
    k_G(z) = -(1/L) * integral_0^L [G_F(z,z') F(z') + G_Fbar(z,z') conj(F(z'))] dz'
and comparing against a direct sparse finite-difference solve of D[k]=F.
We report the complex ratio k_direct / k_G to detect any constant rescaling
(an L-power or sign convention in the printed kernels).
"""
import numpy as np
from scipy.sparse import lil_matrix, csr_matrix
from scipy.sparse.linalg import spsolve


def greens(mu, L, z, zp):
    """Printed kernels; z, zp broadcastable arrays. Returns (G_F, G_Fbar)."""
    z = np.asarray(z)[:, None]
    zp = np.asarray(zp)[None, :]
    lt = (z <= zp).astype(float)   # theta(z <= z')
    gt = (zp < z).astype(float)    # theta(z' < z)
    m = mu
    i = 1j

    pref = 1.0 / (3 * (m**2 + 3) * L**6)
    t1 = z * (L - zp) * lt * (
        (m**2 + 3) * L**2 * (3 * L**2 + 3 * i * m * L * z - m**2 * z**2)
        + m * L * zp * (-3 * i * (m**2 - i * m + 3) * L**2
                        + 3 * m * L * z * (m**2 - i * m + 3)
                        - m**2 * (m - 3 * i) * z**2)
        + m**2 * zp**2 * (3 * i * (m + i) * L**2
                          - 3 * m * L * z * (m + i) + 2 * m**2 * z**2))
    t2 = zp * (L - z) * gt * (
        3 * L**2 * ((m**2 + 3) * L**2 + i * m * L * z * (m**2 + i * m + 3)
                    - (1 + i * m) * m**2 * z**2)
        + 3 * m * L * zp * (-i * (m**2 + 3) * L**2
                            + L**2 * m * z * (m**2 + i * m + 3)
                            - m**2 * z**2 * (m - i))
        - m**2 * zp**2 * ((m**2 + 3) * L**2 + m * L * z * (m + 3 * i)
                          - 2 * m**2 * z**2))
    GF = pref * (t1 + t2)

    prefb = m**2 / (3 * (m**2 + 3) * L**6)
    s1 = zp * (L - z) * gt * (
        zp**2 * ((m**2 + 3) * L**2 + m * L * z * (m + 3 * i) - 2 * m**2 * z**2)
        + 3 * L**2 * z * (i * L * (m + 2 * i) - i * m * z + z)
        + 3 * m * L * z * zp * ((m + i) * z - (m + 2 * i) * L))
    s2 = z * (L - zp) * lt * (
        (m**2 + 3) * L**2 * z**2
        + zp**2 * (3 * L**2 * (1 - i * m) + 3 * m * L * z * (m + i)
                   - 2 * m**2 * z**2)
        + L * zp * (3 * i * L**2 * (m + 2 * i) - 3 * m * L * z * (m + 2 * i)
                    + m * z**2 * (m + 3 * i)))
    GFb = prefb * (s1 + s2)
    return GF, GFb


def solve_direct(mu, L, z, F):
    """Sparse FD solve of D[k]=F with Dirichlet BCs; unknowns (u_i, v_i)."""
    n = len(z)
    h = z[1] - z[0]
    w = mu / L
    ni = n - 2
    A = lil_matrix((2 * ni, 2 * ni))
    rhs = np.zeros(2 * ni)
    for j in range(ni):
        # equation at interior node j (global i = j+1)
        # (k_{i+1} - 2 k_i + k_{i-1})/h^2 - i w (k_{i+1}-k_{i-1})/h - 4w^2 u_i
        # real part: (u'' part) + w (v_{i+1}-v_{i-1})/h - 4 w^2 u_i = Re F
        # imag part: (v'' part) - w (u_{i+1}-u_{i-1})/h = Im F
        iu, iv = 2 * j, 2 * j + 1
        A[iu, iu] += -2 / h**2 - 4 * w**2
        A[iv, iv] += -2 / h**2
        for d in (-1, 1):
            jj = j + d
            if 0 <= jj < ni:
                A[iu, 2 * jj] += 1 / h**2
                A[iv, 2 * jj + 1] += 1 / h**2
                A[iu, 2 * jj + 1] += w * d / h
                A[iv, 2 * jj] += -w * d / h
        rhs[iu] = F[j + 1].real
        rhs[iv] = F[j + 1].imag
    sol = spsolve(csr_matrix(A), rhs)
    k = np.zeros(n, dtype=complex)
    k[1:-1] = sol[0::2] + 1j * sol[1::2]
    return k


def run(mu, L):
    n = 3001
    z = np.linspace(0, L, n)
    F = ((np.sin(np.pi * z / L) + 0.3 * np.cos(2 * np.pi * z / L) + 0.1)
         + 1j * (0.2 + z / L - (z / L) ** 3))

    # evaluate kernels in unit coordinates and restore the L^2 scale
    GF, GFb = greens(mu, 1.0, z / L, z / L)
    GF, GFb = L**2 * GF, L**2 * GFb
    wts = np.full(n, 1.0); wts[0] = wts[-1] = 0.5
    h = z[1] - z[0]
    kG = -(1.0 / L) * ((GF * (F * wts)[None, :]).sum(axis=1)
                       + (GFb * (np.conj(F) * wts)[None, :]).sum(axis=1)) * h
    kD = solve_direct(mu, L, z, F)

    mask = slice(n // 10, 9 * n // 10)
    ratio = kD[mask] / kG[mask]
    print(f"mu={mu:4} L={L:4}: |ratio| median={np.median(np.abs(ratio)):.6f}  "
          f"ratio spread={np.std(np.abs(ratio))/np.median(np.abs(ratio)):.2e}  "
          f"arg median={np.median(np.angle(ratio)):+.2e}  "
          f"L^2={L**2:.4f}")
    print(f"      BCs of kG: |kG(0)|={abs(kG[0]):.2e} |kG(L)|={abs(kG[-1]):.2e}")


if __name__ == "__main__":
    for L in (1.0, 2.7):
        for mu in (1e-6, 0.7, 1.5, 3.0):
            run(mu, L)
