#!/usr/bin/env python3
"""Freeze high-precision reference values for the ensemble-average curves.

  xi:    2 xi coth(2 xi) = 3
  I_d(g) = (1/12)(2/15) xi^2 g^3 I3d(g),
           I3d = int_0^inf y^3 K0(y/sh2xi) e^{-y coth2xi} / (3 + (g xi)^2 y^2) dy
  I_X(g) = g^2 int_0^inf y f(g xi y) K0(y/sh2xi) e^{-y coth2xi} dy
  f(m)  = m (10206 + 21303 m^2 + 15399 m^4 + 4644 m^6 + 496 m^8)
          / (15 (3+m^2)^3 (9+4m^2)^2)
  G(g, v) = v^2 I_d - I_X
  r1 = lim_{g->0} sqrt(I_X/I_d)     (computed via g in {1e-3, 5e-4, 2.5e-4})
  r2 = lim_{g->inf} sqrt(I_X'/I_d') (computed via g in {1e2, 1e3, 1e4})
Also: the analytic r1^2 = 84 I2 / (xi sh2xi I3), In = int y^n K0(y) e^{-y ch2xi},
and r2^2 = 186 exactly; Fig-4-style max location for v=10.
"""
import numpy as np
import mpmath as mp
from scipy.integrate import quad
from scipy.special import k0
from scipy.optimize import brentq, minimize_scalar

mp.mp.dps = 40
xi_mp = mp.findroot(lambda x: 2 * x * mp.coth(2 * x) - 3, mp.mpf("1.5"))
xi = float(xi_mp)
sh2 = float(mp.sinh(2 * xi_mp))
coth2 = float(mp.coth(2 * xi_mp))
ch2 = float(mp.cosh(2 * xi_mp))


def f_poly(m):
    return (m * (10206 + 21303 * m**2 + 15399 * m**4 + 4644 * m**6 + 496 * m**8)
            / (15 * (3 + m**2) ** 3 * (9 + 4 * m**2) ** 2))


def Id(g):
    val, err = quad(lambda y: y**3 * k0(y / sh2) * np.exp(-y * coth2)
                    / (3 + (g * xi) ** 2 * y**2), 0, np.inf, limit=400)
    return (1 / 12) * (2 / 15) * xi**2 * g**3 * val


def IX(g):
    val, err = quad(lambda y: y * f_poly(g * xi * y) * k0(y / sh2)
                    * np.exp(-y * coth2), 0, np.inf, limit=400)
    return g**2 * val


def main():
    print(f"xi = {mp.nstr(xi_mp, 30)}")
    print(f"sh2xi = {sh2!r}  ch2xi = {ch2!r}  coth2xi = {coth2!r}")
    print(f"2*xi*coth(2*xi) - 3 = {2*xi*coth2 - 3:.3e}")

    for g in (0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0):
        print(f"I_d({g}) = {Id(g):.17g}    I_X({g}) = {IX(g):.17g}")

    # r1 via the pinned extrapolation points
    gs = [1e-3, 5e-4, 2.5e-4]
    r1s = [np.sqrt(IX(g) / Id(g)) for g in gs]
    print(f"r1 raw points: {r1s}")
    # Richardson in g^2 on the two finest
    r1_rich = (4 * r1s[2] - r1s[1]) / 3
    print(f"r1 (Richardson) = {r1_rich!r}")

    # analytic r1: 84 I2/(xi sh2xi I3), In = int y^n K0(y) e^{-y ch2xi} dy
    I2 = quad(lambda y: y**2 * k0(y) * np.exp(-y * ch2), 0, np.inf)[0]
    I3 = quad(lambda y: y**3 * k0(y) * np.exp(-y * ch2), 0, np.inf)[0]
    r1_analytic = np.sqrt(84 * I2 / (xi * sh2 * I3))
    print(f"I2 = {I2:.17g}  I3 = {I3:.17g}")
    print(f"r1 (analytic) = {r1_analytic:.17g}")

    # r2 via derivative ratio at large g (central differences)
    def deriv(F, g, h):
        return (F(g + h) - F(g - h)) / (2 * h)

    r2s = []
    for g in (1e2, 1e3, 1e4):
        h = 1e-3 * g
        r2s.append(np.sqrt(deriv(IX, g, h) / deriv(Id, g, h)))
    print(f"r2 raw points: {r2s}  sqrt(186) = {np.sqrt(186)!r}")
    # extrapolate linearly in 1/g from the two largest
    r2_ext = (10 * r2s[2] - r2s[1]) / 9
    print(f"r2 (extrapolated) = {r2_ext!r}")

    # small-g scaling exponents
    e_d = np.log(Id(1e-2) / Id(1e-3)) / np.log(10)
    e_x = np.log(IX(1e-2) / IX(1e-3)) / np.log(10)
    print(f"small-g exponents: I_d {e_d:.4f}  I_X {e_x:.4f}")

    # G regimes
    def G(g, v):
        return v**2 * Id(g) - IX(g)

    grid = np.linspace(0.02, 20, 250)
    g3 = np.array([G(g, 3) for g in grid])
    print(f"v=3: max G on (0,20] = {g3.max():.6e} (expect < 0)")
    g14 = np.array([G(g, 14) for g in grid])
    print(f"v=14: min dG between grid pts = {np.diff(g14).min():.3e} (expect > 0)")
    res = minimize_scalar(lambda g: -G(g, 10), bounds=(0.1, 10), method="bounded",
                          options={"xatol": 1e-8})
    print(f"v=10: interior max at g = {res.x!r}, G = {-res.fun!r}")
    g10 = np.array([G(g, 10) for g in grid])
    print(f"v=10: G(0.02)={g10[0]:.3e} G(20)={g10[-1]:.3e} max={g10.max():.6e}")

    # I3d inner integrals at g=1 for unit tests
    v1 = quad(lambda y: y**3 * k0(y / sh2) * np.exp(-y * coth2)
              / (3 + xi**2 * y**2), 0, np.inf, limit=400)[0]
    print(f"inner I3d(1) = {v1!r}")
    v2 = quad(lambda y: y * f_poly(xi * y) * k0(y / sh2) * np.exp(-y * coth2),
              0, np.inf, limit=400)[0]
    print(f"inner IXint(1) = {v2!r}")
    print(f"K0(1) = {k0(1.0)!r}")


if __name__ == "__main__":
    main()
