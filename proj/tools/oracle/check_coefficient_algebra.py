#!/usr/bin/env python3
"""Master oracle for the action-coefficient algebra used by the C++ library.

Verified facts (all at 50-digit precision, random rational test points):
  A. b8+b9 == -4 mu^3 / (15 (3+mu^2))                       (pointwise)
  B. b1+b2 == target pointwise in the phi-sectors (mud=mudd=0), where
     target = -f(mu) mud^2 - 4 mu mud phid/(3+mu^2) - 2(3+2mu^2) phidd/(3+mu^2)
  C. The mu-sector mismatch is a pure total t-derivative:
     R_mud2(mu) == d/dmu R_mudd(mu), so over a period
     integral dt (b1+b2) == integral dt target   exactly.
  D. Integrated identity on a synthetic smooth periodic path mu(t), phi(t).
  E. A^T C A == 1 for the explicit A radicals, C the quadratic form of the
     leading-order action; alpha identities; spot values a8, a9 at mu=1.

The C++ acceptance test compares the PERIOD-INTEGRATED b1+b2 against the
closed form (fact C/D); b8+b9 is compared pointwise (fact A).
"""
import mpmath as mp

mp.mp.dps = 50


def build_A(mu):
    s = mp.sqrt(9 + 4 * mu**2)
    A11 = mp.mpf(1) / 2 * mp.sqrt(2 - 2 * mu / s)
    A12 = mp.mpf(1) / 2 * mp.sqrt(2 + 2 * mu / s)
    A21 = -mp.sqrt(mp.mpf(1) / 2 + 2 * mu**2 / 3 - mu * (15 + 8 * mu**2) / (6 * s))
    A22 = mp.sqrt(mp.mpf(1) / 2 + 2 * mu**2 / 3 + mu * (15 + 8 * mu**2) / (6 * s))
    return A11, A12, A21, A22


def a_coeffs(m, mud, mudd, phid, phidd):
    a1 = (90*m**9*phidd + 30*m**9*mudd + 90*m**8*phid**2 + 180*mud*m**8*phid
          + 62*mud**2*m**8 + 1035*m**7*phidd + 288*m**7*mudd + 810*m**6*phid**2
          + 2070*mud*m**6*phid + 780*mud**2*m**6 + 3645*m**5*phidd + 999*m**5*mudd
          + 2430*m**4*phid**2 + 7560*mud*m**4*phid + 2403*mud**2*m**4
          + 3645*m**3*phidd + 810*m**3*mudd + 2430*m**2*phid**2
          + 8910*mud*m**2*phid + 4590*mud**2*m**2 - 1215*m*phidd - 1215*m*mudd
          + 405*mud**2) / (15*m*(3+m**2)**4)
    a2 = -(30*m**9*phidd + 10*m**9*mudd + 30*m**8*phid**2 + 60*mud*m**8*phid
           + 20*mud**2*m**8 + 315*m**7*phidd + 96*m**7*mudd + 270*m**6*phid**2
           + 570*mud*m**6*phid + 198*mud**2*m**6 + 1125*m**5*phidd
           + 315*m**5*mudd + 810*m**4*phid**2 + 1800*mud*m**4*phid
           + 639*mud**2*m**4 + 1485*m**3*phidd + 306*m**3*mudd
           + 810*m**2*phid**2 + 1890*mud*m**2*phid + 1008*mud**2*m**2
           + 405*m*phidd - 135*m*mudd + 135*mud**2) / (5*m*(3+m**2)**4)
    a3 = (120*m**9*phidd + 40*m**9*mudd + 120*m**8*phid**2 + 240*mud*m**8*phid
          + 80*mud**2*m**8 + 1200*m**7*phidd + 363*m**7*mudd + 1080*m**6*phid**2
          + 2280*mud*m**6*phid + 792*mud**2*m**6 + 3780*m**5*phidd
          + 1017*m**5*mudd + 3240*m**4*phid**2 + 6840*mud*m**4*phid
          + 2412*mud**2*m**4 + 3240*m**3*phidd + 189*m**3*mudd
          + 3240*m**2*phid**2 + 5400*mud*m**2*phid + 3456*mud**2*m**2
          - 1620*m*phidd - 3240*mud*phid - 2025*m*mudd - 1620*mud**2) / (15*(3+m**2)**4)
    a4 = -(2*(30*m**6*phid + 14*mud*m**6 + 225*m**4*phid + 99*mud*m**4
             + 540*m**2*phid + 135*mud + 405*phid)) / (15*(3+m**2)**3)
    a5 = -(6*(5*m**4*phid + 3*mud*m**4 + 30*m**2*phid + 22*mud*m**2 + 15*mud
              + 45*phid)) / (5*(3+m**2)**3)
    a6 = (m*(20*m**4*phid + 13*mud*m**4 + 120*m**2*phid + 102*mud*m**2 + 45*mud
             + 180*phid)) / (5*(3+m**2)**3)
    a7 = (m*(20*m**4*phid + 11*mud*m**4 + 120*m**2*phid + 66*mud*m**2 - 45*mud
             + 180*phid)) / (5*(3+m**2)**3)
    a8 = (2*m*(-45 + 15*m**2 + 4*m**4)) / (15*(3+m**2)**2)
    a9 = (6*m*(5 + m**2)) / (5*(3+m**2)**2)
    a10 = -(45 + 60*m**2 + 11*m**4) / (5*(3+m**2)**2)
    a11 = -(-45 + m**4) / (5*(3+m**2)**2)
    return a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11


def b_sums(mu, mud, mudd, phid, phidd):
    """Return (b1+b2, b8+b9) assembled from the a's, A, and chain-rule dA."""
    A = build_A(mu)
    dA = [mp.diff(lambda m, i=i: build_A(m)[i], mu) for i in range(4)]
    ddA = [mp.diff(lambda m, i=i: build_A(m)[i], mu, 2) for i in range(4)]
    Ad = [dA[i] * mud for i in range(4)]
    Add = [ddA[i] * mud**2 + dA[i] * mudd for i in range(4)]
    A11, A12, A21, A22 = A
    A11d, A12d, A21d, A22d = Ad
    A11dd, A12dd, A21dd, A22dd = Add
    a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11 = a_coeffs(mu, mud, mudd, phid, phidd)

    b1 = (a4*A11*A11d + a6*A11*A21d + a7*A21*A11d + a5*A21*A21d
          + a8*A11*A11dd + a10*A11*A21dd + a11*A21*A11dd + a9*A21*A21dd
          + a1*A11**2 + a3*A21*A11 + a2*A21**2)
    b2 = (a4*A12*A12d + a6*A12*A22d + a7*A22*A12d + a5*A22*A22d
          + a8*A12*A12dd + a10*A12*A22dd + a11*A22*A12dd + a9*A22*A22dd
          + a1*A12**2 + a3*A22*A12 + a2*A22**2)
    b8 = a8*A11**2 + (a10 + a11)*A21*A11 + a9*A21**2
    b9 = a8*A12**2 + (a10 + a11)*A22*A12 + a9*A22**2
    return b1 + b2, b8 + b9


def target12(mu, mud, phid, phidd):
    f = (mu * (10206 + 21303*mu**2 + 15399*mu**4 + 4644*mu**6 + 496*mu**8)
         / (15 * (3+mu**2)**3 * (9+4*mu**2)**2))
    return -f*mud**2 - 4*mu*mud*phid/(3+mu**2) - 2*(3+2*mu**2)*phidd/(3+mu**2)


def target89(mu):
    return -4 * mu**3 / (15 * (3 + mu**2))


def main():
    import random
    rng = random.Random(13)
    tol = mp.mpf(10) ** (-38)
    ok = True

    # A: b8+b9 pointwise; B: phi-sectors of b1+b2 pointwise
    worstA = worstB = mp.mpf(0)
    for _ in range(8):
        mu = mp.mpf(rng.randint(1, 8000)) / 1000
        mud = mp.mpf(rng.randint(-3000, 3000)) / 1000
        mudd = mp.mpf(rng.randint(-3000, 3000)) / 1000
        phid = mp.mpf(rng.randint(-3000, 3000)) / 1000
        phidd = mp.mpf(rng.randint(-3000, 3000)) / 1000
        s12, s89 = b_sums(mu, mud, mudd, phid, phidd)
        worstA = max(worstA, abs(s89 - target89(mu)))
        s12p, _ = b_sums(mu, 0, 0, phid, phidd)
        worstB = max(worstB, abs(s12p - target12(mu, 0, phid, phidd)))
    print(f"A  b8+b9 pointwise:            max |res| = {mp.nstr(worstA, 3)}")
    print(f"B  b1+b2 phi-sectors pointwise: max |res| = {mp.nstr(worstB, 3)}")
    ok &= worstA < tol and worstB < tol

    # C: R_mud2 == d R_mudd / dmu
    def R_mudd(mu):
        s12, _ = b_sums(mu, 0, 1, 0, 0)
        return s12 - target12(mu, 0, 0, 0)

    def R_mud2(mu):
        s12, _ = b_sums(mu, 1, 0, 0, 0)
        return s12 - target12(mu, 1, 0, 0)

    worstC = mp.mpf(0)
    for mu_ in ("0.37", "0.9", "1.6", "2.8", "5.5"):
        mu = mp.mpf(mu_)
        worstC = max(worstC, abs(R_mud2(mu) - mp.diff(R_mudd, mu)))
    print(f"C  total-derivative relation:  max |res| = {mp.nstr(worstC, 3)}")
    ok &= worstC < tol

    # D: integrated identity over a smooth periodic path
    def path_residual():
        Tn = 96  # trapezoid on periodic integrand is spectrally accurate
        acc = mp.mpf(0)
        for j in range(Tn):
            t = mp.mpf(2) * mp.pi * j / Tn
            mu = mp.mpf("1.3") + mp.mpf("0.6") * mp.sin(t) + mp.mpf("0.2") * mp.cos(2 * t)
            mud = mp.mpf("0.6") * mp.cos(t) - mp.mpf("0.4") * mp.sin(2 * t)
            mudd = -mp.mpf("0.6") * mp.sin(t) - mp.mpf("0.8") * mp.cos(2 * t)
            phid = mp.mpf("0.5") * mp.cos(t) + mp.mpf("0.3")
            phidd = -mp.mpf("0.5") * mp.sin(t)
            s12, _ = b_sums(mu, mud, mudd, phid, phidd)
            acc += s12 - target12(mu, mud, phid, phidd)
        return acc / Tn

    resD = abs(path_residual())
    print(f"D  integrated periodic path:   |res| = {mp.nstr(resD, 3)}")
    ok &= resD < mp.mpf(10) ** (-30)

    # E: A^T C A = 1, alpha identities, spot values
    worstE = mp.mpf(0)
    for _ in range(6):
        mu = mp.mpf(rng.randint(1, 9000)) / 1000
        A11, A12, A21, A22 = build_A(mu)
        d = 3 + mu**2
        C = [[(3 + 4 * mu**2) / d, -3 * mu / d], [-3 * mu / d, 3 / d]]
        # M = A^T C A
        def q(c1, c2, d1, d2):
            return (c1 * C[0][0] * d1 + c1 * C[0][1] * d2
                    + c2 * C[1][0] * d1 + c2 * C[1][1] * d2)
        worstE = max(worstE,
                     abs(q(A11, A21, A11, A21) - 1),
                     abs(q(A12, A22, A12, A22) - 1),
                     abs(q(A11, A21, A12, A22)))
        s = mp.sqrt(9 + 4 * mu**2)
        al1 = (3 + 2 * mu**2 - mu * s) / d
        al2 = (3 + 2 * mu**2 + mu * s) / d
        worstE = max(worstE, abs(al1 * al2 - 3 / d),
                     abs(al1 + al2 - 2 * (3 + 2 * mu**2) / d))
    a_at_1 = a_coeffs(mp.mpf(1), 0, 0, 0, 0)
    worstE = max(worstE, abs(a_at_1[7] + mp.mpf(13) / 60),
                 abs(a_at_1[8] - mp.mpf(9) / 20))
    print(f"E  quadratic form + spots:     max |res| = {mp.nstr(worstE, 3)}")
    ok &= worstE < tol

    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
