#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "fiberinfo/action.hpp"
#include "fiberinfo/channel.hpp"
#include "fiberinfo/fft.hpp"
#include "fiberinfo/grid.hpp"
#include "fiberinfo/rng.hpp"
#include "fiberinfo/special.hpp"

using namespace fiberinfo;

namespace {

Signal tone(const GridSpec& g, double P0, long long k0) {
    Signal X(g.M);
    const double w0 = 2.0 * pi * static_cast<double>(k0) / g.T;
    for (std::size_t n = 0; n < g.M; ++n)
        X[n] = std::sqrt(P0) * std::polar(1.0, w0 * g.t_fine(n));
    return X;
}

// amplitude- and phase-modulated signal with analytically known derivatives
struct ModulatedSignal {
    Signal X;
    std::vector<double> rho, rho_d, rho_dd, phi_d, phi_dd;
};

ModulatedSignal modulated(const GridSpec& g) {
    ModulatedSignal m;
    m.X.resize(g.M);
    m.rho.resize(g.M);
    m.rho_d.resize(g.M);
    m.rho_dd.resize(g.M);
    m.phi_d.resize(g.M);
    m.phi_dd.resize(g.M);
    const double w = 2.0 * pi / g.T;
    for (std::size_t n = 0; n < g.M; ++n) {
        const double t = g.t_fine(n);
        m.rho[n] = 2.0 + std::cos(w * t);
        m.rho_d[n] = -w * std::sin(w * t);
        m.rho_dd[n] = -w * w * std::cos(w * t);
        const double ph = 0.8 * std::sin(w * t);
        m.phi_d[n] = 0.8 * w * std::cos(w * t);
        m.phi_dd[n] = -0.8 * w * w * std::sin(w * t);
        m.X[n] = m.rho[n] * std::polar(1.0, ph);
    }
    return m;
}

// random band-limited signal with a DC pedestal (amplitude stays positive)
Signal random_bandlimited(const GridSpec& g, std::uint64_t stream) {
    Philox rng(811, stream);
    Signal hat(g.M, cplx(0.0, 0.0));
    const long long K = static_cast<long long>(g.M) / 16;
    for (std::size_t i = 0; i < g.M; ++i) {
        const long long k = signed_mode(i, g.M);
        if (k == 0 || std::llabs(k) > K) continue;
        const double scale = 0.35 / (1.0 + std::abs(static_cast<double>(k)));
        hat[i] = cplx(scale * rng.next_gaussian(), scale * rng.next_gaussian());
    }
    hat[0] = 1.4;  // pedestal
    return idft(hat);
}

double mu_of(const PolarDecomposition& d, std::size_t i) { return d.mu[i]; }

}  // namespace

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

TEST_CASE("decompose identifies a rotating tone") {
    const GridSpec g(1.0, 128, 16);
    const double P0 = 1.7, gamma = 1.5, L = 2.0;
    const Signal X = tone(g, P0, -3);
    const double w0 = -2.0 * pi * 3.0 / g.T;

    const auto d = decompose(X, g.T, gamma, L);
    for (std::size_t n = 0; n < g.M; ++n) {
        CHECK(d.rho[n] == doctest::Approx(std::sqrt(P0)).epsilon(1e-12));
        CHECK(std::abs(d.rho_d[n]) < 1e-9);
        CHECK(std::abs(d.rho_dd[n]) < 1e-7);
        CHECK(d.phi_d[n] == doctest::Approx(w0).epsilon(1e-12));
        CHECK(std::abs(d.phi_dd[n]) < 1e-7);
        CHECK(d.mu[n] == doctest::Approx(gamma * L * P0).epsilon(1e-12));
    }
}

TEST_CASE("decompose matches analytic derivatives of a modulated signal") {
    const GridSpec g(1.0, 256, 32);
    const auto m = modulated(g);
    const auto d = decompose(m.X, g.T, 1.0, 1.0);
    for (std::size_t n = 0; n < g.M; ++n) {
        CHECK(d.rho[n] == doctest::Approx(m.rho[n]).epsilon(1e-12));
        CHECK(d.rho_d[n] == doctest::Approx(m.rho_d[n]).epsilon(1e-9));
        CHECK(d.rho_dd[n] == doctest::Approx(m.rho_dd[n]).epsilon(1e-8));
        CHECK(d.phi_d[n] == doctest::Approx(m.phi_d[n]).epsilon(1e-9));
        CHECK(d.phi_dd[n] == doctest::Approx(m.phi_dd[n]).epsilon(1e-8));
    }
    // unwrapped angle reconstructs the signal
    for (std::size_t n = 0; n < g.M; ++n) {
        const cplx rec = d.rho[n] * std::polar(1.0, d.phi[n]);
        CHECK(std::abs(rec - m.X[n]) < 1e-12);
    }
}

TEST_CASE("decompose rejects signals that vanish over most of the window") {
    const GridSpec g(1.0, 128, 16);
    Signal X(g.M, cplx(0.0, 0.0));
    for (std::size_t n = 0; n < g.M / 4; ++n) X[n] = 1.0;
    CHECK_THROWS_AS(decompose(X, g.T, 1.0, 1.0), std::runtime_error);
    const Signal zero(g.M, cplx(0.0, 0.0));
    CHECK_THROWS_AS(decompose(zero, g.T, 1.0, 1.0), std::runtime_error);
}

// ---------------------------------------------------------------------------
// rotation geometry
// ---------------------------------------------------------------------------

TEST_CASE("rotation at zero Kerr phase is the 45-degree map") {
    const GridSpec g(1.0, 64, 8);
    const Signal X = tone(g, 1.0, 1);
    const auto d = decompose(X, g.T, 0.0, 1.0);  // gamma = 0 -> mu = 0
    const auto rc = rotation_coeffs(d);
    const double r2 = std::sqrt(0.5);
    for (std::size_t i = 0; i < g.M; ++i) {
        CHECK(rc.theta[i] == doctest::Approx(pi / 4.0).epsilon(1e-14));
        CHECK(rc.A11[i] == doctest::Approx(r2).epsilon(1e-14));
        CHECK(rc.A12[i] == doctest::Approx(r2).epsilon(1e-14));
        CHECK(rc.A21[i] == doctest::Approx(-r2).epsilon(1e-14));
        CHECK(rc.A22[i] == doctest::Approx(r2).epsilon(1e-14));
        CHECK(rc.alpha1[i] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rc.alpha2[i] == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("rotation spot values at unit Kerr phase") {
    const GridSpec g(1.0, 64, 8);
    const double P0 = 1.3;
    const Signal X = tone(g, P0, 0);
    const auto d = decompose(X, g.T, 1.0 / P0, 1.0);  // mu = 1 exactly
    const auto rc = rotation_coeffs(d);

    const double s13 = std::sqrt(13.0);
    CHECK(rc.alpha1[0] == doctest::Approx((5.0 - s13) / 4.0).epsilon(1e-15));
    CHECK(rc.alpha2[0] == doctest::Approx((5.0 + s13) / 4.0).epsilon(1e-15));
    CHECK(rc.A11[0] == doctest::Approx(0.60110311174015122).epsilon(1e-14));
    CHECK(rc.A12[0] == doctest::Approx(0.79917147662833117).epsilon(1e-14));
    CHECK(rc.A21[0] == doctest::Approx(-0.32170062257992422).epsilon(1e-14));
    CHECK(rc.A22[0] == doctest::Approx(1.4932655633761272).epsilon(1e-14));
}

TEST_CASE("rotation diagonalizes the leading quadratic form") {
    const GridSpec g(1.0, 128, 16);
    const auto m = modulated(g);
    const auto d = decompose(m.X, g.T, 0.9, 1.0);
    const auto rc = rotation_coeffs(d);

    for (std::size_t i = 0; i < g.M; i += 7) {
        const double mu = mu_of(d, i);
        const double den = 3.0 + mu * mu;
        const double C11 = (3.0 + 4.0 * mu * mu) / den;
        const double C12 = -3.0 * mu / den;
        const double C22 = 3.0 / den;
        const double p = rc.A11[i], q = rc.A12[i], r = rc.A21[i], s = rc.A22[i];
        // A^T C A = identity
        CHECK(p * (C11 * p + C12 * r) + r * (C12 * p + C22 * r) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(q * (C11 * q + C12 * s) + s * (C12 * q + C22 * s) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(p * (C11 * q + C12 * s) + r * (C12 * q + C22 * s)) < 1e-12);
        // eigenvalue identities
        CHECK(rc.alpha1[i] * rc.alpha2[i] == doctest::Approx(3.0 / den).epsilon(1e-13));
        CHECK(rc.alpha1[i] + rc.alpha2[i] ==
              doctest::Approx(2.0 * (3.0 + 2.0 * mu * mu) / den).epsilon(1e-13));
        CHECK(rc.alpha1[i] < rc.alpha2[i]);
        // output map determinant
        const double detB = rc.B11[i] * rc.B22[i] - rc.B12[i] * rc.B21[i];
        CHECK(detB == doctest::Approx(std::sqrt(1.0 + mu * mu / 3.0)).epsilon(1e-13));
    }
}

TEST_CASE("rotation time derivatives follow the chain rule") {
    const GridSpec g(1.0, 256, 32);
    const auto m = modulated(g);
    const auto d = decompose(m.X, g.T, 0.8, 1.0);
    const auto rc = rotation_coeffs(d);

    // spectral derivative of the sampled A(t) series vs the chain-rule values
    for (const auto* pair :
         {&std::make_pair(&rc.A11, &rc.A11_d), &std::make_pair(&rc.A12, &rc.A12_d),
          &std::make_pair(&rc.A21, &rc.A21_d), &std::make_pair(&rc.A22, &rc.A22_d)}) {
        Signal series(g.M);
        for (std::size_t i = 0; i < g.M; ++i) series[i] = (*pair->first)[i];
        const Signal der = spectral_derivative(series, g.T, 1);
        for (std::size_t i = 0; i < g.M; ++i)
            CHECK(der[i].real() ==
                  doctest::Approx((*pair->second)[i]).epsilon(1e-7).scale(1.0));
    }
    // and the second derivatives
    for (const auto* pair : {&std::make_pair(&rc.A11, &rc.A11_dd),
                             &std::make_pair(&rc.A22, &rc.A22_dd)}) {
        Signal series(g.M);
        for (std::size_t i = 0; i < g.M; ++i) series[i] = (*pair->first)[i];
        const Signal der = spectral_derivative(series, g.T, 2);
        for (std::size_t i = 0; i < g.M; ++i)
            CHECK(der[i].real() ==
                  doctest::Approx((*pair->second)[i]).epsilon(1e-6).scale(10.0));
    }
}

// ---------------------------------------------------------------------------
// leading path
// ---------------------------------------------------------------------------

TEST_CASE("leading path satisfies boundary conditions and equation") {
    const double L = 1.7;
    for (double mu : {0.0, 0.4, 1.0, 2.7}) {
        for (const auto& [x, y] : {std::make_pair(0.9, -0.3),
                                   std::make_pair(-0.2, 1.1)}) {
            CHECK(std::abs(leading_path(mu, L, x, y, 0.0)) < 1e-15);
            CHECK(std::abs(leading_path(mu, L, x, y, L) - cplx(x, y)) < 1e-12);

            // second-order equation via finite differences
            const double h = 1e-4 * L;
            for (double z : {0.3 * L, 0.62 * L}) {
                const cplx km = leading_path(mu, L, x, y, z - h);
                const cplx k0 = leading_path(mu, L, x, y, z);
                const cplx kp = leading_path(mu, L, x, y, z + h);
                const cplx kdd = (kp - 2.0 * k0 + km) / (h * h);
                const cplx kd = (kp - km) / (2.0 * h);
                const double w = mu / L;
                const cplx resid =
                    kdd - cplx(0.0, 2.0 * w) * kd - 4.0 * w * w * k0.real();
                CHECK(std::abs(resid) < 1e-6);
                // analytic z-derivative agrees with the difference quotient
                CHECK(std::abs(leading_path_dz(mu, L, x, y, z) - kd) < 1e-7);
            }
        }
    }
}

TEST_CASE("leading path action integral equals the closed-form density") {
    const double L = 1.3;
    const auto rule = gauss_legendre(32);
    for (double mu : {0.0, 0.7, 1.9}) {
        const double x = 0.8, y = -0.45;
        double acc = 0.0;
        for (std::size_t n = 0; n < rule.x.size(); ++n) {
            const double z = 0.5 * L * (rule.x[n] + 1.0);
            const cplx k = leading_path(mu, L, x, y, z);
            const cplx kd = leading_path_dz(mu, L, x, y, z);
            const cplx dens = kd - cplx(0.0, 2.0 * mu / L) * k.real();
            acc += 0.5 * L * rule.w[n] * std::norm(dens);
        }
        CHECK(acc == doctest::Approx(leading_action_density(mu, L, x, y))
                         .epsilon(1e-12));
    }
}

// ---------------------------------------------------------------------------
// correction coefficients
// ---------------------------------------------------------------------------

TEST_CASE("static correction coefficients at unit Kerr phase") {
    const GridSpec g(1.0, 64, 8);
    const double P0 = 2.2;
    const Signal X = tone(g, P0, 0);
    const auto d = decompose(X, g.T, 1.0 / P0, 1.0);  // mu = 1
    const auto a = correction_coeffs_xy(d);
    CHECK(a[7][0] == doctest::Approx(-13.0 / 60.0).epsilon(1e-13));
    CHECK(a[8][0] == doctest::Approx(9.0 / 20.0).epsilon(1e-13));
}

TEST_CASE("rotated coefficient sums reduce to the closed-form weights") {
    // b8 + b9 pointwise; b1 + b2 after integration over the period (their
    // pointwise mismatch is a total time derivative)
    const GridSpec g(1.0, 256, 32);
    const double gamma = 1.5, L = 1.0;

    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        const Signal X = random_bandlimited(g, trial);
        const auto d = decompose(X, g.T, gamma, L);
        const auto rc = rotation_coeffs(d);
        const auto b = correction_coeffs_rotated(d, rc);

        double max_gd = 0.0;
        for (std::size_t i = 0; i < g.M; ++i)
            max_gd = std::max(max_gd, std::abs(spectral_weight_gd(d.mu[i])));
        for (std::size_t i = 0; i < g.M; ++i) {
            const double lhs = b[7][i] + b[8][i];
            const double rhs = -spectral_weight_gd(d.mu[i]);
            CHECK(std::abs(lhs - rhs) < 1e-8 * max_gd);
        }

        double sum_b = 0.0, sum_t = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < g.M; ++i) {
            sum_b += b[0][i] + b[1][i];
            const double mu = d.mu[i], mud = d.mu_d[i];
            const double phid = d.phi_d[i], phidd = d.phi_dd[i];
            const double den = 3.0 + mu * mu;
            const double t1 = bandwidth_weight_f(mu) * mud * mud;
            const double t2 = 4.0 * mu * mud * phid / den;
            const double t3 = 2.0 * (3.0 + 2.0 * mu * mu) * phidd / den;
            sum_t += -(t1 + t2 + t3);
            scale += std::abs(t1) + std::abs(t2) + std::abs(t3);
        }
        CHECK(std::abs(sum_b - sum_t) < 1e-8 * scale);
    }
}

// ---------------------------------------------------------------------------
// fluctuation coordinates, actions, normalization trace
// ---------------------------------------------------------------------------

TEST_CASE("leading action agrees between rotated and quadratic-form routes") {
    const GridSpec g(1.0, 128, 16);
    const auto m = modulated(g);
    const ChannelParams p{0.0, 1.1, 1.4, 1e-4};

    const Signal Xd = decimate(m.X, g);
    const auto d = decompose(Xd, g.T, p.gamma, p.L);
    const auto rc = rotation_coeffs(d);

    // synthetic observation: reference output plus a known fluctuation
    const Signal Phi_d = decimate(phase_rotated_input(m.X, p.gamma, p.L), g);
    Signal Yd(g.Md);
    for (std::size_t j = 0; j < g.Md; ++j) {
        const double xj = 0.02 * std::cos(2.0 * pi * static_cast<double>(j) /
                                          static_cast<double>(g.Md));
        const double yj = 0.015 * std::sin(4.0 * pi * static_cast<double>(j) /
                                           static_cast<double>(g.Md));
        Yd[j] = Phi_d[j] +
                cplx(xj, yj) * d.unit_phase[j] * std::polar(1.0, d.mu[j]);
    }

    const auto f = fluctuation_coords(d, rc, Yd, Phi_d);
    const double S0 = leading_action(f, g.dt_coarse(), p.L);
    double direct = 0.0;
    for (std::size_t j = 0; j < g.Md; ++j)
        direct += leading_action_density(d.mu[j], p.L, f.x[j], f.y[j]);
    direct *= g.dt_coarse();
    CHECK(S0 == doctest::Approx(direct).epsilon(1e-12));

    // round trip through the raw-output map B
    for (std::size_t j = 0; j < g.Md; ++j) {
        const double u = rc.B11[j] * f.y1[j] + rc.B12[j] * f.y2[j];
        const double v = rc.B21[j] * f.y1[j] + rc.B22[j] * f.y2[j];
        const cplx w = cplx(u, v) * std::polar(1.0, -(d.phi[j] + d.mu[j]));
        CHECK(w.real() == doctest::Approx(f.x[j]).epsilon(1e-11).scale(0.02));
        CHECK(w.imag() == doctest::Approx(f.y[j]).epsilon(1e-11).scale(0.02));
    }
}

namespace {

// dense determinant by Gaussian elimination with partial pivoting
double dense_det(std::vector<std::vector<double>> A) {
    const std::size_t n = A.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        if (piv != c) {
            std::swap(A[piv], A[c]);
            det = -det;
        }
        det *= A[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
        }
    }
    return det;
}

}  // namespace

TEST_CASE("normalization trace matches the exact Gaussian determinant") {
    const GridSpec g(1.0, 32, 4);
    const auto m = modulated(g);
    const ChannelParams p{1e-4, 1.5, 1.0, 2e-4};

    const Signal Xd = decimate(m.X, g);
    const auto d = decompose(Xd, g.T, p.gamma, p.L);
    const auto rc = rotation_coeffs(d);
    const auto b = correction_coeffs_rotated(d, rc);
    const double r_trace = correction_trace(b, g.Md, g.T, p.beta, p.L);

    // quadratic form via polarization of the action evaluator
    const std::size_t n = 2 * g.Md;
    auto action_of = [&](const std::vector<double>& Y) {
        FluctuationCoords f;
        f.y1.assign(Y.begin(), Y.begin() + g.Md);
        f.y2.assign(Y.begin() + g.Md, Y.end());
        f.x.assign(g.Md, 0.0);
        f.y.assign(g.Md, 0.0);
        return (leading_action(f, g.dt_coarse(), p.L) +
                correction_action(b, f, g.T, p.beta)) /
               p.Q;
    };
    std::vector<std::vector<double>> Mfull(n, std::vector<double>(n, 0.0));
    std::vector<double> ei(n, 0.0), ej(n, 0.0), eij(n, 0.0);
    std::vector<double> diag(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(ei.begin(), ei.end(), 0.0);
        ei[i] = 1.0;
        diag[i] = action_of(ei);
        Mfull[i][i] = diag[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::fill(eij.begin(), eij.end(), 0.0);
            eij[i] = 1.0;
            eij[j] = 1.0;
            const double v = 0.5 * (action_of(eij) - diag[i] - diag[j]);
            Mfull[i][j] = v;
            Mfull[j][i] = v;
        }

    const double m0 = g.dt_coarse() / (p.Q * p.L);
    std::vector<std::vector<double>> M0(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) M0[i][i] = m0;

    const double r_exact =
        std::sqrt(dense_det(M0) / dense_det(Mfull)) - 1.0;
    // agreement to second order in the correction
    CHECK(std::abs(r_trace) > 1e-5);  // the test probes something nonzero
    CHECK(std::abs(r_trace - r_exact) < 20.0 * r_trace * r_trace);
}

TEST_CASE("conditional density is correctly normalized at zero dispersion") {
    const GridSpec g(1.0, 64, 8);
    const auto m = modulated(g);
    const ChannelParams p{0.0, 1.2, 1.0, 2e-4};

    // at the deterministic output the log-density is exactly the log-norm
    const Signal Phi_d = decimate(phase_rotated_input(m.X, p.gamma, p.L), g);
    const auto lp = log_cond_pdf(m.X, Phi_d, g, p);
    CHECK(lp.S0 == doctest::Approx(0.0).epsilon(0.0).scale(1e-14));
    CHECK(lp.S1 == 0.0);
    CHECK(lp.trace_ratio == 0.0);
    const double expect =
        static_cast<double>(g.Md) * std::log(g.dt_coarse() / (pi * p.Q * p.L));
    CHECK(lp.value == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("rotated receiver coordinates are whitened by the leading action") {
    // Monte Carlo through the real zero-dispersion pipeline: the rotated
    // coordinates must come out iso-variance Q*L/(2 dt), making the expected
    // leading action per degree of freedom Q/2 (Wick).
    const GridSpec g(1.0, 64, 4);
    const auto m = modulated(g);
    const ChannelParams p{0.0, 1.5, 1.0, 2e-4};

    const Signal Xd = decimate(m.X, g);
    const auto d = decompose(Xd, g.T, p.gamma, p.L);
    const auto rc = rotation_coeffs(d);
    const Signal Phi_d = decimate(phase_rotated_input(m.X, p.gamma, p.L), g);

    const std::size_t N = 2000;
    double s0_acc = 0.0, v1_acc = 0.0, v2_acc = 0.0;
    for (std::size_t rep = 0; rep < N; ++rep) {
        Philox rng(515, rep);
        const Signal Y = split_step(m.X, g, p, 100, &rng).output;
        const Signal Yd = decimate(Y, g);
        const auto f = fluctuation_coords(d, rc, Yd, Phi_d);
        s0_acc += leading_action(f, g.dt_coarse(), p.L) / p.Q;
        for (std::size_t j = 0; j < g.Md; ++j) {
            v1_acc += f.y1[j] * f.y1[j];
            v2_acc += f.y2[j] * f.y2[j];
        }
    }
    const double mean_s0 = s0_acc / static_cast<double>(N);
    const double expect_var = p.Q * p.L / (2.0 * g.dt_coarse());
    const double var1 = v1_acc / static_cast<double>(N * g.Md);
    const double var2 = v2_acc / static_cast<double>(N * g.Md);

    // E[S0/Q] = Md with spread sqrt(Md/N); allow four sigma plus a small
    // systematic margin for the finite-noise corrections
    const double tol = 4.0 * std::sqrt(static_cast<double>(g.Md) /
                                       static_cast<double>(N)) +
                       0.02 * static_cast<double>(g.Md);
    CHECK(std::abs(mean_s0 - static_cast<double>(g.Md)) < tol);
    CHECK(std::abs(var1 - expect_var) / expect_var < 0.10);
    CHECK(std::abs(var2 - expect_var) / expect_var < 0.10);
}

// ---------------------------------------------------------------------------
// Green kernels and the correction path
// ---------------------------------------------------------------------------

TEST_CASE("Green kernels reduce to the free kernel at zero Kerr phase") {
    for (double zh : {0.15, 0.5, 0.85}) {
        for (double zp : {0.2, 0.6, 0.9}) {
            const cplx GF = green_kernel_F(zh, zp, 1e-12);
            const cplx GFb = green_kernel_Fbar(zh, zp, 1e-12);
            const double expect = (zh <= zp) ? zh * (1.0 - zp) : zp * (1.0 - zh);
            CHECK(std::abs(GF - expect) < 1e-10);
            CHECK(std::abs(GFb) < 1e-10);
        }
    }
}

TEST_CASE("Green kernels are continuous across the diagonal") {
    for (double mu : {0.3, 1.5, 3.0}) {
        for (double z : {0.25, 0.6}) {
            const double eps = 1e-9;
            CHECK(std::abs(green_kernel_F(z - eps, z, mu) -
                           green_kernel_F(z + eps, z, mu)) < 1e-6);
            CHECK(std::abs(green_kernel_Fbar(z - eps, z, mu) -
                           green_kernel_Fbar(z + eps, z, mu)) < 1e-6);
        }
    }
}

TEST_CASE("correction path solves its boundary-value problem") {
    const GridSpec g(1.0, 64, 16);
    const auto m = modulated(g);
    const ChannelParams p{1e-3, 1.2, 1.0, 2e-4};

    const Signal Xd = decimate(m.X, g);
    const auto d = decompose(Xd, g.T, p.gamma, p.L);
    const auto rc = rotation_coeffs(d);

    const Signal Phi_d = decimate(phase_rotated_input(m.X, p.gamma, p.L), g);
    Signal Yd(g.Md);
    for (std::size_t j = 0; j < g.Md; ++j) {
        const double xj = 0.01 * std::cos(2.0 * pi * static_cast<double>(j) /
                                              static_cast<double>(g.Md) +
                                          0.3);
        const double yj = 0.01 * std::sin(4.0 * pi * static_cast<double>(j) /
                                          static_cast<double>(g.Md));
        Yd[j] = Phi_d[j] +
                cplx(xj, yj) * d.unit_phase[j] * std::polar(1.0, d.mu[j]);
    }
    const auto f = fluctuation_coords(d, rc, Yd, Phi_d);

    // Dirichlet ends vanish identically through the kernels
    for (const cplx& v : correction_path(d, f, g, p, 0.0)) CHECK(std::abs(v) == 0.0);
    for (const cplx& v : correction_path(d, f, g, p, p.L)) CHECK(std::abs(v) == 0.0);

    // interior residual of the linearized equation, fourth-order stencils
    const std::size_t nz = 96;
    const double h = p.L / static_cast<double>(nz);
    std::vector<std::vector<cplx>> k1(nz + 1);
    for (std::size_t i = 0; i <= nz; ++i)
        k1[i] = correction_path(d, f, g, p, static_cast<double>(i) * h);

    double fmax = 0.0;
    std::vector<std::vector<cplx>> Fz(nz + 1);
    for (std::size_t i = 2; i + 2 <= nz; ++i) {
        Fz[i] = correction_source(d, f, g, p, static_cast<double>(i) * h);
        for (const cplx& v : Fz[i]) fmax = std::max(fmax, std::abs(v));
    }
    REQUIRE(fmax > 0.0);

    double worst = 0.0;
    for (std::size_t i = 2; i + 2 <= nz; ++i) {
        for (std::size_t j = 0; j < g.Md; ++j) {
            const cplx kdd = (-k1[i - 2][j] + 16.0 * k1[i - 1][j] - 30.0 * k1[i][j] +
                              16.0 * k1[i + 1][j] - k1[i + 2][j]) /
                             (12.0 * h * h);
            const cplx kd = (k1[i - 2][j] - 8.0 * k1[i - 1][j] +
                             8.0 * k1[i + 1][j] - k1[i + 2][j]) /
                            (12.0 * h);
            const double w = d.mu[j] / p.L;
            const cplx resid = kdd - cplx(0.0, 2.0 * w) * kd -
                               4.0 * w * w * k1[i][j].real() - Fz[i][j];
            worst = std::max(worst, std::abs(resid));
        }
    }
    CHECK(worst / fmax < 1e-4);
}
