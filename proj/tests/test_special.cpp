#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fiberinfo/special.hpp"

#if defined(HAVE_GSL)
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_bessel.h>
#endif

using namespace fiberinfo;

TEST_CASE("bessel_k0 frozen value and domain") {
    // 50-digit reference: K0(1) = 0.42102443824070833...
    CHECK(bessel_k0(1.0) == doctest::Approx(0.42102443824070823).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_k0(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k0(-2.0), std::domain_error);
}

TEST_CASE("bessel_k0 satisfies the large-argument envelope") {
    for (double x : {12.0, 20.0, 40.0}) {
        const double bound = std::sqrt(3.141592653589793 / (2 * x)) * std::exp(-x);
        CHECK(bessel_k0(x) < bound);
        CHECK(bessel_k0(x) > 0.9 * bound);
    }
}

#if defined(HAVE_GSL)
TEST_CASE("bessel_k0 agrees with GSL across the crossover") {
    for (double x = 0.05; x < 30.0; x *= 1.17) {
        const double ref = gsl_sf_bessel_K0(x);
        CHECK(bessel_k0(x) == doctest::Approx(ref).epsilon(5e-9));
    }
}
#endif

TEST_CASE("gauss-legendre nodes: small closed forms and exactness") {
    const auto g2 = gauss_legendre(2);
    CHECK(g2.x[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g2.x[1] == doctest::Approx(+1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g2.w[0] == doctest::Approx(1.0).epsilon(1e-14));

    for (std::size_t n : {5u, 16u, 32u}) {
        const auto g = gauss_legendre(n);
        double sw = 0.0, sx2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sw += g.w[i];
            sx2 += g.w[i] * g.x[i] * g.x[i];
        }
        CHECK(sw == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(sx2 == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
        // degree-(2n-1) exactness spot check
        double s = 0.0;
        const int p = static_cast<int>(2 * n - 2);
        for (std::size_t i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], p);
        CHECK(s == doctest::Approx(2.0 / (p + 1)).epsilon(1e-12));
    }
}

TEST_CASE("adaptive quadrature on closed forms") {
    auto poly = [](double x) { return x * x; };
    auto r1 = integrate_adaptive(poly, 0.0, 1.0, 1e-12);
    CHECK(r1.converged);
    CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    auto decay = [](double x) { return std::exp(-x); };
    auto r2 = integrate_adaptive(decay, 0.0, 40.0, 1e-12);
    CHECK(r2.value == doctest::Approx(1.0 - std::exp(-40.0)).epsilon(1e-12));

    auto osc = [](double x) { return std::cos(50.0 * x); };
    auto r3 = integrate_adaptive(osc, 0.0, 1.0, 1e-11, 1e-14);
    CHECK(r3.value == doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-9));

    // integrable log singularity at the origin
    auto logsing = [](double x) { return std::log(x); };
    auto r4 = integrate_adaptive(logsing, 0.0, 1.0, 1e-10, 1e-13, 8, 5000);
    CHECK(r4.value == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("doubling the initial panel count is stable") {
    auto f = [](double y) { return y * bessel_k0(y + 1e-12) * std::exp(-1.005 * y); };
    const auto a = integrate_adaptive(f, 1e-14, 40.0, 1e-10, 0.0, 8);
    const auto b = integrate_adaptive(f, 1e-14, 40.0, 1e-10, 0.0, 16);
    CHECK(std::abs(a.value - b.value) <= 1e-8 * std::abs(a.value));
}

#if defined(HAVE_GSL)
TEST_CASE("adaptive quadrature agrees with GSL QAG on a bessel-weighted integrand") {
    struct Params { double c; };
    auto f = [](double y) { return y * bessel_k0(y) * std::exp(-1.3 * y); };
    const auto mine = integrate_adaptive(f, 1e-14, 35.0, 1e-11);

    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
    gsl_function F;
    F.function = [](double y, void*) -> double {
        return y * gsl_sf_bessel_K0(y) * std::exp(-1.3 * y);
    };
    F.params = nullptr;
    double ref = 0.0, err = 0.0;
    gsl_integration_qag(&F, 1e-14, 35.0, 0.0, 1e-11, 2000, GSL_INTEG_GAUSS21, ws,
                        &ref, &err);
    gsl_integration_workspace_free(ws);
    CHECK(mine.value == doctest::Approx(ref).epsilon(1e-9));
}
#endif
