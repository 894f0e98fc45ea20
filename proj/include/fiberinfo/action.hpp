#pragma once

// Saddle-point machinery for the conditional density of the received signal.
//
// Around the zero-dispersion solution, the most likely noise history that
// carries the input to a given output is the minimizer of a quadratic
// action.  At leading order in the dispersion coefficient the minimizer and
// its action are available in closed form per time sample; the first
// correction enters through eleven quadratic coefficients in the rotated
// receiver coordinates, plus a boundary-value correction path used only for
// validation.  All time derivatives are spectral on the grid they act on.

#include <array>
#include <cstddef>
#include <vector>

#include "fiberinfo/channel.hpp"
#include "fiberinfo/grid.hpp"

namespace fiberinfo {

// ---------------------------------------------------------------------------
// Polar decomposition of the input and its Kerr phase
// ---------------------------------------------------------------------------

struct PolarDecomposition {
    std::vector<double> rho;         // |X|
    std::vector<double> phi;         // unwrapped phase of X
    std::vector<cplx> unit_phase;    // e^{i phi} taken pointwise (no unwrap needed)
    std::vector<double> rho_d, rho_dd;    // d rho/dt, d2 rho/dt2
    std::vector<double> phi_d, phi_dd;    // d phi/dt, d2 phi/dt2
    std::vector<double> mu, mu_d, mu_dd;  // mu = gamma L rho^2 and derivatives
    double eps_amp = 0.0;            // amplitude floor used for 1/rho guards
};

// Amplitude/phase split with spectral derivatives of X itself; the ratio
// route (derivatives of X divided by e^{i phi}) avoids differentiating the
// unwrapped phase.  Samples with |X| below a floor tied to the mean power
// are regularized; if more than half the window sits below the floor the
// decomposition is meaningless and this throws.
PolarDecomposition decompose(const Signal& X, double T, double gamma, double L);

// ---------------------------------------------------------------------------
// Receiver rotation: diagonalizing the leading quadratic form
// ---------------------------------------------------------------------------

// Per-sample geometry of the leading-order Gaussian: rotation angle, the two
// variance eigenvalues, the map A from rotated coordinates (y1, y2) to the
// phase-referenced fluctuation quadratures (x, y), its first two time
// derivatives (needed by the correction coefficients), and the map B from
// (y1, y2) to raw output quadratures.
struct RotationCoeffs {
    std::vector<double> theta;             // rotation angle, in (0, pi/2]
    std::vector<double> alpha1, alpha2;    // quadratic-form eigenvalues, alpha1 < alpha2
    // A = [[A11, A12], [A21, A22]],  (x, y)^T = A (y1, y2)^T
    std::vector<double> A11, A12, A21, A22;
    std::vector<double> A11_d, A12_d, A21_d, A22_d;      // d/dt
    std::vector<double> A11_dd, A12_dd, A21_dd, A22_dd;  // d2/dt2
    // B maps (y1, y2) to output-fluctuation quadratures (u, v); det B = sqrt(1 + mu^2/3)
    std::vector<double> B11, B12, B21, B22;
};

RotationCoeffs rotation_coeffs(const PolarDecomposition& d);

// ---------------------------------------------------------------------------
// Leading-order saddle path and action
// ---------------------------------------------------------------------------

// Minimizer of the leading action for boundary data kappa(0) = 0,
// kappa(L) = x + i y, at a single time sample with Kerr phase mu.
cplx leading_path(double mu, double L, double x, double y, double z);

// d kappa0/dz (closed form), used for source assembly and residual checks.
cplx leading_path_dz(double mu, double L, double x, double y, double z);

// Closed-form action of the leading path per unit time:
//   [(1 + 4 mu^2/3) x^2 - 2 mu x y + y^2] / (L (1 + mu^2/3)).
double leading_action_density(double mu, double L, double x, double y);

// ---------------------------------------------------------------------------
// Fluctuation coordinates from an observed output
// ---------------------------------------------------------------------------

struct FluctuationCoords {
    std::vector<double> x, y;    // phase-referenced fluctuation quadratures
    std::vector<double> y1, y2;  // rotated receiver coordinates
};

// Given the decimated observation Yd and the decimated deterministic output
// Phi_d (zero-dispersion solution plus first dispersion correction at z = L),
// strip the accumulated phase phi + mu per sample and rotate:
//   x + i y = (Yd - Phi_d) e^{-i (phi + mu)},
//   y1 = sqrt(alpha2) Re[(x + i y) e^{i theta}],
//   y2 = sqrt(alpha1) Im[(x + i y) e^{i theta}].
FluctuationCoords fluctuation_coords(const PolarDecomposition& dec,
                                     const RotationCoeffs& rot,
                                     const Signal& Yd, const Signal& Phi_d);

// ---------------------------------------------------------------------------
// Quadratic correction coefficients
// ---------------------------------------------------------------------------

// Coefficients of the first-order action density in the phase-referenced
// quadratures:  a1 x^2 + a2 y^2 + a3 x y + a4 x x' + a5 y y' + a6 x y'
// + a7 x' y + a8 x x'' + a9 y y'' + a10 x y'' + a11 x'' y   (primes = d/dt).
// Polynomials in mu and its first two time derivatives.
std::array<std::vector<double>, 11> correction_coeffs_xy(const PolarDecomposition& d);

// Same density rewritten in the rotated coordinates (y1, y2); basis order
// {y1^2, y2^2, y1 y2, y1 y1', y2 y2', y1 y2', y1' y2, y1 y1'', y2 y2'',
//  y1 y2'', y1'' y2}.  Obtained by substituting (x, y) = A (y1, y2) and
// collecting, with the time dependence of A folded in through its
// derivatives.
std::array<std::vector<double>, 11> correction_coeffs_rotated(
    const PolarDecomposition& d, const RotationCoeffs& rot);

// Closed-form weight entering the sum b8 + b9 = -(beta-independent) spectral
// loss:  4 mu^3 / (15 (3 + mu^2)).
double spectral_weight_gd(double mu);

// Closed-form weight multiplying mu'^2 in the period-integrated sum b1 + b2:
//   mu (10206 + 21303 mu^2 + 15399 mu^4 + 4644 mu^6 + 496 mu^8)
//     / (15 (3 + mu^2)^3 (9 + 4 mu^2)^2).
double bandwidth_weight_f(double mu);

// ---------------------------------------------------------------------------
// Actions and conditional density
// ---------------------------------------------------------------------------

// Leading action from rotated coordinates: (dt_coarse / L) sum_j (y1^2 + y2^2).
double leading_action(const FluctuationCoords& f, double dt_coarse, double L);

// First-order action: beta * dt_coarse * sum_j of the eleven-term density,
// with y1', y2', y1'', y2'' spectral on the coarse grid.
double correction_action(const std::array<std::vector<double>, 11>& b,
                         const FluctuationCoords& f, double T, double beta);

// Trace correction to the normalization at fixed input: the relative shift
// r such that the corrected normalization is Lambda0 (1 + r).  Uses the
// diagonal sums of the spectral derivative operators on the coarse grid.
double correction_trace(const std::array<std::vector<double>, 11>& b,
                        std::size_t Md, double T, double beta, double L);

struct LogCondPdf {
    double log_norm0 = 0.0;   // ln of the leading normalization
    double trace_ratio = 0.0; // r, first-order relative normalization shift
    double S0 = 0.0;          // leading action
    double S1 = 0.0;          // first-order action
    double value = 0.0;       // ln p(Y | X) on the coarse grid
    bool perturbative_ok = true;  // |S1 / Q| <= 0.5
};

// Log conditional density of the decimated observation given the fine-grid
// input:  ln Lambda0 + ln(1 + r) - (S0 + S1)/Q.  Emits a warning through the
// returned flag when the first-order action is too large to trust.
LogCondPdf log_cond_pdf(const Signal& X, const Signal& Yd, const GridSpec& g,
                        const ChannelParams& p);

// ---------------------------------------------------------------------------
// Correction path (boundary-value problem), validation use
// ---------------------------------------------------------------------------

// Green kernels of the linearized saddle equation in unit-length coordinates
// (zh = z/L, zp = z'/L), for the direct and conjugated source components.
cplx green_kernel_F(double zh, double zp, double mu);
cplx green_kernel_Fbar(double zh, double zp, double mu);

// Source of the first-order boundary-value problem at interior distance z,
// one value per coarse sample.  Assembled from the leading path, the
// dispersion correction of the input, and their z-derivatives.
std::vector<cplx> correction_source(const PolarDecomposition& dec,
                                    const FluctuationCoords& f,
                                    const GridSpec& g, const ChannelParams& p,
                                    double z);

// First-order correction path at interior distance z via the Green kernels;
// Gauss-Legendre in z' with the panel split at z' = z (kernel kink).
// n_nodes is the rule order per subinterval.
std::vector<cplx> correction_path(const PolarDecomposition& dec,
                                  const FluctuationCoords& f,
                                  const GridSpec& g, const ChannelParams& p,
                                  double z, std::size_t n_nodes = 24);

}  // namespace fiberinfo
