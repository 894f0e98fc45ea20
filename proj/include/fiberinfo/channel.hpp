#pragma once

// Nonlinear fiber channel: d psi/dz = -i beta d2 psi/dt2 + i gamma |psi|^2 psi + noise,
// with psi(0,t) = X(t).  The noise is circular white Gaussian, flat across the
// fine grid's band, with spectral density Q per unit length per (rad/s).

#include <cstddef>
#include <vector>

#include "fiberinfo/grid.hpp"
#include "fiberinfo/rng.hpp"

namespace fiberinfo {

struct ChannelParams {
    double beta = 0.0;   // second-dispersion coefficient (s^2/m)
    double gamma = 0.0;  // Kerr coefficient (1/(W*m))
    double L = 1.0;      // propagation distance (m)
    double Q = 1e-4;     // noise power density per unit length

    void check() const {
        if (!(L > 0.0)) throw std::invalid_argument("ChannelParams: L must be positive");
        if (!(Q >= 0.0)) throw std::invalid_argument("ChannelParams: Q must be nonnegative");
    }
};

// Zero-dispersion noiseless solution at distance z: X e^{i gamma z |X|^2}.
// Exact for beta = 0 (the amplitude is conserved, only the phase rotates).
Signal phase_rotated_input(const Signal& X, double gamma, double z);

// First-order dispersion correction at distance z, on the same grid as X.
// Built from the polar decomposition of X and its spectral time derivatives;
// solves the linearized propagation equation around the zero-dispersion
// solution with a -i*beta*d2/dt2 source (verified symbolically).
Signal dispersion_correction(const Signal& X, double T, double beta, double gamma,
                             double z);

// One integrated noise increment for a step of length dz, time domain.
// Per-bin complex variance of the increment is Q*dz/T across all fine bins,
// which reproduces the white correlator on the band (-W'/2, W'/2].
Signal sample_noise(const GridSpec& g, double Q, double dz, Philox& rng);

struct PropagationResult {
    Signal output;               // psi at z = L on the fine grid
    std::vector<double> energy;  // mean power after each step (diagnostic)
};

// Strang-split integrator: half dispersion, full Kerr phase, half dispersion,
// then a band-limited noise increment per step.  Noiseless when rng is null;
// second order in dz for the deterministic part.  Throws on divergence,
// naming the offending step.
PropagationResult split_step(const Signal& X, const GridSpec& g,
                             const ChannelParams& p, std::size_t n_steps,
                             Philox* rng);

}  // namespace fiberinfo
