#pragma once

// Sampling grids for the periodic signal window.
//
// A signal lives on the window [-T/2, T/2) with M uniform samples
// t_n = -T/2 + n*dt, dt = T/M.  Two grids share one window: the fine
// (propagation) grid with M samples and the coarse (receiver) grid with
// Md samples, Md | M.  Spectral labels are the signed mode frequencies
// w_k = 2*pi*k/T with k = -M/2+1 .. M/2, stored in FFT order (k mod M);
// the two-sided bandwidth of a grid is then W = 2*pi*M/T, i.e. labels
// cover (-W/2, W/2].
//
// Both M and Md must be even: the shared-window alignment of fine and
// coarse samples (and the bin-copy decimation in fft.hpp) relies on the
// half-window offset phase (-1)^k agreeing between the grids, which holds
// exactly when both sizes are even.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fiberinfo {

using cplx = std::complex<double>;
using Signal = std::vector<cplx>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

struct GridSpec {
    double T;        // window length in seconds
    std::size_t M;   // fine-grid sample count (even)
    std::size_t Md;  // coarse-grid sample count (even, divides M)

    GridSpec(double T_, std::size_t M_, std::size_t Md_) : T(T_), M(M_), Md(Md_) {
        if (!(T > 0.0))
            throw std::invalid_argument("GridSpec: window length must be positive");
        if (M < 2 || Md < 2)
            throw std::invalid_argument("GridSpec: need at least 2 samples per grid");
        if (M % 2 != 0 || Md % 2 != 0)
            throw std::invalid_argument("GridSpec: sample counts must be even "
                                        "(decimation phase alignment)");
        if (M % Md != 0)
            throw std::invalid_argument("GridSpec: coarse count must divide fine count");
    }

    double dt() const { return T / static_cast<double>(M); }
    double dt_coarse() const { return T / static_cast<double>(Md); }
    std::size_t stride() const { return M / Md; }

    // two-sided bandwidths (rad/s)
    double W_fine() const { return 2.0 * pi * static_cast<double>(M) / T; }
    double W_coarse() const { return 2.0 * pi * static_cast<double>(Md) / T; }

    double t_fine(std::size_t n) const { return -0.5 * T + static_cast<double>(n) * dt(); }
    double t_coarse(std::size_t m) const {
        return -0.5 * T + static_cast<double>(m) * dt_coarse();
    }
};

// FFT-order index -> signed mode number k in (-M/2, M/2]
inline long long signed_mode(std::size_t i, std::size_t M) {
    return i <= M / 2 ? static_cast<long long>(i)
                      : static_cast<long long>(i) - static_cast<long long>(M);
}

// spectral label w_k (rad/s) of FFT-order bin i on an M-point grid over T
inline double mode_frequency(std::size_t i, std::size_t M, double T) {
    return 2.0 * pi * static_cast<double>(signed_mode(i, M)) / T;
}

}  // namespace fiberinfo
