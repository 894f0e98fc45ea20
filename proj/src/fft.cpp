#include "fiberinfo/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fiberinfo {

namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft is.
// Plans are created once per size with FFTW_UNALIGNED so they can run on
// whatever buffers the caller owns.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;

PlanPair& plans_for(std::size_t M) {
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;

    std::vector<cplx> probe(M);
    auto* p = reinterpret_cast<fftw_complex*>(probe.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_1d(static_cast<int>(M), p, p, FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_1d(static_cast<int>(M), p, p, FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!pp.fwd || !pp.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(M, pp).first->second;
}

}  // namespace

Signal dft(const Signal& x) {
    const std::size_t M = x.size();
    if (M == 0) throw std::invalid_argument("dft: empty signal");
    Signal out(x);
    auto& pp = plans_for(M);
    auto* p = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(pp.fwd, p, p);
    const double inv = 1.0 / static_cast<double>(M);
    for (auto& v : out) v *= inv;
    return out;
}

Signal idft(const Signal& X) {
    const std::size_t M = X.size();
    if (M == 0) throw std::invalid_argument("idft: empty spectrum");
    Signal out(X);
    auto& pp = plans_for(M);
    auto* p = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(pp.bwd, p, p);
    return out;
}

Signal band_filter(const Signal& x, double T, double Wcut) {
    if (Wcut < 0.0) throw std::invalid_argument("band_filter: negative cutoff");
    const std::size_t M = x.size();
    Signal X = dft(x);
    for (std::size_t i = 0; i < M; ++i) {
        if (std::abs(mode_frequency(i, M, T)) > Wcut) X[i] = 0.0;
    }
    return idft(X);
}

Signal spectral_derivative(const Signal& x, double T, int order) {
    if (order < 0) throw std::invalid_argument("spectral_derivative: negative order");
    if (order == 0) return x;
    const std::size_t M = x.size();
    Signal X = dft(x);
    for (std::size_t i = 0; i < M; ++i) {
        if (order % 2 == 1 && i == M / 2) {
            X[i] = 0.0;  // unpaired Nyquist mode
            continue;
        }
        const cplx iw(0.0, mode_frequency(i, M, T));
        X[i] *= std::pow(iw, order);
    }
    return idft(X);
}

Signal decimate(const Signal& x, const GridSpec& g) {
    if (x.size() != g.M)
        throw std::invalid_argument("decimate: signal does not match the fine grid");
    Signal X = dft(x);
    Signal Xc(g.Md, cplx(0.0, 0.0));
    // Coarse modes k = -Md/2+1 .. Md/2 live at the same signed labels on
    // the fine grid.  Fine content at exactly -Md/2 has no coarse
    // representative and is dropped (not folded into the Nyquist bin).
    const long long half = static_cast<long long>(g.Md) / 2;
    for (long long k = -half + 1; k <= half; ++k) {
        const std::size_t src =
            static_cast<std::size_t>((k + static_cast<long long>(g.M)) %
                                     static_cast<long long>(g.M));
        const std::size_t dst =
            static_cast<std::size_t>((k + static_cast<long long>(g.Md)) %
                                     static_cast<long long>(g.Md));
        Xc[dst] = X[src];
    }
    return idft(Xc);
}

Signal forward_diff(const Signal& x, double dt) {
    const std::size_t M = x.size();
    if (M < 2) throw std::invalid_argument("forward_diff: need at least 2 samples");
    Signal out(M);
    for (std::size_t i = 0; i + 1 < M; ++i) out[i] = (x[i + 1] - x[i]) / dt;
    out[M - 1] = (x[0] - x[M - 1]) / dt;
    return out;
}

double avg_power(const Signal& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return s / static_cast<double>(x.size());
}

double avg_bandwidth(const Signal& x, double T) {
    const double P = avg_power(x);
    if (P <= 0.0) throw std::invalid_argument("avg_bandwidth: zero-power signal");
    const std::size_t M = x.size();
    Signal X = dft(x);
    double s = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        if (i == M / 2) continue;  // matches the odd-order derivative operator
        const double w = mode_frequency(i, M, T);
        s += w * w * std::norm(X[i]);
    }
    return std::sqrt(s / P);
}

double derivative_trace(std::size_t M, double T, int order) {
    if (order == 1) return 0.0;
    if (order != 2) throw std::invalid_argument("derivative_trace: order must be 1 or 2");
    double s = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const double w = mode_frequency(i, M, T);
        s -= w * w;
    }
    return s;
}

}  // namespace fiberinfo
