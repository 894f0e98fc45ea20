#include "fiberinfo/rng.hpp"

#include <cmath>

namespace fiberinfo {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;

constexpr std::uint32_t MUL0 = 0xD2511F53u;
constexpr std::uint32_t MUL1 = 0xCD9E8D57u;
constexpr std::uint32_t WEYL0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t WEYL1 = 0xBB67AE85u;  // sqrt(3)-1

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream) {
    key_[0] = static_cast<std::uint32_t>(seed ^ (seed >> 32));
    key_[1] = static_cast<std::uint32_t>(stream ^ (stream >> 32));
}

void Philox::block(std::uint32_t key0, std::uint32_t key1,
                   const std::uint32_t ctr[4], std::uint32_t out[4]) {
    std::uint32_t x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];
    std::uint32_t k0 = key0, k1 = key1;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(MUL0, x0, hi0, lo0);
        mulhilo(MUL1, x2, hi1, lo1);
        const std::uint32_t y0 = hi1 ^ x1 ^ k0;
        const std::uint32_t y1 = lo1;
        const std::uint32_t y2 = hi0 ^ x3 ^ k1;
        const std::uint32_t y3 = lo0;
        x0 = y0; x1 = y1; x2 = y2; x3 = y3;
        k0 += WEYL0;
        k1 += WEYL1;
    }
    out[0] = x0; out[1] = x1; out[2] = x2; out[3] = x3;
}

void Philox::refill() {
    const std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32), 0u, 0u};
    block(key_[0], key_[1], ctr, buf_);
    ++block_;
    pos_ = 0;
}

std::uint32_t Philox::next_u32() {
    if (pos_ >= 4) refill();
    return buf_[pos_++];
}

double Philox::next_double() {
    // (x + 1/2) / 2^32: uniform on (0,1), safe for log()
    return (static_cast<double>(next_u32()) + 0.5) * (1.0 / 4294967296.0);
}

double Philox::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_gauss_;
    }
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = TWO_PI * u2;
    spare_gauss_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

void Philox::set_block(std::uint64_t block) {
    block_ = block;
    pos_ = 4;
    have_spare_ = false;
}

}  // namespace fiberinfo
