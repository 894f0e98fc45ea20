#pragma once

// Counter-based random numbers: Philox4x32-10 (Salmon, Moraes, Dror &
// Shaw, "Parallel random numbers: as easy as 1, 2, 3", SC'11).
//
// Counter-based generation gives reproducible, independently addressable
// streams: the Monte Carlo drivers key one stream per (seed, realization)
// pair, so a given realization produces identical noise regardless of how
// many other realizations ran before it, in which order, or on how many
// threads.

#include <cstddef>
#include <cstdint>

namespace fiberinfo {

class Philox {
  public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();
    double next_double();    // uniform on (0,1), never exactly 0 or 1
    double next_gaussian();  // standard normal (Box-Muller)

    // skip to a fresh 128-bit counter block (drops buffered words)
    void set_block(std::uint64_t block);

    // raw keyed block, exposed for known-answer tests
    static void block(std::uint32_t key0, std::uint32_t key1,
                      const std::uint32_t ctr[4], std::uint32_t out[4]);

  private:
    void refill();

    std::uint32_t key_[2];
    std::uint64_t block_ = 0;
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    int pos_ = 4;  // buffered words consumed
    double spare_gauss_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace fiberinfo
