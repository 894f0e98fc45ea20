#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "fiberinfo/rng.hpp"

using namespace fiberinfo;

TEST_CASE("philox known-answer vectors (Random123 test set)") {
    std::uint32_t out[4];

    const std::uint32_t zeros[4] = {0, 0, 0, 0};
    Philox::block(0, 0, zeros, out);
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);

    const std::uint32_t ones[4] = {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu};
    Philox::block(0xffffffffu, 0xffffffffu, ones, out);
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);

    const std::uint32_t pi_ctr[4] = {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u};
    Philox::block(0xa4093822u, 0x299f31d0u, pi_ctr, out);
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("stream addressing matches the frozen reference blocks") {
    // key = (42, 7); first word of blocks 0, 1, 2, 1000
    const std::uint32_t want[4] = {0x64d43a77u, 0x2605095eu, 0x72a8f45fu, 0x1a9c27c0u};
    const std::uint64_t blocks[4] = {0, 1, 2, 1000};
    for (int i = 0; i < 4; ++i) {
        Philox rng(42, 7);
        rng.set_block(blocks[i]);
        CHECK(rng.next_u32() == want[i]);
    }
}

TEST_CASE("sequential generation walks the counter") {
    Philox a(42, 7);
    std::vector<std::uint32_t> first8;
    for (int i = 0; i < 8; ++i) first8.push_back(a.next_u32());
    // words 0..3 from block 0, words 4..7 from block 1
    CHECK(first8[0] == 0x64d43a77u);
    CHECK(first8[4] == 0x2605095eu);

    // identical construction reproduces the stream
    Philox b(42, 7);
    for (int i = 0; i < 8; ++i) CHECK(b.next_u32() == first8[i]);
}

TEST_CASE("distinct seeds and streams decorrelate") {
    Philox a(42, 7), b(43, 7), c(42, 8);
    int same_ab = 0, same_ac = 0;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u32();
        if (va == b.next_u32()) ++same_ab;
        Philox dummy(42, 8);  // silence unused warning path
        (void)dummy;
        if (va == c.next_u32()) ++same_ac;
    }
    CHECK(same_ab == 0);
    CHECK(same_ac == 0);
}

TEST_CASE("uniform doubles stay inside (0,1)") {
    Philox rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_double();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian moments at fixed seed") {
    Philox rng(2024, 0);
    const int N = 200000;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (int i = 0; i < N; ++i) {
        const double z = rng.next_gaussian();
        s1 += z;
        s2 += z * z;
        s3 += z * z * z;
        s4 += z * z * z * z;
    }
    s1 /= N; s2 /= N; s3 /= N; s4 /= N;
    // ~4.5 sigma bounds for this N at this (frozen) seed
    CHECK(std::abs(s1) < 0.010);
    CHECK(std::abs(s2 - 1.0) < 0.015);
    CHECK(std::abs(s3) < 0.025);
    CHECK(std::abs(s4 - 3.0) < 0.08);
}

TEST_CASE("lag-1 autocorrelation is small") {
    Philox rng(7, 3);
    const int N = 100000;
    double prev = rng.next_gaussian();
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
        const double z = rng.next_gaussian();
        acc += prev * z;
        prev = z;
    }
    CHECK(std::abs(acc / N) < 0.012);
}
