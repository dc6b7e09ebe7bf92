#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace seqnet {

// Counter-based random numbers (Philox4x32-10). Every draw is addressed by
// (master_seed, cell, trial, slot, sensor, draw): the seed is the cipher key
// and the rest form the 128-bit counter, so any sample in any trial can be
// produced independently of execution order or worker count. Trials are
// paired across detectors and across q because neither enters the key.
namespace philox {

inline void mulhilo32(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> round_once(std::array<std::uint32_t, 4> ctr,
                                               const std::array<std::uint32_t, 2>& key) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo32(0xD2511F53u, ctr[0], hi0, lo0);
    mulhilo32(0xCD9E8D57u, ctr[2], hi1, lo1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline std::array<std::uint32_t, 4> block(std::uint64_t key64, std::array<std::uint32_t, 4> ctr) {
    std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(key64),
                                        static_cast<std::uint32_t>(key64 >> 32)};
    for (int r = 0; r < 9; ++r) {
        ctr = round_once(ctr, key);
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
    }
    return round_once(ctr, key);
}

}  // namespace philox

// Uniform pair produced for one (slot, sensor, draw) address.
struct Uniforms {
    double u1;  // in (0, 1)
    double u2;  // in (0, 1)
};

// One logical random stream: a (seed, cell, trial) triple. A cell identifies
// one (threshold, hypothesis) combination of an experiment, or a reserved id
// for auxiliary estimators.
struct TrialStream {
    std::uint64_t seed = 0;
    std::uint32_t cell = 0;
    std::uint32_t trial = 0;

    Uniforms uniforms(std::uint32_t slot, std::uint16_t sensor, std::uint16_t draw = 0) const {
        const std::array<std::uint32_t, 4> ctr = {
            cell, trial, slot, (static_cast<std::uint32_t>(sensor) << 16) | draw};
        const auto out = philox::block(seed, ctr);
        const std::uint64_t r1 = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
        const std::uint64_t r2 = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
        // 53-bit mantissas, shifted by half an ulp to keep both ends open.
        const double u1 = (static_cast<double>(r1 >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = (static_cast<double>(r2 >> 11) + 0.5) * 0x1.0p-53;
        return {u1, u2};
    }
};

// Box-Muller (cosine branch).
inline double standard_normal(const Uniforms& u) {
    return std::sqrt(-2.0 * std::log(u.u1)) * std::cos(6.283185307179586476925286766559 * u.u2);
}

// Inverse CDF of the unit Laplace distribution.
inline double standard_laplace(const Uniforms& u) {
    const double v = u.u1 - 0.5;
    const double x = -std::log(1.0 - 2.0 * (v < 0 ? -v : v));
    return v < 0 ? -x : x;
}

}  // namespace seqnet
