// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace tailbounds {

/// Identifies one reproducible random stream. The (seed, stream) pair fully
/// determines the generated sequence within one build; cross-language
/// bit-exactness is not promised.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngSpec substream(std::uint64_t k) const { return RngSpec{seed, stream ^ (0x9e3779b97f4a7c15ULL + k)}; }
};

/// Counter-based generator (SplitMix64 output function over a keyed counter).
/// Stateless apart from the counter, so replicates can be fanned out across
/// workers by giving each its own substream.
class CounterRng {
  public:
    explicit CounterRng(RngSpec spec)
        : key_(mix(spec.seed ^ mix(spec.stream * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL))) {}

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + (++counter_) * 0x9e3779b97f4a7c15ULL;
        return mix(z);
    }

    /// Uniform on (0, 1]; never returns 0 so -log(u) is always finite.
    double uniform01() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double gaussian() {
        double u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace tailbounds
