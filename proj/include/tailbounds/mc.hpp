// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tailbounds/rng.hpp"

#ifdef TAILBOUNDS_HAVE_OPENMP
#include <omp.h>
#endif

namespace tailbounds {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

namespace mc {

/// Runs `f(replicate_index, rng)` for each replicate and returns the values in
/// replicate order. Each replicate gets its own substream, and the reduction
/// happens serially over the index-ordered buffer, so the result is identical
/// whether the loop runs serially or under OpenMP with any thread count.
template <class F>
std::vector<double> map_replicates(std::size_t replicates, RngSpec rng, F&& f, bool parallel = true) {
    std::vector<double> out(replicates);
#ifdef TAILBOUNDS_HAVE_OPENMP
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(replicates); ++i) {
            CounterRng r(rng.substream(static_cast<std::uint64_t>(i)));
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i), r);
        }
        return out;
    }
#else
    (void)parallel;
#endif
    for (std::size_t i = 0; i < replicates; ++i) {
        CounterRng r(rng.substream(i));
        out[i] = f(i, r);
    }
    return out;
}

inline MeanSe mean_se(const std::vector<double>& v) {
    MeanSe ms;
    if (v.empty()) return ms;
    double sum = 0.0;
    for (double x : v) sum += x;
    ms.mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - ms.mean) * (x - ms.mean);
        ms.se = std::sqrt(ss / (static_cast<double>(v.size()) - 1.0) / static_cast<double>(v.size()));
    }
    return ms;
}

template <class F>
MeanSe estimate(std::size_t replicates, RngSpec rng, F&& f, bool parallel = true) {
    return mean_se(map_replicates(replicates, rng, std::forward<F>(f), parallel));
}

}  // namespace mc
}  // namespace tailbounds
