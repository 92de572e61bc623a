// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
//
// Compares the serial reference Monte Carlo loops against the OpenMP kernels
// on the hot paths (selector-mean oracle, maximal-inequality oracle) and
// checks they produce bit-identical results.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "tailbounds/circle_bench.hpp"
#include "tailbounds/mc.hpp"
#include "tailbounds/rng.hpp"
#include "tailbounds/specfun.hpp"

using namespace tailbounds;

namespace {

double time_ms(void (*fn)(bool), bool parallel) {
    auto t0 = std::chrono::steady_clock::now();
    fn(parallel);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

MeanSe g_result_serial, g_result_parallel;

void selector_mean(bool parallel) {
    MeanSe r = mc_selector_mean(TailIndex(0.5), 1.0 / 20.0, 2000000, RngSpec{7, 0}, parallel);
    (parallel ? g_result_parallel : g_result_serial) = r;
}

void weibull_max(bool parallel) {
    const std::size_t n = 1000;
    MeanSe r = mc::estimate(
        100000, RngSpec{11, 0},
        [](std::size_t, CounterRng& rng) {
            double best = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                best = std::max(best, std::pow(-std::log(rng.uniform01()), 2.0));
            return best;
        },
        parallel);
    (parallel ? g_result_parallel : g_result_serial) = r;
}

void report(const char* name, void (*fn)(bool)) {
    double ser = time_ms(fn, false);
    double par = time_ms(fn, true);
    bool identical = g_result_serial.mean == g_result_parallel.mean && g_result_serial.se == g_result_parallel.se;
    std::printf("%-22s serial %8.1f ms   openmp %8.1f ms   speedup %.2fx   identical=%s\n", name, ser, par, ser / par,
                identical ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef TAILBOUNDS_HAVE_OPENMP
    std::printf("OpenMP enabled\n");
#else
    std::printf("OpenMP not available; parallel path falls back to serial\n");
#endif
    report("selector_mean", selector_mean);
    report("weibull_max", weibull_max);
    return 0;
}
