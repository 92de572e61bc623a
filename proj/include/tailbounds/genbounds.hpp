// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "tailbounds/chaining.hpp"
#include "tailbounds/mc.hpp"
#include "tailbounds/rng.hpp"
#include "tailbounds/specfun.hpp"

namespace tailbounds {

/// Inputs shared by the generalization-bound formulas.
struct GenBoundInput {
    std::size_t n = 0;        // sample size
    TailIndex theta{0.5};
    double v_theta = 1.0;     // uniform sub-Weibull scale of the centered loss
    double info = 0.0;        // I_{f_theta} or a Renyi value, per route
    double delta = 0.1;       // confidence level for the high-probability form
};

enum class InfoRoute { FTheta, Key1, Key };

/// Expected-generalization bound (M_theta v / sqrt(n)) (2^(1/theta) route(info) + 4)
/// for 0 < theta <= 2. Renyi routes pass info through the comparison bounds.
double expected_gen_bound(const GenBoundInput& in, InfoRoute route = InfoRoute::FTheta, double alpha = 2.0);

/// High-probability bound
/// (M_theta v / sqrt n)(posterior_complexity + E_theta + log(3/delta)^(1/theta)),
/// where posterior_complexity is E_{P_{W|S}}[log_+ dP_{W|S}/dP_W]^(1/theta).
double pac_bayes_bound(const GenBoundInput& in, double posterior_complexity);

/// Multiscale bound (e_W scale M_theta / sqrt n) sum_k 2^{-(k-1)} (2^(1/theta) I_k + 4).
double chain_gen_bound(std::size_t n, TailIndex theta, double e_W, const InfoSeries& series, double v_norm_scale = 1.0);

/// Quadratic mean-estimation demo: clipped-mean ERM on symmetric Weibull data.
struct MeanEstimationReport {
    std::size_t n = 0;
    double theta = 0.0;
    double c_n_theta = 0.0;        // KDE lower envelope for the sample-mean density on [-1,1]
    double e_W = 0.0;              // metric radius of [-1, 1] under the square-loss metric
    double single_scale_info = 0;  // +infinity: deterministic continuous learner
    double chain_bound = 0.0;
    double mc_gap = 0.0;           // fresh-sample generalization gap estimate
    std::vector<double> info_series;  // (k-1) log 2 - log C_{n,theta}
};

MeanEstimationReport mean_estimation_demo(TailIndex theta, std::size_t n, RngSpec rng, std::size_t mc_draws = 200000);

/// Randomized-argmax selection diagnostics under Weibull(theta) data.
struct SelectorReport {
    std::size_t n = 0;
    double epsilon = 0.0;
    double kl_info = 0.0;     // closed form
    double mean_lower = 0.0;  // MC estimate of E[X_W] (>= epsilon E[max])
    double eps_emax = 0.0;    // epsilon * MC E[max]
    double ratio_diag = 0.0;  // E[X_W] / (log n)^(1/theta - 1)
};

/// Closed-form mutual information of the epsilon-mixture argmax selector.
double goodhart_selector_info(std::size_t n, double epsilon);

SelectorReport goodhart_selector(TailIndex theta, std::size_t n, double epsilon, RngSpec rng,
                                 std::size_t replicates = 20000, bool parallel = true);

}  // namespace tailbounds
