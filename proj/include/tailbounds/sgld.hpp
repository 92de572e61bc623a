// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tailbounds/rng.hpp"
#include "tailbounds/specfun.hpp"

namespace tailbounds {

/// Heavy-tailed linear regression: X ~ Unif([0,1]^2), latent response
/// N(X' beta0, 1), observed response sign(y)|y|^lambda. The loss tail index is
/// theta = 1/lambda.
struct RegressionTask {
    std::size_t n = 100;
    double lambda_power = 1.0;  // >= 1
    std::array<double, 2> beta0{1.0, -1.0};
};

struct RegressionData {
    std::vector<std::array<double, 2>> x;
    std::vector<double> y;
    std::size_t size() const { return y.size(); }
};

RegressionData generate_regression(const RegressionTask& task, RngSpec rng);

struct SgldSchedule {
    double sigma = 1.0;       // injected noise level, constant across steps
    std::size_t epochs = 100;
    std::size_t batch = 1;
    // eta_t = eta0 * t^{-theta^2/2}; the decay pins eta_t^{2/theta} = t^{-theta}
    // up to the base constant.
    double eta0 = 1.0;
    double theta = 1.0;  // schedule tail index (default 1/lambda; set by the lab)
};

struct SgldTrajectory {
    std::vector<std::array<double, 2>> iterates;  // W_1 .. W_{T+1}
    std::vector<double> eta;                      // eta_1 .. eta_T
    std::vector<double> sigma;                    // sigma_1 .. sigma_T
    std::vector<double> g_hat;                    // per-step E||g - gbar||^{2/theta} estimates
    double theta = 1.0;
};

/// Runs T = epochs * n SGLD updates with squared-loss gradients
/// g(w, Z) = 2 (x'w - y) x; gradient-noise moments are re-estimated every
/// ceil(T/100) steps from 64 minibatch redraws and held constant between
/// checkpoints. Aborts with a diagnostic if ||W_t|| exceeds 1e12.
SgldTrajectory sgld_run(const RegressionData& data, const SgldSchedule& schedule, RngSpec rng);

/// Fresh-sample generalization gap: population risk (test draws) minus
/// empirical risk on the training set at the given weights.
double gen_gap(const std::array<double, 2>& weights, const RegressionData& train, const RegressionTask& task,
               RngSpec rng, std::size_t test_factor = 10);

/// Pathwise bound
///   (M_theta v / sqrt n) [4 + 2^(1/theta) T^{(1/theta - 1)_+} (log^(1/theta)(1+A)
///      + sum_t (B_{alpha,theta} + (2 alpha eta_t^2 / sigma_t^2)^(1/theta) G_t))].
double sgld_bound(const SgldTrajectory& traj, TailIndex theta, double alpha, double A, double v_theta, std::size_t n);

/// Empirical Orlicz scale of the centered loss, maximized over probe weights.
double estimate_loss_scale(const RegressionData& data, const RegressionTask& task, TailIndex theta, RngSpec rng);

}  // namespace tailbounds
