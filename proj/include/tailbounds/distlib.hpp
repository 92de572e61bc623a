// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "tailbounds/rng.hpp"
#include "tailbounds/specfun.hpp"

namespace tailbounds {

struct Sample {
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::string meta;
};

/// Inverse-CDF draw for the Weibull survival P(X >= x) = exp(-(x/b)^theta).
/// Exposed so tests can force specific uniforms (u = e^{-1} gives x = b).
double weibull_from_uniform(double u, TailIndex theta, double scale);

/// n i.i.d. Weibull(theta, scale) draws; deterministic given rng.
Sample sample_weibull(TailIndex theta, double scale, std::size_t n, RngSpec rng);

/// Symmetric heavy-tailed draws with survival P(|Y| >= t) = 0.5 exp(-t^theta)
/// for t > 0: an atom of mass 1/2 at zero, otherwise a random sign times a
/// standard Weibull(theta). Mean zero by symmetry.
Sample sample_symmetric_weibull(TailIndex theta, std::size_t n, RngSpec rng);

/// Empirical Orlicz quasi-norm: the K > 0 solving
///   mean_i exp(|x_i|^theta / K^theta) = 2,
/// found by bisection (the left side is strictly decreasing in K).
/// Returns 0 for the all-zero sample.
double orlicz_norm(const Sample& sample, TailIndex theta);
double orlicz_norm(const std::vector<double>& values, TailIndex theta);

/// Exact Orlicz quasi-norm of a finite discrete law given atom probabilities.
double orlicz_norm_discrete(const std::vector<double>& probs, const std::vector<double>& values, TailIndex theta);

/// Elementwise sign(x)|x|^kappa; strictly increasing, so ranks are unchanged.
Sample power_transform(const Sample& sample, double kappa);

/// Empirical MGF M(t) = mean_i exp(t x_i) on a grid; overflow is reported as
/// +infinity per point, never as a crash.
std::vector<double> empirical_mgf(const Sample& sample, const std::vector<double>& t_grid);

/// CSV round trip: one value per line under a `value` header.
void write_sample_csv(const Sample& sample, const std::string& path);
Sample read_sample_csv(const std::string& path);

}  // namespace tailbounds
