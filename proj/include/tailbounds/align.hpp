// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "tailbounds/divergence.hpp"
#include "tailbounds/specfun.hpp"

namespace tailbounds {

/// Reference policy with rewards attached to its atoms.
struct PolicyInstance {
    DiscreteDist reference;  // probs + reward atoms

    void validate() const;
    double reference_mean_reward() const { return reference.mean_atom(); }
};

/// Result of a trust-region solve.
struct TrustRegionResult {
    DiscreteDist policy;
    double multiplier_or_threshold = 0.0;  // lambda (KL) or t (Renyi)
    double achieved_divergence = 0.0;
    double mean_reward = 0.0;
    bool budget_unreachable = false;  // degenerate reward; limit policy returned
};

/// Exponential tilting pi_0(y) exp(r(y)/lambda), normalized in log space.
DiscreteDist kl_tilt(const PolicyInstance& ref, double lambda);

/// Finds lambda so that KL(pi_lambda || pi_0) = epsilon (KL is decreasing in
/// lambda); returns the argmax-concentrated limit with a flag when even
/// lambda -> 0 cannot reach the budget.
TrustRegionResult solve_kl_budget(const PolicyInstance& ref, double epsilon);

/// Truncated power-law reweighting pi_0(y) (r(y) - t)_+^{1/(alpha-1)}.
DiscreteDist renyi_tilt(const PolicyInstance& ref, double alpha, double t);

/// Finds the threshold t with D_alpha(pi_t || pi_0) = epsilon; D_alpha is
/// nondecreasing in t, enabling bisection (with downward bracket expansion for
/// tiny budgets). Unreachable budgets return the max-reward-concentrated
/// policy with a flag.
TrustRegionResult solve_renyi_budget(const PolicyInstance& ref, double alpha, double epsilon);

/// Exact distribution of the reward-argmax of n i.i.d. reference draws; ties
/// in reward share mass proportionally to atom probability.
DiscreteDist best_of_n(const PolicyInstance& ref, std::size_t n);

enum class GainVariant { Key, Key1 };

/// Reward-inflation ceiling C (2^(1/theta) route(budget) + 2) with the Renyi
/// comparison routed per variant.
double reward_gain_bound(TailIndex theta, double c_norm, double budget, double alpha, GainVariant variant);

/// Weibull(theta) quantile grid: `body` equal-mass atoms plus dyadic tail
/// levels with masses 2^{-j}, j = 1..depth, giving tail atoms up to reward
/// (j log 2)^(1/theta) while staying enumerable. Depth is capped at 900 so
/// every atom mass stays representable; deeper tails need WeibullTailGrid.
PolicyInstance weibull_quantile_grid(TailIndex theta, std::size_t depth, std::size_t body = 64);

/// The same grid with tail masses kept in log space. Masses like 2^{-30000}
/// underflow any double probability vector, but the Goodhart witness only
/// ever needs their logs.
struct WeibullTailGrid {
    std::vector<double> body_probs;
    std::vector<double> body_rewards;
    std::vector<double> tail_log_mass;  // log of each dyadic tail atom's mass
    std::vector<double> tail_rewards;

    double mean_reward() const;  // atoms below the underflow floor contribute 0
    double top_reward() const { return tail_rewards.back(); }
    double top_log_mass() const { return tail_log_mass.back(); }
};

WeibullTailGrid weibull_tail_grid(TailIndex theta, std::size_t depth, std::size_t body = 64);

/// Witness for reward inflation under a KL budget: moves mass delta onto the
/// top-reward atom with delta chosen by bisection so KL(P || Q) <= epsilon
/// while the mean gain reaches target_gain.
struct GoodhartWitness {
    DiscreteDist policy;
    double delta = 0.0;
    double kl = 0.0;
    double renyi2 = 0.0;  // D_2 of the same witness (blows up where KL does not)
    double gain = 0.0;
    bool feasible = false;
    double max_achievable_gain = 0.0;  // reported when the grid is too shallow
};

GoodhartWitness goodhart_kl_construction(const PolicyInstance& ref, double epsilon, double target_gain);

/// Log-space variant for grids whose tail masses underflow doubles; kl, gain
/// and renyi2 are exact, and the returned witness distribution keeps every
/// representable atom.
GoodhartWitness goodhart_kl_construction(const WeibullTailGrid& grid, double epsilon, double target_gain);

/// Exact centered-reward Orlicz norm of the reference (used as C in ceilings).
double centered_reward_orlicz(const PolicyInstance& ref, TailIndex theta);

double mean_reward(const DiscreteDist& policy);

}  // namespace tailbounds
