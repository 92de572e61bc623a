// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tailbounds/specfun.hpp"

namespace tailbounds {

/// Finite probability vector, optionally with an aligned value/reward vector.
struct DiscreteDist {
    std::vector<double> probs;
    std::vector<double> atoms;  // empty when unused

    void validate() const;
    bool has_atoms() const { return !atoms.empty(); }
    double mean_atom() const;
};

enum class DivKind { KL, Renyi, FTheta };

/// A divergence value; +infinity is a first-class result (absolute continuity
/// failure), not an error.
struct DivergenceValue {
    double value = 0.0;
    DivKind kind = DivKind::KL;
    double alpha = 0.0;  // Renyi order when kind == Renyi
    double theta = 0.0;  // tail index when kind == FTheta
    double A = 0.0;      // shift when kind == FTheta

    bool is_infinite() const;
};

// KL(P || Q) = sum p log(p/q), 0 log 0 = 0; +inf on support violation.
DivergenceValue kl(const DiscreteDist& P, const DiscreteDist& Q);

// Renyi divergence of order alpha > 1, evaluated with log-sum-exp.
DivergenceValue renyi(const DiscreteDist& P, const DiscreteDist& Q, double alpha);

// D_infinity(P || Q) = log max p/q. Stated in the source material but unused
// by any bound; exposed as a convenience only.
DivergenceValue renyi_inf(const DiscreteDist& P, const DiscreteDist& Q);

// Shifted-log divergence sum_i q_i f_theta(p_i/q_i) with
// f_theta(x) = x log^(1/theta)(x + A). Reported unnormalized: f_theta(1) != 0,
// exactly as the bounds consume it. `subtract_at_one` subtracts f_theta(1)
// for diagnostic plots.
DivergenceValue f_theta_div(const DiscreteDist& P, const DiscreteDist& Q, TailIndex theta, double A,
                            bool subtract_at_one = false);

// Power-type comparison: (D_alpha + C_{alpha,theta})^(1/theta).
double key1_bound(double d_alpha, double alpha, TailIndex theta);

// Additive comparison: D_alpha^(1/theta) + B_{alpha,theta}.
double key_bound(double d_alpha, double alpha, TailIndex theta);

// Renyi divergence between isotropic Gaussians with common sigma:
// alpha ||mu1 - mu2||^2 / (2 sigma^2).
double renyi_gaussian_iso(const std::vector<double>& mu1, const std::vector<double>& mu2, double sigma, double alpha);

// Divergence of the max of n i.i.d. draws from the base law:
// (1/(alpha-1)) log(n^alpha / (alpha(n-1)+1)).
double renyi_max_of_n(long long n, double alpha);

// alpha -> 1 limit of the above: log n - (n-1)/n.
double kl_max_of_n(long long n);

enum class DecorrelationVariant { FTheta, Key1, Key };

// Change-of-measure bound 2^(1/theta) * (divergence route) + moment_term.
// div_term is D_{f_theta} for the FTheta variant and D_alpha otherwise;
// moment_term is E_nu exp(r^theta) (plain) or 2 E_nu h(r) (truncated), already
// including its factor.
double decorrelation_bound(double div_term, double moment_term, TailIndex theta, DecorrelationVariant variant,
                           double alpha = 2.0);

}  // namespace tailbounds
