// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace tailbounds {

/// Sub-Weibull tail parameter theta > 0. theta = 2 is sub-Gaussian, theta = 1
/// sub-exponential, theta < 1 genuinely heavy-tailed.
struct TailIndex {
    double theta;

    explicit TailIndex(double t) : theta(t) {
        if (!(t > 0.0)) throw std::invalid_argument("TailIndex: theta must be > 0");
    }
    bool heavy() const { return theta < 1.0; }
};

/// Every explicit constant used by the bounds, for one (theta, alpha) pair.
/// All fields are finite and positive; the A_min fields are >= 1.
struct ConstantSet {
    double theta = 0;
    double alpha = 0;
    double x_theta = 0;       // convexity threshold ((1-theta)/theta)^(1/theta); 0 for theta >= 1
    double K_theta = 0;       // sup_{x>=2} (log(1+psi(x_theta)+x)/log x)^(1/theta)
    double D_theta = 0;       // weak-triangle constant 2^(1/theta) for theta<1, else 1
    double C2_theta = 0;      // centering constant D_theta (1 + 2 Gamma(1/theta + 1))
    double L_theta = 0;       // moment-inequality constant sqrt(8) e^3 (2pi)^(1/4) e^(1/24) (e^(2/e)/theta)^(1/theta)
    double M_theta = 0;       // truncated-exponential moment constant, both branches
    double E_theta = 0;       // (sup_{x>=1} x e^(x^theta/2)/(h(x)+1) + 1) / 4^(1/theta)
    double A_min_key1 = 0;    // smallest admissible shift for the power-type comparison
    double A_min_key = 0;     // smallest admissible shift for the additive comparison
    double A_young = 0;       // shift making x*y <= 2^(1/t) x log^(1/t)(x+A) + exp(y^t) hold
    double A_young1 = 0;      // shift for the truncated variant with 2h(y)
    double B_alpha_theta = 0; // additive comparison constant (at A = A_min_key)
    double C_alpha_theta = 0; // power-type comparison constant (at A = A_min_key1)
};

// psi_theta(x) = exp(x^theta) - 1, the sub-Weibull Orlicz function.
double psi(TailIndex theta, double x);

// psi_theta^{-1}(y) = [log(1+y)]^(1/theta).
double psi_inv(TailIndex theta, double y);

// x_theta = ((1-theta)/theta)^(1/theta); only defined for 0 < theta < 1.
double x_theta(TailIndex theta);

// K_theta = sup_{x>=2} (log(1+psi(x_theta)+x)/log x)^(1/theta), by grid scan
// plus golden-section refinement. For theta >= 1 the psi(x_theta) term is 0.
double k_theta(TailIndex theta);

// h(y) = exp(y^theta) - sum_{k<=floor(2/theta)} y^(k theta)/k!, for theta in (0,2].
double truncated_exp_h(TailIndex theta, double y);

// log(h(y) + 1), computed in log space so it stays finite for large y.
double log_h_plus_1(TailIndex theta, double y);

// Smallest admissible shifts per comparison lemma.
double a_min_key1(TailIndex theta, double alpha);
double a_min_key(TailIndex theta, double alpha);
double a_young(TailIndex theta);
double a_young1(TailIndex theta);

// Comparison constants; A must be admissible for the respective lemma.
double c_alpha_theta(TailIndex theta, double alpha, double A);
double b_alpha_theta(TailIndex theta, double alpha, double A);

// Assembles the full constant bundle; alpha > 1 required.
ConstantSet constants(TailIndex theta, double alpha);

// R_{n,theta}: ratio of the norm-to-moment prefactor to the direct one,
// (4/log 1.5) psi^{-1}(2n) Gamma(1/theta+1) / psi^{-1}(psi(x_theta)+n).
double prefactor_ratio(long long n, TailIndex theta);

// Gamma via a Lanczos approximation (g = 7, 9 terms); relative error < 1e-12
// on the positive axis used here.
double gamma_fn(double x);
double log_gamma(double x);

}  // namespace tailbounds
