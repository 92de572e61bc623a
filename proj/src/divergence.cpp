// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#include "tailbounds/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tailbounds {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(const DiscreteDist& P, const DiscreteDist& Q) {
    P.validate();
    Q.validate();
    if (P.probs.size() != Q.probs.size()) throw std::invalid_argument("divergence: support size mismatch");
}

// log(sum exp(x_i)) over finite entries.
double log_sum_exp(const std::vector<double>& xs) {
    double m = -kInf;
    for (double x : xs) m = std::max(m, x);
    if (m == -kInf) return -kInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}
}  // namespace

void DiscreteDist::validate() const {
    if (probs.empty()) throw std::invalid_argument("DiscreteDist: empty");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("DiscreteDist: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("DiscreteDist: probabilities must sum to 1");
    if (!atoms.empty() && atoms.size() != probs.size())
        throw std::invalid_argument("DiscreteDist: atoms length mismatch");
}

double DiscreteDist::mean_atom() const {
    if (!has_atoms()) throw std::invalid_argument("DiscreteDist: no atoms");
    double m = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) m += probs[i] * atoms[i];
    return m;
}

bool DivergenceValue::is_infinite() const { return std::isinf(value); }

DivergenceValue kl(const DiscreteDist& P, const DiscreteDist& Q) {
    check_pair(P, Q);
    DivergenceValue out;
    out.kind = DivKind::KL;
    double sum = 0.0;
    for (std::size_t i = 0; i < P.probs.size(); ++i) {
        double p = P.probs[i], q = Q.probs[i];
        if (p == 0.0) continue;
        if (q == 0.0) {
            out.value = kInf;
            return out;
        }
        sum += p * std::log(p / q);
    }
    out.value = std::max(0.0, sum);  // clip rounding residue
    return out;
}

DivergenceValue renyi(const DiscreteDist& P, const DiscreteDist& Q, double alpha) {
    if (!(alpha > 1.0)) throw std::invalid_argument("renyi: alpha must be > 1");
    check_pair(P, Q);
    DivergenceValue out;
    out.kind = DivKind::Renyi;
    out.alpha = alpha;
    std::vector<double> terms;
    terms.reserve(P.probs.size());
    for (std::size_t i = 0; i < P.probs.size(); ++i) {
        double p = P.probs[i], q = Q.probs[i];
        if (p == 0.0) continue;
        if (q == 0.0) {
            out.value = kInf;
            return out;
        }
        terms.push_back(alpha * std::log(p) - (alpha - 1.0) * std::log(q));
    }
    out.value = std::max(0.0, log_sum_exp(terms) / (alpha - 1.0));
    return out;
}

DivergenceValue renyi_inf(const DiscreteDist& P, const DiscreteDist& Q) {
    check_pair(P, Q);
    DivergenceValue out;
    out.kind = DivKind::Renyi;
    out.alpha = kInf;
    double max_ratio = 0.0;
    for (std::size_t i = 0; i < P.probs.size(); ++i) {
        double p = P.probs[i], q = Q.probs[i];
        if (p == 0.0) continue;
        if (q == 0.0) {
            out.value = kInf;
            return out;
        }
        max_ratio = std::max(max_ratio, p / q);
    }
    out.value = std::max(0.0, std::log(max_ratio));
    return out;
}

DivergenceValue f_theta_div(const DiscreteDist& P, const DiscreteDist& Q, TailIndex theta, double A,
                            bool subtract_at_one) {
    if (A < 1.0) throw std::invalid_argument("f_theta_div: A must be >= 1");
    check_pair(P, Q);
    DivergenceValue out;
    out.kind = DivKind::FTheta;
    out.theta = theta.theta;
    out.A = A;
    double inv_t = 1.0 / theta.theta;
    double sum = 0.0;
    for (std::size_t i = 0; i < P.probs.size(); ++i) {
        double p = P.probs[i], q = Q.probs[i];
        if (p == 0.0) continue;  // f_theta(0) = 0
        if (q == 0.0) {
            out.value = kInf;
            return out;
        }
        // q f(p/q) = p log^{1/theta}(p/q + A); the ratio is evaluated as
        // logaddexp(log p - log q, log A) so extreme ratios never overflow.
        double lr = std::log(p) - std::log(q);
        double la = std::log(A);
        double m = std::max(lr, la);
        double log_arg = m + std::log(std::exp(lr - m) + std::exp(la - m));
        sum += p * std::pow(log_arg, inv_t);
    }
    if (subtract_at_one) sum -= std::pow(std::log1p(A), inv_t);
    out.value = sum;
    return out;
}

double key1_bound(double d_alpha, double alpha, TailIndex theta) {
    if (d_alpha < 0.0) throw std::invalid_argument("key1_bound: divergence must be >= 0");
    double C = c_alpha_theta(theta, alpha, a_min_key1(theta, alpha));
    return std::pow(d_alpha + C, 1.0 / theta.theta);
}

double key_bound(double d_alpha, double alpha, TailIndex theta) {
    if (d_alpha < 0.0) throw std::invalid_argument("key_bound: divergence must be >= 0");
    double B = b_alpha_theta(theta, alpha, a_min_key(theta, alpha));
    return std::pow(d_alpha, 1.0 / theta.theta) + B;
}

double renyi_gaussian_iso(const std::vector<double>& mu1, const std::vector<double>& mu2, double sigma, double alpha) {
    if (mu1.size() != mu2.size()) throw std::invalid_argument("renyi_gaussian_iso: dimension mismatch");
    if (!(sigma > 0.0)) throw std::invalid_argument("renyi_gaussian_iso: sigma must be > 0");
    double sq = 0.0;
    for (std::size_t i = 0; i < mu1.size(); ++i) sq += (mu1[i] - mu2[i]) * (mu1[i] - mu2[i]);
    return alpha * sq / (2.0 * sigma * sigma);
}

double renyi_max_of_n(long long n, double alpha) {
    if (n < 1) throw std::invalid_argument("renyi_max_of_n: n must be >= 1");
    if (!(alpha > 1.0)) throw std::invalid_argument("renyi_max_of_n: alpha must be > 1");
    double nn = static_cast<double>(n);
    return (alpha * std::log(nn) - std::log(alpha * (nn - 1.0) + 1.0)) / (alpha - 1.0);
}

double kl_max_of_n(long long n) {
    if (n < 1) throw std::invalid_argument("kl_max_of_n: n must be >= 1");
    double nn = static_cast<double>(n);
    return std::log(nn) - (nn - 1.0) / nn;
}

double decorrelation_bound(double div_term, double moment_term, TailIndex theta, DecorrelationVariant variant,
                           double alpha) {
    if (div_term < 0.0 || moment_term < 0.0) throw std::invalid_argument("decorrelation_bound: terms must be >= 0");
    double two_pow = std::pow(2.0, 1.0 / theta.theta);
    double routed = 0.0;
    switch (variant) {
        case DecorrelationVariant::FTheta: routed = div_term; break;
        case DecorrelationVariant::Key1: routed = key1_bound(div_term, alpha, theta); break;
        case DecorrelationVariant::Key: routed = key_bound(div_term, alpha, theta); break;
    }
    return two_pow * routed + moment_term;
}

}  // namespace tailbounds
