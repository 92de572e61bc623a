// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#include "tailbounds/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tailbounds/distlib.hpp"

namespace tailbounds {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& xs) {
    double m = -kInf;
    for (double x : xs) m = std::max(m, x);
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}
}  // namespace

void PolicyInstance::validate() const {
    reference.validate();
    if (!reference.has_atoms()) throw std::invalid_argument("PolicyInstance: rewards required");
    for (double r : reference.atoms)
        if (!std::isfinite(r)) throw std::invalid_argument("PolicyInstance: rewards must be finite");
}

double mean_reward(const DiscreteDist& policy) { return policy.mean_atom(); }

DiscreteDist kl_tilt(const PolicyInstance& ref, double lambda) {
    ref.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("kl_tilt: lambda must be > 0");
    const auto& p0 = ref.reference.probs;
    const auto& r = ref.reference.atoms;
    std::vector<double> logw(p0.size(), -kInf);
    for (std::size_t i = 0; i < p0.size(); ++i)
        if (p0[i] > 0.0) logw[i] = std::log(p0[i]) + r[i] / lambda;
    double lz = log_sum_exp(logw);
    DiscreteDist out;
    out.atoms = r;
    out.probs.resize(p0.size());
    for (std::size_t i = 0; i < p0.size(); ++i) out.probs[i] = p0[i] > 0.0 ? std::exp(logw[i] - lz) : 0.0;
    return out;
}

TrustRegionResult solve_kl_budget(const PolicyInstance& ref, double epsilon) {
    ref.validate();
    if (!(epsilon > 0.0)) throw std::invalid_argument("solve_kl_budget: epsilon must be > 0");
    const auto& p0 = ref.reference.probs;
    const auto& r = ref.reference.atoms;

    double r_max = -kInf;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (p0[i] > 0.0) r_max = std::max(r_max, r[i]);
    // KL achievable supremum: the lambda -> 0 limit concentrates on the
    // top-reward atoms, with KL -> -log pi_0(argmax set).
    double top_mass = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (p0[i] > 0.0 && r[i] == r_max) top_mass += p0[i];
    double kl_sup = -std::log(top_mass);

    TrustRegionResult out;
    if (epsilon >= kl_sup - 1e-13) {
        out.budget_unreachable = true;
        DiscreteDist lim;
        lim.atoms = r;
        lim.probs.assign(p0.size(), 0.0);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (p0[i] > 0.0 && r[i] == r_max) lim.probs[i] = p0[i] / top_mass;
        out.policy = lim;
        out.achieved_divergence = kl_sup;
        out.mean_reward = mean_reward(lim);
        out.multiplier_or_threshold = 0.0;
        return out;
    }

    double range = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j)
            if (p0[i] > 0.0 && p0[j] > 0.0) range = std::max(range, r[i] - r[j]);
    if (range == 0.0) {
        // constant reward: tilt is the reference, only epsilon -> 0 feasible
        out.budget_unreachable = true;
        out.policy = ref.reference;
        out.achieved_divergence = 0.0;
        out.mean_reward = mean_reward(ref.reference);
        out.multiplier_or_threshold = kInf;
        return out;
    }

    auto kl_at = [&](double lambda) {
        DiscreteDist p = kl_tilt(ref, lambda);
        return kl(p, ref.reference).value;
    };
    // KL(lambda) is decreasing; expand a bracket around the root.
    double lo = range, hi = range;
    while (kl_at(lo) < epsilon) lo *= 0.5;       // smaller lambda -> larger KL
    while (kl_at(hi) > epsilon) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (kl_at(mid) > epsilon)
            lo = mid;
        else
            hi = mid;
    }
    double lambda = 0.5 * (lo + hi);
    out.policy = kl_tilt(ref, lambda);
    out.multiplier_or_threshold = lambda;
    out.achieved_divergence = kl(out.policy, ref.reference).value;
    out.mean_reward = mean_reward(out.policy);
    return out;
}

DiscreteDist renyi_tilt(const PolicyInstance& ref, double alpha, double t) {
    ref.validate();
    if (!(alpha > 1.0)) throw std::invalid_argument("renyi_tilt: alpha must be > 1");
    const auto& p0 = ref.reference.probs;
    const auto& r = ref.reference.atoms;
    double expn = 1.0 / (alpha - 1.0);
    std::vector<double> w(p0.size(), 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < p0.size(); ++i) {
        if (p0[i] > 0.0 && r[i] > t) {
            w[i] = p0[i] * std::pow(r[i] - t, expn);
            z += w[i];
        }
    }
    if (z <= 0.0) throw std::domain_error("renyi_tilt: all atoms truncated (r <= t everywhere)");
    DiscreteDist out;
    out.atoms = r;
    out.probs.resize(p0.size());
    for (std::size_t i = 0; i < p0.size(); ++i) out.probs[i] = w[i] / z;
    return out;
}

TrustRegionResult solve_renyi_budget(const PolicyInstance& ref, double alpha, double epsilon) {
    ref.validate();
    if (!(epsilon > 0.0)) throw std::invalid_argument("solve_renyi_budget: epsilon must be > 0");
    const auto& p0 = ref.reference.probs;
    const auto& r = ref.reference.atoms;

    double r_max = -kInf, r_min = kInf, second = -kInf;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (p0[i] <= 0.0) continue;
        r_max = std::max(r_max, r[i]);
        r_min = std::min(r_min, r[i]);
    }
    for (std::size_t i = 0; i < r.size(); ++i)
        if (p0[i] > 0.0 && r[i] < r_max) second = std::max(second, r[i]);
    double range = r_max - r_min;

    TrustRegionResult out;
    auto div_at = [&](double t) { return renyi(renyi_tilt(ref, alpha, t), ref.reference, alpha).value; };

    if (range == 0.0) {
        out.budget_unreachable = true;
        out.policy = ref.reference;
        out.achieved_divergence = 0.0;
        out.mean_reward = mean_reward(ref.reference);
        out.multiplier_or_threshold = r_max - 1.0;
        return out;
    }

    // t just below the top atom concentrates on the argmax set; guard against
    // the offset rounding away when two rewards nearly tie.
    double t_hi = r_max - (r_max - second) * 1e-13;
    if (t_hi >= r_max) t_hi = std::nextafter(r_max, -kInf);
    double div_sup = div_at(t_hi);
    if (epsilon >= div_sup) {
        out.budget_unreachable = true;
        out.policy = renyi_tilt(ref, alpha, t_hi);
        out.achieved_divergence = div_sup;
        out.mean_reward = mean_reward(out.policy);
        out.multiplier_or_threshold = second;  // smallest t giving the concentrated policy
        return out;
    }

    double t_lo = r_min - range;
    while (div_at(t_lo) > epsilon) t_lo = r_min - 2.0 * (r_min - t_lo);  // expand downward
    double lo = t_lo, hi = t_hi;
    for (int it = 0; it < 400 && (hi - lo) > 1e-12 * (std::abs(hi) + std::abs(lo) + 1.0); ++it) {
        double mid = 0.5 * (lo + hi);
        if (div_at(mid) < epsilon)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    out.policy = renyi_tilt(ref, alpha, t);
    out.multiplier_or_threshold = t;
    out.achieved_divergence = renyi(out.policy, ref.reference, alpha).value;
    out.mean_reward = mean_reward(out.policy);
    return out;
}

DiscreteDist best_of_n(const PolicyInstance& ref, std::size_t n) {
    ref.validate();
    if (n < 1) throw std::invalid_argument("best_of_n: n must be >= 1");
    const auto& p0 = ref.reference.probs;
    const auto& r = ref.reference.atoms;
    std::vector<std::size_t> idx(p0.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });

    DiscreteDist out;
    out.atoms = r;
    out.probs.assign(p0.size(), 0.0);
    double cdf_below = 0.0;
    std::size_t i = 0;
    while (i < idx.size()) {
        // group atoms with equal reward; the max lands in the group with
        // probability F^n - F_prev^n, shared proportionally within the group
        std::size_t j = i;
        double group_mass = 0.0;
        while (j < idx.size() && r[idx[j]] == r[idx[i]]) group_mass += p0[idx[j++]];
        double cdf_at = cdf_below + group_mass;
        double win = std::pow(cdf_at, static_cast<double>(n)) - std::pow(cdf_below, static_cast<double>(n));
        if (group_mass > 0.0)
            for (std::size_t k = i; k < j; ++k) out.probs[idx[k]] = win * p0[idx[k]] / group_mass;
        cdf_below = cdf_at;
        i = j;
    }
    return out;
}

double reward_gain_bound(TailIndex theta, double c_norm, double budget, double alpha, GainVariant variant) {
    if (budget < 0.0) throw std::invalid_argument("reward_gain_bound: budget must be >= 0");
    if (!(c_norm > 0.0)) throw std::invalid_argument("reward_gain_bound: c_norm must be > 0");
    double routed = variant == GainVariant::Key1 ? key1_bound(budget, alpha, theta) : key_bound(budget, alpha, theta);
    return c_norm * (std::pow(2.0, 1.0 / theta.theta) * routed + 2.0);
}

PolicyInstance weibull_quantile_grid(TailIndex theta, std::size_t depth, std::size_t body) {
    if (depth < 1 || body < 1) throw std::invalid_argument("weibull_quantile_grid: depth and body must be >= 1");
    if (depth > 900)
        throw std::invalid_argument("weibull_quantile_grid: tail masses underflow beyond depth 900; "
                                    "use weibull_tail_grid");
    PolicyInstance out;
    // body: equal-mass atoms covering [0, 1/2] of the law at midpoints
    double w = 0.5 / static_cast<double>(body);
    for (std::size_t i = 0; i < body; ++i) {
        double u = (static_cast<double>(i) + 0.5) * w;
        out.reference.probs.push_back(w);
        out.reference.atoms.push_back(std::pow(-std::log1p(-u), 1.0 / theta.theta));
    }
    // tail: dyadic levels, atom j has mass 2^{-(j+1)} and sits at the
    // conditional-median quantile of its slab; the survival probability there
    // is 1.5 * 2^{-(j+1)}, whose log must be formed directly (1 - u rounds to
    // 1 long before the masses underflow)
    const double log2c = std::log(2.0);
    for (std::size_t j = 1; j < depth; ++j) {
        double neg_log_tail = (static_cast<double>(j) + 1.0) * log2c - std::log(1.5);
        out.reference.probs.push_back(std::pow(2.0, -static_cast<double>(j + 1)));
        out.reference.atoms.push_back(std::pow(neg_log_tail, 1.0 / theta.theta));
    }
    // final atom absorbs the remaining 2^{-depth} mass at its slab median
    out.reference.probs.push_back(std::pow(2.0, -static_cast<double>(depth)));
    out.reference.atoms.push_back(std::pow((static_cast<double>(depth) + 1.0) * log2c, 1.0 / theta.theta));
    out.validate();
    return out;
}

WeibullTailGrid weibull_tail_grid(TailIndex theta, std::size_t depth, std::size_t body) {
    if (depth < 1 || body < 1) throw std::invalid_argument("weibull_tail_grid: depth and body must be >= 1");
    WeibullTailGrid out;
    double inv_t = 1.0 / theta.theta;
    double w = 0.5 / static_cast<double>(body);
    for (std::size_t i = 0; i < body; ++i) {
        double u = (static_cast<double>(i) + 0.5) * w;
        out.body_probs.push_back(w);
        out.body_rewards.push_back(std::pow(-std::log1p(-u), inv_t));
    }
    // tail level j carries mass 2^{-(j+1)}; its reward is the quantile at the
    // slab's conditional median, -log of tail mass = (j + 1 - log2(1.5)) log 2
    const double log2c = std::log(2.0);
    for (std::size_t j = 1; j < depth; ++j) {
        double log_mass = -(static_cast<double>(j) + 1.0) * log2c;
        double neg_log_tail = (static_cast<double>(j) + 1.0) * log2c - std::log(1.5);
        out.tail_log_mass.push_back(log_mass);
        out.tail_rewards.push_back(std::pow(neg_log_tail, inv_t));
    }
    // last atom absorbs the remaining 2^{-depth} mass
    double log_mass = -static_cast<double>(depth) * log2c;
    out.tail_log_mass.push_back(log_mass);
    out.tail_rewards.push_back(std::pow((static_cast<double>(depth) + 1.0) * log2c, inv_t));
    return out;
}

double WeibullTailGrid::mean_reward() const {
    double m = 0.0;
    for (std::size_t i = 0; i < body_probs.size(); ++i) m += body_probs[i] * body_rewards[i];
    for (std::size_t j = 0; j < tail_log_mass.size(); ++j) {
        double mass = std::exp(tail_log_mass[j]);  // underflows to 0 deep in the tail
        m += mass * tail_rewards[j];
    }
    return m;
}

GoodhartWitness goodhart_kl_construction(const WeibullTailGrid& grid, double epsilon, double target_gain) {
    if (!(epsilon > 0.0) || !(target_gain > 0.0))
        throw std::invalid_argument("goodhart_kl_construction: epsilon and target_gain must be > 0");
    double log_q_top = grid.top_log_mass();
    double q_top = std::exp(log_q_top);
    double r_top = grid.top_reward();
    double mean_q = grid.mean_reward();

    // Two-block law: the witness moves mass delta onto the top atom.
    //   KL(delta) = (1-delta)(1-q_top) log(1-delta)
    //               + ((1-delta) q_top + delta) [log((1-delta) q_top + delta) - log q_top]
    // which is convex with KL(0) = 0, hence nondecreasing in delta.
    auto kl_at = [&](double delta) {
        double p_top = (1.0 - delta) * q_top + delta;
        double rest = (1.0 - delta) * (1.0 - q_top);
        double kl = p_top * (std::log(p_top) - log_q_top);
        if (rest > 0.0 && delta < 1.0) kl += rest * std::log1p(-delta);
        return std::max(0.0, kl);
    };
    double lo = 0.0, hi = 1.0;
    if (kl_at(1.0) > epsilon) {
        for (int it = 0; it < 300; ++it) {
            double mid = 0.5 * (lo + hi);
            if (kl_at(mid) <= epsilon)
                lo = mid;
            else
                hi = mid;
        }
    } else {
        lo = 1.0;
    }
    GoodhartWitness out;
    out.delta = lo;
    out.kl = kl_at(lo);
    out.gain = lo * (r_top - mean_q);
    out.max_achievable_gain = out.gain;
    out.feasible = out.gain >= target_gain;
    // D_2 = log sum p^2/q, dominated by the top atom: computed in log space
    double p_top = (1.0 - lo) * q_top + lo;
    double top_term = 2.0 * std::log(std::max(p_top, 1e-300)) - log_q_top;
    double body_term = 2.0 * std::log1p(-std::min(lo, 1.0 - 1e-16));  // ~ sum over untouched atoms
    double m = std::max(top_term, body_term);
    out.renyi2 = std::max(0.0, m + std::log(std::exp(top_term - m) + std::exp(body_term - m)));

    // witness distribution over the representable atoms
    DiscreteDist p;
    for (std::size_t i = 0; i < grid.body_probs.size(); ++i) {
        p.probs.push_back((1.0 - lo) * grid.body_probs[i]);
        p.atoms.push_back(grid.body_rewards[i]);
    }
    for (std::size_t j = 0; j < grid.tail_log_mass.size(); ++j) {
        double mass = std::exp(grid.tail_log_mass[j]);
        double extra = (j + 1 == grid.tail_log_mass.size()) ? lo : 0.0;
        p.probs.push_back((1.0 - lo) * mass + extra);
        p.atoms.push_back(grid.tail_rewards[j]);
    }
    out.policy = std::move(p);
    return out;
}

namespace {

// KL and D2 of the mixture witness P = (1-delta) Q + delta e_top.
struct WitnessDivs {
    double kl = 0.0, d2 = 0.0, gain = 0.0;
};

WitnessDivs witness_divs(const PolicyInstance& ref, std::size_t top, double delta) {
    const auto& q = ref.reference.probs;
    const auto& r = ref.reference.atoms;
    double kl = 0.0, chi = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0.0) continue;
        double p = (1.0 - delta) * q[i] + (i == top ? delta : 0.0);
        if (p > 0.0) kl += p * std::log(p / q[i]);
        chi += p * p / q[i];
    }
    WitnessDivs out;
    out.kl = std::max(0.0, kl);
    out.d2 = std::log(std::max(1.0, chi));
    double mean_q = ref.reference_mean_reward();
    out.gain = delta * (r[top] - mean_q);
    return out;
}

}  // namespace

GoodhartWitness goodhart_kl_construction(const PolicyInstance& ref, double epsilon, double target_gain) {
    ref.validate();
    if (!(epsilon > 0.0) || !(target_gain > 0.0))
        throw std::invalid_argument("goodhart_kl_construction: epsilon and target_gain must be > 0");
    const auto& q = ref.reference.probs;
    const auto& r = ref.reference.atoms;
    std::size_t top = 0;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] > r[top] && q[i] > 0.0) top = i;

    // KL(delta) is convex with KL(0) = 0, hence nondecreasing: bisect the
    // largest delta within budget.
    double lo = 0.0, hi = 1.0;
    if (witness_divs(ref, top, 1.0).kl > epsilon) {
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (witness_divs(ref, top, mid).kl <= epsilon)
                lo = mid;
            else
                hi = mid;
        }
    } else {
        lo = 1.0;  // even the point mass fits the budget
    }
    WitnessDivs divs = witness_divs(ref, top, lo);
    GoodhartWitness out;
    out.delta = lo;
    out.kl = divs.kl;
    out.renyi2 = divs.d2;
    out.gain = divs.gain;
    out.max_achievable_gain = divs.gain;
    out.feasible = divs.gain >= target_gain;
    DiscreteDist p;
    p.atoms = r;
    p.probs.resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) p.probs[i] = (1.0 - lo) * q[i] + (i == top ? lo : 0.0);
    out.policy = p;
    return out;
}

double centered_reward_orlicz(const PolicyInstance& ref, TailIndex theta) {
    ref.validate();
    double mean = ref.reference_mean_reward();
    std::vector<double> centered(ref.reference.atoms.size());
    for (std::size_t i = 0; i < centered.size(); ++i) centered[i] = ref.reference.atoms[i] - mean;
    return orlicz_norm_discrete(ref.reference.probs, centered, theta);
}

}  // namespace tailbounds
