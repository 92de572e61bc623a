// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#include "tailbounds/chaining.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tailbounds/quadrature.hpp"

namespace tailbounds {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
}

// ---------------------------------------------------------------------------
// FiniteMetricSpace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<double>> dist) : n_(dist.size()), d_(std::move(dist)) {
    if (n_ == 0 || n_ > 20) throw std::invalid_argument("FiniteMetricSpace: size must be in [1, 20]");
    for (const auto& row : d_)
        if (row.size() != n_) throw std::invalid_argument("FiniteMetricSpace: matrix not square");
}

double FiniteMetricSpace::radius() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n_; ++c) {
        double worst = 0.0;
        for (std::size_t j = 0; j < n_; ++j) worst = std::max(worst, d_[c][j]);
        best = std::min(best, worst);
    }
    return best;
}

std::size_t FiniteMetricSpace::covering_number(double eps) const {
    // Exact minimum set cover over balls B(c, eps), c in T, via subset DP.
    std::vector<unsigned> ball(n_, 0);
    for (std::size_t c = 0; c < n_; ++c)
        for (std::size_t j = 0; j < n_; ++j)
            if (d_[c][j] <= eps) ball[c] |= 1u << j;
    unsigned full = (n_ == 32 ? ~0u : (1u << n_) - 1u);
    std::vector<int> cost(full + 1u, std::numeric_limits<int>::max());
    cost[0] = 0;
    for (unsigned mask = 0; mask < full; ++mask) {
        if (cost[mask] == std::numeric_limits<int>::max()) continue;
        // cover the lowest uncovered point with every candidate ball
        unsigned missing = full & ~mask;
        unsigned low = missing & (~missing + 1u);
        for (std::size_t c = 0; c < n_; ++c) {
            if (!(ball[c] & low)) continue;
            unsigned next = mask | ball[c];
            cost[next] = std::min(cost[next], cost[mask] + 1);
        }
    }
    return static_cast<std::size_t>(cost[full]);
}

std::vector<double> FiniteMetricSpace::breakpoints() const {
    std::set<double> s;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (d_[i][j] > 0.0) s.insert(d_[i][j]);
    return std::vector<double>(s.begin(), s.end());
}

// ---------------------------------------------------------------------------
// CircleSpace

double CircleSpace::radius() const { return kPi; }

std::size_t CircleSpace::covering_number(double eps) const {
    if (!(eps > 0.0)) throw std::invalid_argument("covering_number: eps must be > 0");
    if (eps >= kPi) return 1;
    return static_cast<std::size_t>(std::ceil(kPi / eps));
}

std::vector<double> CircleSpace::breakpoints() const {
    std::vector<double> out;
    for (int k = 2; k <= 64; ++k) out.push_back(kPi / k);
    std::sort(out.begin(), out.end());
    out.push_back(kPi);
    return out;
}

// ---------------------------------------------------------------------------
// CsvCovering

CsvCovering::CsvCovering(std::vector<double> eps, std::vector<std::size_t> n) : eps_(std::move(eps)), n_(std::move(n)) {
    if (eps_.size() != n_.size() || eps_.empty()) throw std::invalid_argument("CsvCovering: length mismatch");
    for (std::size_t i = 1; i < eps_.size(); ++i) {
        if (eps_[i] <= eps_[i - 1]) throw std::invalid_argument("CsvCovering: epsilons must be ascending");
        if (n_[i] > n_[i - 1]) throw std::invalid_argument("CsvCovering: N must be nonincreasing in epsilon");
    }
    if (n_.back() != 1) throw std::invalid_argument("CsvCovering: largest epsilon must have N = 1 to define e(T)");
}

CsvCovering::CsvCovering(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("CsvCovering: cannot open " + path);
    std::string line;
    if (!std::getline(f, line) || line != "epsilon,N") throw std::runtime_error("CsvCovering: missing `epsilon,N` header");
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b)) throw std::runtime_error("CsvCovering: bad row " + line);
        eps_.push_back(std::stod(a));
        n_.push_back(static_cast<std::size_t>(std::stoull(b)));
    }
    *this = CsvCovering(std::move(eps_), std::move(n_));
}

double CsvCovering::radius() const {
    for (std::size_t i = 0; i < eps_.size(); ++i)
        if (n_[i] == 1) return eps_[i];
    return eps_.back();
}

std::size_t CsvCovering::covering_number(double eps) const {
    if (!(eps > 0.0)) throw std::invalid_argument("covering_number: eps must be > 0");
    // N(eps) = value at the largest grid epsilon <= eps; held constant below
    // the grid (finite-space convention).
    std::size_t out = n_.front();
    for (std::size_t i = 0; i < eps_.size(); ++i) {
        if (eps_[i] <= eps)
            out = n_[i];
        else
            break;
    }
    return out;
}

std::vector<double> CsvCovering::breakpoints() const { return eps_; }

// ---------------------------------------------------------------------------
// Maximal inequalities

double maximal_bound(long long n, TailIndex theta, double max_norm) {
    if (n < 1) throw std::invalid_argument("maximal_bound: n must be >= 1");
    if (!(max_norm > 0.0)) throw std::invalid_argument("maximal_bound: norm must be > 0");
    if (!theta.heavy()) throw std::domain_error("maximal_bound: theta must be in (0,1); see maximal_bound_light");
    return psi_inv(theta, psi(theta, x_theta(theta)) + static_cast<double>(n)) * max_norm;
}

double maximal_bound_light(long long n, TailIndex theta, double max_norm) {
    if (n < 1) throw std::invalid_argument("maximal_bound_light: n must be >= 1");
    if (theta.heavy()) throw std::domain_error("maximal_bound_light: theta must be >= 1");
    return psi_inv(theta, static_cast<double>(n)) * max_norm;
}

double maximal_lower_bound(long long n, TailIndex theta, double scale) {
    if (n < 2) throw std::invalid_argument("maximal_lower_bound: n must be >= 2");
    if (!(scale > 0.0)) throw std::invalid_argument("maximal_lower_bound: scale must be > 0");
    return scale * std::pow(std::log(static_cast<double>(n)), 1.0 / theta.theta) * (1.0 - std::exp(-1.0));
}

// ---------------------------------------------------------------------------
// Dudley bound

double circle_entropy_integral(TailIndex theta) {
    // pi * sum_{k>=2} (log k)^(1/theta) / (k (k-1)). Terms are summed directly
    // up to K and the remainder is bracketed by the integral comparison
    //   int_{K+1}^inf  <=  tail  <=  int_{K}^inf,
    // whose midpoint is used; the bracket half-width is < 1e-10 at K = 3e6.
    double inv_t = 1.0 / theta.theta;
    const long long K = 3000000;
    double sum = 0.0;
    for (long long k = 2; k <= K; ++k) {
        double lk = std::log(static_cast<double>(k));
        sum += std::pow(lk, inv_t) / (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    auto tail_integral = [&](double from) {
        // substitute x = e^v: int_from^inf (log x)^p/(x(x-1)) dx
        //   = int_{log from}^inf v^p e^{-v} / (1 - e^{-v}) dv
        double v0 = std::log(from);
        return integrate([&](double v) { return std::pow(v, inv_t) * std::exp(-v) / (1.0 - std::exp(-v)); }, v0,
                         v0 + 80.0, 1e-15);
    };
    double hi = tail_integral(static_cast<double>(K));
    double lo = tail_integral(static_cast<double>(K + 1));
    return kPi * (sum + 0.5 * (lo + hi));
}

double dudley_bound(const CoveringOracle& space, TailIndex theta, double C) {
    if (!(C > 0.0)) throw std::invalid_argument("dudley_bound: C must be > 0");
    double Kt = k_theta(theta);
    double inv_t = 1.0 / theta.theta;

    if (dynamic_cast<const CircleSpace*>(&space) != nullptr)
        return 4.0 * C * Kt * circle_entropy_integral(theta);

    // Piecewise-constant covering function: integrate exactly over the steps.
    double eT = space.radius();
    if (space.covering_number(eT) != 1) throw std::domain_error("dudley_bound: covering function never reaches 1");
    std::vector<double> bps = space.breakpoints();
    bps.push_back(eT);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    double integral = 0.0;
    double prev = 0.0;
    for (double b : bps) {
        if (b > eT) break;
        if (b <= prev) continue;
        // N is constant on (prev, b]; sample inside the open interval
        std::size_t N = space.covering_number(prev + 0.5 * (b - prev));
        if (N > 1) integral += std::pow(std::log(static_cast<double>(N)), inv_t) * (b - prev);
        prev = b;
    }
    return 4.0 * C * Kt * integral;
}

// ---------------------------------------------------------------------------
// Dyadic partitions

double PartitionSequence::radius_at(std::size_t k) const {
    return circle ? e_T * std::pow(2.0, -(static_cast<double>(k) - 1.0)) : e_T * std::pow(2.0, -static_cast<double>(k));
}

PartitionSequence dyadic_partitions_circle(std::size_t k_max) {
    if (k_max < 1) throw std::invalid_argument("dyadic_partitions_circle: k_max must be >= 1");
    PartitionSequence seq;
    seq.circle = true;
    seq.e_T = kPi;
    for (std::size_t k = 1; k <= k_max; ++k) {
        std::size_t cells = std::size_t{1} << (k - 1);
        double width = 2.0 * kPi / static_cast<double>(cells);
        std::vector<PartitionCell> level(cells);
        for (std::size_t m = 0; m < cells; ++m) {
            PartitionCell& c = level[m];
            c.arc_begin = width * static_cast<double>(m);
            c.arc_end = width * static_cast<double>(m + 1);
            c.rep_angle = c.arc_begin;  // left endpoint lies in the cell and in its parent
            c.parent = k == 1 ? -1 : static_cast<int>(m / 2);
        }
        seq.levels.push_back(std::move(level));
    }
    return seq;
}

PartitionSequence dyadic_partitions(const FiniteMetricSpace& space, std::size_t k_max) {
    if (k_max < 1) throw std::invalid_argument("dyadic_partitions: k_max must be >= 1");
    PartitionSequence seq;
    seq.circle = false;
    seq.e_T = space.radius();

    // Level 0 is the whole space; each level splits every parent cell with a
    // greedy eps_k-net chosen inside the parent, so child representatives lie
    // in their parents by construction.
    std::vector<PartitionCell> parents(1);
    for (std::size_t i = 0; i < space.size(); ++i) parents[0].members.push_back(i);
    parents[0].representative = 0;

    for (std::size_t k = 1; k <= k_max; ++k) {
        double eps = seq.e_T * std::pow(2.0, -static_cast<double>(k));
        std::vector<PartitionCell> level;
        for (std::size_t pc = 0; pc < parents.size(); ++pc) {
            const auto& members = parents[pc].members;
            // greedy net over the parent's members
            std::vector<std::size_t> centers;
            for (std::size_t m : members) {
                bool covered = false;
                for (std::size_t c : centers)
                    if (space.dist(c, m) <= eps) covered = true;
                if (!covered) centers.push_back(m);
            }
            std::vector<PartitionCell> cells(centers.size());
            for (std::size_t ci = 0; ci < centers.size(); ++ci) {
                cells[ci].representative = centers[ci];
                cells[ci].parent = static_cast<int>(pc);
            }
            for (std::size_t m : members) {
                std::size_t best = 0;
                double bd = std::numeric_limits<double>::infinity();
                for (std::size_t ci = 0; ci < centers.size(); ++ci) {
                    if (space.dist(centers[ci], m) < bd) {
                        bd = space.dist(centers[ci], m);
                        best = ci;
                    }
                }
                cells[best].members.push_back(m);
            }
            for (auto& c : cells)
                if (!c.members.empty()) level.push_back(std::move(c));
        }
        seq.levels.push_back(level);
        parents = std::move(level);
    }
    return seq;
}

// ---------------------------------------------------------------------------
// Chained information bound

double chained_mi_bound(const InfoSeries& series, TailIndex theta, double alpha, double e_T, double C,
                        ChainVariant variant, ChainWeight weight, bool tail_majorant) {
    if (!(e_T > 0.0) || !(C > 0.0)) throw std::invalid_argument("chained_mi_bound: e_T and C must be > 0");
    double inv_t = 1.0 / theta.theta;
    double two_pow = std::pow(2.0, inv_t);
    double Cc = c_alpha_theta(theta, alpha, a_min_key1(theta, alpha));
    double Bc = b_alpha_theta(theta, alpha, a_min_key(theta, alpha));

    auto per_level = [&](double info) {
        if (info < 0.0) throw std::invalid_argument("chained_mi_bound: negative information value");
        switch (variant) {
            case ChainVariant::FTheta: return two_pow * info + 2.0;
            case ChainVariant::Key1: return two_pow * std::pow(info + Cc, inv_t) + 2.0;
            case ChainVariant::Key: return two_pow * (std::pow(info, inv_t) + Bc) + 2.0;
        }
        return 0.0;
    };
    auto weight_at = [&](std::size_t k) {
        double shift = (weight == ChainWeight::MainText) ? 1.0 : 2.0;
        return std::pow(2.0, -(static_cast<double>(k) - shift));
    };

    double sum = 0.0;
    for (std::size_t k = 1; k <= series.values.size(); ++k) sum += weight_at(k) * per_level(series.values[k - 1]);
    if (tail_majorant && !series.values.empty()) {
        // hold the last I_k constant; the geometric weights sum in closed form
        double tail_w = weight_at(series.values.size());  // sum_{k>K} w_k == w_K
        sum += tail_w * per_level(series.values.back());
    }
    return C * e_T * sum;
}

}  // namespace tailbounds
