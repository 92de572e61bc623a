// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#include "tailbounds/distlib.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tailbounds {

double weibull_from_uniform(double u, TailIndex theta, double scale) {
    if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("weibull_from_uniform: u must be in (0, 1]");
    return scale * std::pow(-std::log(u), 1.0 / theta.theta);
}

Sample sample_weibull(TailIndex theta, double scale, std::size_t n, RngSpec rng) {
    if (n == 0) throw std::invalid_argument("sample_weibull: n must be >= 1");
    if (!(scale > 0.0)) throw std::invalid_argument("sample_weibull: scale must be > 0");
    Sample s;
    s.seed = rng.seed;
    s.meta = "weibull(theta=" + std::to_string(theta.theta) + ",b=" + std::to_string(scale) + ")";
    s.values.resize(n);
    CounterRng r(rng);
    for (std::size_t i = 0; i < n; ++i) s.values[i] = weibull_from_uniform(r.uniform01(), theta, scale);
    return s;
}

Sample sample_symmetric_weibull(TailIndex theta, std::size_t n, RngSpec rng) {
    if (n == 0) throw std::invalid_argument("sample_symmetric_weibull: n must be >= 1");
    Sample s;
    s.seed = rng.seed;
    s.meta = "symmetric_weibull(theta=" + std::to_string(theta.theta) + ")";
    s.values.resize(n);
    CounterRng r(rng);
    for (std::size_t i = 0; i < n; ++i) {
        double mix = r.uniform01();
        double mag = weibull_from_uniform(r.uniform01(), theta, 1.0);
        // mix splits {0 atom | +tail | -tail} as 1/2, 1/4, 1/4.
        if (mix <= 0.5)
            s.values[i] = 0.0;
        else
            s.values[i] = (mix <= 0.75 ? mag : -mag);
    }
    return s;
}

namespace {

// mean_i exp(|x_i|^theta / K^theta), with +inf when any term overflows.
double orlicz_objective(const std::vector<double>& v, double theta, double K) {
    double kpow = std::pow(K, theta);
    double sum = 0.0;
    for (double x : v) {
        double e = std::pow(std::abs(x), theta) / kpow;
        if (e > 700.0) return std::numeric_limits<double>::infinity();
        sum += std::exp(e);
    }
    return sum / static_cast<double>(v.size());
}

}  // namespace

double orlicz_norm(const std::vector<double>& values, TailIndex theta) {
    if (values.empty()) throw std::invalid_argument("orlicz_norm: empty sample");
    double max_abs = 0.0;
    for (double x : values) max_abs = std::max(max_abs, std::abs(x));
    if (max_abs == 0.0) return 0.0;
    double th = theta.theta;
    // At K = max|x| / log(2n)^{1/theta} the max term alone contributes
    // exp(log 2n)/n = 2, so the objective is >= 2 there; double upward for the
    // other end of the bracket.
    double lo = max_abs / std::pow(std::log(2.0 * static_cast<double>(values.size())), 1.0 / th);
    while (orlicz_objective(values, th, lo) < 2.0) lo *= 0.5;
    double hi = lo;
    while (orlicz_objective(values, th, hi) > 2.0) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (orlicz_objective(values, th, mid) > 2.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double orlicz_norm(const Sample& sample, TailIndex theta) { return orlicz_norm(sample.values, theta); }

double orlicz_norm_discrete(const std::vector<double>& probs, const std::vector<double>& values, TailIndex theta) {
    if (probs.size() != values.size() || probs.empty())
        throw std::invalid_argument("orlicz_norm_discrete: length mismatch");
    double max_abs = 0.0;
    for (double x : values) max_abs = std::max(max_abs, std::abs(x));
    if (max_abs == 0.0) return 0.0;
    double th = theta.theta;
    auto obj = [&](double K) {
        double kpow = std::pow(K, th);
        double s = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            double e = std::pow(std::abs(values[i]), th) / kpow;
            if (e > 700.0) return std::numeric_limits<double>::infinity();
            s += probs[i] * std::exp(e);
        }
        return s;
    };
    double lo = max_abs / 100.0, hi = max_abs;
    while (obj(lo) < 2.0) lo *= 0.5;
    while (obj(hi) > 2.0) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (obj(mid) > 2.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Sample power_transform(const Sample& sample, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("power_transform: kappa must be > 0");
    Sample out = sample;
    out.meta = sample.meta + "|pow(" + std::to_string(kappa) + ")";
    for (double& x : out.values) x = (x < 0.0 ? -1.0 : 1.0) * std::pow(std::abs(x), kappa);
    return out;
}

std::vector<double> empirical_mgf(const Sample& sample, const std::vector<double>& t_grid) {
    if (sample.values.empty()) throw std::invalid_argument("empirical_mgf: empty sample");
    std::vector<double> out(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        double t = t_grid[j];
        double sum = 0.0;
        bool overflow = false;
        for (double x : sample.values) {
            double e = t * x;
            if (e > 700.0) {
                overflow = true;
                break;
            }
            sum += std::exp(e);
        }
        out[j] = overflow ? std::numeric_limits<double>::infinity()
                          : sum / static_cast<double>(sample.values.size());
    }
    return out;
}

void write_sample_csv(const Sample& sample, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_sample_csv: cannot open " + path);
    f << "value\n";
    f.precision(17);
    for (double x : sample.values) f << x << "\n";
}

Sample read_sample_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_sample_csv: cannot open " + path);
    std::string line;
    if (!std::getline(f, line) || line != "value") throw std::runtime_error("read_sample_csv: missing `value` header");
    Sample s;
    s.meta = "csv:" + path;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        s.values.push_back(std::stod(line));
    }
    if (s.values.empty()) throw std::runtime_error("read_sample_csv: no values");
    return s;
}

}  // namespace tailbounds
