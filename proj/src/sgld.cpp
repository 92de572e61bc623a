// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#include "tailbounds/sgld.hpp"

#include <cmath>
#include <stdexcept>

#include "tailbounds/distlib.hpp"

namespace tailbounds {

namespace {

double sign_pow(double y, double lambda) { return (y < 0.0 ? -1.0 : 1.0) * std::pow(std::abs(y), lambda); }

std::array<double, 2> grad(const std::array<double, 2>& w, const std::array<double, 2>& x, double y) {
    double resid = x[0] * w[0] + x[1] * w[1] - y;
    return {2.0 * resid * x[0], 2.0 * resid * x[1]};
}

std::array<double, 2> batch_grad(const RegressionData& d, const std::array<double, 2>& w,
                                 const std::vector<std::size_t>& idx) {
    std::array<double, 2> g{0.0, 0.0};
    for (std::size_t i : idx) {
        auto gi = grad(w, d.x[i], d.y[i]);
        g[0] += gi[0];
        g[1] += gi[1];
    }
    g[0] /= static_cast<double>(idx.size());
    g[1] /= static_cast<double>(idx.size());
    return g;
}

std::array<double, 2> full_grad(const RegressionData& d, const std::array<double, 2>& w) {
    std::array<double, 2> g{0.0, 0.0};
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto gi = grad(w, d.x[i], d.y[i]);
        g[0] += gi[0];
        g[1] += gi[1];
    }
    g[0] /= static_cast<double>(d.size());
    g[1] /= static_cast<double>(d.size());
    return g;
}

double loss(const std::array<double, 2>& w, const std::array<double, 2>& x, double y) {
    double r = x[0] * w[0] + x[1] * w[1] - y;
    return r * r;
}

}  // namespace

RegressionData generate_regression(const RegressionTask& task, RngSpec rng) {
    if (task.n < 1) throw std::invalid_argument("generate_regression: n must be >= 1");
    if (task.lambda_power < 1.0) throw std::invalid_argument("generate_regression: lambda must be >= 1");
    RegressionData d;
    d.x.resize(task.n);
    d.y.resize(task.n);
    CounterRng r(rng);
    for (std::size_t i = 0; i < task.n; ++i) {
        d.x[i] = {r.uniform01(), r.uniform01()};
        double latent = d.x[i][0] * task.beta0[0] + d.x[i][1] * task.beta0[1] + r.gaussian();
        d.y[i] = task.lambda_power == 1.0 ? latent : sign_pow(latent, task.lambda_power);
    }
    return d;
}

SgldTrajectory sgld_run(const RegressionData& data, const SgldSchedule& schedule, RngSpec rng) {
    if (schedule.sigma < 0.0) throw std::invalid_argument("sgld_run: sigma must be >= 0");
    if (schedule.epochs < 1) throw std::invalid_argument("sgld_run: epochs must be >= 1");
    std::size_t n = data.size();
    std::size_t T = schedule.epochs * n;
    std::size_t batch = std::max<std::size_t>(1, schedule.batch);
    std::size_t checkpoint = (T + 99) / 100;

    SgldTrajectory traj;
    traj.theta = schedule.theta;
    traj.iterates.reserve(T + 1);
    traj.eta.reserve(T);
    traj.sigma.reserve(T);
    traj.g_hat.reserve(T);

    CounterRng r(rng);
    std::array<double, 2> w{0.0, 0.0};
    traj.iterates.push_back(w);
    double g_hat_current = 0.0;
    double mom = 2.0 / schedule.theta;

    std::vector<std::size_t> idx(batch);
    for (std::size_t t = 1; t <= T; ++t) {
        double eta = schedule.eta0 * std::pow(static_cast<double>(t), -schedule.theta * schedule.theta / 2.0);
        if ((t - 1) % checkpoint == 0) {
            // 64 independent minibatch redraws at the current iterate estimate
            // E||g - gbar||^{2/theta}; held until the next checkpoint.
            auto gbar = full_grad(data, w);
            double acc = 0.0;
            for (int rep = 0; rep < 64; ++rep) {
                for (std::size_t b = 0; b < batch; ++b)
                    idx[b] = static_cast<std::size_t>(r.uniform01() * static_cast<double>(n)) % n;
                auto g = batch_grad(data, w, idx);
                double dx = g[0] - gbar[0], dy = g[1] - gbar[1];
                acc += std::pow(std::sqrt(dx * dx + dy * dy), mom);
            }
            g_hat_current = acc / 64.0;
        }
        for (std::size_t b = 0; b < batch; ++b)
            idx[b] = static_cast<std::size_t>(r.uniform01() * static_cast<double>(n)) % n;
        auto g = batch_grad(data, w, idx);
        double n1 = schedule.sigma > 0.0 ? schedule.sigma * r.gaussian() : 0.0;
        double n2 = schedule.sigma > 0.0 ? schedule.sigma * r.gaussian() : 0.0;
        w[0] += -eta * g[0] + n1;
        w[1] += -eta * g[1] + n2;
        if (std::sqrt(w[0] * w[0] + w[1] * w[1]) > 1e12)
            throw std::runtime_error("sgld_run: trajectory diverged (||W|| > 1e12) at step " + std::to_string(t));
        traj.iterates.push_back(w);
        traj.eta.push_back(eta);
        traj.sigma.push_back(schedule.sigma);
        traj.g_hat.push_back(g_hat_current);
    }
    return traj;
}

double gen_gap(const std::array<double, 2>& weights, const RegressionData& train, const RegressionTask& task,
               RngSpec rng, std::size_t test_factor) {
    if (!std::isfinite(weights[0]) || !std::isfinite(weights[1]))
        throw std::invalid_argument("gen_gap: weights must be finite");
    double train_risk = 0.0;
    for (std::size_t i = 0; i < train.size(); ++i) train_risk += loss(weights, train.x[i], train.y[i]);
    train_risk /= static_cast<double>(train.size());

    RegressionTask test_task = task;
    test_task.n = train.size() * test_factor;
    RegressionData test = generate_regression(test_task, rng);
    double test_risk = 0.0;
    for (std::size_t i = 0; i < test.size(); ++i) test_risk += loss(weights, test.x[i], test.y[i]);
    test_risk /= static_cast<double>(test.size());
    return test_risk - train_risk;
}

double sgld_bound(const SgldTrajectory& traj, TailIndex theta, double alpha, double A, double v_theta, std::size_t n) {
    if (theta.theta > 2.0) throw std::domain_error("sgld_bound: theta must be in (0, 2]");
    if (A < 1.0) throw std::invalid_argument("sgld_bound: A must be >= 1");
    if (!(v_theta > 0.0)) throw std::invalid_argument("sgld_bound: v_theta must be > 0");
    double inv_t = 1.0 / theta.theta;
    std::size_t T = traj.eta.size() + 1;  // updates produce W_2..W_{T}; the sum runs t = 1..T-1
    double path = std::pow(std::log1p(A), inv_t);
    double B = b_alpha_theta(theta, alpha, A);
    for (std::size_t t = 0; t + 1 < T; ++t) {
        if (!(traj.sigma[t] > 0.0)) throw std::domain_error("sgld_bound: sigma_t must be > 0");
        double drift = 2.0 * alpha * traj.eta[t] * traj.eta[t] / (traj.sigma[t] * traj.sigma[t]);
        path += B + std::pow(drift, inv_t) * traj.g_hat[t];
    }
    double t_factor = std::pow(static_cast<double>(T), std::max(inv_t - 1.0, 0.0));
    double M = constants(theta, alpha).M_theta;
    return M * v_theta / std::sqrt(static_cast<double>(n)) *
           (4.0 + std::pow(2.0, inv_t) * t_factor * path);
}

double estimate_loss_scale(const RegressionData& data, const RegressionTask& task, TailIndex theta, RngSpec rng) {
    // Probe a few representative weights (origin, truth, reflected truth) and
    // take the largest empirical Orlicz norm of the centered loss.
    RegressionTask probe_task = task;
    probe_task.n = 20000;
    RegressionData fresh = generate_regression(probe_task, rng);
    (void)data;
    std::vector<std::array<double, 2>> probes = {
        {0.0, 0.0}, {task.beta0[0], task.beta0[1]}, {-task.beta0[0], -task.beta0[1]}, {1.0, 1.0}};
    double best = 0.0;
    for (const auto& w : probes) {
        double mean = 0.0;
        std::vector<double> ls(fresh.size());
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            ls[i] = loss(w, fresh.x[i], fresh.y[i]);
            mean += ls[i];
        }
        mean /= static_cast<double>(fresh.size());
        for (double& v : ls) v = v - mean;
        best = std::max(best, orlicz_norm(ls, theta));
    }
    return best;
}

}  // namespace tailbounds
