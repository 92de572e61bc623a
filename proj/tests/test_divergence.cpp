// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "tailbounds/divergence.hpp"
#include "tailbounds/quadrature.hpp"
#include "tailbounds/rng.hpp"

using namespace tailbounds;

namespace {
DiscreteDist dist(std::vector<double> p) {
    DiscreteDist d;
    d.probs = std::move(p);
    return d;
}
}  // namespace

TEST_CASE("KL examples") {
    auto P = dist({0.3, 0.7});
    CHECK(kl(P, P).value == 0.0);
    CHECK(kl(dist({1.0, 0.0}), dist({0.5, 0.5})).value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(std::isinf(kl(dist({0.5, 0.5}), dist({1.0, 0.0})).value));
    CHECK_THROWS_AS(kl(dist({1.0}), dist({0.5, 0.5})), std::invalid_argument);
}

TEST_CASE("Renyi examples and properties") {
    auto P = dist({0.4, 0.6});
    CHECK(renyi(P, P, 2.0).value == doctest::Approx(0.0));
    CHECK(renyi(dist({1.0, 0.0}), dist({0.5, 0.5}), 2.0).value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(std::isinf(renyi(dist({0.5, 0.5}), dist({1.0, 0.0}), 2.0).value));

    // monotone in alpha; alpha -> 1 limit is KL
    CounterRng rng(RngSpec{2024, 0});
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n = 2 + rng.next_u64() % 5;
        auto P2 = dist(oracles::random_simplex(rng, n));
        auto Q2 = dist(oracles::random_simplex(rng, n));
        double prev = 0.0;
        bool first = true;
        for (double a : {1.2, 1.5, 2.0, 3.0, 5.0}) {
            double v = renyi(P2, Q2, a).value;
            if (!first) CHECK(v >= prev - 1e-12);
            prev = v;
            first = false;
        }
        double klv = kl(P2, Q2).value;
        // D_alpha = KL + c (alpha-1) + O((alpha-1)^2): the Richardson
        // extrapolation from alpha = 1 + 1e-4 removes the linear term and
        // lands within 1e-6 of the KL limit
        double d1 = renyi(P2, Q2, 1.0 + 1e-4).value;
        double d2 = renyi(P2, Q2, 1.0 + 2e-4).value;
        CHECK(std::abs(2.0 * d1 - d2 - klv) < 1e-6);
        CHECK(d1 == doctest::Approx(klv).epsilon(5e-4).scale(1.0));
        // D_infinity dominates
        CHECK(renyi_inf(P2, Q2).value >= renyi(P2, Q2, 5.0).value - 1e-12);
    }
}

TEST_CASE("f_theta divergence examples") {
    TailIndex th(1.0);
    auto P = dist({0.25, 0.75});
    // P = Q: density ratio 1, value log^{1/theta}(1 + A)
    CHECK(f_theta_div(P, P, th, 1.0).value == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(f_theta_div(P, P, TailIndex(0.5), 3.0).value == doctest::Approx(std::pow(std::log(4.0), 2.0)).epsilon(1e-13));
    // single nonzero term: 1 * log(2 + 1)
    CHECK(f_theta_div(dist({1.0, 0.0}), dist({0.5, 0.5}), th, 1.0).value ==
          doctest::Approx(std::log(3.0)).epsilon(1e-13));
    CHECK(std::isinf(f_theta_div(dist({0.5, 0.5}), dist({1.0, 0.0}), th, 1.0).value));
    // normalized diagnostic variant vanishes at P = Q
    CHECK(f_theta_div(P, P, th, 1.0, true).value == doctest::Approx(0.0));
    CHECK_THROWS_AS(f_theta_div(P, P, th, 0.5), std::invalid_argument);
}

TEST_CASE("comparison bounds key1/key: examples") {
    CHECK(key1_bound(0.0, 2.0, TailIndex(2.0)) == doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-12));
    CHECK(key1_bound(1.0, 2.0, TailIndex(0.5)) ==
          doctest::Approx(std::pow(1.0 + std::log1p(std::exp(1.0)), 2.0)).epsilon(1e-12));  // ~5.352
    CHECK(key1_bound(0.7, 3.0, TailIndex(1.0)) == doctest::Approx(0.7 + std::log(2.0)).epsilon(1e-12));
    CHECK(key_bound(0.0, 2.0, TailIndex(0.5)) ==
          doctest::Approx(b_alpha_theta(TailIndex(0.5), 2.0, a_min_key(TailIndex(0.5), 2.0))).epsilon(1e-12));
    CHECK(key_bound(1.3, 2.0, TailIndex(2.0)) ==
          doctest::Approx(std::sqrt(1.3) + std::sqrt(std::log(2.0))).epsilon(1e-12));
}

TEST_CASE("key1 and key dominate the f_theta divergence on random pairs") {
    CounterRng rng(RngSpec{77, 0});
    for (int rep = 0; rep < 1000; ++rep) {
        double ths[] = {0.3, 0.5, 0.8, 1.0, 2.0};
        double als[] = {1.5, 2.0, 3.0, 5.0};
        TailIndex th(ths[rng.next_u64() % 5]);
        double al = als[rng.next_u64() % 4];
        std::size_t n = 2 + rng.next_u64() % 5;
        auto P = dist(oracles::random_simplex(rng, n));
        auto Q = dist(oracles::random_simplex(rng, n));
        double dal = renyi(P, Q, al).value;
        double df1 = f_theta_div(P, Q, th, a_min_key1(th, al)).value;
        CHECK(df1 <= key1_bound(dal, al, th) + 1e-10);
        double df2 = f_theta_div(P, Q, th, a_min_key(th, al)).value;
        CHECK(df2 <= key_bound(dal, al, th) + 1e-10);
    }
}

TEST_CASE("isotropic Gaussian Renyi divergence") {
    CHECK(renyi_gaussian_iso({1.0, 2.0}, {1.0, 2.0}, 0.7, 3.0) == doctest::Approx(0.0));
    CHECK(renyi_gaussian_iso({0.0}, {1.0}, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(renyi_gaussian_iso({0.0}, {1.0, 2.0}, 1.0, 2.0), std::invalid_argument);

    // 1-d quadrature of the defining integral, tol 1e-6
    for (double alpha : {1.5, 2.0, 4.0}) {
        double mu = 0.8, sigma = 1.3;
        auto integrand = [&](double x) {
            double p = std::exp(-0.5 * (x - mu) * (x - mu) / (sigma * sigma)) / (sigma * std::sqrt(2.0 * M_PI));
            double q = std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * M_PI));
            return std::pow(p, alpha) * std::pow(q, 1.0 - alpha);
        };
        double integral = integrate_rel(integrand, -15.0, 15.0, 1e-10);
        double oracle = std::log(integral) / (alpha - 1.0);
        CHECK(renyi_gaussian_iso({mu}, {0.0}, sigma, alpha) == doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("Renyi divergence of the max of n draws") {
    CHECK(renyi_max_of_n(1, 2.0) == doctest::Approx(0.0));
    CHECK(renyi_max_of_n(2, 2.0) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
    CHECK(kl_max_of_n(1) == doctest::Approx(0.0));
    CHECK(kl_max_of_n(4) == doctest::Approx(std::log(4.0) - 0.75).epsilon(1e-14));

    // quadrature of the order-statistic density ratio (n u^{n-1})^alpha on [0,1]
    for (long long n : {2, 5, 16, 64}) {
        for (double alpha : {1.5, 2.0, 4.0}) {
            auto integrand = [&](double u) {
                return std::pow(static_cast<double>(n), alpha) * std::pow(u, alpha * (n - 1.0));
            };
            double integral = integrate_rel(integrand, 0.0, 1.0, 1e-11);
            double oracle = std::log(integral) / (alpha - 1.0);
            CHECK(renyi_max_of_n(n, alpha) == doctest::Approx(oracle).epsilon(1e-8));
        }
    }
}

TEST_CASE("decorrelation bound evaluator") {
    CHECK(decorrelation_bound(0.0, 2.0, TailIndex(1.0), DecorrelationVariant::FTheta) == doctest::Approx(2.0));
    double expect = 4.0 * std::pow(1.0 + std::log1p(std::exp(1.0)), 2.0) + 2.0;  // ~23.41
    CHECK(decorrelation_bound(1.0, 2.0, TailIndex(0.5), DecorrelationVariant::Key1, 2.0) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(decorrelation_bound(-1.0, 0.0, TailIndex(1.0), DecorrelationVariant::FTheta),
                    std::invalid_argument);
}

TEST_CASE("decorrelation inequality: deterministic enumeration, support <= 6") {
    // E_mu r <= 2^{1/theta} D_ftheta(mu||nu) + E_nu exp(r^theta), A = A_young.
    // Supports 2 and 3 are enumerated from simplex grids; supports 4-6 from a
    // fixed-seed deterministic family.
    auto check_triple = [](const std::vector<double>& mu, const std::vector<double>& nu,
                           const std::vector<double>& r, TailIndex th) {
        double lhs = 0.0, moment = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            lhs += mu[i] * r[i];
            moment += nu[i] * std::exp(std::pow(r[i], th.theta));
        }
        DiscreteDist M, N;
        M.probs = mu;
        N.probs = nu;
        double df = f_theta_div(M, N, th, a_young(th)).value;
        double rhs = std::pow(2.0, 1.0 / th.theta) * df + moment;
        CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
        // truncated variant with its own A
        DiscreteDist M2 = M, N2 = N;
        double df1 = f_theta_div(M2, N2, th, a_young1(th)).value;
        double hmom = 0.0;
        for (std::size_t i = 0; i < nu.size(); ++i) hmom += nu[i] * truncated_exp_h(th, r[i]);
        CHECK(lhs <= std::pow(2.0, 1.0 / th.theta) * df1 + 2.0 * hmom + 1e-12);
    };

    std::vector<std::vector<double>> simplex2, simplex3;
    const int D = 4;
    for (int a = 0; a <= D; ++a) simplex2.push_back({a / double(D), (D - a) / double(D)});
    for (int a = 0; a <= D; ++a)
        for (int b = 0; a + b <= D; ++b)
            simplex3.push_back({a / double(D), b / double(D), (D - a - b) / double(D)});
    std::vector<double> rgrid = {0.0, 0.5, 1.0, 2.0};

    for (double th : {0.5, 1.0, 2.0}) {
        TailIndex t(th);
        for (const auto& mu : simplex2)
            for (const auto& nu : simplex2) {
                bool ac = true;  // mu << nu
                for (std::size_t i = 0; i < 2; ++i)
                    if (mu[i] > 0 && nu[i] == 0) ac = false;
                if (!ac) continue;
                for (double r0 : rgrid)
                    for (double r1 : rgrid) check_triple(mu, nu, {r0, r1}, t);
            }
        for (const auto& mu : simplex3)
            for (const auto& nu : simplex3) {
                bool ac = true;
                for (std::size_t i = 0; i < 3; ++i)
                    if (mu[i] > 0 && nu[i] == 0) ac = false;
                if (!ac) continue;
                check_triple(mu, nu, {0.0, 1.0, 2.0}, t);
                check_triple(mu, nu, {2.0, 0.5, 1.0}, t);
            }
        CounterRng rng(RngSpec{606, 0});
        for (int rep = 0; rep < 400; ++rep) {
            std::size_t n = 4 + rng.next_u64() % 3;
            auto mu = oracles::random_simplex(rng, n);
            auto nu = oracles::random_simplex(rng, n);
            std::vector<double> r(n);
            for (auto& x : r) x = 3.0 * rng.uniform01();
            check_triple(mu, nu, r, t);
        }
    }
}

TEST_CASE("argmax selector: I_alpha = log n and the p-th moment identity") {
    for (int n = 2; n <= 8; ++n) {
        for (double alpha : {1.5, 2.0, 3.0}) {
            CHECK(oracles::argmax_renyi_mi(n, alpha) == doctest::Approx(std::log(n)).epsilon(1e-9));
        }
        for (double p : {0.5, 2.0, 3.0}) {
            CHECK(oracles::argmax_pth_moment_minus_one(n, p) ==
                  doctest::Approx(std::pow(n, p - 1.0) - 1.0).epsilon(1e-9));
        }
    }
}
