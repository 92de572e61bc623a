// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: evaluates the constants, bounds, the circle
// benchmark table, the generalization demos, the alignment solvers, and the
// SGLD lab, emitting CSV or JSON with a provenance footer.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tailbounds/align.hpp"
#include "tailbounds/chaining.hpp"
#include "tailbounds/circle_bench.hpp"
#include "tailbounds/distlib.hpp"
#include "tailbounds/divergence.hpp"
#include "tailbounds/genbounds.hpp"
#include "tailbounds/mc.hpp"
#include "tailbounds/report.hpp"
#include "tailbounds/sgld.hpp"
#include "tailbounds/specfun.hpp"

using nlohmann::json;
using namespace tailbounds;

namespace {

constexpr const char* kVersion = "tailbounds 0.1.0";
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Accepts plain decimals and exact fractions like "1/20".
double parse_ratio(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return std::stod(s);
    double num = std::stod(s.substr(0, slash));
    double den = std::stod(s.substr(slash + 1));
    if (den == 0.0) throw CLI::ValidationError("ratio", "zero denominator in " + s);
    return num / den;
}

std::vector<double> parse_ratio_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_ratio(item));
    }
    if (out.empty()) throw CLI::ValidationError("list", "empty list: " + s);
    return out;
}

struct Output {
    std::string path;  // empty = stdout
    json config_echo;

    void write_text(const std::string& body) const {
        std::string footer = "# config: " + config_echo.dump() + "\n# version: " + std::string(kVersion) + "\n";
        if (path.empty()) {
            std::cout << body << footer;
        } else {
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot open output file " + path);
            f << body << footer;
        }
    }
    void write_json(json j) const {
        j["provenance"] = {{"config", config_echo}, {"version", kVersion}};
        if (path.empty()) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot open output file " + path);
            f << j.dump(2) << "\n";
        }
    }
};

// Config-file precedence: CLI flags override file values override defaults.
// Unknown keys are rejected.
void apply_config_file(CLI::App* sub, const std::string& cfg_path) {
    if (cfg_path.empty()) return;
    std::ifstream f(cfg_path);
    if (!f) throw CLI::ValidationError("config", "cannot open config file " + cfg_path);
    json cfg = json::parse(f, nullptr, /*allow_exceptions=*/true);
    if (!cfg.is_object()) throw CLI::ValidationError("config", "config root must be a JSON object");
    for (auto& [key, value] : cfg.items()) {
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) throw CLI::ValidationError("config", "unknown config key: " + key);
        if (opt->count() > 0) continue;  // CLI flag wins
        std::string as_text = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(as_text);
        opt->run_callback();
    }
}

std::string format_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

PolicyInstance policy_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open policy file " + path);
    json j = json::parse(f);
    PolicyInstance p;
    p.reference.probs = j.at("probs").get<std::vector<double>>();
    p.reference.atoms = j.at("rewards").get<std::vector<double>>();
    p.validate();
    return p;
}

json policy_to_json(const DiscreteDist& d) { return json{{"probs", d.probs}, {"rewards", d.atoms}}; }

// ---------------------------------------------------------------------------

int run_constants(double theta, double alpha, const Output& out, const std::string& format) {
    ConstantSet c = constants(TailIndex(theta), alpha);
    json j{{"theta", c.theta},       {"alpha", c.alpha},         {"x_theta", c.x_theta},
           {"K_theta", c.K_theta},   {"D_theta", c.D_theta},     {"C2_theta", c.C2_theta},
           {"L_theta", c.L_theta},   {"M_theta", c.M_theta},     {"E_theta", c.E_theta},
           {"A_min_key1", c.A_min_key1}, {"A_min_key", c.A_min_key}, {"A_young", c.A_young},
           {"A_young1", c.A_young1}, {"B_alpha_theta", c.B_alpha_theta}, {"C_alpha_theta", c.C_alpha_theta}};
    if (format == "json") {
        out.write_json(j);
    } else {
        std::string body = "name,value\n";
        for (auto& [k, v] : j.items()) body += k + "," + format_value(v.get<double>()) + "\n";
        out.write_text(body);
    }
    return 0;
}

json report_to_json(const BoundReport& r) {
    json j{{"name", r.name}, {"value", r.value}, {"inputs", r.inputs}, {"constants_used", r.constants_used}};
    if (r.has_oracle) {
        j["oracle_estimate"] = r.oracle_estimate;
        j["oracle_se"] = r.oracle_se;
    }
    return j;
}

int run_bounds(double theta, long long n, double norm, double scale, std::uint64_t seed,
               const std::string& covering_csv, const Output& out) {
    TailIndex th(theta);
    std::vector<BoundReport> reports;

    BoundReport maximal;
    maximal.name = th.heavy() ? "maximal_bound" : "maximal_bound_light";
    maximal.inputs = {{"theta", theta}, {"n", static_cast<double>(n)}, {"norm", norm}, {"scale", scale}};
    maximal.value = th.heavy() ? maximal_bound(n, th, norm) : maximal_bound_light(n, th, norm);
    if (th.heavy()) maximal.constants_used = {{"x_theta", x_theta(th)}, {"psi_x_theta", psi(th, x_theta(th))}};
    // Monte Carlo oracle: E[max] of n Weibull(theta, scale) draws
    MeanSe oracle = mc::estimate(20000, RngSpec{seed, 1}, [&](std::size_t, CounterRng& r) {
        double best = 0.0;
        for (long long i = 0; i < n; ++i)
            best = std::max(best, weibull_from_uniform(r.uniform01(), th, scale));
        return best;
    });
    maximal.oracle_estimate = oracle.mean;
    maximal.oracle_se = oracle.se;
    maximal.has_oracle = true;
    reports.push_back(maximal);

    if (th.heavy() && n >= 2) {
        BoundReport lower;
        lower.name = "maximal_lower_bound";
        lower.inputs = maximal.inputs;
        lower.value = maximal_lower_bound(n, th, scale);
        lower.oracle_estimate = oracle.mean;
        lower.oracle_se = oracle.se;
        lower.has_oracle = true;
        reports.push_back(lower);
    }

    BoundReport dudley;
    dudley.name = "circle_dudley";
    dudley.inputs = {{"theta", theta}, {"C", 1.0}};
    dudley.constants_used = {{"K_theta", k_theta(th)}, {"entropy_integral", circle_entropy_integral(th)}};
    CircleSpace circle;
    dudley.value = dudley_bound(circle, th, 1.0);
    reports.push_back(dudley);

    if (!covering_csv.empty()) {
        CsvCovering cov(covering_csv);
        BoundReport file_dudley;
        file_dudley.name = "covering_csv_dudley";
        file_dudley.inputs = {{"theta", theta}, {"C", 1.0}, {"e_T", cov.radius()}};
        file_dudley.constants_used = {{"K_theta", k_theta(th)}};
        file_dudley.value = dudley_bound(cov, th, 1.0);
        reports.push_back(file_dudley);
    }

    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    out.write_json(json{{"reports", arr}});
    return 0;
}

int run_circle_table(double theta, const std::vector<double>& eps, std::size_t replicates, std::uint64_t seed,
                     const std::string& weight, std::size_t levels, const Output& out) {
    BenchConfig cfg{TailIndex(theta)};
    cfg.replicates = replicates;
    cfg.rng = RngSpec{seed, 0};
    cfg.exact_levels = levels;
    cfg.weight = weight == "main" ? ChainWeight::MainText : ChainWeight::Appendix;
    auto rows = bench_table(cfg, eps);
    std::string body = "epsilon,mi,cm,cmi,exact,mc_mean,mc_se\n";
    for (const auto& r : rows) {
        body += format_value(r.epsilon) + "," + format_value(r.mi_bound) + "," + format_value(r.cm_bound) + "," +
                format_value(r.cmi_bound) + "," + format_value(r.exact_mean) + "," + format_value(r.mc_mean) + "," +
                format_value(r.mc_se) + "\n";
    }
    out.write_text(body);
    return 0;
}

int run_genbounds(const std::string& demo, double theta, std::size_t n, double epsilon, std::uint64_t seed,
                  const Output& out) {
    if (demo == "mean-estimation") {
        auto rep = mean_estimation_demo(TailIndex(theta), n, RngSpec{seed, 0});
        out.write_json(json{{"demo", demo},
                            {"n", rep.n},
                            {"theta", rep.theta},
                            {"c_n_theta", rep.c_n_theta},
                            {"e_W", rep.e_W},
                            {"single_scale_info", "inf"},
                            {"chain_bound", rep.chain_bound},
                            {"mc_gap", rep.mc_gap},
                            {"info_series_head",
                             std::vector<double>(rep.info_series.begin(), rep.info_series.begin() + 8)}});
        return 0;
    }
    auto rep = goodhart_selector(TailIndex(theta), n, epsilon, RngSpec{seed, 0});
    out.write_json(json{{"demo", demo},
                        {"n", rep.n},
                        {"epsilon", rep.epsilon},
                        {"kl_info", rep.kl_info},
                        {"mean_lower", rep.mean_lower},
                        {"eps_emax", rep.eps_emax},
                        {"ratio_diag", rep.ratio_diag}});
    return 0;
}

int run_align(const std::string& mode, double theta, double alpha, double eps, std::size_t n, std::size_t depth,
              double target_gain, const std::string& policy_file, const std::string& sweep, const Output& out) {
    // the goodhart mode handles arbitrarily deep grids through the log-space
    // representation, so only the other modes materialize a policy here
    if (mode == "goodhart" && policy_file.empty()) {
        GoodhartWitness w = goodhart_kl_construction(weibull_tail_grid(TailIndex(theta), depth), eps, target_gain);
        json j{{"mode", mode},         {"theta", theta},
               {"epsilon", eps},       {"target_gain", target_gain},
               {"feasible", w.feasible}, {"delta", w.delta},
               {"kl", w.kl},           {"renyi2", w.renyi2},
               {"gain", w.gain},       {"max_achievable_gain", w.max_achievable_gain}};
        out.write_json(j);
        return w.feasible ? 0 : kExitNumerical;
    }
    PolicyInstance ref =
        policy_file.empty() ? weibull_quantile_grid(TailIndex(theta), depth) : policy_from_file(policy_file);
    if (!sweep.empty() && (mode == "kl" || mode == "renyi")) {
        std::string body = "epsilon,achieved_divergence,mean_reward\n";
        for (double e : parse_ratio_list(sweep)) {
            TrustRegionResult res = mode == "kl" ? solve_kl_budget(ref, e) : solve_renyi_budget(ref, alpha, e);
            body += format_value(e) + "," + format_value(res.achieved_divergence) + "," +
                    format_value(res.mean_reward) + "\n";
        }
        out.write_text(body);
        return 0;
    }
    json j{{"mode", mode}, {"theta", theta}, {"reference_mean", ref.reference_mean_reward()}};
    if (mode == "kl" || mode == "renyi") {
        TrustRegionResult res = mode == "kl" ? solve_kl_budget(ref, eps) : solve_renyi_budget(ref, alpha, eps);
        j["achieved_divergence"] = res.achieved_divergence;
        j["mean_reward"] = res.mean_reward;
        j["multiplier_or_threshold"] = res.multiplier_or_threshold;
        j["budget_unreachable"] = res.budget_unreachable;
        j["policy"] = policy_to_json(res.policy);
    } else if (mode == "bofn") {
        DiscreteDist pol = best_of_n(ref, n);
        j["n"] = n;
        j["mean_reward"] = mean_reward(pol);
        j["renyi_alpha_divergence"] = renyi(pol, ref.reference, alpha).value;
        j["lemma_bound"] = renyi_max_of_n(static_cast<long long>(n), alpha);
        j["policy"] = policy_to_json(pol);
    } else if (mode == "goodhart") {
        GoodhartWitness w = goodhart_kl_construction(ref, eps, target_gain);
        j["epsilon"] = eps;
        j["target_gain"] = target_gain;
        j["feasible"] = w.feasible;
        j["delta"] = w.delta;
        j["kl"] = w.kl;
        j["renyi2"] = w.renyi2;
        j["gain"] = w.gain;
        j["max_achievable_gain"] = w.max_achievable_gain;
        if (!w.feasible) {
            out.write_json(j);
            return kExitNumerical;  // grid too shallow for the requested gain
        }
    } else {
        throw CLI::ValidationError("mode", "unknown mode " + mode);
    }
    out.write_json(j);
    return 0;
}

int run_sgld(std::size_t n, double lambda, std::size_t epochs, double sigma, std::size_t seeds, std::size_t batch,
             double alpha, std::uint64_t seed, const Output& out) {
    TailIndex theta(1.0 / lambda);
    std::string body = "seed,n,lambda,iter,gap,bound\n";
    for (std::size_t s = 0; s < seeds; ++s) {
        RegressionTask task{n, lambda};
        RngSpec rng{seed, 1000 + s};
        RegressionData data = generate_regression(task, rng);
        SgldSchedule sched;
        sched.sigma = sigma;
        sched.epochs = epochs;
        sched.batch = batch;
        sched.theta = theta.theta;
        SgldTrajectory traj = sgld_run(data, sched, rng.substream(1));
        double v = estimate_loss_scale(data, task, theta, rng.substream(2));
        double A = a_min_key(theta, alpha);
        double bound = sgld_bound(traj, theta, alpha, A, v, n);
        double gap = gen_gap(traj.iterates.back(), data, task, rng.substream(3));
        body += std::to_string(s) + "," + std::to_string(n) + "," + format_value(lambda) + "," +
                std::to_string(traj.eta.size()) + "," + format_value(gap) + "," + format_value(bound) + "\n";
    }
    out.write_text(body);
    return 0;
}

int run_selftest() {
    // Fast invariant sweep; the full suite lives in the test binaries.
    TailIndex th(0.5);
    bool ok = true;
    auto check = [&](bool cond, const char* what) {
        std::printf("%-58s %s\n", what, cond ? "ok" : "FAIL");
        ok = ok && cond;
    };
    check(std::abs(psi_inv(th, psi(th, 3.0)) - 3.0) < 1e-12, "psi_inv inverts psi");
    check(std::abs(x_theta(TailIndex(0.25)) - 81.0) < 1e-9, "x_theta(0.25) = 81");
    ConstantSet c = constants(th, 2.0);
    check(std::abs(c.A_min_key1 - std::exp(1.0)) < 1e-12, "A_min_key1(0.5, 2) = e");
    DiscreteDist p{{1.0, 0.0}, {}}, q{{0.5, 0.5}, {}};
    check(std::abs(kl(p, q).value - std::log(2.0)) < 1e-12, "KL((1,0)||(1/2,1/2)) = log 2");
    check(std::isinf(kl(q, p).value), "KL support violation is +inf");
    check(std::abs(renyi_max_of_n(2, 2.0) - std::log(4.0 / 3.0)) < 1e-12, "renyi_max_of_n(2,2) = log 4/3");
    check(std::abs(exact_selector_mean(th, 0.05) + 0.1802143) < 1e-4, "circle exact mean at eps=1/20");
    PolicyInstance two;
    two.reference.probs = {0.5, 0.5};
    two.reference.atoms = {0.0, 1.0};
    auto bo2 = best_of_n(two, 2);
    check(std::abs(bo2.probs[0] - 0.25) < 1e-12 && std::abs(bo2.probs[1] - 0.75) < 1e-12, "best_of_n two-atom");
    auto res = solve_kl_budget(two, 0.1);
    check(std::abs(res.achieved_divergence - 0.1) < 1e-8, "KL trust region hits budget");
    std::printf("selftest: %s\n", ok ? "all ok" : "FAILURES");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heavy-tailed information-theoretic bounds toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "json";

    double theta = 0.5, alpha = 2.0, eps = 0.05, norm = 1.0, scale = 1.0, lambda = 1.0, sigma = 1.0;
    double target_gain = 10.0;
    long long n_ll = 100;
    std::size_t n = 100, replicates = 1000000, depth = 4096, epochs = 10, seeds = 20, batch = 1, levels = 20;
    std::uint64_t seed = 20260810;
    std::string eps_list = "1/20,1/30,1/40,1/50,1/100,1/200,1/400";
    std::string demo = "mean-estimation", mode = "kl", weight = "appendix", policy_file, sweep, covering_csv;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--config", config_path, "JSON config file (CLI flags override file values)");
    };

    auto* c_const = app.add_subcommand("constants", "emit the constant bundle for (theta, alpha)");
    c_const->add_option("--theta", theta, "tail index > 0")->check(CLI::PositiveNumber);
    c_const->add_option("--alpha", alpha, "Renyi order > 1")->check(CLI::Range(1.0 + 1e-9, 1e9));
    c_const->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    add_common(c_const);

    auto* c_bounds = app.add_subcommand("bounds", "maximal and Dudley bound values");
    c_bounds->add_option("--theta", theta)->check(CLI::PositiveNumber);
    c_bounds->add_option("--n", n_ll)->check(CLI::PositiveNumber);
    c_bounds->add_option("--norm", norm, "Orlicz norm of the family")->check(CLI::PositiveNumber);
    c_bounds->add_option("--scale", scale, "Weibull scale b for the lower bound")->check(CLI::PositiveNumber);
    c_bounds->add_option("--covering", covering_csv, "CSV covering function (epsilon,N rows)");
    add_common(c_bounds);

    auto* c_table = app.add_subcommand("circle-table", "two-dimensional Weibull benchmark table");
    c_table->add_option("--theta", theta)->check(CLI::Range(1e-9, 1.0 - 1e-9));
    c_table->add_option("--eps", eps_list, "comma list; fractions like 1/20 accepted");
    c_table->add_option("--replicates", replicates)->check(CLI::Range(std::size_t{1000}, std::size_t{100000000}));
    c_table->add_option("--seed", seed);
    c_table->add_option("--levels", levels, "levels with exact I2")->check(CLI::Range(std::size_t{4}, std::size_t{24}));
    c_table->add_option("--weight", weight, "appendix|main chaining weight")
        ->check(CLI::IsMember({"appendix", "main"}));
    add_common(c_table);

    auto* c_gen = app.add_subcommand("genbounds", "generalization-bound demos");
    c_gen->add_option("--demo", demo)->check(CLI::IsMember({"mean-estimation", "goodhart"}));
    c_gen->add_option("--theta", theta)->check(CLI::Range(1e-9, 1.0 - 1e-9));
    c_gen->add_option("--n", n)->check(CLI::PositiveNumber);
    c_gen->add_option("--epsilon", eps);
    c_gen->add_option("--seed", seed);
    add_common(c_gen);

    auto* c_align = app.add_subcommand("align", "trust-region, best-of-n and Goodhart solvers");
    c_align->add_option("--mode", mode)->check(CLI::IsMember({"kl", "renyi", "bofn", "goodhart"}));
    c_align->add_option("--theta", theta)->check(CLI::PositiveNumber);
    c_align->add_option("--alpha", alpha)->check(CLI::Range(1.0 + 1e-9, 1e9));
    c_align->add_option("--eps", eps, "divergence budget");
    c_align->add_option("--n", n, "best-of-n draw count")->check(CLI::PositiveNumber);
    c_align->add_option("--depth", depth, "quantile-grid tail depth")->check(CLI::PositiveNumber);
    c_align->add_option("--target-gain", target_gain);
    c_align->add_option("--policy-file", policy_file, "JSON {probs, rewards}");
    c_align->add_option("--sweep", sweep, "epsilon list for a reward-vs-divergence CSV");
    add_common(c_align);

    auto* c_sgld = app.add_subcommand("sgld", "SGLD generalization lab");
    c_sgld->add_option("--n", n)->check(CLI::PositiveNumber);
    c_sgld->add_option("--lambda", lambda, "response power >= 1")->check(CLI::Range(1.0, 64.0));
    c_sgld->add_option("--epochs", epochs)->check(CLI::PositiveNumber);
    c_sgld->add_option("--sigma", sigma)->check(CLI::PositiveNumber);
    c_sgld->add_option("--seeds", seeds)->check(CLI::PositiveNumber);
    c_sgld->add_option("--batch", batch)->check(CLI::PositiveNumber);
    c_sgld->add_option("--alpha", alpha)->check(CLI::Range(1.0 + 1e-9, 1e9));
    c_sgld->add_option("--seed", seed);
    add_common(c_sgld);

    app.add_subcommand("selftest", "run the fast invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        apply_config_file(sub, config_path);

        json echo;
        for (const auto* opt : sub->get_options()) {
            if (opt->count() == 0 || opt->get_name().size() <= 2) continue;
            std::string key = opt->get_name().substr(2);
            if (key == "config" || key == "out") continue;  // not part of the effective numerics
            echo[key] = opt->results().front();
        }
        echo["subcommand"] = sub->get_name();
        Output out{out_path, echo};

        const std::string name = sub->get_name();
        if (name == "constants") return run_constants(theta, alpha, out, format);
        if (name == "bounds") return run_bounds(theta, n_ll, norm, scale, seed, covering_csv, out);
        if (name == "circle-table")
            return run_circle_table(theta, parse_ratio_list(eps_list), replicates, seed, weight, levels, out);
        if (name == "genbounds") return run_genbounds(demo, theta, n, eps, seed, out);
        if (name == "align") return run_align(mode, theta, alpha, eps, n, depth, target_gain, policy_file, sweep, out);
        if (name == "sgld") return run_sgld(n, lambda, epochs, sigma, seeds, batch, alpha, seed, out);
        if (name == "selftest") return run_selftest();
        std::cerr << "unknown subcommand\n";
        return kExitValidation;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
