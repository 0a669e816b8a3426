// Command-line front end: single runs, batch campaigns, profile recomputation
// and the hashing singular-value experiment.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "subsearch/bench.hpp"
#include "subsearch/keys.hpp"
#include "subsearch/problems.hpp"
#include "subsearch/sketch.hpp"
#include "subsearch/solver.hpp"

namespace {

using namespace subsearch;

int cmd_solve(const std::string& problem_key, const std::string& solver_name,
              const std::string& sketch_key_str, const std::string& poll_key_str,
              std::uint64_t seed, std::uint64_t budget, const SolverConfig& base,
              const std::string& rule, bool opportunistic, const std::string& out,
              const std::string& summary_out) {
    SolverConfig cfg = base;
    cfg.max_evals = budget;
    cfg.decrease_rule = rule == "theoretical" ? DecreaseRule::Theoretical : DecreaseRule::Practical;
    cfg.opportunistic = opportunistic;

    SolverSpec spec;
    if (solver_name == "stp") {
        spec.kind = SolverKind::Stp;
    } else {
        spec.kind = SolverKind::DirectSearch;
        spec.sketch = parse_sketch_key(sketch_key_str);
        spec.polling = parse_polling_key(poll_key_str);
        cfg.sketch = spec.sketch;
        cfg.polling = spec.polling;
    }

    const Problem problem = make_problem(problem_key, seed);
    RngStream rng(seed, hash_key(problem_key), hash_key(solver_key(spec)), 0);
    RunRecord record = spec.kind == SolverKind::Stp ? run_stp(problem, cfg, rng)
                                                    : run_direct_search(problem, cfg, rng);
    record.evals_to_accuracy.clear();
    if (problem.f_star && !record.history.empty()) {
        const double f0 = record.history.front().f;
        for (double tau : {1e-1, 1e-3}) {
            record.evals_to_accuracy.emplace_back(
                tau, evals_to_accuracy(record, f0, *problem.f_star, tau));
        }
    }

    if (!out.empty()) {
        std::ofstream os(out);
        if (!os) {
            std::cerr << "cannot open " << out << "\n";
            return 1;
        }
        record.write_history_csv(os);
    }
    if (!summary_out.empty()) {
        std::ofstream os(summary_out);
        if (!os) {
            std::cerr << "cannot open " << summary_out << "\n";
            return 1;
        }
        record.write_summary_csv(os, problem_key, solver_key(spec), seed);
    }
    std::cout << "problem    " << problem_key << "\n"
              << "solver     " << solver_key(spec) << "\n"
              << "final_f    " << format_double(record.final_f) << "\n"
              << "evals      " << record.total_evals << "\n"
              << "iterations " << (record.history.empty() ? 0 : record.history.back().k) << "\n"
              << "reason     " << termination_name(record.termination) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"direct search in random subspaces"};
    app.require_subcommand(0, 1);

    bool list_problems = false;
    app.add_flag("--list-problems", list_problems, "print the problem registry and exit");

    // solve
    auto* solve = app.add_subcommand("solve", "run one solver on one problem");
    std::string problem_key, sketch_key_str = "identity", poll_key_str = "coord";
    std::string solver_name = "ds", rule = "practical", out, summary_out;
    std::uint64_t seed = 0, budget = 0;
    SolverConfig base;
    bool opportunistic = true;
    solve->add_option("--problem", problem_key, "problem key")->required();
    solve->add_option("--solver", solver_name, "ds or stp")->check(CLI::IsMember({"ds", "stp"}));
    solve->add_option("--sketch", sketch_key_str, "sketch ensemble key");
    solve->add_option("--poll", poll_key_str, "polling family key");
    solve->add_option("--seed", seed, "master seed");
    solve->add_option("--budget", budget, "max objective evaluations")->required();
    solve->add_option("--alpha0", base.alpha0, "initial step size");
    solve->add_option("--alpha-max", base.alpha_max, "step size cap");
    solve->add_option("--gamma-inc", base.gamma_inc, "step increase factor");
    solve->add_option("--gamma-dec", base.gamma_dec, "step decrease factor");
    solve->add_option("--c", base.c, "theoretical-rule forcing constant");
    solve->add_option("--alpha-floor", base.alpha_floor, "termination step size");
    solve->add_option("--rule", rule, "sufficient decrease rule")
        ->check(CLI::IsMember({"theoretical", "practical"}));
    solve->add_option("--opportunistic", opportunistic, "stop polling at the first success");
    solve->add_option("--out", out, "history CSV path");
    solve->add_option("--summary-out", summary_out, "one-row summary CSV path");

    // bench
    auto* bench = app.add_subcommand("bench", "run a campaign from a config file");
    std::string config_path;
    bench->add_option("--config", config_path, "campaign config file")->required();

    // profile
    auto* profile = app.add_subcommand("profile", "recompute profiles from a summary CSV");
    std::string from_path, profile_out;
    int profile_points = 200;
    profile->add_option("--from", from_path, "summary.csv produced by bench")->required();
    profile->add_option("--out", profile_out, "output CSV (prefix when several tau levels)")
        ->required();
    profile->add_option("--points", profile_points, "grid resolution");

    // hashing-sv
    auto* hsv = app.add_subcommand("hashing-sv", "singular-value statistics of s=1 hashing sketches");
    std::vector<int> n_list = {1000, 2000, 4000, 8000, 16000};
    std::vector<int> r_list = {5};
    int trials = 100;
    std::uint64_t hsv_seed = 0;
    std::string hsv_out;
    hsv->add_option("--n-list", n_list, "ambient dimensions");
    hsv->add_option("--r-list", r_list, "sketch dimensions");
    hsv->add_option("--trials", trials, "independent matrices per (n, r)");
    hsv->add_option("--seed", hsv_seed, "master seed");
    hsv->add_option("--out", hsv_out, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_problems) {
            for (const auto& [key, desc] : subsearch::problem_registry()) {
                std::cout << key << "\n    " << desc << "\n";
            }
            return 0;
        }
        if (*solve) {
            return cmd_solve(problem_key, solver_name, sketch_key_str, poll_key_str, seed, budget,
                             base, rule, opportunistic, out, summary_out);
        }
        if (*bench) {
            std::ifstream is(config_path);
            if (!is) {
                std::cerr << "cannot open " << config_path << "\n";
                return 1;
            }
            subsearch::Campaign campaign = subsearch::parse_campaign_config(is);
            const subsearch::CampaignResult result = subsearch::run_campaign(campaign);
            std::cout << "runs " << result.summaries.size() << "\n";
            for (const auto& [key, fstar] : result.f_star_used) {
                std::cout << "f_star " << key << " = " << subsearch::format_double(fstar) << "\n";
            }
            if (campaign.out_dir.empty()) {
                std::cout << "(no out_dir set; artifacts not written)\n";
            } else {
                std::cout << "artifacts in " << campaign.out_dir << "\n";
            }
            return 0;
        }
        if (*profile) {
            std::ifstream is(from_path);
            if (!is) {
                std::cerr << "cannot open " << from_path << "\n";
                return 1;
            }
            const auto profiles = subsearch::profiles_from_summary_csv(is, profile_points);
            for (const auto& [tau, prof] : profiles) {
                std::string path = profile_out;
                if (profiles.size() > 1) {
                    const std::string label = subsearch::tau_column_name(tau).substr(10);
                    const auto dot = path.rfind(".csv");
                    path = (dot == std::string::npos ? path : path.substr(0, dot)) + "_tau_" +
                           label + ".csv";
                }
                std::ofstream os(path);
                if (!os) {
                    std::cerr << "cannot open " << path << "\n";
                    return 1;
                }
                subsearch::write_profile_csv(os, prof);
                std::cout << "wrote " << path << "\n";
            }
            return 0;
        }
        if (*hsv) {
            subsearch::RngStream rng(hsv_seed, subsearch::hash_key("hashing-sv"), 0, 0);
            const auto rows = subsearch::hashing_singular_value_experiment(n_list, r_list, trials, rng);
            std::ofstream os(hsv_out);
            if (!os) {
                std::cerr << "cannot open " << hsv_out << "\n";
                return 1;
            }
            subsearch::write_hashing_sv_csv(os, rows);
            std::cout << "wrote " << hsv_out << "\n";
            return 0;
        }
        std::cout << app.help();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
