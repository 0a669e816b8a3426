#include "subsearch/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "subsearch/problems.hpp"

namespace subsearch {

std::optional<std::uint64_t> evals_to_accuracy(const RunRecord& record, double f0, double f_star,
                                               double tau) {
    if (f0 < f_star) throw std::invalid_argument("evals_to_accuracy: f0 must be >= f_star");
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("evals_to_accuracy: tau in (0,1)");
    const double threshold = f_star + tau * (f0 - f_star);
    for (const HistoryRow& row : record.history) {
        if (row.f <= threshold) return row.evals;
    }
    return std::nullopt;
}

std::vector<double> profile_theta_grid(double max_ratio, int points) {
    if (points < 1) throw std::invalid_argument("profile_theta_grid: points must be >= 1");
    max_ratio = std::max(max_ratio, 1.0);
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = max_ratio;
        return grid;
    }
    const double log_max = std::log(max_ratio);
    for (int i = 0; i < points; ++i) {
        grid[i] = std::exp(log_max * static_cast<double>(i) / (points - 1));
    }
    grid.front() = 1.0;
    grid.back() = max_ratio;
    return grid;
}

ProfileResult performance_profile(const CountTable& counts,
                                  const std::vector<std::string>& problem_names,
                                  const std::vector<std::string>& solver_names,
                                  const std::vector<double>& thetas) {
    const std::size_t n_problems = counts.size();
    if (n_problems == 0) throw std::invalid_argument("performance_profile: empty counts");
    const std::size_t n_solvers = counts.front().size();
    if (n_solvers == 0) throw std::invalid_argument("performance_profile: no solvers");
    if (problem_names.size() != n_problems || solver_names.size() != n_solvers) {
        throw std::invalid_argument("performance_profile: name/count shape mismatch");
    }
    for (std::size_t p = 0; p < n_problems; ++p) {
        if (counts[p].size() != n_solvers) {
            throw std::invalid_argument("performance_profile: ragged solver axis");
        }
        for (std::size_t s = 0; s < n_solvers; ++s) {
            if (counts[p][s].size() != counts.front()[s].size()) {
                throw std::invalid_argument("performance_profile: instance counts differ across problems");
            }
        }
    }

    ProfileResult result;

    // Reference per problem: best count over all instances of all solvers.
    // Problems nobody solves have no reference; they are reported and stay in
    // the denominator (no curve can ever count them), so rho(theta) at the
    // largest ratio equals each solver's fraction of finite counts.
    std::vector<double> reference(n_problems, 0.0);
    std::vector<bool> solvable(n_problems, false);
    for (std::size_t p = 0; p < n_problems; ++p) {
        std::optional<std::uint64_t> best;
        for (std::size_t s = 0; s < n_solvers; ++s) {
            for (const auto& c : counts[p][s]) {
                if (c && (!best || *c < *best)) best = *c;
            }
        }
        if (best) {
            reference[p] = static_cast<double>(*best);
            solvable[p] = true;
        } else {
            result.dropped_problems.push_back(problem_names[p]);
        }
    }
    for (std::size_t s = 0; s < n_solvers; ++s) {
        ProfileCurve curve;
        curve.solver = solver_names[s];
        const std::size_t instances = counts.front()[s].size();
        for (double theta : thetas) {
            double rho_sum = 0.0;
            for (std::size_t i = 0; i < instances; ++i) {
                std::size_t solved = 0;
                for (std::size_t p = 0; p < n_problems; ++p) {
                    if (!solvable[p]) continue;
                    const auto& c = counts[p][s][i];
                    // Ratio form matches how the grid endpoints are derived,
                    // so the largest ratio qualifies at theta_max exactly.
                    if (c && static_cast<double>(*c) / reference[p] <= theta) ++solved;
                }
                rho_sum += static_cast<double>(solved) / static_cast<double>(n_problems);
            }
            curve.points.push_back({theta, instances == 0 ? 0.0 : rho_sum / instances});
        }
        result.curves.push_back(std::move(curve));
    }
    return result;
}

namespace {

std::string sanitize_for_filename(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
    }
    return out;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string tau_label(double tau) {
    // File-name friendly variant of the summary column suffix.
    std::string col = tau_column_name(tau);  // evals_tau_...
    return col.substr(std::string("evals_tau_").size());
}

struct RunHandle {
    std::string problem;
    std::string solver;
    int rep = 0;
    RunRecord record;
};

}  // namespace

CampaignResult run_campaign(const Campaign& campaign) {
    if (campaign.problems.empty()) throw std::invalid_argument("campaign: no problems");
    if (campaign.solvers.empty()) throw std::invalid_argument("campaign: no solvers");
    if (campaign.reps < 1) throw std::invalid_argument("campaign: reps must be >= 1");
    if (campaign.budget_multiplier <= 0.0) {
        throw std::invalid_argument("campaign: budget_multiplier must be positive");
    }
    for (double tau : campaign.tau_levels) {
        if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("campaign: tau must be in (0,1)");
    }

    // Resolve all keys up front so configuration errors name the offender.
    std::vector<SolverSpec> solver_specs;
    for (const std::string& key : campaign.solvers) solver_specs.push_back(parse_solver_key(key));
    for (const std::string& key : campaign.problems) (void)make_problem(key, campaign.master_seed);

    CampaignResult result;
    result.tau_levels = campaign.tau_levels;
    result.solver_names = campaign.solvers;

    std::vector<RunHandle> runs;
    std::vector<double> f_star_used(campaign.problems.size(), 0.0);

    for (std::size_t pi = 0; pi < campaign.problems.size(); ++pi) {
        const std::string& problem_key = campaign.problems[pi];
        const Problem problem = make_problem(problem_key, campaign.master_seed);
        const std::uint64_t budget =
            static_cast<std::uint64_t>(std::llround(campaign.budget_multiplier * (problem.dim + 1)));

        for (std::size_t si = 0; si < campaign.solvers.size(); ++si) {
            const SolverSpec& spec = solver_specs[si];
            const int reps = solver_is_deterministic(spec) ? 1 : campaign.reps;
            for (int rep = 0; rep < reps; ++rep) {
                SolverConfig cfg = campaign.base;
                cfg.max_evals = budget;
                cfg.polling = spec.polling;
                cfg.sketch = spec.sketch;
                RngStream rng(campaign.master_seed, hash_key(problem_key),
                              hash_key(campaign.solvers[si]), static_cast<std::uint64_t>(rep));
                RunHandle run;
                run.problem = problem_key;
                run.solver = campaign.solvers[si];
                run.rep = rep;
                run.record = spec.kind == SolverKind::Stp ? run_stp(problem, cfg, rng)
                                                          : run_direct_search(problem, cfg, rng);
                runs.push_back(std::move(run));
            }
        }

        // Accuracy reference: the known minimum, else the best value any run
        // found on this problem (standard profile practice).
        const Problem& p = problem;
        if (p.f_star) {
            f_star_used[pi] = *p.f_star;
        } else {
            double best = std::numeric_limits<double>::infinity();
            for (const RunHandle& run : runs) {
                if (run.problem == problem_key) best = std::min(best, run.record.final_f);
            }
            f_star_used[pi] = best;
        }
        result.f_star_used.emplace_back(problem_key, f_star_used[pi]);
    }

    // Summaries with per-tau accuracy counts.
    for (RunHandle& run : runs) {
        if (run.record.history.empty()) {
            throw std::logic_error("campaign: run produced no history (budget below 1?)");
        }
        const std::size_t pi =
            std::find(campaign.problems.begin(), campaign.problems.end(), run.problem) -
            campaign.problems.begin();
        const double f0 = run.record.history.front().f;
        RunSummary summary;
        summary.problem = run.problem;
        summary.solver = run.solver;
        summary.rep = run.rep;
        summary.final_f = run.record.final_f;
        summary.evals = run.record.total_evals;
        summary.termination = run.record.termination;
        run.record.evals_to_accuracy.clear();
        for (double tau : campaign.tau_levels) {
            const auto count = evals_to_accuracy(run.record, f0, f_star_used[pi], tau);
            summary.tau_counts.push_back(count);
            run.record.evals_to_accuracy.emplace_back(tau, count);
        }
        result.summaries.push_back(std::move(summary));
    }

    // Profiles per tau level.
    for (std::size_t ti = 0; ti < campaign.tau_levels.size(); ++ti) {
        CountTable counts(campaign.problems.size(),
                          std::vector<std::vector<std::optional<std::uint64_t>>>(
                              campaign.solvers.size()));
        for (const RunSummary& s : result.summaries) {
            const std::size_t pi =
                std::find(campaign.problems.begin(), campaign.problems.end(), s.problem) -
                campaign.problems.begin();
            const std::size_t si =
                std::find(campaign.solvers.begin(), campaign.solvers.end(), s.solver) -
                campaign.solvers.begin();
            counts[pi][si].push_back(s.tau_counts[ti]);
        }
        double max_ratio = 1.0;
        {
            // Largest finite performance ratio, for the grid upper end.
            for (std::size_t pi = 0; pi < counts.size(); ++pi) {
                std::optional<std::uint64_t> best;
                for (const auto& per_solver : counts[pi]) {
                    for (const auto& c : per_solver) {
                        if (c && (!best || *c < *best)) best = *c;
                    }
                }
                if (!best) continue;
                for (const auto& per_solver : counts[pi]) {
                    for (const auto& c : per_solver) {
                        if (c) {
                            max_ratio = std::max(
                                max_ratio, static_cast<double>(*c) / static_cast<double>(*best));
                        }
                    }
                }
            }
        }
        result.profiles.push_back(performance_profile(
            counts, campaign.problems, campaign.solvers,
            profile_theta_grid(max_ratio, campaign.profile_points)));
    }

    if (!campaign.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(campaign.out_dir);
        {
            std::ofstream os(fs::path(campaign.out_dir) / "summary.csv");
            write_summary_csv(os, result);
        }
        for (std::size_t ti = 0; ti < campaign.tau_levels.size(); ++ti) {
            std::ofstream os(fs::path(campaign.out_dir) /
                             ("profile_tau_" + tau_label(campaign.tau_levels[ti]) + ".csv"));
            write_profile_csv(os, result.profiles[ti]);
        }
        if (campaign.write_histories) {
            for (const RunHandle& run : runs) {
                const std::string name = "hist_" + sanitize_for_filename(run.problem) + "__" +
                                         sanitize_for_filename(run.solver) + "__rep" +
                                         std::to_string(run.rep) + ".csv";
                std::ofstream os(fs::path(campaign.out_dir) / name);
                run.record.write_history_csv(os);
            }
        }
        {
            std::ofstream os(fs::path(campaign.out_dir) / "manifest.txt");
            os << "master_seed = " << campaign.master_seed << '\n';
            os << "reps = " << campaign.reps << '\n';
            os << "budget_multiplier = " << format_double(campaign.budget_multiplier) << '\n';
            os << "tau_levels =";
            for (double tau : campaign.tau_levels) os << ' ' << format_double(tau);
            os << '\n';
            for (const auto& [key, fstar] : result.f_star_used) {
                os << "f_star " << key << " = " << format_double(fstar) << '\n';
            }
            for (std::size_t ti = 0; ti < result.profiles.size(); ++ti) {
                for (const std::string& dropped : result.profiles[ti].dropped_problems) {
                    os << "dropped tau=" << format_double(result.tau_levels[ti]) << ' ' << dropped
                       << '\n';
                }
            }
        }
    }

    return result;
}

void write_summary_csv(std::ostream& os, const CampaignResult& result) {
    os << "problem,solver,seed,final_f,evals,termination";
    for (double tau : result.tau_levels) os << ',' << tau_column_name(tau);
    os << '\n';
    for (const RunSummary& s : result.summaries) {
        os << csv_quote(s.problem) << ',' << csv_quote(s.solver) << ',' << s.rep << ','
           << format_double(s.final_f) << ',' << s.evals << ',' << termination_name(s.termination);
        for (const auto& c : s.tau_counts) {
            os << ',';
            if (c) {
                os << *c;
            } else {
                os << "inf";
            }
        }
        os << '\n';
    }
}

void write_profile_csv(std::ostream& os, const ProfileResult& profile) {
    os << "solver,theta,rho\n";
    for (const ProfileCurve& curve : profile.curves) {
        for (const ProfilePoint& pt : curve.points) {
            os << csv_quote(curve.solver) << ',' << format_double(pt.theta) << ','
               << format_double(pt.rho) << '\n';
        }
    }
}

Campaign parse_campaign_config(std::istream& is) {
    Campaign campaign;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto split_list = [&]() {
            std::vector<std::string> items;
            std::istringstream ss(value);
            std::string item;
            while (ss >> item) items.push_back(item);
            return items;
        };
        if (key == "problems") {
            campaign.problems = split_list();
        } else if (key == "solvers") {
            campaign.solvers = split_list();
        } else if (key == "reps") {
            campaign.reps = std::stoi(value);
        } else if (key == "budget_multiplier") {
            campaign.budget_multiplier = std::stod(value);
        } else if (key == "tau_levels") {
            campaign.tau_levels.clear();
            for (const std::string& item : split_list()) campaign.tau_levels.push_back(std::stod(item));
        } else if (key == "master_seed") {
            campaign.master_seed = std::stoull(value);
        } else if (key == "out_dir") {
            campaign.out_dir = value;
        } else if (key == "write_histories") {
            campaign.write_histories = value == "1" || value == "true";
        } else if (key == "profile_points") {
            campaign.profile_points = std::stoi(value);
        } else if (key == "alpha0") {
            campaign.base.alpha0 = std::stod(value);
        } else if (key == "alpha_max") {
            campaign.base.alpha_max = std::stod(value);
        } else if (key == "gamma_inc") {
            campaign.base.gamma_inc = std::stod(value);
        } else if (key == "gamma_dec") {
            campaign.base.gamma_dec = std::stod(value);
        } else if (key == "c") {
            campaign.base.c = std::stod(value);
        } else if (key == "alpha_floor") {
            campaign.base.alpha_floor = std::stod(value);
        } else if (key == "rule") {
            if (value == "theoretical") {
                campaign.base.decrease_rule = DecreaseRule::Theoretical;
            } else if (value == "practical") {
                campaign.base.decrease_rule = DecreaseRule::Practical;
            } else {
                throw std::invalid_argument("config: rule must be theoretical or practical");
            }
        } else if (key == "opportunistic") {
            campaign.base.opportunistic = value == "1" || value == "true";
        } else {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    return campaign;
}

std::vector<std::pair<double, ProfileResult>> profiles_from_summary_csv(std::istream& is,
                                                                        int profile_points) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("summary csv: empty file");
    const std::vector<std::string> header = split_csv_line(line);
    const std::string tau_prefix = "evals_tau_";
    std::vector<double> taus;
    std::vector<std::size_t> tau_cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i].rfind(tau_prefix, 0) == 0) {
            taus.push_back(std::stod(header[i].substr(tau_prefix.size())));
            tau_cols.push_back(i);
        }
    }
    if (taus.empty()) throw std::invalid_argument("summary csv: no evals_tau_ columns");

    std::vector<std::string> problems;
    std::vector<std::string> solvers;
    struct Row {
        std::size_t problem;
        std::size_t solver;
        std::vector<std::optional<std::uint64_t>> counts;
    };
    std::vector<Row> rows;
    auto index_of = [](std::vector<std::string>& names, const std::string& name) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
        names.push_back(name);
        return names.size() - 1;
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw std::invalid_argument("summary csv: ragged row");
        }
        Row row;
        row.problem = index_of(problems, fields[0]);
        row.solver = index_of(solvers, fields[1]);
        for (std::size_t c : tau_cols) {
            if (fields[c] == "inf") {
                row.counts.emplace_back(std::nullopt);
            } else {
                row.counts.emplace_back(std::stoull(fields[c]));
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("summary csv: no data rows");

    std::vector<std::pair<double, ProfileResult>> out;
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
        CountTable counts(problems.size(),
                          std::vector<std::vector<std::optional<std::uint64_t>>>(solvers.size()));
        for (const Row& row : rows) counts[row.problem][row.solver].push_back(row.counts[ti]);
        double max_ratio = 1.0;
        for (std::size_t pi = 0; pi < counts.size(); ++pi) {
            std::optional<std::uint64_t> best;
            for (const auto& per_solver : counts[pi]) {
                for (const auto& c : per_solver) {
                    if (c && (!best || *c < *best)) best = *c;
                }
            }
            if (!best) continue;
            for (const auto& per_solver : counts[pi]) {
                for (const auto& c : per_solver) {
                    if (c) {
                        max_ratio = std::max(max_ratio,
                                             static_cast<double>(*c) / static_cast<double>(*best));
                    }
                }
            }
        }
        out.emplace_back(taus[ti], performance_profile(counts, problems, solvers,
                                                       profile_theta_grid(max_ratio, profile_points)));
    }
    return out;
}

}  // namespace subsearch
