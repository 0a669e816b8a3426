// Batch experiment driver: runs solver x problem x repetition campaigns,
// derives evaluations-to-accuracy counts, and builds performance profiles.
//
// All artifacts are CSV with '.' decimal points, 17-significant-digit floats
// and the literal string "inf" for the never-reached sentinel. Outputs are
// byte-identical across re-runs with the same configuration and master seed.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subsearch/keys.hpp"
#include "subsearch/run_record.hpp"
#include "subsearch/solver.hpp"

namespace subsearch {

// Smallest cumulative evaluation count whose recorded incumbent satisfies
//   f <= f_star + tau (f0 - f_star);
// empty when the run never reaches the threshold. Requires f0 >= f_star and
// tau in (0, 1).
std::optional<std::uint64_t> evals_to_accuracy(const RunRecord& record, double f0, double f_star,
                                               double tau);

struct ProfilePoint {
    double theta = 1.0;  // performance ratio threshold
    double rho = 0.0;    // fraction of problems solved within theta
};

struct ProfileCurve {
    std::string solver;
    std::vector<ProfilePoint> points;
};

// counts[p][s][i]: evaluations for problem p, solver s, instance i (empty
// optional = never solved). For each problem the reference is the minimum
// over all instances of all solvers; a solver's curve is the average over
// its instances of the fraction of problems solved within a factor theta of
// that reference. Problems with no finite count anywhere are dropped and
// reported in dropped_problems.
struct ProfileResult {
    std::vector<ProfileCurve> curves;
    std::vector<std::string> dropped_problems;
};

using CountTable = std::vector<std::vector<std::vector<std::optional<std::uint64_t>>>>;

ProfileResult performance_profile(const CountTable& counts,
                                  const std::vector<std::string>& problem_names,
                                  const std::vector<std::string>& solver_names,
                                  const std::vector<double>& thetas);

// Logarithmic grid over [1, max_ratio] with `points` entries.
std::vector<double> profile_theta_grid(double max_ratio, int points);

struct Campaign {
    std::vector<std::string> problems;
    std::vector<std::string> solvers;  // ds/<sketch>/<poll> or stp
    int reps = 10;                     // forced to 1 for deterministic solvers
    double budget_multiplier = 50.0;   // budget = multiplier * (n + 1)
    std::vector<double> tau_levels = {1e-1, 1e-3};
    std::uint64_t master_seed = 0;
    SolverConfig base;                 // shared hyperparameters
    std::string out_dir;               // empty: no files written
    bool write_histories = true;
    int profile_points = 200;
};

struct RunSummary {
    std::string problem;
    std::string solver;
    int rep = 0;
    double final_f = 0.0;
    std::uint64_t evals = 0;
    Termination termination = Termination::Budget;
    std::vector<std::optional<std::uint64_t>> tau_counts;
};

struct CampaignResult {
    std::vector<RunSummary> summaries;
    // Per problem: the f_star used for accuracy thresholds (known minimum or
    // the best value found by any run).
    std::vector<std::pair<std::string, double>> f_star_used;
    std::vector<double> tau_levels;
    std::vector<ProfileResult> profiles;  // one per tau level
    std::vector<std::string> solver_names;
};

CampaignResult run_campaign(const Campaign& campaign);

void write_summary_csv(std::ostream& os, const CampaignResult& result);
void write_profile_csv(std::ostream& os, const ProfileResult& profile);

// Parses "key = value" lines (# comments, blank lines ignored) into a
// Campaign; list values are whitespace-separated. Throws on unknown keys.
Campaign parse_campaign_config(std::istream& is);

// Recomputes profiles from a summary.csv emitted by run_campaign.
std::vector<std::pair<double, ProfileResult>> profiles_from_summary_csv(std::istream& is,
                                                                        int profile_points);

}  // namespace subsearch
