// Per-run history and summary records, with the CSV serializations used by
// the benchmark harness.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "subsearch/linalg.hpp"

namespace subsearch {

enum class Termination { StepSizeFloor, Budget, MaxIterations };

std::string termination_name(Termination t);

// One row per iteration: the incumbent at the start of iteration k, the step
// size entering it, and the evaluations consumed before its polling began.
// Row 0 therefore carries f(x_0) with evals = 1.
struct HistoryRow {
    std::uint64_t k = 0;
    double alpha = 0.0;
    double f = 0.0;
    std::uint64_t evals = 0;
};

struct RunRecord {
    std::vector<HistoryRow> history;
    Vector final_x;
    double final_f = 0.0;
    Termination termination = Termination::Budget;
    std::uint64_t total_evals = 0;
    // tau level -> evaluations to reach it; empty optional is the "never
    // reached" sentinel (serialized as the string "inf", not a float).
    std::vector<std::pair<double, std::optional<std::uint64_t>>> evals_to_accuracy;

    // Header: k,alpha,f,evals
    void write_history_csv(std::ostream& os) const;

    // Header: problem,solver,seed,final_f,evals,termination,evals_tau_...
    // One row; tau columns follow evals_to_accuracy order.
    void write_summary_csv(std::ostream& os, const std::string& problem,
                           const std::string& solver, std::uint64_t seed,
                           bool with_header = true) const;
};

// 17-significant-digit decimal rendering; round-trips doubles exactly.
std::string format_double(double v);

// Column label for a tau level, e.g. 1e-1 -> "evals_tau_1e-1".
std::string tau_column_name(double tau);

}  // namespace subsearch
