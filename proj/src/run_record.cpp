#include "subsearch/run_record.hpp"

#include <cmath>
#include <cstdio>

namespace subsearch {

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::StepSizeFloor: return "step-size-floor";
        case Termination::Budget: return "budget";
        case Termination::MaxIterations: return "max-iterations";
    }
    return "unknown";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string tau_column_name(double tau) {
    for (int e = 1; e <= 16; ++e) {
        if (tau == std::pow(10.0, -e)) return "evals_tau_1e-" + std::to_string(e);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "evals_tau_%g", tau);
    return buf;
}

void RunRecord::write_history_csv(std::ostream& os) const {
    os << "k,alpha,f,evals\n";
    for (const HistoryRow& row : history) {
        os << row.k << ',' << format_double(row.alpha) << ',' << format_double(row.f) << ','
           << row.evals << '\n';
    }
}

void RunRecord::write_summary_csv(std::ostream& os, const std::string& problem,
                                  const std::string& solver, std::uint64_t seed,
                                  bool with_header) const {
    if (with_header) {
        os << "problem,solver,seed,final_f,evals,termination";
        for (const auto& [tau, count] : evals_to_accuracy) os << ',' << tau_column_name(tau);
        os << '\n';
    }
    os << problem << ',' << solver << ',' << seed << ',' << format_double(final_f) << ','
       << total_evals << ',' << termination_name(termination);
    for (const auto& [tau, count] : evals_to_accuracy) {
        os << ',';
        if (count) {
            os << *count;
        } else {
            os << "inf";
        }
    }
    os << '\n';
}

}  // namespace subsearch
