// Direct search in reduced subspaces.
//
// Each iteration draws a sketch P (r x n) and a direction set D in R^r, then
// polls the points x + alpha P^T d. A trial is accepted when it passes the
// sufficient-decrease test; the step size grows on success (capped) and
// shrinks on failure. With the identity sketch this is classical direct
// search in R^n. A three-point baseline with a decaying step schedule is
// included for comparison, along with the closed-form step-dynamics
// diagnostics (mu, p0) and the critical step multiplier alpha_bar.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "subsearch/polling.hpp"
#include "subsearch/problem.hpp"
#include "subsearch/rng.hpp"
#include "subsearch/run_record.hpp"
#include "subsearch/sketch.hpp"

namespace subsearch {

enum class DecreaseRule {
    Theoretical,  // f_trial < f_x - (c/2) alpha^2 ||P^T d||^2
    Practical,    // f_trial < f_x - min(1e-5, 1e-5 alpha^2 ||P^T d||^2)
};

struct PollingSpec {
    DirectionFamily family = DirectionFamily::CoordinatePss;
    int m = 2;  // random-unit only; other families fix their own count
};

struct SketchSpec {
    SketchEnsemble ensemble = SketchEnsemble::Identity;
    int r = 1;  // ignored for identity (r = n)
    int s = 1;  // hashing only
};

struct SolverConfig {
    double alpha0 = 1.0;
    double alpha_max = 1000.0;
    double gamma_inc = 2.0;
    double gamma_dec = 0.5;
    double c = 1.0;  // forcing constant of the theoretical rule
    DecreaseRule decrease_rule = DecreaseRule::Practical;
    double alpha_floor = 1e-6;
    std::optional<std::uint64_t> max_evals;
    std::optional<std::uint64_t> max_iters;
    bool opportunistic = true;
    PollingSpec polling;
    SketchSpec sketch;

    void validate() const;  // throws std::invalid_argument on bad settings
};

struct SolverState {
    Vector x;
    double alpha = 0.0;
    std::uint64_t k = 0;
    double f_x = 0.0;
};

// Passed to the optional per-iteration observer; pointers are valid only for
// the duration of the callback.
struct IterationTrace {
    std::uint64_t k = 0;
    double alpha = 0.0;                 // step size used this iteration
    const SketchMatrix* sketch = nullptr;
    const DirectionSet* directions = nullptr;
    const Vector* x_before = nullptr;
    double f_before = 0.0;
    double f_after = 0.0;
    bool success = false;
    bool interrupted = false;           // budget ran out mid-poll
    int accepted_index = -1;            // direction index, -1 if none
    double accepted_step_norm_sq = 0.0; // ||P^T d||^2 of the accepted direction
    std::uint64_t evals_used = 0;
};

using IterationObserver = std::function<void(const IterationTrace&)>;

bool sufficient_decrease(double f_x, double f_trial, double alpha, double step_norm_sq,
                         DecreaseRule rule, double c);

// Success: min(gamma_inc * alpha, alpha_max). Failure: gamma_dec * alpha.
double step_size_update(double alpha, bool success, const SolverConfig& cfg);

struct PollOutcome {
    bool success = false;
    bool interrupted = false;
    std::uint64_t evals_used = 0;
    int accepted_index = -1;
    double accepted_step_norm_sq = 0.0;
};

// One poll of Algorithm-style trial points. Trials are evaluated in set
// order, each guarded by the budget. Opportunistic mode moves to the first
// direction passing the decrease test; otherwise all (budget-permitting)
// trials are evaluated and the best passing one is taken. On success the
// state moves and alpha is updated; an interrupted poll leaves alpha
// untouched. k is always incremented.
PollOutcome poll_iteration(SolverState& state, const SketchMatrix& sketch,
                           const DirectionSet& directions, const Problem& problem,
                           EvalCounter& counter, const SolverConfig& cfg);

// Full run: evaluates f(x0) (counted), then iterates with a fresh sketch and
// direction set per iteration (sketch drawn first) until the step size falls
// below alpha_floor, the budget runs out, or max_iters is hit.
RunRecord run_direct_search(const Problem& problem, const SolverConfig& cfg, RngStream rng,
                            const IterationObserver& observer = {});

// Three-point baseline: per iteration draws v uniform on the unit sphere of
// R^n, evaluates f(x +- alpha_k v) with alpha_k = alpha0 / (k+1), and moves
// to the argmin including the incumbent. Same floor and budget handling as
// the direct-search runner.
RunRecord run_stp(const Problem& problem, const SolverConfig& cfg, RngStream rng);

struct StepDynamics {
    double mu = 0.0;  // log_{gamma_inc}(1 / gamma_dec)
    double p0 = 0.0;  // max{1/(1+mu), mu/(1+mu)}
};

StepDynamics diagnostics_mu_p0(double gamma_inc, double gamma_dec);

// 2 kappa eta / ((L + c) pmax^2 dmax^3): iterations with a descent set, a
// well-aligned sketch and alpha below alpha_bar * ||grad f|| must succeed
// under the theoretical rule.
double diagnostic_alpha_bar(double kappa, double eta, double lipschitz, double c, double pmax,
                            double dmax);

}  // namespace subsearch
