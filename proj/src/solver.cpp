#include "subsearch/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace subsearch {

void SolverConfig::validate() const {
    if (alpha0 <= 0.0) throw std::invalid_argument("SolverConfig: alpha0 must be positive");
    if (alpha_max < alpha0) throw std::invalid_argument("SolverConfig: alpha_max must be >= alpha0");
    if (!(0.0 < gamma_dec && gamma_dec < 1.0 && 1.0 < gamma_inc)) {
        throw std::invalid_argument("SolverConfig: need 0 < gamma_dec < 1 < gamma_inc");
    }
    if (c <= 0.0) throw std::invalid_argument("SolverConfig: c must be positive");
    if (alpha_floor <= 0.0) throw std::invalid_argument("SolverConfig: alpha_floor must be positive");
    if (polling.family == DirectionFamily::RandomUnit && polling.m < 1) {
        throw std::invalid_argument("SolverConfig: random-unit polling needs m >= 1");
    }
}

bool sufficient_decrease(double f_x, double f_trial, double alpha, double step_norm_sq,
                         DecreaseRule rule, double c) {
    if (rule == DecreaseRule::Theoretical) {
        return f_trial < f_x - 0.5 * c * alpha * alpha * step_norm_sq;
    }
    return f_trial < f_x - std::min(1e-5, 1e-5 * alpha * alpha * step_norm_sq);
}

double step_size_update(double alpha, bool success, const SolverConfig& cfg) {
    if (alpha <= 0.0) throw std::invalid_argument("step_size_update: alpha must be positive");
    return success ? std::min(cfg.gamma_inc * alpha, cfg.alpha_max) : cfg.gamma_dec * alpha;
}

PollOutcome poll_iteration(SolverState& state, const SketchMatrix& sketch,
                           const DirectionSet& directions, const Problem& problem,
                           EvalCounter& counter, const SolverConfig& cfg) {
    PollOutcome out;
    const double alpha = state.alpha;

    Vector best_x;
    double best_f = 0.0;
    int best_index = -1;
    double best_step_norm_sq = 0.0;

    for (int i = 0; i < directions.size(); ++i) {
        if (counter.exhausted()) {
            out.interrupted = true;
            break;
        }
        const Vector step = sketch.apply_transpose(directions.dirs[i]);
        const double step_norm_sq = norm_sq(step);
        const Vector trial = add_scaled(state.x, alpha, step);
        const auto f_trial = evaluate(problem, trial, counter);
        if (!f_trial) {
            out.interrupted = true;
            break;
        }
        ++out.evals_used;
        if (sufficient_decrease(state.f_x, *f_trial, alpha, step_norm_sq, cfg.decrease_rule,
                                cfg.c)) {
            if (best_index < 0 || *f_trial < best_f) {
                best_x = trial;
                best_f = *f_trial;
                best_index = i;
                best_step_norm_sq = step_norm_sq;
            }
            if (cfg.opportunistic) break;
        }
    }

    if (best_index >= 0) {
        state.x = std::move(best_x);
        state.f_x = best_f;
        out.success = true;
        out.accepted_index = best_index;
        out.accepted_step_norm_sq = best_step_norm_sq;
    }
    // An interrupted poll with no accepted point keeps the step size as-is;
    // otherwise the usual update applies.
    if (!(out.interrupted && !out.success)) {
        state.alpha = step_size_update(alpha, out.success, cfg);
    }
    state.k += 1;
    return out;
}

namespace {

// Sketch and directions are redrawn each iteration, sketch first. Fully
// deterministic combinations are built once and reused: they consume no
// randomness, so the replay is unchanged, and it avoids re-materializing
// large coordinate sets at high dimension.
struct IterationDraws {
    SketchSpec sketch_spec;
    PollingSpec polling_spec;
    int n = 0;
    bool deterministic = false;
    std::optional<SketchMatrix> fixed_sketch;
    std::optional<DirectionSet> fixed_dirs;

    IterationDraws(const SolverConfig& cfg, int dim) : sketch_spec(cfg.sketch),
                                                       polling_spec(cfg.polling), n(dim) {
        deterministic = sketch_spec.ensemble == SketchEnsemble::Identity &&
                        polling_spec.family != DirectionFamily::RandomUnit;
        if (deterministic) {
            fixed_sketch = make_identity(n);
            fixed_dirs = make_directions(n, nullptr);
        }
    }

    int reduced_dim() const {
        return sketch_spec.ensemble == SketchEnsemble::Identity ? n : sketch_spec.r;
    }

    DirectionSet make_directions(int r, RngStream* rng) const {
        switch (polling_spec.family) {
            case DirectionFamily::CoordinatePss: return make_coordinate_pss(r);
            case DirectionFamily::UniformAnglePss: return make_uniform_angle_pss(r);
            case DirectionFamily::CoordinatePlusNegOnes:
                return make_coordinate_plus_negative_ones(r);
            case DirectionFamily::RandomUnit: return make_random_unit(r, polling_spec.m, *rng);
        }
        throw std::logic_error("unknown polling family");
    }

    SketchMatrix make_sketch(RngStream& rng) const {
        switch (sketch_spec.ensemble) {
            case SketchEnsemble::Identity: return make_identity(n);
            case SketchEnsemble::Gaussian: return make_gaussian(sketch_spec.r, n, rng);
            case SketchEnsemble::Hashing: return make_hashing(sketch_spec.r, n, sketch_spec.s, rng);
            case SketchEnsemble::Orthogonal: return make_orthogonal(sketch_spec.r, n, rng);
        }
        throw std::logic_error("unknown sketch ensemble");
    }
};

}  // namespace

RunRecord run_direct_search(const Problem& problem, const SolverConfig& cfg, RngStream rng,
                            const IterationObserver& observer) {
    cfg.validate();
    if (problem.dim < 1) throw std::invalid_argument("run_direct_search: problem.dim must be >= 1");
    if (cfg.sketch.ensemble != SketchEnsemble::Identity && cfg.sketch.r > problem.dim) {
        throw std::invalid_argument("run_direct_search: sketch r must be <= problem dimension");
    }

    RunRecord record;
    EvalCounter counter(cfg.max_evals);
    IterationDraws draws(cfg, problem.dim);

    SolverState state;
    state.x = problem.x0;
    state.alpha = cfg.alpha0;
    state.k = 0;

    const auto f0 = evaluate(problem, state.x, counter);
    if (!f0) {
        // A zero budget admits no evaluation at all; report an empty run.
        record.final_x = state.x;
        record.final_f = std::numeric_limits<double>::quiet_NaN();
        record.termination = Termination::Budget;
        record.total_evals = counter.count();
        return record;
    }
    state.f_x = *f0;

    for (;;) {
        record.history.push_back({state.k, state.alpha, state.f_x, counter.count()});
        if (state.alpha < cfg.alpha_floor) {
            record.termination = Termination::StepSizeFloor;
            break;
        }
        if (cfg.max_iters && state.k >= *cfg.max_iters) {
            record.termination = Termination::MaxIterations;
            break;
        }
        if (counter.exhausted()) {
            record.termination = Termination::Budget;
            break;
        }

        const SketchMatrix* sketch = nullptr;
        const DirectionSet* dirs = nullptr;
        SketchMatrix drawn_sketch;
        DirectionSet drawn_dirs;
        if (draws.deterministic) {
            sketch = &*draws.fixed_sketch;
            dirs = &*draws.fixed_dirs;
        } else {
            drawn_sketch = draws.make_sketch(rng);
            drawn_dirs = draws.make_directions(draws.reduced_dim(), &rng);
            sketch = &drawn_sketch;
            dirs = &drawn_dirs;
        }

        const std::uint64_t k_before = state.k;
        const double alpha_before = state.alpha;
        const double f_before = state.f_x;
        Vector x_before;
        if (observer) x_before = state.x;

        const PollOutcome outcome = poll_iteration(state, *sketch, *dirs, problem, counter, cfg);

        if (observer) {
            IterationTrace trace;
            trace.k = k_before;
            trace.alpha = alpha_before;
            trace.sketch = sketch;
            trace.directions = dirs;
            trace.x_before = &x_before;
            trace.f_before = f_before;
            trace.f_after = state.f_x;
            trace.success = outcome.success;
            trace.interrupted = outcome.interrupted;
            trace.accepted_index = outcome.accepted_index;
            trace.accepted_step_norm_sq = outcome.accepted_step_norm_sq;
            trace.evals_used = outcome.evals_used;
            observer(trace);
        }
    }

    record.final_x = state.x;
    record.final_f = state.f_x;
    record.total_evals = counter.count();
    return record;
}

RunRecord run_stp(const Problem& problem, const SolverConfig& cfg, RngStream rng) {
    cfg.validate();
    if (problem.dim < 1) throw std::invalid_argument("run_stp: problem.dim must be >= 1");

    RunRecord record;
    EvalCounter counter(cfg.max_evals);

    Vector x = problem.x0;
    const auto f0 = evaluate(problem, x, counter);
    if (!f0) {
        record.final_x = x;
        record.final_f = std::numeric_limits<double>::quiet_NaN();
        record.termination = Termination::Budget;
        record.total_evals = counter.count();
        return record;
    }
    double f_x = *f0;

    std::uint64_t k = 0;
    for (;;) {
        const double alpha = cfg.alpha0 / static_cast<double>(k + 1);
        record.history.push_back({k, alpha, f_x, counter.count()});
        if (alpha < cfg.alpha_floor) {
            record.termination = Termination::StepSizeFloor;
            break;
        }
        if (cfg.max_iters && k >= *cfg.max_iters) {
            record.termination = Termination::MaxIterations;
            break;
        }
        if (counter.exhausted()) {
            record.termination = Termination::Budget;
            break;
        }

        const Vector v = rng.unit_vector(problem.dim);
        const Vector x_plus = add_scaled(x, alpha, v);
        const Vector x_minus = add_scaled(x, -alpha, v);
        const std::optional<double> f_plus = evaluate(problem, x_plus, counter);
        const std::optional<double> f_minus =
            f_plus ? evaluate(problem, x_minus, counter) : std::nullopt;

        // argmin over incumbent and the evaluated trial points; ties keep
        // the incumbent.
        if (f_plus && *f_plus < f_x) {
            x = x_plus;
            f_x = *f_plus;
        }
        if (f_minus && *f_minus < f_x) {
            x = x_minus;
            f_x = *f_minus;
        }
        ++k;
    }

    record.final_x = x;
    record.final_f = f_x;
    record.total_evals = counter.count();
    return record;
}

StepDynamics diagnostics_mu_p0(double gamma_inc, double gamma_dec) {
    if (!(0.0 < gamma_dec && gamma_dec < 1.0 && 1.0 < gamma_inc)) {
        throw std::invalid_argument("diagnostics_mu_p0: need 0 < gamma_dec < 1 < gamma_inc");
    }
    StepDynamics d;
    d.mu = std::log(1.0 / gamma_dec) / std::log(gamma_inc);
    d.p0 = std::max(1.0 / (1.0 + d.mu), d.mu / (1.0 + d.mu));
    return d;
}

double diagnostic_alpha_bar(double kappa, double eta, double lipschitz, double c, double pmax,
                            double dmax) {
    if (kappa <= 0.0 || eta <= 0.0 || lipschitz <= 0.0 || c <= 0.0 || pmax <= 0.0 || dmax <= 0.0) {
        throw std::invalid_argument("diagnostic_alpha_bar: all inputs must be positive");
    }
    return 2.0 * kappa * eta / ((lipschitz + c) * pmax * pmax * dmax * dmax * dmax);
}

}  // namespace subsearch
