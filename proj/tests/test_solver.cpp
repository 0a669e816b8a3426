#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "subsearch/problems.hpp"
#include "subsearch/solver.hpp"
#include "support/reference_solver.hpp"

using namespace subsearch;

namespace {

Problem sphere(int n) { return make_sphere(n); }

Problem from_objective(int n, std::function<double(const Vector&)> f, Vector x0) {
    Problem p;
    p.name = "inline";
    p.dim = n;
    p.objective = std::move(f);
    p.x0 = std::move(x0);
    return p;
}

SolverConfig paper_defaults() {
    SolverConfig cfg;  // alpha0 = 1, alpha_max = 1000, gammas (2, 0.5), practical
    return cfg;
}

}  // namespace

TEST_CASE("sufficient decrease rules") {
    // Theoretical: threshold f_x - (c/2) alpha^2 ||step||^2.
    CHECK(sufficient_decrease(1.0, 0.25, 0.5, 1.0, DecreaseRule::Theoretical, 0.01));
    CHECK_FALSE(sufficient_decrease(1.0, 1.0, 0.5, 1.0, DecreaseRule::Theoretical, 0.01));
    CHECK_FALSE(sufficient_decrease(1.0, 1.0, 1.0, 1.0, DecreaseRule::Practical, 1.0));
    // Practical threshold is min(1e-5, 1e-5 alpha^2 ||step||^2): a 5e-6 drop
    // at alpha = 1 is not enough.
    CHECK_FALSE(sufficient_decrease(1.0, 1.0 - 5e-6, 1.0, 1.0, DecreaseRule::Practical, 1.0));
    CHECK(sufficient_decrease(1.0, 1.0 - 2e-5, 1.0, 1.0, DecreaseRule::Practical, 1.0));
}

TEST_CASE("step size update") {
    SolverConfig cfg = paper_defaults();
    CHECK(step_size_update(1.0, true, cfg) == 2.0);
    CHECK(step_size_update(600.0, true, cfg) == 1000.0);  // cap binds
    CHECK(step_size_update(1.0, false, cfg) == 0.5);
    CHECK_THROWS_AS(step_size_update(0.0, true, cfg), std::invalid_argument);
}

TEST_CASE("opportunistic poll moves at the first passing direction") {
    const Problem p = sphere(2);
    SolverConfig cfg = paper_defaults();
    cfg.polling.family = DirectionFamily::CoordinatePss;
    SolverState state{{1.0, 0.0}, 0.5, 0, 1.0};
    EvalCounter counter;
    const SketchMatrix id = make_identity(2);
    const DirectionSet dirs = make_coordinate_pss(2);

    const PollOutcome out = poll_iteration(state, id, dirs, p, counter, cfg);
    CHECK(out.success);
    CHECK(out.evals_used == 3);  // (1.5,0), (1,0.5) fail; (0.5,0) passes
    CHECK(out.accepted_index == 2);
    CHECK(state.x == Vector{0.5, 0.0});
    CHECK(state.f_x == 0.25);
    CHECK(state.alpha == 1.0);  // success doubles the step
    CHECK(state.k == 1);
}

TEST_CASE("poll at a minimizer fails and halves the step") {
    const Problem p = sphere(2);
    SolverConfig cfg = paper_defaults();
    SolverState state{{0.0, 0.0}, 0.25, 3, 0.0};
    EvalCounter counter;
    const PollOutcome out =
        poll_iteration(state, make_identity(2), make_coordinate_pss(2), p, counter, cfg);
    CHECK_FALSE(out.success);
    CHECK(out.evals_used == 4);
    CHECK(state.x == Vector{0.0, 0.0});
    CHECK(state.alpha == 0.125);
    CHECK(state.k == 4);
}

TEST_CASE("exhaustive poll takes the best passing point") {
    // f = x1 + 0.5 x2: both -e1 and -e2 pass; -e1 is better.
    const Problem p = from_objective(
        2, [](const Vector& x) { return x[0] + 0.5 * x[1]; }, {0.0, 0.0});
    SolverConfig cfg = paper_defaults();
    cfg.opportunistic = false;
    SolverState state{{0.0, 0.0}, 1.0, 0, 0.0};
    EvalCounter counter;
    const PollOutcome out =
        poll_iteration(state, make_identity(2), make_coordinate_pss(2), p, counter, cfg);
    CHECK(out.success);
    CHECK(out.evals_used == 4);  // all of them
    CHECK(out.accepted_index == 2);
    CHECK(state.x == Vector{-1.0, 0.0});
    CHECK(state.f_x == -1.0);
}

TEST_CASE("budget exhaustion mid-poll leaves incumbent and step size alone") {
    const Problem p = sphere(2);
    SolverConfig cfg = paper_defaults();
    SolverState state{{1.0, 0.0}, 0.5, 0, 1.0};
    EvalCounter counter(std::optional<std::uint64_t>{2});  // success would need 3
    const PollOutcome out =
        poll_iteration(state, make_identity(2), make_coordinate_pss(2), p, counter, cfg);
    CHECK(out.interrupted);
    CHECK_FALSE(out.success);
    CHECK(out.evals_used == 2);
    CHECK(state.x == Vector{1.0, 0.0});
    CHECK(state.alpha == 0.5);  // untouched
    CHECK(state.k == 1);
}

TEST_CASE("constant objective terminates after exactly 20 shrinks") {
    const Problem p = from_objective(2, [](const Vector&) { return 7.0; }, {0.0, 0.0});
    SolverConfig cfg = paper_defaults();  // alpha0=1, gamma_dec=0.5, floor 1e-6
    const RunRecord rec = run_direct_search(p, cfg, RngStream(1, 0, 0, 0));
    CHECK(rec.termination == Termination::StepSizeFloor);
    // Rows k = 0..20: twenty unsuccessful iterations, then the final state.
    REQUIRE(rec.history.size() == 21);
    CHECK(rec.history.back().k == 20);
    CHECK(rec.history.back().alpha == std::ldexp(1.0, -20));
    CHECK(rec.final_f == 7.0);
    for (const HistoryRow& row : rec.history) CHECK(row.f == 7.0);
}

TEST_CASE("deterministic configurations ignore the seed") {
    const Problem p = sphere(5);
    SolverConfig cfg = paper_defaults();
    cfg.max_evals = 500;
    const RunRecord a = run_direct_search(p, cfg, RngStream(1, 2, 3, 4));
    const RunRecord b = run_direct_search(p, cfg, RngStream(99, 98, 97, 96));
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].k == b.history[i].k);
        CHECK(a.history[i].alpha == b.history[i].alpha);
        CHECK(a.history[i].f == b.history[i].f);
        CHECK(a.history[i].evals == b.history[i].evals);
    }
    CHECK(a.final_f == b.final_f);
}

TEST_CASE("randomized runs replay bit-identically from the same stream") {
    const Problem p = sphere(20);
    SolverConfig cfg = paper_defaults();
    cfg.max_evals = 2000;
    cfg.sketch = {SketchEnsemble::Gaussian, 2, 1};
    const RunRecord a = run_direct_search(p, cfg, RngStream(7, 1, 2, 3));
    const RunRecord b = run_direct_search(p, cfg, RngStream(7, 1, 2, 3));
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].alpha == b.history[i].alpha);
        CHECK(a.history[i].f == b.history[i].f);
        CHECK(a.history[i].evals == b.history[i].evals);
    }
    CHECK(a.final_x == b.final_x);
}

TEST_CASE("eval counter total matches an instrumented objective") {
    int observed = 0;
    Problem p = from_objective(
        4,
        [&observed](const Vector& x) {
            ++observed;
            return norm_sq(x);
        },
        Vector(4, 1.0));
    SolverConfig cfg = paper_defaults();
    cfg.max_evals = 300;
    cfg.sketch = {SketchEnsemble::Gaussian, 1, 1};
    const RunRecord rec = run_direct_search(p, cfg, RngStream(3, 0, 0, 0));
    CHECK(rec.total_evals == static_cast<std::uint64_t>(observed));

    observed = 0;
    const RunRecord stp = run_stp(p, cfg, RngStream(3, 0, 0, 1));
    CHECK(stp.total_evals == static_cast<std::uint64_t>(observed));
}

TEST_CASE("history invariants hold across solvers and seeds") {
    const Problem p = make_quadratic(10, 50.0);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        SolverConfig cfg = paper_defaults();
        cfg.max_evals = 800;
        cfg.sketch = {SketchEnsemble::Orthogonal, 2, 1};
        cfg.polling = {DirectionFamily::RandomUnit, 3};
        for (int use_stp = 0; use_stp < 2; ++use_stp) {
            const RunRecord rec = use_stp ? run_stp(p, cfg, RngStream(seed, 0, 0, 0))
                                          : run_direct_search(p, cfg, RngStream(seed, 0, 0, 0));
            REQUIRE(!rec.history.empty());
            CHECK(rec.history.front().evals == 1);
            for (std::size_t i = 1; i < rec.history.size(); ++i) {
                CHECK(rec.history[i].f <= rec.history[i - 1].f);
                CHECK(rec.history[i].evals > rec.history[i - 1].evals);
            }
            CHECK(rec.final_f == rec.history.back().f);
        }
    }
}

TEST_CASE("step sizes respect the cap and shrink exactly on failure") {
    const Problem p = make_quadratic(6, 10.0);
    SolverConfig cfg = paper_defaults();
    cfg.max_evals = 600;
    cfg.alpha_max = 4.0;
    cfg.sketch = {SketchEnsemble::Gaussian, 1, 1};
    std::vector<double> alphas;
    std::vector<bool> successes;
    const auto observer = [&](const IterationTrace& t) {
        alphas.push_back(t.alpha);
        successes.push_back(t.success);
        CHECK(t.alpha <= cfg.alpha_max);
    };
    run_direct_search(p, cfg, RngStream(5, 0, 0, 0), observer);
    REQUIRE(alphas.size() > 2);
    for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
        if (!successes[i]) CHECK(alphas[i + 1] == cfg.gamma_dec * alphas[i]);
    }
}

TEST_CASE("budget termination reports the exact count") {
    const Problem p = sphere(10);
    SolverConfig cfg = paper_defaults();
    cfg.max_evals = 37;
    const RunRecord rec = run_direct_search(p, cfg, RngStream(1, 0, 0, 0));
    CHECK(rec.termination == Termination::Budget);
    CHECK(rec.total_evals == 37);
}

TEST_CASE("max iteration guard") {
    const Problem p = sphere(3);
    SolverConfig cfg = paper_defaults();
    cfg.max_iters = 5;
    const RunRecord rec = run_direct_search(p, cfg, RngStream(1, 0, 0, 0));
    CHECK(rec.termination == Termination::MaxIterations);
    CHECK(rec.history.back().k == 5);
}

TEST_CASE("gaussian sketch with r=1 polls a signed gaussian direction") {
    const Problem p = sphere(8);
    SolverConfig cfg = paper_defaults();
    cfg.max_evals = 50;
    cfg.sketch = {SketchEnsemble::Gaussian, 1, 1};
    cfg.polling.family = DirectionFamily::CoordinatePss;
    const auto observer = [&](const IterationTrace& t) {
        REQUIRE(t.directions->size() == 2);
        CHECK(t.directions->dirs[0] == Vector{1.0});
        CHECK(t.directions->dirs[1] == Vector{-1.0});
        CHECK(t.sketch->rows() == 1);
        CHECK(t.sketch->cols() == 8);
    };
    run_direct_search(p, cfg, RngStream(6, 0, 0, 0), observer);
}

TEST_CASE("stp schedule and monotonicity") {
    const Problem p = make_quadratic(5, 5.0);
    SolverConfig cfg = paper_defaults();
    cfg.max_evals = 41;
    const RunRecord rec = run_stp(p, cfg, RngStream(9, 0, 0, 0));
    REQUIRE(rec.history.size() >= 3);
    CHECK(rec.history[0].alpha == 1.0);
    CHECK(rec.history[1].alpha == 0.5);
    CHECK(rec.history[2].alpha == 1.0 / 3.0);
    for (std::size_t i = 1; i < rec.history.size(); ++i) {
        CHECK(rec.history[i].f <= rec.history[i - 1].f);
    }
    CHECK(rec.total_evals == 41);
}

TEST_CASE("stp on a constant stays put") {
    const Problem p = from_objective(3, [](const Vector&) { return 2.5; }, {1.0, 2.0, 3.0});
    SolverConfig cfg = paper_defaults();
    cfg.max_evals = 101;
    const RunRecord rec = run_stp(p, cfg, RngStream(10, 0, 0, 0));
    CHECK(rec.final_x == Vector{1.0, 2.0, 3.0});
    for (const HistoryRow& row : rec.history) CHECK(row.f == 2.5);
}

TEST_CASE("theoretical-rule successes overshoot the forcing term") {
    const Problem p = make_quadratic(6, 20.0);
    SolverConfig cfg = paper_defaults();
    cfg.decrease_rule = DecreaseRule::Theoretical;
    cfg.c = 0.5;
    cfg.max_evals = 1000;
    cfg.sketch = {SketchEnsemble::Gaussian, 2, 1};
    int successes = 0;
    const auto observer = [&](const IterationTrace& t) {
        if (t.success) {
            ++successes;
            CHECK(t.f_before - t.f_after >
                  0.5 * cfg.c * t.alpha * t.alpha * t.accepted_step_norm_sq);
        }
    };
    run_direct_search(p, cfg, RngStream(11, 0, 0, 0), observer);
    CHECK(successes > 0);
}

TEST_CASE("solver trajectory matches the reference implementation bit for bit") {
    const int n = 12;
    const Problem p = sphere(n);
    SolverConfig cfg = paper_defaults();
    cfg.max_evals = static_cast<std::uint64_t>(200) * (n + 1);
    const RunRecord rec = run_direct_search(p, cfg, RngStream(1, 2, 3, 4));

    const auto ref = subsearch_test::reference_coordinate_direct_search(
        [](const std::vector<double>& x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s;
        },
        std::vector<double>(n, 1.0), cfg.alpha0, cfg.alpha_max, cfg.gamma_inc, cfg.gamma_dec,
        cfg.alpha_floor, *cfg.max_evals);

    REQUIRE(rec.history.size() == ref.history.size());
    for (std::size_t i = 0; i < ref.history.size(); ++i) {
        CHECK(rec.history[i].k == ref.history[i].k);
        CHECK(rec.history[i].alpha == ref.history[i].alpha);
        CHECK(rec.history[i].f == ref.history[i].f);
        CHECK(rec.history[i].evals == ref.history[i].evals);
    }
    CHECK(rec.final_f == ref.f);
    CHECK(rec.total_evals == ref.evals);
}

TEST_CASE("step dynamics diagnostics") {
    const StepDynamics a = diagnostics_mu_p0(2.0, 0.5);
    CHECK(a.mu == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.p0 == doctest::Approx(0.5).epsilon(1e-15));

    const StepDynamics b = diagnostics_mu_p0(2.0, 0.25);
    CHECK(b.mu == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(b.p0 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    const StepDynamics c = diagnostics_mu_p0(4.0, 0.5);
    CHECK(c.mu == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.p0 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(diagnostics_mu_p0(0.5, 0.5), std::invalid_argument);
}

TEST_CASE("critical step multiplier") {
    CHECK(diagnostic_alpha_bar(1.0, 1.0, 1.0, 1.0, 1.0, 1.0) == 1.0);
    CHECK(diagnostic_alpha_bar(1.0 / std::sqrt(2.0), 1.0, 1.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    const double base = diagnostic_alpha_bar(0.3, 0.7, 2.0, 0.5, 1.5, 1.0);
    const double doubled = diagnostic_alpha_bar(0.3, 0.7, 2.0, 0.5, 1.5, 2.0);
    CHECK(base / doubled == doctest::Approx(8.0).epsilon(1e-12));
    CHECK_THROWS_AS(diagnostic_alpha_bar(0.0, 1.0, 1.0, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("config validation") {
    SolverConfig cfg = paper_defaults();
    cfg.gamma_dec = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = paper_defaults();
    cfg.alpha_max = 0.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = paper_defaults();
    cfg.c = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
