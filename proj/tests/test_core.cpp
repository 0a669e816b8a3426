#include <doctest.h>

#include <cmath>
#include <sstream>

#include "subsearch/problem.hpp"
#include "subsearch/run_record.hpp"

using namespace subsearch;

TEST_CASE("eval counter increments and signals exhaustion at the budget") {
    EvalCounter c(std::optional<std::uint64_t>{3});
    CHECK(c.try_consume());
    CHECK(c.count() == 1);
    CHECK(c.try_consume());
    CHECK(c.try_consume());
    CHECK(c.count() == 3);
    CHECK_FALSE(c.try_consume());  // count == budget: one more would exceed it
    CHECK(c.count() == 3);
    CHECK(c.exhausted());
}

TEST_CASE("unbounded counter never exhausts") {
    EvalCounter c;
    for (int i = 0; i < 6; ++i) REQUIRE(c.try_consume());
    CHECK(c.count() == 6);
    CHECK_FALSE(c.exhausted());
}

namespace {

Problem sphere2() {
    Problem p;
    p.name = "sphere2";
    p.dim = 2;
    p.x0 = {1.0, 0.0};
    p.objective = [](const Vector& x) { return x[0] * x[0] + x[1] * x[1]; };
    return p;
}

}  // namespace

TEST_CASE("evaluate consumes budget and returns empty when spent") {
    Problem p = sphere2();
    EvalCounter c(std::optional<std::uint64_t>{1});
    const auto f = evaluate(p, {1.0, 0.0}, c);
    REQUIRE(f);
    CHECK(*f == 1.0);
    CHECK_FALSE(evaluate(p, {1.0, 0.0}, c));
}

TEST_CASE("central differences on ||x||^2") {
    Problem p = sphere2();
    EvalCounter c;
    const auto g = finite_difference_gradient(p, {1.0, 0.0}, 1e-6, c);
    REQUIRE(g);
    CHECK(std::abs((*g)[0] - 2.0) < 1e-6);
    CHECK(std::abs((*g)[1] - 0.0) < 1e-6);
    CHECK(c.count() == 4);  // 2 dim evaluations
}

TEST_CASE("central differences on a constant are zero") {
    Problem p;
    p.dim = 3;
    p.objective = [](const Vector&) { return 4.5; };
    EvalCounter c;
    const auto g = finite_difference_gradient(p, {0.3, -2.0, 8.0}, 1e-6, c);
    REQUIRE(g);
    for (double v : *g) CHECK(v == 0.0);
}

TEST_CASE("central differences on x1*x2") {
    Problem p;
    p.dim = 2;
    p.objective = [](const Vector& x) { return x[0] * x[1]; };
    EvalCounter c;
    const auto g = finite_difference_gradient(p, {2.0, 3.0}, 1e-6, c);
    REQUIRE(g);
    CHECK((*g)[0] == doctest::Approx(3.0).epsilon(1e-7));
    CHECK((*g)[1] == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("finite differences propagate budget exhaustion") {
    Problem p = sphere2();
    EvalCounter c(std::optional<std::uint64_t>{3});  // needs 4
    CHECK_FALSE(finite_difference_gradient(p, {1.0, 0.0}, 1e-6, c));
}

TEST_CASE("history csv layout") {
    RunRecord r;
    r.history = {{0, 1.0, 50.0, 1}, {1, 2.0, 49.0, 52}};
    std::ostringstream os;
    r.write_history_csv(os);
    CHECK(os.str() == "k,alpha,f,evals\n0,1,50,1\n1,2,49,52\n");
}

TEST_CASE("summary csv layout with inf sentinel") {
    RunRecord r;
    r.final_f = 0.125;
    r.total_evals = 42;
    r.termination = Termination::StepSizeFloor;
    r.evals_to_accuracy = {{1e-1, std::optional<std::uint64_t>{7}}, {1e-3, std::nullopt}};
    std::ostringstream os;
    r.write_summary_csv(os, "sphere:n=2", "ds/identity/coord", 5);
    CHECK(os.str() ==
          "problem,solver,seed,final_f,evals,termination,evals_tau_1e-1,evals_tau_1e-3\n"
          "sphere:n=2,ds/identity/coord,5,0.125,42,step-size-floor,7,inf\n");
}

TEST_CASE("termination names") {
    CHECK(termination_name(Termination::StepSizeFloor) == "step-size-floor");
    CHECK(termination_name(Termination::Budget) == "budget");
    CHECK(termination_name(Termination::MaxIterations) == "max-iterations");
}

TEST_CASE("doubles render with 17 significant digits and round-trip") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    const double v = 0.1234567890123456789;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("tau column labels") {
    CHECK(tau_column_name(1e-1) == "evals_tau_1e-1");
    CHECK(tau_column_name(1e-3) == "evals_tau_1e-3");
}
