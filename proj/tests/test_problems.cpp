#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "subsearch/problems.hpp"

using namespace subsearch;

TEST_CASE("biweight loss values") {
    CHECK(biweight_loss(0.0) == 0.0);
    CHECK(biweight_loss(1.0) == 0.5);
    CHECK(biweight_loss(1e6) < 1.0);
    CHECK(biweight_loss(1e6) > 0.999999);
    CHECK(biweight_loss(-1e6) > 0.999999);
}

TEST_CASE("biweight loss is even and its slope peaks at 1/sqrt(3)") {
    RngStream rng(41, 0, 0, 0);
    for (int i = 0; i < 1000; ++i) {
        const double theta = 20.0 * (rng.uniform() - 0.5);
        CHECK(biweight_loss(theta) == biweight_loss(-theta));
    }
    CHECK(biweight_loss_derivative(0.0) == 0.0);
    const double peak = biweight_loss_derivative(1.0 / std::sqrt(3.0));
    for (int i = 0; i <= 4000; ++i) {
        const double theta = -10.0 + i * 20.0 / 4000.0;
        CHECK(std::abs(biweight_loss_derivative(theta)) <= peak + 1e-15);
    }
    // Closed form of the peak: 9 / (8 sqrt(3)).
    CHECK(peak == doctest::Approx(9.0 / (8.0 * std::sqrt(3.0))).epsilon(1e-14));
}

TEST_CASE("biweight derivative matches finite differences") {
    for (double theta : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
        const double h = 1e-6;
        const double fd = (biweight_loss(theta + h) - biweight_loss(theta - h)) / (2.0 * h);
        CHECK(biweight_loss_derivative(theta) == doctest::Approx(fd).epsilon(1e-7));
    }
}

namespace {

void check_gradient(const Problem& p, RngStream& rng, double scale_box = 1.0) {
    REQUIRE(p.has_gradient());
    Vector x = p.x0;
    for (double& v : x) v += scale_box * (rng.uniform() - 0.5);
    const Vector g = p.gradient(x);
    EvalCounter counter;
    const auto fd = finite_difference_gradient(p, x, 1e-6, counter);
    REQUIRE(fd);
    const double gn = std::max(1.0, norm(g));
    for (int i = 0; i < p.dim; ++i) {
        CHECK(std::abs(g[i] - (*fd)[i]) <= 1e-5 * gn);
    }
}

}  // namespace

TEST_CASE("regression objective is bounded and centered at the origin") {
    RngStream rng(42, 0, 0, 0);
    const Problem p = make_robust_regression(20, 40, rng);
    CHECK(p.dim == 20);
    CHECK(p.x0 == Vector(20, 0.0));
    CHECK_FALSE(p.f_star.has_value());
    RngStream xs(43, 0, 0, 0);
    for (int i = 0; i < 50; ++i) {
        Vector x(20);
        xs.fill_normal(x);
        const double f = p.objective(x);
        CHECK(f >= 0.0);
        CHECK(f < 1.0);
    }
}

TEST_CASE("regression gradient matches finite differences") {
    RngStream rng(44, 0, 0, 0);
    const Problem p = make_robust_regression(15, 30, rng);
    RngStream xg(45, 0, 0, 0);
    for (int i = 0; i < 3; ++i) check_gradient(p, xg, 2.0);
}

TEST_CASE("regression dims follow the requested sizes") {
    RngStream rng(46, 0, 0, 0);
    const auto inst = generate_regression_instance(100, 200, rng);
    CHECK(inst->n == 100);
    CHECK(inst->m == 200);
    CHECK(inst->a.size() == 100u * 200u);
    CHECK(inst->b.size() == 200u);
}

TEST_CASE("regression regenerates identically from (key, seed)") {
    const Problem a = make_problem("regression:n=10,m=12", 77);
    const Problem b = make_problem("regression:n=10,m=12", 77);
    RngStream xs(47, 0, 0, 0);
    for (int i = 0; i < 20; ++i) {
        Vector x(10);
        xs.fill_normal(x);
        CHECK(a.objective(x) == b.objective(x));
    }
    const Problem c = make_problem("regression:n=10,m=12", 78);
    Vector x(10, 0.3);
    CHECK(a.objective(x) != c.objective(x));
}

TEST_CASE("regression objective is invariant under row permutation") {
    RngStream rng(48, 0, 0, 0);
    const auto inst = generate_regression_instance(8, 14, rng);
    auto permuted = std::make_shared<RegressionInstance>(*inst);
    // Reverse the sample order, rows of A and entries of b in lockstep.
    for (int i = 0; i < inst->m; ++i) {
        const int src = inst->m - 1 - i;
        permuted->b[i] = inst->b[src];
        for (int j = 0; j < inst->n; ++j) {
            permuted->a[static_cast<std::size_t>(i) * inst->n + j] =
                inst->a[static_cast<std::size_t>(src) * inst->n + j];
        }
    }
    const Problem p = make_robust_regression(inst);
    const Problem q = make_robust_regression(std::shared_ptr<const RegressionInstance>(permuted));
    RngStream xs(49, 0, 0, 0);
    for (int i = 0; i < 20; ++i) {
        Vector x(8);
        xs.fill_normal(x);
        CHECK(p.objective(x) == doctest::Approx(q.objective(x)).epsilon(1e-14));
    }
}

TEST_CASE("analytic suite spans the documented dimensions with known minima") {
    const auto keys = analytic_suite_keys();
    const auto suite = make_analytic_suite();
    CHECK(keys.size() >= 8);
    REQUIRE(suite.size() == keys.size());
    std::set<int> dims;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const Problem& p = suite[i];
        dims.insert(p.dim);
        CHECK(p.name == keys[i]);
        REQUIRE(p.f_star.has_value());
        CHECK(p.has_gradient());
        CHECK(static_cast<int>(p.x0.size()) == p.dim);
    }
    CHECK(dims.count(25) == 1);
    CHECK(dims.count(100) == 1);
    CHECK(dims.count(1000) == 1);
    CHECK(*std::max_element(dims.begin(), dims.end()) == 5000);
}

TEST_CASE("suite gradients agree with finite differences") {
    RngStream rng(50, 0, 0, 0);
    for (const std::string& key : analytic_suite_keys()) {
        const Problem p = make_problem(key, 1);
        if (p.dim > 1500) continue;  // the large instances repeat the same generators
        check_gradient(p, rng, 0.5);
    }
}

TEST_CASE("canonical starting points and minima") {
    const Problem s = make_problem("sphere:n=25", 1);
    CHECK(s.x0 == Vector(25, 1.0));
    CHECK(s.objective(Vector(25, 0.0)) == 0.0);
    CHECK(*s.f_star == 0.0);
    CHECK(s.objective(s.x0) == 25.0);

    const Problem r = make_problem("rosenbrock:n=4", 1);
    CHECK(r.x0 == Vector{-1.2, 1.0, -1.2, 1.0});
    CHECK(r.objective(Vector(4, 1.0)) == 0.0);

    const Problem b = make_problem("biweight:n=6", 1);
    CHECK(b.x0 == Vector(6, 0.0));
    CHECK(b.objective(Vector(6, 1.0)) == 0.0);

    const Problem q = make_problem("quad:n=3,cond=100", 1);
    CHECK(q.objective(Vector(3, 0.0)) == 0.0);
    // Eigenvalues run geometrically from 1 to cond.
    Vector e3(3, 0.0);
    e3[2] = 1.0;
    CHECK(q.objective(e3) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("unknown problem keys are rejected by name") {
    CHECK_THROWS_WITH_AS(make_problem("nosuch:n=3", 1),
                         doctest::Contains("nosuch"), std::invalid_argument);
    CHECK_THROWS_AS(make_problem("quad:n=0,cond=1", 1), std::invalid_argument);
}
