// Built-in test problems with analytic gradients, all regenerable from a
// string key and a seed.
//
// Keys: sphere:n=<int> | quad:n=<int>,cond=<real> | rosenbrock:n=<int> |
//       biweight:n=<int> | regression:n=<int>,m=<int>

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "subsearch/problem.hpp"
#include "subsearch/rng.hpp"

namespace subsearch {

// Smoothed biweight loss theta^2 / (1 + theta^2), bounded in [0, 1).
double biweight_loss(double theta);
double biweight_loss_derivative(double theta);  // 2 theta / (1 + theta^2)^2

// Data for the robust linear regression objective
//   f(x) = (1/m) sum_i phi(a_i^T x - b_i)
// with rows a_i ~ N(0, I_n) and b = A z + 3 u1 + u2, where z has N(0, 4)
// entries, u1 ~ N(0, I_m) and u2 has Bernoulli(0.3) entries in {0, 1}.
// (z is sized in R^n so that A z lands in R^m.)
struct RegressionInstance {
    int n = 0;
    int m = 0;
    std::vector<double> a;  // row-major m x n
    Vector b;
    std::uint64_t seed = 0;

    double row_dot(int i, const Vector& x) const;
};

std::shared_ptr<const RegressionInstance> generate_regression_instance(int n, int m,
                                                                       RngStream& rng);

// Objective over a (shared, immutable) regression instance. x0 is the
// origin; no known minimum.
Problem make_robust_regression(int n, int m, RngStream& rng);
Problem make_robust_regression(std::shared_ptr<const RegressionInstance> inst);

// Separable convex quadratic f = sum lambda_i x_i^2 with lambda spaced
// geometrically from 1 to cond; x0 = all ones, f* = 0.
Problem make_quadratic(int n, double cond);

// f = ||x||^2; x0 = all ones, f* = 0.
Problem make_sphere(int n);

// Chained Rosenbrock, x0 = (-1.2, 1, -1.2, 1, ...), f* = 0 at all ones.
Problem make_rosenbrock(int n);

// f = (1/n) sum phi(x_i - 1); x0 = origin, f* = 0 at all ones.
Problem make_biweight_shift(int n);

// The built-in benchmark suite: smooth problems with known minima spanning
// dimensions 25 to 5000.
std::vector<std::string> analytic_suite_keys();
std::vector<Problem> make_analytic_suite();

// Resolves a problem key. Randomized generators (regression) derive their
// data stream from (master_seed, key), so every solver sees the same
// instance for a given seed. Throws std::invalid_argument for unknown keys.
Problem make_problem(const std::string& key, std::uint64_t master_seed);

// All registered key patterns with a short description, for --list-problems.
std::vector<std::pair<std::string, std::string>> problem_registry();

}  // namespace subsearch
