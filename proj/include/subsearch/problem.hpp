// Objective functions and evaluation accounting.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "subsearch/linalg.hpp"

namespace subsearch {

// An unconstrained objective over R^n. Objectives must be deterministic:
// re-evaluating the same point returns bit-identical values. The gradient,
// when present, is analytic and is only used by diagnostics and tests, never
// by the solvers.
struct Problem {
    std::string name;
    int dim = 0;
    std::function<double(const Vector&)> objective;
    std::function<Vector(const Vector&)> gradient;  // may be empty
    Vector x0;
    std::optional<double> f_star;

    bool has_gradient() const { return static_cast<bool>(gradient); }
};

// Counts objective evaluations against an optional budget. Exhaustion is a
// normal control signal: try_consume() returns false when one more evaluation
// would exceed the budget, and the count never passes it.
class EvalCounter {
  public:
    EvalCounter() = default;
    explicit EvalCounter(std::optional<std::uint64_t> budget) : budget_(budget) {}

    bool try_consume() {
        if (budget_ && count_ >= *budget_) return false;
        ++count_;
        return true;
    }

    bool exhausted() const { return budget_ && count_ >= *budget_; }
    std::uint64_t count() const { return count_; }
    std::optional<std::uint64_t> budget() const { return budget_; }

  private:
    std::uint64_t count_ = 0;
    std::optional<std::uint64_t> budget_;
};

// Evaluates p at x, consuming one unit of budget. Empty when exhausted.
std::optional<double> evaluate(const Problem& p, const Vector& x, EvalCounter& counter);

// Central finite differences with per-coordinate step h * max(1, |x_i|).
// Consumes 2 * dim evaluations. Test oracle for analytic gradients.
std::optional<Vector> finite_difference_gradient(const Problem& p, const Vector& x, double h,
                                                 EvalCounter& counter);

}  // namespace subsearch
