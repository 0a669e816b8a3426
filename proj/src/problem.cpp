#include "subsearch/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace subsearch {

std::optional<double> evaluate(const Problem& p, const Vector& x, EvalCounter& counter) {
    if (!counter.try_consume()) return std::nullopt;
    return p.objective(x);
}

std::optional<Vector> finite_difference_gradient(const Problem& p, const Vector& x, double h,
                                                 EvalCounter& counter) {
    if (h <= 0.0) throw std::invalid_argument("finite_difference_gradient: h must be positive");
    Vector g(p.dim, 0.0);
    Vector xp = x;
    for (int i = 0; i < p.dim; ++i) {
        const double step = h * std::max(1.0, std::abs(x[i]));
        const double xi = x[i];
        xp[i] = xi + step;
        const auto fp = evaluate(p, xp, counter);
        if (!fp) return std::nullopt;
        xp[i] = xi - step;
        const auto fm = evaluate(p, xp, counter);
        if (!fm) return std::nullopt;
        xp[i] = xi;
        g[i] = (*fp - *fm) / (2.0 * step);
    }
    return g;
}

}  // namespace subsearch
