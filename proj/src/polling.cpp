#include "subsearch/polling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subsearch {

std::string family_name(DirectionFamily f) {
    switch (f) {
        case DirectionFamily::CoordinatePss: return "coord";
        case DirectionFamily::UniformAnglePss: return "uniform";
        case DirectionFamily::CoordinatePlusNegOnes: return "coord_neg_e";
        case DirectionFamily::RandomUnit: return "random_unit";
    }
    return "unknown";
}

double cosine_measure_at(const DirectionSet& d, const Vector& v) {
    const double vn = norm(v);
    if (vn == 0.0) throw std::invalid_argument("cosine_measure_at: v must be nonzero");
    double best = -1.0;
    for (const Vector& dir : d.dirs) {
        const double dn = norm(dir);
        if (dn == 0.0) throw std::invalid_argument("cosine_measure_at: zero direction in set");
        best = std::max(best, dot(dir, v) / (dn * vn));
    }
    return std::clamp(best, -1.0, 1.0);
}

double cosine_measure_estimate(const DirectionSet& d, int samples, RngStream& rng) {
    if (samples < 1) throw std::invalid_argument("cosine_measure_estimate: samples must be >= 1");
    const int r = d.dim();
    double worst = 1.0;
    for (int i = 0; i < samples; ++i) {
        const Vector v = rng.unit_vector(r);
        worst = std::min(worst, cosine_measure_at(d, v));
    }
    return worst;
}

DirectionSet make_coordinate_pss(int r) {
    if (r < 1) throw std::invalid_argument("make_coordinate_pss: r must be >= 1");
    DirectionSet d;
    d.family = DirectionFamily::CoordinatePss;
    d.claimed_kappa = 1.0 / std::sqrt(static_cast<double>(r));
    d.claimed_dmax = 1.0;
    d.dirs.reserve(2 * static_cast<std::size_t>(r));
    for (int sign = 0; sign < 2; ++sign) {
        for (int i = 0; i < r; ++i) {
            Vector e(r, 0.0);
            e[i] = sign == 0 ? 1.0 : -1.0;
            d.dirs.push_back(std::move(e));
        }
    }
    return d;
}

DirectionSet make_uniform_angle_pss(int r) {
    if (r < 1) throw std::invalid_argument("make_uniform_angle_pss: r must be >= 1");
    DirectionSet d;
    d.family = DirectionFamily::UniformAnglePss;
    d.claimed_kappa = 1.0 / static_cast<double>(r);
    d.claimed_dmax = 1.0;

    // Columns of the r x (r+1) Helmert sub-basis scaled by sqrt((r+1)/r).
    // Row j of the basis is (1,...,1, -j, 0,...,0) / sqrt(j(j+1)) with j ones,
    // which is orthonormal and orthogonal to the all-ones vector. The scaled
    // columns are unit vectors with pairwise inner products exactly -1/r and
    // zero sum: the Gram matrix ((r+1)/r) I - (1/r) ee^T realized directly.
    const double lift = std::sqrt((r + 1.0) / r);
    d.dirs.assign(r + 1, Vector(r, 0.0));
    for (int j = 1; j <= r; ++j) {
        const double denom = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1.0));
        for (int i = 0; i < j; ++i) d.dirs[i][j - 1] = lift * denom;
        d.dirs[j][j - 1] = lift * (-static_cast<double>(j)) * denom;
    }
    return d;
}

DirectionSet make_coordinate_plus_negative_ones(int r) {
    if (r < 1) throw std::invalid_argument("make_coordinate_plus_negative_ones: r must be >= 1");
    DirectionSet d;
    d.family = DirectionFamily::CoordinatePlusNegOnes;
    const double rr = static_cast<double>(r);
    d.claimed_kappa = 1.0 / std::sqrt(rr * rr + 2.0 * (rr - 1.0) * std::sqrt(rr));
    d.claimed_dmax = std::sqrt(rr);
    d.dirs.reserve(static_cast<std::size_t>(r) + 1);
    for (int i = 0; i < r; ++i) {
        Vector e(r, 0.0);
        e[i] = 1.0;
        d.dirs.push_back(std::move(e));
    }
    d.dirs.emplace_back(r, -1.0);
    return d;
}

DirectionSet make_random_unit(int r, int m, RngStream& rng) {
    if (r < 1 || m < 1) throw std::invalid_argument("make_random_unit: r and m must be >= 1");
    DirectionSet d;
    d.family = DirectionFamily::RandomUnit;
    d.claimed_kappa = 1.0 / std::sqrt(static_cast<double>(r));
    d.claimed_dmax = 1.0;
    d.dirs.reserve(m);
    for (int i = 0; i < m; ++i) d.dirs.push_back(rng.unit_vector(r));
    return d;
}

bool is_descent_set(const DirectionSet& d, const Vector& sketched_grad, double kappa,
                    double dmax) {
    if (norm(sketched_grad) == 0.0) {
        throw std::invalid_argument("is_descent_set: sketched gradient must be nonzero");
    }
    constexpr double kSlack = 1e-12;
    for (const Vector& dir : d.dirs) {
        const double dn = norm(dir);
        if (dn > dmax * (1.0 + kSlack) || dn < (1.0 / dmax) * (1.0 - kSlack)) return false;
    }
    Vector neg = sketched_grad;
    scale(neg, -1.0);
    return cosine_measure_at(d, neg) >= kappa;
}

double estimate_descent_probability(DirectionFamily family, int r, int m, double tau,
                                    int trials, RngStream& rng) {
    if (family != DirectionFamily::RandomUnit) {
        throw std::invalid_argument(
            "estimate_descent_probability: only the random-unit family is supported");
    }
    if (trials < 1) throw std::invalid_argument("estimate_descent_probability: trials must be >= 1");
    // The target vector is fixed WLOG: the random-unit family is rotation
    // invariant.
    Vector v(r, 0.0);
    v[0] = 1.0;
    const double threshold = tau / std::sqrt(static_cast<double>(r));
    long hits = 0;
    for (int t = 0; t < trials; ++t) {
        const DirectionSet d = make_random_unit(r, m, rng);
        if (cosine_measure_at(d, v) >= threshold) ++hits;
    }
    return static_cast<double>(hits) / trials;
}

}  // namespace subsearch
