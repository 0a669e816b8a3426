// Polling direction sets in the reduced space R^r and their quality measures.
//
// Four families are provided. Three are deterministic positive spanning sets
// whose worst-case alignment constants are known in closed form; the fourth
// draws independent unit vectors and only guarantees alignment with a fixed
// probability. Direction order within a set is part of the contract:
// opportunistic polling consumes sets in construction order.

#pragma once

#include <string>

#include "subsearch/linalg.hpp"
#include "subsearch/rng.hpp"

namespace subsearch {

enum class DirectionFamily {
    CoordinatePss,           // columns of [I_r, -I_r]
    UniformAnglePss,         // r+1 unit vectors with pairwise inner product -1/r
    CoordinatePlusNegOnes,   // e_1..e_r plus the all-(-1) vector
    RandomUnit,              // m i.i.d. uniform unit vectors
};

std::string family_name(DirectionFamily f);

struct DirectionSet {
    std::vector<Vector> dirs;
    DirectionFamily family = DirectionFamily::CoordinatePss;
    double claimed_kappa = 0.0;  // worst-case (or tau/sqrt(r)) alignment constant
    double claimed_dmax = 1.0;   // norm band: dmax^-1 <= ||d|| <= dmax

    int dim() const { return dirs.empty() ? 0 : static_cast<int>(dirs.front().size()); }
    int size() const { return static_cast<int>(dirs.size()); }
};

// Best alignment of the set with v: max_d d.v / (||d|| ||v||), in [-1, 1].
double cosine_measure_at(const DirectionSet& d, const Vector& v);

// Sampled upper bound on the global cosine measure: the minimum of
// cosine_measure_at over `samples` random unit vectors. Converges to cm(D)
// from above as samples grow.
double cosine_measure_estimate(const DirectionSet& d, int samples, RngStream& rng);

// e_1..e_r then -e_1..-e_r. kappa = r^-1/2, dmax = 1.
DirectionSet make_coordinate_pss(int r);

// Regular simplex: r+1 unit vectors with pairwise inner products exactly
// -1/r and zero sum. kappa = 1/r, dmax = 1.
DirectionSet make_uniform_angle_pss(int r);

// e_1..e_r plus the unnormalized all-(-1) vector (norm sqrt(r)).
// kappa = (r^2 + 2(r-1)sqrt(r))^-1/2, dmax = sqrt(r).
DirectionSet make_coordinate_plus_negative_ones(int r);

// m independent draws uniform on the unit sphere. kappa = 1/sqrt(r) (tau=1),
// dmax = 1.
DirectionSet make_random_unit(int r, int m, RngStream& rng);

// Checks both descent-set conditions against the sketched gradient: the set
// must align with -sketched_grad at least kappa, and every direction norm
// must lie in [1/dmax, dmax] (checked with 1e-12 relative slack to absorb
// normalization rounding).
bool is_descent_set(const DirectionSet& d, const Vector& sketched_grad, double kappa,
                    double dmax);

// Monte-Carlo frequency of cm(D, v) >= tau/sqrt(r) for a fixed unit v and
// fresh random-unit sets D of size m. Only the random-unit family is
// supported; the deterministic families satisfy the event with probability 1.
double estimate_descent_probability(DirectionFamily family, int r, int m, double tau,
                                    int trials, RngStream& rng);

}  // namespace subsearch
