// Deterministic random streams.
//
// A stream is addressed by (master_seed, stream_id) where the id is a small
// tuple, typically (problem id, solver id, repetition). Derivation is pure:
// the tuple is folded through splitmix64 into the state of a xoshiro256++
// generator, so equal addresses replay identical sequences and distinct
// addresses give independent ones. All distributions are implemented here
// rather than via <random> so sequences do not depend on the standard library
// in use.

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "subsearch/linalg.hpp"

namespace subsearch {

// FNV-1a, used to turn string keys (problem/solver names) into stream ids.
std::uint64_t hash_key(std::string_view key);

class RngStream {
  public:
    explicit RngStream(std::uint64_t master_seed,
                       std::uint64_t id0 = 0, std::uint64_t id1 = 0, std::uint64_t id2 = 0);

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53-bit resolution.
    double uniform();

    // Uniform on (0, 1]; never returns zero (safe under log()).
    double uniform_pos();

    // Standard normal via Box-Muller; pairs are cached.
    double normal();

    void fill_normal(Vector& out);

    bool bernoulli(double p);

    // Uniform integer in [0, bound), unbiased.
    std::uint64_t below(std::uint64_t bound);

    // Uniform on the unit sphere of R^dim.
    Vector unit_vector(int dim);

    // A fresh stream derived from this one's address plus an extra id.
    RngStream substream(std::uint64_t extra_id) const;

  private:
    std::uint64_t state_[4];
    std::uint64_t seed_material_[4];  // kept for substream derivation
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace subsearch
