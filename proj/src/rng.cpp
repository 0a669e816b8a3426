#include "subsearch/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subsearch {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t hash_key(std::string_view key) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RngStream::RngStream(std::uint64_t master_seed,
                     std::uint64_t id0, std::uint64_t id1, std::uint64_t id2) {
    seed_material_[0] = master_seed;
    seed_material_[1] = id0;
    seed_material_[2] = id1;
    seed_material_[3] = id2;
    std::uint64_t x = master_seed;
    // Fold every id through the mixer so each tuple component perturbs the
    // whole state, then expand into the four xoshiro words.
    x = splitmix64(x) ^ id0;
    x = splitmix64(x) ^ id1;
    x = splitmix64(x) ^ id2;
    for (auto& w : state_) w = splitmix64(x);
    // xoshiro must not start from the all-zero state.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

RngStream RngStream::substream(std::uint64_t extra_id) const {
    std::uint64_t folded = seed_material_[3];
    folded = splitmix64(folded) ^ extra_id;
    return RngStream(seed_material_[0], seed_material_[1], seed_material_[2], folded);
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    cached_normal_ = mag * std::sin(ang);
    has_cached_normal_ = true;
    return mag * std::cos(ang);
}

void RngStream::fill_normal(Vector& out) {
    for (double& v : out) v = normal();
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

std::uint64_t RngStream::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RngStream::below: bound must be positive");
    const std::uint64_t threshold = -bound % bound;  // rejection zone for unbiasedness
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= threshold) return x % bound;
    }
}

Vector RngStream::unit_vector(int dim) {
    if (dim < 1) throw std::invalid_argument("RngStream::unit_vector: dim must be >= 1");
    Vector v(dim);
    for (;;) {
        fill_normal(v);
        const double n = norm(v);
        if (n > 1e-300) {
            scale(v, 1.0 / n);
            return v;
        }
    }
}

}  // namespace subsearch
