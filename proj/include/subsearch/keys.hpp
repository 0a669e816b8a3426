// String keys for problems, polling families, sketch ensembles and solvers.
// Grammar: name[:param=value[,param=value...]]; solver keys compose as
// ds/<sketch-key>/<poll-key> or plain stp.

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "subsearch/polling.hpp"
#include "subsearch/sketch.hpp"
#include "subsearch/solver.hpp"

namespace subsearch {

struct ParsedKey {
    std::string name;
    std::map<std::string, std::string> params;

    bool has(const std::string& k) const { return params.count(k) > 0; }
    int get_int(const std::string& k) const;
    double get_double(const std::string& k) const;
    int get_int_or(const std::string& k, int fallback) const;
};

ParsedKey parse_key(const std::string& key);

// coord | uniform | coord_neg_e | random_unit:m=<int>
PollingSpec parse_polling_key(const std::string& key);
std::string polling_key(const PollingSpec& spec);

// identity | gaussian:r=<int> | hashing:r=<int>,s=<int> | orthogonal:r=<int>
SketchSpec parse_sketch_key(const std::string& key);
std::string sketch_key(const SketchSpec& spec);

enum class SolverKind { DirectSearch, Stp };

struct SolverSpec {
    SolverKind kind = SolverKind::DirectSearch;
    SketchSpec sketch;
    PollingSpec polling;
};

// ds/<sketch>/<poll> or stp
SolverSpec parse_solver_key(const std::string& key);
std::string solver_key(const SolverSpec& spec);

// True when every iteration of the solver is deterministic (identity sketch
// with a deterministic polling family).
bool solver_is_deterministic(const SolverSpec& spec);

}  // namespace subsearch
