#include "subsearch/keys.hpp"

#include <stdexcept>

namespace subsearch {

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw std::invalid_argument("bad key '" + key + "': " + why);
}

}  // namespace

int ParsedKey::get_int(const std::string& k) const {
    auto it = params.find(k);
    if (it == params.end()) bad_key(name, "missing parameter '" + k + "'");
    return std::stoi(it->second);
}

double ParsedKey::get_double(const std::string& k) const {
    auto it = params.find(k);
    if (it == params.end()) bad_key(name, "missing parameter '" + k + "'");
    return std::stod(it->second);
}

int ParsedKey::get_int_or(const std::string& k, int fallback) const {
    auto it = params.find(k);
    return it == params.end() ? fallback : std::stoi(it->second);
}

ParsedKey parse_key(const std::string& key) {
    ParsedKey out;
    const auto colon = key.find(':');
    out.name = key.substr(0, colon);
    if (out.name.empty()) bad_key(key, "empty name");
    if (colon == std::string::npos) return out;
    std::string rest = key.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string item = rest.substr(pos, comma - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) bad_key(key, "expected param=value, got '" + item + "'");
        out.params[item.substr(0, eq)] = item.substr(eq + 1);
        pos = comma + 1;
    }
    return out;
}

PollingSpec parse_polling_key(const std::string& key) {
    const ParsedKey k = parse_key(key);
    PollingSpec spec;
    if (k.name == "coord") {
        spec.family = DirectionFamily::CoordinatePss;
    } else if (k.name == "uniform") {
        spec.family = DirectionFamily::UniformAnglePss;
    } else if (k.name == "coord_neg_e") {
        spec.family = DirectionFamily::CoordinatePlusNegOnes;
    } else if (k.name == "random_unit") {
        spec.family = DirectionFamily::RandomUnit;
        spec.m = k.get_int("m");
        if (spec.m < 1) bad_key(key, "m must be >= 1");
    } else {
        bad_key(key, "unknown polling family");
    }
    return spec;
}

std::string polling_key(const PollingSpec& spec) {
    if (spec.family == DirectionFamily::RandomUnit) {
        return "random_unit:m=" + std::to_string(spec.m);
    }
    return family_name(spec.family);
}

SketchSpec parse_sketch_key(const std::string& key) {
    const ParsedKey k = parse_key(key);
    SketchSpec spec;
    if (k.name == "identity") {
        spec.ensemble = SketchEnsemble::Identity;
    } else if (k.name == "gaussian") {
        spec.ensemble = SketchEnsemble::Gaussian;
        spec.r = k.get_int("r");
    } else if (k.name == "hashing") {
        spec.ensemble = SketchEnsemble::Hashing;
        spec.r = k.get_int("r");
        spec.s = k.get_int_or("s", 1);
    } else if (k.name == "orthogonal") {
        spec.ensemble = SketchEnsemble::Orthogonal;
        spec.r = k.get_int("r");
    } else {
        bad_key(key, "unknown sketch ensemble");
    }
    if (spec.ensemble != SketchEnsemble::Identity && spec.r < 1) bad_key(key, "r must be >= 1");
    if (spec.ensemble == SketchEnsemble::Hashing && (spec.s < 1 || spec.s > spec.r)) {
        bad_key(key, "need 1 <= s <= r");
    }
    return spec;
}

std::string sketch_key(const SketchSpec& spec) {
    switch (spec.ensemble) {
        case SketchEnsemble::Identity: return "identity";
        case SketchEnsemble::Gaussian: return "gaussian:r=" + std::to_string(spec.r);
        case SketchEnsemble::Hashing:
            return "hashing:r=" + std::to_string(spec.r) + ",s=" + std::to_string(spec.s);
        case SketchEnsemble::Orthogonal: return "orthogonal:r=" + std::to_string(spec.r);
    }
    return "unknown";
}

SolverSpec parse_solver_key(const std::string& key) {
    SolverSpec spec;
    if (key == "stp") {
        spec.kind = SolverKind::Stp;
        return spec;
    }
    const auto first = key.find('/');
    if (key.substr(0, first) != "ds" || first == std::string::npos) {
        bad_key(key, "expected 'stp' or 'ds/<sketch>/<poll>'");
    }
    const auto second = key.find('/', first + 1);
    if (second == std::string::npos) bad_key(key, "expected 'ds/<sketch>/<poll>'");
    spec.kind = SolverKind::DirectSearch;
    spec.sketch = parse_sketch_key(key.substr(first + 1, second - first - 1));
    spec.polling = parse_polling_key(key.substr(second + 1));
    return spec;
}

std::string solver_key(const SolverSpec& spec) {
    if (spec.kind == SolverKind::Stp) return "stp";
    return "ds/" + sketch_key(spec.sketch) + "/" + polling_key(spec.polling);
}

bool solver_is_deterministic(const SolverSpec& spec) {
    if (spec.kind == SolverKind::Stp) return false;
    return spec.sketch.ensemble == SketchEnsemble::Identity &&
           spec.polling.family != DirectionFamily::RandomUnit;
}

}  // namespace subsearch
