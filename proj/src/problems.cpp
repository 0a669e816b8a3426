#include "subsearch/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "subsearch/keys.hpp"

namespace subsearch {

double biweight_loss(double theta) {
    const double t2 = theta * theta;
    return t2 / (1.0 + t2);
}

double biweight_loss_derivative(double theta) {
    const double d = 1.0 + theta * theta;
    return 2.0 * theta / (d * d);
}

double RegressionInstance::row_dot(int i, const Vector& x) const {
    const double* row = &a[static_cast<std::size_t>(i) * n];
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += row[j] * x[j];
    return s;
}

std::shared_ptr<const RegressionInstance> generate_regression_instance(int n, int m,
                                                                       RngStream& rng) {
    if (n < 1 || m < 1) throw std::invalid_argument("regression: n and m must be >= 1");
    auto inst = std::make_shared<RegressionInstance>();
    inst->n = n;
    inst->m = m;
    inst->a.resize(static_cast<std::size_t>(m) * n);
    for (double& v : inst->a) v = rng.normal();

    // Planted signal with heavy contamination: b = A z + 3 u1 + u2.
    Vector z(n);
    for (double& v : z) v = 2.0 * rng.normal();  // variance 4
    inst->b.resize(m);
    for (int i = 0; i < m; ++i) {
        const double* row = &inst->a[static_cast<std::size_t>(i) * n];
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += row[j] * z[j];
        inst->b[i] = s;
    }
    for (int i = 0; i < m; ++i) inst->b[i] += 3.0 * rng.normal();
    for (int i = 0; i < m; ++i) inst->b[i] += rng.bernoulli(0.3) ? 1.0 : 0.0;
    return inst;
}

Problem make_robust_regression(std::shared_ptr<const RegressionInstance> inst) {
    Problem p;
    p.name = "regression:n=" + std::to_string(inst->n) + ",m=" + std::to_string(inst->m);
    p.dim = inst->n;
    p.x0 = Vector(inst->n, 0.0);
    const int m = inst->m;
    p.objective = [inst, m](const Vector& x) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += biweight_loss(inst->row_dot(i, x) - inst->b[i]);
        return s / m;
    };
    p.gradient = [inst, m](const Vector& x) {
        Vector g(inst->n, 0.0);
        for (int i = 0; i < m; ++i) {
            const double w = biweight_loss_derivative(inst->row_dot(i, x) - inst->b[i]) / m;
            const double* row = &inst->a[static_cast<std::size_t>(i) * inst->n];
            for (int j = 0; j < inst->n; ++j) g[j] += w * row[j];
        }
        return g;
    };
    return p;
}

Problem make_robust_regression(int n, int m, RngStream& rng) {
    return make_robust_regression(generate_regression_instance(n, m, rng));
}

Problem make_quadratic(int n, double cond) {
    if (n < 1) throw std::invalid_argument("quad: n must be >= 1");
    if (cond < 1.0) throw std::invalid_argument("quad: cond must be >= 1");
    auto lambda = std::make_shared<Vector>(n);
    for (int i = 0; i < n; ++i) {
        (*lambda)[i] = n == 1 ? 1.0 : std::pow(cond, static_cast<double>(i) / (n - 1));
    }
    Problem p;
    p.name = "quad:n=" + std::to_string(n) + ",cond=" + std::to_string(cond);
    p.dim = n;
    p.x0 = Vector(n, 1.0);
    p.f_star = 0.0;
    p.objective = [lambda, n](const Vector& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += (*lambda)[i] * x[i] * x[i];
        return s;
    };
    p.gradient = [lambda, n](const Vector& x) {
        Vector g(n);
        for (int i = 0; i < n; ++i) g[i] = 2.0 * (*lambda)[i] * x[i];
        return g;
    };
    return p;
}

Problem make_sphere(int n) {
    if (n < 1) throw std::invalid_argument("sphere: n must be >= 1");
    Problem p;
    p.name = "sphere:n=" + std::to_string(n);
    p.dim = n;
    p.x0 = Vector(n, 1.0);
    p.f_star = 0.0;
    p.objective = [](const Vector& x) { return norm_sq(x); };
    p.gradient = [n](const Vector& x) {
        Vector g(n);
        for (int i = 0; i < n; ++i) g[i] = 2.0 * x[i];
        return g;
    };
    return p;
}

Problem make_rosenbrock(int n) {
    if (n < 2) throw std::invalid_argument("rosenbrock: n must be >= 2");
    Problem p;
    p.name = "rosenbrock:n=" + std::to_string(n);
    p.dim = n;
    p.x0 = Vector(n);
    for (int i = 0; i < n; ++i) p.x0[i] = (i % 2 == 0) ? -1.2 : 1.0;
    p.f_star = 0.0;
    p.objective = [n](const Vector& x) {
        double s = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double t = x[i + 1] - x[i] * x[i];
            const double u = 1.0 - x[i];
            s += 100.0 * t * t + u * u;
        }
        return s;
    };
    p.gradient = [n](const Vector& x) {
        Vector g(n, 0.0);
        for (int i = 0; i + 1 < n; ++i) {
            const double t = x[i + 1] - x[i] * x[i];
            g[i] += -400.0 * t * x[i] - 2.0 * (1.0 - x[i]);
            g[i + 1] += 200.0 * t;
        }
        return g;
    };
    return p;
}

Problem make_biweight_shift(int n) {
    if (n < 1) throw std::invalid_argument("biweight: n must be >= 1");
    Problem p;
    p.name = "biweight:n=" + std::to_string(n);
    p.dim = n;
    p.x0 = Vector(n, 0.0);
    p.f_star = 0.0;
    p.objective = [n](const Vector& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += biweight_loss(x[i] - 1.0);
        return s / n;
    };
    p.gradient = [n](const Vector& x) {
        Vector g(n);
        for (int i = 0; i < n; ++i) g[i] = biweight_loss_derivative(x[i] - 1.0) / n;
        return g;
    };
    return p;
}

std::vector<std::string> analytic_suite_keys() {
    return {
        "sphere:n=25",
        "sphere:n=50",
        "quad:n=25,cond=100",
        "quad:n=100,cond=10",
        "quad:n=1000,cond=100",
        "quad:n=5000,cond=10",
        "rosenbrock:n=25",
        "rosenbrock:n=100",
        "biweight:n=25",
        "biweight:n=100",
    };
}

std::vector<Problem> make_analytic_suite() {
    std::vector<Problem> suite;
    for (const std::string& key : analytic_suite_keys()) suite.push_back(make_problem(key, 0));
    return suite;
}

Problem make_problem(const std::string& key, std::uint64_t master_seed) {
    const ParsedKey k = parse_key(key);
    Problem p;
    if (k.name == "sphere") {
        p = make_sphere(k.get_int("n"));
    } else if (k.name == "quad") {
        p = make_quadratic(k.get_int("n"), k.get_double("cond"));
    } else if (k.name == "rosenbrock") {
        p = make_rosenbrock(k.get_int("n"));
    } else if (k.name == "biweight") {
        p = make_biweight_shift(k.get_int("n"));
    } else if (k.name == "regression") {
        // Instance data depends only on (master_seed, key): every solver in a
        // campaign optimizes the same realization.
        RngStream rng(master_seed, hash_key(key), hash_key("problem-data"), 0);
        p = make_robust_regression(k.get_int("n"), k.get_int("m"), rng);
    } else {
        throw std::invalid_argument("unknown problem key '" + key + "'");
    }
    p.name = key;  // keep the key verbatim so outputs are joinable on it
    return p;
}

std::vector<std::pair<std::string, std::string>> problem_registry() {
    return {
        {"sphere:n=<int>", "f = ||x||^2 from the all-ones start, f* = 0"},
        {"quad:n=<int>,cond=<real>",
         "separable quadratic, eigenvalues geometric in [1, cond], f* = 0"},
        {"rosenbrock:n=<int>", "chained Rosenbrock from the alternating start, f* = 0"},
        {"biweight:n=<int>", "separable smoothed biweight wells centered at 1, f* = 0"},
        {"regression:n=<int>,m=<int>",
         "robust linear regression with biweight loss and contaminated data (seeded)"},
    };
}

}  // namespace subsearch
