#include "subsearch/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "subsearch/run_record.hpp"

namespace subsearch {

std::string ensemble_name(SketchEnsemble e) {
    switch (e) {
        case SketchEnsemble::Identity: return "identity";
        case SketchEnsemble::Gaussian: return "gaussian";
        case SketchEnsemble::Hashing: return "hashing";
        case SketchEnsemble::Orthogonal: return "orthogonal";
    }
    return "unknown";
}

Vector SketchMatrix::apply(const Vector& g) const {
    if (static_cast<int>(g.size()) != cols_) {
        throw std::invalid_argument("SketchMatrix::apply: dimension mismatch");
    }
    switch (ensemble_) {
        case SketchEnsemble::Identity:
            return g;
        case SketchEnsemble::Hashing: {
            Vector out(rows_, 0.0);
            for (int j = 0; j < cols_; ++j) {
                const double gj = g[j];
                if (gj == 0.0) continue;
                for (int t = 0; t < s_; ++t) {
                    const std::size_t idx = static_cast<std::size_t>(j) * s_ + t;
                    out[hash_rows_[idx]] += hash_vals_[idx] * gj;
                }
            }
            return out;
        }
        default:
            return matvec(dense_, g);
    }
}

Vector SketchMatrix::apply_transpose(const Vector& d) const {
    if (static_cast<int>(d.size()) != rows_) {
        throw std::invalid_argument("SketchMatrix::apply_transpose: dimension mismatch");
    }
    switch (ensemble_) {
        case SketchEnsemble::Identity:
            return d;
        case SketchEnsemble::Hashing: {
            Vector out(cols_, 0.0);
            for (int j = 0; j < cols_; ++j) {
                double s = 0.0;
                for (int t = 0; t < s_; ++t) {
                    const std::size_t idx = static_cast<std::size_t>(j) * s_ + t;
                    s += hash_vals_[idx] * d[hash_rows_[idx]];
                }
                out[j] = s;
            }
            return out;
        }
        default:
            return matvec_transpose(dense_, d);
    }
}

double SketchMatrix::frobenius_norm() const {
    switch (ensemble_) {
        case SketchEnsemble::Identity:
            return std::sqrt(static_cast<double>(cols_));
        case SketchEnsemble::Hashing:
            // Column norms are 1 by construction (s values of magnitude
            // 1/sqrt(s)), so the Frobenius norm is sqrt(n) exactly.
            return std::sqrt(static_cast<double>(cols_));
        default: {
            double s = 0.0;
            for (double v : dense_.data) s += v * v;
            return std::sqrt(s);
        }
    }
}

Matrix SketchMatrix::gram() const {
    Matrix g(rows_, rows_);
    switch (ensemble_) {
        case SketchEnsemble::Identity:
            for (int i = 0; i < rows_; ++i) g(i, i) = 1.0;
            return g;
        case SketchEnsemble::Hashing:
            for (int j = 0; j < cols_; ++j) {
                for (int a = 0; a < s_; ++a) {
                    const std::size_t ia = static_cast<std::size_t>(j) * s_ + a;
                    for (int b = 0; b < s_; ++b) {
                        const std::size_t ib = static_cast<std::size_t>(j) * s_ + b;
                        g(hash_rows_[ia], hash_rows_[ib]) += hash_vals_[ia] * hash_vals_[ib];
                    }
                }
            }
            return g;
        default:
            for (int i = 0; i < rows_; ++i) {
                for (int j = i; j < rows_; ++j) {
                    double s = 0.0;
                    for (int c = 0; c < cols_; ++c) s += dense_(i, c) * dense_(j, c);
                    g(i, j) = s;
                    g(j, i) = s;
                }
            }
            return g;
    }
}

double SketchMatrix::operator_norm() const {
    if (ensemble_ == SketchEnsemble::Identity) return 1.0;
    const std::vector<double> ev = symmetric_eigenvalues(gram());
    return std::sqrt(std::max(ev.back(), 0.0));
}

Matrix SketchMatrix::to_dense() const {
    Matrix m(rows_, cols_);
    switch (ensemble_) {
        case SketchEnsemble::Identity:
            for (int i = 0; i < rows_; ++i) m(i, i) = 1.0;
            return m;
        case SketchEnsemble::Hashing:
            for (int j = 0; j < cols_; ++j) {
                for (int t = 0; t < s_; ++t) {
                    const std::size_t idx = static_cast<std::size_t>(j) * s_ + t;
                    m(hash_rows_[idx], j) += hash_vals_[idx];
                }
            }
            return m;
        default:
            return dense_;
    }
}

double SketchMatrix::entry(int i, int j) const {
    switch (ensemble_) {
        case SketchEnsemble::Identity:
            return i == j ? 1.0 : 0.0;
        case SketchEnsemble::Hashing: {
            double v = 0.0;
            for (int t = 0; t < s_; ++t) {
                const std::size_t idx = static_cast<std::size_t>(j) * s_ + t;
                if (hash_rows_[idx] == i) v += hash_vals_[idx];
            }
            return v;
        }
        default:
            return dense_(i, j);
    }
}

SketchMatrix make_identity(int n) {
    if (n < 1) throw std::invalid_argument("make_identity: n must be >= 1");
    SketchMatrix p;
    p.ensemble_ = SketchEnsemble::Identity;
    p.rows_ = n;
    p.cols_ = n;
    return p;
}

SketchMatrix make_gaussian(int r, int n, RngStream& rng) {
    if (r < 1 || r > n) throw std::invalid_argument("make_gaussian: need 1 <= r <= n");
    SketchMatrix p;
    p.ensemble_ = SketchEnsemble::Gaussian;
    p.rows_ = r;
    p.cols_ = n;
    p.dense_ = Matrix(r, n);
    const double sd = 1.0 / std::sqrt(static_cast<double>(r));
    for (double& v : p.dense_.data) v = sd * rng.normal();
    return p;
}

SketchMatrix make_hashing(int r, int n, int s, RngStream& rng) {
    if (r < 1 || r > n) throw std::invalid_argument("make_hashing: need 1 <= r <= n");
    if (s < 1 || s > r) throw std::invalid_argument("make_hashing: need 1 <= s <= r");
    SketchMatrix p;
    p.ensemble_ = SketchEnsemble::Hashing;
    p.rows_ = r;
    p.cols_ = n;
    p.s_ = s;
    p.hash_rows_.resize(static_cast<std::size_t>(n) * s);
    p.hash_vals_.resize(static_cast<std::size_t>(n) * s);
    const double mag = 1.0 / std::sqrt(static_cast<double>(s));
    std::vector<int> idx(r);
    for (int j = 0; j < n; ++j) {
        // Partial Fisher-Yates: the first s entries are a uniform sample of
        // distinct rows.
        std::iota(idx.begin(), idx.end(), 0);
        for (int t = 0; t < s; ++t) {
            const int swap_with = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(r - t)));
            std::swap(idx[t], idx[swap_with]);
            const std::size_t out = static_cast<std::size_t>(j) * s + t;
            p.hash_rows_[out] = idx[t];
            p.hash_vals_[out] = rng.bernoulli(0.5) ? mag : -mag;
        }
    }
    return p;
}

SketchMatrix make_orthogonal(int r, int n, RngStream& rng) {
    if (r < 1 || r > n) throw std::invalid_argument("make_orthogonal: need 1 <= r <= n");
    SketchMatrix p;
    p.ensemble_ = SketchEnsemble::Orthogonal;
    p.rows_ = r;
    p.cols_ = n;
    Matrix z(n, r);
    for (double& v : z.data) v = rng.normal();
    const Matrix q = thin_qr_q(z);  // n x r, Haar-distributed frame
    const double scale_factor = std::sqrt(static_cast<double>(n) / r);
    p.dense_ = Matrix(r, n);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j) p.dense_(i, j) = scale_factor * q(j, i);
    }
    return p;
}

double min_nonzero_singular_value(const Matrix& m) {
    const std::vector<double> sv = singular_values(m);
    const double smax = sv.front();
    if (smax == 0.0) throw std::invalid_argument("min_nonzero_singular_value: all-zero matrix");
    const double threshold = 1e-12 * smax;
    double smallest = smax;
    for (double s : sv) {
        if (s > threshold) smallest = s;
    }
    return smallest;
}

double min_nonzero_singular_value(const SketchMatrix& p) {
    if (p.ensemble() == SketchEnsemble::Identity) return 1.0;
    const std::vector<double> ev = symmetric_eigenvalues(p.gram());
    const double smax = std::sqrt(std::max(ev.back(), 0.0));
    if (smax == 0.0) throw std::invalid_argument("min_nonzero_singular_value: all-zero matrix");
    const double threshold = 1e-12 * smax;
    double smallest = smax;
    for (auto it = ev.rbegin(); it != ev.rend(); ++it) {
        const double s = std::sqrt(std::max(*it, 0.0));
        if (s > threshold) smallest = s;
    }
    return smallest;
}

bool is_well_aligned(const SketchMatrix& p, const Vector& grad, double eta, double sigma,
                     double pmax) {
    const double gn = norm(grad);
    if (gn == 0.0) throw std::invalid_argument("is_well_aligned: gradient must be nonzero");
    constexpr double kSlack = 1e-10;
    if (norm(p.apply(grad)) < eta * gn) return false;
    if (p.operator_norm() > pmax * (1.0 + kSlack)) return false;
    return min_nonzero_singular_value(p) >= sigma * (1.0 - kSlack);
}

bool is_well_aligned(const Matrix& p, const Vector& grad, double eta, double sigma, double pmax) {
    const double gn = norm(grad);
    if (gn == 0.0) throw std::invalid_argument("is_well_aligned: gradient must be nonzero");
    constexpr double kSlack = 1e-10;
    if (norm(matvec(p, grad)) < eta * gn) return false;
    const std::vector<double> sv = singular_values(p);
    if (sv.front() > pmax * (1.0 + kSlack)) return false;
    return min_nonzero_singular_value(p) >= sigma * (1.0 - kSlack);
}

double estimate_alignment_probability(SketchEnsemble ensemble, int r, int n, int s, double eta,
                                      int trials, RngStream& rng) {
    if (trials < 1) {
        throw std::invalid_argument("estimate_alignment_probability: trials must be >= 1");
    }
    if (ensemble == SketchEnsemble::Identity) return 1.0;
    Vector g(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const double gn = norm(g);
    long hits = 0;
    for (int t = 0; t < trials; ++t) {
        SketchMatrix p = ensemble == SketchEnsemble::Gaussian ? make_gaussian(r, n, rng)
                         : ensemble == SketchEnsemble::Hashing ? make_hashing(r, n, s, rng)
                                                               : make_orthogonal(r, n, rng);
        if (norm(p.apply(g)) >= eta * gn) ++hits;
    }
    return static_cast<double>(hits) / trials;
}

std::vector<HashingSvRow> hashing_singular_value_experiment(const std::vector<int>& n_list,
                                                            const std::vector<int>& r_list,
                                                            int trials, RngStream& rng) {
    if (trials < 1) {
        throw std::invalid_argument("hashing_singular_value_experiment: trials must be >= 1");
    }
    std::vector<HashingSvRow> rows;
    for (int n : n_list) {
        for (int r : r_list) {
            HashingSvRow row;
            row.n = n;
            row.r = r;
            row.trials = trials;
            double sum = 0.0;
            double lo = 0.0;
            double hi = 0.0;
            for (int t = 0; t < trials; ++t) {
                SketchMatrix p = make_hashing(r, n, 1, rng);
                const double sv = min_nonzero_singular_value(p);
                sum += sv;
                lo = (t == 0) ? sv : std::min(lo, sv);
                hi = (t == 0) ? sv : std::max(hi, sv);
            }
            row.mean = sum / trials;
            row.min = lo;
            row.max = hi;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_hashing_sv_csv(std::ostream& os, const std::vector<HashingSvRow>& rows) {
    os << "n,r,trials,mean,min,max\n";
    for (const HashingSvRow& row : rows) {
        os << row.n << ',' << row.r << ',' << row.trials << ',' << format_double(row.mean) << ','
           << format_double(row.min) << ',' << format_double(row.max) << '\n';
    }
}

}  // namespace subsearch
