#include "subsearch/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace subsearch {

double dot(const Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm_sq(const Vector& a) { return dot(a, a); }

double norm(const Vector& a) { return std::sqrt(norm_sq(a)); }

void axpy(double s, const Vector& x, Vector& y) {
    assert(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Vector add_scaled(const Vector& a, double s, const Vector& b) {
    assert(a.size() == b.size());
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
    return out;
}

void scale(Vector& a, double s) {
    for (double& v : a) v *= s;
}

Vector matvec(const Matrix& m, const Vector& x) {
    assert(static_cast<int>(x.size()) == m.cols);
    Vector out(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        const double* row = &m.data[static_cast<std::size_t>(i) * m.cols];
        for (int j = 0; j < m.cols; ++j) s += row[j] * x[j];
        out[i] = s;
    }
    return out;
}

Vector matvec_transpose(const Matrix& m, const Vector& x) {
    assert(static_cast<int>(x.size()) == m.rows);
    Vector out(m.cols, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        const double* row = &m.data[static_cast<std::size_t>(i) * m.cols];
        const double xi = x[i];
        for (int j = 0; j < m.cols; ++j) out[j] += row[j] * xi;
    }
    return out;
}

Matrix thin_qr_q(const Matrix& a) {
    const int n = a.rows;
    const int r = a.cols;
    if (n < r) throw std::invalid_argument("thin_qr_q: matrix must have rows >= cols");

    // Householder vectors stored below the diagonal of the working copy.
    Matrix w = a;
    std::vector<double> beta(r, 0.0);
    std::vector<double> diag(r, 0.0);

    for (int j = 0; j < r; ++j) {
        double sigma = 0.0;
        for (int i = j + 1; i < n; ++i) sigma += w(i, j) * w(i, j);
        const double x0 = w(j, j);
        double alpha = std::sqrt(x0 * x0 + sigma);
        if (alpha == 0.0) {
            diag[j] = 0.0;
            continue;  // column already zero below and on diagonal
        }
        if (x0 > 0.0) alpha = -alpha;
        const double v0 = x0 - alpha;
        beta[j] = -v0 / alpha;  // = 2 / (v^T v) with v scaled so v[j] = 1
        diag[j] = alpha;
        w(j, j) = v0;
        const double inv_v0 = 1.0 / v0;
        for (int i = j + 1; i < n; ++i) w(i, j) *= inv_v0;
        // Apply reflector to the remaining columns.
        for (int c = j + 1; c < r; ++c) {
            double s = w(j, c);
            for (int i = j + 1; i < n; ++i) s += w(i, j) * w(i, c);
            s *= beta[j];
            w(j, c) -= s;
            for (int i = j + 1; i < n; ++i) w(i, c) -= s * w(i, j);
        }
    }

    // Accumulate Q by applying reflectors to the first r columns of I.
    Matrix q(n, r);
    for (int j = 0; j < r; ++j) q(j, j) = 1.0;
    for (int j = r - 1; j >= 0; --j) {
        if (beta[j] == 0.0) continue;
        for (int c = j; c < r; ++c) {
            double s = q(j, c);
            for (int i = j + 1; i < n; ++i) s += w(i, j) * q(i, c);
            s *= beta[j];
            q(j, c) -= s;
            for (int i = j + 1; i < n; ++i) q(i, c) -= s * w(i, j);
        }
    }

    // Sign convention: positive diagonal of the triangular factor.
    for (int j = 0; j < r; ++j) {
        if (diag[j] < 0.0) {
            for (int i = 0; i < n; ++i) q(i, j) = -q(i, j);
        }
    }
    return q;
}

std::vector<double> symmetric_eigenvalues(Matrix a) {
    if (a.rows != a.cols) throw std::invalid_argument("symmetric_eigenvalues: square input required");
    const int n = a.rows;
    if (n == 1) return {a(0, 0)};

    double off = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);

    double scale_ref = 0.0;
    for (int i = 0; i < n; ++i) scale_ref = std::max(scale_ref, std::abs(a(i, i)));
    scale_ref = std::max(scale_ref, std::sqrt(off));
    const double tol = (scale_ref > 0.0) ? 1e-30 * scale_ref * scale_ref : 0.0;

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && off > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
        off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    }

    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> singular_values(const Matrix& m) {
    // Gram matrix on the smaller side keeps the eigenproblem tiny.
    const bool wide = m.cols >= m.rows;
    const int k = wide ? m.rows : m.cols;
    Matrix g(k, k);
    if (wide) {
        for (int i = 0; i < k; ++i) {
            for (int j = i; j < k; ++j) {
                double s = 0.0;
                for (int c = 0; c < m.cols; ++c) s += m(i, c) * m(j, c);
                g(i, j) = s;
                g(j, i) = s;
            }
        }
    } else {
        for (int i = 0; i < k; ++i) {
            for (int j = i; j < k; ++j) {
                double s = 0.0;
                for (int r = 0; r < m.rows; ++r) s += m(r, i) * m(r, j);
                g(i, j) = s;
                g(j, i) = s;
            }
        }
    }
    std::vector<double> ev = symmetric_eigenvalues(std::move(g));
    std::vector<double> sv(ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i) {
        sv[ev.size() - 1 - i] = std::sqrt(std::max(ev[i], 0.0));
    }
    return sv;
}

}  // namespace subsearch
