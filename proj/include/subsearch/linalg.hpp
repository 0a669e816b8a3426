// Small dense linear algebra kernels used across the library.
//
// Vectors are plain std::vector<double>; matrices are row-major. The only
// factorizations needed are a thin Householder QR (tall-skinny inputs) and
// symmetric eigenvalues via cyclic Jacobi (matrices stay r x r with small r).

#pragma once

#include <cstddef>
#include <vector>

namespace subsearch {

using Vector = std::vector<double>;

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
double norm_sq(const Vector& a);

// y += s * x
void axpy(double s, const Vector& x, Vector& y);

// a + s * b as a new vector
Vector add_scaled(const Vector& a, double s, const Vector& b);

void scale(Vector& a, double s);

Vector matvec(const Matrix& m, const Vector& x);            // m * x
Vector matvec_transpose(const Matrix& m, const Vector& x);  // m^T * x

// Orthonormal columns of the thin QR factorization of `a` (rows >= cols),
// with signs fixed so the triangular factor has a positive diagonal.
Matrix thin_qr_q(const Matrix& a);

// Eigenvalues of a symmetric matrix, ascending. Cyclic Jacobi; input is copied.
std::vector<double> symmetric_eigenvalues(Matrix a);

// Singular values of an arbitrary dense matrix, descending, computed from the
// eigenvalues of the smaller Gram matrix.
std::vector<double> singular_values(const Matrix& m);

}  // namespace subsearch
