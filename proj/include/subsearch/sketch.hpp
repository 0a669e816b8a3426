// Sketching matrices P in R^{r x n} mapping the ambient space into a random
// r-dimensional subspace, plus the alignment and singular-value diagnostics
// used to certify them.
//
// Four ensembles: identity (r = n, stored implicitly), dense Gaussian with
// N(0, 1/r) entries, sparse s-hashing (exactly s nonzeros +-1/sqrt(s) per
// column, stored column-compressed so P^T d costs O(ns)), and scaled
// Haar-orthogonal rows.

#pragma once

#include <string>
#include <vector>

#include "subsearch/linalg.hpp"
#include "subsearch/rng.hpp"

namespace subsearch {

enum class SketchEnsemble { Identity, Gaussian, Hashing, Orthogonal };

std::string ensemble_name(SketchEnsemble e);

class SketchMatrix {
  public:
    SketchEnsemble ensemble() const { return ensemble_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int hashing_s() const { return s_; }

    Vector apply(const Vector& g) const;            // P g, g in R^n
    Vector apply_transpose(const Vector& d) const;  // P^T d, d in R^r

    double frobenius_norm() const;
    double operator_norm() const;  // largest singular value

    // P P^T as a dense r x r matrix (identity excluded: it is known).
    Matrix gram() const;

    // Dense copy, for tests and the generic singular-value path.
    Matrix to_dense() const;

    double entry(int i, int j) const;

    friend SketchMatrix make_identity(int n);
    friend SketchMatrix make_gaussian(int r, int n, RngStream& rng);
    friend SketchMatrix make_hashing(int r, int n, int s, RngStream& rng);
    friend SketchMatrix make_orthogonal(int r, int n, RngStream& rng);

  private:
    SketchEnsemble ensemble_ = SketchEnsemble::Identity;
    int rows_ = 0;
    int cols_ = 0;
    int s_ = 0;
    Matrix dense_;                  // gaussian / orthogonal
    std::vector<int> hash_rows_;    // hashing: s row indices per column
    std::vector<double> hash_vals_; // hashing: matching values
};

// Identity sketch (r = n); well-aligned with eta = sigma = P_max = 1.
SketchMatrix make_identity(int n);

// Entries i.i.d. N(0, 1/r).
SketchMatrix make_gaussian(int r, int n, RngStream& rng);

// Per column: s distinct rows chosen uniformly without replacement, values
// independently +-1/sqrt(s). Column norms are 1 and the Frobenius norm is
// sqrt(n) by construction.
SketchMatrix make_hashing(int r, int n, int s, RngStream& rng);

// sqrt(n/r) times r Haar-orthonormal rows, realized as the transposed Q of a
// thin QR of an n x r standard Gaussian matrix (sign convention: positive
// diagonal of the triangular factor). All nonzero singular values equal
// sqrt(n/r).
SketchMatrix make_orthogonal(int r, int n, RngStream& rng);

// Smallest singular value above 1e-12 * sigma_max; zero singular values do
// not count. Throws on an all-zero matrix.
double min_nonzero_singular_value(const Matrix& m);
double min_nonzero_singular_value(const SketchMatrix& p);

// True iff ||P grad|| >= eta ||grad||, ||P||_2 <= pmax and the minimum
// nonzero singular value is >= sigma. Norm comparisons carry 1e-10 relative
// slack so exact ensemble constants pass under rounding.
bool is_well_aligned(const SketchMatrix& p, const Vector& grad, double eta, double sigma,
                     double pmax);
bool is_well_aligned(const Matrix& p, const Vector& grad, double eta, double sigma, double pmax);

// Monte-Carlo frequency of ||P g|| >= eta ||g|| over fresh draws, with g the
// fixed unit vector (1,...,1)/sqrt(n). Identity returns exactly 1 without
// sampling.
double estimate_alignment_probability(SketchEnsemble ensemble, int r, int n, int s, double eta,
                                      int trials, RngStream& rng);

struct HashingSvRow {
    int n = 0;
    int r = 0;
    int trials = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

// Statistics of the minimum nonzero singular value of s=1 hashing matrices
// over `trials` independent draws, for every (n, r) pair in the given lists.
std::vector<HashingSvRow> hashing_singular_value_experiment(const std::vector<int>& n_list,
                                                            const std::vector<int>& r_list,
                                                            int trials, RngStream& rng);

void write_hashing_sv_csv(std::ostream& os, const std::vector<HashingSvRow>& rows);

}  // namespace subsearch
