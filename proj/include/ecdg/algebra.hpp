#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace ecdg {

/// Dense row-major matrix sized for coefficient algebra (system matrices,
/// flux matrices, eigenvector frames). Not meant for large linear systems.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

  static Matrix identity(int n);
  static Matrix diagonal(const std::vector<double>& d);

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  const std::vector<double>& data() const { return a_; }

  Matrix transposed() const;
  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix scaled(double s) const;

  /// y = A x for raw arrays of length cols()/rows().
  void apply(const double* x, double* y) const;
  std::vector<double> apply(const std::vector<double>& x) const;

  /// Solves A X = rhs by Gaussian elimination with partial pivoting.
  Matrix solve(const Matrix& rhs) const;
  Matrix inverse() const;
  double det() const;

  std::vector<double> col(int j) const;
  void set_col(int j, const std::vector<double>& v);

  double max_abs() const;
  double frobenius() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

/// Outer product a b^T.
Matrix outer(const std::vector<double>& a, const std::vector<double>& b);

bool is_symmetric(const Matrix& m, double tol);

/// Spectral decomposition of a real symmetric matrix, with the spectrum
/// sorted descending and classified into positive / zero / negative groups.
/// The eigenvector frame is orthonormal with determinant +1 and is produced
/// deterministically: repeated eigenvalue clusters are re-oriented against
/// the canonical axes, each column's largest-magnitude entry is made
/// positive (ties resolved at the lowest index), and the last column is
/// negated when needed to fix the determinant.
struct EigenPairing {
  std::vector<double> lambda;  ///< eigenvalues, descending
  Matrix vectors;              ///< columns are the matching eigenvectors
  int positive = 0;            ///< count of eigenvalues > zero threshold
  int negative = 0;            ///< count of eigenvalues < -threshold
  int zeros = 0;               ///< remaining (numerically zero) eigenvalues

  int size() const { return static_cast<int>(lambda.size()); }
  int pair_count() const { return positive < negative ? positive : negative; }
  int unpaired_count() const { return positive > negative ? positive - negative : negative - positive; }
  bool paired() const { return unpaired_count() == 0; }

  /// S f(Lambda) S^T.
  Matrix map_eigenvalues(const std::function<double(double)>& f) const;
  Matrix abs() const;       ///< S |Lambda| S^T
  Matrix pos_part() const;  ///< S max(Lambda,0) S^T
  Matrix neg_part() const;  ///< S min(Lambda,0) S^T
};

/// Cyclic Jacobi sweeps; stops when the off-diagonal Frobenius norm drops
/// below 1e-14 of the input norm or after 30 sweeps. Eigenvalues whose
/// magnitude is at most zero_tol * max|lambda| are classified as zero.
EigenPairing eig_decompose(const Matrix& m, double zero_tol = 1e-12);

struct AntisymmetryReport {
  bool ok = false;
  double max_violation = 0.0;  ///< max_{ij} |a_ij + a_ji|
};

/// Checks max|A + A^T| <= tol * max|A| (an all-zero matrix passes).
AntisymmetryReport is_antisymmetric(const Matrix& a, double tol);

/// Same check for a matrix-free operator, materialized by probing the n
/// canonical basis vectors.
AntisymmetryReport is_antisymmetric(const std::function<void(const double*, double*)>& apply_op, int n,
                                    double tol);

/// Anti-symmetric interface coupling for a fully paired spectrum: pairs the
/// mu-th largest eigenvalue with the mu-th smallest and weights each pair by
/// sqrt(|lambda+ lambda-|) / 2. Throws when unpaired eigenvalues remain.
Matrix pairing_coupler(const EigenPairing& p);

/// Deterministic cascade summation (pairwise reduction).
double pairwise_sum(const double* x, size_t n);
double pairwise_sum(const std::vector<double>& x);

/// Seeded RNG with a platform-independent uniform mapping. mt19937_64 output
/// is fully specified by the standard; distributions are not, so the mapping
/// to doubles is done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ecdg
