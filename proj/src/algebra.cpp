#include "ecdg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ecdg {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
  Matrix c(rows_, b.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix Matrix::operator+(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("Matrix add: shape mismatch");
  Matrix c(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] + b.a_[i];
  return c;
}

Matrix Matrix::operator-(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("Matrix subtract: shape mismatch");
  Matrix c(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] - b.a_[i];
  return c;
}

Matrix Matrix::scaled(double s) const {
  Matrix c(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = s * a_[i];
  return c;
}

void Matrix::apply(const double* x, double* y) const {
  for (int i = 0; i < rows_; ++i) {
    double acc = 0.0;
    const double* row = a_.data() + static_cast<size_t>(i) * cols_;
    for (int j = 0; j < cols_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Matrix apply: size mismatch");
  std::vector<double> y(rows_);
  apply(x.data(), y.data());
  return y;
}

namespace {

// LU with partial pivoting; returns false when singular.
bool lu_factor(Matrix& a, std::vector<int>& piv, int& sign) {
  const int n = a.rows();
  piv.resize(n);
  std::iota(piv.begin(), piv.end(), 0);
  sign = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) return false;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(piv[k], piv[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      const double lik = a(i, k);
      if (lik == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
    }
  }
  return true;
}

}  // namespace

Matrix Matrix::solve(const Matrix& rhs) const {
  if (rows_ != cols_) throw std::invalid_argument("Matrix solve: matrix not square");
  if (rhs.rows_ != rows_) throw std::invalid_argument("Matrix solve: rhs shape mismatch");
  Matrix lu = *this;
  std::vector<int> piv;
  int sign = 0;
  if (!lu_factor(lu, piv, sign)) throw std::runtime_error("Matrix solve: singular matrix");
  const int n = rows_;
  Matrix x(n, rhs.cols_);
  for (int c = 0; c < rhs.cols_; ++c) {
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      double acc = rhs(piv[i], c);
      for (int j = 0; j < i; ++j) acc -= lu(i, j) * y[j];
      y[i] = acc;
    }
    for (int i = n - 1; i >= 0; --i) {
      double acc = y[i];
      for (int j = i + 1; j < n; ++j) acc -= lu(i, j) * x(j, c);
      x(i, c) = acc / lu(i, i);
    }
  }
  return x;
}

Matrix Matrix::inverse() const { return solve(identity(rows_)); }

double Matrix::det() const {
  if (rows_ != cols_) throw std::invalid_argument("Matrix det: matrix not square");
  Matrix lu = *this;
  std::vector<int> piv;
  int sign = 0;
  if (!lu_factor(lu, piv, sign)) return 0.0;
  double d = sign;
  for (int i = 0; i < rows_; ++i) d *= lu(i, i);
  return d;
}

std::vector<double> Matrix::col(int j) const {
  std::vector<double> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(int j, const std::vector<double>& v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

Matrix outer(const std::vector<double>& a, const std::vector<double>& b) {
  Matrix m(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(m.max_abs(), 1e-300);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol * scale) return false;
  return true;
}

Matrix EigenPairing::map_eigenvalues(const std::function<double(double)>& f) const {
  const int n = size();
  Matrix d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = f(lambda[i]);
  return vectors * d * vectors.transposed();
}

Matrix EigenPairing::abs() const {
  return map_eigenvalues([](double x) { return std::abs(x); });
}

Matrix EigenPairing::pos_part() const {
  return map_eigenvalues([](double x) { return x > 0.0 ? x : 0.0; });
}

Matrix EigenPairing::neg_part() const {
  return map_eigenvalues([](double x) { return x < 0.0 ? x : 0.0; });
}

namespace {

double offdiag_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Re-orients the eigenvector columns [lo, hi) of a repeated-eigenvalue
// cluster by Gram-Schmidt of the canonical axes projected onto the cluster's
// invariant subspace. Makes the frame independent of the rotation history.
void orient_cluster(Matrix& v, int lo, int hi) {
  const int n = v.rows();
  const int size = hi - lo;
  if (size <= 1) return;
  std::vector<std::vector<double>> cols(size);
  for (int c = 0; c < size; ++c) cols[c] = v.col(lo + c);
  std::vector<std::vector<double>> fresh;
  for (int axis = 0; axis < n && static_cast<int>(fresh.size()) < size; ++axis) {
    // Project e_axis onto the cluster subspace.
    std::vector<double> w(n, 0.0);
    for (int c = 0; c < size; ++c) {
      const double coef = cols[c][axis];  // <e_axis, col_c>
      for (int i = 0; i < n; ++i) w[i] += coef * cols[c][i];
    }
    // Orthogonalize against already accepted vectors (twice for stability).
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : fresh) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += u[i] * w[i];
        for (int i = 0; i < n; ++i) w[i] -= dot * u[i];
      }
    }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 1e-6) {
      for (double& x : w) x /= norm;
      fresh.push_back(std::move(w));
    }
  }
  if (static_cast<int>(fresh.size()) == size)
    for (int c = 0; c < size; ++c) v.set_col(lo + c, fresh[c]);
}

}  // namespace

EigenPairing eig_decompose(const Matrix& m, double zero_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_decompose: matrix not square");
  if (!is_symmetric(m, 1e-12)) throw std::invalid_argument("eig_decompose: matrix not symmetric");
  const int n = m.rows();
  Matrix a = m;
  Matrix v = Matrix::identity(n);
  const double fro = m.frobenius();

  if (fro > 0.0) {
    for (int sweep = 0; sweep < 30; ++sweep) {
      if (offdiag_norm(a) < 1e-14 * fro) break;
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (apq == 0.0) continue;
          const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
          const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;
          for (int i = 0; i < n; ++i) {
            const double aip = a(i, p), aiq = a(i, q);
            a(i, p) = c * aip - s * aiq;
            a(i, q) = s * aip + c * aiq;
          }
          for (int j = 0; j < n; ++j) {
            const double apj = a(p, j), aqj = a(q, j);
            a(p, j) = c * apj - s * aqj;
            a(q, j) = s * apj + c * aqj;
          }
          for (int i = 0; i < n; ++i) {
            const double vip = v(i, p), viq = v(i, q);
            v(i, p) = c * vip - s * viq;
            v(i, q) = s * vip + c * viq;
          }
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  EigenPairing p;
  p.lambda.resize(n);
  p.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    p.lambda[k] = a(order[k], order[k]);
    p.vectors.set_col(k, v.col(order[k]));
  }

  double scale = 0.0;
  for (double l : p.lambda) scale = std::max(scale, std::abs(l));

  // Deterministic orientation inside numerically repeated clusters.
  const double cluster_tol = 1e-8 * std::max(scale, 1e-300);
  int lo = 0;
  while (lo < n) {
    int hi = lo + 1;
    while (hi < n && std::abs(p.lambda[hi - 1] - p.lambda[hi]) <= cluster_tol) ++hi;
    orient_cluster(p.vectors, lo, hi);
    lo = hi;
  }

  // Sign rule: largest-magnitude entry positive, ties at the lowest index.
  for (int k = 0; k < n; ++k) {
    int arg = 0;
    double best = std::abs(p.vectors(0, k));
    for (int i = 1; i < n; ++i) {
      const double mag = std::abs(p.vectors(i, k));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (p.vectors(arg, k) < 0.0)
      for (int i = 0; i < n; ++i) p.vectors(i, k) = -p.vectors(i, k);
  }

  if (p.vectors.det() < 0.0)
    for (int i = 0; i < n; ++i) p.vectors(i, n - 1) = -p.vectors(i, n - 1);

  const double thr = zero_tol * scale;
  for (double l : p.lambda) {
    if (l > thr)
      ++p.positive;
    else if (l < -thr)
      ++p.negative;
    else
      ++p.zeros;
  }
  return p;
}

AntisymmetryReport is_antisymmetric(const Matrix& a, double tol) {
  AntisymmetryReport rep;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j) rep.max_violation = std::max(rep.max_violation, std::abs(a(i, j) + a(j, i)));
  rep.ok = rep.max_violation <= tol * std::max(a.max_abs(), 0.0) || rep.max_violation == 0.0;
  return rep;
}

AntisymmetryReport is_antisymmetric(const std::function<void(const double*, double*)>& apply_op, int n,
                                    double tol) {
  Matrix a(n, n);
  std::vector<double> e(n, 0.0), y(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply_op(e.data(), y.data());
    e[j] = 0.0;
    for (int i = 0; i < n; ++i) a(i, j) = y[i];
  }
  return is_antisymmetric(a, tol);
}

Matrix pairing_coupler(const EigenPairing& p) {
  if (!p.paired())
    throw std::invalid_argument("pairing_coupler: spectrum has unpaired eigenvalues; augment the system first");
  const int n = p.size();
  Matrix c(n, n);
  for (int mu = 1; mu <= p.pair_count(); ++mu) {
    const double lp = p.lambda[mu - 1];
    const double lm = p.lambda[n - mu];
    const double w = 0.5 * std::sqrt(std::abs(lp * lm));
    const auto sp = p.vectors.col(mu - 1);
    const auto sm = p.vectors.col(n - mu);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(i, j) += w * (sp[i] * sm[j] - sm[i] * sp[j]);
  }
  return c;
}

double pairwise_sum(const double* x, size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

}  // namespace ecdg
