#include "ecdg/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ecdg {

QuadratureRule gauss_legendre_01(int npts) {
  if (npts < 1) throw std::invalid_argument("gauss_legendre_01: need at least one point");
  QuadratureRule r;
  r.exactness = 2 * npts - 1;
  r.x.resize(npts);
  r.w.resize(npts);
  // Nodes on [-1,1] by Newton iteration from the Chebyshev estimate.
  for (int i = 0; i < npts; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (npts == 1) {
        p1 = x;
      }
      for (int n = 1; n < npts; ++n) {
        const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = npts * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute the polynomial pair at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int n = 1; n < npts; ++n) {
      const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = npts * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1,1] -> [0,1]; reverse the index so nodes come out ascending.
    r.x[npts - 1 - i] = 0.5 * (x + 1.0);
    r.w[npts - 1 - i] = 0.5 * w;
  }
  if (npts == 1) {
    r.x[0] = 0.5;
    r.w[0] = 1.0;
  }
  return r;
}

QuadratureRule volume_quadrature(ElemKind kind, int exactness) {
  if (exactness < 0) throw std::invalid_argument("volume_quadrature: negative exactness");
  switch (kind) {
    case ElemKind::interval:
      return gauss_legendre_01((exactness + 2) / 2);
    case ElemKind::quad: {
      const QuadratureRule g = gauss_legendre_01((exactness + 2) / 2);
      QuadratureRule r;
      r.exactness = exactness;
      for (int j = 0; j < g.size(); ++j)
        for (int i = 0; i < g.size(); ++i) {
          r.x.push_back(g.x[i]);
          r.y.push_back(g.x[j]);
          r.w.push_back(g.w[i] * g.w[j]);
        }
      return r;
    }
    case ElemKind::tri: {
      // Duffy-collapsed tensor rule: (u, v(1-u)) with weight wu*wv*(1-u);
      // the u-direction integrand gains one degree from the area factor.
      const QuadratureRule g = gauss_legendre_01((exactness + 3) / 2);
      QuadratureRule r;
      r.exactness = exactness;
      for (int j = 0; j < g.size(); ++j)
        for (int i = 0; i < g.size(); ++i) {
          const double u = g.x[i], v = g.x[j];
          r.x.push_back(u);
          r.y.push_back(v * (1.0 - u));
          r.w.push_back(g.w[i] * g.w[j] * (1.0 - u));
        }
      return r;
    }
  }
  throw std::invalid_argument("volume_quadrature: unknown element kind");
}

void legendre_01(int k, double xi, double* val, double* deriv) {
  const double x = 2.0 * xi - 1.0;
  double p0 = 1.0, p1 = x, d0 = 0.0, d1 = 1.0;
  for (int i = 0; i <= k; ++i) {
    double p, d;
    if (i == 0) {
      p = p0;
      d = d0;
    } else if (i == 1) {
      p = p1;
      d = d1;
    } else {
      p = ((2.0 * i - 1.0) * x * p1 - (i - 1.0) * p0) / i;
      d = d0 + (2.0 * i - 1.0) * p1;
      p0 = p1;
      p1 = p;
      d0 = d1;
      d1 = d;
    }
    const double norm = std::sqrt(2.0 * i + 1.0);
    val[i] = norm * p;
    if (deriv) deriv[i] = 2.0 * norm * d;  // chain rule for the [0,1] shift
  }
}

namespace {

int tri_mode_count(int k) { return (k + 1) * (k + 2) / 2; }

void tri_monomials(int k, double xi, double eta, const std::vector<std::array<int, 2>>& powers, double* val,
                   double* dxi, double* deta) {
  // Power tables per coordinate up to degree k.
  double px[8], py[8];
  px[0] = py[0] = 1.0;
  for (int i = 1; i <= k; ++i) {
    px[i] = px[i - 1] * xi;
    py[i] = py[i - 1] * eta;
  }
  for (size_t m = 0; m < powers.size(); ++m) {
    const int a = powers[m][0], b = powers[m][1];
    val[m] = px[a] * py[b];
    if (dxi) dxi[m] = a > 0 ? a * px[a - 1] * py[b] : 0.0;
    if (deta) deta[m] = b > 0 ? b * px[a] * py[b - 1] : 0.0;
  }
}

}  // namespace

void ReferenceBasis::eval(double xi, double eta, double* out) const {
  switch (kind) {
    case ElemKind::interval:
      legendre_01(degree, xi, out);
      return;
    case ElemKind::quad: {
      double lx[8], ly[8];
      legendre_01(degree, xi, lx);
      legendre_01(degree, eta, ly);
      for (int j = 0; j <= degree; ++j)
        for (int i = 0; i <= degree; ++i) out[j * (degree + 1) + i] = lx[i] * ly[j];
      return;
    }
    case ElemKind::tri: {
      std::vector<double> mono(tri_powers_.size());
      tri_monomials(degree, xi, eta, tri_powers_, mono.data(), nullptr, nullptr);
      for (int m = 0; m < n_modes; ++m) {
        double acc = 0.0;
        const double* row = tri_coef_.data() + static_cast<size_t>(m) * n_modes;
        for (int j = 0; j < n_modes; ++j) acc += row[j] * mono[j];
        out[m] = acc;
      }
      return;
    }
  }
}

void ReferenceBasis::eval_grad(double xi, double eta, double* out_dxi, double* out_deta) const {
  switch (kind) {
    case ElemKind::interval: {
      double v[8];
      legendre_01(degree, xi, v, out_dxi);
      if (out_deta)
        for (int i = 0; i <= degree; ++i) out_deta[i] = 0.0;
      return;
    }
    case ElemKind::quad: {
      double lx[8], ly[8], dx[8], dy[8];
      legendre_01(degree, xi, lx, dx);
      legendre_01(degree, eta, ly, dy);
      for (int j = 0; j <= degree; ++j)
        for (int i = 0; i <= degree; ++i) {
          out_dxi[j * (degree + 1) + i] = dx[i] * ly[j];
          out_deta[j * (degree + 1) + i] = lx[i] * dy[j];
        }
      return;
    }
    case ElemKind::tri: {
      std::vector<double> mono(tri_powers_.size()), mdx(tri_powers_.size()), mdy(tri_powers_.size());
      tri_monomials(degree, xi, eta, tri_powers_, mono.data(), mdx.data(), mdy.data());
      for (int m = 0; m < n_modes; ++m) {
        double ax = 0.0, ay = 0.0;
        const double* row = tri_coef_.data() + static_cast<size_t>(m) * n_modes;
        for (int j = 0; j < n_modes; ++j) {
          ax += row[j] * mdx[j];
          ay += row[j] * mdy[j];
        }
        out_dxi[m] = ax;
        out_deta[m] = ay;
      }
      return;
    }
  }
}

std::array<double, 2> ReferenceBasis::face_point(int face, double tau) const {
  switch (kind) {
    case ElemKind::interval:
      return {face == 0 ? 0.0 : 1.0, 0.0};
    case ElemKind::quad:
      switch (face) {
        case 0: return {tau, 0.0};
        case 1: return {1.0, tau};
        case 2: return {tau, 1.0};
        case 3: return {0.0, tau};
      }
      break;
    case ElemKind::tri:
      switch (face) {
        case 0: return {tau, 0.0};
        case 1: return {1.0 - tau, tau};
        case 2: return {0.0, 1.0 - tau};
      }
      break;
  }
  throw std::invalid_argument("face_point: face index out of range");
}

ReferenceBasis make_basis(ElemKind kind, int k, int vol_exactness) {
  if (k < 0 || k > 6) throw std::invalid_argument("make_basis: degree must lie in [0, 6]");
  ReferenceBasis b;
  b.kind = kind;
  b.degree = k;
  if (vol_exactness < 0) vol_exactness = 2 * k + 2;

  switch (kind) {
    case ElemKind::interval:
      b.n_modes = k + 1;
      b.n_faces = 2;
      break;
    case ElemKind::quad:
      b.n_modes = (k + 1) * (k + 1);
      b.n_faces = 4;
      break;
    case ElemKind::tri:
      b.n_modes = tri_mode_count(k);
      b.n_faces = 3;
      break;
  }

  if (kind == ElemKind::tri) {
    // Monomial exponents ordered by total degree.
    for (int d = 0; d <= k; ++d)
      for (int a = d; a >= 0; --a) b.tri_powers_.push_back({a, d - a});
    const int n = b.n_modes;
    b.tri_coef_.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) b.tri_coef_[static_cast<size_t>(i) * n + i] = 1.0;

    // Orthonormalize against a rule exact for degree-2k products.
    const QuadratureRule gq = volume_quadrature(ElemKind::tri, 2 * k + 2);
    const int nq = gq.size();
    std::vector<double> mono(static_cast<size_t>(nq) * n);
    for (int q = 0; q < nq; ++q)
      tri_monomials(k, gq.x[q], gq.y[q], b.tri_powers_, mono.data() + static_cast<size_t>(q) * n, nullptr, nullptr);

    std::vector<double> vals(static_cast<size_t>(nq) * n);  // [q][mode] current values
    auto recompute = [&](int m) {
      for (int q = 0; q < nq; ++q) {
        double acc = 0.0;
        const double* mrow = mono.data() + static_cast<size_t>(q) * n;
        const double* crow = b.tri_coef_.data() + static_cast<size_t>(m) * n;
        for (int j = 0; j < n; ++j) acc += crow[j] * mrow[j];
        vals[static_cast<size_t>(q) * n + m] = acc;
      }
    };
    auto dot = [&](int a, int c) {
      double acc = 0.0;
      for (int q = 0; q < nq; ++q)
        acc += gq.w[q] * vals[static_cast<size_t>(q) * n + a] * vals[static_cast<size_t>(q) * n + c];
      return acc;
    };
    for (int m = 0; m < n; ++m) {
      recompute(m);
      for (int pass = 0; pass < 2; ++pass) {
        for (int l = 0; l < m; ++l) {
          const double proj = dot(m, l);
          for (int j = 0; j < n; ++j)
            b.tri_coef_[static_cast<size_t>(m) * n + j] -= proj * b.tri_coef_[static_cast<size_t>(l) * n + j];
          recompute(m);
        }
      }
      const double norm = std::sqrt(dot(m, m));
      if (!(norm > 1e-14)) throw std::runtime_error("make_basis: triangle basis degenerated");
      for (int j = 0; j < n; ++j) b.tri_coef_[static_cast<size_t>(m) * n + j] /= norm;
      recompute(m);
    }
  }

  // Volume tables.
  b.vol = volume_quadrature(kind, vol_exactness);
  const int nq = b.vol.size();
  b.val.resize(static_cast<size_t>(nq) * b.n_modes);
  b.dxi.resize(static_cast<size_t>(nq) * b.n_modes);
  b.deta.resize(static_cast<size_t>(nq) * b.n_modes);
  for (int q = 0; q < nq; ++q) {
    const double xi = b.vol.x[q];
    const double eta = kind == ElemKind::interval ? 0.0 : b.vol.y[q];
    b.eval(xi, eta, b.val.data() + static_cast<size_t>(q) * b.n_modes);
    b.eval_grad(xi, eta, b.dxi.data() + static_cast<size_t>(q) * b.n_modes,
                b.deta.data() + static_cast<size_t>(q) * b.n_modes);
  }

  // Face tables.
  if (kind == ElemKind::interval) {
    b.face_rule.x = {0.5};
    b.face_rule.w = {1.0};
    b.face_rule.exactness = 0;
  } else {
    b.face_rule = gauss_legendre_01(k + 2);
  }
  const int fq = b.face_rule.size();
  b.face_val.resize(static_cast<size_t>(b.n_faces) * fq * b.n_modes);
  for (int f = 0; f < b.n_faces; ++f)
    for (int q = 0; q < fq; ++q) {
      const auto p = b.face_point(f, b.face_rule.x[q]);
      b.eval(p[0], p[1], b.face_val.data() + (static_cast<size_t>(f) * fq + q) * b.n_modes);
    }
  return b;
}

}  // namespace ecdg
