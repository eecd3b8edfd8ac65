#pragma once

#include <array>
#include <vector>

namespace ecdg {

enum class ElemKind { interval, quad, tri };

/// Quadrature rule on the reference element: [0,1], [0,1]^2, or the unit
/// triangle {xi,eta >= 0, xi+eta <= 1}. Weights sum to the reference
/// measure. y stays empty for interval rules.
struct QuadratureRule {
  std::vector<double> x, y, w;
  int exactness = 0;
  int size() const { return static_cast<int>(w.size()); }
};

/// Gauss-Legendre rule with npts points mapped to [0,1] (exact for
/// polynomials of degree 2*npts - 1).
QuadratureRule gauss_legendre_01(int npts);

/// Rule exact for all polynomials of total degree <= exactness: Gauss for
/// intervals, tensor Gauss for squares, a collapsed tensor rule (positive
/// weights) for triangles.
QuadratureRule volume_quadrature(ElemKind kind, int exactness);

/// Legendre polynomial values/derivatives, shifted to [0,1] and normalized
/// so that int_0^1 p_i p_j = delta_ij.
void legendre_01(int k, double xi, double* val, double* deriv = nullptr);

/// Orthonormal modal basis on the reference element with precomputed tables
/// at a volume rule (default exactness 2k+2) and on each face. Triangle
/// bases come from monomials orthonormalized by modified Gram-Schmidt with
/// a reorthogonalization pass.
class ReferenceBasis {
 public:
  ElemKind kind = ElemKind::interval;
  int degree = 0;
  int n_modes = 0;

  QuadratureRule vol;
  std::vector<double> val, dxi, deta;  ///< [q * n_modes + mode]

  int n_faces = 0;
  QuadratureRule face_rule;            ///< 1D rule in the face parameter (single node for intervals)
  std::vector<double> face_val;        ///< [face][q][mode]

  void eval(double xi, double eta, double* out) const;
  void eval_grad(double xi, double eta, double* out_dxi, double* out_deta) const;
  /// Maps the face parameter tau in [0,1] to reference coordinates.
  std::array<double, 2> face_point(int face, double tau) const;
  const double* face_values(int face, int q) const {
    return face_val.data() + (static_cast<size_t>(face) * face_rule.size() + q) * n_modes;
  }

 private:
  friend ReferenceBasis make_basis(ElemKind, int, int);
  std::vector<double> tri_coef_;       ///< [mode][monomial]
  std::vector<std::array<int, 2>> tri_powers_;
};

/// Builds the basis for polynomial degree k (0 <= k <= 6); vol_exactness
/// defaults to 2k+2 and may be raised for error quadrature.
ReferenceBasis make_basis(ElemKind kind, int k, int vol_exactness = -1);

}  // namespace ecdg
