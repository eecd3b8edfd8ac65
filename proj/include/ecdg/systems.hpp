#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ecdg/algebra.hpp"

namespace ecdg {

/// Linear symmetric hyperbolic system
///   B0 u_t + B1 u_x (+ B2 u_y) = c(x,y) u
/// with B0 symmetric positive definite (piecewise constant per mesh region)
/// and B1, B2 symmetric. The conserved quantity is E(t) = int (B0 u) . u;
/// the optional reaction coefficient c breaks conservation and is applied to
/// the leading reaction_components components only.
struct SymmetricSystem {
  std::string name;
  int m = 1;
  int dim = 1;
  std::vector<Matrix> B0;      ///< per region, m x m SPD
  std::vector<Matrix> B0_inv;  ///< cached inverses, same indexing
  Matrix B1;
  Matrix B2;  ///< empty when dim == 1

  std::function<double(double, double)> reaction;
  int reaction_components = 0;

  int n_regions() const { return static_cast<int>(B0.size()); }
  const Matrix& b0(int region = 0) const { return B0[region]; }
  const Matrix& b0_inv(int region = 0) const { return B0_inv[region]; }
  bool b0_diagonal() const;

  /// Directional coefficient B1 n_x + B2 n_y (just B1 in 1D).
  Matrix bn(double nx, double ny = 0.0) const;

  /// Largest characteristic speed in direction n: the spectral radius of
  /// B0^-1 Bn, maximized over regions.
  double max_speed(double nx, double ny = 0.0) const;

  void validate() const;
};

/// Validates and completes a system definition (fills the cached inverses).
SymmetricSystem make_system(std::string name, int dim, std::vector<Matrix> b0, Matrix b1,
                            Matrix b2 = Matrix());

enum class AugmentMode { full_double, partial_1d };

/// A system extended by trailing auxiliary components whose initial data is
/// identically zero. The analytic auxiliary solution stays zero (the blocks
/// are uncoupled in the PDE); only the numerical flux couples them.
struct AugmentedSystem {
  SymmetricSystem sys;  ///< the extended system, usable on its own
  int base_m = 0;
  int aug_count = 0;
  bool full_double = false;
  /// Per component of sys: index into the base system, or -1 for auxiliary.
  std::vector<int> map_to_base;

  /// Wraps an unmodified system (aug_count == 0, identity mapping).
  static AugmentedSystem trivial(SymmetricSystem s);
};

/// full_double: block-diagonal extension with the sign-flipped copy
/// (B1 -> diag(B1, -B1), same for B2, B0 duplicated), giving a spectrum
/// that is mirror-symmetric at every normal.
/// partial_1d (1D only): appends r = |#positive - #negative| scalar
/// components carrying the mirrored surplus speeds of B1, so the extended
/// B1 has a fully paired spectrum. Returns the trivial wrap when the
/// spectrum is already paired.
AugmentedSystem augment(const SymmetricSystem& sys, AugmentMode mode);

/// Closed-form reference solution; eval writes m components. Solutions on
/// periodic domains wrap their argument. smooth_at (when set) marks points
/// where the solution is smooth enough for derivative checks.
struct ExactSolution {
  std::string name;
  int m = 1;
  int dim = 1;
  std::function<void(double x, double y, double t, double* out)> eval;
  double t_end = 1e300;
  std::function<bool(double x, double y, double t)> smooth_at;
  /// Optional closed-form time-derivative ladder: writes d^deriv/dt^deriv of
  /// the solution (deriv = 0 agrees with eval). Null when not available;
  /// consumers needing derivatives then fall back to finite differences.
  std::function<void(double x, double y, double t, int deriv, double* out)> eval_dt;
  std::string description;

  std::vector<double> operator()(double x, double y, double t) const {
    std::vector<double> out(m);
    eval(x, y, t, out.data());
    return out;
  }
};

ExactSolution exact_solution(const std::string& name);
std::vector<std::string> exact_solution_names();

/// Extends a base solution to an augmented system by zero-padding the
/// auxiliary components.
ExactSolution extend_to(const ExactSolution& base, const AugmentedSystem& aug);

// Catalog constructors. Parameters must satisfy the positivity assumptions
// stated on each one; violations throw std::invalid_argument.

/// Scalar advection u_t + c u_x = 0 (c > 0) recast with B0 = 1/c, B1 = 1.
SymmetricSystem make_advection1d(double c = 1.0);

/// Scalar advection u_t + bx u_x + by u_y = 0 with B0 = 1.
SymmetricSystem make_advection2d(double bx = 1.0, double by = 1.0);

/// Linearized acoustics in [p, u] around background velocity u0, bulk
/// modulus K0 > 0 and density rho0 > 0:
///   B0 = diag(1/K0, rho0), B1 = [[u0/K0, 1], [1, u0 rho0]].
SymmetricSystem make_acoustics1d(double u0 = 0.0, double k0 = 1.0, double rho0 = 1.0);

/// Linearized acoustics in [p, u, v] around background velocity (u0, v0).
SymmetricSystem make_acoustics2d(double u0 = 0.0, double v0 = 0.0, double k0 = 1.0,
                                 double rho0 = 1.0);

/// Subsonic 2D acoustics with one auxiliary zero component transported
/// against the background flow, making Bn paired at every normal. Requires
/// u0^2 + v0^2 < K0/rho0; use full doubling otherwise.
AugmentedSystem make_acoustics2d_paired(double u0, double v0, double k0 = 1.0, double rho0 = 1.0);

/// Maxwell system in transverse magnetic form, state [Hx, Hy, Ez],
/// B0 = diag(mu, mu, eps).
SymmetricSystem make_maxwell_tm(double mu = 1.0, double eps = 1.0);

/// Isotropic elastodynamics in stress-velocity form
/// [sxx, syy, sxy, v, w]. The symmetric form is obtained by multiplying
/// with the SPD compliance-mass matrix B0; the primitive coefficient
/// matrices (diagonal mass) are recovered as B0_inv * B1 and B0_inv * B2.
/// Requires mu > 0, lambda + mu > 0, rho > 0.
SymmetricSystem make_elastodynamics(double lambda = 2.0, double mu = 1.0, double rho = 1.0);

/// Linearized Euler equations around a uniform mean flow with Mach numbers
/// mx, my >= 0, symmetrized by the change of variables [rho - p, u, v, p]
/// (B0 = I). The spectrum of Bn is not paired for a nonzero mean flow.
SymmetricSystem make_linearized_euler(double mx = 0.5, double my = 0.0);

/// Radially symmetric wave reduction u_t + u_x + u/x = 0 for x > 0:
/// unit-speed advection with reaction coefficient c(x) = -1/x.
SymmetricSystem make_radial_advection();

struct CatalogResult {
  AugmentedSystem system;  ///< trivial wrap unless the entry is inherently augmented
  std::string default_solution;  ///< exact-solution name at canonical parameters ("" if none)
};

/// Dispatch by name with key=value parameters; unknown names or parameter
/// keys throw. See catalog_names() for the accepted names.
CatalogResult catalog(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> catalog_names();

}  // namespace ecdg
