#pragma once

#include <functional>
#include <map>
#include <vector>

#include "ecdg/algebra.hpp"
#include "ecdg/basis.hpp"
#include "ecdg/flux.hpp"
#include "ecdg/mesh.hpp"
#include "ecdg/systems.hpp"

namespace ecdg {

/// Modal coefficients of a DG field, laid out [(cell*m + comp)*n_modes + mode].
struct DGState {
  int n_cells = 0, m = 0, n_modes = 0;
  std::vector<double> coef;

  static DGState zeros(int n_cells, int m, int n_modes);

  int size() const { return n_cells * m * n_modes; }
  double* cell_comp(int cell, int comp) {
    return coef.data() + (static_cast<size_t>(cell) * m + comp) * n_modes;
  }
  const double* cell_comp(int cell, int comp) const {
    return coef.data() + (static_cast<size_t>(cell) * m + comp) * n_modes;
  }

  void set_zero();
  void add_scaled(const DGState& other, double a);  ///< this += a * other
  void scale(double a);
};

/// Point value of one component: sum of coef * basis at (xi, eta) in the
/// cell's reference coordinates.
void eval_state(const DGState& u, const ReferenceBasis& basis, int cell, double xi, double eta,
                double* out);

enum class BcKind { characteristic, wall };

/// Prescription for one boundary tag. data fills the s-th time derivative of
/// the boundary state at a physical point; a null data means homogeneous.
struct BoundaryCondition {
  BcKind kind = BcKind::characteristic;
  std::function<void(double x, double y, double t, int deriv, double* out)> data;
};

using BoundaryTable = std::map<int, BoundaryCondition>;

/// M du/dt = A u + f(t). M is block-diagonal (B0 times the cell measure for
/// the orthonormal reference basis), A carries volume, interface and
/// boundary-trace terms plus any reaction, and f(t) carries the prescribed
/// boundary data. With periodic boundaries and a conserving flux A is
/// anti-symmetric, which is the semi-discrete energy statement.
class SemiDiscreteOperator {
 public:
  int n_cells() const { return static_cast<int>(cells_.size()); }
  int m() const { return sys_.sys.m; }
  int n_modes() const { return basis_.n_modes; }
  int dofs() const { return n_cells() * m() * n_modes(); }
  const ReferenceBasis& basis() const { return basis_; }
  const AugmentedSystem& system() const { return sys_; }
  bool periodic() const { return bdry_.empty(); }

  DGState make_state() const { return DGState::zeros(n_cells(), m(), n_modes()); }

  void apply_a(const DGState& u, DGState& out) const;
  DGState apply_a(const DGState& u) const;

  /// out += f^(deriv)(t); no-op when no boundary data is attached.
  void add_source(double t, int deriv, DGState& out) const;
  bool has_source() const;

  void solve_mass(DGState& u) const;
  double energy(const DGState& u) const;            ///< u^T M u
  double bilinear(const DGState& u, const DGState& v) const;  ///< u^T M v

  /// Materializes A by probing; refuses above 20000 unknowns.
  Matrix dense_a() const;

  /// Cells owning at least one non-periodic boundary face.
  const std::vector<char>& boundary_cells() const { return bmask_; }

  double cell_scale(int cell) const { return cells_[cell].scale; }
  int cell_region(int cell) const { return cells_[cell].region; }
  double mesh_rho() const { return rho_; }
  double max_char_speed() const { return lam_max_; }

 private:
  struct CellOp {
    Matrix c1, c2;                 ///< volume coefficient matrices (c2 empty in 1D)
    std::vector<double> reaction;  ///< n_modes^2 Gram of the reaction weight, empty if none
    int region = 0;
    double scale = 0.0;            ///< mass factor (cell length / Jacobian determinant)
  };
  struct FaceOp {
    int cm = -1, cp = -1;
    Matrix wm, wp;  ///< flux seen from the minus side: wm u- + wp u+
    std::vector<double> g_mm, g_mp, g_pp;  ///< n_modes^2 trace Grams
  };
  struct BdryOp {
    int cell = -1;
    Matrix w_int, w_data;
    std::vector<double> g;              ///< owner trace Gram
    std::vector<double> qx, qy, qw;     ///< physical quadrature (weights include length)
    std::vector<double> trace;          ///< [q * n_modes + mode]
    std::function<void(double, double, double, int, double*)> data;
  };

  friend SemiDiscreteOperator assemble(const AugmentedSystem&, const Mesh1D&, int,
                                       const FluxFactory&, const BoundaryTable&);
  friend SemiDiscreteOperator assemble(const AugmentedSystem&, const Mesh2D&, int,
                                       const FluxFactory&, const BoundaryTable&);

  AugmentedSystem sys_ = AugmentedSystem::trivial(make_advection1d(1.0));
  ReferenceBasis basis_;
  std::vector<double> kxi_, keta_;  ///< reference stiffness Grams
  std::vector<CellOp> cells_;
  std::vector<FaceOp> faces_;
  std::vector<BdryOp> bdry_;
  std::vector<char> bmask_;
  double rho_ = 0.0, lam_max_ = 0.0;
};

SemiDiscreteOperator assemble(const AugmentedSystem& sys, const Mesh1D& mesh, int degree,
                              const FluxFactory& flux, const BoundaryTable& bcs = {});
SemiDiscreteOperator assemble(const AugmentedSystem& sys, const Mesh2D& mesh, int degree,
                              const FluxFactory& flux, const BoundaryTable& bcs = {});

SemiDiscreteOperator assemble(const AugmentedSystem& sys, const Mesh1D& mesh, int degree,
                              FluxKind kind, const BoundaryTable& bcs = {});
SemiDiscreteOperator assemble(const AugmentedSystem& sys, const Mesh2D& mesh, int degree,
                              FluxKind kind, const BoundaryTable& bcs = {});

/// L2 projection onto the broken polynomial space, with quadrature elevated
/// to exactness 2k+6. Zero components project to exactly zero.
DGState project_initial(const ExactSolution& u0, const Mesh1D& mesh, int degree, double t = 0.0);
DGState project_initial(const ExactSolution& u0, const Mesh2D& mesh, int degree, double t = 0.0);

}  // namespace ecdg
