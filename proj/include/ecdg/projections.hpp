#pragma once

#include <functional>

#include "ecdg/basis.hpp"
#include "ecdg/mesh.hpp"
#include "ecdg/operator.hpp"
#include "ecdg/systems.hpp"

namespace ecdg {

using ScalarFn = std::function<double(double)>;

/// Which endpoint of each cell the one-sided projection interpolates: plus
/// pins the value at the cell's left endpoint, minus at the right endpoint.
/// The remaining k coefficients come from moment conditions against
/// polynomials of degree <= k-1 (none for k=0).
enum class RadauSide { plus, minus };

struct ProjectionResult {
  DGState state;
  /// Per-cell worst violation of the defining conditions (moments, endpoint
  /// or interface coupling), re-measured after construction; interface
  /// residuals count against both adjacent cells.
  std::vector<double> cell_residual;
  double max_residual = 0.0;
};

/// One-sided (Gauss-Radau type) projection onto piecewise polynomials of
/// degree k. Purely local; the result carries one component.
ProjectionResult gauss_radau(const ScalarFn& u, const Mesh1D& mesh, int degree, RadauSide side);

struct CoupledAdvectionResult {
  DGState u, phi;
  std::vector<double> cell_residual;  ///< same reading as ProjectionResult
  double max_residual = 0.0;
};

/// Coupled pair projection for the doubled advection system: per-cell
/// moments for both fields plus, at every interface x, the coupling
///   {Pu} + [Pphi]/2 = u(x),   {Pphi} + [Pu]/2 = phi(x).
/// Computed locally through the one-sided projections of u +- phi and
/// verified against the defining conditions.
CoupledAdvectionResult coupled_advection_projection(const ScalarFn& u, const ScalarFn& phi,
                                                    const Mesh1D& mesh, int degree);

/// Coupled projection for 1D acoustics with subsonic background: per-cell
/// moments plus the interface coupling
///   B1 {Pu} + alpha [[0,1],[-1,0]] [Pu] = B1 u(x),
/// where alpha must be the flux-family value sqrt(-lambda+ lambda-)/2.
/// Built in characteristic variables w = S^T u from the one-sided
/// projections of w1 +- a w2 with a = sqrt(-lambda-/lambda+). Throws
/// std::invalid_argument for supersonic backgrounds (both characteristics
/// on one side; the local projection is not defined) or an off-family alpha.
ProjectionResult coupled_acoustics_projection(const ScalarFn& p, const ScalarFn& v,
                                              const SymmetricSystem& sys, double alpha,
                                              const Mesh1D& mesh, int degree);

}  // namespace ecdg
