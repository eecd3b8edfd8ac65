#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "ecdg/algebra.hpp"
#include "ecdg/systems.hpp"

namespace ecdg {

enum class FluxKind { central, upwind, lax_friedrichs, energy_conserving, doubling, alternating };

FluxKind flux_kind_from_string(const std::string& s);
std::string to_string(FluxKind k);

/// Numerical flux for the face value of Bn u, evaluated from the minus side:
///   flux = F_mean {u} + F_jump [u],   {u} = (u+ + u-)/2,  [u] = u+ - u-.
/// F_mean is always Bn itself (consistency); the stabilization part F_jump
/// decides the energy behavior: anti-symmetric conserves, negative
/// semi-definite dissipates, zero is the central flux.
struct FluxSpec {
  FluxKind kind = FluxKind::central;
  Matrix f_mean;
  Matrix f_jump;

  void apply(const double* mean, const double* jump, double* out) const;
  std::vector<double> apply(const std::vector<double>& mean, const std::vector<double>& jump) const;
};

/// Generic interface flux in direction n (|n| = 1; in 1D pass nx = +-1).
///   central:           F_jump = 0
///   upwind:            F_jump = -1/2 |Bn|
///   lax_friedrichs:    F_jump = -1/2 max|lambda(Bn)| I
///   energy_conserving: F_jump = pairing coupler of Bn (requires a paired
///                      spectrum; throws with a hint to augment otherwise)
///   doubling:          block form 1/2 [[0, |Bn|], [-|Bn|, 0]] on a
///                      full-doubled system (throws on any other structure)
FluxSpec build_face_flux(const SymmetricSystem& sys, double nx, double ny, FluxKind kind);

/// 1D acoustics flux family: F_jump = alpha [[0, 1], [-1, 0]] in the
/// symmetric frame, i.e. per primitive equation the p-flux gains
/// alpha K0 [u] and the u-flux gains -alpha/rho0 [p]. alpha = 0 is the
/// central flux; the canonical alpha reproduces the energy-conserving flux.
FluxSpec build_alternating_acoustics_1d(const SymmetricSystem& sys, double alpha);

/// 1/2 sqrt(1 - u0^2/c0^2), defined for subsonic backgrounds only.
double canonical_acoustics_alpha(const SymmetricSystem& sys);
/// 1/2 sqrt(u0^2/c0^2 - 1), the supersonic single-system variant. Expected
/// to be order-optimal on uniform meshes only.
double supersonic_acoustics_alpha(const SymmetricSystem& sys);

/// Alternating flux for zero-background acoustics (pressure from the minus
/// side, normal velocity from the plus side) and for elastodynamics
/// (stresses from the minus side, velocities from the plus side). Throws
/// for any other system or a nonzero background.
FluxSpec build_alternating_zero_background_2d(const SymmetricSystem& sys, double nx, double ny);

/// Boundary closure evaluated in the frame of the normal passed in:
///   flux = m_interior u_h(trace) + m_data u_data(t).
struct BoundaryFluxSpec {
  Matrix m_interior;
  Matrix m_data;
  Matrix bn_pos, bn_neg;  ///< signed eigen-split (characteristic kind only)
};

/// Characteristic (upwinding) closure: with n the outward normal, the
/// interior trace rides Bn+ and the prescribed data rides Bn-, so
/// characteristics leaving the domain are untouched and entering ones are
/// fed from the data.
BoundaryFluxSpec build_boundary_flux(const SymmetricSystem& sys, double nx, double ny = 0.0);

/// Solid-wall closure for acoustics: flux = [0, p n_x, p n_y] from the
/// interior pressure trace; weakly enforces zero normal velocity.
BoundaryFluxSpec build_wall_flux(const SymmetricSystem& sys, double nx, double ny);

/// Builds and caches interface fluxes per normal (quantized to 12 decimal
/// digits); unstructured meshes hit the builder once per distinct normal.
class FluxFactory {
 public:
  using Custom = std::function<FluxSpec(const SymmetricSystem&, double, double)>;

  FluxFactory(SymmetricSystem sys, FluxKind kind);
  FluxFactory(SymmetricSystem sys, FluxKind kind, double alpha);
  static FluxFactory with_custom(SymmetricSystem sys, Custom builder);

  const FluxSpec& face(double nx, double ny = 0.0) const;
  const SymmetricSystem& system() const { return sys_; }
  FluxKind kind() const { return kind_; }

 private:
  explicit FluxFactory(SymmetricSystem sys) : sys_(std::move(sys)) {}

  SymmetricSystem sys_;
  FluxKind kind_ = FluxKind::central;
  double alpha_ = 0.0;
  bool has_alpha_ = false;
  Custom custom_;
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  mutable std::map<std::pair<long long, long long>, FluxSpec> cache_;
};

}  // namespace ecdg
