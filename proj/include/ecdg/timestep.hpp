#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ecdg/operator.hpp"

namespace ecdg {

enum class IntegratorKind { conserving_lw, rk_lw, hybrid };

/// Time integrator selection. conserving_lw(r) is the two-level scheme of
/// order 2r+2 (2r+1 operator applications per step; r = 0 is leap-frog).
/// rk_lw(r) is the one-level truncated-exponential scheme of order r
/// (r applications; r = 1 is forward Euler). hybrid(r) advances interior
/// cells with conserving_lw(r) and boundary cells with rk_lw(2r+1).
struct IntegratorSpec {
  IntegratorKind kind = IntegratorKind::conserving_lw;
  int r = 1;

  int order() const { return kind == IntegratorKind::rk_lw ? r : 2 * r + 2; }
  bool two_level() const { return kind != IntegratorKind::rk_lw; }
  std::string str() const;
};

/// Accepts lw<order> (order even, >= 2), rk<r> (r >= 1), hybrid<r> (r >= 0);
/// anything else throws std::invalid_argument.
IntegratorSpec parse_integrator(const std::string& s);

/// Two adjacent time levels plus the clock. prev is ignored by one-level
/// schemes and must be filled (by startup) before two-level stepping.
struct TimeHistory {
  DGState prev;  ///< u at time - dt
  DGState curr;  ///< u at time
  double time = 0.0;
  long steps = 0;
};

/// dt = CFL * rho_mesh / lambda_max. rho is the smallest cell length scale
/// (1D cell length, 2D inscribed-circle diameter convention of the mesh) and
/// lambda_max the largest characteristic speed over face directions.
double cfl_dt(const SemiDiscreteOperator& op, double cfl);

namespace detail {

/// d^s u = M^{-1}(A d^{s-1} u + f^{(s-1)}(t)); the ladder underlying every
/// Lax-Wendroff variant here.
template <class Op>
DGState lw_derivative(const Op& op, const DGState& d_prev, double t, int s) {
  DGState out = op.apply_a(d_prev);
  op.add_source(t, s - 1, out);
  op.solve_mass(out);
  return out;
}

}  // namespace detail

/// u^{n+1} = u^{n-1} + sum_{i=0..r} 2 dt^{2i+1}/(2i+1)! d^{2i+1} u^n.
/// Only the odd ladder rungs enter; the even ones cancel between the two
/// levels, which is where the discrete energy identity comes from.
template <class Op>
DGState step_conserving_lw(const Op& op, const TimeHistory& h, int r, double dt) {
  if (r < 0) throw std::invalid_argument("step_conserving_lw: r must be >= 0");
  if (h.prev.coef.size() != h.curr.coef.size() || h.curr.coef.empty())
    throw std::invalid_argument("step_conserving_lw: two time levels required; run startup first");
  DGState next = h.prev;
  DGState d = h.curr;
  double dts = 1.0, facts = 1.0;
  for (int s = 1; s <= 2 * r + 1; ++s) {
    d = detail::lw_derivative(op, d, h.time, s);
    dts *= dt;
    facts *= s;
    if (s % 2 == 1) next.add_scaled(d, 2.0 * dts / facts);
  }
  return next;
}

/// u^{n+1} = sum_{i=0..r} dt^i/i! d^i u^n (truncated exponential).
template <class Op>
DGState step_rk_lw(const Op& op, const DGState& u, double t, int r, double dt) {
  if (r < 1) throw std::invalid_argument("step_rk_lw: r must be >= 1");
  DGState next = u;
  DGState d = u;
  double dts = 1.0, facts = 1.0;
  for (int s = 1; s <= r; ++s) {
    d = detail::lw_derivative(op, d, t, s);
    dts *= dt;
    facts *= s;
    next.add_scaled(d, dts / facts);
  }
  return next;
}

/// Interior rows follow conserving_lw(r); rows of the marked cells follow
/// rk_lw(2r+1) from the same time level, trading exact conservation near the
/// boundary for stability.
template <class Op>
DGState step_hybrid(const Op& op, const TimeHistory& h, int r, double dt,
                    const std::vector<char>& boundary_cells) {
  DGState next = step_conserving_lw(op, h, r, dt);
  if (boundary_cells.size() != static_cast<size_t>(next.n_cells))
    throw std::invalid_argument("step_hybrid: boundary mask size does not match the state");
  bool any = false;
  for (char c : boundary_cells) any = any || c != 0;
  if (!any) return next;
  const DGState rk = step_rk_lw(op, h.curr, h.time, 2 * r + 1, dt);
  const int block = next.m * next.n_modes;
  for (int c = 0; c < next.n_cells; ++c)
    if (boundary_cells[c])
      for (int i = 0; i < block; ++i) next.coef[c * block + i] = rk.coef[c * block + i];
  return next;
}

inline DGState step_hybrid(const SemiDiscreteOperator& op, const TimeHistory& h, int r, double dt) {
  if (op.periodic())
    throw std::invalid_argument("step_hybrid: periodic problem has no boundary cells");
  return step_hybrid(op, h, r, dt, op.boundary_cells());
}

/// One rk_lw(2r+2) step: the startup level for the two-level schemes, one
/// order above them so the global order is preserved.
template <class Op>
DGState startup(const Op& op, const DGState& u0, double t0, int r, double dt) {
  return step_rk_lw(op, u0, t0, 2 * r + 2, dt);
}

/// Advances the history by one step of the chosen scheme, performing the
/// startup step automatically when a two-level scheme has no previous level.
void advance(const SemiDiscreteOperator& op, const IntegratorSpec& spec, double dt, TimeHistory& h);

}  // namespace ecdg
