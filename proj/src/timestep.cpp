#include "ecdg/timestep.hpp"

#include <utility>

namespace ecdg {

std::string IntegratorSpec::str() const {
  switch (kind) {
    case IntegratorKind::conserving_lw: return "lw" + std::to_string(2 * r + 2);
    case IntegratorKind::rk_lw: return "rk" + std::to_string(r);
    default: return "hybrid" + std::to_string(r);
  }
}

IntegratorSpec parse_integrator(const std::string& s) {
  auto number = [&](size_t prefix) {
    const std::string digits = s.substr(prefix);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("parse_integrator: bad integrator '" + s + "'");
    return std::stoi(digits);
  };
  IntegratorSpec spec;
  if (s.rfind("hybrid", 0) == 0) {
    spec.kind = IntegratorKind::hybrid;
    spec.r = number(6);
  } else if (s.rfind("lw", 0) == 0) {
    spec.kind = IntegratorKind::conserving_lw;
    const int order = number(2);
    if (order < 2 || order % 2 != 0)
      throw std::invalid_argument("parse_integrator: lw order must be even and >= 2, got '" + s +
                                  "'");
    spec.r = order / 2 - 1;
  } else if (s.rfind("rk", 0) == 0) {
    spec.kind = IntegratorKind::rk_lw;
    spec.r = number(2);
    if (spec.r < 1) throw std::invalid_argument("parse_integrator: rk stage count must be >= 1");
  } else {
    throw std::invalid_argument("parse_integrator: unknown integrator '" + s + "'");
  }
  return spec;
}

double cfl_dt(const SemiDiscreteOperator& op, double cfl) {
  if (cfl <= 0.0) throw std::invalid_argument("cfl_dt: CFL must be positive");
  return cfl * op.mesh_rho() / op.max_char_speed();
}

void advance(const SemiDiscreteOperator& op, const IntegratorSpec& spec, double dt,
             TimeHistory& h) {
  DGState next;
  if (spec.kind == IntegratorKind::rk_lw) {
    next = step_rk_lw(op, h.curr, h.time, spec.r, dt);
  } else if (h.prev.coef.size() != h.curr.coef.size()) {
    next = startup(op, h.curr, h.time, spec.r, dt);
  } else if (spec.kind == IntegratorKind::conserving_lw) {
    next = step_conserving_lw(op, h, spec.r, dt);
  } else {
    next = step_hybrid(op, h, spec.r, dt);
  }
  h.prev = std::move(h.curr);
  h.curr = std::move(next);
  h.time += dt;
  ++h.steps;
}

}  // namespace ecdg
