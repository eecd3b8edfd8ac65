#include "ecdg/systems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace ecdg {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n, static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix blockdiag(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

double frac(double x) { return x - std::floor(x); }

// d^s/dt^s of sin(theta(t)) with theta linear in t: each derivative brings
// down omega = dtheta/dt and advances the phase by a quarter period.
double dtsin(double theta, double omega, int s) {
  return std::pow(omega, s) * std::sin(theta + 0.5 * kPi * s);
}

}  // namespace

bool SymmetricSystem::b0_diagonal() const {
  for (const Matrix& b : B0)
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j)
        if (i != j && b(i, j) != 0.0) return false;
  return true;
}

Matrix SymmetricSystem::bn(double nx, double ny) const {
  if (dim == 1) return B1.scaled(nx);
  return B1.scaled(nx) + B2.scaled(ny);
}

double SymmetricSystem::max_speed(double nx, double ny) const {
  const Matrix b = bn(nx, ny);
  double best = 0.0;
  for (const Matrix& b0 : B0) {
    const EigenPairing e0 = eig_decompose(b0);
    const Matrix w = e0.map_eigenvalues([](double l) { return 1.0 / std::sqrt(l); });
    const EigenPairing s = eig_decompose(w * b * w);
    for (double l : s.lambda) best = std::max(best, std::abs(l));
  }
  return best;
}

void SymmetricSystem::validate() const {
  if (m < 1) throw std::invalid_argument("system: component count must be positive");
  if (B1.rows() != m || B1.cols() != m) throw std::invalid_argument("system: B1 must be m x m");
  if (dim == 1 && !B2.empty()) throw std::invalid_argument("system: B2 given for a 1D system");
  if (dim == 2 && (B2.rows() != m || B2.cols() != m))
    throw std::invalid_argument("system: B2 must be m x m in 2D");
  const double tol1 = 1e-12 * std::max(1.0, B1.max_abs());
  if (!is_symmetric(B1, tol1)) throw std::invalid_argument("system: B1 is not symmetric");
  if (dim == 2 && !is_symmetric(B2, 1e-12 * std::max(1.0, B2.max_abs())))
    throw std::invalid_argument("system: B2 is not symmetric");
  if (B0.empty()) throw std::invalid_argument("system: at least one B0 region required");
  if (B0_inv.size() != B0.size()) throw std::invalid_argument("system: B0_inv out of sync");
  for (const Matrix& b : B0) {
    if (b.rows() != m || b.cols() != m) throw std::invalid_argument("system: B0 must be m x m");
    if (!is_symmetric(b, 1e-12 * std::max(1.0, b.max_abs())))
      throw std::invalid_argument("system: B0 is not symmetric");
    for (int i = 0; i < m; ++i)
      if (b(i, i) <= 0.0) throw std::invalid_argument("system: B0 diagonal must be positive");
    const EigenPairing e = eig_decompose(b);
    if (e.negative > 0 || e.zeros > 0)
      throw std::invalid_argument("system: B0 is not positive definite");
  }
  if (reaction_components < 0 || reaction_components > m)
    throw std::invalid_argument("system: reaction component range out of bounds");
  if (reaction_components > 0 && !reaction)
    throw std::invalid_argument("system: reaction components set without a coefficient");
}

SymmetricSystem make_system(std::string name, int dim, std::vector<Matrix> b0, Matrix b1,
                            Matrix b2) {
  SymmetricSystem s;
  s.name = std::move(name);
  s.dim = dim;
  s.m = b1.rows();
  s.B0 = std::move(b0);
  s.B1 = std::move(b1);
  s.B2 = std::move(b2);
  s.B0_inv.reserve(s.B0.size());
  for (const Matrix& b : s.B0) s.B0_inv.push_back(b.inverse());
  s.validate();
  return s;
}

AugmentedSystem AugmentedSystem::trivial(SymmetricSystem s) {
  AugmentedSystem a;
  a.base_m = s.m;
  a.aug_count = 0;
  a.map_to_base.resize(s.m);
  for (int i = 0; i < s.m; ++i) a.map_to_base[i] = i;
  a.sys = std::move(s);
  return a;
}

AugmentedSystem augment(const SymmetricSystem& sys, AugmentMode mode) {
  AugmentedSystem a;
  a.base_m = sys.m;
  if (mode == AugmentMode::full_double) {
    std::vector<Matrix> b0;
    b0.reserve(sys.B0.size());
    for (const Matrix& b : sys.B0) b0.push_back(blockdiag(b, b));
    Matrix b1 = blockdiag(sys.B1, sys.B1.scaled(-1.0));
    Matrix b2 = sys.dim == 2 ? blockdiag(sys.B2, sys.B2.scaled(-1.0)) : Matrix();
    a.sys = make_system(sys.name + "+doubled", sys.dim, std::move(b0), std::move(b1),
                        std::move(b2));
    a.aug_count = sys.m;
    a.full_double = true;
  } else {
    if (sys.dim != 1)
      throw std::invalid_argument("augment: partial pairing is 1D only; use full_double in 2D");
    const EigenPairing p = eig_decompose(sys.B1);
    const int r = p.unpaired_count();
    if (r == 0) return AugmentedSystem::trivial(sys);
    // Mirror the surplus speeds; the largest-magnitude mirror goes last.
    std::vector<double> extra(r);
    if (p.positive > p.negative) {
      for (int k = 0; k < r; ++k) extra[k] = -p.lambda[r - 1 - k];
    } else {
      for (int k = 0; k < r; ++k) extra[k] = -p.lambda[p.size() - r + k];
    }
    std::vector<Matrix> b0;
    b0.reserve(sys.B0.size());
    for (const Matrix& b : sys.B0) b0.push_back(blockdiag(b, Matrix::identity(r)));
    Matrix b1 = blockdiag(sys.B1, Matrix::diagonal(extra));
    a.sys = make_system(sys.name + "+paired", 1, std::move(b0), std::move(b1));
    a.aug_count = r;
  }
  a.sys.reaction = sys.reaction;
  a.sys.reaction_components = sys.reaction_components;
  a.map_to_base.resize(a.sys.m, -1);
  for (int i = 0; i < sys.m; ++i) a.map_to_base[i] = i;
  return a;
}

SymmetricSystem make_advection1d(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("advection1d: speed must be positive");
  return make_system("advection1d", 1, {Matrix::diagonal({1.0 / c})}, Matrix::diagonal({1.0}));
}

SymmetricSystem make_advection2d(double bx, double by) {
  return make_system("advection2d", 2, {Matrix::diagonal({1.0})}, Matrix::diagonal({bx}),
                     Matrix::diagonal({by}));
}

SymmetricSystem make_acoustics1d(double u0, double k0, double rho0) {
  if (!(k0 > 0.0) || !(rho0 > 0.0))
    throw std::invalid_argument("acoustics1d: K0 and rho0 must be positive");
  Matrix b0 = Matrix::diagonal({1.0 / k0, rho0});
  Matrix b1 = from_rows({{u0 / k0, 1.0}, {1.0, u0 * rho0}});
  return make_system("acoustics1d", 1, {std::move(b0)}, std::move(b1));
}

SymmetricSystem make_acoustics2d(double u0, double v0, double k0, double rho0) {
  if (!(k0 > 0.0) || !(rho0 > 0.0))
    throw std::invalid_argument("acoustics2d: K0 and rho0 must be positive");
  Matrix b0 = Matrix::diagonal({1.0 / k0, rho0, rho0});
  Matrix b1 = from_rows({{u0 / k0, 1.0, 0.0}, {1.0, u0 * rho0, 0.0}, {0.0, 0.0, u0 * rho0}});
  Matrix b2 = from_rows({{v0 / k0, 0.0, 1.0}, {0.0, v0 * rho0, 0.0}, {1.0, 0.0, v0 * rho0}});
  return make_system("acoustics2d", 2, {std::move(b0)}, std::move(b1), std::move(b2));
}

AugmentedSystem make_acoustics2d_paired(double u0, double v0, double k0, double rho0) {
  if (!(k0 > 0.0) || !(rho0 > 0.0))
    throw std::invalid_argument("acoustics2d_paired: K0 and rho0 must be positive");
  const double c2 = k0 / rho0;
  if (!(u0 * u0 + v0 * v0 < c2))
    throw std::invalid_argument(
        "acoustics2d_paired: background flow must be subsonic; use full doubling instead");
  // The auxiliary component is transported against the background flow:
  // rho0 phi_t - u0 rho0 phi_x - v0 rho0 phi_y = 0.
  Matrix b0 = Matrix::diagonal({1.0 / k0, rho0, rho0, rho0});
  Matrix b1 = from_rows({{u0 / k0, 1.0, 0.0, 0.0},
                         {1.0, u0 * rho0, 0.0, 0.0},
                         {0.0, 0.0, u0 * rho0, 0.0},
                         {0.0, 0.0, 0.0, -u0 * rho0}});
  Matrix b2 = from_rows({{v0 / k0, 0.0, 1.0, 0.0},
                         {0.0, v0 * rho0, 0.0, 0.0},
                         {1.0, 0.0, v0 * rho0, 0.0},
                         {0.0, 0.0, 0.0, -v0 * rho0}});
  AugmentedSystem a;
  a.sys = make_system("acoustics2d+paired", 2, {std::move(b0)}, std::move(b1), std::move(b2));
  a.base_m = 3;
  a.aug_count = 1;
  a.map_to_base = {0, 1, 2, -1};
  return a;
}

SymmetricSystem make_maxwell_tm(double mu, double eps) {
  if (!(mu > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("maxwell_tm: mu and eps must be positive");
  Matrix b0 = Matrix::diagonal({mu, mu, eps});
  Matrix b1 = from_rows({{0.0, 0.0, 0.0}, {0.0, 0.0, -1.0}, {0.0, -1.0, 0.0}});
  Matrix b2 = from_rows({{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
  return make_system("maxwell_tm", 2, {std::move(b0)}, std::move(b1), std::move(b2));
}

SymmetricSystem make_elastodynamics(double lambda, double mu, double rho) {
  if (!(mu > 0.0) || !(lambda + mu > 0.0) || !(rho > 0.0))
    throw std::invalid_argument("elastodynamics: need mu > 0, lambda + mu > 0, rho > 0");
  const double d = 4.0 * mu * (mu + lambda);
  Matrix b0 = from_rows({{(lambda + 2.0 * mu) / d, -lambda / d, 0.0, 0.0, 0.0},
                         {-lambda / d, (lambda + 2.0 * mu) / d, 0.0, 0.0, 0.0},
                         {0.0, 0.0, 1.0 / mu, 0.0, 0.0},
                         {0.0, 0.0, 0.0, rho, 0.0},
                         {0.0, 0.0, 0.0, 0.0, rho}});
  Matrix b1 = from_rows({{0.0, 0.0, 0.0, -1.0, 0.0},
                         {0.0, 0.0, 0.0, 0.0, 0.0},
                         {0.0, 0.0, 0.0, 0.0, -1.0},
                         {-1.0, 0.0, 0.0, 0.0, 0.0},
                         {0.0, 0.0, -1.0, 0.0, 0.0}});
  Matrix b2 = from_rows({{0.0, 0.0, 0.0, 0.0, 0.0},
                         {0.0, 0.0, 0.0, 0.0, -1.0},
                         {0.0, 0.0, 0.0, -1.0, 0.0},
                         {0.0, 0.0, -1.0, 0.0, 0.0},
                         {0.0, -1.0, 0.0, 0.0, 0.0}});
  return make_system("elastodynamics", 2, {std::move(b0)}, std::move(b1), std::move(b2));
}

SymmetricSystem make_linearized_euler(double mx, double my) {
  if (mx < 0.0 || my < 0.0)
    throw std::invalid_argument("linearized_euler: Mach numbers must be nonnegative");
  Matrix b1 = from_rows({{mx, 0.0, 0.0, 0.0},
                         {0.0, mx, 0.0, 1.0},
                         {0.0, 0.0, mx, 0.0},
                         {0.0, 1.0, 0.0, mx}});
  Matrix b2 = from_rows({{my, 0.0, 0.0, 0.0},
                         {0.0, my, 0.0, 0.0},
                         {0.0, 0.0, my, 1.0},
                         {0.0, 0.0, 1.0, my}});
  return make_system("linearized_euler", 2, {Matrix::identity(4)}, std::move(b1), std::move(b2));
}

SymmetricSystem make_radial_advection() {
  SymmetricSystem s = make_advection1d(1.0);
  s.name = "radial_advection";
  s.reaction = [](double x, double) { return -1.0 / x; };
  s.reaction_components = 1;
  return s;
}

ExactSolution extend_to(const ExactSolution& base, const AugmentedSystem& aug) {
  if (base.m != aug.base_m)
    throw std::invalid_argument("extend_to: component count does not match the base system");
  ExactSolution e = base;
  e.name = base.name + "+zeros";
  e.m = aug.sys.m;
  const auto beval = base.eval;
  const int bm = base.m;
  const auto map = aug.map_to_base;
  e.eval = [beval, bm, map](double x, double y, double t, double* out) {
    std::vector<double> b(bm);
    beval(x, y, t, b.data());
    for (size_t i = 0; i < map.size(); ++i) out[i] = map[i] >= 0 ? b[map[i]] : 0.0;
  };
  if (base.eval_dt) {
    const auto bdt = base.eval_dt;
    e.eval_dt = [bdt, bm, map](double x, double y, double t, int s, double* out) {
      std::vector<double> b(bm);
      bdt(x, y, t, s, b.data());
      for (size_t i = 0; i < map.size(); ++i) out[i] = map[i] >= 0 ? b[map[i]] : 0.0;
    };
  }
  return e;
}

ExactSolution exact_solution(const std::string& name) {
  ExactSolution e;
  e.name = name;
  if (name == "advect1d_sine") {
    e.m = 1;
    e.dim = 1;
    e.description = "sin(2 pi (x - t)), unit-speed advection on [0,1]";
    e.eval = [](double x, double, double t, double* out) { out[0] = std::sin(2.0 * kPi * (x - t)); };
    e.eval_dt = [](double x, double, double t, int s, double* out) {
      out[0] = dtsin(2.0 * kPi * (x - t), -2.0 * kPi, s);
    };
  } else if (name == "advect1d_sine3") {
    e.m = 1;
    e.dim = 1;
    e.description = "sin(6 pi (x - t)), three wavelengths per unit";
    e.eval = [](double x, double, double t, double* out) { out[0] = std::sin(6.0 * kPi * (x - t)); };
    e.eval_dt = [](double x, double, double t, int s, double* out) {
      out[0] = dtsin(6.0 * kPi * (x - t), -6.0 * kPi, s);
    };
  } else if (name == "advect1d_gauss") {
    e.m = 1;
    e.dim = 1;
    e.description = "advected Gaussian exp(-200 (x - t - 1/2)^2), wrapped on [0,1]";
    e.eval = [](double x, double, double t, double* out) {
      const double w = frac(x - t) - 0.5;
      out[0] = std::exp(-200.0 * w * w);
    };
    e.smooth_at = [](double x, double, double t) {
      const double w = frac(x - t);
      return std::min(w, 1.0 - w) > 0.01;
    };
  } else if (name == "acoustics1d_sine") {
    e.m = 2;
    e.dim = 1;
    e.description = "two counter-propagating sound waves, background u0 = 0.5, K0 = rho0 = 1";
    e.eval = [](double x, double, double t, double* out) {
      const double w1 = std::sin(2.0 * kPi * (x - 1.5 * t));
      const double w2 = std::sin(2.0 * kPi * (x + 0.5 * t));
      out[0] = 0.5 * (w1 + w2);
      out[1] = 0.5 * (w1 - w2);
    };
    e.eval_dt = [](double x, double, double t, int s, double* out) {
      const double w1 = dtsin(2.0 * kPi * (x - 1.5 * t), -3.0 * kPi, s);
      const double w2 = dtsin(2.0 * kPi * (x + 0.5 * t), kPi, s);
      out[0] = 0.5 * (w1 + w2);
      out[1] = 0.5 * (w1 - w2);
    };
  } else if (name == "radial_wave") {
    e.m = 1;
    e.dim = 1;
    e.t_end = 400.0;
    e.description = "outgoing spherical wave (5/r) sin(pi/3 (t - r + 5)) behind the front r = t + 5";
    e.eval = [](double r, double, double t, double* out) {
      out[0] = r <= t + 5.0 ? (5.0 / r) * std::sin(kPi / 3.0 * (t - r + 5.0)) : 0.0;
    };
    e.eval_dt = [](double r, double, double t, int s, double* out) {
      out[0] = r <= t + 5.0 ? (5.0 / r) * dtsin(kPi / 3.0 * (t - r + 5.0), kPi / 3.0, s) : 0.0;
    };
    e.smooth_at = [](double r, double, double t) {
      return r >= 5.0 && std::abs(r - (t + 5.0)) > 0.5;
    };
  } else if (name == "advect2d_sine") {
    e.m = 1;
    e.dim = 2;
    e.description = "sin(2 pi (x + y - 2 t)), diagonal advection with b = (1,1)";
    e.eval = [](double x, double y, double t, double* out) {
      out[0] = std::sin(2.0 * kPi * (x + y - 2.0 * t));
    };
    e.eval_dt = [](double x, double y, double t, int s, double* out) {
      out[0] = dtsin(2.0 * kPi * (x + y - 2.0 * t), -4.0 * kPi, s);
    };
  } else if (name == "advect2d_sine2") {
    e.m = 1;
    e.dim = 2;
    e.description = "sin(4 pi (x + y - 2 t)), diagonal advection with b = (1,1)";
    e.eval = [](double x, double y, double t, double* out) {
      out[0] = std::sin(4.0 * kPi * (x + y - 2.0 * t));
    };
    e.eval_dt = [](double x, double y, double t, int s, double* out) {
      out[0] = dtsin(4.0 * kPi * (x + y - 2.0 * t), -8.0 * kPi, s);
    };
  } else if (name == "advect2d_gauss") {
    e.m = 1;
    e.dim = 2;
    e.description = "advected Gaussian bump exp(-200 |x - t - c|^2), wrapped on [0,1]^2";
    e.eval = [](double x, double y, double t, double* out) {
      const double wx = frac(x - t) - 0.5;
      const double wy = frac(y - t) - 0.5;
      out[0] = std::exp(-200.0 * (wx * wx + wy * wy));
    };
    e.smooth_at = [](double x, double y, double t) {
      const double wx = frac(x - t);
      const double wy = frac(y - t);
      return std::min(wx, 1.0 - wx) > 0.01 && std::min(wy, 1.0 - wy) > 0.01;
    };
  } else if (name == "acoustics2d_sine") {
    e.m = 3;
    e.dim = 2;
    e.description = "plane pressure waves along (1,1)/sqrt(2), zero background, K0 = rho0 = 1";
    e.eval = [](double x, double y, double t, double* out) {
      const double s = std::numbers::sqrt2;
      const double w1 = std::sin(2.0 * kPi * (x + y - s * t));
      const double w2 = std::sin(2.0 * kPi * (x + y + s * t));
      out[0] = 0.5 * (w1 + w2);
      out[1] = out[2] = 0.25 * s * (w1 - w2);
    };
    e.eval_dt = [](double x, double y, double t, int d, double* out) {
      const double s = std::numbers::sqrt2;
      const double w1 = dtsin(2.0 * kPi * (x + y - s * t), -2.0 * kPi * s, d);
      const double w2 = dtsin(2.0 * kPi * (x + y + s * t), 2.0 * kPi * s, d);
      out[0] = 0.5 * (w1 + w2);
      out[1] = out[2] = 0.25 * s * (w1 - w2);
    };
  } else if (name == "acoustics2d_sine_subsonic") {
    e.m = 3;
    e.dim = 2;
    e.description = "plane pressure waves along (1,1)/sqrt(2), background (0.5, 0), K0 = rho0 = 1";
    e.eval = [](double x, double y, double t, double* out) {
      const double s = std::numbers::sqrt2;
      const double w1 = std::sin(2.0 * kPi * (x + y - (s + 0.5) * t));
      const double w2 = std::sin(2.0 * kPi * (x + y + (s - 0.5) * t));
      out[0] = 0.5 * (w1 + w2);
      out[1] = out[2] = 0.25 * s * (w1 - w2);
    };
    e.eval_dt = [](double x, double y, double t, int d, double* out) {
      const double s = std::numbers::sqrt2;
      const double w1 = dtsin(2.0 * kPi * (x + y - (s + 0.5) * t), -2.0 * kPi * (s + 0.5), d);
      const double w2 = dtsin(2.0 * kPi * (x + y + (s - 0.5) * t), 2.0 * kPi * (s - 0.5), d);
      out[0] = 0.5 * (w1 + w2);
      out[1] = out[2] = 0.25 * s * (w1 - w2);
    };
  } else if (name == "elastic_plane_wave") {
    e.m = 5;
    e.dim = 2;
    e.description =
        "superposed P and S plane waves along (1,1)/sqrt(2) for lambda = 2, mu = 1, rho = 1";
    e.eval = [](double x, double y, double t, double* out) {
      const double lambda = 2.0, mu = 1.0, rho = 1.0;
      const double cs = std::sqrt(mu / rho);
      const double cp = std::sqrt((lambda + 2.0 * mu) / rho);
      // A plane wave f(x + y - s t) solves the system only when s is an
      // eigenvalue of B1 + B2, i.e. s = -sqrt(2) cs and s = sqrt(2) cp for
      // the S and P polarizations below.
      const double ws = std::sin(2.0 * kPi * (x + y + std::numbers::sqrt2 * cs * t));
      const double wp = std::sin(2.0 * kPi * (x + y - std::numbers::sqrt2 * cp * t));
      const double a = 0.5 * std::numbers::sqrt2;
      out[0] = -mu * ws + (lambda + mu) * wp;  // sxx
      out[1] = mu * ws + (lambda + mu) * wp;   // syy
      out[2] = mu * wp;                        // sxy
      out[3] = -a * cs * ws - a * cp * wp;     // v
      out[4] = a * cs * ws - a * cp * wp;      // w
    };
    e.eval_dt = [](double x, double y, double t, int d, double* out) {
      const double lambda = 2.0, mu = 1.0, rho = 1.0;
      const double cs = std::sqrt(mu / rho);
      const double cp = std::sqrt((lambda + 2.0 * mu) / rho);
      const double s2 = std::numbers::sqrt2;
      const double ws = dtsin(2.0 * kPi * (x + y + s2 * cs * t), 2.0 * kPi * s2 * cs, d);
      const double wp = dtsin(2.0 * kPi * (x + y - s2 * cp * t), -2.0 * kPi * s2 * cp, d);
      const double a = 0.5 * s2;
      out[0] = -mu * ws + (lambda + mu) * wp;
      out[1] = mu * ws + (lambda + mu) * wp;
      out[2] = mu * wp;
      out[3] = -a * cs * ws - a * cp * wp;
      out[4] = a * cs * ws - a * cp * wp;
    };
  } else {
    throw std::invalid_argument("exact_solution: unknown name '" + name + "'");
  }
  return e;
}

std::vector<std::string> exact_solution_names() {
  return {"advect1d_sine",  "advect1d_sine3",   "advect1d_gauss",
          "acoustics1d_sine", "radial_wave",      "advect2d_sine",
          "advect2d_sine2", "advect2d_gauss",   "acoustics2d_sine",
          "acoustics2d_sine_subsonic", "elastic_plane_wave"};
}

namespace {

double take(std::map<std::string, double>& p, const char* key, double dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  const double v = it->second;
  p.erase(it);
  return v;
}

}  // namespace

CatalogResult catalog(const std::string& name, const std::map<std::string, double>& params) {
  std::map<std::string, double> p = params;
  CatalogResult r;
  if (name == "advection1d") {
    r.system = AugmentedSystem::trivial(make_advection1d(take(p, "c", 1.0)));
    r.default_solution = "advect1d_sine";
  } else if (name == "advection2d") {
    r.system = AugmentedSystem::trivial(make_advection2d(take(p, "bx", 1.0), take(p, "by", 1.0)));
    r.default_solution = "advect2d_sine";
  } else if (name == "acoustics1d") {
    r.system = AugmentedSystem::trivial(
        make_acoustics1d(take(p, "u0", 0.5), take(p, "k0", 1.0), take(p, "rho0", 1.0)));
    r.default_solution = "acoustics1d_sine";
  } else if (name == "acoustics2d") {
    r.system = AugmentedSystem::trivial(make_acoustics2d(
        take(p, "u0", 0.0), take(p, "v0", 0.0), take(p, "k0", 1.0), take(p, "rho0", 1.0)));
    r.default_solution = "acoustics2d_sine";
  } else if (name == "acoustics2d_paired") {
    r.system = make_acoustics2d_paired(take(p, "u0", 0.5), take(p, "v0", 0.0), take(p, "k0", 1.0),
                                       take(p, "rho0", 1.0));
    r.default_solution = "acoustics2d_sine_subsonic";
  } else if (name == "maxwell_tm") {
    r.system = AugmentedSystem::trivial(make_maxwell_tm(take(p, "mu", 1.0), take(p, "eps", 1.0)));
  } else if (name == "elastodynamics") {
    r.system = AugmentedSystem::trivial(
        make_elastodynamics(take(p, "lambda", 2.0), take(p, "mu", 1.0), take(p, "rho", 1.0)));
    r.default_solution = "elastic_plane_wave";
  } else if (name == "linearized_euler") {
    r.system =
        AugmentedSystem::trivial(make_linearized_euler(take(p, "mx", 0.5), take(p, "my", 0.0)));
  } else if (name == "radial_advection") {
    r.system = AugmentedSystem::trivial(make_radial_advection());
    r.default_solution = "radial_wave";
  } else {
    throw std::invalid_argument("catalog: unknown system '" + name + "'");
  }
  if (!p.empty())
    throw std::invalid_argument("catalog: unknown parameter '" + p.begin()->first + "' for " +
                                name);
  return r;
}

std::vector<std::string> catalog_names() {
  return {"advection1d",        "advection2d", "acoustics1d",     "acoustics2d",
          "acoustics2d_paired", "maxwell_tm",  "elastodynamics",  "linearized_euler",
          "radial_advection"};
}

}  // namespace ecdg
