#include "ecdg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ecdg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Scenario> build_scenarios() {
  std::vector<Scenario> v;
  auto add = [&v](Scenario s) { v.push_back(std::move(s)); };

  Scenario s;
  s.id = "4.1";
  s.description = "1D advection of a periodic sine wave";
  s.system = "advection1d";
  s.solution = "advect1d_sine";
  s.t_final = 0.5;
  add(s);

  s = Scenario{};
  s.id = "4.2";
  s.description = "1D advection with an inflow boundary fed by the exact sine";
  s.system = "advection1d";
  s.solution = "advect1d_sine";
  s.periodic = false;
  s.t_final = 0.5;
  add(s);

  s = Scenario{};
  s.id = "4.3";
  s.description = "1D acoustics with subsonic background velocity 0.5";
  s.system = "acoustics1d";
  s.params = {{"u0", 0.5}};
  s.solution = "acoustics1d_sine";
  s.t_final = 0.5;
  add(s);

  s = Scenario{};
  s.id = "4.4";
  s.description = "long-time 1D advection of a three-wavelength sine";
  s.system = "advection1d";
  s.solution = "advect1d_sine3";
  s.t_final = 10.0;
  add(s);

  s = Scenario{};
  s.id = "4.5";
  s.description = "long-time 1D advection of a Gaussian pulse";
  s.system = "advection1d";
  s.solution = "advect1d_gauss";
  s.t_final = 40.0;
  add(s);

  s = Scenario{};
  s.id = "4.6";
  s.description = "outgoing spherical wave, sine forcing at the inner radius";
  s.system = "radial_advection";
  s.solution = "radial_wave";
  s.periodic = false;
  s.t_final = 400.0;
  s.ax = 5.0;
  s.bx = 450.0;
  add(s);

  s = Scenario{};
  s.id = "4.7";
  s.description = "2D advection of a diagonal plane wave";
  s.dim = 2;
  s.system = "advection2d";
  s.solution = "advect2d_sine";
  s.t_final = 0.1;
  add(s);

  s = Scenario{};
  s.id = "4.8";
  s.description = "2D acoustics with subsonic background velocity (0.5, 0)";
  s.dim = 2;
  s.system = "acoustics2d";
  s.params = {{"u0", 0.5}};
  s.paired_system = "acoustics2d_paired";
  s.paired_params = {{"u0", 0.5}, {"v0", 0.0}};
  s.solution = "acoustics2d_sine_subsonic";
  s.t_final = 0.1;
  add(s);

  s = Scenario{};
  s.id = "4.9";
  s.description = "2D acoustics at rest";
  s.dim = 2;
  s.system = "acoustics2d";
  s.solution = "acoustics2d_sine";
  s.t_final = 0.1;
  add(s);

  s = Scenario{};
  s.id = "4.10";
  s.description = "2D elastodynamics plane waves (P and S)";
  s.dim = 2;
  s.system = "elastodynamics";
  s.solution = "elastic_plane_wave";
  s.t_final = 0.1;
  add(s);

  s = Scenario{};
  s.id = "4.11";
  s.description = "long-time 2D advection of a diagonal plane wave";
  s.dim = 2;
  s.system = "advection2d";
  s.solution = "advect2d_sine2";
  s.t_final = 40.0;
  add(s);

  s = Scenario{};
  s.id = "4.12";
  s.description = "long-time 2D advection of a Gaussian pulse";
  s.dim = 2;
  s.system = "advection2d";
  s.solution = "advect2d_gauss";
  s.t_final = 10.0;
  add(s);

  return v;
}

const std::vector<std::string>& base_component_names(const std::string& system) {
  static const std::map<std::string, std::vector<std::string>> names = {
      {"advection1d", {"u"}},
      {"advection2d", {"u"}},
      {"acoustics1d", {"p", "u"}},
      {"acoustics2d", {"p", "u", "v"}},
      {"acoustics2d_paired", {"p", "u", "v"}},
      {"maxwell_tm", {"Hx", "Hy", "Ez"}},
      {"elastodynamics", {"sxx", "syy", "sxy", "v", "w"}},
      {"linearized_euler", {"q", "u", "v", "p"}},
      {"radial_advection", {"u"}},
  };
  const auto it = names.find(system);
  if (it == names.end()) throw std::invalid_argument("no component names for system " + system);
  return it->second;
}


/// The conserving spectrum test: paired at a handful of probe normals.
bool paired_everywhere(const SymmetricSystem& sys) {
  if (sys.dim == 1) return eig_decompose(sys.B1).paired();
  const double probes[][2] = {{1, 0}, {0, 1}, {0.6, 0.8}, {-0.6, 0.8}, {0.8, -0.6}};
  for (const auto& n : probes)
    if (!eig_decompose(sys.bn(n[0], n[1])).paired()) return false;
  return true;
}

double sample_component(const DGState& u, const ReferenceBasis& basis, int cell, int comp,
                        double xi, double eta) {
  std::vector<double> phi(basis.n_modes);
  basis.eval(xi, eta, phi.data());
  double acc = 0.0;
  const double* c = u.cell_comp(cell, comp);
  for (int i = 0; i < basis.n_modes; ++i) acc += c[i] * phi[i];
  return acc;
}

int locate_cell_1d(const Mesh1D& mesh, double x, double& xi) {
  const double a = mesh.a(), b = mesh.b();
  const double xc = std::min(std::max(x, a), b);
  int j = static_cast<int>(std::upper_bound(mesh.nodes.begin(), mesh.nodes.end(), xc) -
                           mesh.nodes.begin()) -
          1;
  j = std::min(std::max(j, 0), mesh.n_cells() - 1);
  xi = (xc - mesh.nodes[j]) / mesh.length(j);
  return j;
}

int locate_cell_2d(const Mesh2D& mesh, double x, double y, double& xi, double& eta) {
  const double tol = 1e-10;
  for (int j = 0; j < mesh.n_cells(); ++j) {
    const Cell2D& c = mesh.cells[j];
    const double dx = x - c.origin[0], dy = y - c.origin[1];
    const double u = c.jac_inv[0][0] * dx + c.jac_inv[0][1] * dy;
    const double v = c.jac_inv[1][0] * dx + c.jac_inv[1][1] * dy;
    const bool inside = mesh.kind == Mesh2D::CellKind::quad
                            ? (u >= -tol && u <= 1 + tol && v >= -tol && v <= 1 + tol)
                            : (u >= -tol && v >= -tol && u + v <= 1 + tol);
    if (inside) {
      xi = u;
      eta = v;
      return j;
    }
  }
  throw std::invalid_argument("eval_at: point lies in no cell");
}

std::string format_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string format_order(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct MeshPair {
  int dim = 1;
  Mesh1D m1;
  Mesh2D m2;
};

MeshPair build_mesh(const Scenario& sc, int n, bool triangular, double perturb,
                    std::uint64_t seed) {
  MeshPair mp;
  mp.dim = sc.dim;
  if (sc.dim == 1) {
    if (triangular) throw std::invalid_argument("triangular meshes need a 2D scenario");
    mp.m1 = scenario_mesh_1d(sc, n, perturb, seed);
  } else {
    mp.m2 = scenario_mesh_2d(sc, n, triangular, perturb, seed);
  }
  return mp;
}

SemiDiscreteOperator assemble_on(const MethodSetup& ms, const MeshPair& mp, int degree) {
  return mp.dim == 1 ? assemble(ms.system, mp.m1, degree, ms.flux, ms.bcs)
                     : assemble(ms.system, mp.m2, degree, ms.flux, ms.bcs);
}

DGState initial_state(const MethodSetup& ms, const MeshPair& mp, int degree) {
  return mp.dim == 1 ? project_initial(ms.exact, mp.m1, degree, 0.0)
                     : project_initial(ms.exact, mp.m2, degree, 0.0);
}

ErrorNorms measure(const DGState& u, const MeshPair& mp, int degree, const ExactSolution& exact,
                   double t) {
  return mp.dim == 1 ? l2_error(u, mp.m1, degree, exact, t) : l2_error(u, mp.m2, degree, exact, t);
}

/// Precomputed sample locations along the line cut used by the wave metrics.
struct CutSampler {
  std::vector<double> x;
  std::vector<int> cell;
  std::vector<double> xi, eta;
  double y = 0.0;

  void build(const MeshPair& mp, const Scenario& sc, int samples) {
    x.resize(samples);
    cell.resize(samples);
    xi.resize(samples);
    eta.assign(samples, 0.0);
    y = 0.5 * (sc.ay + sc.by);
    for (int i = 0; i < samples; ++i) {
      x[i] = sc.ax + (i + 0.5) * (sc.bx - sc.ax) / samples;
      if (mp.dim == 1)
        cell[i] = locate_cell_1d(mp.m1, x[i], xi[i]);
      else
        cell[i] = locate_cell_2d(mp.m2, x[i], y, xi[i], eta[i]);
    }
  }

  void sample(const DGState& u, const ReferenceBasis& basis, std::vector<double>& out) const {
    out.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i)
      out[i] = sample_component(u, basis, cell[i], 0, xi[i], eta[i]);
  }
};

}  // namespace

const std::vector<Scenario>& scenario_list() {
  static const std::vector<Scenario> v = build_scenarios();
  return v;
}

std::vector<std::string> component_labels(const AugmentedSystem& aug, const std::string& system) {
  const std::vector<std::string>& base = base_component_names(system);
  std::vector<std::string> out;
  const int n_aux = aug.sys.m - aug.base_m;
  int aux = 0;
  for (int c = 0; c < aug.sys.m; ++c) {
    if (aug.map_to_base[c] >= 0)
      out.push_back(base[aug.map_to_base[c]]);
    else
      out.push_back(n_aux == 1 ? "phi" : "phi" + std::to_string(aux++));
  }
  return out;
}

const Scenario& scenario(const std::string& id) {
  for (const Scenario& s : scenario_list())
    if (s.id == id) return s;
  throw std::invalid_argument("unknown scenario '" + id + "'");
}

FluxChoice flux_choice_from_string(const std::string& s) {
  if (s == "ec") return FluxChoice::energy_conserving;
  if (s == "double") return FluxChoice::doubling;
  if (s == "upwind") return FluxChoice::upwind;
  if (s == "lf") return FluxChoice::lax_friedrichs;
  if (s == "central") return FluxChoice::central;
  if (s == "alt") return FluxChoice::alternating;
  throw std::invalid_argument("unknown flux choice '" + s +
                              "' (expected ec|double|upwind|lf|central|alt)");
}

std::string to_string(FluxChoice c) {
  switch (c) {
    case FluxChoice::energy_conserving: return "ec";
    case FluxChoice::doubling: return "double";
    case FluxChoice::upwind: return "upwind";
    case FluxChoice::lax_friedrichs: return "lf";
    case FluxChoice::central: return "central";
    case FluxChoice::alternating: return "alt";
  }
  return "?";
}

Mesh1D scenario_mesh_1d(const Scenario& sc, int n, double perturb, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("mesh size must be positive");
  Mesh1D m = make_uniform_1d(n, sc.ax, sc.bx, sc.periodic);
  if (perturb > 0)
    m = perturb_1d(m, perturb, seed + static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL);
  return m;
}

Mesh2D scenario_mesh_2d(const Scenario& sc, int n, bool triangular, double perturb,
                        std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("mesh size must be positive");
  const std::uint64_t mixed = seed + static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL;
  if (triangular) return generate_triangular_2d(n, perturb, mixed, sc.periodic);
  return make_cartesian_2d(n, n, sc.periodic, perturb, mixed, sc.ax, sc.bx, sc.ay, sc.by);
}

BoundaryCondition boundary_from_exact(const ExactSolution& sol) {
  BoundaryCondition bc;
  bc.kind = BcKind::characteristic;
  if (sol.eval_dt) {
    auto ladder = sol.eval_dt;
    bc.data = [ladder](double x, double y, double t, int deriv, double* out) {
      ladder(x, y, t, deriv, out);
    };
  } else {
    // s-th central difference of eval; second-order accurate in the step,
    // which caps the usable temporal order of high-order integrators.
    const ExactSolution s = sol;
    bc.data = [s](double x, double y, double t, int deriv, double* out) {
      const double dlt = 1e-3;
      std::vector<double> acc(s.m, 0.0), tmp(s.m);
      double binom = 1.0;
      for (int i = 0; i <= deriv; ++i) {
        s.eval(x, y, t + (0.5 * deriv - i) * dlt, tmp.data());
        const double w = (i % 2 ? -binom : binom);
        for (int c = 0; c < s.m; ++c) acc[c] += w * tmp[c];
        binom = binom * (deriv - i) / (i + 1);
      }
      const double scale = std::pow(dlt, deriv);
      for (int c = 0; c < s.m; ++c) out[c] = acc[c] / scale;
    };
  }
  return bc;
}

MethodSetup configure(const Scenario& sc, FluxChoice choice) {
  MethodSetup ms;
  const CatalogResult base = catalog(sc.system, sc.params);
  switch (choice) {
    case FluxChoice::upwind:
      ms.system = base.system;
      ms.flux = FluxKind::upwind;
      break;
    case FluxChoice::central:
      ms.system = base.system;
      ms.flux = FluxKind::central;
      break;
    case FluxChoice::lax_friedrichs:
      ms.system = base.system;
      ms.flux = FluxKind::lax_friedrichs;
      break;
    case FluxChoice::alternating:
      ms.system = base.system;
      ms.flux = FluxKind::alternating;
      break;
    case FluxChoice::doubling:
      ms.system = augment(base.system.sys, AugmentMode::full_double);
      ms.flux = FluxKind::doubling;
      break;
    case FluxChoice::energy_conserving:
      if (!sc.paired_system.empty())
        ms.system = catalog(sc.paired_system, sc.paired_params).system;
      else if (paired_everywhere(base.system.sys))
        ms.system = base.system;
      else if (sc.dim == 1)
        ms.system = augment(base.system.sys, AugmentMode::partial_1d);
      else
        ms.system = augment(base.system.sys, AugmentMode::full_double);
      ms.flux = FluxKind::energy_conserving;
      break;
  }
  const ExactSolution ex = exact_solution(sc.solution);
  ms.exact = ms.system.sys.m == ex.m ? ex : extend_to(ex, ms.system);
  if (!sc.periodic) {
    const BoundaryCondition bc = boundary_from_exact(ms.exact);
    ms.bcs[tag_xmin] = bc;
    ms.bcs[tag_xmax] = bc;
    if (sc.dim == 2) {
      ms.bcs[tag_ymin] = bc;
      ms.bcs[tag_ymax] = bc;
    }
  }
  return ms;
}

ErrorNorms l2_error(const DGState& u, const Mesh1D& mesh, int degree, const ExactSolution& exact,
                    double t) {
  if (exact.m != u.m)
    throw std::invalid_argument("l2_error: solution and state component counts differ");
  const ReferenceBasis basis = make_basis(ElemKind::interval, degree, 2 * degree + 6);
  std::vector<double> uh(u.m), ue(u.m), acc(u.m, 0.0);
  for (int j = 0; j < mesh.n_cells(); ++j)
    for (int q = 0; q < basis.vol.size(); ++q) {
      eval_state(u, basis, j, basis.vol.x[q], 0.0, uh.data());
      exact.eval(mesh.nodes[j] + basis.vol.x[q] * mesh.length(j), 0.0, t, ue.data());
      for (int c = 0; c < u.m; ++c) {
        const double d = uh[c] - ue[c];
        acc[c] += basis.vol.w[q] * mesh.length(j) * d * d;
      }
    }
  ErrorNorms en;
  en.per_component.resize(u.m);
  double total = 0.0;
  for (int c = 0; c < u.m; ++c) {
    total += acc[c];
    en.per_component[c] = std::sqrt(acc[c]);
  }
  en.combined = std::sqrt(total);
  return en;
}

ErrorNorms l2_error(const DGState& u, const Mesh2D& mesh, int degree, const ExactSolution& exact,
                    double t) {
  if (exact.m != u.m)
    throw std::invalid_argument("l2_error: solution and state component counts differ");
  const ElemKind ek = mesh.kind == Mesh2D::CellKind::quad ? ElemKind::quad : ElemKind::tri;
  const ReferenceBasis basis = make_basis(ek, degree, 2 * degree + 6);
  std::vector<double> uh(u.m), ue(u.m), acc(u.m, 0.0);
  for (int j = 0; j < mesh.n_cells(); ++j)
    for (int q = 0; q < basis.vol.size(); ++q) {
      eval_state(u, basis, j, basis.vol.x[q], basis.vol.y[q], uh.data());
      const auto p = mesh.cells[j].to_physical(basis.vol.x[q], basis.vol.y[q]);
      exact.eval(p[0], p[1], t, ue.data());
      for (int c = 0; c < u.m; ++c) {
        const double d = uh[c] - ue[c];
        acc[c] += basis.vol.w[q] * mesh.cells[j].detjac * d * d;
      }
    }
  ErrorNorms en;
  en.per_component.resize(u.m);
  double total = 0.0;
  for (int c = 0; c < u.m; ++c) {
    total += acc[c];
    en.per_component[c] = std::sqrt(acc[c]);
  }
  en.combined = std::sqrt(total);
  return en;
}

std::vector<double> orders_from_errors(const std::vector<double>& err,
                                       const std::vector<double>& h) {
  if (err.size() != h.size()) throw std::invalid_argument("orders_from_errors: size mismatch");
  std::vector<double> order(err.size(), kNaN);
  for (size_t i = 1; i < err.size(); ++i) {
    if (err[i - 1] > 0 && err[i] > 0 && std::isfinite(err[i - 1]) && std::isfinite(err[i]) &&
        h[i] != h[i - 1])
      order[i] = std::log(err[i - 1] / err[i]) / std::log(h[i - 1] / h[i]);
  }
  return order;
}

std::string ConvergenceTable::csv() const {
  std::string out = "N";
  for (const std::string& q : quantity) out += ",error_" + q + ",order_" + q;
  out += "\n";
  for (const ConvergenceRow& r : rows) {
    out += std::to_string(r.n);
    for (size_t c = 0; c < quantity.size(); ++c)
      out += "," + format_cell(r.error[c]) + "," + format_order(r.order[c]);
    out += "\n";
  }
  return out;
}

double ConvergenceTable::final_error(const std::string& q) const {
  const auto it = std::find(quantity.begin(), quantity.end(), q);
  if (it == quantity.end() || rows.empty())
    throw std::invalid_argument("no quantity '" + q + "' in table");
  return rows.back().error[it - quantity.begin()];
}

double ConvergenceTable::final_order(const std::string& q) const {
  const auto it = std::find(quantity.begin(), quantity.end(), q);
  if (it == quantity.end() || rows.empty())
    throw std::invalid_argument("no quantity '" + q + "' in table");
  return rows.back().order[it - quantity.begin()];
}

int worker_count() {
  if (const char* s = std::getenv("ECDG_THREADS")) {
    const int v = std::atoi(s);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

ConvergenceTable run_convergence(const ConvergenceRequest& req) {
  const Scenario& sc = scenario(req.scenario_id);
  if (req.sizes.empty()) throw std::invalid_argument("run_convergence: no mesh sizes");
  for (size_t i = 1; i < req.sizes.size(); ++i)
    if (req.sizes[i] <= req.sizes[i - 1])
      throw std::invalid_argument("run_convergence: sizes must be strictly ascending");
  if (req.degree < 0) throw std::invalid_argument("run_convergence: negative degree");

  const FluxChoice choice = flux_choice_from_string(req.flux);
  const MethodSetup ms = configure(sc, choice);
  const double T = req.t_final >= 0 ? req.t_final : sc.t_final;
  const int k = req.degree;

  const IntegratorSpec spec =
      req.integrator.empty() ? IntegratorSpec{IntegratorKind::rk_lw, 6}
                             : parse_integrator(req.integrator);
  double cfl = req.cfl;
  if (cfl <= 0) {
    if (req.integrator.empty()) {
      // reference rule: step so small that dt^6 trails 0.01 h^{k+1} on the
      // finest mesh, within the stability envelope. The spatial spectral
      // radius grows like (2k+1) lambda / rho, and the degree-6 truncated
      // exponential is stable only out to ~0.75 on the imaginary axis, so
      // the stability cap carries the degree factor.
      const MeshPair fin = build_mesh(sc, req.sizes.back(), req.triangular, req.perturb, req.seed);
      const SemiDiscreteOperator op = assemble_on(ms, fin, k);
      const double h_fin = (sc.bx - sc.ax) / req.sizes.back();
      const double dt_acc = std::pow(0.01 * std::pow(h_fin, k + 1), 1.0 / 6.0);
      const double dt_stab = 0.3 * op.mesh_rho() / (op.max_char_speed() * (2 * k + 1));
      cfl = std::min(dt_acc, dt_stab) * op.max_char_speed() / op.mesh_rho();
    } else {
      cfl = 0.1;
    }
  }

  std::vector<ErrorNorms> results(req.sizes.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i; (i = next.fetch_add(1)) < req.sizes.size();) {
      const MeshPair mp = build_mesh(sc, req.sizes[i], req.triangular, req.perturb, req.seed);
      const SemiDiscreteOperator op = assemble_on(ms, mp, k);
      TimeHistory h;
      h.curr = initial_state(ms, mp, k);
      h.time = 0.0;
      if (T > 0) {
        const double dt0 = cfl_dt(op, cfl);
        const long steps = std::max(1L, static_cast<long>(std::ceil(T / dt0 - 1e-12)));
        const double dt = T / static_cast<double>(steps);
        for (long n = 0; n < steps; ++n) advance(op, spec, dt, h);
      }
      results[i] = measure(h.curr, mp, k, ms.exact, T);
    }
  };
  const int workers = std::min<int>(worker_count(), static_cast<int>(req.sizes.size()));
  std::vector<std::future<void>> pool;
  for (int w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, work));
  work();
  for (auto& f : pool) f.get();

  ConvergenceTable table;
  table.scenario_id = sc.id;
  table.flux = to_string(choice);
  table.integrator = req.integrator.empty() ? "reference(rk6)" : req.integrator;
  table.degree = k;
  table.seed = req.seed;
  table.quantity = component_labels(ms.system, sc.system);
  table.quantity.push_back("combined");

  const size_t nq = table.quantity.size();
  std::vector<double> hs(req.sizes.size());
  for (size_t i = 0; i < req.sizes.size(); ++i) hs[i] = (sc.bx - sc.ax) / req.sizes[i];
  std::vector<std::vector<double>> errcol(nq, std::vector<double>(req.sizes.size()));
  for (size_t i = 0; i < req.sizes.size(); ++i) {
    for (size_t c = 0; c + 1 < nq; ++c) errcol[c][i] = results[i].per_component[c];
    errcol[nq - 1][i] = results[i].combined;
  }
  std::vector<std::vector<double>> ordcol(nq);
  for (size_t c = 0; c < nq; ++c) ordcol[c] = orders_from_errors(errcol[c], hs);

  for (size_t i = 0; i < req.sizes.size(); ++i) {
    ConvergenceRow row;
    row.n = req.sizes[i];
    row.h = hs[i];
    for (size_t c = 0; c < nq; ++c) {
      row.error.push_back(errcol[c][i]);
      row.order.push_back(ordcol[c][i]);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void fill_wave_metrics(WaveMetrics& m, bool periodic) {
  const int s = static_cast<int>(m.cut_x.size());
  if (s < 4 || m.cut_numeric.size() != m.cut_x.size() || m.cut_exact.size() != m.cut_x.size())
    throw std::invalid_argument("fill_wave_metrics: need matching cuts with at least 4 samples");
  double max_n = 0.0, max_e = 0.0;
  for (int i = 0; i < s; ++i) {
    max_n = std::max(max_n, std::abs(m.cut_numeric[i]));
    max_e = std::max(max_e, std::abs(m.cut_exact[i]));
  }
  m.amplitude_ratio = max_e > 0 ? max_n / max_e : kNaN;

  // cross-correlation against the shifted exact cut; the refined peak lag
  // gives the phase shift (positive = numeric trails)
  const int span = periodic ? s : s / 4;
  std::vector<double> corr(periodic ? s : 2 * span + 1);
  auto corr_at = [&](int lag) {
    double acc = 0.0;
    for (int i = 0; i < s; ++i) {
      int j = i + lag;
      if (periodic)
        j = (j % s + s) % s;
      else if (j < 0 || j >= s)
        continue;
      acc += m.cut_numeric[i] * m.cut_exact[j];
    }
    return acc;
  };
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int l = 0; l < static_cast<int>(corr.size()); ++l) {
    const int lag = periodic ? l : l - span;
    corr[l] = corr_at(lag);
    if (corr[l] > best_val) {
      best_val = corr[l];
      best = l;
    }
  }
  const int lag_best = periodic ? best : best - span;
  const double cm = corr_at(lag_best - 1), cp = corr_at(lag_best + 1);
  const double denom = cm - 2 * best_val + cp;
  double frac = 0.0;
  if (std::abs(cm - cp) > 1e-12 * std::abs(denom) && denom < 0) frac = 0.5 * (cm - cp) / denom;
  double lag = lag_best + frac;
  if (periodic) {
    if (lag > s / 2.0) lag -= s;
    if (lag < -s / 2.0) lag += s;
    // a periodic signal's correlation peak is ambiguous modulo the signal's
    // own repetition length; wrap the lag to the dominant period of the
    // exact cut (first refined local maximum of its autocorrelation)
    auto auto_at = [&](int p) {
      double acc = 0.0;
      for (int i = 0; i < s; ++i) acc += m.cut_exact[i] * m.cut_exact[(i + p) % s];
      return acc;
    };
    const double a0 = auto_at(0);
    double period = static_cast<double>(s);
    double am = a0, ac = auto_at(1);
    for (int p = 2; p <= s - 2; ++p) {
      const double ap = auto_at(p);
      if (am < ac && ac >= ap && ac > 0.5 * a0) {
        const double den = am - 2 * ac + ap;
        period = (p - 1) + (den < 0 ? 0.5 * (am - ap) / den : 0.0);
        break;
      }
      am = ac;
      ac = ap;
    }
    lag -= period * std::round(lag / period);
  }
  const double dx = m.cut_x[1] - m.cut_x[0];
  m.phase_shift = -lag * dx;
}

double eval_at(const DGState& u, const Mesh1D& mesh, int degree, int comp, double x) {
  const ReferenceBasis basis = make_basis(ElemKind::interval, degree);
  double xi = 0.0;
  const int j = locate_cell_1d(mesh, x, xi);
  return sample_component(u, basis, j, comp, xi, 0.0);
}

double eval_at(const DGState& u, const Mesh2D& mesh, int degree, int comp, double x, double y) {
  const ElemKind ek = mesh.kind == Mesh2D::CellKind::quad ? ElemKind::quad : ElemKind::tri;
  const ReferenceBasis basis = make_basis(ek, degree);
  double xi = 0.0, eta = 0.0;
  const int j = locate_cell_2d(mesh, x, y, xi, eta);
  return sample_component(u, basis, j, comp, xi, eta);
}

std::string WaveMetrics::csv_energy() const {
  std::string out = "t,E_h\n";
  for (size_t i = 0; i < times.size(); ++i)
    out += format_full(times[i]) + "," + format_full(energy[i]) + "\n";
  return out;
}

std::string WaveMetrics::csv_cut() const {
  std::string out = "x,u_h,u_exact\n";
  for (size_t i = 0; i < cut_x.size(); ++i)
    out += format_full(cut_x[i]) + "," + format_full(cut_numeric[i]) + "," +
           format_full(cut_exact[i]) + "\n";
  return out;
}

WaveMetrics run_longtime(const LongTimeRequest& req) {
  const Scenario& sc = scenario(req.scenario_id);
  const MethodSetup ms = configure(sc, flux_choice_from_string(req.flux));
  const IntegratorSpec spec = parse_integrator(req.integrator);
  const double T = req.t_final >= 0 ? req.t_final : sc.t_final;
  if (req.cfl <= 0) throw std::invalid_argument("run_longtime: cfl must be positive");
  if (req.cut_samples < 4) throw std::invalid_argument("run_longtime: need at least 4 samples");

  const MeshPair mp = build_mesh(sc, req.n, req.triangular, req.perturb, req.seed);
  const SemiDiscreteOperator op = assemble_on(ms, mp, req.degree);
  CutSampler cut;
  cut.build(mp, sc, req.cut_samples);

  const double dt0 = cfl_dt(op, req.cfl);
  const long steps = std::max(1L, static_cast<long>(std::ceil(T / dt0 - 1e-12)));
  const double dt = T / static_cast<double>(steps);

  TimeHistory h;
  h.curr = initial_state(ms, mp, req.degree);
  h.time = 0.0;

  WaveMetrics wm;
  std::vector<double> snap;
  const double e0 = op.energy(h.curr);
  auto record = [&](const TimeHistory& th) {
    wm.times.push_back(th.time);
    wm.energy.push_back(op.energy(th.curr));
    if (th.prev.coef.size() == th.curr.coef.size() && !th.curr.coef.empty())
      wm.bilinear.push_back(op.bilinear(th.curr, th.prev));
    cut.sample(th.curr, op.basis(), snap);
    double peak = 0.0;
    for (double v : snap) peak = std::max(peak, std::abs(v));
    wm.peak.push_back(peak);
    return peak;
  };
  record(h);
  for (long n = 0; n < steps; ++n) {
    advance(op, spec, dt, h);
    if (record(h) > req.stop_threshold) {
      wm.aborted = true;
      break;
    }
  }

  wm.cut_x = cut.x;
  cut.sample(h.curr, op.basis(), wm.cut_numeric);
  wm.cut_exact.resize(cut.x.size());
  std::vector<double> ue(ms.exact.m);
  for (size_t i = 0; i < cut.x.size(); ++i) {
    ms.exact.eval(cut.x[i], cut.y, h.time, ue.data());
    wm.cut_exact[i] = ue[0];
  }

  for (double e : wm.energy)
    wm.energy_drift = std::max(wm.energy_drift, std::abs(e - e0) / (e0 > 0 ? e0 : 1.0));
  if (!wm.bilinear.empty()) {
    const double q1 = wm.bilinear.front();
    for (double q : wm.bilinear)
      wm.bilinear_drift = std::max(wm.bilinear_drift, std::abs(q - q1) / (e0 > 0 ? e0 : 1.0));
  }
  fill_wave_metrics(wm, sc.periodic);
  return wm;
}

}  // namespace ecdg
