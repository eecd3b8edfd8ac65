#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecdg/harness.hpp"

using namespace ecdg;

namespace {

ExactSolution scalar_solution(std::function<double(double, double, double)> f) {
  ExactSolution e;
  e.name = "custom";
  e.m = 1;
  e.dim = 1;
  e.eval = [f](double x, double y, double t, double* out) { out[0] = f(x, y, t); };
  return e;
}

WaveMetrics cut_only(int s, std::function<double(double)> num, std::function<double(double)> ex) {
  WaveMetrics m;
  for (int i = 0; i < s; ++i) {
    const double x = (i + 0.5) / s;
    m.cut_x.push_back(x);
    m.cut_numeric.push_back(num(x));
    m.cut_exact.push_back(ex(x));
  }
  return m;
}

}  // namespace

TEST_CASE("scenario catalog and flux choices") {
  CHECK(scenario_list().size() == 12);
  CHECK(scenario("4.1").dim == 1);
  CHECK(scenario("4.1").periodic);
  CHECK_FALSE(scenario("4.2").periodic);
  CHECK(scenario("4.6").ax == doctest::Approx(5.0));
  CHECK(scenario("4.6").bx == doctest::Approx(450.0));
  CHECK(scenario("4.7").dim == 2);
  CHECK(scenario("4.11").t_final == doctest::Approx(40.0));
  CHECK_THROWS_AS((void)scenario("9.9"), std::invalid_argument);

  for (const Scenario& s : scenario_list()) {
    CHECK_FALSE(s.description.empty());
    CHECK(s.t_final > 0);
  }

  CHECK(flux_choice_from_string("ec") == FluxChoice::energy_conserving);
  CHECK(flux_choice_from_string("double") == FluxChoice::doubling);
  CHECK(flux_choice_from_string("alt") == FluxChoice::alternating);
  CHECK(to_string(flux_choice_from_string("lf")) == "lf");
  CHECK(to_string(flux_choice_from_string("upwind")) == "upwind");
  CHECK(to_string(flux_choice_from_string("central")) == "central");
  CHECK_THROWS_AS((void)flux_choice_from_string("fancy"), std::invalid_argument);
}

TEST_CASE("configure picks the system, flux, and boundary closure per method") {
  // scalar advection needs the one-sided augmentation before conserving flux
  MethodSetup a = configure(scenario("4.1"), FluxChoice::energy_conserving);
  CHECK(a.system.sys.m == 2);
  CHECK(a.system.base_m == 1);
  CHECK(a.flux == FluxKind::energy_conserving);
  CHECK(a.exact.m == 2);
  CHECK(a.bcs.empty());

  // the extended solution is zero in the auxiliary component
  std::vector<double> v(2);
  a.exact.eval(0.3, 0.0, 0.2, v.data());
  CHECK(v[0] == doctest::Approx(std::sin(2 * M_PI * (0.3 - 0.2))).epsilon(1e-14));
  CHECK(v[1] == 0.0);

  MethodSetup u = configure(scenario("4.1"), FluxChoice::upwind);
  CHECK(u.system.sys.m == 1);
  CHECK(u.flux == FluxKind::upwind);

  // subsonic 1D acoustics is already pair-complete: no augmentation
  MethodSetup ac = configure(scenario("4.3"), FluxChoice::energy_conserving);
  CHECK(ac.system.sys.m == 2);
  CHECK(ac.system.base_m == 2);
  MethodSetup alt = configure(scenario("4.3"), FluxChoice::alternating);
  CHECK(alt.flux == FluxKind::alternating);
  CHECK(alt.system.sys.m == 2);

  // inflow problems get characteristic data on both ends
  MethodSetup inflow = configure(scenario("4.2"), FluxChoice::energy_conserving);
  CHECK(inflow.bcs.count(tag_xmin) == 1);
  CHECK(inflow.bcs.count(tag_xmax) == 1);
  CHECK(inflow.bcs.at(tag_xmin).kind == BcKind::characteristic);

  // 2D advection doubles; subsonic 2D acoustics takes its paired catalog form
  MethodSetup d7 = configure(scenario("4.7"), FluxChoice::energy_conserving);
  CHECK(d7.system.sys.m == 2);
  CHECK(d7.system.full_double);
  MethodSetup d8 = configure(scenario("4.8"), FluxChoice::energy_conserving);
  CHECK(d8.system.sys.m == 4);
  CHECK(d8.exact.m == 4);

  // zero-background 2D acoustics and elastodynamics are pair-complete as is
  MethodSetup d9 = configure(scenario("4.9"), FluxChoice::energy_conserving);
  CHECK(d9.system.sys.m == 3);
  CHECK(d9.system.base_m == 3);
  MethodSetup d10 = configure(scenario("4.10"), FluxChoice::energy_conserving);
  CHECK(d10.system.sys.m == 5);

  MethodSetup dbl = configure(scenario("4.9"), FluxChoice::doubling);
  CHECK(dbl.system.sys.m == 6);
  CHECK(dbl.flux == FluxKind::doubling);
}

TEST_CASE("boundary data from an exact solution") {
  // with a derivative ladder the data passes straight through
  ExactSolution s = exact_solution("advect1d_sine");
  BoundaryCondition bc = boundary_from_exact(s);
  double v0 = 0.0, v1 = 0.0, ref = 0.0;
  bc.data(0.0, 0.0, 0.37, 0, &v0);
  s.eval(0.0, 0.0, 0.37, &ref);
  CHECK(v0 == doctest::Approx(ref).epsilon(1e-15));
  bc.data(0.0, 0.0, 0.37, 1, &v1);
  CHECK(v1 == doctest::Approx(-2 * M_PI * std::cos(2 * M_PI * (0.0 - 0.37))).epsilon(1e-12));

  // without one the data falls back to central differences in time
  ExactSolution plain = scalar_solution(
      [](double x, double, double t) { return std::sin(3.0 * t) + 0.1 * x; });
  BoundaryCondition fd = boundary_from_exact(plain);
  fd.data(0.5, 0.0, 0.2, 0, &v0);
  CHECK(v0 == doctest::Approx(std::sin(0.6) + 0.05).epsilon(1e-14));
  fd.data(0.5, 0.0, 0.2, 1, &v1);
  CHECK(v1 == doctest::Approx(3.0 * std::cos(0.6)).epsilon(1e-5));
  double v2 = 0.0;
  fd.data(0.5, 0.0, 0.2, 2, &v2);
  CHECK(v2 == doctest::Approx(-9.0 * std::sin(0.6)).epsilon(1e-4));
}

TEST_CASE("l2_error pins against closed forms") {
  const int k = 2;
  const Mesh1D mesh = perturb_1d(make_uniform_1d(9, 0.0, 1.0, true), 0.2, 11);

  // zero state against constants: per-component |c| sqrt(L), rss combined
  ExactSolution two;
  two.m = 2;
  two.dim = 1;
  two.eval = [](double, double, double, double* out) {
    out[0] = 0.75;
    out[1] = -0.4;
  };
  DGState z = DGState::zeros(mesh.n_cells(), 2, k + 1);
  ErrorNorms en = l2_error(z, mesh, k, two, 0.0);
  CHECK(en.per_component[0] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(en.per_component[1] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(en.combined == doctest::Approx(std::sqrt(0.75 * 0.75 + 0.16)).epsilon(1e-14));

  // a projected degree-k polynomial is reproduced: error at roundoff
  ExactSolution poly = scalar_solution(
      [](double x, double, double) { return 1.0 + x * (2.0 - x * 1.5); });
  DGState p = project_initial(poly, mesh, k, 0.0);
  CHECK(l2_error(p, mesh, k, poly, 0.0).combined <= 1e-13);

  // zero state against sin(2 pi x): sqrt(1/2)
  ExactSolution sine = scalar_solution(
      [](double x, double, double) { return std::sin(2 * M_PI * x); });
  DGState z1 = DGState::zeros(mesh.n_cells(), 1, k + 1);
  CHECK(l2_error(z1, mesh, k, sine, 0.0).combined ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));

  ExactSolution wrong;
  wrong.m = 3;
  wrong.eval = [](double, double, double, double* out) { out[0] = out[1] = out[2] = 0; };
  CHECK_THROWS_AS((void)l2_error(z1, mesh, k, wrong, 0.0), std::invalid_argument);
}

TEST_CASE("l2_error on 2D meshes") {
  const int k = 1;
  ExactSolution c2;
  c2.m = 1;
  c2.dim = 2;
  c2.eval = [](double, double, double, double* out) { out[0] = 0.3; };

  const Mesh2D quad = make_cartesian_2d(5, 5, true, 0.1, 3);
  DGState z = DGState::zeros(quad.n_cells(), 1, 4);
  CHECK(l2_error(z, quad, k, c2, 0.0).combined == doctest::Approx(0.3).epsilon(1e-14));

  const Mesh2D tri = generate_triangular_2d(4, 0.1, 5, true);
  DGState zt = DGState::zeros(tri.n_cells(), 1, 3);
  CHECK(l2_error(zt, tri, k, c2, 0.0).combined == doctest::Approx(0.3).epsilon(1e-14));

  // projected bilinear on quads is exact for Q1
  ExactSolution bil;
  bil.m = 1;
  bil.dim = 2;
  bil.eval = [](double x, double y, double, double* out) { out[0] = (1 + 2 * x) * (3 - y); };
  DGState p = project_initial(bil, quad, k, 0.0);
  CHECK(l2_error(p, quad, k, bil, 0.0).combined <= 1e-12);
}

TEST_CASE("orders, tables, and csv shape") {
  // synthetic C h^p data comes back as exactly p
  const double p = 2.37;
  std::vector<double> h = {0.1, 0.05, 0.025, 0.0125};
  std::vector<double> err;
  for (double hh : h) err.push_back(4.2 * std::pow(hh, p));
  const std::vector<double> ord = orders_from_errors(err, h);
  CHECK(std::isnan(ord[0]));
  for (size_t i = 1; i < ord.size(); ++i) CHECK(ord[i] == doctest::Approx(p).epsilon(1e-12));

  CHECK_THROWS_AS((void)orders_from_errors({1.0, 0.5}, {1.0}), std::invalid_argument);

  ConvergenceTable t;
  t.scenario_id = "4.1";
  t.flux = "ec";
  t.degree = 1;
  t.quantity = {"u", "combined"};
  ConvergenceRow r0;
  r0.n = 10;
  r0.h = 0.1;
  r0.error = {0.5, 0.5};
  r0.order = {std::nan(""), std::nan("")};
  ConvergenceRow r1;
  r1.n = 20;
  r1.h = 0.05;
  r1.error = {0.125, 0.125};
  r1.order = {2.0, 2.0};
  t.rows = {r0, r1};

  const std::string csv = t.csv();
  CHECK(csv.find("N,error_u,order_u,error_combined,order_combined\n") == 0);
  CHECK(csv.find("10,5.000000e-01,,5.000000e-01,\n") != std::string::npos);
  CHECK(csv.find("20,1.250000e-01,2.00,1.250000e-01,2.00\n") != std::string::npos);
  CHECK(t.final_error("u") == doctest::Approx(0.125));
  CHECK(t.final_order("combined") == doctest::Approx(2.0));
  CHECK_THROWS_AS((void)t.final_error("nope"), std::invalid_argument);
}

TEST_CASE("wave metrics controls") {
  auto sine = [](double x) { return std::sin(2 * M_PI * x); };

  // identical cuts: unit amplitude, zero shift
  WaveMetrics id = cut_only(256, sine, sine);
  fill_wave_metrics(id, true);
  CHECK(id.amplitude_ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(id.phase_shift) <= 1e-9);

  // pure shift: recovered with sub-sample accuracy, positive = trailing
  WaveMetrics sh =
      cut_only(512, [&](double x) { return sine(x - 0.06); }, sine);
  fill_wave_metrics(sh, true);
  CHECK(sh.amplitude_ratio == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(sh.phase_shift == doctest::Approx(0.06).epsilon(2e-3));

  WaveMetrics lead =
      cut_only(512, [&](double x) { return sine(x + 0.04); }, sine);
  fill_wave_metrics(lead, true);
  CHECK(lead.phase_shift == doctest::Approx(-0.04).epsilon(2e-3));

  // amplitude scaling
  WaveMetrics half = cut_only(256, [&](double x) { return 0.5 * sine(x); }, sine);
  fill_wave_metrics(half, true);
  CHECK(half.amplitude_ratio == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(half.phase_shift) <= 1e-9);

  // shifts of a multi-wavelength signal wrap to its own period
  auto sine3 = [](double x) { return std::sin(6 * M_PI * x); };
  WaveMetrics w3 =
      cut_only(512, [&](double x) { return sine3(x - 0.02); }, sine3);
  fill_wave_metrics(w3, true);
  CHECK(w3.phase_shift == doctest::Approx(0.02).epsilon(2e-2));
  WaveMetrics w3big =
      cut_only(512, [&](double x) { return sine3(x - 0.3); }, sine3);
  fill_wave_metrics(w3big, true);
  CHECK(w3big.phase_shift == doctest::Approx(0.3 - 1.0 / 3.0).epsilon(2e-2));

  // non-periodic correlation window on a localized pulse
  auto bump = [](double x) { return std::exp(-100.0 * (x - 0.45) * (x - 0.45)); };
  WaveMetrics np = cut_only(512, bump, bump);
  fill_wave_metrics(np, false);
  CHECK(np.amplitude_ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(np.phase_shift) <= 1e-9);
  WaveMetrics npsh =
      cut_only(512, [&](double x) { return bump(x - 0.03); }, bump);
  fill_wave_metrics(npsh, false);
  CHECK(npsh.phase_shift == doctest::Approx(0.03).epsilon(5e-2));

  WaveMetrics bad = cut_only(2, sine, sine);
  CHECK_THROWS_AS(fill_wave_metrics(bad, true), std::invalid_argument);
}

TEST_CASE("eval_at locates points in both dimensions") {
  const Mesh1D mesh = perturb_1d(make_uniform_1d(7, 0.0, 1.0, true), 0.2, 3);
  ExactSolution poly = scalar_solution(
      [](double x, double, double) { return 0.2 + x * (1.0 - 0.5 * x); });
  DGState p = project_initial(poly, mesh, 2, 0.0);
  for (double x : {0.0, 0.17, 0.5, 0.83, 0.999}) {
    double ref = 0.0;
    poly.eval(x, 0.0, 0.0, &ref);
    CHECK(eval_at(p, mesh, 2, 0, x) == doctest::Approx(ref).epsilon(1e-12));
  }
  // outside points clamp to the boundary value
  CHECK(eval_at(p, mesh, 2, 0, -0.5) == doctest::Approx(0.2).epsilon(1e-12));

  ExactSolution bil;
  bil.m = 1;
  bil.dim = 2;
  bil.eval = [](double x, double y, double, double* out) { out[0] = x + 2 * y; };
  const Mesh2D quad = make_cartesian_2d(4, 4, true, 0.1, 9);
  DGState q = project_initial(bil, quad, 1, 0.0);
  CHECK(eval_at(q, quad, 1, 0, 0.3, 0.7) == doctest::Approx(1.7).epsilon(1e-12));
  const Mesh2D tri = generate_triangular_2d(3, 0.0, 1, true);
  DGState qt = project_initial(bil, tri, 1, 0.0);
  CHECK(eval_at(qt, tri, 1, 0, 0.62, 0.11) == doctest::Approx(0.84).epsilon(1e-12));
  CHECK_THROWS_AS((void)eval_at(qt, tri, 1, 0, 2.5, 0.5), std::invalid_argument);
}

TEST_CASE("run_convergence matches a hand-rolled integration") {
  // same mesh, same steps, same flux: the table must reproduce the direct run
  ConvergenceRequest req;
  req.scenario_id = "4.1";
  req.flux = "central";
  req.degree = 1;
  req.sizes = {8};
  req.perturb = 0.0;
  req.integrator = "rk3";
  req.cfl = 0.2;
  const ConvergenceTable t = run_convergence(req);

  const Scenario& sc = scenario("4.1");
  const MethodSetup ms = configure(sc, FluxChoice::central);
  const Mesh1D mesh = make_uniform_1d(8, 0.0, 1.0, true);
  const SemiDiscreteOperator op = assemble(ms.system, mesh, 1, ms.flux, ms.bcs);
  TimeHistory h;
  h.curr = project_initial(ms.exact, mesh, 1, 0.0);
  const double dt0 = cfl_dt(op, 0.2);
  const long steps = static_cast<long>(std::ceil(sc.t_final / dt0 - 1e-12));
  const double dt = sc.t_final / steps;
  const IntegratorSpec spec = parse_integrator("rk3");
  for (long n = 0; n < steps; ++n) advance(op, spec, dt, h);
  const double direct = l2_error(h.curr, mesh, 1, ms.exact, sc.t_final).combined;

  CHECK(t.rows.size() == 1);
  CHECK(t.quantity.size() == 2);  // u + combined
  CHECK(t.final_error("combined") == doctest::Approx(direct).epsilon(1e-14));
  CHECK(t.final_error("u") == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("run_convergence orders and determinism") {
  ConvergenceRequest req;
  req.scenario_id = "4.1";
  req.flux = "ec";
  req.degree = 1;
  req.sizes = {10, 20, 40};
  req.perturb = 0.1;
  req.seed = 7;
  const ConvergenceTable t = run_convergence(req);

  REQUIRE(t.quantity.size() == 3);
  CHECK(t.quantity[0] == "u");
  CHECK(t.quantity[1] == "phi");
  CHECK(t.quantity[2] == "combined");
  CHECK(t.rows.size() == 3);
  CHECK(std::isnan(t.rows[0].order[0]));
  CHECK(t.final_order("u") >= 1.6);
  CHECK(t.final_order("phi") >= 1.6);
  CHECK(t.final_order("combined") >= 1.6);
  for (const ConvergenceRow& r : t.rows)
    for (double e : r.error) CHECK(e > 0);

  // bitwise rerun under the same seed
  const ConvergenceTable t2 = run_convergence(req);
  CHECK(t.csv() == t2.csv());

  // a different seed perturbs the meshes and moves the errors
  ConvergenceRequest other = req;
  other.seed = 8;
  CHECK(run_convergence(other).final_error("u") != t.final_error("u"));
}

TEST_CASE("run_convergence through an inflow boundary") {
  ConvergenceRequest req;
  req.scenario_id = "4.2";
  req.flux = "ec";
  req.degree = 2;
  req.sizes = {8, 16};
  req.perturb = 0.1;
  req.seed = 5;
  const ConvergenceTable t = run_convergence(req);
  CHECK(t.final_order("u") >= 2.5);

  ConvergenceRequest up = req;
  up.flux = "upwind";
  up.integrator = "rk4";
  CHECK(run_convergence(up).final_order("u") >= 2.5);
}

TEST_CASE("run_convergence in 2D") {
  ConvergenceRequest req;
  req.scenario_id = "4.7";
  req.flux = "double";
  req.degree = 1;
  req.sizes = {4, 8};
  req.perturb = 0.0;
  const ConvergenceTable quad = run_convergence(req);
  CHECK(quad.final_order("u") >= 1.5);

  req.triangular = true;
  const ConvergenceTable tri = run_convergence(req);
  CHECK(tri.final_order("u") >= 1.4);
}

TEST_CASE("run_convergence rejects bad requests") {
  ConvergenceRequest req;
  req.scenario_id = "4.1";
  req.sizes = {};
  CHECK_THROWS_AS((void)run_convergence(req), std::invalid_argument);
  req.sizes = {20, 10};
  CHECK_THROWS_AS((void)run_convergence(req), std::invalid_argument);
  req.sizes = {10, 20};
  req.triangular = true;
  CHECK_THROWS_AS((void)run_convergence(req), std::invalid_argument);
  req.triangular = false;
  req.flux = "bogus";
  CHECK_THROWS_AS((void)run_convergence(req), std::invalid_argument);
  req.flux = "ec";
  req.scenario_id = "0.0";
  CHECK_THROWS_AS((void)run_convergence(req), std::invalid_argument);
}

TEST_CASE("run_longtime conserves the discrete invariants") {
  LongTimeRequest req;
  req.scenario_id = "4.3";
  req.flux = "ec";
  req.integrator = "lw4";
  req.degree = 2;
  req.n = 32;
  req.cfl = 0.1;
  req.t_final = 0.5;
  const WaveMetrics wm = run_longtime(req);

  CHECK_FALSE(wm.aborted);
  CHECK(wm.times.size() == wm.energy.size());
  CHECK(wm.times.size() == wm.peak.size());
  // startup fills the second level on the first step, so every step after
  // the initial record contributes one bilinear sample
  CHECK(wm.bilinear.size() + 1 == wm.times.size());
  CHECK(wm.times.back() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(wm.bilinear_drift <= 1e-12);
  CHECK(wm.energy_drift <= 1e-9);
  CHECK(wm.amplitude_ratio == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(std::abs(wm.phase_shift) <= 5e-3);

  const std::string ecsv = wm.csv_energy();
  CHECK(ecsv.rfind("t,E_h\n", 0) == 0);
  const std::string ccsv = wm.csv_cut();
  CHECK(ccsv.rfind("x,u_h,u_exact\n", 0) == 0);
  CHECK(wm.cut_x.size() == 512);
}

TEST_CASE("run_longtime flags blow-up") {
  // upwind interior flux under the two-level conserving scheme is unstable
  LongTimeRequest req;
  req.scenario_id = "4.1";
  req.flux = "upwind";
  req.integrator = "lw2";
  req.degree = 2;
  req.n = 16;
  req.cfl = 0.1;
  req.stop_threshold = 10.0;
  const WaveMetrics wm = run_longtime(req);
  CHECK(wm.aborted);
  CHECK(wm.times.back() < scenario("4.1").t_final);
  CHECK(wm.peak.back() > 10.0);
}

TEST_CASE("run_longtime rejects bad requests") {
  LongTimeRequest req;
  req.scenario_id = "4.4";
  req.cfl = 0.0;
  CHECK_THROWS_AS((void)run_longtime(req), std::invalid_argument);
  req.cfl = 0.1;
  req.cut_samples = 2;
  CHECK_THROWS_AS((void)run_longtime(req), std::invalid_argument);
  req.cut_samples = 64;
  req.integrator = "what";
  CHECK_THROWS_AS((void)run_longtime(req), std::invalid_argument);
}
