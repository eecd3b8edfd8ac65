#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ecdg/harness.hpp"

using namespace ecdg;

namespace {

struct Options {
  std::string example = "4.1";
  std::string flux = "ec";
  int k = 1;
  std::vector<int> sizes;
  bool tri = false;
  double perturb = 0.0;
  std::uint64_t seed = 7;
  std::string ti;
  double cfl = 0.0;
  double dt = 0.0;
  double tfinal = -1.0;
  int samples = 512;
  double stop_threshold = 1e12;
  std::string out;
  std::string energy_out;
  std::string cut_out;
  std::string config;
};

void add_problem_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--example", o.example, "benchmark id (see `list`)")
      ->capture_default_str();
  cmd->add_option("--flux", o.flux, "numerical flux: ec|double|upwind|lf|central|alt")
      ->capture_default_str();
  cmd->add_option("--k", o.k, "polynomial degree")->capture_default_str();
  cmd->add_flag("--tri", o.tri, "unstructured triangular mesh (2D only)");
  cmd->add_option("--perturb", o.perturb, "mesh perturbation fraction")->capture_default_str();
  cmd->add_option("--mesh-seed", o.seed, "mesh perturbation seed")->capture_default_str();
  cmd->add_option("--tfinal", o.tfinal, "final time (default: the benchmark's)");
  cmd->add_option("--config", o.config, "flat key=value file mirroring the flags; flags win");
}

std::vector<int> parse_sizes(const std::string& val) {
  std::vector<int> out;
  std::stringstream ss(val);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

/// Key=value config lines fill any option the command line left untouched.
void apply_config(const CLI::App* cmd, Options& o) {
  if (o.config.empty()) return;
  std::ifstream f(o.config);
  if (!f) throw std::runtime_error("cannot read config file " + o.config);

  const auto strip = [](const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };

  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(o.config + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = strip(t.substr(0, eq));
    const std::string val = strip(t.substr(eq + 1));

    const std::string flag = "--" + key;
    if (key == "config" || cmd->get_option_no_throw(flag) == nullptr)
      throw std::runtime_error(o.config + ":" + std::to_string(lineno) + ": key '" + key +
                               "' is not a flag of this subcommand");
    if (cmd->count(flag) > 0) continue;  // explicit flags win

    try {
      if (key == "example") o.example = val;
      else if (key == "flux") o.flux = val;
      else if (key == "k") o.k = std::stoi(val);
      else if (key == "N") o.sizes = parse_sizes(val);
      else if (key == "tri") o.tri = (val == "1" || val == "true");
      else if (key == "perturb") o.perturb = std::stod(val);
      else if (key == "mesh-seed") o.seed = std::stoull(val);
      else if (key == "ti") o.ti = val;
      else if (key == "cfl") o.cfl = std::stod(val);
      else if (key == "dt") o.dt = std::stod(val);
      else if (key == "tfinal") o.tfinal = std::stod(val);
      else if (key == "samples") o.samples = std::stoi(val);
      else if (key == "stop-threshold") o.stop_threshold = std::stod(val);
      else if (key == "out") o.out = val;
      else if (key == "energy-out") o.energy_out = val;
      else if (key == "cut-out") o.cut_out = val;
    } catch (const std::exception&) {
      throw std::runtime_error(o.config + ":" + std::to_string(lineno) + ": bad value for '" +
                               key + "'");
    }
  }
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << text;
}

int single_n(const Options& o, int fallback) {
  if (o.sizes.empty()) return fallback;
  if (o.sizes.size() > 1)
    throw std::invalid_argument("this subcommand takes a single mesh size N");
  return o.sizes[0];
}

LongTimeRequest longtime_request(const Options& o, int default_n) {
  LongTimeRequest req;
  req.scenario_id = o.example;
  req.flux = o.flux;
  req.integrator = o.ti.empty() ? "lw4" : o.ti;
  req.degree = o.k;
  req.n = single_n(o, default_n);
  req.triangular = o.tri;
  req.perturb = o.perturb;
  req.seed = o.seed;
  req.cfl = o.cfl > 0 ? o.cfl : 0.1;
  req.t_final = o.tfinal;
  req.cut_samples = o.samples;
  req.stop_threshold = o.stop_threshold;
  return req;
}

int cmd_run(const Options& o) {
  const Scenario& sc = scenario(o.example);
  const MethodSetup ms = configure(sc, flux_choice_from_string(o.flux));
  const int n = single_n(o, sc.dim == 1 ? 40 : 16);
  const double t_end = o.tfinal >= 0 ? o.tfinal : sc.t_final;
  const IntegratorSpec spec = parse_integrator(o.ti.empty() ? "lw4" : o.ti);

  Mesh1D m1;
  Mesh2D m2;
  if (sc.dim == 1)
    m1 = scenario_mesh_1d(sc, n, o.perturb, o.seed);
  else
    m2 = scenario_mesh_2d(sc, n, o.tri, o.perturb, o.seed);
  const SemiDiscreteOperator op = sc.dim == 1 ? assemble(ms.system, m1, o.k, ms.flux, ms.bcs)
                                              : assemble(ms.system, m2, o.k, ms.flux, ms.bcs);

  double dt = o.dt > 0 ? o.dt : cfl_dt(op, o.cfl > 0 ? o.cfl : 0.1);
  long steps = 0;
  TimeHistory h;
  h.curr = sc.dim == 1 ? project_initial(ms.exact, m1, o.k, 0.0)
                       : project_initial(ms.exact, m2, o.k, 0.0);
  const double e0 = op.energy(h.curr);
  if (t_end > 0) {
    steps = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-12)));
    dt = t_end / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) advance(op, spec, dt, h);
  }
  const ErrorNorms err = sc.dim == 1 ? l2_error(h.curr, m1, o.k, ms.exact, t_end)
                                     : l2_error(h.curr, m2, o.k, ms.exact, t_end);
  const double e1 = op.energy(h.curr);

  std::ostringstream rep;
  rep << "benchmark " << sc.id << ": " << sc.description << "\n"
      << "flux " << o.flux << "  degree " << o.k << "  N " << n << "  integrator " << spec.str()
      << "  dt " << dt << "  steps " << steps << "\n"
      << "L2 errors at t = " << t_end << ":\n";
  const std::vector<std::string> labels = component_labels(ms.system, sc.system);
  for (size_t c = 0; c < err.per_component.size(); ++c)
    rep << "  " << labels[c] << "  " << std::scientific << err.per_component[c] << "\n";
  rep << "  combined  " << std::scientific << err.combined << "\n";
  rep << "relative energy change " << std::scientific
      << (e0 > 0 ? std::abs(e1 - e0) / e0 : std::abs(e1 - e0)) << "\n";
  write_or_print(o.out, rep.str());
  return 0;
}

int cmd_converge(const Options& o) {
  ConvergenceRequest req;
  req.scenario_id = o.example;
  req.flux = o.flux;
  req.degree = o.k;
  req.sizes = o.sizes.empty() ? std::vector<int>{10, 20, 40, 80} : o.sizes;
  req.triangular = o.tri;
  req.perturb = o.perturb;
  req.seed = o.seed;
  req.integrator = o.ti;
  req.cfl = o.cfl;
  req.t_final = o.tfinal;
  const ConvergenceTable t = run_convergence(req);
  write_or_print(o.out, t.csv());
  return 0;
}

int cmd_energy(const Options& o) {
  const WaveMetrics wm = run_longtime(longtime_request(o, 32));
  write_or_print(o.out, wm.csv_energy());
  std::cerr << "energy_drift " << std::scientific << wm.energy_drift << "\n"
            << "bilinear_drift " << std::scientific << wm.bilinear_drift << "\n";
  if (wm.aborted) {
    std::cerr << "run aborted: solution magnitude passed the blow-up threshold\n";
    return 1;
  }
  return 0;
}

int cmd_longtime(const Options& o) {
  const WaveMetrics wm = run_longtime(longtime_request(o, 10));
  if (!o.energy_out.empty()) write_or_print(o.energy_out, wm.csv_energy());
  if (!o.cut_out.empty()) write_or_print(o.cut_out, wm.csv_cut());
  std::ostringstream rep;
  rep << std::scientific;
  rep << "amplitude_ratio " << wm.amplitude_ratio << "\n"
      << "phase_shift " << wm.phase_shift << "\n"
      << "energy_drift " << wm.energy_drift << "\n"
      << "bilinear_drift " << wm.bilinear_drift << "\n"
      << "aborted " << (wm.aborted ? 1 : 0) << "\n"
      << "t_end " << wm.times.back() << "\n";
  write_or_print(o.out, rep.str());
  return wm.aborted ? 1 : 0;
}

int cmd_list() {
  std::cout << "benchmarks:\n";
  for (const Scenario& s : scenario_list())
    std::cout << "  " << s.id << "  " << s.dim << "D  T=" << s.t_final << "  " << s.description
              << "\n";
  std::cout << "systems:";
  for (const std::string& n : catalog_names()) std::cout << " " << n;
  std::cout << "\nsolutions:";
  for (const std::string& n : exact_solution_names()) std::cout << " " << n;
  std::cout << "\nfluxes: ec double upwind lf central alt\n";
  std::cout << "integrators: lw<even order> | rk<stages> | hybrid<interior r>\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-conserving discontinuous Galerkin driver"};
  app.require_subcommand(1);

  Options run_o, conv_o, en_o, lt_o;
  run_o.k = 2;
  en_o.k = 2;
  lt_o.k = 2;
  conv_o.perturb = 0.1;

  CLI::App* run = app.add_subcommand("run", "single solve, error and energy report");
  add_problem_flags(run, run_o);
  run->add_option("--N", run_o.sizes, "mesh size")->delimiter(',');
  run->add_option("--ti", run_o.ti, "integrator (default lw4)");
  run->add_option("--cfl", run_o.cfl, "CFL number (default 0.1)");
  run->add_option("--dt", run_o.dt, "fixed time step (overrides --cfl)");
  run->add_option("--out", run_o.out, "write the report here instead of stdout");

  CLI::App* conv = app.add_subcommand("converge", "mesh refinement study, CSV table");
  add_problem_flags(conv, conv_o);
  conv->add_option("--N", conv_o.sizes, "comma-separated mesh sizes")->delimiter(',');
  conv->add_option("--ti", conv_o.ti, "integrator (default: tiny-step reference)");
  conv->add_option("--cfl", conv_o.cfl, "CFL number");
  conv->add_option("--out", conv_o.out, "CSV output path (default stdout)");

  CLI::App* en = app.add_subcommand("energy", "discrete energy time series, CSV");
  add_problem_flags(en, en_o);
  en->add_option("--N", en_o.sizes, "mesh size")->delimiter(',');
  en->add_option("--ti", en_o.ti, "integrator (default lw4)");
  en->add_option("--cfl", en_o.cfl, "CFL number (default 0.1)");
  en->add_option("--samples", en_o.samples, "cut sample count")->capture_default_str();
  en->add_option("--out", en_o.out, "CSV output path (default stdout)");

  CLI::App* lt = app.add_subcommand("longtime", "wave metrics after a long run");
  add_problem_flags(lt, lt_o);
  lt->add_option("--N", lt_o.sizes, "mesh size")->delimiter(',');
  lt->add_option("--ti", lt_o.ti, "integrator (default lw4)");
  lt->add_option("--cfl", lt_o.cfl, "CFL number (default 0.1)");
  lt->add_option("--samples", lt_o.samples, "cut sample count")->capture_default_str();
  lt->add_option("--stop-threshold", lt_o.stop_threshold, "abort when max|u| passes this")
      ->capture_default_str();
  lt->add_option("--out", lt_o.out, "metrics output path (default stdout)");
  lt->add_option("--energy-out", lt_o.energy_out, "write the t,E_h series here");
  lt->add_option("--cut-out", lt_o.cut_out, "write the final-time line cut here");

  CLI::App* ls = app.add_subcommand("list", "catalog of benchmarks, systems, fluxes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      apply_config(run, run_o);
      return cmd_run(run_o);
    }
    if (conv->parsed()) {
      apply_config(conv, conv_o);
      return cmd_converge(conv_o);
    }
    if (en->parsed()) {
      apply_config(en, en_o);
      return cmd_energy(en_o);
    }
    if (lt->parsed()) {
      apply_config(lt, lt_o);
      return cmd_longtime(lt_o);
    }
    if (ls->parsed()) return cmd_list();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
