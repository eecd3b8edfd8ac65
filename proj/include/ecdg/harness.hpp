#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ecdg/flux.hpp"
#include "ecdg/mesh.hpp"
#include "ecdg/operator.hpp"
#include "ecdg/systems.hpp"
#include "ecdg/timestep.hpp"

namespace ecdg {

/// A benchmark scenario: a system from the catalog, a reference solution,
/// and the run defaults (domain, final time, boundary treatment).
struct Scenario {
  std::string id;
  std::string description;
  int dim = 1;
  std::string system;                    ///< base-system catalog key
  std::map<std::string, double> params;  ///< catalog parameters
  /// Catalog entry realizing the conserving method when the base spectrum
  /// is unpaired and a tailored augmentation exists (empty otherwise).
  std::string paired_system;
  std::map<std::string, double> paired_params;
  std::string solution;  ///< exact-solution name
  bool periodic = true;
  double t_final = 0.5;
  double ax = 0.0, bx = 1.0, ay = 0.0, by = 1.0;
};

const Scenario& scenario(const std::string& id);
const std::vector<Scenario>& scenario_list();

/// How the interface flux (and with it the system realization) is chosen:
///   central / upwind / lax_friedrichs: base system, named flux
///   alternating: base system, one-sided family (canonical weight)
///   energy_conserving: minimal conserving realization (pairs the spectrum
///     by partial augmentation in 1D, uses the scenario's tailored paired
///     system when given, full doubling otherwise)
///   doubling: sign-flipped full double of the base system
enum class FluxChoice { energy_conserving, doubling, upwind, lax_friedrichs, central, alternating };

FluxChoice flux_choice_from_string(const std::string& s);  ///< ec double upwind lf central alt
std::string to_string(FluxChoice c);

/// A scenario realized for one flux choice: the (possibly augmented)
/// system, its zero-padded exact solution, and boundary closures carrying
/// the exact data on non-periodic domains.
struct MethodSetup {
  AugmentedSystem system = AugmentedSystem::trivial(make_advection1d(1.0));
  ExactSolution exact;
  FluxKind flux = FluxKind::central;
  BoundaryTable bcs;
};

MethodSetup configure(const Scenario& sc, FluxChoice choice);

/// Characteristic boundary closure fed by the exact solution. Time
/// derivatives come from the solution's closed-form ladder when present and
/// from central finite differences otherwise (the fallback caps the
/// attainable temporal order near boundaries).
BoundaryCondition boundary_from_exact(const ExactSolution& sol);

/// Quantity labels, one per component of the (possibly augmented) system;
/// auxiliary components are named phi (phi0, phi1, ... when several).
std::vector<std::string> component_labels(const AugmentedSystem& system,
                                          const std::string& base_system);

/// Mesh used by the driver runs on the scenario's domain. The perturbation
/// seed is mixed with n so each refinement level draws an independent mesh;
/// a given (scenario, n, seed) triple always reproduces the same mesh.
Mesh1D scenario_mesh_1d(const Scenario& sc, int n, double perturb, std::uint64_t seed);
Mesh2D scenario_mesh_2d(const Scenario& sc, int n, bool triangular, double perturb,
                        std::uint64_t seed);

struct ErrorNorms {
  std::vector<double> per_component;
  double combined = 0.0;  ///< root-sum-square over all components
};

/// L2 errors against the exact solution at time t, integrated with a
/// quadrature elevated to exactness 2k+6.
ErrorNorms l2_error(const DGState& u, const Mesh1D& mesh, int degree, const ExactSolution& exact,
                    double t);
ErrorNorms l2_error(const DGState& u, const Mesh2D& mesh, int degree, const ExactSolution& exact,
                    double t);

/// order[i] = log(err[i-1]/err[i]) / log(h[i-1]/h[i]); order[0] is NaN
/// (printed blank). Zero or non-finite errors yield NaN entries.
std::vector<double> orders_from_errors(const std::vector<double>& err,
                                       const std::vector<double>& h);

struct ConvergenceRow {
  int n = 0;        ///< mesh parameter (cells per direction)
  double h = 0.0;   ///< nominal spacing (domain length / n)
  std::vector<double> error;
  std::vector<double> order;  ///< NaN in the first row
};

struct ConvergenceTable {
  std::string scenario_id, flux, integrator;
  int degree = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> quantity;  ///< column names (components, then "combined")
  std::vector<ConvergenceRow> rows;

  std::string csv() const;  ///< N,error_<q>,order_<q>,... ; first-row orders blank
  double final_error(const std::string& quantity) const;
  double final_order(const std::string& quantity) const;
};

struct ConvergenceRequest {
  std::string scenario_id;
  std::string flux = "ec";
  int degree = 1;
  std::vector<int> sizes;       ///< cells per direction, ascending
  bool triangular = false;      ///< 2D scenarios: triangulated instead of Cartesian
  double perturb = 0.1;
  std::uint64_t seed = 7;
  std::string integrator;       ///< empty: reference integrator (see below)
  double cfl = 0.0;             ///< 0: automatic
  double t_final = -1.0;        ///< negative: scenario default
};

/// Runs the study over the requested mesh family. With no integrator given,
/// time stepping uses rk_lw(6) with the step chosen so dt^6 <= 0.01 h^{k+1}
/// on the finest mesh (temporal error negligible against the spatial
/// order), capped by a stability bound. Mesh randomization draws from
/// seed + n per size; reruns are bitwise identical. Independent sizes run
/// on up to ECDG_THREADS workers.
ConvergenceTable run_convergence(const ConvergenceRequest& req);

struct LongTimeRequest {
  std::string scenario_id;
  std::string flux = "ec";
  std::string integrator = "rk3";
  int degree = 2;
  int n = 10;              ///< cells per direction
  bool triangular = false;
  double perturb = 0.0;    ///< long-time runs default to uniform meshes
  std::uint64_t seed = 7;
  double cfl = 0.1;
  double t_final = -1.0;   ///< negative: scenario default
  int cut_samples = 512;
  double stop_threshold = 1e12;  ///< abort when the sampled field exceeds this
};

/// Dissipation / phase metrics of a long-time run, measured on a line cut
/// (the domain in 1D, the horizontal midline in 2D) of the first component.
struct WaveMetrics {
  double amplitude_ratio = 1.0;  ///< max|numeric| / max|exact| on the cut
  double phase_shift = 0.0;      ///< positive: numeric wave trails the exact one
  double energy_drift = 0.0;     ///< max |E(t) - E(0)| / E(0)
  double bilinear_drift = 0.0;   ///< two-level schemes: max |q_n - q_1| / E(0)
  bool aborted = false;          ///< stopped early past stop_threshold
  std::vector<double> times, energy, bilinear, peak;  ///< per recorded step
  std::vector<double> cut_x, cut_numeric, cut_exact;  ///< final-time cut

  std::string csv_energy() const;  ///< t,E_h
  std::string csv_cut() const;     ///< x,u_h,u_exact
};

WaveMetrics run_longtime(const LongTimeRequest& req);

/// Amplitude ratio and cross-correlation phase (quadratic peak refinement)
/// from the cut arrays already stored in m; exposed so controls can feed
/// synthetic cuts. periodic wraps the correlation over the cut length.
void fill_wave_metrics(WaveMetrics& m, bool periodic);

/// Point value of one component (1D mesh); x clamped to the domain.
double eval_at(const DGState& u, const Mesh1D& mesh, int degree, int comp, double x);
/// Same on a 2D mesh (affine cells); throws when (x, y) lies in no cell.
double eval_at(const DGState& u, const Mesh2D& mesh, int degree, int comp, double x, double y);

/// min(ECDG_THREADS, hardware concurrency), at least 1.
int worker_count();

}  // namespace ecdg
