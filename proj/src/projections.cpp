#include "ecdg/projections.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ecdg/algebra.hpp"

namespace ecdg {

namespace {

/// Per-cell one-sided projection kernel: the first k coefficients are the
/// L2 moments (orthonormal reference basis, so the moment conditions fix
/// them directly), the top coefficient absorbs the endpoint condition.
class RadauKernel {
 public:
  explicit RadauKernel(int k)
      : basis_(make_basis(ElemKind::interval, k, 2 * k + 6)),
        at0_(basis_.n_modes),
        at1_(basis_.n_modes) {
    basis_.eval(0.0, 0.0, at0_.data());
    basis_.eval(1.0, 0.0, at1_.data());
  }

  void cell(const ScalarFn& u, double xl, double h, RadauSide side, double* c) const {
    const int nm = basis_.n_modes;
    for (int i = 0; i < nm; ++i) c[i] = 0.0;
    for (int q = 0; q < basis_.vol.size(); ++q) {
      const double uq = u(xl + basis_.vol.x[q] * h);
      for (int i = 0; i < nm - 1; ++i) c[i] += basis_.vol.w[q] * uq * basis_.val[q * nm + i];
    }
    const std::vector<double>& e = endpoint(side);
    const double ux = u(side == RadauSide::plus ? xl : xl + h);
    double acc = ux;
    for (int i = 0; i < nm - 1; ++i) acc -= c[i] * e[i];
    c[nm - 1] = acc / e[nm - 1];
  }

  double trace(const double* c, RadauSide side) const {
    const std::vector<double>& e = endpoint(side);
    double acc = 0.0;
    for (int i = 0; i < basis_.n_modes; ++i) acc += c[i] * e[i];
    return acc;
  }

  /// Worst moment residual of (P - u) against modes 0..k-1, re-measured
  /// through the elevated rule; also grows the |u| scale estimate.
  double moment_residuals(const ScalarFn& u, const double* c, double xl, double h,
                          double& scale) const {
    const int nm = basis_.n_modes;
    std::vector<double> r(nm, 0.0);
    for (int q = 0; q < basis_.vol.size(); ++q) {
      const double uq = u(xl + basis_.vol.x[q] * h);
      if (std::abs(uq) > scale) scale = std::abs(uq);
      double pq = 0.0;
      for (int i = 0; i < nm; ++i) pq += c[i] * basis_.val[q * nm + i];
      for (int i = 0; i < nm - 1; ++i) r[i] += basis_.vol.w[q] * (pq - uq) * basis_.val[q * nm + i];
    }
    double worst = 0.0;
    for (int i = 0; i < nm - 1; ++i)
      if (std::abs(r[i]) > worst) worst = std::abs(r[i]);
    return worst;
  }

  const std::vector<double>& endpoint(RadauSide side) const {
    return side == RadauSide::plus ? at0_ : at1_;
  }
  int n_modes() const { return basis_.n_modes; }

 private:
  ReferenceBasis basis_;
  std::vector<double> at0_, at1_;
};

void check_degree(int degree) {
  if (degree < 0) throw std::invalid_argument("projection degree must be non-negative");
}

void guard_residual(double worst, double scale, const char* what) {
  if (worst > 1e-8 * (1.0 + scale))
    throw std::runtime_error(std::string(what) +
                             ": defining conditions violated beyond roundoff");
}

double fold_max(std::vector<double>& cell_residual, int j, double r) {
  if (r > cell_residual[j]) cell_residual[j] = r;
  return r;
}

}  // namespace

ProjectionResult gauss_radau(const ScalarFn& u, const Mesh1D& mesh, int degree, RadauSide side) {
  check_degree(degree);
  mesh.validate();
  const RadauKernel ker(degree);
  const int nm = ker.n_modes();
  ProjectionResult out;
  out.state = DGState::zeros(mesh.n_cells(), 1, nm);
  out.cell_residual.assign(mesh.n_cells(), 0.0);
  double scale = 0.0;
  for (int j = 0; j < mesh.n_cells(); ++j) {
    double* c = out.state.cell_comp(j, 0);
    ker.cell(u, mesh.nodes[j], mesh.length(j), side, c);
    fold_max(out.cell_residual, j,
             ker.moment_residuals(u, c, mesh.nodes[j], mesh.length(j), scale));
    const double ux = u(side == RadauSide::plus ? mesh.nodes[j] : mesh.nodes[j + 1]);
    fold_max(out.cell_residual, j, std::abs(ker.trace(c, side) - ux));
    if (out.cell_residual[j] > out.max_residual) out.max_residual = out.cell_residual[j];
  }
  guard_residual(out.max_residual, scale, "one-sided projection");
  return out;
}

CoupledAdvectionResult coupled_advection_projection(const ScalarFn& u, const ScalarFn& phi,
                                                    const Mesh1D& mesh, int degree) {
  check_degree(degree);
  mesh.validate();
  const RadauKernel ker(degree);
  const int nm = ker.n_modes(), n = mesh.n_cells();
  const ScalarFn sum = [&u, &phi](double x) { return u(x) + phi(x); };
  const ScalarFn dif = [&u, &phi](double x) { return u(x) - phi(x); };

  CoupledAdvectionResult out;
  out.u = DGState::zeros(n, 1, nm);
  out.phi = DGState::zeros(n, 1, nm);
  out.cell_residual.assign(n, 0.0);
  std::vector<double> cp(nm), cm(nm);
  double scale = 0.0;
  for (int j = 0; j < n; ++j) {
    ker.cell(sum, mesh.nodes[j], mesh.length(j), RadauSide::plus, cp.data());
    ker.cell(dif, mesh.nodes[j], mesh.length(j), RadauSide::minus, cm.data());
    for (int i = 0; i < nm; ++i) {
      out.u.cell_comp(j, 0)[i] = 0.5 * (cp[i] + cm[i]);
      out.phi.cell_comp(j, 0)[i] = 0.5 * (cp[i] - cm[i]);
    }
    fold_max(out.cell_residual, j,
             ker.moment_residuals(u, out.u.cell_comp(j, 0), mesh.nodes[j], mesh.length(j), scale));
    fold_max(
        out.cell_residual, j,
        ker.moment_residuals(phi, out.phi.cell_comp(j, 0), mesh.nodes[j], mesh.length(j), scale));
  }
  // interface coupling: mean of one field plus half the jump of the other
  const int first = mesh.periodic ? 0 : 1;
  for (int j = first; j < n; ++j) {
    const int jm = (j + n - 1) % n;
    const double x = mesh.nodes[j];
    const double ul = ker.trace(out.u.cell_comp(jm, 0), RadauSide::minus);
    const double ur = ker.trace(out.u.cell_comp(j, 0), RadauSide::plus);
    const double pl = ker.trace(out.phi.cell_comp(jm, 0), RadauSide::minus);
    const double pr = ker.trace(out.phi.cell_comp(j, 0), RadauSide::plus);
    const double r1 = 0.5 * (ul + ur) + 0.5 * (pr - pl) - u(x);
    const double r2 = 0.5 * (pl + pr) + 0.5 * (ur - ul) - phi(x);
    const double r = std::abs(r1) > std::abs(r2) ? std::abs(r1) : std::abs(r2);
    fold_max(out.cell_residual, jm, r);
    fold_max(out.cell_residual, j, r);
  }
  for (double r : out.cell_residual)
    if (r > out.max_residual) out.max_residual = r;
  guard_residual(out.max_residual, scale, "coupled advection projection");
  return out;
}

ProjectionResult coupled_acoustics_projection(const ScalarFn& p, const ScalarFn& v,
                                              const SymmetricSystem& sys, double alpha,
                                              const Mesh1D& mesh, int degree) {
  check_degree(degree);
  mesh.validate();
  if (sys.dim != 1 || sys.m != 2)
    throw std::invalid_argument("coupled acoustics projection needs a 1D two-component system");
  const EigenPairing eig = eig_decompose(sys.B1);
  if (eig.positive != 1 || eig.negative != 1)
    throw std::invalid_argument(
        "characteristics do not split: the local coupled projection is not defined for "
        "supersonic or degenerate backgrounds (double the system instead)");
  const double lp = eig.lambda[0], lm = eig.lambda[1];
  const double family = 0.5 * std::sqrt(-lp * lm);
  if (std::abs(alpha - family) > 1e-10 * (1.0 + family))
    throw std::invalid_argument(
        "alpha must be the flux-family value sqrt(-lambda+ lambda-)/2 for this background");

  const Matrix& s = eig.vectors;
  const double a = std::sqrt(-lm / lp);
  // characteristic fields w = S^T u and their one-sided combinations
  const ScalarFn plus_fn = [&](double x) {
    const double w1 = s(0, 0) * p(x) + s(1, 0) * v(x);
    const double w2 = s(0, 1) * p(x) + s(1, 1) * v(x);
    return w1 + a * w2;
  };
  const ScalarFn minus_fn = [&](double x) {
    const double w1 = s(0, 0) * p(x) + s(1, 0) * v(x);
    const double w2 = s(0, 1) * p(x) + s(1, 1) * v(x);
    return w1 - a * w2;
  };

  const RadauKernel ker(degree);
  const int nm = ker.n_modes(), n = mesh.n_cells();
  ProjectionResult out;
  out.state = DGState::zeros(n, 2, nm);
  out.cell_residual.assign(n, 0.0);
  std::vector<double> cp(nm), cm(nm);
  double scale = 0.0;
  for (int j = 0; j < n; ++j) {
    ker.cell(plus_fn, mesh.nodes[j], mesh.length(j), RadauSide::plus, cp.data());
    ker.cell(minus_fn, mesh.nodes[j], mesh.length(j), RadauSide::minus, cm.data());
    for (int i = 0; i < nm; ++i) {
      const double w1 = 0.5 * (cp[i] + cm[i]);
      const double w2 = 0.5 * (cp[i] - cm[i]) / a;
      out.state.cell_comp(j, 0)[i] = s(0, 0) * w1 + s(0, 1) * w2;
      out.state.cell_comp(j, 1)[i] = s(1, 0) * w1 + s(1, 1) * w2;
    }
    fold_max(out.cell_residual, j,
             ker.moment_residuals(p, out.state.cell_comp(j, 0), mesh.nodes[j], mesh.length(j),
                                  scale));
    fold_max(out.cell_residual, j,
             ker.moment_residuals(v, out.state.cell_comp(j, 1), mesh.nodes[j], mesh.length(j),
                                  scale));
  }
  // interface coupling: B1 {Pu} + alpha J [Pu] = B1 u(x)
  const int first = mesh.periodic ? 0 : 1;
  for (int j = first; j < n; ++j) {
    const int jm = (j + n - 1) % n;
    const double x = mesh.nodes[j];
    double mean[2], jump[2];
    for (int c = 0; c < 2; ++c) {
      const double tl = ker.trace(out.state.cell_comp(jm, c), RadauSide::minus);
      const double tr = ker.trace(out.state.cell_comp(j, c), RadauSide::plus);
      mean[c] = 0.5 * (tl + tr);
      jump[c] = tr - tl;
    }
    const double ux[2] = {p(x), v(x)};
    const double jrot[2] = {alpha * jump[1], -alpha * jump[0]};
    for (int r = 0; r < 2; ++r) {
      const double lhs = sys.B1(r, 0) * mean[0] + sys.B1(r, 1) * mean[1] + jrot[r];
      const double rhs = sys.B1(r, 0) * ux[0] + sys.B1(r, 1) * ux[1];
      fold_max(out.cell_residual, jm, std::abs(lhs - rhs));
      fold_max(out.cell_residual, j, std::abs(lhs - rhs));
    }
  }
  for (double r : out.cell_residual)
    if (r > out.max_residual) out.max_residual = r;
  guard_residual(out.max_residual, scale, "coupled acoustics projection");
  return out;
}

}  // namespace ecdg
