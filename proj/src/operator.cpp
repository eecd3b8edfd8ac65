#include "ecdg/operator.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ecdg {

namespace {

/// Reference stiffness Gram: out[i*nm+j] = sum_q w_q dphi_i(q) phi_j(q).
std::vector<double> stiffness_gram(const ReferenceBasis& basis, const std::vector<double>& dtab) {
  const int nm = basis.n_modes, nq = basis.vol.size();
  std::vector<double> g(static_cast<size_t>(nm) * nm, 0.0);
  for (int q = 0; q < nq; ++q) {
    const double w = basis.vol.w[q];
    const double* d = dtab.data() + static_cast<size_t>(q) * nm;
    const double* v = basis.val.data() + static_cast<size_t>(q) * nm;
    for (int i = 0; i < nm; ++i)
      for (int j = 0; j < nm; ++j) g[static_cast<size_t>(i) * nm + j] += w * d[i] * v[j];
  }
  return g;
}

void accumulate_gram(std::vector<double>& g, const std::vector<double>& ti,
                     const std::vector<double>& tj, double w, int nm) {
  for (int i = 0; i < nm; ++i)
    for (int j = 0; j < nm; ++j) g[static_cast<size_t>(i) * nm + j] += w * ti[i] * tj[j];
}

/// y_i = G x_i per mode block.
void gram_apply(const std::vector<double>& g, const double* x, double* y, int nm) {
  for (int i = 0; i < nm; ++i) {
    const double* row = g.data() + static_cast<size_t>(i) * nm;
    double s = 0.0;
    for (int j = 0; j < nm; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

/// y_i = G^T x_i.
void gram_apply_t(const std::vector<double>& g, const double* x, double* y, int nm) {
  for (int i = 0; i < nm; ++i) y[i] = 0.0;
  for (int j = 0; j < nm; ++j) {
    const double* row = g.data() + static_cast<size_t>(j) * nm;
    const double xj = x[j];
    for (int i = 0; i < nm; ++i) y[i] += row[i] * xj;
  }
}

const BoundaryCondition& lookup_bc(const BoundaryTable& bcs, int tag) {
  static const BoundaryCondition absorbing{};
  auto it = bcs.find(tag);
  return it == bcs.end() ? absorbing : it->second;
}

}  // namespace

DGState DGState::zeros(int n_cells, int m, int n_modes) {
  DGState s;
  s.n_cells = n_cells;
  s.m = m;
  s.n_modes = n_modes;
  s.coef.assign(static_cast<size_t>(n_cells) * m * n_modes, 0.0);
  return s;
}

void DGState::set_zero() { std::fill(coef.begin(), coef.end(), 0.0); }

void DGState::add_scaled(const DGState& other, double a) {
  if (other.coef.size() != coef.size()) throw std::invalid_argument("state shape mismatch");
  for (size_t i = 0; i < coef.size(); ++i) coef[i] += a * other.coef[i];
}

void DGState::scale(double a) {
  for (double& c : coef) c *= a;
}

void eval_state(const DGState& u, const ReferenceBasis& basis, int cell, double xi, double eta,
                double* out) {
  std::vector<double> phi(basis.n_modes);
  basis.eval(xi, eta, phi.data());
  for (int a = 0; a < u.m; ++a) {
    const double* c = u.cell_comp(cell, a);
    double s = 0.0;
    for (int i = 0; i < basis.n_modes; ++i) s += c[i] * phi[i];
    out[a] = s;
  }
}

void SemiDiscreteOperator::apply_a(const DGState& u, DGState& out) const {
  if (u.n_cells != n_cells() || u.m != m() || u.n_modes != n_modes())
    throw std::invalid_argument("apply_a: state shape mismatch");
  if (&out == &u) throw std::invalid_argument("apply_a: output must not alias the input");
  if (out.size() != u.size()) out = make_state();
  out.set_zero();

  const int nm = n_modes(), mm = m();
  std::vector<double> ya(static_cast<size_t>(mm) * nm), yb(static_cast<size_t>(mm) * nm);
  std::vector<double> za(static_cast<size_t>(mm) * nm), zb(static_cast<size_t>(mm) * nm);

  const bool two_d = !keta_.empty();
  for (int c = 0; c < n_cells(); ++c) {
    const CellOp& co = cells_[c];
    for (int b = 0; b < mm; ++b) {
      gram_apply(kxi_, u.cell_comp(c, b), &ya[static_cast<size_t>(b) * nm], nm);
      if (two_d) gram_apply(keta_, u.cell_comp(c, b), &yb[static_cast<size_t>(b) * nm], nm);
    }
    for (int a = 0; a < mm; ++a) {
      double* oa = out.cell_comp(c, a);
      for (int b = 0; b < mm; ++b) {
        const double c1 = co.c1(a, b);
        if (c1 != 0.0) {
          const double* y = &ya[static_cast<size_t>(b) * nm];
          for (int i = 0; i < nm; ++i) oa[i] += c1 * y[i];
        }
        if (two_d) {
          const double c2 = co.c2(a, b);
          if (c2 != 0.0) {
            const double* y = &yb[static_cast<size_t>(b) * nm];
            for (int i = 0; i < nm; ++i) oa[i] += c2 * y[i];
          }
        }
      }
    }
    if (!co.reaction.empty()) {
      for (int a = 0; a < sys_.sys.reaction_components; ++a) {
        gram_apply(co.reaction, u.cell_comp(c, a), za.data(), nm);
        double* oa = out.cell_comp(c, a);
        for (int i = 0; i < nm; ++i) oa[i] += za[i];
      }
    }
  }

  for (const FaceOp& f : faces_) {
    for (int b = 0; b < mm; ++b) {
      gram_apply(f.g_mm, u.cell_comp(f.cm, b), &ya[static_cast<size_t>(b) * nm], nm);
      gram_apply(f.g_mp, u.cell_comp(f.cp, b), &yb[static_cast<size_t>(b) * nm], nm);
      gram_apply_t(f.g_mp, u.cell_comp(f.cm, b), &za[static_cast<size_t>(b) * nm], nm);
      gram_apply(f.g_pp, u.cell_comp(f.cp, b), &zb[static_cast<size_t>(b) * nm], nm);
    }
    for (int a = 0; a < mm; ++a) {
      double* om = out.cell_comp(f.cm, a);
      double* op = out.cell_comp(f.cp, a);
      for (int b = 0; b < mm; ++b) {
        const double wm = f.wm(a, b), wp = f.wp(a, b);
        if (wm != 0.0) {
          const double* y = &ya[static_cast<size_t>(b) * nm];
          const double* z = &za[static_cast<size_t>(b) * nm];
          for (int i = 0; i < nm; ++i) om[i] -= wm * y[i];
          for (int i = 0; i < nm; ++i) op[i] += wm * z[i];
        }
        if (wp != 0.0) {
          const double* y = &yb[static_cast<size_t>(b) * nm];
          const double* z = &zb[static_cast<size_t>(b) * nm];
          for (int i = 0; i < nm; ++i) om[i] -= wp * y[i];
          for (int i = 0; i < nm; ++i) op[i] += wp * z[i];
        }
      }
    }
  }

  for (const BdryOp& bd : bdry_) {
    for (int b = 0; b < mm; ++b)
      gram_apply(bd.g, u.cell_comp(bd.cell, b), &ya[static_cast<size_t>(b) * nm], nm);
    for (int a = 0; a < mm; ++a) {
      double* oa = out.cell_comp(bd.cell, a);
      for (int b = 0; b < mm; ++b) {
        const double w = bd.w_int(a, b);
        if (w != 0.0) {
          const double* y = &ya[static_cast<size_t>(b) * nm];
          for (int i = 0; i < nm; ++i) oa[i] -= w * y[i];
        }
      }
    }
  }
}

DGState SemiDiscreteOperator::apply_a(const DGState& u) const {
  DGState out = make_state();
  apply_a(u, out);
  return out;
}

void SemiDiscreteOperator::add_source(double t, int deriv, DGState& out) const {
  if (out.n_cells != n_cells() || out.m != m() || out.n_modes != n_modes())
    throw std::invalid_argument("add_source: state shape mismatch");
  const int nm = n_modes(), mm = m();
  std::vector<double> vals(mm), coupled(mm);
  for (const BdryOp& bd : bdry_) {
    if (!bd.data) continue;
    for (size_t q = 0; q < bd.qw.size(); ++q) {
      bd.data(bd.qx[q], bd.qy[q], t, deriv, vals.data());
      for (int a = 0; a < mm; ++a) {
        double s = 0.0;
        for (int b = 0; b < mm; ++b) s += bd.w_data(a, b) * vals[b];
        coupled[a] = s * bd.qw[q];
      }
      const double* tr = bd.trace.data() + q * nm;
      for (int a = 0; a < mm; ++a) {
        double* oa = out.cell_comp(bd.cell, a);
        for (int i = 0; i < nm; ++i) oa[i] -= coupled[a] * tr[i];
      }
    }
  }
}

bool SemiDiscreteOperator::has_source() const {
  for (const BdryOp& bd : bdry_)
    if (bd.data) return true;
  return false;
}

void SemiDiscreteOperator::solve_mass(DGState& u) const {
  if (u.n_cells != n_cells() || u.m != m() || u.n_modes != n_modes())
    throw std::invalid_argument("solve_mass: state shape mismatch");
  const int nm = n_modes(), mm = m();
  std::vector<double> tmp(mm);
  for (int c = 0; c < n_cells(); ++c) {
    const Matrix& inv = sys_.sys.b0_inv(cells_[c].region);
    const double s = 1.0 / cells_[c].scale;
    for (int i = 0; i < nm; ++i) {
      for (int a = 0; a < mm; ++a) tmp[a] = u.cell_comp(c, a)[i];
      for (int b = 0; b < mm; ++b) {
        double v = 0.0;
        for (int a = 0; a < mm; ++a) v += inv(b, a) * tmp[a];
        u.cell_comp(c, b)[i] = v * s;
      }
    }
  }
}

double SemiDiscreteOperator::energy(const DGState& u) const { return bilinear(u, u); }

double SemiDiscreteOperator::bilinear(const DGState& u, const DGState& v) const {
  if (u.size() != dofs() || v.size() != dofs())
    throw std::invalid_argument("bilinear: state shape mismatch");
  const int nm = n_modes(), mm = m();
  std::vector<double> per_cell(n_cells());
  for (int c = 0; c < n_cells(); ++c) {
    const Matrix& b0 = sys_.sys.b0(cells_[c].region);
    double e = 0.0;
    for (int a = 0; a < mm; ++a)
      for (int b = 0; b < mm; ++b) {
        const double w = b0(a, b);
        if (w == 0.0) continue;
        const double* ua = u.cell_comp(c, a);
        const double* vb = v.cell_comp(c, b);
        double dot = 0.0;
        for (int i = 0; i < nm; ++i) dot += ua[i] * vb[i];
        e += w * dot;
      }
    per_cell[c] = e * cells_[c].scale;
  }
  return pairwise_sum(per_cell);
}

Matrix SemiDiscreteOperator::dense_a() const {
  const int n = dofs();
  if (n > 20000) throw std::invalid_argument("dense_a: refusing to materialize above 20000 unknowns");
  Matrix a(n, n);
  DGState e = make_state(), col = make_state();
  for (int j = 0; j < n; ++j) {
    e.coef[j] = 1.0;
    apply_a(e, col);
    for (int i = 0; i < n; ++i) a(i, j) = col.coef[i];
    e.coef[j] = 0.0;
  }
  return a;
}

namespace {

void check_flux_factory(const SymmetricSystem& sys, const FluxFactory& flux) {
  if (flux.system().m != sys.m || flux.system().dim != sys.dim)
    throw std::invalid_argument("assemble: flux factory was built for a different system");
}

}  // namespace

SemiDiscreteOperator assemble(const AugmentedSystem& asys, const Mesh1D& mesh, int degree,
                              const FluxFactory& flux, const BoundaryTable& bcs) {
  mesh.validate();
  const SymmetricSystem& sys = asys.sys;
  if (sys.dim != 1) throw std::invalid_argument("assemble: 1D mesh needs a 1D system");
  check_flux_factory(sys, flux);

  SemiDiscreteOperator op;
  op.sys_ = asys;
  op.basis_ = make_basis(ElemKind::interval, degree);
  const int nm = op.basis_.n_modes;
  op.kxi_ = stiffness_gram(op.basis_, op.basis_.dxi);

  const int n = mesh.n_cells();
  op.cells_.resize(n);
  for (int j = 0; j < n; ++j) {
    SemiDiscreteOperator::CellOp& c = op.cells_[j];
    c.c1 = sys.B1;
    c.region = mesh.region[j];
    c.scale = mesh.length(j);
    if (sys.reaction) {
      c.reaction.assign(static_cast<size_t>(nm) * nm, 0.0);
      const int nq = op.basis_.vol.size();
      for (int q = 0; q < nq; ++q) {
        const double x = mesh.nodes[j] + op.basis_.vol.x[q] * c.scale;
        const double w = op.basis_.vol.w[q] * c.scale * sys.reaction(x, 0.0);
        const double* v = op.basis_.val.data() + static_cast<size_t>(q) * nm;
        for (int i = 0; i < nm; ++i)
          for (int jj = 0; jj < nm; ++jj)
            c.reaction[static_cast<size_t>(i) * nm + jj] += w * v[i] * v[jj];
      }
    }
  }

  std::vector<double> at_left(nm), at_right(nm);
  op.basis_.eval(0.0, 0.0, at_left.data());
  op.basis_.eval(1.0, 0.0, at_right.data());

  const FluxSpec& fs = flux.face(1.0);
  auto add_face = [&](int cm, int cp) {
    SemiDiscreteOperator::FaceOp f;
    f.cm = cm;
    f.cp = cp;
    f.wm = fs.f_mean.scaled(0.5) - fs.f_jump;
    f.wp = fs.f_mean.scaled(0.5) + fs.f_jump;
    f.g_mm.assign(static_cast<size_t>(nm) * nm, 0.0);
    f.g_mp = f.g_mm;
    f.g_pp = f.g_mm;
    accumulate_gram(f.g_mm, at_right, at_right, 1.0, nm);
    accumulate_gram(f.g_mp, at_right, at_left, 1.0, nm);
    accumulate_gram(f.g_pp, at_left, at_left, 1.0, nm);
    op.faces_.push_back(std::move(f));
  };
  for (int j = 1; j < n; ++j) add_face(j - 1, j);
  if (mesh.periodic) {
    add_face(n - 1, 0);
  } else {
    auto add_end = [&](int tag, int cell, double nu, double x, const std::vector<double>& tr) {
      const BoundaryCondition& bc = lookup_bc(bcs, tag);
      SemiDiscreteOperator::BdryOp bd;
      bd.cell = cell;
      if (bc.kind == BcKind::wall) {
        const BoundaryFluxSpec w = build_wall_flux(sys, nu, 0.0);
        bd.w_int = w.m_interior;
        bd.w_data = w.m_data;
      } else {
        const BoundaryFluxSpec w = build_boundary_flux(sys, nu);
        bd.w_int = w.m_interior;
        bd.w_data = w.m_data;
      }
      bd.qx = {x};
      bd.qy = {0.0};
      bd.qw = {1.0};
      bd.trace = tr;
      bd.g.assign(static_cast<size_t>(nm) * nm, 0.0);
      accumulate_gram(bd.g, tr, tr, 1.0, nm);
      bd.data = bc.data;
      op.bdry_.push_back(std::move(bd));
    };
    add_end(tag_xmin, 0, -1.0, mesh.a(), at_left);
    add_end(tag_xmax, n - 1, 1.0, mesh.b(), at_right);
  }

  op.bmask_.assign(n, 0);
  for (const auto& bd : op.bdry_) op.bmask_[bd.cell] = 1;
  op.rho_ = mesh.h_min();
  op.lam_max_ = sys.max_speed(1.0);
  return op;
}

SemiDiscreteOperator assemble(const AugmentedSystem& asys, const Mesh2D& mesh, int degree,
                              const FluxFactory& flux, const BoundaryTable& bcs) {
  const SymmetricSystem& sys = asys.sys;
  if (sys.dim != 2) throw std::invalid_argument("assemble: 2D mesh needs a 2D system");
  if (mesh.cells.empty()) throw std::invalid_argument("assemble: empty mesh");
  check_flux_factory(sys, flux);

  SemiDiscreteOperator op;
  op.sys_ = asys;
  const ElemKind ek = mesh.kind == Mesh2D::CellKind::quad ? ElemKind::quad : ElemKind::tri;
  op.basis_ = make_basis(ek, degree);
  const int nm = op.basis_.n_modes;
  op.kxi_ = stiffness_gram(op.basis_, op.basis_.dxi);
  op.keta_ = stiffness_gram(op.basis_, op.basis_.deta);

  const int n = mesh.n_cells();
  op.cells_.resize(n);
  for (int j = 0; j < n; ++j) {
    const Cell2D& cell = mesh.cells[j];
    SemiDiscreteOperator::CellOp& c = op.cells_[j];
    const auto& ji = cell.jac_inv;
    c.c1 = (sys.B1.scaled(ji[0][0]) + sys.B2.scaled(ji[0][1])).scaled(cell.detjac);
    c.c2 = (sys.B1.scaled(ji[1][0]) + sys.B2.scaled(ji[1][1])).scaled(cell.detjac);
    c.region = cell.region;
    c.scale = cell.detjac;
    if (sys.reaction) {
      c.reaction.assign(static_cast<size_t>(nm) * nm, 0.0);
      const int nq = op.basis_.vol.size();
      for (int q = 0; q < nq; ++q) {
        const auto p = cell.to_physical(op.basis_.vol.x[q], op.basis_.vol.y[q]);
        const double w = op.basis_.vol.w[q] * cell.detjac * sys.reaction(p[0], p[1]);
        const double* v = op.basis_.val.data() + static_cast<size_t>(q) * nm;
        for (int i = 0; i < nm; ++i)
          for (int jj = 0; jj < nm; ++jj)
            c.reaction[static_cast<size_t>(i) * nm + jj] += w * v[i] * v[jj];
      }
    }
  }

  const QuadratureRule rule = gauss_legendre_01(degree + 3);
  const int nq = rule.size();
  std::vector<double> tm(nm), tp(nm);

  for (const Face2D& face : mesh.faces) {
    if (face.right >= 0) {
      const FluxSpec& fs = flux.face(face.normal[0], face.normal[1]);
      SemiDiscreteOperator::FaceOp f;
      f.cm = face.left;
      f.cp = face.right;
      f.wm = fs.f_mean.scaled(0.5) - fs.f_jump;
      f.wp = fs.f_mean.scaled(0.5) + fs.f_jump;
      f.g_mm.assign(static_cast<size_t>(nm) * nm, 0.0);
      f.g_mp = f.g_mm;
      f.g_pp = f.g_mm;
      for (int q = 0; q < nq; ++q) {
        const double tau = rule.x[q];
        const double x = face.p0[0] + tau * (face.p1[0] - face.p0[0]);
        const double y = face.p0[1] + tau * (face.p1[1] - face.p0[1]);
        const auto rm = mesh.cells[face.left].to_reference(x, y);
        const auto rp =
            mesh.cells[face.right].to_reference(x + face.right_shift[0], y + face.right_shift[1]);
        op.basis_.eval(rm[0], rm[1], tm.data());
        op.basis_.eval(rp[0], rp[1], tp.data());
        const double w = rule.w[q] * face.length;
        accumulate_gram(f.g_mm, tm, tm, w, nm);
        accumulate_gram(f.g_mp, tm, tp, w, nm);
        accumulate_gram(f.g_pp, tp, tp, w, nm);
      }
      op.faces_.push_back(std::move(f));
    } else {
      const double sgn = face.left_is_minus ? 1.0 : -1.0;
      const double nux = sgn * face.normal[0], nuy = sgn * face.normal[1];
      const BoundaryCondition& bc = lookup_bc(bcs, face.tag);
      SemiDiscreteOperator::BdryOp bd;
      bd.cell = face.left;
      if (bc.kind == BcKind::wall) {
        const BoundaryFluxSpec w = build_wall_flux(sys, nux, nuy);
        bd.w_int = w.m_interior;
        bd.w_data = w.m_data;
      } else {
        const BoundaryFluxSpec w = build_boundary_flux(sys, nux, nuy);
        bd.w_int = w.m_interior;
        bd.w_data = w.m_data;
      }
      bd.g.assign(static_cast<size_t>(nm) * nm, 0.0);
      bd.trace.resize(static_cast<size_t>(nq) * nm);
      bd.qx.resize(nq);
      bd.qy.resize(nq);
      bd.qw.resize(nq);
      for (int q = 0; q < nq; ++q) {
        const double tau = rule.x[q];
        const double x = face.p0[0] + tau * (face.p1[0] - face.p0[0]);
        const double y = face.p0[1] + tau * (face.p1[1] - face.p0[1]);
        const auto r = mesh.cells[face.left].to_reference(x, y);
        op.basis_.eval(r[0], r[1], tm.data());
        std::copy(tm.begin(), tm.end(), bd.trace.begin() + static_cast<size_t>(q) * nm);
        bd.qx[q] = x;
        bd.qy[q] = y;
        bd.qw[q] = rule.w[q] * face.length;
        accumulate_gram(bd.g, tm, tm, bd.qw[q], nm);
      }
      bd.data = bc.data;
      op.bdry_.push_back(std::move(bd));
    }
  }

  op.bmask_.assign(n, 0);
  for (const auto& bd : op.bdry_) op.bmask_[bd.cell] = 1;
  op.rho_ = mesh.rho;
  double lam = 0.0;
  for (const Face2D& face : mesh.faces)
    lam = std::max(lam, sys.max_speed(face.normal[0], face.normal[1]));
  op.lam_max_ = lam;
  return op;
}

SemiDiscreteOperator assemble(const AugmentedSystem& sys, const Mesh1D& mesh, int degree,
                              FluxKind kind, const BoundaryTable& bcs) {
  return assemble(sys, mesh, degree, FluxFactory(sys.sys, kind), bcs);
}

SemiDiscreteOperator assemble(const AugmentedSystem& sys, const Mesh2D& mesh, int degree,
                              FluxKind kind, const BoundaryTable& bcs) {
  return assemble(sys, mesh, degree, FluxFactory(sys.sys, kind), bcs);
}

DGState project_initial(const ExactSolution& u0, const Mesh1D& mesh, int degree, double t) {
  const ReferenceBasis basis = make_basis(ElemKind::interval, degree, 2 * degree + 6);
  const int nm = basis.n_modes, nq = basis.vol.size();
  DGState s = DGState::zeros(mesh.n_cells(), u0.m, nm);
  std::vector<double> vals(u0.m);
  for (int j = 0; j < mesh.n_cells(); ++j) {
    for (int q = 0; q < nq; ++q) {
      const double x = mesh.nodes[j] + basis.vol.x[q] * mesh.length(j);
      u0.eval(x, 0.0, t, vals.data());
      const double* v = basis.val.data() + static_cast<size_t>(q) * nm;
      for (int a = 0; a < u0.m; ++a) {
        double* c = s.cell_comp(j, a);
        const double va = basis.vol.w[q] * vals[a];
        for (int i = 0; i < nm; ++i) c[i] += va * v[i];
      }
    }
  }
  return s;
}

DGState project_initial(const ExactSolution& u0, const Mesh2D& mesh, int degree, double t) {
  const ElemKind ek = mesh.kind == Mesh2D::CellKind::quad ? ElemKind::quad : ElemKind::tri;
  const ReferenceBasis basis = make_basis(ek, degree, 2 * degree + 6);
  const int nm = basis.n_modes, nq = basis.vol.size();
  DGState s = DGState::zeros(mesh.n_cells(), u0.m, nm);
  std::vector<double> vals(u0.m);
  for (int j = 0; j < mesh.n_cells(); ++j) {
    const Cell2D& cell = mesh.cells[j];
    for (int q = 0; q < nq; ++q) {
      const auto p = cell.to_physical(basis.vol.x[q], basis.vol.y[q]);
      u0.eval(p[0], p[1], t, vals.data());
      const double* v = basis.val.data() + static_cast<size_t>(q) * nm;
      for (int a = 0; a < u0.m; ++a) {
        double* c = s.cell_comp(j, a);
        const double va = basis.vol.w[q] * vals[a];
        for (int i = 0; i < nm; ++i) c[i] += va * v[i];
      }
    }
  }
  return s;
}

}  // namespace ecdg
