#include "ecdg/flux.hpp"

#include <cmath>
#include <stdexcept>

namespace ecdg {

namespace {

Matrix abs_bn(const Matrix& bn) { return eig_decompose(bn).abs(); }

double spectral_radius(const Matrix& bn) {
  double r = 0.0;
  for (double l : eig_decompose(bn).lambda) r = std::max(r, std::abs(l));
  return r;
}

bool near(double a, double b, double tol = 1e-13) { return std::abs(a - b) <= tol; }

/// Splits a full-doubled system matrix into its leading block; throws if the
/// matrix is not blockdiag(A, -A).
Matrix doubled_base_block(const Matrix& bn) {
  const int m = bn.rows();
  if (m % 2 != 0)
    throw std::invalid_argument("doubling flux: system size is odd, expected a full-doubled system");
  const int h = m / 2;
  Matrix a(h, h);
  const double tol = 1e-13 * std::max(1.0, bn.max_abs());
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      a(i, j) = bn(i, j);
      if (std::abs(bn(i, j + h)) > tol || std::abs(bn(i + h, j)) > tol ||
          std::abs(bn(i + h, j + h) + bn(i, j)) > tol)
        throw std::invalid_argument(
            "doubling flux: matrix is not blockdiag(A, -A); apply the full doubling augmentation first");
    }
  return a;
}

struct AcousticsBackground {
  double k0, rho0, u0, c0;
};

AcousticsBackground acoustics_background_1d(const SymmetricSystem& sys) {
  if (sys.dim != 1 || sys.m != 2 || sys.n_regions() != 1)
    throw std::invalid_argument("alternating flux: expected single-region 1D acoustics (m = 2)");
  const Matrix& b0 = sys.b0();
  const Matrix& b1 = sys.B1;
  if (!near(b1(0, 1), 1.0) || !near(b1(1, 0), 1.0) || !near(b0(0, 1), 0.0))
    throw std::invalid_argument("alternating flux: system does not match the acoustics template");
  AcousticsBackground bg;
  bg.k0 = 1.0 / b0(0, 0);
  bg.rho0 = b0(1, 1);
  bg.u0 = b1(0, 0) * bg.k0;
  bg.c0 = std::sqrt(bg.k0 / bg.rho0);
  if (!near(b1(1, 1), bg.u0 * bg.rho0, 1e-12 * std::max(1.0, b1.max_abs())))
    throw std::invalid_argument("alternating flux: inconsistent background velocity");
  return bg;
}

bool matches_template(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j) - b(i, j)) > tol) return false;
  return true;
}

bool is_zero_background_acoustics_2d(const SymmetricSystem& sys) {
  if (sys.dim != 2 || sys.m != 3 || sys.B2.empty()) return false;
  Matrix b1(3, 3), b2(3, 3);
  b1(0, 1) = b1(1, 0) = 1.0;
  b2(0, 2) = b2(2, 0) = 1.0;
  const double tol = 1e-13 * std::max(1.0, std::max(sys.B1.max_abs(), sys.B2.max_abs()));
  return matches_template(sys.B1, b1, tol) && matches_template(sys.B2, b2, tol);
}

bool is_stress_velocity_2d(const SymmetricSystem& sys) {
  if (sys.dim != 2 || sys.m != 5 || sys.B2.empty()) return false;
  Matrix b1(5, 5), b2(5, 5);
  b1(0, 3) = b1(3, 0) = -1.0;
  b1(2, 4) = b1(4, 2) = -1.0;
  b2(1, 4) = b2(4, 1) = -1.0;
  b2(2, 3) = b2(3, 2) = -1.0;
  const double tol = 1e-13 * std::max(1.0, std::max(sys.B1.max_abs(), sys.B2.max_abs()));
  return matches_template(sys.B1, b1, tol) && matches_template(sys.B2, b2, tol);
}

FluxSpec spec_with_jump(const SymmetricSystem& sys, double nx, double ny, FluxKind kind, Matrix jump) {
  FluxSpec s;
  s.kind = kind;
  s.f_mean = sys.bn(nx, ny);
  s.f_jump = std::move(jump);
  return s;
}

}  // namespace

FluxKind flux_kind_from_string(const std::string& s) {
  if (s == "central") return FluxKind::central;
  if (s == "upwind") return FluxKind::upwind;
  if (s == "lf") return FluxKind::lax_friedrichs;
  if (s == "ec") return FluxKind::energy_conserving;
  if (s == "double") return FluxKind::doubling;
  if (s == "alt") return FluxKind::alternating;
  throw std::invalid_argument("unknown flux kind '" + s + "' (expected ec|double|upwind|lf|central|alt)");
}

std::string to_string(FluxKind k) {
  switch (k) {
    case FluxKind::central: return "central";
    case FluxKind::upwind: return "upwind";
    case FluxKind::lax_friedrichs: return "lf";
    case FluxKind::energy_conserving: return "ec";
    case FluxKind::doubling: return "double";
    case FluxKind::alternating: return "alt";
  }
  throw std::logic_error("unreachable flux kind");
}

void FluxSpec::apply(const double* mean, const double* jump, double* out) const {
  const int m = f_mean.rows();
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += f_mean(i, j) * mean[j] + f_jump(i, j) * jump[j];
    out[i] = s;
  }
}

std::vector<double> FluxSpec::apply(const std::vector<double>& mean, const std::vector<double>& jump) const {
  std::vector<double> out(f_mean.rows());
  apply(mean.data(), jump.data(), out.data());
  return out;
}

FluxSpec build_face_flux(const SymmetricSystem& sys, double nx, double ny, FluxKind kind) {
  const Matrix bn = sys.bn(nx, ny);
  const int m = bn.rows();
  switch (kind) {
    case FluxKind::central:
      return spec_with_jump(sys, nx, ny, kind, Matrix(m, m));
    case FluxKind::upwind:
      return spec_with_jump(sys, nx, ny, kind, abs_bn(bn).scaled(-0.5));
    case FluxKind::lax_friedrichs:
      return spec_with_jump(sys, nx, ny, kind,
                            Matrix::diagonal(std::vector<double>(m, -0.5 * spectral_radius(bn))));
    case FluxKind::energy_conserving: {
      EigenPairing p = eig_decompose(bn);
      if (!p.paired())
        throw std::invalid_argument(
            "energy-conserving flux: spectrum of Bn is unpaired; augment the system first "
            "(full doubling, or 1D partial pairing)");
      return spec_with_jump(sys, nx, ny, kind, pairing_coupler(p));
    }
    case FluxKind::doubling: {
      const Matrix base = doubled_base_block(bn);
      const Matrix ab = abs_bn(base);
      const int h = base.rows();
      Matrix jump(m, m);
      for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
          jump(i, j + h) = 0.5 * ab(i, j);
          jump(i + h, j) = -0.5 * ab(i, j);
        }
      return spec_with_jump(sys, nx, ny, kind, std::move(jump));
    }
    case FluxKind::alternating: {
      if (sys.dim == 1) {
        if (nx < 0.0)
          throw std::invalid_argument("alternating flux: 1D faces are oriented along +x");
        return build_alternating_acoustics_1d(sys, canonical_acoustics_alpha(sys));
      }
      return build_alternating_zero_background_2d(sys, nx, ny);
    }
  }
  throw std::logic_error("unreachable flux kind");
}

FluxSpec build_alternating_acoustics_1d(const SymmetricSystem& sys, double alpha) {
  acoustics_background_1d(sys);
  Matrix jump(2, 2);
  jump(0, 1) = alpha;
  jump(1, 0) = -alpha;
  return spec_with_jump(sys, 1.0, 0.0, FluxKind::alternating, std::move(jump));
}

double canonical_acoustics_alpha(const SymmetricSystem& sys) {
  const AcousticsBackground bg = acoustics_background_1d(sys);
  const double ratio = (bg.u0 * bg.u0) / (bg.c0 * bg.c0);
  if (ratio >= 1.0)
    throw std::invalid_argument("canonical alpha requires a subsonic background (|u0| < c0)");
  return 0.5 * std::sqrt(1.0 - ratio);
}

double supersonic_acoustics_alpha(const SymmetricSystem& sys) {
  const AcousticsBackground bg = acoustics_background_1d(sys);
  const double ratio = (bg.u0 * bg.u0) / (bg.c0 * bg.c0);
  if (ratio <= 1.0)
    throw std::invalid_argument("supersonic alpha requires |u0| > c0");
  return 0.5 * std::sqrt(ratio - 1.0);
}

FluxSpec build_alternating_zero_background_2d(const SymmetricSystem& sys, double nx, double ny) {
  if (sys.dim != 2 || sys.B2.empty())
    throw std::invalid_argument("alternating 2D flux: expected a two-dimensional system");

  Matrix jump(sys.m, sys.m);
  if (sys.m == 3) {
    // p from the minus side, normal velocity from the plus side.
    if (!is_zero_background_acoustics_2d(sys))
      throw std::invalid_argument("alternating 2D flux: acoustics requires a zero background velocity");
    jump(0, 1) = 0.5 * nx;
    jump(0, 2) = 0.5 * ny;
    jump(1, 0) = -0.5 * nx;
    jump(2, 0) = -0.5 * ny;
  } else if (sys.m == 5) {
    // Stresses from the minus side, velocities from the plus side.
    if (!is_stress_velocity_2d(sys))
      throw std::invalid_argument("alternating 2D flux: unrecognized stress-velocity structure");
    jump(0, 3) = -0.5 * nx;
    jump(1, 4) = -0.5 * ny;
    jump(2, 3) = -0.5 * ny;
    jump(2, 4) = -0.5 * nx;
    jump(3, 0) = 0.5 * nx;
    jump(3, 2) = 0.5 * ny;
    jump(4, 1) = 0.5 * ny;
    jump(4, 2) = 0.5 * nx;
  } else {
    throw std::invalid_argument("alternating 2D flux: only acoustics (m = 3) and elastodynamics (m = 5)");
  }
  return spec_with_jump(sys, nx, ny, FluxKind::alternating, std::move(jump));
}

BoundaryFluxSpec build_boundary_flux(const SymmetricSystem& sys, double nx, double ny) {
  EigenPairing p = eig_decompose(sys.bn(nx, ny));
  BoundaryFluxSpec spec;
  spec.bn_pos = p.pos_part();
  spec.bn_neg = p.neg_part();
  spec.m_interior = spec.bn_pos;
  spec.m_data = spec.bn_neg;
  return spec;
}

BoundaryFluxSpec build_wall_flux(const SymmetricSystem& sys, double nx, double ny) {
  if (!is_zero_background_acoustics_2d(sys))
    throw std::invalid_argument("wall flux: implemented for zero-background 2D acoustics only");
  BoundaryFluxSpec spec;
  spec.m_interior = Matrix(3, 3);
  spec.m_interior(1, 0) = nx;
  spec.m_interior(2, 0) = ny;
  spec.m_data = Matrix(3, 3);
  return spec;
}

FluxFactory::FluxFactory(SymmetricSystem sys, FluxKind kind) : sys_(std::move(sys)), kind_(kind) {}

FluxFactory::FluxFactory(SymmetricSystem sys, FluxKind kind, double alpha)
    : sys_(std::move(sys)), kind_(kind), alpha_(alpha), has_alpha_(true) {}

FluxFactory FluxFactory::with_custom(SymmetricSystem sys, Custom builder) {
  FluxFactory f(std::move(sys));
  f.custom_ = std::move(builder);
  return f;
}

const FluxSpec& FluxFactory::face(double nx, double ny) const {
  const auto key = std::make_pair(std::llround(nx * 1e12), std::llround(ny * 1e12));
  std::lock_guard<std::mutex> lock(*mu_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  FluxSpec spec;
  if (custom_) {
    spec = custom_(sys_, nx, ny);
  } else if (kind_ == FluxKind::alternating && sys_.dim == 1 && has_alpha_) {
    spec = build_alternating_acoustics_1d(sys_, alpha_);
  } else {
    spec = build_face_flux(sys_, nx, ny, kind_);
  }
  return cache_.emplace(key, std::move(spec)).first->second;
}

}  // namespace ecdg
