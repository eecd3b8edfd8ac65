#include "ecdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ecdg/algebra.hpp"

namespace ecdg {

double Mesh1D::h_max() const {
  double h = 0.0;
  for (int j = 0; j < n_cells(); ++j) h = std::max(h, length(j));
  return h;
}

double Mesh1D::h_min() const {
  double h = length(0);
  for (int j = 1; j < n_cells(); ++j) h = std::min(h, length(j));
  return h;
}

void Mesh1D::validate() const {
  if (nodes.size() < 2) throw std::invalid_argument("Mesh1D: need at least one cell");
  for (size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1])) throw std::invalid_argument("Mesh1D: nodes not strictly ascending");
  if (region.size() != static_cast<size_t>(n_cells())) throw std::invalid_argument("Mesh1D: region size mismatch");
}

Mesh1D make_uniform_1d(int n, double a, double b, bool periodic) {
  if (n < 1) throw std::invalid_argument("make_uniform_1d: need n >= 1");
  if (!(b > a)) throw std::invalid_argument("make_uniform_1d: need b > a");
  Mesh1D m;
  m.nodes.resize(n + 1);
  for (int i = 0; i <= n; ++i) m.nodes[i] = a + (b - a) * static_cast<double>(i) / n;
  m.nodes[0] = a;
  m.nodes[n] = b;
  m.region.assign(n, 0);
  m.periodic = periodic;
  return m;
}

Mesh1D perturb_1d(const Mesh1D& m, double fraction, std::uint64_t seed) {
  if (fraction < 0.0 || fraction >= 0.5)
    throw std::invalid_argument("perturb_1d: fraction must lie in [0, 0.5)");
  m.validate();
  Mesh1D out = m;
  const int n = m.n_cells();
  const double h = (m.b() - m.a()) / n;
  Rng rng(seed);
  for (int i = 1; i < n; ++i) out.nodes[i] = m.nodes[i] + fraction * h * rng.uniform(-1.0, 1.0);
  out.validate();
  return out;
}

int Mesh2D::n_interior_faces() const {
  int c = 0;
  for (const auto& f : faces)
    if (f.right >= 0) ++c;
  return c;
}

namespace {

constexpr double kOrientTol = 1e-13;

void finish_quad_cell(Cell2D& c, const std::array<double, 2>& lo, double dx, double dy) {
  c.origin = lo;
  c.jac = {{{dx, 0.0}, {0.0, dy}}};
  c.jac_inv = {{{1.0 / dx, 0.0}, {0.0, 1.0 / dy}}};
  c.detjac = dx * dy;
  c.measure = dx * dy;
  c.inradius = 0.5 * std::min(dx, dy);
  c.diameter = std::hypot(dx, dy);
}

void finish_tri_cell(Cell2D& c, const std::array<double, 2>& a, const std::array<double, 2>& b,
                     const std::array<double, 2>& d) {
  const double j00 = b[0] - a[0], j10 = b[1] - a[1];
  const double j01 = d[0] - a[0], j11 = d[1] - a[1];
  const double det = j00 * j11 - j01 * j10;
  c.origin = a;
  c.jac = {{{j00, j01}, {j10, j11}}};
  c.jac_inv = {{{j11 / det, -j01 / det}, {-j10 / det, j00 / det}}};
  c.detjac = det;
  c.measure = 0.5 * det;
  const double e0 = std::hypot(j00, j10);
  const double e1 = std::hypot(d[0] - b[0], d[1] - b[1]);
  const double e2 = std::hypot(j01, j11);
  c.inradius = det / (e0 + e1 + e2);  // 2*area / perimeter
  c.diameter = std::max({e0, e1, e2});
}

void finish_mesh_metrics(Mesh2D& m) {
  m.h = 0.0;
  m.rho = m.cells.empty() ? 0.0 : m.cells.front().inradius;
  for (const auto& c : m.cells) {
    m.h = std::max(m.h, c.diameter);
    m.rho = std::min(m.rho, c.inradius);
  }
  m.gamma = m.rho > 0.0 ? m.h / m.rho : 0.0;
}

/// Applies the reference-vector orientation rule to a face whose normal
/// currently points out of face.left. Returns true when the sides were
/// swapped (interior) or the owner sits on the plus side (boundary).
bool orient_face(Face2D& f) {
  const double dot = f.normal[0] + f.normal[1];
  bool flip = false;
  if (dot < -kOrientTol)
    flip = true;
  else if (std::abs(dot) <= kOrientTol)
    flip = f.normal[0] < 0.0;
  if (flip) {
    f.normal[0] = -f.normal[0];
    f.normal[1] = -f.normal[1];
    if (f.right >= 0) {
      std::swap(f.left, f.right);
      // Move the endpoints into the new minus cell's frame and invert the
      // shift so plus-side evaluation still lands in the old frame.
      f.p0[0] += f.right_shift[0];
      f.p0[1] += f.right_shift[1];
      f.p1[0] += f.right_shift[0];
      f.p1[1] += f.right_shift[1];
      f.right_shift[0] = -f.right_shift[0];
      f.right_shift[1] = -f.right_shift[1];
    } else {
      f.left_is_minus = false;
    }
  }
  return flip;
}

int classify_boundary_tag(const Face2D& f, const Mesh2D& m, double tol) {
  const double mx = 0.5 * (f.p0[0] + f.p1[0]);
  const double my = 0.5 * (f.p0[1] + f.p1[1]);
  const bool vertical = std::abs(f.p0[0] - f.p1[0]) <= tol;
  const bool horizontal = std::abs(f.p0[1] - f.p1[1]) <= tol;
  if (vertical && std::abs(mx - m.xmin) <= tol) return tag_xmin;
  if (vertical && std::abs(mx - m.xmax) <= tol) return tag_xmax;
  if (horizontal && std::abs(my - m.ymin) <= tol) return tag_ymin;
  if (horizontal && std::abs(my - m.ymax) <= tol) return tag_ymax;
  return tag_other;
}

}  // namespace

Mesh2D make_cartesian_2d(int nx, int ny, bool periodic, double perturb, std::uint64_t seed, double ax, double bx,
                         double ay, double by) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("make_cartesian_2d: need nx, ny >= 1");
  if (!(bx > ax) || !(by > ay)) throw std::invalid_argument("make_cartesian_2d: empty extents");
  Mesh1D gx = make_uniform_1d(nx, ax, bx, periodic);
  Mesh1D gy = make_uniform_1d(ny, ay, by, periodic);
  if (perturb > 0.0) {
    Rng rng(seed);
    const double hx = (bx - ax) / nx, hy = (by - ay) / ny;
    for (int i = 1; i < nx; ++i) gx.nodes[i] += perturb * hx * rng.uniform(-1.0, 1.0);
    for (int j = 1; j < ny; ++j) gy.nodes[j] += perturb * hy * rng.uniform(-1.0, 1.0);
    gx.validate();
    gy.validate();
  }

  Mesh2D m;
  m.kind = Mesh2D::CellKind::quad;
  m.periodic = periodic;
  m.xmin = ax;
  m.xmax = bx;
  m.ymin = ay;
  m.ymax = by;
  m.vertices.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.vertices.push_back({gx.nodes[i], gy.nodes[j]});
  const auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };

  m.cells.resize(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Cell2D& c = m.cells[static_cast<size_t>(j) * nx + i];
      c.nv = 4;
      c.v = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)};
      finish_quad_cell(c, {gx.nodes[i], gy.nodes[j]}, gx.nodes[i + 1] - gx.nodes[i], gy.nodes[j + 1] - gy.nodes[j]);
    }
  const auto cid = [nx](int i, int j) { return j * nx + i; };

  // Vertical faces, normal (1,0).
  for (int j = 0; j < ny; ++j) {
    for (int i = 1; i < nx; ++i) {
      Face2D f;
      f.left = cid(i - 1, j);
      f.right = cid(i, j);
      f.normal = {1.0, 0.0};
      f.p0 = {gx.nodes[i], gy.nodes[j]};
      f.p1 = {gx.nodes[i], gy.nodes[j + 1]};
      f.length = gy.nodes[j + 1] - gy.nodes[j];
      m.faces.push_back(f);
    }
    Face2D f;
    f.normal = {1.0, 0.0};
    f.p0 = {bx, gy.nodes[j]};
    f.p1 = {bx, gy.nodes[j + 1]};
    f.length = gy.nodes[j + 1] - gy.nodes[j];
    if (periodic) {
      f.left = cid(nx - 1, j);
      f.right = cid(0, j);
      f.right_shift = {ax - bx, 0.0};
      m.faces.push_back(f);
    } else {
      f.left = cid(nx - 1, j);
      f.tag = tag_xmax;
      m.faces.push_back(f);
      Face2D g;
      g.normal = {1.0, 0.0};
      g.left = cid(0, j);
      g.left_is_minus = false;  // outward normal of the owner is (-1,0)
      g.tag = tag_xmin;
      g.p0 = {ax, gy.nodes[j]};
      g.p1 = {ax, gy.nodes[j + 1]};
      g.length = gy.nodes[j + 1] - gy.nodes[j];
      m.faces.push_back(g);
    }
  }
  // Horizontal faces, normal (0,1).
  for (int i = 0; i < nx; ++i) {
    for (int j = 1; j < ny; ++j) {
      Face2D f;
      f.left = cid(i, j - 1);
      f.right = cid(i, j);
      f.normal = {0.0, 1.0};
      f.p0 = {gx.nodes[i], gy.nodes[j]};
      f.p1 = {gx.nodes[i + 1], gy.nodes[j]};
      f.length = gx.nodes[i + 1] - gx.nodes[i];
      m.faces.push_back(f);
    }
    Face2D f;
    f.normal = {0.0, 1.0};
    f.p0 = {gx.nodes[i], by};
    f.p1 = {gx.nodes[i + 1], by};
    f.length = gx.nodes[i + 1] - gx.nodes[i];
    if (periodic) {
      f.left = cid(i, ny - 1);
      f.right = cid(i, 0);
      f.right_shift = {0.0, ay - by};
      m.faces.push_back(f);
    } else {
      f.left = cid(i, ny - 1);
      f.tag = tag_ymax;
      m.faces.push_back(f);
      Face2D g;
      g.normal = {0.0, 1.0};
      g.left = cid(i, 0);
      g.left_is_minus = false;
      g.tag = tag_ymin;
      g.p0 = {gx.nodes[i], ay};
      g.p1 = {gx.nodes[i + 1], ay};
      g.length = gx.nodes[i + 1] - gx.nodes[i];
      m.faces.push_back(g);
    }
  }
  finish_mesh_metrics(m);
  return m;
}

namespace {

Mesh2D build_triangular(std::vector<std::array<double, 2>> vertices, std::vector<std::array<int, 3>> tris,
                        bool periodic) {
  const int nv = static_cast<int>(vertices.size());
  const int nt = static_cast<int>(tris.size());
  if (nv < 3 || nt < 1) throw std::invalid_argument("triangular mesh: too few vertices or triangles");

  Mesh2D m;
  m.kind = Mesh2D::CellKind::tri;
  m.periodic = periodic;
  m.vertices = std::move(vertices);
  m.xmin = m.xmax = m.vertices[0][0];
  m.ymin = m.ymax = m.vertices[0][1];
  for (const auto& v : m.vertices) {
    m.xmin = std::min(m.xmin, v[0]);
    m.xmax = std::max(m.xmax, v[0]);
    m.ymin = std::min(m.ymin, v[1]);
    m.ymax = std::max(m.ymax, v[1]);
  }
  const double bbox = std::max(m.xmax - m.xmin, m.ymax - m.ymin);

  std::vector<char> used(nv, 0);
  m.cells.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = tris[t];
    for (int e = 0; e < 3; ++e) {
      if (tri[e] < 0 || tri[e] >= nv) throw std::invalid_argument("triangular mesh: vertex index out of range");
      used[tri[e]] = 1;
    }
    Cell2D& c = m.cells[t];
    c.nv = 3;
    c.v = {tri[0], tri[1], tri[2], -1};
    finish_tri_cell(c, m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]);
    if (!(c.detjac > 1e-14 * bbox * bbox))
      throw std::invalid_argument("triangular mesh: zero-area or clockwise triangle");
  }
  for (int i = 0; i < nv; ++i)
    if (!used[i]) throw std::invalid_argument("triangular mesh: dangling vertex (referenced by no triangle)");

  // Edge map: sorted vertex pair -> adjacent (cell, local edge) entries.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
  for (int t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e) {
      const int a = tris[t][e], b = tris[t][(e + 1) % 3];
      edges[{std::min(a, b), std::max(a, b)}].push_back({t, e});
    }

  for (const auto& [key, adj] : edges) {
    if (adj.size() > 2) throw std::invalid_argument("triangular mesh: non-conforming edge shared by >2 triangles");
    const auto [t0, e0] = adj.front();
    const int a = tris[t0][e0], b = tris[t0][(e0 + 1) % 3];
    Face2D f;
    f.left = t0;
    f.p0 = m.vertices[a];
    f.p1 = m.vertices[b];
    const double dx = f.p1[0] - f.p0[0], dy = f.p1[1] - f.p0[1];
    f.length = std::hypot(dx, dy);
    // Counterclockwise cells keep the interior to the left of p0 -> p1, so
    // the outward normal of the owning triangle is (dy, -dx) normalized.
    f.normal = {dy / f.length, -dx / f.length};
    if (adj.size() == 2) f.right = adj.back().first;
    orient_face(f);
    if (f.right < 0) f.tag = classify_boundary_tag(f, m, 1e-10);
    m.faces.push_back(f);
  }

  if (periodic) {
    // Collect boundary faces per side and match them across the box.
    std::vector<size_t> sides[4];
    std::vector<Face2D> kept;
    std::vector<size_t> boundary_idx;
    for (size_t i = 0; i < m.faces.size(); ++i) {
      if (m.faces[i].right >= 0) continue;
      const int tag = m.faces[i].tag;
      if (tag == tag_other)
        throw std::invalid_argument("triangular mesh: periodic requested but a boundary face is off the box sides");
      sides[tag].push_back(i);
    }
    auto match_pairs = [&](int lo_tag, int hi_tag, double shift_x, double shift_y) {
      auto& lo = sides[lo_tag];
      auto& hi = sides[hi_tag];
      if (lo.size() != hi.size())
        throw std::invalid_argument("triangular mesh: periodic side face counts differ");
      for (size_t ih : hi) {
        Face2D& fh = m.faces[ih];
        bool found = false;
        for (size_t il : lo) {
          const Face2D& fl = m.faces[il];
          const auto close = [&](const std::array<double, 2>& p, const std::array<double, 2>& q) {
            return std::abs(p[0] + shift_x - q[0]) <= 1e-10 && std::abs(p[1] + shift_y - q[1]) <= 1e-10;
          };
          const bool direct = close(fh.p0, fl.p0) && close(fh.p1, fl.p1);
          const bool swapped = close(fh.p0, fl.p1) && close(fh.p1, fl.p0);
          if (direct || swapped) {
            // The max-side owner keeps the minus role; its outward normal
            // already satisfies the orientation rule on box sides.
            fh.right = fl.left;
            fh.right_shift = {shift_x, shift_y};
            fh.tag = -1;
            fh.left_is_minus = true;
            found = true;
            break;
          }
        }
        if (!found) throw std::invalid_argument("triangular mesh: unmatched periodic boundary face");
      }
    };
    match_pairs(tag_xmin, tag_xmax, m.xmin - m.xmax, 0.0);
    match_pairs(tag_ymin, tag_ymax, 0.0, m.ymin - m.ymax);
    for (size_t i = 0; i < m.faces.size(); ++i) {
      const int tag = m.faces[i].tag;
      if (m.faces[i].right >= 0 || (tag != tag_xmin && tag != tag_ymin)) {
        kept.push_back(m.faces[i]);
      }
    }
    m.faces = std::move(kept);
  }

  finish_mesh_metrics(m);
  return m;
}

}  // namespace

Mesh2D load_triangular_2d(std::istream& in, bool periodic) {
  std::string tok;
  int nv = 0;
  if (!(in >> tok >> nv) || tok != "V" || nv < 3)
    throw std::invalid_argument("triangular mesh: expected header 'V <count>'");
  std::vector<std::array<double, 2>> vertices(nv);
  for (int i = 0; i < nv; ++i)
    if (!(in >> vertices[i][0] >> vertices[i][1]))
      throw std::invalid_argument("triangular mesh: truncated vertex list");
  int nt = 0;
  if (!(in >> tok >> nt) || tok != "T" || nt < 1)
    throw std::invalid_argument("triangular mesh: expected header 'T <count>'");
  std::vector<std::array<int, 3>> tris(nt);
  for (int t = 0; t < nt; ++t)
    if (!(in >> tris[t][0] >> tris[t][1] >> tris[t][2]))
      throw std::invalid_argument("triangular mesh: truncated triangle list");
  return build_triangular(std::move(vertices), std::move(tris), periodic);
}

Mesh2D load_triangular_2d_file(const std::string& path, bool periodic) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("triangular mesh: cannot open " + path);
  return load_triangular_2d(in, periodic);
}

std::string write_triangular_2d(const Mesh2D& mesh) {
  if (mesh.kind != Mesh2D::CellKind::tri)
    throw std::invalid_argument("write_triangular_2d: mesh is not triangular");
  std::ostringstream out;
  out.precision(17);
  out << "V " << mesh.vertices.size() << "\n";
  for (const auto& v : mesh.vertices) out << v[0] << " " << v[1] << "\n";
  out << "T " << mesh.cells.size() << "\n";
  for (const auto& c : mesh.cells) out << c.v[0] << " " << c.v[1] << " " << c.v[2] << "\n";
  return out.str();
}

Mesh2D generate_triangular_2d(int n, double perturb, std::uint64_t seed, bool periodic) {
  if (n < 2) throw std::invalid_argument("generate_triangular_2d: need n >= 2");
  if (perturb < 0.0 || perturb > 0.25)
    throw std::invalid_argument("generate_triangular_2d: perturb must lie in [0, 0.25]");
  Rng rng(seed);
  const double h = 1.0 / n;
  std::vector<std::array<double, 2>> vertices(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      double x = i * h, y = j * h;
      if (i > 0 && i < n && j > 0 && j < n) {
        x += perturb * h * rng.uniform(-1.0, 1.0);
        y += perturb * h * rng.uniform(-1.0, 1.0);
      }
      vertices[static_cast<size_t>(j) * (n + 1) + i] = {x, y};
    }
  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<size_t>(2) * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
      if (rng.uniform01() < 0.5) {
        tris.push_back({v00, v10, v11});
        tris.push_back({v00, v11, v01});
      } else {
        tris.push_back({v00, v10, v01});
        tris.push_back({v10, v11, v01});
      }
    }
  return build_triangular(std::move(vertices), std::move(tris), periodic);
}

}  // namespace ecdg
