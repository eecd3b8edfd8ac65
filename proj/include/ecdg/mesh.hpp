#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ecdg {

/// 1D mesh given by ascending node coordinates; cells carry a region id so
/// piecewise-constant coefficients can be attached per cell.
struct Mesh1D {
  std::vector<double> nodes;  ///< size n_cells()+1, strictly ascending
  std::vector<int> region;    ///< per cell, defaults to 0
  bool periodic = true;

  int n_cells() const { return static_cast<int>(nodes.size()) - 1; }
  double a() const { return nodes.front(); }
  double b() const { return nodes.back(); }
  double length(int j) const { return nodes[j + 1] - nodes[j]; }
  double h_max() const;
  double h_min() const;
  void validate() const;
};

Mesh1D make_uniform_1d(int n, double a, double b, bool periodic);

/// Shifts each interior node by an independent uniform sample in
/// [-fraction*h, fraction*h] where h is the uniform spacing of the input
/// mesh. fraction must stay below 0.5 so cell lengths remain positive.
Mesh1D perturb_1d(const Mesh1D& m, double fraction, std::uint64_t seed);

/// Boundary tags; interior faces carry tag -1.
enum BoundaryTag : int { tag_xmin = 0, tag_xmax = 1, tag_ymin = 2, tag_ymax = 3, tag_other = 4 };

struct Cell2D {
  int nv = 0;
  std::array<int, 4> v{{-1, -1, -1, -1}};
  int region = 0;
  std::array<double, 2> origin{};                 ///< image of the reference origin
  std::array<std::array<double, 2>, 2> jac{};     ///< affine map Jacobian (column d/dxi, d/deta)
  std::array<std::array<double, 2>, 2> jac_inv{};
  double detjac = 0.0;   ///< dx*dy (quad) or twice the area (tri)
  double measure = 0.0;  ///< physical area
  double inradius = 0.0;
  double diameter = 0.0;

  std::array<double, 2> to_physical(double xi, double eta) const {
    return {origin[0] + jac[0][0] * xi + jac[0][1] * eta, origin[1] + jac[1][0] * xi + jac[1][1] * eta};
  }
  std::array<double, 2> to_reference(double x, double y) const {
    const double dx = x - origin[0], dy = y - origin[1];
    return {jac_inv[0][0] * dx + jac_inv[0][1] * dy, jac_inv[1][0] * dx + jac_inv[1][1] * dy};
  }
};

/// A face stores the minus-side cell first and a unit normal oriented so
/// that (1,1) . n >= 0, ties broken by n_x > 0. For interior faces the
/// normal points out of the minus cell. Periodic wrap faces carry the
/// translation that maps face points into the plus cell's frame.
struct Face2D {
  int left = -1;   ///< minus-side cell (owner for boundary faces)
  int right = -1;  ///< plus-side cell, -1 on the boundary
  std::array<double, 2> normal{};
  double length = 0.0;
  std::array<double, 2> p0{}, p1{};
  std::array<double, 2> right_shift{};  ///< add to points when evaluated from the plus cell
  int tag = -1;
  bool left_is_minus = true;  ///< boundary only: oriented normal points out of the owner
};

struct Mesh2D {
  enum class CellKind { quad, tri };
  CellKind kind = CellKind::quad;
  std::vector<std::array<double, 2>> vertices;
  std::vector<Cell2D> cells;
  std::vector<Face2D> faces;
  bool periodic = false;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  double h = 0;      ///< max cell diameter
  double rho = 0;    ///< min cell inradius
  double gamma = 0;  ///< shape measure h / rho

  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_interior_faces() const;
};

/// Tensor-product mesh of axis-aligned rectangles on [0,1]^2 (or the given
/// extents). perturb > 0 moves the interior grid lines of each axis
/// independently, exactly like perturb_1d.
Mesh2D make_cartesian_2d(int nx, int ny, bool periodic, double perturb = 0.0, std::uint64_t seed = 0,
                         double ax = 0.0, double bx = 1.0, double ay = 0.0, double by = 1.0);

/// Reads the plain-text triangle format:
///   V <nv>
///   <x> <y>          (nv lines)
///   T <nt>
///   <i> <j> <k>      (nt lines, 0-based, counterclockwise)
/// Validates conformity, orientation and vertex usage. With periodic=true,
/// boundary faces are matched across opposite sides of the bounding box by
/// vertex coordinates (tolerance 1e-10).
Mesh2D load_triangular_2d(std::istream& in, bool periodic);
Mesh2D load_triangular_2d_file(const std::string& path, bool periodic);
std::string write_triangular_2d(const Mesh2D& mesh);

/// Deterministic unstructured triangulation of the unit square: an n x n
/// grid with interior vertices jittered by perturb*h and per-square diagonal
/// directions drawn from the seed. Boundary vertices stay on the uniform
/// grid so periodic matching always succeeds.
Mesh2D generate_triangular_2d(int n, double perturb, std::uint64_t seed, bool periodic);

}  // namespace ecdg
