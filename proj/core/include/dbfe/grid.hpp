#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dbfe {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Uniform node-centered 2D grid including boundary nodes.
/// Node (i,j) sits at (x0 + i*h, y0 + j*h).
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  /// n x n nodes spanning [-1,1]^2 (n-1 cells of width 2/(n-1)).
  static Grid2D unit_square(int n) {
    if (n < 3) throw std::invalid_argument("Grid2D: need at least 3 nodes per side");
    return Grid2D{n, n, 2.0 / (n - 1), -1.0, -1.0};
  }

  double x(int i) const { return x0 + i * h; }
  double y(int j) const { return y0 + j * h; }
  int num_nodes() const { return nx * ny; }
  int idx(int i, int j) const { return j * nx + i; }

  /// Trapezoidal node weight: boundary nodes own half cells, corners a
  /// quarter. This is the discrete measure used for every inner product,
  /// mass and L1 norm in the project; it is what makes the flux-form
  /// diffusion operator conservative to round-off.
  double weight(int i, int j) const {
    double w = h * h;
    if (i == 0 || i == nx - 1) w *= 0.5;
    if (j == 0 || j == ny - 1) w *= 0.5;
    return w;
  }

  int nearest_i(double xq) const { return clamp_index(static_cast<int>(std::lround((xq - x0) / h)), nx); }
  int nearest_j(double yq) const { return clamp_index(static_cast<int>(std::lround((yq - y0) / h)), ny); }

  bool operator==(const Grid2D&) const = default;

 private:
  static int clamp_index(int k, int n) { return k < 0 ? 0 : (k >= n ? n - 1 : k); }
};

/// Scalar field sampled on a Grid2D; the unit of all PDE state.
/// Values are stored row-major by grid row: flat index j*nx + i.
class GridField {
 public:
  GridField() = default;
  explicit GridField(const Grid2D& g, double fill = 0.0)
      : grid_(g), values_(static_cast<std::size_t>(g.num_nodes()), fill) {}

  const Grid2D& grid() const { return grid_; }

  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(grid_.idx(i, j))]; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(grid_.idx(i, j))]; }

  std::vector<double>& data() { return values_; }
  const std::vector<double>& data() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// this += a*x (grids must match)
  void axpy(double a, const GridField& x);
  void scale(double a);
  void fill(double v);

  template <class F>
  static GridField from_function(const Grid2D& g, F&& f) {
    GridField out(g);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) out(i, j) = f(g.x(i), g.y(j));
    return out;
  }

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

void require_same_grid(const GridField& a, const GridField& b, const char* what);

/// Weighted discrete inner product <a,b> = sum w_ij a_ij b_ij.
double inner(const GridField& a, const GridField& b);

/// Weighted integral sum w_ij a_ij.
double mass(const GridField& a);

double l2_norm(const GridField& a);
double linf_norm(const GridField& a);
double max_value(const GridField& a);
double min_value(const GridField& a);
bool all_finite(const GridField& a);

/// Grid-weighted L1 norm of (a - b).
double l1_error(const GridField& a, const GridField& b);

}  // namespace dbfe
