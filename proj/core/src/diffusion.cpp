#include "dbfe/diffusion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dbfe {

GridField source_field(const SourceSpec& src, Vec2 z, const Grid2D& grid) {
  if (!(src.width > 0.0)) throw std::invalid_argument("source_field: width must be positive");
  const double s2 = src.width * src.width;
  const double amp = src.strength / (2.0 * M_PI * s2);
  GridField out(grid);
  for (int j = 0; j < grid.ny; ++j) {
    const double dy = grid.y(j) - z.y;
    for (int i = 0; i < grid.nx; ++i) {
      const double dx = grid.x(i) - z.x;
      out(i, j) = amp * std::exp(-(dx * dx + dy * dy) / (2.0 * s2));
    }
  }
  return out;
}

namespace {

// index of the mirror-ghost neighbour about a boundary node
inline int mirror(int i, int n) {
  if (i < 0) return -i;
  if (i >= n) return 2 * n - 2 - i;
  return i;
}

}  // namespace

void diffusion_apply_into(const GridField& nu, const GridField& u, GridField& out) {
  require_same_grid(nu, u, "diffusion_apply");
  require_same_grid(nu, out, "diffusion_apply");
  const Grid2D& g = nu.grid();

  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (!(nu(i, j) > 0.0))
        throw std::domain_error("diffusion_apply: non-positive diffusivity at node (" +
                                std::to_string(i) + "," + std::to_string(j) + "), value " +
                                std::to_string(nu(i, j)));

  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int j = 0; j < g.ny; ++j) {
    const int js = mirror(j - 1, g.ny);
    const int jn = mirror(j + 1, g.ny);
    for (int i = 0; i < g.nx; ++i) {
      const int iw = mirror(i - 1, g.nx);
      const int ie = mirror(i + 1, g.nx);
      const double uc = u(i, j);
      const double nc = nu(i, j);
      const double fe = 0.5 * (nc + nu(ie, j)) * (u(ie, j) - uc);
      const double fw = 0.5 * (nu(iw, j) + nc) * (uc - u(iw, j));
      const double fn = 0.5 * (nc + nu(i, jn)) * (u(i, jn) - uc);
      const double fs = 0.5 * (nu(i, js) + nc) * (uc - u(i, js));
      out(i, j) = (fe - fw + fn - fs) * inv_h2;
    }
  }
}

GridField diffusion_apply(const GridField& nu, const GridField& u) {
  GridField out(nu.grid());
  diffusion_apply_into(nu, u, out);
  return out;
}

}  // namespace dbfe
