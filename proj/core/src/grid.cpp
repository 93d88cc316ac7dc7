#include "dbfe/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dbfe {

void require_same_grid(const GridField& a, const GridField& b, const char* what) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

void GridField::axpy(double a, const GridField& x) {
  require_same_grid(*this, x, "GridField::axpy");
  const auto& xs = x.data();
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += a * xs[n];
}

void GridField::scale(double a) {
  for (auto& v : values_) v *= a;
}

void GridField::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

double inner(const GridField& a, const GridField& b) {
  require_same_grid(a, b, "inner");
  const Grid2D& g = a.grid();
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double wy = (j == 0 || j == g.ny - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      const double wx = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
      row += wx * a(i, j) * b(i, j);
    }
    acc += wy * row;
  }
  return acc * g.h * g.h;
}

double mass(const GridField& a) {
  const Grid2D& g = a.grid();
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double wy = (j == 0 || j == g.ny - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      const double wx = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
      row += wx * a(i, j);
    }
    acc += wy * row;
  }
  return acc * g.h * g.h;
}

double l2_norm(const GridField& a) { return std::sqrt(inner(a, a)); }

double linf_norm(const GridField& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_value(const GridField& a) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : a.data()) m = std::max(m, v);
  return m;
}

double min_value(const GridField& a) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : a.data()) m = std::min(m, v);
  return m;
}

bool all_finite(const GridField& a) {
  for (double v : a.data())
    if (!std::isfinite(v)) return false;
  return true;
}

double l1_error(const GridField& a, const GridField& b) {
  require_same_grid(a, b, "l1_error");
  const Grid2D& g = a.grid();
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double wy = (j == 0 || j == g.ny - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      const double wx = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
      row += wx * std::abs(a(i, j) - b(i, j));
    }
    acc += wy * row;
  }
  return acc * g.h * g.h;
}

}  // namespace dbfe
