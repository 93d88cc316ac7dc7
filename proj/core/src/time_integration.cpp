#include "dbfe/time_integration.hpp"

#include <algorithm>
#include <cmath>

namespace dbfe {

bool divides_time(double dt, double value) {
  const double q = value / dt;
  return std::abs(q - std::round(q)) * dt <= 1e-12;
}

std::vector<GridField> solve_deterministic(const GridField& nu, const SourceSpec& src, Vec2 z,
                                           double t_end, double dt,
                                           const std::vector<double>& record_times) {
  if (t_end < 0.0) throw std::invalid_argument("solve_deterministic: t_end must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("solve_deterministic: dt must be positive");
  for (double tr : record_times)
    if (!divides_time(dt, tr))
      throw std::invalid_argument("solve_deterministic: record time not aligned to dt");
  if (!divides_time(dt, src.t_on) || !divides_time(dt, src.t_off))
    throw std::invalid_argument("solve_deterministic: source window not aligned to dt");

  const Grid2D& grid = nu.grid();
  GridField u(grid, 0.0);
  const GridField source = source_field(src, z, grid);

  std::vector<GridField> snapshots;
  auto record_if_due = [&](double t) {
    for (double tr : record_times)
      if (std::abs(t - tr) <= 1e-9) snapshots.push_back(u);
  };
  record_if_due(0.0);

  const long n_steps = std::lround(t_end / dt);
  double t = 0.0;
  for (long step = 0; step < n_steps; ++step) {
    t = static_cast<double>(step) * dt;
    const bool source_active = (t >= src.t_on - 1e-12) && (t < src.t_off - 1e-12);
    auto rhs = [&](const GridField& state, double) {
      GridField d = diffusion_apply(nu, state);
      if (source_active) d.axpy(1.0, source);
      return d;
    };
    u = rk4_step(u, rhs, t, dt);
    record_if_due(static_cast<double>(step + 1) * dt);
  }
  if (record_times.empty()) snapshots.push_back(u);
  return snapshots;
}

}  // namespace dbfe
