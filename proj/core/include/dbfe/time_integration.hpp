#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dbfe/diffusion.hpp"
#include "dbfe/grid.hpp"

namespace dbfe {

/// Thrown when a stage or step produces non-finite values.
struct StepFailure : std::runtime_error {
  StepFailure(double time, int stage_index)
      : std::runtime_error("time step failed at t = " + std::to_string(time) + " (stage " +
                           std::to_string(stage_index) + "): non-finite state"),
        t(time),
        stage(stage_index) {}
  double t;
  int stage;
};

/// Classical four-stage RK4. Generic over any state with
///   void axpy(double, const State&)
/// and a free all_finite(const State&). rhs(state, t) returns a state-shaped
/// derivative. Stage outputs are checked for finiteness.
template <class State, class Rhs>
State rk4_step(const State& s, Rhs&& rhs, double t, double dt) {
  const State k1 = rhs(s, t);
  if (!all_finite(k1)) throw StepFailure(t, 1);

  State y = s;
  y.axpy(0.5 * dt, k1);
  const State k2 = rhs(y, t + 0.5 * dt);
  if (!all_finite(k2)) throw StepFailure(t, 2);

  y = s;
  y.axpy(0.5 * dt, k2);
  const State k3 = rhs(y, t + 0.5 * dt);
  if (!all_finite(k3)) throw StepFailure(t, 3);

  y = s;
  y.axpy(dt, k3);
  const State k4 = rhs(y, t + dt);
  if (!all_finite(k4)) throw StepFailure(t, 4);

  State out = s;
  out.axpy(dt / 6.0, k1);
  out.axpy(dt / 3.0, k2);
  out.axpy(dt / 3.0, k3);
  out.axpy(dt / 6.0, k4);
  return out;
}

/// True when `value` is an integer multiple of dt within 1e-12.
bool divides_time(double dt, double value);

/// Deterministic transient diffusion from the zero initial condition.
/// The source is included while t lies in [t_on, t_off), with the window
/// frozen per step (dt must divide t_on, t_off and every record time).
/// Returns snapshots at record_times (ascending).
std::vector<GridField> solve_deterministic(const GridField& nu, const SourceSpec& src, Vec2 z,
                                           double t_end, double dt,
                                           const std::vector<double>& record_times);

}  // namespace dbfe
