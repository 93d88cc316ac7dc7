#pragma once

#include "dbfe/grid.hpp"

namespace dbfe {

/// Uncertain-location Gaussian source bump.
struct SourceSpec {
  Vec2 location_mean{0.0, 0.0};
  double location_std = 0.3;
  double strength = 1.0;
  double width = 0.1;      // sigma_s of the bump
  double t_on = 0.0;
  double t_off = 0.01;
};

/// s/(2 pi sigma_s^2) * exp(-|z - x|^2 / (2 sigma_s^2)) sampled at nodes.
GridField source_field(const SourceSpec& src, Vec2 z, const Grid2D& grid);

/// Conservative flux-form divergence of (nu grad u) with arithmetic face
/// averaging of the diffusivity, second-order central differences, and
/// adiabatic boundaries via ghost nodes mirrored about the boundary nodes
/// (ghost value = first interior value), which zeroes the discrete normal
/// derivative at the boundary. The trapezoid-weighted sum of the output is
/// zero to round-off for arbitrary inputs.
///
/// Throws std::domain_error naming the first node where nu <= 0.
GridField diffusion_apply(const GridField& nu, const GridField& u);

/// Allocation-free form; out may not alias nu or u.
void diffusion_apply_into(const GridField& nu, const GridField& u, GridField& out);

}  // namespace dbfe
