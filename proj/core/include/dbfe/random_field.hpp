#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "dbfe/diffusion.hpp"
#include "dbfe/gpc_basis.hpp"
#include "dbfe/grid.hpp"
#include "dbfe/rng.hpp"

namespace dbfe {

/// Squared-exponential covariance, exponent form exp(-sum_i l_i dx_i^2).
struct SqExpKernel {
  double variance = 0.3;
  std::array<double, 2> lengthscales{1.5, 1.5};
};

double kernel_eval(const SqExpKernel& k, Vec2 a, Vec2 b);

using KernelFn = std::function<double(Vec2, Vec2)>;

/// Discrete KL decomposition of a Gaussian random field on a grid.
/// Eigenfields are orthonormal in the weighted discrete inner product
/// (sum_n w_n v_i v_j = delta_ij); eigenvalues descend and are clipped
/// at zero.
struct KlDecomposition {
  GridField mean;
  std::vector<double> eigenvalues;
  std::vector<GridField> eigenfields;
  std::vector<double> quadrature_weights;  // per node, row-major
  bool truncated_spectrum_warning = false;

  int n_modes() const { return static_cast<int>(eigenvalues.size()); }
};

/// Nystrom KL for an arbitrary kernel: assembles the dense weighted kernel
/// matrix and solves the symmetric eigenproblem. Intended for small grids
/// (node count capped); the squared-exponential overload below scales to
/// production grids.
KlDecomposition kl_decompose(const KernelFn& kernel, const GridField& mean, const Grid2D& grid,
                             int n_modes);

/// Same decomposition for the separable squared-exponential kernel, built
/// from two 1D eigensolves and product pairing; results match the dense
/// path to solver accuracy.
KlDecomposition kl_decompose(const SqExpKernel& kernel, const GridField& mean, const Grid2D& grid,
                             int n_modes);

/// Weighted Frobenius norm of (kernel matrix - sum_{i<n_used} l_i v_i v_i^T).
double reconstruct_cov_error(const KlDecomposition& kl, const KernelFn& kernel, const Grid2D& grid,
                             int n_used);
double reconstruct_cov_error(const KlDecomposition& kl, const SqExpKernel& kernel,
                             const Grid2D& grid, int n_used);

/// mean + sum_i sqrt(l_i) v_i chi_i with chi iid standard normal.
GridField sample_field(const KlDecomposition& kl, int n_modes, Rng& rng);

/// Bi-orthogonal expansion of the uncertain parameter field:
/// value(x; xi) = mean(x) + sum_i sum_p V[i][p] psi_p(xi) modes_i(x),
/// with sqrt(lambda_i) folded into the coefficient matrix V.
struct BiorthParamField {
  GridField mean;
  std::vector<GridField> modes;             // orthonormal KL eigenfields
  std::vector<std::vector<double>> coeffs;  // V[i][p]
  const GpcBasis* basis = nullptr;
  int dim_offset = 0;

  int n_modes() const { return static_cast<int>(modes.size()); }
  GridField evaluate(std::span<const double> xi) const;
  /// evaluate() with values clamped below at nu_min (positivity guard for
  /// sampled diffusivities). Returns the number of clamped nodes through
  /// the optional counter.
  GridField evaluate_clamped(std::span<const double> xi, double nu_min,
                             int* clamped_nodes = nullptr) const;
};

/// Identifies chi_i with the xi coordinate dim_offset+i (Gaussian prior):
/// V[i][p] = sqrt(lambda_i) on the first-order index of that coordinate.
BiorthParamField biorth_param(const KlDecomposition& kl, const GpcBasis& basis, int dim_offset,
                              int n_modes);

/// gPC coefficient fields of the uncertain-location source:
/// S_p(x) = E[S(x; z(xi)) psi_p(xi)] / <psi_p^2> by tensor Gauss-Hermite
/// quadrature over the two location coordinates (0 and 1);
/// z = location_mean + location_std * (xi_1, xi_2). Coefficients on indices
/// touching non-location coordinates are exactly zero.
std::vector<GridField> source_gpc_coeffs(const SourceSpec& src, const GpcBasis& basis,
                                         const Grid2D& grid, int quad_level);

}  // namespace dbfe
