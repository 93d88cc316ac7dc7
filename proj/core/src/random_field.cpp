#include "dbfe/random_field.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dbfe {

double kernel_eval(const SqExpKernel& k, Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return k.variance * std::exp(-k.lengthscales[0] * dx * dx - k.lengthscales[1] * dy * dy);
}

namespace {

constexpr int kDenseNodeCap = 3000;
constexpr double kEigClipTol = 1e-10;
constexpr double kSpectrumRelTol = 1e-12;

std::vector<double> node_weights(const Grid2D& g) {
  std::vector<double> w(static_cast<std::size_t>(g.num_nodes()));
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) w[static_cast<std::size_t>(g.idx(i, j))] = g.weight(i, j);
  return w;
}

// 1D trapezoid weights along one grid axis
std::vector<double> axis_weights(int n, double h) {
  std::vector<double> w(static_cast<std::size_t>(n), h);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

struct Eig1D {
  std::vector<double> values;             // descending, clipped at 0
  std::vector<std::vector<double>> vecs;  // weighted-orthonormal
};

// Weighted Nystrom eigensolve of exp(-l dx^2) along one axis.
Eig1D eig_sqexp_axis(int n, double h, double origin, double lengthscale) {
  const auto w = axis_weights(n, h);
  Eigen::MatrixXd b(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double d = (origin + r * h) - (origin + c * h);
      b(r, c) = std::sqrt(w[static_cast<std::size_t>(r)] * w[static_cast<std::size_t>(c)]) *
                std::exp(-lengthscale * d * d);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  if (es.info() != Eigen::Success) throw std::runtime_error("kl_decompose: 1D eigensolve failed");

  Eig1D out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vecs.resize(static_cast<std::size_t>(n));
  // Eigen sorts ascending; flip to descending and unweight the vectors.
  for (int k = 0; k < n; ++k) {
    const int src = n - 1 - k;
    out.values[static_cast<std::size_t>(k)] = std::max(0.0, es.eigenvalues()(src));
    auto& v = out.vecs[static_cast<std::size_t>(k)];
    v.resize(static_cast<std::size_t>(n));
    // fix the sign so layouts are reproducible
    int pivot = 0;
    for (int r = 1; r < n; ++r)
      if (std::abs(es.eigenvectors()(r, src)) > std::abs(es.eigenvectors()(pivot, src))) pivot = r;
    const double sgn = es.eigenvectors()(pivot, src) < 0.0 ? -1.0 : 1.0;
    for (int r = 0; r < n; ++r)
      v[static_cast<std::size_t>(r)] =
          sgn * es.eigenvectors()(r, src) / std::sqrt(w[static_cast<std::size_t>(r)]);
  }
  return out;
}

void finalize_spectrum(KlDecomposition& kl, int n_modes) {
  const double lead = kl.eigenvalues.empty() ? 0.0 : kl.eigenvalues.front();
  int positive = 0;
  for (double l : kl.eigenvalues)
    if (l > kSpectrumRelTol * lead && l > 0.0) ++positive;
  kl.truncated_spectrum_warning = n_modes > positive;
}

}  // namespace

KlDecomposition kl_decompose(const KernelFn& kernel, const GridField& mean, const Grid2D& grid,
                             int n_modes) {
  if (!(mean.grid() == grid)) throw std::invalid_argument("kl_decompose: mean grid mismatch");
  const int m = grid.num_nodes();
  if (n_modes < 0 || n_modes > m) throw std::invalid_argument("kl_decompose: n_modes out of range");
  if (m > kDenseNodeCap)
    throw std::invalid_argument("kl_decompose: grid too large for the dense kernel path");

  const auto w = node_weights(grid);
  Eigen::MatrixXd b(m, m);
  for (int r = 0; r < m; ++r) {
    const Vec2 xr{grid.x(r % grid.nx), grid.y(r / grid.nx)};
    for (int c = 0; c <= r; ++c) {
      const Vec2 xc{grid.x(c % grid.nx), grid.y(c / grid.nx)};
      const double v = std::sqrt(w[static_cast<std::size_t>(r)] * w[static_cast<std::size_t>(c)]) *
                       0.5 * (kernel(xr, xc) + kernel(xc, xr));
      b(r, c) = v;
      b(c, r) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  if (es.info() != Eigen::Success) throw std::runtime_error("kl_decompose: eigensolve failed");

  KlDecomposition kl;
  kl.mean = mean;
  kl.quadrature_weights = w;
  kl.eigenvalues.reserve(static_cast<std::size_t>(n_modes));
  kl.eigenfields.reserve(static_cast<std::size_t>(n_modes));
  for (int k = 0; k < n_modes; ++k) {
    const int src = m - 1 - k;
    const double lambda = es.eigenvalues()(src);
    if (lambda < -kEigClipTol)
      throw std::runtime_error("kl_decompose: eigenvalue below clipping tolerance");
    kl.eigenvalues.push_back(std::max(0.0, lambda));
    GridField field(grid);
    int pivot = 0;
    for (int r = 1; r < m; ++r)
      if (std::abs(es.eigenvectors()(r, src)) > std::abs(es.eigenvectors()(pivot, src))) pivot = r;
    const double sgn = es.eigenvectors()(pivot, src) < 0.0 ? -1.0 : 1.0;
    for (int r = 0; r < m; ++r)
      field.data()[static_cast<std::size_t>(r)] =
          sgn * es.eigenvectors()(r, src) / std::sqrt(w[static_cast<std::size_t>(r)]);
    kl.eigenfields.push_back(std::move(field));
  }
  finalize_spectrum(kl, n_modes);
  return kl;
}

KlDecomposition kl_decompose(const SqExpKernel& kernel, const GridField& mean, const Grid2D& grid,
                             int n_modes) {
  if (!(mean.grid() == grid)) throw std::invalid_argument("kl_decompose: mean grid mismatch");
  const int m = grid.num_nodes();
  if (n_modes < 0 || n_modes > m) throw std::invalid_argument("kl_decompose: n_modes out of range");

  const Eig1D ex = eig_sqexp_axis(grid.nx, grid.h, grid.x0, kernel.lengthscales[0]);
  const Eig1D ey = eig_sqexp_axis(grid.ny, grid.h, grid.y0, kernel.lengthscales[1]);

  // product eigenpairs, sorted by eigenvalue descending with a deterministic
  // tie-break on the factor indices
  struct Pair {
    double lambda;
    int a, b;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
  for (int a = 0; a < grid.nx; ++a)
    for (int b = 0; b < grid.ny; ++b)
      pairs.push_back({kernel.variance * ex.values[static_cast<std::size_t>(a)] *
                           ey.values[static_cast<std::size_t>(b)],
                       a, b});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) {
    if (l.lambda != r.lambda) return l.lambda > r.lambda;
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  });

  KlDecomposition kl;
  kl.mean = mean;
  kl.quadrature_weights = node_weights(grid);
  for (int k = 0; k < n_modes; ++k) {
    const Pair& p = pairs[static_cast<std::size_t>(k)];
    kl.eigenvalues.push_back(p.lambda);
    GridField field(grid);
    const auto& vx = ex.vecs[static_cast<std::size_t>(p.a)];
    const auto& vy = ey.vecs[static_cast<std::size_t>(p.b)];
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i)
        field(i, j) = vx[static_cast<std::size_t>(i)] * vy[static_cast<std::size_t>(j)];
    kl.eigenfields.push_back(std::move(field));
  }
  finalize_spectrum(kl, n_modes);
  return kl;
}

double reconstruct_cov_error(const KlDecomposition& kl, const KernelFn& kernel, const Grid2D& grid,
                             int n_used) {
  if (n_used < 0 || n_used > kl.n_modes())
    throw std::invalid_argument("reconstruct_cov_error: n_used out of range");
  const int m = grid.num_nodes();
  if (m > kDenseNodeCap)
    throw std::invalid_argument("reconstruct_cov_error: grid too large for the dense path");
  const auto& w = kl.quadrature_weights;
  double acc = 0.0;
  for (int r = 0; r < m; ++r) {
    const Vec2 xr{grid.x(r % grid.nx), grid.y(r / grid.nx)};
    for (int c = 0; c < m; ++c) {
      const Vec2 xc{grid.x(c % grid.nx), grid.y(c / grid.nx)};
      double v = kernel(xr, xc);
      for (int k = 0; k < n_used; ++k)
        v -= kl.eigenvalues[static_cast<std::size_t>(k)] *
             kl.eigenfields[static_cast<std::size_t>(k)].data()[static_cast<std::size_t>(r)] *
             kl.eigenfields[static_cast<std::size_t>(k)].data()[static_cast<std::size_t>(c)];
      acc += w[static_cast<std::size_t>(r)] * w[static_cast<std::size_t>(c)] * v * v;
    }
  }
  return std::sqrt(std::max(0.0, acc));
}

double reconstruct_cov_error(const KlDecomposition& kl, const SqExpKernel& kernel,
                             const Grid2D& grid, int n_used) {
  if (n_used < 0 || n_used > kl.n_modes())
    throw std::invalid_argument("reconstruct_cov_error: n_used out of range");
  // For exact eigenpairs the cross terms collapse:
  // ||C - sum l v v^T||^2 = ||C||^2 - sum l^2.
  const auto wx = axis_weights(grid.nx, grid.h);
  const auto wy = axis_weights(grid.ny, grid.h);
  auto axis_frob2 = [&](int n, double origin, double l, const std::vector<double>& w) {
    double acc = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const double d = (origin + r * grid.h) - (origin + c * grid.h);
        const double k = std::exp(-l * d * d);
        acc += w[static_cast<std::size_t>(r)] * w[static_cast<std::size_t>(c)] * k * k;
      }
    return acc;
  };
  double full = kernel.variance * kernel.variance *
                axis_frob2(grid.nx, grid.x0, kernel.lengthscales[0], wx) *
                axis_frob2(grid.ny, grid.y0, kernel.lengthscales[1], wy);
  for (int k = 0; k < n_used; ++k)
    full -= kl.eigenvalues[static_cast<std::size_t>(k)] * kl.eigenvalues[static_cast<std::size_t>(k)];
  return std::sqrt(std::max(0.0, full));
}

GridField sample_field(const KlDecomposition& kl, int n_modes, Rng& rng) {
  if (n_modes < 0 || n_modes > kl.n_modes())
    throw std::invalid_argument("sample_field: n_modes out of range");
  GridField out = kl.mean;
  for (int k = 0; k < n_modes; ++k) {
    const double chi = rng.normal();
    out.axpy(std::sqrt(kl.eigenvalues[static_cast<std::size_t>(k)]) * chi,
             kl.eigenfields[static_cast<std::size_t>(k)]);
  }
  return out;
}

GridField BiorthParamField::evaluate(std::span<const double> xi) const {
  if (!basis) throw std::logic_error("BiorthParamField: basis not set");
  if (xi.size() != static_cast<std::size_t>(basis->dimension()))
    throw std::invalid_argument("BiorthParamField::evaluate: xi dimension mismatch");
  std::vector<double> psi(static_cast<std::size_t>(basis->size()));
  for (int p = 0; p < basis->size(); ++p) psi[static_cast<std::size_t>(p)] = basis->eval_psi(p, xi);
  GridField out = mean;
  for (int i = 0; i < n_modes(); ++i) {
    double c = 0.0;
    for (int p = 0; p < basis->size(); ++p)
      c += coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)] *
           psi[static_cast<std::size_t>(p)];
    if (c != 0.0) out.axpy(c, modes[static_cast<std::size_t>(i)]);
  }
  return out;
}

GridField BiorthParamField::evaluate_clamped(std::span<const double> xi, double nu_min,
                                             int* clamped_nodes) const {
  GridField out = evaluate(xi);
  int count = 0;
  for (auto& v : out.data())
    if (v < nu_min) {
      v = nu_min;
      ++count;
    }
  if (clamped_nodes) *clamped_nodes = count;
  return out;
}

BiorthParamField biorth_param(const KlDecomposition& kl, const GpcBasis& basis, int dim_offset,
                              int n_modes) {
  if (n_modes < 0 || n_modes > kl.n_modes())
    throw std::invalid_argument("biorth_param: n_modes exceeds KL modes");
  if (dim_offset < 0 || dim_offset + n_modes > basis.dimension())
    throw std::invalid_argument("biorth_param: basis dimension < dim_offset + n_modes");

  BiorthParamField out;
  out.mean = kl.mean;
  out.basis = &basis;
  out.dim_offset = dim_offset;
  out.modes.assign(kl.eigenfields.begin(), kl.eigenfields.begin() + n_modes);
  out.coeffs.assign(static_cast<std::size_t>(n_modes),
                    std::vector<double>(static_cast<std::size_t>(basis.size()), 0.0));
  for (int i = 0; i < n_modes; ++i) {
    const int p = basis.first_order_index(dim_offset + i);
    out.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)] =
        std::sqrt(kl.eigenvalues[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<GridField> source_gpc_coeffs(const SourceSpec& src, const GpcBasis& basis,
                                         const Grid2D& grid, int quad_level) {
  if (basis.dimension() < 2)
    throw std::invalid_argument("source_gpc_coeffs: basis needs the two location coordinates");
  if (quad_level < basis.order() + 1)
    throw std::invalid_argument("source_gpc_coeffs: quadrature level too low for basis order");

  const int p_count = basis.size();
  std::vector<GridField> coeffs(static_cast<std::size_t>(p_count), GridField(grid, 0.0));

  if (src.location_std == 0.0) {
    coeffs[0] = source_field(src, src.location_mean, grid);
    return coeffs;
  }

  // indices supported on the two location coordinates only
  std::vector<int> active;
  for (int p = 0; p < p_count; ++p) {
    const MultiIndex& mi = basis.index(p);
    bool ok = true;
    for (std::size_t d = 2; d < mi.size(); ++d)
      if (mi[d] != 0) {
        ok = false;
        break;
      }
    if (ok) active.push_back(p);
  }

  const QuadratureRule rule = gauss_hermite_rule(quad_level);
  const int q = static_cast<int>(rule.nodes.size());
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const Vec2 z{src.location_mean.x + src.location_std * rule.nodes[static_cast<std::size_t>(a)],
                   src.location_mean.y + src.location_std * rule.nodes[static_cast<std::size_t>(b)]};
      const GridField s = source_field(src, z, grid);
      const double w = rule.weights[static_cast<std::size_t>(a)] *
                       rule.weights[static_cast<std::size_t>(b)];
      for (int p : active) {
        const MultiIndex& mi = basis.index(p);
        const double psi = hermite_he(mi[0], rule.nodes[static_cast<std::size_t>(a)]) *
                           hermite_he(mi[1], rule.nodes[static_cast<std::size_t>(b)]);
        coeffs[static_cast<std::size_t>(p)].axpy(w * psi, s);
      }
    }
  }
  for (int p : active) coeffs[static_cast<std::size_t>(p)].scale(1.0 / basis.norm_sq(p));
  return coeffs;
}

}  // namespace dbfe
