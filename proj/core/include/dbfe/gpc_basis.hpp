#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dbfe {

/// One degree per stochastic dimension.
using MultiIndex = std::vector<int>;

/// Probabilists' Hermite polynomial He_n(x).
double hermite_he(int n, double x);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to 1 (standard normal measure)
};

/// Gauss-Hermite rule for the probabilists' weight; exact for polynomials
/// up to degree 2*level - 1. Supported levels: 1..64.
QuadratureRule gauss_hermite_rule(int level);

struct TripleEntry {
  int i, j, k;  // i <= j <= k
  double value;
};

/// Hermite generalized-polynomial-chaos basis over iid standard normals.
///
/// Multi-indices are enumerated graded-lexicographically with the constant
/// term first, so the layout is identical across runs. The triple-product
/// tensor E[psi_i psi_j psi_k] is stored sparsely (entries below 1e-12
/// dropped), keyed by sorted (i,j,k).
class GpcBasis {
 public:
  static constexpr std::size_t kDefaultIndexCap = 1000000;

  GpcBasis(int dimension, int order, std::size_t index_cap = kDefaultIndexCap);

  int dimension() const { return dimension_; }
  int order() const { return order_; }
  /// Number of basis terms, binomial(dimension + order, order).
  int size() const { return static_cast<int>(indices_.size()); }

  const std::vector<MultiIndex>& indices() const { return indices_; }
  const MultiIndex& index(int q) const { return indices_[static_cast<std::size_t>(q)]; }
  double norm_sq(int q) const { return norms_sq_[static_cast<std::size_t>(q)]; }
  const std::vector<double>& norms_sq() const { return norms_sq_; }

  /// Position of the degree-1 term in coordinate `coord` (0-based).
  int first_order_index(int coord) const;

  double eval_psi(int q, std::span<const double> xi) const;

  /// E[psi_i psi_j psi_k]; zero when below the storage threshold.
  double triple_product(int i, int j, int k) const;

  /// Stored nonzero triples with i <= j <= k.
  const std::vector<TripleEntry>& triples() const { return triples_; }

  /// Debug export: {dimension, order, indices, norms_sq, triples}.
  std::string to_json() const;

 private:
  int dimension_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::vector<double> norms_sq_;
  std::vector<TripleEntry> triples_;
  std::unordered_map<std::uint64_t, double> triple_map_;
};

}  // namespace dbfe
