#include "dbfe/gpc_basis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace dbfe {

namespace {

constexpr double kTripleDropTol = 1e-12;

double factorial(int n) {
  static const auto table = [] {
    std::array<double, 33> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table[static_cast<std::size_t>(n)];
}

/// E[He_a He_b He_c] under the standard normal measure.
double hermite_triple_1d(int a, int b, int c) {
  const int total = a + b + c;
  if (total % 2 != 0) return 0.0;
  const int s = total / 2;
  if (s < a || s < b || s < c) return 0.0;
  return factorial(a) * factorial(b) * factorial(c) /
         (factorial(s - a) * factorial(s - b) * factorial(s - c));
}

std::uint64_t pack_key(int i, int j, int k) {
  return (static_cast<std::uint64_t>(i) << 42) | (static_cast<std::uint64_t>(j) << 21) |
         static_cast<std::uint64_t>(k);
}

/// binomial(n, k) with an early exit once the count exceeds `cap`.
std::size_t capped_index_count(int dimension, int order, std::size_t cap) {
  long double c = 1.0L;
  for (int r = 1; r <= order; ++r) {
    c = c * static_cast<long double>(dimension + r) / static_cast<long double>(r);
    if (c > static_cast<long double>(cap) * 2.0L) return cap + 1;
  }
  const long double rounded = std::floor(c + 0.5L);
  return rounded > static_cast<long double>(cap) ? cap + 1 : static_cast<std::size_t>(rounded);
}

void enumerate_degree(int dim_left, int degree_left, MultiIndex& scratch,
                      std::vector<MultiIndex>& out) {
  const int pos = static_cast<int>(scratch.size()) - dim_left;
  if (dim_left == 1) {
    scratch[static_cast<std::size_t>(pos)] = degree_left;
    out.push_back(scratch);
    return;
  }
  for (int d = degree_left; d >= 0; --d) {
    scratch[static_cast<std::size_t>(pos)] = d;
    enumerate_degree(dim_left - 1, degree_left - d, scratch, out);
  }
}

}  // namespace

double hermite_he(int n, double x) {
  if (n == 0) return 1.0;
  if (n == 1) return x;
  double hm2 = 1.0, hm1 = x;
  for (int k = 2; k <= n; ++k) {
    const double h = x * hm1 - static_cast<double>(k - 1) * hm2;
    hm2 = hm1;
    hm1 = h;
  }
  return hm1;
}

QuadratureRule gauss_hermite_rule(int level) {
  if (level < 1 || level > 64) throw std::invalid_argument("gauss_hermite_rule: level must be in [1,64]");
  if (level == 1) return {{0.0}, {1.0}};

  // Golub-Welsch on the Jacobi matrix of the He recurrence (beta_k = k).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(level, level);
  for (int k = 1; k < level; ++k) {
    const double b = std::sqrt(static_cast<double>(k));
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success) throw std::runtime_error("gauss_hermite_rule: eigensolve failed");

  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(level));
  rule.weights.resize(static_cast<std::size_t>(level));
  for (int k = 0; k < level; ++k) {
    rule.nodes[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    rule.weights[static_cast<std::size_t>(k)] = v0 * v0;
  }
  return rule;
}

GpcBasis::GpcBasis(int dimension, int order, std::size_t index_cap)
    : dimension_(dimension), order_(order) {
  if (dimension < 1) throw std::invalid_argument("GpcBasis: dimension must be >= 1");
  if (order < 0) throw std::invalid_argument("GpcBasis: order must be >= 0");
  const std::size_t count = capped_index_count(dimension, order, index_cap);
  if (count > index_cap)
    throw std::length_error("GpcBasis: index count exceeds cap (infeasible basis size)");

  indices_.reserve(count);
  MultiIndex scratch(static_cast<std::size_t>(dimension), 0);
  for (int degree = 0; degree <= order; ++degree)
    enumerate_degree(dimension, degree, scratch, indices_);

  norms_sq_.reserve(indices_.size());
  for (const auto& mi : indices_) {
    double n = 1.0;
    for (int d : mi) n *= factorial(d);
    norms_sq_.push_back(n);
  }

  // Sparse triple tensor over sorted index triples; a per-dimension parity
  // and triangle rejection keeps the triple loop cheap.
  const int p = size();
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      for (int k = j; k < p; ++k) {
        double v = 1.0;
        for (int d = 0; d < dimension_; ++d) {
          v *= hermite_triple_1d(indices_[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)],
                                 indices_[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)],
                                 indices_[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)]);
          if (v == 0.0) break;
        }
        if (std::abs(v) >= kTripleDropTol) {
          triples_.push_back({i, j, k, v});
          triple_map_.emplace(pack_key(i, j, k), v);
        }
      }
    }
  }
}

int GpcBasis::first_order_index(int coord) const {
  if (coord < 0 || coord >= dimension_)
    throw std::out_of_range("GpcBasis::first_order_index: coordinate out of range");
  if (order_ < 1) throw std::out_of_range("GpcBasis::first_order_index: basis has order 0");
  // Grade-1 block directly follows the constant term, in coordinate order.
  return 1 + coord;
}

double GpcBasis::eval_psi(int q, std::span<const double> xi) const {
  if (xi.size() != static_cast<std::size_t>(dimension_))
    throw std::invalid_argument("GpcBasis::eval_psi: xi dimension mismatch");
  const MultiIndex& mi = indices_[static_cast<std::size_t>(q)];
  double v = 1.0;
  for (int d = 0; d < dimension_; ++d) {
    const int deg = mi[static_cast<std::size_t>(d)];
    if (deg > 0) v *= hermite_he(deg, xi[static_cast<std::size_t>(d)]);
  }
  return v;
}

double GpcBasis::triple_product(int i, int j, int k) const {
  int a = i, b = j, c = k;
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  const auto it = triple_map_.find(pack_key(a, b, c));
  return it == triple_map_.end() ? 0.0 : it->second;
}

std::string GpcBasis::to_json() const {
  nlohmann::json doc;
  doc["dimension"] = dimension_;
  doc["order"] = order_;
  doc["indices"] = indices_;
  doc["norms_sq"] = norms_sq_;
  auto& arr = doc["triples"] = nlohmann::json::array();
  for (const auto& t : triples_)
    arr.push_back({{"i", t.i}, {"j", t.j}, {"k", t.k}, {"value", t.value}});
  return doc.dump(2);
}

}  // namespace dbfe
