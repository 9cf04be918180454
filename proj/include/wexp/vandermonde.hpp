// Vandermonde power-moment systems on distinct real nodes: the matrix with
// rows (Λ₁^k, …, Λ_M^k) is never materialized; solvers, determinants and
// bottom-row cofactors all work on the node list alone.
//
// Two solver routes for V(Λ)·a = −(1, x, x², …, x^{M−1})ᵀ:
//   * bp_primal_solve — Björck–Pereyra-style two-stage elimination, O(M²);
//   * lagrange_power_rhs_solve — closed form a_j = −ℓ_j(x): interpolation at
//     M nodes reproduces every polynomial of degree < M, so the cardinal
//     polynomials solve the power-moment system directly.
// The float API uses the first, the exact-rational API the second, which
// keeps the oracle pair algorithmically independent.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "wexp/rational.hpp"
#include "wexp/types.hpp"

namespace wexp {

/// Strictly increasing nodes Λ₁ < Λ₂ < … < Λ_M, optionally remembering the
/// integer grid they were scaled from (nodes[j] = scale · integer_form[j]).
class NodeSet {
 public:
  explicit NodeSet(VectorXr nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 1) throw std::invalid_argument("NodeSet: need at least one node");
    for (Eigen::Index i = 0; i + 1 < nodes_.size(); ++i)
      if (!(nodes_[i] < nodes_[i + 1]))
        throw std::invalid_argument("NodeSet: nodes must be strictly increasing (duplicate node?)");
  }

  static NodeSet from_integers(std::vector<Index> ints, Real scale) {
    std::sort(ints.begin(), ints.end());
    if (std::adjacent_find(ints.begin(), ints.end()) != ints.end())
      throw std::invalid_argument("NodeSet: duplicate integer nodes");
    VectorXr v(static_cast<Eigen::Index>(ints.size()));
    for (std::size_t i = 0; i < ints.size(); ++i)
      v[static_cast<Eigen::Index>(i)] = scale * static_cast<Real>(ints[i]);
    NodeSet out(std::move(v));
    out.integer_form_ = std::move(ints);
    out.scale_ = scale;
    return out;
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  const VectorXr& nodes() const { return nodes_; }
  bool has_integer_form() const { return integer_form_.has_value(); }
  const std::vector<Index>& integer_form() const {
    if (!integer_form_) throw std::logic_error("NodeSet: no integer form");
    return *integer_form_;
  }
  Real scale() const { return scale_; }

 private:
  VectorXr nodes_;
  std::optional<std::vector<Index>> integer_form_;
  Real scale_ = 1.0;
};

enum class SolveMethod { bjorck_pereyra, exact_rational };

template <typename Scalar>
struct VandermondeSolveResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solution;
  Real residual_norm = 0;  // ‖V·a − rhs‖∞ / ‖rhs‖∞; identically 0 on the exact route
  SolveMethod method = SolveMethod::bjorck_pereyra;
  bool conditioning_warning = false;
};

template <typename Scalar>
struct CofactorReport {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> last_row_cofactors;
  Scalar determinant;
  bool all_nonzero = false;
};

/// Solves Σ_j a_j Λ_j^k = b_k (k = 0..M−1) in place on the right-hand side.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> bp_primal_solve(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& nodes,
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> b) {
  const Eigen::Index n = nodes.size() - 1;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = n; j > k; --j) b[j] -= nodes[k] * b[j - 1];
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    for (Eigen::Index j = k + 1; j <= n; ++j) b[j] /= (nodes[j] - nodes[j - k - 1]);
    for (Eigen::Index i = k; i < n; ++i) b[i] -= b[i + 1];
  }
  return b;
}

/// a_j = −Π_{i≠j}(x − Λ_i) / Π_{i≠j}(Λ_j − Λ_i); exact when Scalar is Rational.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lagrange_power_rhs_solve(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& nodes, const Scalar& x) {
  const Eigen::Index m = nodes.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> a(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Scalar num = Scalar(-1);
    Scalar den = Scalar(1);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == j) continue;
      num *= (x - nodes[i]);
      den *= (nodes[j] - nodes[i]);
    }
    a[j] = num / den;
  }
  return a;
}

/// Π_{i<j}(Λ_j − Λ_i) by the product formula (M = 1 gives the empty product 1).
template <typename Scalar>
Scalar vandermonde_determinant(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& nodes) {
  Scalar det = Scalar(1);
  for (Eigen::Index i = 0; i < nodes.size(); ++i)
    for (Eigen::Index j = i + 1; j < nodes.size(); ++j) det *= (nodes[j] - nodes[i]);
  return det;
}

/// Cofactors of the bottom-row entries: deleting column j and the last row
/// leaves a Vandermonde matrix on the remaining nodes, so each cofactor is
/// (−1)^{M+j} times a product of differences and can never vanish.
template <typename Scalar>
CofactorReport<Scalar> last_row_cofactors_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& nodes) {
  const Eigen::Index m = nodes.size();
  CofactorReport<Scalar> rep;
  rep.last_row_cofactors.resize(m);
  rep.determinant = vandermonde_determinant(nodes);
  rep.all_nonzero = true;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> minor(m - 1);
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::Index w = 0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (i != j) minor[w++] = nodes[i];
    Scalar c = vandermonde_determinant(minor);
    if ((m + j + 1) % 2 != 0) c = -c;  // (−1)^{M + j} with 1-based j
    rep.last_row_cofactors[j] = c;
    if (c == Scalar(0)) rep.all_nonzero = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Public, NodeSet-facing API.

/// Float route for V(Λ)·a = −(1, x, …, x^{M−1})ᵀ. When x coincides with a
/// node the unique solution −e_j is returned exactly.
VandermondeSolveResult<Real> solve_power_rhs(const NodeSet& nodes, Real x);

/// Exact rational route on an integer node grid; serves as the float oracle.
VandermondeSolveResult<Rational> solve_exact(const std::vector<Index>& nodes_int, Index x_int);

Real determinant(const NodeSet& nodes);
Rational determinant_exact(const std::vector<Index>& nodes_int);

CofactorReport<Real> last_row_cofactors(const NodeSet& nodes);
CofactorReport<Rational> last_row_cofactors_exact(const std::vector<Index>& nodes_int);

}  // namespace wexp
