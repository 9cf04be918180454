#include "wexp/vandermonde.hpp"

namespace wexp {
namespace {

// Exact node coincidence x = Λ_j forces a = −e_j: row 0 reads Σ a_i = −1 and
// the remaining rows pin every other coefficient to zero.
template <typename Scalar, typename Vec>
std::optional<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> coincidence_solution(const Vec& nodes,
                                                                             const Scalar& x) {
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(nodes.size()); ++j) {
    if (nodes[j] == x) {
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1> a =
          Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(nodes.size());
      a[j] = Scalar(-1);
      return a;
    }
  }
  return std::nullopt;
}

}  // namespace

VandermondeSolveResult<Real> solve_power_rhs(const NodeSet& nodes, Real x) {
  if (!std::isfinite(x)) throw std::invalid_argument("solve_power_rhs: x must be finite");
  const Eigen::Index m = nodes.size();
  VandermondeSolveResult<Real> out;
  out.method = SolveMethod::bjorck_pereyra;

  if (auto hit = coincidence_solution<Real>(nodes.nodes(), x)) {
    out.solution = std::move(*hit);
    out.residual_norm = 0;
    return out;
  }

  VectorXr rhs(m);
  Real p = 1;
  for (Eigen::Index k = 0; k < m; ++k, p *= x) rhs[k] = -p;
  out.solution = bp_primal_solve<Real>(nodes.nodes(), rhs);

  // residual ‖V·a − rhs‖∞ / ‖rhs‖∞, evaluated from the nodes directly
  Real rmax = 0, bmax = 0;
  p = 1;
  for (Eigen::Index k = 0; k < m; ++k, p *= x) {
    Real row = p;  // Σ_j a_j Λ_j^k + x^k should vanish
    for (Eigen::Index j = 0; j < m; ++j)
      row += out.solution[j] * std::pow(nodes.nodes()[j], static_cast<Real>(k));
    rmax = std::max(rmax, std::abs(row));
    bmax = std::max(bmax, std::abs(p));
  }
  out.residual_norm = rmax / bmax;
  out.conditioning_warning = out.residual_norm > 1e-9;
  return out;
}

VandermondeSolveResult<Rational> solve_exact(const std::vector<Index>& nodes_int, Index x_int) {
  std::vector<Index> sorted = nodes_int;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("solve_exact: duplicate nodes");

  VectorXq nodes(static_cast<Eigen::Index>(sorted.size()));
  for (std::size_t i = 0; i < sorted.size(); ++i)
    nodes[static_cast<Eigen::Index>(i)] = Rational(sorted[i]);
  const Rational x(x_int);

  VandermondeSolveResult<Rational> out;
  out.method = SolveMethod::exact_rational;
  if (auto hit = coincidence_solution<Rational>(nodes, x)) {
    out.solution = std::move(*hit);
    return out;
  }
  out.solution = lagrange_power_rhs_solve<Rational>(nodes, x);
  return out;
}

Real determinant(const NodeSet& nodes) { return vandermonde_determinant<Real>(nodes.nodes()); }

Rational determinant_exact(const std::vector<Index>& nodes_int) {
  std::vector<Index> sorted = nodes_int;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("determinant_exact: duplicate nodes");
  VectorXq v(static_cast<Eigen::Index>(sorted.size()));
  for (std::size_t i = 0; i < sorted.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = Rational(sorted[i]);
  return vandermonde_determinant<Rational>(v);
}

CofactorReport<Real> last_row_cofactors(const NodeSet& nodes) {
  auto rep = last_row_cofactors_impl<Real>(nodes.nodes());
  for (Eigen::Index j = 0; j < rep.last_row_cofactors.size(); ++j)
    if (!std::isfinite(rep.last_row_cofactors[j])) rep.all_nonzero = false;
  return rep;
}

CofactorReport<Rational> last_row_cofactors_exact(const std::vector<Index>& nodes_int) {
  std::vector<Index> sorted = nodes_int;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("last_row_cofactors_exact: duplicate nodes");
  VectorXq v(static_cast<Eigen::Index>(sorted.size()));
  for (std::size_t i = 0; i < sorted.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = Rational(sorted[i]);
  return last_row_cofactors_impl<Rational>(v);
}

}  // namespace wexp
