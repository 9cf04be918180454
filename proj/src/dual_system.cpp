#include "wexp/dual_system.hpp"

#include <cmath>
#include <cstdio>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace wexp {
namespace {

NodeSet make_nodes(const std::vector<Index>& sorted_indices, const FrequencyMap& map) {
  if (map.is_trigonometric()) return NodeSet::from_integers(sorted_indices, two_pi);
  VectorXr v(static_cast<Eigen::Index>(sorted_indices.size()));
  for (std::size_t i = 0; i < sorted_indices.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = map(sorted_indices[i]);
  return NodeSet(std::move(v));  // rejects non-increasing custom maps on A
}

std::string format_real_field(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ExclusionSet::ExclusionSet(std::vector<Index> indices, FrequencyMap map)
    : indices_(std::move(indices)), map_(std::move(map)), nodes_(VectorXr::Zero(1)) {
  if (indices_.empty()) throw std::invalid_argument("ExclusionSet: empty index set");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw std::invalid_argument("ExclusionSet: duplicate indices");
  nodes_ = make_nodes(indices_, map_);
}

int ExclusionSet::sorted_position(Index m) const {
  // strictly increasing maps keep index order, so position = rank of m in A
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), m);
  if (it == indices_.end() || *it != m)
    throw std::invalid_argument("ExclusionSet::sorted_position: index not excluded");
  return static_cast<int>(it - indices_.begin());
}

// ---------------------------------------------------------------------------

const DualCoefficientTable::Row& DualCoefficientTable::at(Index n) const {
  const auto it = rows_.find(n);
  if (it == rows_.end())
    throw std::out_of_range("DualCoefficientTable: no row for this index");
  return it->second;
}

const VectorXq& DualCoefficientTable::exact_row(Index n) const {
  if (arithmetic_ != Arithmetic::exact)
    throw std::logic_error("DualCoefficientTable: exact rows only on the exact route");
  return at(n).a_exact;
}

std::vector<Index> DualCoefficientTable::row_indices() const {
  std::vector<Index> out;
  out.reserve(rows_.size());
  for (const auto& [n, row] : rows_) out.push_back(n);
  return out;
}

void DualCoefficientTable::write_csv(std::ostream& os) const {
  os << "n,j,re_a,im_a,arithmetic,exact\n";
  const char* mode = arithmetic_ == Arithmetic::exact ? "exact" : "float";
  for (const auto& [n, row] : rows_) {
    for (Eigen::Index j = 0; j < row.a.size(); ++j) {
      os << n << ',' << (j + 1) << ',' << format_real_field(row.a[j]) << ",0," << mode << ',';
      if (arithmetic_ == Arithmetic::exact) os << rational_to_string(row.a_exact[j]);
      os << '\n';
    }
  }
}

DualCoefficientTable dual_coefficients(const ExclusionSet& exclusion, IndexWindow window,
                                       Arithmetic arithmetic) {
  if (arithmetic == Arithmetic::exact && !exclusion.frequency_map().is_trigonometric())
    throw UnsupportedRealization(
        "dual_coefficients: exact arithmetic requires the trigonometric frequency map");
  DualCoefficientTable table(exclusion, window, arithmetic);
  const auto& nodes = table.exclusion_.lambda_nodes();
  for (Index n = window.lo; n <= window.hi; ++n) {
    if (table.exclusion_.contains(n)) continue;
    DualCoefficientTable::Row row;
    if (arithmetic == Arithmetic::exact) {
      auto ex = solve_exact(exclusion.indices(), n);
      row.a.resize(ex.solution.size());
      for (Eigen::Index j = 0; j < ex.solution.size(); ++j) row.a[j] = to_real(ex.solution[j]);
      row.a_exact = std::move(ex.solution);
      row.residual = 0;
    } else {
      auto fl = solve_power_rhs(nodes, exclusion.lambda(n));
      row.a = std::move(fl.solution);
      row.residual = fl.residual_norm;
      row.warning = fl.conditioning_warning;
    }
    table.rows_.emplace(n, std::move(row));
  }
  return table;
}

TrigPolynomial build_f_n(const DualCoefficientTable& table, Index n) {
  if (table.exclusion().contains(n))
    throw std::out_of_range("build_f_n: index lies in the excluded set");
  const VectorXr& a = table.row(n);  // throws out_of_range when n misses the window
  const auto& nodes = table.exclusion().lambda_nodes().nodes();
  std::vector<TrigTerm> terms;
  terms.reserve(static_cast<std::size_t>(a.size()) + 1);
  terms.push_back({table.exclusion().lambda(n), Complex(1, 0)});
  for (Eigen::Index j = 0; j < a.size(); ++j) terms.push_back({nodes[j], Complex(a[j], 0)});
  return TrigPolynomial(std::move(terms));
}

RationalTrigPolynomial build_f_n_exact(const DualCoefficientTable& table, Index n) {
  if (table.exclusion().contains(n))
    throw std::out_of_range("build_f_n_exact: index lies in the excluded set");
  const VectorXq& a = table.exact_row(n);
  const auto& ints = table.exclusion().indices();
  std::vector<RationalTrigTerm> terms;
  terms.reserve(ints.size() + 1);
  terms.push_back({n, Rational(1)});
  for (std::size_t j = 0; j < ints.size(); ++j)
    terms.push_back({ints[j], a[static_cast<Eigen::Index>(j)]});
  return RationalTrigPolynomial(std::move(terms));
}

// ---------------------------------------------------------------------------

PolynomialForm polynomial_form(const ExclusionSet& exclusion) {
  const int m = exclusion.cardinality();
  PolynomialForm out;
  out.c.resize(m, m);

  if (exclusion.frequency_map().is_trigonometric()) {
    // exact route on the integer nodes, rescaled column-wise by (2π)^{1−k}
    const auto& ints = exclusion.indices();
    MatrixXq chat(m, m);
    bool lead = true;
    for (int j = 0; j < m; ++j) {
      // monic Π_{i≠j}(x − n_i) by incremental multiplication
      std::vector<Rational> poly{Rational(1)};
      Rational w(1);
      for (int i = 0; i < m; ++i) {
        if (i == j) continue;
        w *= Rational(ints[j] - ints[i]);
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t d = 0; d < poly.size(); ++d) {
          next[d + 1] += poly[d];
          next[d] -= Rational(ints[i]) * poly[d];
        }
        poly = std::move(next);
      }
      // a_{n,j} = −(1/w_j) Σ_k s_{j,k} n^{k−1} and (−n)^{k−1} = (−1)^{k−1} n^{k−1}
      for (int k = 1; k <= m; ++k) {
        Rational c = poly[static_cast<std::size_t>(k - 1)] / w;
        if (k % 2 == 1) c = -c;  // (−1)^k
        chat(j, k - 1) = c;
        if (k == m && c == 0) lead = false;
      }
    }
    Real pw = 1;
    for (int k = 1; k <= m; ++k) {
      for (int j = 0; j < m; ++j) out.c(j, k - 1) = to_real(chat(j, k - 1)) / pw;
      pw *= two_pi;
    }
    out.c_exact_scaled = std::move(chat);
    // certificate: the leading column is ±1/w_j, nonzero iff every bottom-row
    // cofactor of the node matrix is nonzero
    out.leading_nonzero = lead && last_row_cofactors_exact(ints).all_nonzero;
    return out;
  }

  const auto& nodes = exclusion.lambda_nodes().nodes();
  bool lead = true;
  for (int j = 0; j < m; ++j) {
    std::vector<Real> poly{1.0};
    Real w = 1;
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      w *= nodes[j] - nodes[i];
      std::vector<Real> next(poly.size() + 1, 0.0);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d + 1] += poly[d];
        next[d] -= nodes[i] * poly[d];
      }
      poly = std::move(next);
    }
    for (int k = 1; k <= m; ++k) {
      Real c = poly[static_cast<std::size_t>(k - 1)] / w;
      if (k % 2 == 1) c = -c;
      out.c(j, k - 1) = c;
      if (k == m && !(std::abs(c) > 0)) lead = false;
    }
  }
  out.leading_nonzero = lead;
  return out;
}

// ---------------------------------------------------------------------------

TrigPolynomial annihilator_polynomial(const ExclusionSet& exclusion) {
  const auto& nodes = exclusion.lambda_nodes().nodes();
  const int m = exclusion.cardinality();
  // h_j = 1/w_j kills Σ_j h_j Λ_j^k for k < M−1 (divided difference of t^k
  // over M nodes) and gives 1 at k = M−1; normalize to h_1 = 1
  std::vector<Real> w(static_cast<std::size_t>(m), 1.0);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      if (i != j) w[static_cast<std::size_t>(j)] *= nodes[j] - nodes[i];
  std::vector<TrigTerm> terms;
  terms.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    terms.push_back({nodes[j], Complex(w[0] / w[static_cast<std::size_t>(j)], 0)});
  return TrigPolynomial(std::move(terms));
}

std::optional<RationalTrigPolynomial> annihilator_polynomial_exact(const ExclusionSet& exclusion) {
  if (!exclusion.frequency_map().is_trigonometric()) return std::nullopt;
  const auto& ints = exclusion.indices();
  const int m = exclusion.cardinality();
  std::vector<Rational> w(static_cast<std::size_t>(m), Rational(1));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      if (i != j) w[static_cast<std::size_t>(j)] *= Rational(ints[j] - ints[i]);
  std::vector<RationalTrigTerm> terms;
  for (int j = 0; j < m; ++j)
    terms.push_back({ints[j], w[0] / w[static_cast<std::size_t>(j)]});
  return RationalTrigPolynomial(std::move(terms));
}

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

// ∫_lo^hi t^{p} dt / hi^{p+1} = ∫_{lo/hi}^{1} s^{p} ds, stable across the
// p = −1 pole via expm1.
Real unit_power_integral(Real p, Real ratio) {
  const Real q = p + 1.0;
  const Real x = q * std::log(ratio);
  if (std::abs(x) < 1e-300) return -std::log(ratio);
  return -std::expm1(x) / q;
}

// Scaled Taylor coefficients v_k = P^{(k)}(0)/k! · hi^k, k = 0..K−1.
constexpr int taylor_terms = 64;

std::vector<Complex> scaled_taylor_exact(const RationalTrigPolynomial& p, Real hi) {
  const auto& terms = p.terms();
  std::vector<Rational> powers(terms.size(), Rational(1));
  std::vector<Complex> v(taylor_terms);
  Quad factor(1);  // (2π·hi)^k / k!
  const Quad step(two_pi * hi);
  for (int k = 0; k < taylor_terms; ++k) {
    Rational s(0);
    for (std::size_t j = 0; j < terms.size(); ++j) s += terms[j].coefficient * powers[j];
    const Real mag = static_cast<Real>(Quad(s) * factor);
    switch (k & 3) {  // i^k
      case 0: v[static_cast<std::size_t>(k)] = {mag, 0}; break;
      case 1: v[static_cast<std::size_t>(k)] = {0, mag}; break;
      case 2: v[static_cast<std::size_t>(k)] = {-mag, 0}; break;
      case 3: v[static_cast<std::size_t>(k)] = {0, -mag}; break;
    }
    for (std::size_t j = 0; j < terms.size(); ++j) powers[j] *= terms[j].harmonic;
    factor *= step / (k + 1);
  }
  return v;
}

std::vector<Complex> scaled_taylor_float(const TrigPolynomial& p, Real hi) {
  const auto& terms = p.terms();
  // running (μ_j·hi)^k / k! per term keeps every factor below (1/2)^k/k!
  std::vector<Real> powers(terms.size(), 1.0);
  std::vector<Complex> v(taylor_terms);
  for (int k = 0; k < taylor_terms; ++k) {
    Complex s(0, 0);
    for (std::size_t j = 0; j < terms.size(); ++j) s += terms[j].coefficient * powers[j];
    const Complex ik = std::pow(Complex(0, 1), k);
    v[static_cast<std::size_t>(k)] = ik * s;
    for (std::size_t j = 0; j < terms.size(); ++j)
      powers[j] *= terms[j].frequency * hi / static_cast<Real>(k + 1);
  }
  return v;
}

Real taylor_weighted_square(const std::vector<Complex>& v, Real alpha, Real lo, Real hi) {
  const Real ratio = lo / hi;
  Real total = 0;
  for (int k = 0; k < taylor_terms; ++k) {
    if (v[static_cast<std::size_t>(k)] == Complex(0, 0)) continue;
    for (int l = 0; l < taylor_terms; ++l) {
      const Complex prod = v[static_cast<std::size_t>(k)] * std::conj(v[static_cast<std::size_t>(l)]);
      if (prod == Complex(0, 0)) continue;
      total += prod.real() * unit_power_integral(k + l - 2.0 * alpha, ratio);
    }
  }
  // ∫ t^{k+l−2α} = hi^{k+l−2α+1}·unit integral and v already carries hi^{k+l}
  return total * std::pow(hi, 1.0 - 2.0 * alpha);
}

Real pair_kernel_weighted_square(const TrigPolynomial& p, Real alpha, Real lo, Real hi,
                                 const ToleranceConfig& cfg) {
  const auto& terms = p.terms();
  Real total = 0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const Complex self = terms[j].coefficient * std::conj(terms[j].coefficient);
    total += self.real() * moment_integral_segment(-2.0 * alpha, 0.0, lo, hi, cfg).real();
    for (std::size_t l = j + 1; l < terms.size(); ++l) {
      // the (j,l) and (l,j) terms are conjugate; fold them into one
      const Complex coeff = terms[j].coefficient * std::conj(terms[l].coefficient);
      const Complex seg = moment_integral_segment(
          -2.0 * alpha, terms[j].frequency - terms[l].frequency, lo, hi, cfg);
      total += 2.0 * (coeff * seg).real();
    }
  }
  return total;
}

Real max_abs_frequency(const TrigPolynomial& p) {
  Real w = 0;
  for (const auto& t : p.terms()) w = std::max(w, std::abs(t.frequency));
  return w;
}

}  // namespace

Real weighted_square_segment(const TrigPolynomial& p, Real alpha, Real lo, Real hi,
                             const ToleranceConfig& cfg) {
  if (p.is_zero()) return 0;
  if (hi * max_abs_frequency(p) <= 0.5)
    return taylor_weighted_square(scaled_taylor_float(p, hi), alpha, lo, hi);
  return pair_kernel_weighted_square(p, alpha, lo, hi, cfg);
}

Real weighted_square_segment(const RationalTrigPolynomial& p, Real alpha, Real lo, Real hi,
                             const ToleranceConfig& cfg) {
  if (p.is_zero()) return 0;
  Index max_harmonic = 0;
  for (const auto& t : p.terms()) max_harmonic = std::max(max_harmonic, std::abs(t.harmonic));
  if (hi * two_pi * static_cast<Real>(max_harmonic) <= 0.5)
    return taylor_weighted_square(scaled_taylor_exact(p, hi), alpha, lo, hi);
  return pair_kernel_weighted_square(p.to_float(), alpha, lo, hi, cfg);
}

AnnihilatorWitness annihilator_witness(const ExclusionSet& exclusion, Real alpha,
                                       const ToleranceConfig& cfg) {
  if (!(alpha > 0)) throw std::domain_error("annihilator_witness: alpha must be positive");
  AnnihilatorWitness out;
  out.alpha = alpha;
  out.H = annihilator_polynomial(exclusion);
  out.H_exact = annihilator_polynomial_exact(exclusion);
  const int m = exclusion.cardinality();
  out.vanish_order = out.H_exact ? vanishing_order(*out.H_exact, m + 1)
                                 : vanishing_order(out.H, m + 1);

  // ∫_ε¹ |H|² t^{−2α} dt over a geometric ε grid; the increments shrink
  // geometrically exactly when the full integral is finite (α < M − 1/2)
  const auto segment = [&](Real lo, Real hi) {
    return out.H_exact ? weighted_square_segment(*out.H_exact, alpha, lo, hi, cfg)
                       : weighted_square_segment(out.H, alpha, lo, hi, cfg);
  };
  Real value = segment(0.0625, 1.0);
  Real prev_diff = 0, diff = 0;
  Real eps = 0.0625;
  for (int i = 0; i < 16; ++i) {
    prev_diff = diff;
    diff = segment(eps * 0.5, eps);
    value += diff;
    eps *= 0.5;
  }
  const Real ratio = diff > 0 && prev_diff > 0 ? diff / prev_diff : 1.0;
  if (ratio < 0.95 && diff >= 0) {
    out.l2_norm_of_h = std::sqrt(value + diff * ratio / (1.0 - ratio));
  } else {
    out.l2_norm_of_h = std::numeric_limits<Real>::infinity();
  }
  return out;
}

Complex biorthogonality_inner_product(const ExclusionSet& exclusion, Index n, Index m) {
  if (!exclusion.frequency_map().is_trigonometric())
    throw UnsupportedRealization(
        "biorthogonality_inner_product: closed form exists only for the trigonometric map");
  if (exclusion.contains(n) || exclusion.contains(m))
    throw std::invalid_argument("biorthogonality_inner_product: indices must lie outside A");

  const auto unit_moment = [](Real theta) -> Complex {
    if (theta == 0) return {1.0, 0.0};
    return (Complex(std::cos(theta), std::sin(theta)) - 1.0) / Complex(0, theta);
  };

  const auto sol = solve_power_rhs(exclusion.lambda_nodes(), exclusion.lambda(n));
  const Real mu_m = two_pi * static_cast<Real>(m);
  Complex total = unit_moment(exclusion.lambda(n) - mu_m);
  const auto& nodes = exclusion.lambda_nodes().nodes();
  for (Eigen::Index j = 0; j < sol.solution.size(); ++j)
    total += sol.solution[j] * unit_moment(nodes[j] - mu_m);
  return total;
}

}  // namespace wexp
