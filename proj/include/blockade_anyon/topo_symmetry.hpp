#pragma once

// Topological-symmetry tests, symmetric-operator counting, the Rydberg/anyon operator
// dictionary and the operator-support analyzer.

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anyon_projectors.hpp"
#include "constants.hpp"
#include "rydberg_ops.hpp"

namespace blockade_anyon {

struct SymmetryReport {
  std::string op_id;
  std::string sector;
  double commutator_norm = 0.0;
  double tolerance = 0.0;
  bool is_symmetric = true;
};

inline bool has_free_total_charge(const Sector& s) {
  return s.z0() == BoundaryLabel::Tau && s.zn() == BoundaryLabel::Tau;
}

// ||[O, P^1_N]||_F against tol. Sectors with a fixed total charge report zero.
inline SymmetryReport is_topologically_symmetric(const SparseOperator& op, double tol,
                                                 std::string op_id = {}) {
  SymmetryReport r;
  r.op_id = std::move(op_id);
  r.sector = op.sector()->code();
  r.tolerance = tol;
  if (has_free_total_charge(*op.sector()))
    r.commutator_norm = frobenius_norm(commutator(op, total_charge_projector(op.sector())));
  r.is_symmetric = r.commutator_norm <= tol;
  return r;
}

// P O P + (1-P) O (1-P) with P the total charge projector.
inline SparseOperator symmetrize(const SparseOperator& op) {
  if (!has_free_total_charge(*op.sector())) return op;
  const auto p = total_charge_projector(op.sector());
  const auto q = add(identity(op.sector()), p, 1.0, -1.0);
  return add(multiply(multiply(p, op), p), multiply(multiply(q, op), q));
}

struct SymmetricCountReport {
  int anyons = 0;
  std::uint64_t n_op = 0;          // F_{N-1}^2 + F_N^2
  std::uint64_t total = 0;         // F_{N+1}^2
  std::uint64_t numerical_rank = 0;
  double rank_tolerance = 1e-8;    // relative to the largest singular value
  bool verified = false;
};

// Counts topologically symmetric operators in the (tau, tau) sector and checks the count
// against the numerical rank of the symmetrization superoperator P(x)P + Q(x)Q.
inline SymmetricCountReport symmetric_operator_count(int n, std::size_t operator_space_limit = 4096) {
  require_anyons(n);
  SymmetricCountReport r;
  r.anyons = n;
  const std::uint64_t f_prev = n >= 2 ? fib(n - 1) : 0;
  r.n_op = f_prev * f_prev + fib(n) * fib(n);
  r.total = fib(n + 1) * fib(n + 1);
  if (r.total > operator_space_limit) {
    throw CapacityError("operator space of dimension " + std::to_string(r.total) +
                        " exceeds the dense limit " + std::to_string(operator_space_limit));
  }
  const auto sector = Sector::make(n, BoundaryLabel::Tau, BoundaryLabel::Tau);
  const Eigen::MatrixXd p = total_charge_projector(sector).to_dense();
  const Eigen::MatrixXd q = Eigen::MatrixXd::Identity(p.rows(), p.cols()) - p;
  // Column (k, l) holds vec(P E_kl P + Q E_kl Q); the superoperator is symmetric.
  const Eigen::Index d = p.rows();
  Eigen::MatrixXd super(d * d, d * d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          super(i * d + j, k * d + l) = p(i, k) * p(l, j) + q(i, k) * q(l, j);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(super, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd sv = eig.eigenvalues().cwiseAbs();
  const double cutoff = r.rank_tolerance * sv.maxCoeff();
  r.numerical_rank = static_cast<std::uint64_t>((sv.array() > cutoff).count());
  r.verified = r.numerical_rank == r.n_op && r.n_op < r.total;
  return r;
}

// Rank of the span of products of up to max_factors window projectors (all contiguous
// windows, both channels) in the (tau, tau) sector.
inline std::uint64_t window_product_span_rank(int n, int max_factors) {
  const auto sector = Sector::make(n, BoundaryLabel::Tau, BoundaryLabel::Tau);
  std::vector<Eigen::MatrixXd> factors;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (auto c : {ChargeChannel::Vacuum, ChargeChannel::Tau})
        factors.push_back(window_charge_projector(sector, {a, b}, c).to_dense());
  const Eigen::Index d = static_cast<Eigen::Index>(sector->dim());
  std::vector<Eigen::MatrixXd> words{Eigen::MatrixXd::Identity(d, d)};
  std::vector<Eigen::MatrixXd> frontier = words;
  for (int len = 1; len <= max_factors; ++len) {
    std::vector<Eigen::MatrixXd> next;
    for (const auto& w : frontier)
      for (const auto& f : factors) next.push_back(w * f);
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  Eigen::MatrixXd stacked(d * d, static_cast<Eigen::Index>(words.size()));
  for (std::size_t k = 0; k < words.size(); ++k)
    stacked.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXd>(words[k].data(), d * d);
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(stacked);
  const Eigen::VectorXd& sv = svd.singularValues();
  return static_cast<std::uint64_t>((sv.array() > 1e-8 * sv.maxCoeff()).count());
}

// ---- operator support ------------------------------------------------------------

struct SupportReport {
  std::string op_id;
  int a = 1;  // minimal Rydberg window [a, b] the operator acts on or reads
  int b = 1;
  bool full = false;
  // Sites actually changed by off-diagonal elements; empty for diagonal operators.
  std::optional<std::pair<int, int>> action_window;
  // Matrix elements depend only on the action window plus one fence site on each side.
  bool context_independent = true;
};

namespace detail {

inline std::uint64_t range_mask(const Sector& s, int a, int b) {
  std::uint64_t m = 0;
  for (int i = std::max(a, 1); i <= std::min(b, s.sites()); ++i) m |= s.site_mask(i);
  return m;
}

// Off-diagonal elements only connect states that differ inside [a, b].
inline bool acts_within(const SparseOperator& op, int a, int b, double tol) {
  const auto& s = *op.sector();
  const auto states = s.states();
  const std::uint64_t outside = ~range_mask(s, a, b);
  bool ok = true;
  op.for_each([&](std::size_t r, std::size_t c, double v) {
    if (ok && std::abs(v) > tol && ((states[r] ^ states[c]) & outside) != 0) ok = false;
  });
  return ok;
}

// Among pairs of states that agree outside [a, b], the matrix element is a function of
// the restrictions of both states to [lo, hi] only.
inline bool reads_only(const SparseOperator& op, int a, int b, int lo, int hi, double tol) {
  const auto& s = *op.sector();
  const auto states = s.states();
  const std::uint64_t outside = ~range_mask(s, a, b);
  const std::uint64_t readable = range_mask(s, lo, hi);
  std::map<std::uint64_t, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < states.size(); ++k) groups[states[k] & outside].push_back(k);
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> seen;
  for (const auto& [key, members] : groups) {
    for (std::size_t r : members) {
      for (std::size_t c : members) {
        const double v = op.at(r, c);
        const auto local = std::make_pair(states[r] & readable, states[c] & readable);
        const auto [it, inserted] = seen.try_emplace(local, v);
        if (!inserted && std::abs(it->second - v) > tol) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// Smallest contiguous window [a, b] of Rydberg sites such that the operator only changes
// sites in [a, b] and its matrix elements only read sites in [a, b] (boundary labels are
// constants of the sector). Found by scanning widths from 1 upwards.
inline SupportReport support_window(const SparseOperator& op, double tol, std::string op_id = {}) {
  const auto& s = *op.sector();
  const int sites = s.sites();
  SupportReport r;
  r.op_id = std::move(op_id);
  r.a = 1;
  r.b = sites;
  bool found = false;
  for (int width = 1; width <= sites && !found; ++width) {
    for (int a = 1; a + width - 1 <= sites; ++a) {
      const int b = a + width - 1;
      if (detail::acts_within(op, a, b, tol) && detail::reads_only(op, a, b, a, b, tol)) {
        r.a = a;
        r.b = b;
        found = true;
        break;
      }
    }
  }
  r.full = r.a == 1 && r.b == sites;

  // Flipped sites: the union of differing bits over nonzero off-diagonal elements.
  const auto states = s.states();
  std::uint64_t flipped = 0;
  op.for_each([&](std::size_t row, std::size_t col, double v) {
    if (std::abs(v) > tol) flipped |= states[row] ^ states[col];
  });
  if (flipped == 0) {
    r.context_independent = !r.full;
  } else {
    int lo = sites, hi = 1;
    for (int i = 1; i <= sites; ++i) {
      if (flipped & s.site_mask(i)) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
    }
    r.action_window = std::make_pair(lo, hi);
    r.context_independent = detail::reads_only(op, lo, hi, lo - 1, hi + 1, tol);
  }
  return r;
}

// ---- dictionary ------------------------------------------------------------------

enum class RydbergKind { SigmaZ, SigmaX };

struct DictionaryTerm {
  std::string name;
  double expected = 0.0;
  std::optional<double> recovered;  // least-squares value where the term is identifiable
};

struct DictionaryReport {
  std::string sector;
  int site = 0;
  RydbergKind kind = RydbergKind::SigmaZ;
  std::vector<DictionaryTerm> terms;
  double additive_constant = 0.0;
  double residual = 0.0;
  double max_relative_error = 0.0;  // over recovered terms
  bool coefficients_identifiable = false;
  std::optional<SymmetryReport> symmetry;
};

inline constexpr double kDictionaryTolerance = 1e-9;

namespace detail {

// Least-squares coefficients of target in span(ops); nullopt when the ops are not
// linearly independent.
inline std::optional<Eigen::VectorXd> fit_coefficients(const std::vector<SparseOperator>& ops,
                                                       const SparseOperator& target) {
  const auto k = static_cast<Eigen::Index>(ops.size());
  Eigen::MatrixXd gram(k, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index x = 0; x < k; ++x) {
    rhs(x) = frobenius_inner(ops[static_cast<std::size_t>(x)], target);
    for (Eigen::Index y = 0; y < k; ++y)
      gram(x, y) = frobenius_inner(ops[static_cast<std::size_t>(x)], ops[static_cast<std::size_t>(y)]);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.eigenvalues().minCoeff() < 1e-10 * eig.eigenvalues().maxCoeff()) return std::nullopt;
  return gram.ldlt().solve(rhs);
}

}  // namespace detail

// Expresses n_i (SigmaZ) or the projected flip (SigmaX) in anyonic operators:
//   n_i = (1 + Z_i) / 2
//   sigma~x_i = phi^{3/2} P^1_2(i, i+1) + sqrt(phi)(1 - phi)/4 (Z_{i-1} + Z_{i+1})
//               - phi^{5/2}/4 Z_{i-1} Z_{i+1} - (1 - phi)/(2 sqrt(phi)) Z_i + const
// and certifies the identity by its residual norm.
inline DictionaryReport dictionary_report(const SectorPtr& sector, int i, RydbergKind kind) {
  detail::require_site(*sector, i, 1, sector->sites(), "dictionary_report");
  using namespace golden;
  DictionaryReport r;
  r.sector = sector->code();
  r.site = i;
  r.kind = kind;

  SparseOperator target;
  std::vector<SparseOperator> ops;
  if (kind == RydbergKind::SigmaZ) {
    target = op_number(sector, i);
    ops = {op_zhat(sector, i)};
    r.terms = {{"Z_i", 0.5, {}}};
  } else {
    target = op_flip(sector, i);
    const auto z_left = op_zhat(sector, i - 1);
    const auto z_right = op_zhat(sector, i + 1);
    ops = {pair_vacuum_projector(sector, i), z_left, z_right, multiply(z_left, z_right),
           op_zhat(sector, i)};
    const double zz = sqrt_phi * (1.0 - phi) / 4.0;
    r.terms = {{"P1_2(i,i+1)", phi_3_2, {}},
               {"Z_{i-1}", zz, {}},
               {"Z_{i+1}", zz, {}},
               {"Z_{i-1}Z_{i+1}", -phi_5_2 / 4.0, {}},
               {"Z_i", -(1.0 - phi) / (2.0 * sqrt_phi), {}}};
  }

  // The constant is whatever multiple of the identity the quoted terms leave over.
  SparseOperator remainder = target;
  for (std::size_t k = 0; k < ops.size(); ++k) remainder = add(remainder, ops[k], 1.0, -r.terms[k].expected);
  r.additive_constant = trace(remainder) / static_cast<double>(sector->dim());
  r.residual = frobenius_norm(add(remainder, identity(sector), 1.0, -r.additive_constant));

  ops.push_back(identity(sector));
  if (const auto fit = detail::fit_coefficients(ops, target)) {
    r.coefficients_identifiable = true;
    for (std::size_t k = 0; k < r.terms.size(); ++k) {
      auto& t = r.terms[k];
      t.recovered = (*fit)(static_cast<Eigen::Index>(k));
      r.max_relative_error =
          std::max(r.max_relative_error, std::abs(*t.recovered - t.expected) / std::abs(t.expected));
    }
  }

  if (has_free_total_charge(*sector)) {
    const auto rydberg = kind == RydbergKind::SigmaZ ? op_zhat(sector, i) : op_flip(sector, i);
    r.symmetry = is_topologically_symmetric(
        rydberg, 1e-10, (kind == RydbergKind::SigmaZ ? "zhat:" : "flipx:") + std::to_string(i));
  }
  if (r.residual > kDictionaryTolerance) {
    throw DictionaryError("operator dictionary does not close at site " + std::to_string(i) +
                              " in " + sector->describe(),
                          r.residual);
  }
  return r;
}

}  // namespace blockade_anyon
