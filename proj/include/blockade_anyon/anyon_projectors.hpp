#pragma once

// Fusion-channel projectors of the Fibonacci chain, realized on the Rydberg basis.

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "commutant.hpp"
#include "constants.hpp"
#include "rydberg_ops.hpp"
#include "sparse_operator.hpp"

namespace blockade_anyon {

enum class ChargeChannel { Vacuum, Tau };

inline std::string to_string(ChargeChannel c) { return c == ChargeChannel::Vacuum ? "1" : "tau"; }

// Contiguous block of anyons a..b (1-based, inclusive).
struct WindowSpec {
  int a = 1;
  int b = 1;

  int size() const noexcept { return b - a + 1; }
  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

inline double projector_tolerance(std::size_t dim) {
  return 1e-10 * std::max(1.0, std::sqrt(static_cast<double>(dim)));
}

// Vacuum channel of anyons (i, i+1), written in Rydberg operators:
//   sigma~x_i / phi^{3/2} - (n_{i-1} + n_{i+1} - 1) / phi + phi n_{i-1} n_{i+1}
//   + (1 - phi) / phi^2 n_i
// Idempotence and symmetry are checked before returning.
inline SparseOperator pair_vacuum_projector(const SectorPtr& sector, int i) {
  detail::require_site(*sector, i, 1, sector->sites(), "pair_vacuum_projector");
  using namespace golden;
  std::vector<Triplet> t;
  const auto states = sector->states();
  const std::uint64_t mask = sector->site_mask(i);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::uint64_t s = states[k];
    const int left = sector->occupation(s, i - 1);
    const int mid = sector->occupation(s, i);
    const int right = sector->occupation(s, i + 1);
    const double diag = -inv_phi * (left + right - 1) + phi * left * right +
                        (1.0 - phi) * inv_phi2 * mid;
    t.push_back({k, k, diag});
    if (!left && !right) t.push_back({sector->rank_unchecked(s ^ mask), k, inv_phi_3_2});
  }
  auto p = SparseOperator::from_triplets(sector, std::move(t));
  const double residual = frobenius_distance(multiply(p, p), p);
  if (!p.hermitian() || residual > projector_tolerance(p.dim())) {
    throw StructureError("pair projector at i=" + std::to_string(i) + " in " +
                             sector->describe() + " is not an orthogonal projector",
                         residual);
  }
  return p;
}

inline std::vector<SparseOperator> pair_projectors(const SectorPtr& sector, int first, int last) {
  std::vector<SparseOperator> out;
  for (int i = first; i <= last; ++i) out.push_back(pair_vacuum_projector(sector, i));
  return out;
}

// Fusion paths of m tau anyons ending in total charge (1, tau): (F_{m-1}, F_m).
inline std::pair<std::uint64_t, std::uint64_t> charge_resolved_path_count(int m) {
  if (m < 1) throw ArgumentError("charge_resolved_path_count needs m >= 1");
  if (m == 1) return {0, 1};
  return {fib(m - 1), fib(m)};
}

inline std::uint64_t channel_path_count(int m, ChargeChannel c) {
  const auto [vac, tau] = charge_resolved_path_count(m);
  return c == ChargeChannel::Vacuum ? vac : tau;
}

// Dimension of the chain after contracting the window into a single leg of charge c,
// counted with the sector's boundary labels.
inline std::uint64_t complement_multiplicity(const Sector& sector, WindowSpec w, ChargeChannel c) {
  std::uint64_t one = sector.z0() == BoundaryLabel::One ? 1 : 0;
  std::uint64_t tau = 1 - one;
  auto fuse_tau = [&] {
    const std::uint64_t next_one = tau;
    const std::uint64_t next_tau = one + tau;
    one = next_one;
    tau = next_tau;
  };
  for (int k = 1; k <= sector.anyons(); ++k) {
    if (k == w.a) {
      if (c == ChargeChannel::Tau) fuse_tau();
      k = w.b;
      continue;
    }
    fuse_tau();
  }
  return sector.zn() == BoundaryLabel::One ? one : tau;
}

// Expected rank of the charge-c projector of a window: paths inside times complement.
inline std::uint64_t window_channel_rank(const Sector& sector, WindowSpec w, ChargeChannel c) {
  return channel_path_count(w.size(), c) * complement_multiplicity(sector, w, c);
}

namespace detail {

inline void require_window(const Sector& s, WindowSpec w) {
  if (w.a < 1 || w.b > s.anyons() || w.a > w.b) {
    throw ArgumentError("window [" + std::to_string(w.a) + ", " + std::to_string(w.b) +
                        "] is not a contiguous range of anyons in " + s.describe());
  }
}

template <typename Value>
class ProjectorCache {
 public:
  using Key = std::tuple<int, int, int, int, int, int>;

  std::shared_ptr<const Value> find(const Key& k) const {
    std::shared_lock lock(mutex_);
    const auto it = entries_.find(k);
    return it == entries_.end() ? nullptr : it->second;
  }

  std::shared_ptr<const Value> insert(const Key& k, Value v) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.try_emplace(k, std::make_shared<const Value>(std::move(v)));
    return it->second;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const Value>> entries_;
};

inline ProjectorCache<SparseOperator>& projector_cache() {
  static ProjectorCache<SparseOperator> cache;
  return cache;
}

inline ProjectorCache<SparseOperator>::Key cache_key(const Sector& s, int kind, int a, int b) {
  return {s.anyons(), static_cast<int>(s.z0()), static_cast<int>(s.zn()), kind, a, b};
}

// Product of disjoint pair projectors covering the window from the left. Each pair is in
// the vacuum channel, so the whole window carries charge 1 for even m and tau for odd m.
inline Eigen::MatrixXd disjoint_pair_product(const SectorPtr& sector, WindowSpec w) {
  Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(sector->dim()),
                                                   static_cast<Eigen::Index>(sector->dim()));
  for (int i = w.a; i + 1 <= w.b; i += 2) prod = prod * pair_vacuum_projector(sector, i).to_dense();
  return prod;
}

inline std::size_t dense_rank(const Eigen::MatrixXd& projector) {
  return static_cast<std::size_t>(std::llround(projector.trace()));
}

// Picks out the central projector belonging to `channel` among the components of the
// window algebra's centre.
inline Eigen::MatrixXd identify_channel(const SectorPtr& sector, WindowSpec w,
                                        ChargeChannel channel,
                                        const std::vector<Eigen::MatrixXd>& components) {
  const std::uint64_t r_vac = window_channel_rank(*sector, w, ChargeChannel::Vacuum);
  const std::uint64_t r_tau = window_channel_rank(*sector, w, ChargeChannel::Tau);
  const std::size_t expected = (r_vac > 0 ? 1 : 0) + (r_tau > 0 ? 1 : 0);
  const std::string where = "window [" + std::to_string(w.a) + ", " + std::to_string(w.b) +
                            "] in " + sector->describe();
  if (components.size() != expected) {
    throw StructureError("centre of " + where + " has " + std::to_string(components.size()) +
                         " components, expected " + std::to_string(expected));
  }
  const auto d = static_cast<Eigen::Index>(sector->dim());
  const std::uint64_t wanted = channel == ChargeChannel::Vacuum ? r_vac : r_tau;
  if (wanted == 0) return Eigen::MatrixXd::Zero(d, d);

  if (expected == 1) {
    if (dense_rank(components.front()) != wanted)
      throw StructureError("rank mismatch for single-channel " + where);
    return components.front();
  }

  if (r_vac != r_tau) {
    for (const auto& q : components)
      if (dense_rank(q) == wanted) return q;
    throw StructureError("no central projector of rank " + std::to_string(wanted) + " for " +
                         where);
  }

  // Equal ranks: the disjoint pair product lies entirely inside one channel.
  const Eigen::MatrixXd pairs = disjoint_pair_product(sector, w);
  const double scale = pairs.norm();
  if (scale < 1e-8) throw StructureError("pair-product identification vanishes for " + where);
  const ChargeChannel pair_channel = w.size() % 2 == 0 ? ChargeChannel::Vacuum : ChargeChannel::Tau;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if ((components[k] * pairs - pairs).norm() < 1e-8 * scale)
      return channel == pair_channel ? components[k] : components[1 - k];
  }
  throw StructureError("pair product is not inside a single channel for " + where);
}

inline void check_projector(const SparseOperator& p, std::span<const SparseOperator> commuting,
                            const std::string& what) {
  const double tol = projector_tolerance(p.dim());
  const double idem = frobenius_distance(multiply(p, p), p);
  const double herm = frobenius_distance(adjoint(p), p);
  if (idem > tol || herm > tol) throw StructureError(what + " is not an orthogonal projector", std::max(idem, herm));
  for (const auto& g : commuting) {
    const double c = frobenius_norm(commutator(p, g));
    if (c > tol) throw StructureError(what + " does not commute with its generators", c);
  }
}

}  // namespace detail

// Projector onto total charge 1 of all N anyons. Outside the (tau, tau) sector the charge
// is fixed by the boundary labels and the result is 1 or 0 times the identity.
inline SparseOperator total_charge_projector(const SectorPtr& sector) {
  if (sector->z0() != BoundaryLabel::Tau || sector->zn() != BoundaryLabel::Tau) {
    return sector->z0() == sector->zn() ? identity(sector) : zero(sector);
  }
  const auto key = detail::cache_key(*sector, 0, 1, sector->anyons());
  if (auto hit = detail::projector_cache().find(key)) return *hit;

  const int n = sector->anyons();
  const auto generators = pair_projectors(sector, 1, n - 1);
  const auto basis = commutant_basis(generators);
  if (basis.size() != 2) {
    throw StructureError("commutant of the pair projectors in " + sector->describe() +
                         " has dimension " + std::to_string(basis.size()) + ", expected 2");
  }

  // Split the commutant into its two minimal projectors using the element furthest from
  // the identity.
  const auto d = static_cast<Eigen::Index>(sector->dim());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd traceless;
  double best = -1.0;
  for (const auto& x : basis) {
    const Eigen::MatrixXd m = x.to_dense();
    const Eigen::MatrixXd t = m - (m.trace() / static_cast<double>(d)) * id;
    if (t.norm() > best) {
      best = t.norm();
      traceless = t;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(traceless);
  const auto clusters = detail::cluster_eigenvalues(
      eig.eigenvalues(), 1e-6 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff()));
  if (clusters.size() != 2) {
    throw StructureError("commutant element of " + sector->describe() + " has " +
                         std::to_string(clusters.size()) + " distinct eigenvalues, expected 2");
  }
  std::vector<Eigen::MatrixXd> components;
  for (const auto& c : clusters) {
    const auto block = eig.eigenvectors().middleCols(c.start, c.size);
    components.push_back(block * block.transpose());
  }
  const WindowSpec whole{1, n};
  auto p = SparseOperator::from_dense(
      sector, detail::identify_channel(sector, whole, ChargeChannel::Vacuum, components));
  if (rank(p) != fib(n - 1))
    throw StructureError("total charge projector has the wrong rank in " + sector->describe());
  detail::check_projector(p, generators, "total charge projector");
  return *detail::projector_cache().insert(key, std::move(p));
}

// (1 + phi^-2) P^1_N - phi^-2: the loop-braid test operator.
inline SparseOperator otest_operator(const SectorPtr& sector) {
  return add(total_charge_projector(sector), identity(sector), 1.0 + golden::inv_phi2,
             -golden::inv_phi2);
}

// Projector onto charge c of the contiguous window, built from the centre of the algebra
// generated by the pair projectors inside the window.
inline SparseOperator window_charge_projector(const SectorPtr& sector, WindowSpec w,
                                              ChargeChannel c) {
  detail::require_window(*sector, w);
  if (w.size() == 1) return c == ChargeChannel::Tau ? identity(sector) : zero(sector);
  const auto key = detail::cache_key(*sector, 1 + static_cast<int>(c), w.a, w.b);
  if (auto hit = detail::projector_cache().find(key)) return *hit;

  const auto generators = pair_projectors(sector, w.a, w.b - 1);
  std::optional<SparseOperator> result;
  std::string last_error;
  // A second draw of the generic element guards against accidental eigenvalue overlaps.
  for (std::uint64_t attempt = 0; attempt < 3 && !result; ++attempt) {
    CommutantOptions opts;
    opts.seed += attempt * 7919;
    try {
      const auto components = central_projectors(generators, opts);
      result = SparseOperator::from_dense(sector,
                                          detail::identify_channel(sector, w, c, components));
    } catch (const StructureError& e) {
      last_error = e.what();
    }
  }
  if (!result) throw StructureError(last_error);
  const std::uint64_t expected = window_channel_rank(*sector, w, c);
  if (rank(*result) != expected) {
    throw StructureError("window projector rank " + std::to_string(rank(*result)) +
                         " differs from the path count " + std::to_string(expected));
  }
  detail::check_projector(*result, generators, "window projector");
  return *detail::projector_cache().insert(key, std::move(*result));
}

// Vacuum channel of anyons 1..i. With Z_0 = 1 this is n_i exactly.
inline SparseOperator prefix_vacuum_projector(const SectorPtr& sector, int i) {
  if (i < 1 || i > sector->anyons())
    throw ArgumentError("prefix_vacuum_projector: i=" + std::to_string(i) + " out of range");
  if (sector->z0() == BoundaryLabel::One) return op_number(sector, i);
  return window_charge_projector(sector, {1, i}, ChargeChannel::Vacuum);
}

// Vacuum channel of anyons i+1..N. With Z_N = 1 this is n_i exactly.
inline SparseOperator suffix_vacuum_projector(const SectorPtr& sector, int i) {
  if (i < 0 || i > sector->anyons() - 1)
    throw ArgumentError("suffix_vacuum_projector: i=" + std::to_string(i) + " out of range");
  if (sector->zn() == BoundaryLabel::One) return op_number(sector, i);
  return window_charge_projector(sector, {i + 1, sector->anyons()}, ChargeChannel::Vacuum);
}

}  // namespace blockade_anyon
