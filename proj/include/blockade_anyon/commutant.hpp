#pragma once

// Commutants and centres of algebras generated by Hermitian operators.
//
// Both routines diagonalize one generic element H = sum_k r_k G_k of the generated
// algebra. Anything commuting with every generator commutes with H, so it is block
// diagonal over the eigenvalue clusters of H. The commutant is then the null space of
// the stacked commutator maps restricted to those blocks, which keeps the linear system
// at sum(m_c^2) unknowns instead of dim^2.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "random.hpp"
#include "sparse_operator.hpp"

namespace blockade_anyon {

struct CommutantOptions {
  std::size_t dense_limit = 1000;
  std::size_t unknown_limit = 4000;
  std::uint64_t seed = 0x5eed;
};

namespace detail {

struct Cluster {
  Eigen::Index start;
  Eigen::Index size;
};

inline std::vector<Cluster> cluster_eigenvalues(const Eigen::VectorXd& values, double tol) {
  std::vector<Cluster> out;
  Eigen::Index k = 0;
  while (k < values.size()) {
    Eigen::Index end = k + 1;
    while (end < values.size() && values(end) - values(end - 1) <= tol) ++end;
    out.push_back({k, end - k});
    k = end;
  }
  return out;
}

inline void check_generators(std::span<const SparseOperator> generators, std::size_t limit) {
  if (generators.empty()) throw ArgumentError("at least one generator is required");
  for (const auto& g : generators) {
    require_same_sector(generators.front(), g);
    if (!g.hermitian()) throw DomainError("generators must be Hermitian");
  }
  if (generators.front().dim() > limit) {
    throw CapacityError("dimension " + std::to_string(generators.front().dim()) +
                        " exceeds the dense limit " + std::to_string(limit));
  }
}

struct GenericElement {
  Eigen::MatrixXd vectors;
  std::vector<Cluster> clusters;
  std::vector<Eigen::MatrixXd> rotated;  // V^T G V for every generator
};

inline GenericElement diagonalize_generic(std::span<const SparseOperator> generators,
                                          std::uint64_t seed, bool with_products) {
  std::vector<Eigen::MatrixXd> dense;
  dense.reserve(generators.size());
  for (const auto& g : generators) dense.push_back(g.to_dense());
  const Eigen::Index d = dense.front().rows();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 0; k < dense.size(); ++k) h += uniform(seed, 1, k, 1.0, 2.0) * dense[k];
  if (with_products) {
    // Anticommutators of neighbouring generators remove accidental zero modes of the
    // linear combination.
    for (std::size_t k = 0; k + 1 < dense.size(); ++k) {
      const Eigen::MatrixXd prod = dense[k] * dense[k + 1];
      h += uniform(seed, 2, k, 0.5, 1.0) * (prod + prod.transpose());
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  GenericElement out;
  out.vectors = eig.eigenvectors();
  out.clusters = cluster_eigenvalues(eig.eigenvalues(), 1e-9 * scale);
  out.rotated.reserve(dense.size());
  for (const auto& g : dense) out.rotated.push_back(out.vectors.transpose() * g * out.vectors);
  return out;
}

// Flip signs so the largest-magnitude entry is positive.
inline void canonical_sign(Eigen::MatrixXd& m) {
  Eigen::Index r = 0, c = 0;
  m.cwiseAbs().maxCoeff(&r, &c);
  if (m(r, c) < 0) m = -m;
}

}  // namespace detail

// Frobenius-orthonormal basis of {X : [X, G] = 0 for every generator G}, ordered by the
// null-space eigenvectors of the restricted Gram operator.
inline std::vector<SparseOperator> commutant_basis(std::span<const SparseOperator> generators,
                                                   const CommutantOptions& opts = {}) {
  detail::check_generators(generators, opts.dense_limit);
  const auto element = detail::diagonalize_generic(generators, opts.seed, false);

  struct Unknown {
    Eigen::Index p, q;
  };
  std::vector<Unknown> unknowns;
  for (const auto& c : element.clusters)
    for (Eigen::Index p = c.start; p < c.start + c.size; ++p)
      for (Eigen::Index q = c.start; q < c.start + c.size; ++q) unknowns.push_back({p, q});
  if (unknowns.size() > opts.unknown_limit) {
    throw CapacityError("commutant system has " + std::to_string(unknowns.size()) +
                        " unknowns, above the limit " + std::to_string(opts.unknown_limit));
  }

  // Gram of the commutator map y -> [Y, M] summed over generators, M = V^T G V symmetric:
  // <[E_pq, M], [E_p'q', M]> = d_pp' (M^2)_qq' + d_qq' (M^2)_pp' - 2 M_pp' M_qq'.
  const auto u = static_cast<Eigen::Index>(unknowns.size());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(u, u);
  for (const auto& m : element.rotated) {
    const Eigen::MatrixXd m2 = m * m;
    for (Eigen::Index a = 0; a < u; ++a) {
      const auto [p, q] = unknowns[static_cast<std::size_t>(a)];
      for (Eigen::Index b = a; b < u; ++b) {
        const auto [pp, qq] = unknowns[static_cast<std::size_t>(b)];
        double v = -2.0 * m(p, pp) * m(q, qq);
        if (p == pp) v += m2(q, qq);
        if (q == qq) v += m2(p, pp);
        gram(a, b) += v;
        if (a != b) gram(b, a) += v;
      }
    }
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double top = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  const double null_tol = 1e-12 * top;

  std::vector<SparseOperator> basis;
  const auto& v = element.vectors;
  const SectorPtr& sector = generators.front().sector();
  for (Eigen::Index k = 0; k < u; ++k) {
    if (eig.eigenvalues()(k) > null_tol) break;
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(v.rows(), v.cols());
    for (Eigen::Index a = 0; a < u; ++a) {
      const auto [p, q] = unknowns[static_cast<std::size_t>(a)];
      y(p, q) = eig.eigenvectors()(a, k);
    }
    Eigen::MatrixXd x = v * y * v.transpose();
    detail::canonical_sign(x);
    basis.push_back(SparseOperator::from_dense(sector, x));
  }
  return basis;
}

// Minimal central projectors of the algebra generated by Hermitian generators (plus the
// identity). Eigen-clusters of a generic element are joined whenever a generator has a
// nonzero block between them; each connected group spans one isotypic component.
inline std::vector<Eigen::MatrixXd> central_projectors(std::span<const SparseOperator> generators,
                                                       const CommutantOptions& opts = {}) {
  detail::check_generators(generators, opts.dense_limit);
  const auto element = detail::diagonalize_generic(generators, opts.seed, true);
  const auto& clusters = element.clusters;
  const std::size_t nc = clusters.size();

  std::vector<std::size_t> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& m : element.rotated) {
    const double tol = 1e-8 * std::max(1.0, m.norm());
    for (std::size_t a = 0; a < nc; ++a) {
      for (std::size_t b = a + 1; b < nc; ++b) {
        if (find(a) == find(b)) continue;
        const auto& ca = clusters[a];
        const auto& cb = clusters[b];
        if (m.block(ca.start, cb.start, ca.size, cb.size).norm() > tol) {
          const std::size_t ra = find(a), rb = find(b);
          parent[std::max(ra, rb)] = std::min(ra, rb);
        }
      }
    }
  }

  std::vector<std::size_t> roots;
  for (std::size_t a = 0; a < nc; ++a)
    if (find(a) == a) roots.push_back(a);

  const auto& v = element.vectors;
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t root : roots) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(v.rows(), v.rows());
    for (std::size_t a = 0; a < nc; ++a) {
      if (find(a) != root) continue;
      const auto block = v.middleCols(clusters[a].start, clusters[a].size);
      q.noalias() += block * block.transpose();
    }
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace blockade_anyon
