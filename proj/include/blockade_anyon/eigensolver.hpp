#pragma once

// Hermitian eigensolvers: dense LAPACK-style decomposition for small sectors, restarted
// Lanczos (Rayleigh-Ritz on a fully orthogonalized Krylov basis) for extremal pairs of
// large sparse operators.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "random.hpp"
#include "sparse_operator.hpp"

namespace blockade_anyon {

enum class Extremal { Smallest, Largest };

struct LanczosOptions {
  std::size_t count = 6;
  Extremal which = Extremal::Smallest;
  double tolerance = 1e-8;
  std::size_t basis_size = 0;  // 0: max(2 * count + 20, 40)
  std::size_t max_restarts = 500;
  std::uint64_t seed = 1;
};

struct LanczosResult {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXd vectors;
  std::vector<double> residuals;
  std::size_t matvecs = 0;
};

inline LanczosResult lanczos_extremal(const SparseOperator& op, const LanczosOptions& opts = {}) {
  const auto n = static_cast<Eigen::Index>(op.dim());
  if (n == 0) return {};
  const auto k = static_cast<Eigen::Index>(std::min<std::size_t>(opts.count, op.dim()));
  const Eigen::Index m_max = std::min<Eigen::Index>(
      n, opts.basis_size ? static_cast<Eigen::Index>(opts.basis_size) : std::max<Eigen::Index>(2 * k + 20, 40));
  const Eigen::Index keep = std::min<Eigen::Index>(m_max - 1, std::max<Eigen::Index>(k + 5, 2 * k));

  Eigen::MatrixXd v(n, m_max), av(n, m_max);
  Eigen::Index j = 0;
  LanczosResult out;

  auto push = [&](Eigen::VectorXd w) -> bool {
    for (int pass = 0; pass < 2; ++pass)
      if (j > 0) w -= v.leftCols(j) * (v.leftCols(j).transpose() * w);
    const double norm = w.norm();
    if (norm < 1e-12) return false;
    v.col(j) = w / norm;
    av.col(j) = op * v.col(j);
    ++out.matvecs;
    ++j;
    return true;
  };

  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = uniform(opts.seed, 0x1a, static_cast<std::uint64_t>(i), -1.0, 1.0);
  push(start);

  for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
    bool exhausted = false;
    while (j < m_max && !exhausted) {
      if (!push(av.col(j - 1))) exhausted = true;
    }
    Eigen::MatrixXd t = v.leftCols(j).transpose() * av.leftCols(j);
    t = 0.5 * (t + t.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
    const Eigen::Index wanted = std::min(k, j);
    // Wanted Ritz pairs first, ordered from the extreme inwards.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(j));
    for (Eigen::Index q = 0; q < j; ++q)
      order[static_cast<std::size_t>(q)] = opts.which == Extremal::Smallest ? q : j - 1 - q;

    const Eigen::Index kept = std::min(j, std::max(keep, wanted));
    Eigen::MatrixXd y(j, kept);
    Eigen::VectorXd theta(kept);
    for (Eigen::Index q = 0; q < kept; ++q) {
      y.col(q) = eig.eigenvectors().col(order[static_cast<std::size_t>(q)]);
      theta(q) = eig.eigenvalues()(order[static_cast<std::size_t>(q)]);
    }
    const Eigen::MatrixXd x = v.leftCols(j) * y;
    const Eigen::MatrixXd ax = av.leftCols(j) * y;
    std::vector<double> res(static_cast<std::size_t>(wanted));
    Eigen::Index first_bad = -1;
    for (Eigen::Index q = 0; q < wanted; ++q) {
      res[static_cast<std::size_t>(q)] = (ax.col(q) - theta(q) * x.col(q)).norm();
      if (first_bad < 0 && res[static_cast<std::size_t>(q)] >= opts.tolerance) first_bad = q;
    }
    if (first_bad < 0 || exhausted || j == n) {
      std::vector<Eigen::Index> idx(static_cast<std::size_t>(wanted));
      for (Eigen::Index q = 0; q < wanted; ++q) idx[static_cast<std::size_t>(q)] = q;
      std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) { return theta(a) < theta(b); });
      out.values.resize(wanted);
      out.vectors.resize(n, wanted);
      out.residuals.resize(static_cast<std::size_t>(wanted));
      for (Eigen::Index q = 0; q < wanted; ++q) {
        const auto src = idx[static_cast<std::size_t>(q)];
        out.values(q) = theta(src);
        out.vectors.col(q) = x.col(src);
        out.residuals[static_cast<std::size_t>(q)] = res[static_cast<std::size_t>(src)];
      }
      double worst = 0.0;
      for (double r : out.residuals) worst = std::max(worst, r);
      if (worst >= opts.tolerance) throw ConvergenceError("Lanczos Ritz pairs did not converge", worst);
      return out;
    }
    // Thick restart: keep the leading Ritz vectors, continue from the worst residual.
    const Eigen::VectorXd next = ax.col(first_bad) - theta(first_bad) * x.col(first_bad);
    v.leftCols(kept) = x;
    av.leftCols(kept) = ax;
    j = kept;
    if (!push(next)) break;
  }
  throw ConvergenceError("Lanczos exceeded its restart budget", opts.tolerance);
}

}  // namespace blockade_anyon
