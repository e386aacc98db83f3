#include <gtest/gtest.h>

#include <blockade_anyon/errors.hpp>
#include <blockade_anyon/spectra.hpp>

using namespace blockade_anyon;

namespace {

SectorPtr tt(int n) { return Sector::make(n, BoundaryLabel::Tau, BoundaryLabel::Tau); }

SparseOperator broken_builder(const SectorPtr& s, std::span<const double> j) {
  return golden_hamiltonian(s, j) + 0.3 * op_zhat(s, 2);
}

}  // namespace

TEST(Eigensystem, Examples) {
  EXPECT_EQ(eigensystem(zero(tt(4)), false).eigenvalues, std::vector<double>(5, 0.0));
  const auto sp = eigensystem(scale(pair_vacuum_projector(tt(2), 1), -1.0), true);
  ASSERT_EQ(sp.eigenvalues.size(), 2u);
  EXPECT_NEAR(sp.eigenvalues[0], -1.0, 1e-12);
  EXPECT_NEAR(sp.eigenvalues[1], 0.0, 1e-12);
  ASSERT_TRUE(sp.eigenvectors.has_value());
  for (double v : eigensystem(identity(tt(6)), false).eigenvalues) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(Eigensystem, RejectsNonHermitian) {
  const auto s = tt(4);
  const auto op = SparseOperator::from_triplets(s, {{0, 1, 1.0}});
  EXPECT_THROW(eigensystem(op, false), DomainError);
}

TEST(Eigensystem, CountMatchesDimension) {
  for (int n = 2; n <= 10; ++n)
    for (auto [z0, zn] : kAllSectors) {
      const auto s = Sector::make(n, z0, zn);
      const auto sp = eigensystem(golden_hamiltonian(s, uniform_couplings(n)), false);
      EXPECT_EQ(sp.eigenvalues.size(), s->dim());
      EXPECT_TRUE(std::is_sorted(sp.eigenvalues.begin(), sp.eigenvalues.end()));
    }
}

TEST(Lanczos, AgreesWithDenseSolver) {
  const auto s = tt(14);  // dim 610
  const auto h = golden_hamiltonian(s, random_couplings(14, 5));
  const auto dense = eigensystem(h, false);
  for (auto which : {Extremal::Smallest, Extremal::Largest}) {
    EigenOptions opts;
    opts.dense_limit = 100;
    opts.lanczos.count = 5;
    opts.lanczos.which = which;
    const auto iter = eigensystem(h, true, opts);
    EXPECT_FALSE(iter.complete);
    ASSERT_EQ(iter.eigenvalues.size(), 5u);
    EXPECT_LT(iter.max_residual, 1e-8);
    for (std::size_t k = 0; k < 5; ++k) {
      const double ref = which == Extremal::Smallest ? dense.eigenvalues[k]
                                                     : dense.eigenvalues[dense.eigenvalues.size() - 5 + k];
      EXPECT_NEAR(iter.eigenvalues[k], ref, 1e-8);
    }
    const Eigen::MatrixXd& v = *iter.eigenvectors;
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
      const Eigen::VectorXd hv = h * v.col(k);
      EXPECT_LT((hv - iter.eigenvalues[static_cast<std::size_t>(k)] * v.col(k)).norm(), 1e-8);
    }
  }
}

TEST(MatchSpectra, Behaviour) {
  EXPECT_TRUE(match_spectra({1, 2, 3}, {3, 1, 2}, 1e-12).passed);
  const auto m = match_spectra({1, 2, 3}, {1, 2.5, 3}, 1e-3);
  EXPECT_FALSE(m.passed);
  EXPECT_EQ(m.worst_index, 1u);
  EXPECT_NEAR(m.worst_residual, 0.5, 1e-15);
  EXPECT_FALSE(match_spectra({1}, {1, 2}, 1.0).passed);
}

TEST(DirectSum, Examples) {
  const auto r4 = verify_direct_sum(4, uniform_couplings(4), 1e-9);
  EXPECT_TRUE(r4.passed);
  EXPECT_EQ(r4.tau_tau.eigenvalues.size(), 5u);
  EXPECT_EQ(r4.one_one.eigenvalues.size(), 2u);
  EXPECT_EQ(r4.one_tau.eigenvalues.size(), 3u);
  const auto r2 = verify_direct_sum(2, uniform_couplings(2), 1e-9);
  EXPECT_TRUE(r2.passed);
  EXPECT_NEAR(r2.tau_tau.eigenvalues[0], -1.0, 1e-12);
  EXPECT_TRUE(verify_direct_sum(5, uniform_couplings(5, 0.0), 1e-9).passed);
}

TEST(Mirror, Examples) {
  EXPECT_TRUE(verify_mirror(4, uniform_couplings(4), 1e-9).passed);
  const auto r3 = verify_mirror(3, std::vector<double>{1.0, 2.0}, 1e-9);
  EXPECT_TRUE(r3.passed);
  EXPECT_TRUE(r3.mirrored.passed);
  // The tau-charge block of (tau, tau) can be fused off either end, so the unmirrored
  // comparison agrees as well.
  EXPECT_TRUE(r3.identical.passed);
  EXPECT_TRUE(verify_mirror(6, uniform_couplings(6, 0.0), 1e-9).passed);
}

TEST(SpectralIdentities, RandomCouplings) {
  for (int n = 2; n <= 10; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto j = random_couplings(n, 100 + seed);
      EXPECT_TRUE(verify_direct_sum(n, j, 1e-9).passed) << n;
      EXPECT_TRUE(verify_mirror(n, j, 1e-9).passed) << n;
    }
  }
}

TEST(SpectralIdentities, BrokenHamiltonianFails) {
  for (int n = 3; n <= 8; ++n) {
    const auto r = verify_direct_sum(n, uniform_couplings(n), 1e-9, broken_builder);
    EXPECT_FALSE(r.passed) << n;
    EXPECT_GT(r.match.worst_residual, 1e-6);
  }
}
