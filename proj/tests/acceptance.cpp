// Runs every acceptance criterion at its stated tolerance and prints one line per criterion.

#include <blockade_anyon.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "oracles.hpp"

using namespace blockade_anyon;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SectorPtr tt(int n) { return Sector::make(n, BoundaryLabel::Tau, BoundaryLabel::Tau); }

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Dimension table.
Outcome dimension_table() {
  Outcome o;
  const auto start = Clock::now();
  for (int n = 2; n <= 25; ++n) {
    for (auto [z0, zn] : kAllSectors) {
      const auto s = enumerate_sector(n, z0, zn);
      const auto expected = fib(n - 1 + (z0 == BoundaryLabel::Tau) + (zn == BoundaryLabel::Tau));
      o.require(s->dim() == expected, "dimension mismatch at " + s->describe());
      if (n <= 16) {
        const auto brute = oracle::brute_force_states(n, z0, zn);
        o.require(std::equal(brute.begin(), brute.end(), s->states().begin(), s->states().end()),
                  "brute-force mismatch at " + s->describe());
      }
    }
  }
  const double t = seconds_since(start);
  o.require(t < 1.0, "runtime " + fmt("%.3f s", t));
  if (o.passed) o.detail = "N=2..25, 4 sectors, brute force N<=16, " + fmt("%.3f s", t);
  return o;
}

// 2. Pair projector exactness.
Outcome pair_projector_exactness() {
  Outcome o;
  double worst_idem = 0.0, worst_herm = 0.0;
  for (int n = 2; n <= 12; ++n)
    for (auto [z0, zn] : kAllSectors) {
      const auto s = Sector::make(n, z0, zn);
      for (int i = 1; i < n; ++i) {
        const auto p = pair_vacuum_projector(s, i);
        worst_idem = std::max(worst_idem, frobenius_distance(p * p, p));
        worst_herm = std::max(worst_herm, frobenius_distance(p, adjoint(p)));
      }
    }
  o.require(worst_idem < 1e-10, "idempotence residual " + fmt("%.3e", worst_idem));
  o.require(worst_herm < 1e-12, "hermiticity residual " + fmt("%.3e", worst_herm));
  const double phi = golden::phi;
  Eigen::Matrix2d expected;
  expected << 1 / phi, 1 / std::pow(phi, 1.5), 1 / std::pow(phi, 1.5), 1 / (phi * phi);
  const double entry = (pair_vacuum_projector(tt(2), 1).to_dense() - expected).cwiseAbs().maxCoeff();
  o.require(entry < 1e-12, "N=2 matrix entry error " + fmt("%.3e", entry));
  if (o.passed)
    o.detail = "||P^2-P|| <= " + fmt("%.2e", worst_idem) + ", ||P-P^T|| <= " + fmt("%.2e", worst_herm) +
               ", N=2 entries " + fmt("%.2e", entry);
  return o;
}

// 3. Dictionary closure.
Outcome dictionary_closure() {
  Outcome o;
  try {
    const auto rep = dictionary_report(tt(4), 2, RydbergKind::SigmaX);
    o.require(rep.coefficients_identifiable, "coefficients not identifiable");
    o.require(rep.max_relative_error < 1e-10, "coefficient relative error " + fmt("%.3e", rep.max_relative_error));
    o.require(rep.residual < 1e-9, "residual " + fmt("%.3e", rep.residual));
    if (o.passed)
      o.detail = "max rel. error " + fmt("%.2e", rep.max_relative_error) + ", residual " + fmt("%.2e", rep.residual) +
                 ", additive constant " + fmt("%.15f", rep.additive_constant);
  } catch (const DictionaryError& e) {
    o.require(false, std::string(e.what()) + " residual " + fmt("%.3e", e.residual()));
  }
  return o;
}

// 4. Total-charge projector through the commutant.
Outcome total_charge() {
  Outcome o;
  const double m = -1.0 / (golden::phi * golden::phi);
  double t12 = 0.0;
  for (int n = 2; n <= 12; ++n) {
    const auto start = Clock::now();
    const auto s = tt(n);
    const auto commutant = commutant_basis(pair_projectors(s, 1, n - 1));
    const auto p = total_charge_projector(s);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(otest_operator(s).to_dense(), Eigen::EigenvaluesOnly);
    if (n == 12) t12 = seconds_since(start);
    o.require(commutant.size() == 2, "commutant dimension " + std::to_string(commutant.size()) + " at N=" + std::to_string(n));
    o.require(rank(p) == fib(n - 1), "rank mismatch at N=" + std::to_string(n));
    std::uint64_t ones = 0, others = 0;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
      const double v = eig.eigenvalues()(k);
      if (std::abs(v - 1.0) < 1e-9) ++ones;
      else if (std::abs(v - m) < 1e-9) ++others;
    }
    o.require(ones == fib(n - 1) && others == fib(n), "O_test spectrum mismatch at N=" + std::to_string(n));
  }
  o.require(t12 < 60.0, "runtime at N=12 " + fmt("%.2f s", t12));
  if (o.passed) o.detail = "N=2..12, commutant dim 2, O_test multiplicities (F_{N-1}, F_N), N=12 in " + fmt("%.2f s", t12);
  return o;
}

// 5. Topological symmetry.
Outcome topological_symmetry() {
  Outcome o;
  double worst_h = 0.0, min_rydberg = 1e300;
  for (int n = 2; n <= 10; ++n) {
    const auto s = tt(n);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      worst_h = std::max(worst_h,
                         is_topologically_symmetric(golden_hamiltonian(s, random_couplings(n, 1000 + seed)), 1e-10).commutator_norm);
    if (n < 3) continue;
    for (int i = 1; i < n; ++i) {
      min_rydberg = std::min(min_rydberg, is_topologically_symmetric(op_zhat(s, i), 1e-10).commutator_norm);
      min_rydberg = std::min(min_rydberg, is_topologically_symmetric(op_flip(s, i), 1e-10).commutator_norm);
    }
  }
  o.require(worst_h < 1e-10, "||[H, P]|| = " + fmt("%.3e", worst_h));
  o.require(min_rydberg > 1e-2, "min Rydberg commutator " + fmt("%.3e", min_rydberg));
  if (o.passed)
    o.detail = "max ||[H,P]|| " + fmt("%.2e", worst_h) + ", min ||[Z_i or flip_i, P]|| " + fmt("%.3f", min_rydberg);
  return o;
}

// 6. Operator counting.
Outcome operator_counting() {
  Outcome o;
  double t7 = 0.0;
  std::string counts;
  for (int n = 2; n <= 7; ++n) {
    const auto start = Clock::now();
    const auto r = symmetric_operator_count(n);
    if (n == 7) t7 = seconds_since(start);
    o.require(r.verified, "rank " + std::to_string(r.numerical_rank) + " vs " + std::to_string(r.n_op) +
                              " at N=" + std::to_string(n));
    counts += (counts.empty() ? "" : ",") + std::to_string(r.numerical_rank) + "/" + std::to_string(r.total);
  }
  o.require(t7 < 120.0, "runtime at N=7 " + fmt("%.2f s", t7));
  if (o.passed) o.detail = "rank/total " + counts + ", N=7 in " + fmt("%.2f s", t7);
  return o;
}

// 7. Sector spectral identities.
Outcome spectral_identities() {
  Outcome o;
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) {
    const auto j = random_couplings(n, 2000 + static_cast<std::uint64_t>(n));
    const auto d = verify_direct_sum(n, j, 1e-9);
    const auto m = verify_mirror(n, j, 1e-9);
    o.require(d.passed, "direct sum failed at N=" + std::to_string(n));
    o.require(m.passed, "mirror failed at N=" + std::to_string(n));
    worst = std::max({worst, d.match.worst_residual, m.mirrored.worst_residual});
  }
  const auto broken = verify_direct_sum(
      6, uniform_couplings(6), 1e-9,
      [](const SectorPtr& s, std::span<const double> j) { return golden_hamiltonian(s, j) + 0.3 * op_zhat(s, 2); });
  o.require(!broken.passed, "broken Hamiltonian passed the direct-sum check");
  const int code = testing_support::run_cli("verify-sectors --n 6 --perturb-op zhat:2 --perturb-weight 0.3").exit_code;
  o.require(code == 2, "CLI exit code " + std::to_string(code) + " for the broken Hamiltonian");
  if (o.passed)
    o.detail = "N=2..12 worst residual " + fmt("%.2e", worst) + "; broken residual " +
               fmt("%.3f", broken.match.worst_residual) + ", CLI exit 2";
  return o;
}

// 8. Locality.
Outcome locality() {
  Outcome o;
  for (int n = 2; n <= 10; ++n)
    for (int i = 1; i < n; ++i) {
      const auto r = support_window(pair_vacuum_projector(tt(n), i), 1e-12);
      o.require(r.a == std::max(1, i - 1) && r.b == std::min(n - 1, i + 1),
                "pair projector support at N=" + std::to_string(n) + " i=" + std::to_string(i));
    }
  for (int n = 3; n <= 8; ++n)
    o.require(support_window(total_charge_projector(tt(n)), 1e-10).full, "total charge not full at N=" + std::to_string(n));
  std::size_t windows = 0;
  for (int n = 2; n <= 8; ++n)
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        for (auto c : {ChargeChannel::Vacuum, ChargeChannel::Tau}) {
          const auto r = support_window(window_charge_projector(tt(n), {a, b}, c), 1e-10);
          o.require(r.a >= a - 1 && r.b <= b + 1, "window support at N=" + std::to_string(n));
          ++windows;
        }
  if (o.passed) o.detail = "pair supports [i-1,i+1], P^1_N full for N=3..8, " + std::to_string(windows) + " windows inside [a-1,b+1]";
  return o;
}

// 9. Q-bit protection.
Outcome qubit_protection() {
  Outcome o;
  const auto start = Clock::now();
  const auto times = default_time_grid();
  double worst_clean = 0.0;
  for (int n = 2; n <= 10; ++n)
    for (std::uint64_t seed = 0; seed < 3; ++seed)
      worst_clean = std::max(worst_clean, leakage_experiment(n, random_couplings(n, 3000 + seed), {}, times).max_deviation);
  const auto noisy = leakage_experiment(6, uniform_couplings(6), {0.0, 0.1, 42}, times);
  const std::vector<double> eps{0.01, 0.02, 0.04, 0.08};
  const auto fit = leakage_scaling(6, uniform_couplings(6), eps, 0.0, 1.0, 42, times);
  const double t = seconds_since(start);
  o.require(worst_clean < 1e-9, "zero-noise leakage " + fmt("%.3e", worst_clean));
  o.require(noisy.max_deviation > 1e-3, "eps_z=0.1 leakage " + fmt("%.3e", noisy.max_deviation));
  o.require(fit.exponent >= 1.8 && fit.exponent <= 2.2, "scaling exponent " + fmt("%.3f", fit.exponent));
  o.require(t < 300.0, "runtime " + fmt("%.1f s", t));
  if (o.passed)
    o.detail = "clean " + fmt("%.2e", worst_clean) + ", eps_z=0.1 max " + fmt("%.4f", noisy.max_deviation) +
               ", exponent " + fmt("%.3f", fit.exponent) + ", " + fmt("%.1f s", t);
  return o;
}

// 10. Performance floor.
Outcome performance_floor() {
  Outcome o;
  const auto start = Clock::now();
  const auto s = enumerate_sector(30, BoundaryLabel::Tau, BoundaryLabel::Tau);
  bool round_trip = s->dim() == 1346269;
  const auto states = s->states();
  for (std::size_t k = 0; k < s->dim() && round_trip; ++k)
    round_trip = s->index_of_bits(states[k]) == k && s->unrank(k) == states[k];
  const double t_enum = seconds_since(start);
  o.require(round_trip, "N=30 round trip failed");
  o.require(t_enum < 10.0, "N=30 enumerate + round trip " + fmt("%.2f s", t_enum));

  const auto h = golden_hamiltonian(tt(24), uniform_couplings(24));
  const Eigen::VectorXd v = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(h.dim()));
  Eigen::VectorXd w(v.size());
  const auto mv = Clock::now();
  h.apply(std::span<const double>(v.data(), h.dim()), std::span<double>(w.data(), h.dim()));
  const double t_mv = seconds_since(mv);
  o.require(t_mv < 1.0, "N=24 matvec " + fmt("%.3f s", t_mv));
  if (o.passed)
    o.detail = "N=30 dim 1346269 round trip " + fmt("%.2f s", t_enum) + ", N=24 matvec (dim " +
               std::to_string(h.dim()) + ") " + fmt("%.4f s", t_mv);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"dimension table", dimension_table},
      {"pair projector exactness", pair_projector_exactness},
      {"dictionary closure", dictionary_closure},
      {"total-charge projector", total_charge},
      {"topological symmetry", topological_symmetry},
      {"operator counting", operator_counting},
      {"sector spectral identities", spectral_identities},
      {"locality", locality},
      {"q-bit protection", qubit_protection},
      {"performance floor", performance_floor},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.passed) ++failures;
    std::printf("[%s] %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
