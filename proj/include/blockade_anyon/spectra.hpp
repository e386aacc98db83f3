#pragma once

// Exact diagonalization and the two sector-spectral identities of topologically
// symmetric chains:
//   spec(tau, tau) = spec(1, 1) + spec(1, tau)   (multiset union)
//   spec(1, tau)   = spec(tau, 1) with couplings mirrored J_i -> J_{N-i}

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eigensolver.hpp"
#include "hamiltonian.hpp"

namespace blockade_anyon {

struct Spectrum {
  std::string sector;
  std::vector<double> eigenvalues;  // ascending
  std::optional<Eigen::MatrixXd> eigenvectors;
  bool complete = true;  // false when only extremal pairs were computed
  double max_residual = 0.0;
};

struct EigenOptions {
  std::size_t dense_limit = 2000;
  LanczosOptions lanczos{};
};

inline Spectrum eigensystem(const SparseOperator& op, bool want_vectors, const EigenOptions& opts = {}) {
  const double asym = frobenius_distance(op, adjoint(op));
  if (asym >= 1e-10) throw DomainError("eigensystem needs a Hermitian operator, ||O - O^T|| = " + std::to_string(asym));
  Spectrum s;
  s.sector = op.sector()->code();
  if (op.dim() <= opts.dense_limit) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        op.to_dense(), want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    s.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    if (want_vectors) s.eigenvectors = eig.eigenvectors();
    return s;
  }
  auto res = lanczos_extremal(op, opts.lanczos);
  s.complete = false;
  s.eigenvalues.assign(res.values.data(), res.values.data() + res.values.size());
  for (double r : res.residuals) s.max_residual = std::max(s.max_residual, r);
  if (want_vectors) s.eigenvectors = std::move(res.vectors);
  return s;
}

struct MultisetMatch {
  bool passed = false;
  double worst_residual = 0.0;
  std::size_t worst_index = 0;
};

// Greedy matching after sorting; both inputs must have the same length.
inline MultisetMatch match_spectra(std::vector<double> a, std::vector<double> b, double tol) {
  MultisetMatch m;
  if (a.size() != b.size()) {
    m.worst_residual = std::numeric_limits<double>::infinity();
    return m;
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double r = std::abs(a[k] - b[k]);
    if (r > m.worst_residual) {
      m.worst_residual = r;
      m.worst_index = k;
    }
  }
  m.passed = m.worst_residual <= tol;
  return m;
}

using HamiltonianBuilder = std::function<SparseOperator(const SectorPtr&, std::span<const double>)>;

inline SparseOperator default_builder(const SectorPtr& s, std::span<const double> j) {
  return golden_hamiltonian(s, j);
}

struct DirectSumReport {
  int anyons = 0;
  std::vector<double> couplings;
  double tolerance = 0.0;
  Spectrum tau_tau, one_one, one_tau;
  MultisetMatch match;
  bool passed = false;
};

inline DirectSumReport verify_direct_sum(int n, std::span<const double> couplings, double tol,
                                         const HamiltonianBuilder& build = default_builder) {
  DirectSumReport r;
  r.anyons = n;
  r.couplings.assign(couplings.begin(), couplings.end());
  r.tolerance = tol;
  auto spectrum = [&](BoundaryLabel z0, BoundaryLabel zn) {
    return eigensystem(build(Sector::make(n, z0, zn), couplings), false);
  };
  r.tau_tau = spectrum(BoundaryLabel::Tau, BoundaryLabel::Tau);
  r.one_one = spectrum(BoundaryLabel::One, BoundaryLabel::One);
  r.one_tau = spectrum(BoundaryLabel::One, BoundaryLabel::Tau);
  std::vector<double> united = r.one_one.eigenvalues;
  united.insert(united.end(), r.one_tau.eigenvalues.begin(), r.one_tau.eigenvalues.end());
  r.match = match_spectra(r.tau_tau.eigenvalues, united, tol);
  r.passed = r.match.passed;
  return r;
}

struct MirrorReport {
  int anyons = 0;
  std::vector<double> couplings;
  double tolerance = 0.0;
  std::string convention = "J_i -> J_{N-i}";
  Spectrum one_tau, tau_one_mirrored, tau_one_identical;
  MultisetMatch mirrored;   // (1,tau) with J vs (tau,1) with mirrored J
  MultisetMatch identical;  // (1,tau) with J vs (tau,1) with the same J
  bool passed = false;      // the mirrored comparison
};

inline MirrorReport verify_mirror(int n, std::span<const double> couplings, double tol,
                                  const HamiltonianBuilder& build = default_builder) {
  MirrorReport r;
  r.anyons = n;
  r.couplings.assign(couplings.begin(), couplings.end());
  r.tolerance = tol;
  const auto one_tau = Sector::make(n, BoundaryLabel::One, BoundaryLabel::Tau);
  const auto tau_one = Sector::make(n, BoundaryLabel::Tau, BoundaryLabel::One);
  const auto flipped = mirrored(couplings);
  r.one_tau = eigensystem(build(one_tau, couplings), false);
  r.tau_one_mirrored = eigensystem(build(tau_one, flipped), false);
  r.tau_one_identical = eigensystem(build(tau_one, couplings), false);
  r.mirrored = match_spectra(r.one_tau.eigenvalues, r.tau_one_mirrored.eigenvalues, tol);
  r.identical = match_spectra(r.one_tau.eigenvalues, r.tau_one_identical.eigenvalues, tol);
  r.passed = r.mirrored.passed;
  return r;
}

}  // namespace blockade_anyon
