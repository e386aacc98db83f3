#pragma once

// Topological q-bit leakage: encode a bit in the total charge of a (tau, tau) chain,
// evolve under a symmetric Hamiltonian plus static on-site Rydberg noise, and track
// <P^1_N>(t).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hamiltonian.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "topo_symmetry.hpp"

namespace blockade_anyon {

using StateVector = Eigen::VectorXcd;

struct NoiseConfig {
  double eps_x = 0.0;  // projected-flip field amplitude
  double eps_z = 0.0;  // occupation field amplitude
  std::uint64_t master_seed = 0;
};

// Per-site fields a_i (flip) and b_i (occupation), uniform on [-eps, eps]. Each draw is
// a function of (seed, channel, site) only.
struct NoiseDraw {
  std::vector<double> flip;
  std::vector<double> occupation;
};

inline NoiseDraw draw_noise(int n, const NoiseConfig& noise) {
  NoiseDraw d;
  for (int i = 1; i < n; ++i) {
    const auto site = static_cast<std::uint64_t>(i);
    d.flip.push_back(uniform(noise.master_seed, 0x78, site, -noise.eps_x, noise.eps_x));
    d.occupation.push_back(uniform(noise.master_seed, 0x7a, site, -noise.eps_z, noise.eps_z));
  }
  return d;
}

inline void require_tau_tau(const Sector& s, const char* what) {
  if (!has_free_total_charge(s))
    throw DomainError(std::string(what) + " needs the (tau, tau) sector, got " + s.describe());
}

// H_golden + sum_i a_i sigma~x_i + sum_i b_i n_i
inline SparseOperator noisy_hamiltonian(const SectorPtr& sector, std::span<const double> couplings,
                                        const NoiseConfig& noise) {
  require_tau_tau(*sector, "noisy_hamiltonian");
  const auto draw = draw_noise(sector->anyons(), noise);
  std::vector<Triplet> t = golden_hamiltonian(sector, couplings).triplets();
  for (int i = 1; i < sector->anyons(); ++i) {
    const double a = draw.flip[static_cast<std::size_t>(i - 1)];
    const double b = draw.occupation[static_cast<std::size_t>(i - 1)];
    if (a != 0.0)
      op_flip(sector, i).for_each([&](std::size_t r, std::size_t c, double v) { t.push_back({r, c, a * v}); });
    if (b != 0.0)
      op_number(sector, i).for_each([&](std::size_t r, std::size_t c, double v) { t.push_back({r, c, b * v}); });
  }
  return SparseOperator::from_triplets(sector, std::move(t));
}

enum class InitialStyle { ProjectorEigenbasis, ProjectedBasisState };

struct InitialStateSpec {
  ChargeChannel channel = ChargeChannel::Vacuum;
  InitialStyle style = InitialStyle::ProjectorEigenbasis;
  std::size_t basis_index = 0;  // for ProjectedBasisState
};

// Normalized state inside the requested total-charge channel. ProjectorEigenbasis takes
// the first basis state with a nonzero image (the lowest-index image vector).
inline Eigen::VectorXd initial_qubit_state(const SectorPtr& sector, const InitialStateSpec& spec) {
  require_tau_tau(*sector, "initial_qubit_state");
  const auto p = total_charge_projector(sector);
  const auto proj = spec.channel == ChargeChannel::Vacuum ? p : add(identity(sector), p, 1.0, -1.0);
  auto image_of = [&](std::size_t k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sector->dim()));
    e(static_cast<Eigen::Index>(k)) = 1.0;
    return Eigen::VectorXd(proj * e);
  };
  if (spec.style == InitialStyle::ProjectedBasisState) {
    if (spec.basis_index >= sector->dim()) throw ArgumentError("basis index out of range");
    const Eigen::VectorXd v = image_of(spec.basis_index);
    if (v.norm() < 1e-12) throw DomainError("basis state has no component in the requested channel");
    return v / v.norm();
  }
  for (std::size_t k = 0; k < sector->dim(); ++k) {
    const Eigen::VectorXd v = image_of(k);
    if (v.norm() > 1e-6) return v / v.norm();
  }
  throw DomainError("requested charge channel is empty");
}

struct EvolveOptions {
  std::size_t dense_limit = 2000;
  std::size_t krylov_dim = 30;
  double step_tolerance = 1e-8;  // per unit time
};

namespace detail {

// One Krylov step psi -> exp(-i H dt) psi; returns the a-posteriori error estimate.
inline double krylov_step(const SparseOperator& h, StateVector& psi, double dt, std::size_t m_max) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  const double beta0 = psi.norm();
  if (beta0 == 0.0) return 0.0;
  const auto m_cap = static_cast<Eigen::Index>(std::min<std::size_t>(m_max, h.dim()));
  Eigen::MatrixXcd v(n, m_cap + 1);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m_cap + 1, m_cap + 1);
  v.col(0) = psi / beta0;
  Eigen::Index m = 0;
  double beta_next = 0.0;
  for (; m < m_cap; ++m) {
    StateVector w = h * v.col(m);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd overlaps = v.leftCols(m + 1).adjoint() * w;
      w -= v.leftCols(m + 1) * overlaps;
      if (pass == 0) t(m, m) = overlaps(m).real();
    }
    beta_next = w.norm();
    if (beta_next < 1e-12) {
      ++m;
      beta_next = 0.0;
      break;
    }
    t(m + 1, m) = t(m, m + 1) = beta_next;
    v.col(m + 1) = w / beta_next;
  }
  const Eigen::Index dim = std::min(m, m_cap);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t.topLeftCorner(dim, dim));
  const Eigen::VectorXcd phases = (eig.eigenvalues().cast<std::complex<double>>() *
                                   std::complex<double>(0.0, -dt)).array().exp();
  const Eigen::VectorXcd coeff =
      eig.eigenvectors().cast<std::complex<double>>() *
      (phases.cwiseProduct(eig.eigenvectors().row(0).transpose().cast<std::complex<double>>()));
  psi = beta0 * (v.leftCols(dim) * coeff);
  return beta0 * beta_next * std::abs(coeff(dim - 1));
}

}  // namespace detail

// psi(t) = exp(-i H t) psi0 at each requested time.
inline std::vector<StateVector> evolve_state(const SparseOperator& h, const StateVector& psi0,
                                             std::span<const double> times,
                                             const EvolveOptions& opts = {}) {
  if (frobenius_distance(h, adjoint(h)) >= 1e-10) throw DomainError("evolve_state needs a Hermitian H");
  if (static_cast<std::size_t>(psi0.size()) != h.dim()) throw ArgumentError("state length differs from dim");
  std::vector<StateVector> out;
  out.reserve(times.size());
  if (h.dim() <= opts.dense_limit) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h.to_dense());
    const Eigen::MatrixXcd vecs = eig.eigenvectors().cast<std::complex<double>>();
    const Eigen::VectorXcd amplitudes = vecs.adjoint() * psi0;
    for (double time : times) {
      if (time == 0.0) {
        out.push_back(psi0);
        continue;
      }
      const Eigen::VectorXcd phases =
          (eig.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0.0, -time)).array().exp();
      out.emplace_back(vecs * phases.cwiseProduct(amplitudes));
    }
    return out;
  }
  // Short-step Krylov propagation between consecutive requested times.
  StateVector psi = psi0;
  double now = 0.0;
  double step = 0.5;
  for (double target : times) {
    if (target < now) throw ArgumentError("evolve_state times must be non-decreasing");
    while (target - now > 0.0) {
      const double dt = std::min(step, target - now);
      StateVector trial = psi;
      const double err = detail::krylov_step(h, trial, dt, opts.krylov_dim);
      if (err > opts.step_tolerance * dt && dt > 1e-6) {
        step = dt / 2;
        continue;
      }
      psi = std::move(trial);
      now += dt;
      if (err < 0.1 * opts.step_tolerance * dt) step = std::min(2 * step, 4.0);
    }
    out.push_back(psi);
  }
  return out;
}

// 201 points spanning [0, 100].
inline std::vector<double> default_time_grid(double t_max = 100.0, std::size_t points = 201) {
  std::vector<double> t(points);
  for (std::size_t k = 0; k < points; ++k)
    t[k] = points == 1 ? 0.0 : t_max * static_cast<double>(k) / static_cast<double>(points - 1);
  return t;
}

struct LeakageTrace {
  int anyons = 0;
  std::vector<double> couplings;
  NoiseConfig noise;
  NoiseDraw draw;
  InitialStateSpec initial;
  std::vector<double> times;
  std::vector<double> charge_expectation;
  std::vector<double> norm_drift;
  double max_deviation = 0.0;   // max_t |<P>(t) - <P>(0)|
  double mean_deviation = 0.0;  // time average of the same
};

inline LeakageTrace leakage_experiment(int n, std::span<const double> couplings, const NoiseConfig& noise,
                                       std::span<const double> times, const InitialStateSpec& initial = {}) {
  const auto sector = Sector::make(n, BoundaryLabel::Tau, BoundaryLabel::Tau);
  LeakageTrace tr;
  tr.anyons = n;
  tr.couplings.assign(couplings.begin(), couplings.end());
  tr.noise = noise;
  tr.draw = draw_noise(n, noise);
  tr.initial = initial;
  tr.times.assign(times.begin(), times.end());

  const auto h = noisy_hamiltonian(sector, couplings, noise);
  const auto p = total_charge_projector(sector);
  const StateVector psi0 = initial_qubit_state(sector, initial).cast<std::complex<double>>();
  const double start = (psi0.adjoint() * (p * psi0))(0).real();
  for (const auto& psi : evolve_state(h, psi0, times)) {
    const double value = (psi.adjoint() * (p * psi))(0).real();
    tr.charge_expectation.push_back(value);
    tr.norm_drift.push_back(std::abs(1.0 - psi.squaredNorm()));
    const double dev = std::abs(value - start);
    tr.max_deviation = std::max(tr.max_deviation, dev);
    tr.mean_deviation += dev;
  }
  if (!times.empty()) tr.mean_deviation /= static_cast<double>(times.size());
  return tr;
}

// Independent realizations; realization r uses master seed splitmix64(seed + r).
inline std::vector<LeakageTrace> leakage_ensemble(int n, std::span<const double> couplings,
                                                  const NoiseConfig& noise, std::span<const double> times,
                                                  std::size_t realizations) {
  std::vector<LeakageTrace> out(realizations);
  total_charge_projector(Sector::make(n, BoundaryLabel::Tau, BoundaryLabel::Tau));
  parallel_for(0, realizations, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      NoiseConfig cfg = noise;
      cfg.master_seed = splitmix64(noise.master_seed + r);
      out[r] = leakage_experiment(n, couplings, cfg, times);
    }
  }, 1);
  return out;
}

struct ScalingFit {
  std::vector<double> amplitudes;
  std::vector<double> mean_deviation;
  double exponent = 0.0;  // slope of log(mean deviation) against log(eps)
};

// Leakage at noise amplitudes eps * (x_scale, z_scale) with a fixed seed.
inline ScalingFit leakage_scaling(int n, std::span<const double> couplings, std::span<const double> amplitudes,
                                  double x_scale, double z_scale, std::uint64_t seed,
                                  std::span<const double> times) {
  ScalingFit fit;
  fit.amplitudes.assign(amplitudes.begin(), amplitudes.end());
  for (double eps : amplitudes) {
    const NoiseConfig cfg{eps * x_scale, eps * z_scale, seed};
    fit.mean_deviation.push_back(leakage_experiment(n, couplings, cfg, times).mean_deviation);
  }
  const auto k = static_cast<double>(amplitudes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const double x = std::log(amplitudes[i]);
    const double y = std::log(fit.mean_deviation[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return fit;
}

}  // namespace blockade_anyon
