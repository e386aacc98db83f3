#pragma once

#include <span>
#include <string>
#include <vector>

#include "anyon_projectors.hpp"
#include "random.hpp"

namespace blockade_anyon {

// H = -sum_i J_i P^1_2(i, i+1); couplings[i-1] multiplies the pair (i, i+1).
inline SparseOperator golden_hamiltonian(const SectorPtr& sector, std::span<const double> couplings) {
  if (couplings.size() != static_cast<std::size_t>(sector->anyons() - 1)) {
    throw ArgumentError("golden_hamiltonian needs " + std::to_string(sector->anyons() - 1) +
                        " couplings, got " + std::to_string(couplings.size()));
  }
  std::vector<Triplet> t;
  for (int i = 1; i < sector->anyons(); ++i) {
    const double j = couplings[static_cast<std::size_t>(i - 1)];
    if (j == 0.0) continue;
    pair_vacuum_projector(sector, i).for_each(
        [&](std::size_t r, std::size_t c, double v) { t.push_back({r, c, -j * v}); });
  }
  return SparseOperator::from_triplets(sector, std::move(t));
}

inline std::vector<double> uniform_couplings(int n, double j = 1.0) {
  return std::vector<double>(static_cast<std::size_t>(n - 1), j);
}

// Couplings drawn uniformly from [lo, hi), reproducible from the seed.
inline std::vector<double> random_couplings(int n, std::uint64_t seed, double lo = 0.5,
                                            double hi = 1.5) {
  std::vector<double> j(static_cast<std::size_t>(n - 1));
  for (std::size_t k = 0; k < j.size(); ++k) j[k] = uniform(seed, 0xc0, k, lo, hi);
  return j;
}

// J_i -> J_{N-i}
inline std::vector<double> mirrored(std::span<const double> couplings) {
  return {couplings.rbegin(), couplings.rend()};
}

}  // namespace blockade_anyon
