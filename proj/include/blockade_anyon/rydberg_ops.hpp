#pragma once

// Elementary Rydberg-side operators: occupation n_i, bond label Z_i = 2 n_i - 1, and the
// blockade-projected flip.

#include <string>
#include <vector>

#include "basis.hpp"
#include "sparse_operator.hpp"

namespace blockade_anyon {

namespace detail {

inline void require_site(const Sector& s, int i, int lo, int hi, const char* what) {
  if (i < lo || i > hi) {
    throw ArgumentError(std::string(what) + ": site " + std::to_string(i) + " outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "] for " + s.describe());
  }
}

template <typename F>
SparseOperator diagonal_from(const SectorPtr& sector, F&& f) {
  std::vector<double> diag(sector->dim());
  const auto states = sector->states();
  for (std::size_t k = 0; k < diag.size(); ++k) diag[k] = f(states[k]);
  return SparseOperator::diagonal(sector, diag);
}

}  // namespace detail

// Site 0 and N give the boundary occupation as a multiple of the identity.
inline SparseOperator op_number(const SectorPtr& sector, int i) {
  detail::require_site(*sector, i, 0, sector->anyons(), "op_number");
  return detail::diagonal_from(sector, [&](std::uint64_t bits) {
    return static_cast<double>(sector->occupation(bits, i));
  });
}

inline SparseOperator op_zhat(const SectorPtr& sector, int i) {
  detail::require_site(*sector, i, 0, sector->anyons(), "op_zhat");
  return detail::diagonal_from(sector, [&](std::uint64_t bits) {
    return 2.0 * sector->occupation(bits, i) - 1.0;
  });
}

// Flip of n_i, kept only when both neighbours (boundary values at the ends) are empty.
inline SparseOperator op_flip(const SectorPtr& sector, int i) {
  detail::require_site(*sector, i, 1, sector->sites(), "op_flip");
  std::vector<Triplet> t;
  const auto states = sector->states();
  const std::uint64_t mask = sector->site_mask(i);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::uint64_t s = states[k];
    if (sector->occupation(s, i - 1) || sector->occupation(s, i + 1)) continue;
    t.push_back({sector->rank_unchecked(s ^ mask), k, 1.0});
  }
  return SparseOperator::from_triplets(sector, std::move(t));
}

}  // namespace blockade_anyon
