#pragma once

// Constrained occupation basis of an open Rydberg-blockaded / Fibonacci chain.
//
// A chain of N anyons has N-1 interior bonds (Rydberg sites 1..N-1). Sites 0 and N
// carry the boundary labels and are fixed per sector. A basis state is a bitstring
// n_1..n_{N-1} with no two adjacent ones; site 1 is the most significant bit.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace blockade_anyon {

enum class BoundaryLabel { One, Tau };

// R(Z) in the dimension formula.
constexpr int offset(BoundaryLabel z) { return z == BoundaryLabel::Tau ? 1 : 0; }

// Label 1 is an occupied Rydberg site, label tau an empty one.
constexpr int boundary_occupation(BoundaryLabel z) { return z == BoundaryLabel::One ? 1 : 0; }

inline std::string to_string(BoundaryLabel z) { return z == BoundaryLabel::One ? "1" : "tau"; }

inline constexpr int kMaxAnyons = 64;

// F_1 = F_2 = 1.
inline std::uint64_t fib(int k) {
  if (k < 1) throw ArgumentError("fib: index must be >= 1, got " + std::to_string(k));
  if (k > 93) throw ArgumentError("fib: F_" + std::to_string(k) + " overflows 64 bits");
  std::uint64_t a = 1, b = 1;
  for (int i = 2; i < k; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

inline void require_anyons(int n) {
  if (n < 2) throw ArgumentError("chain needs at least 2 anyons, got N=" + std::to_string(n));
  if (n > kMaxAnyons)
    throw ArgumentError("chain length N=" + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxAnyons));
}

inline std::uint64_t sector_dimension(int n, BoundaryLabel z0, BoundaryLabel zn) {
  require_anyons(n);
  return fib(n - 1 + offset(z0) + offset(zn));
}

class BasisState {
 public:
  BasisState() = default;
  BasisState(std::uint64_t bits, int sites) : bits_(bits), sites_(sites) {}

  // Parses "0101" as n_1=0, n_2=1, ...
  static BasisState parse(std::string_view text) {
    std::uint64_t bits = 0;
    for (char c : text) {
      if (c != '0' && c != '1') throw ArgumentError("basis state must be a 0/1 string");
      bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return {bits, static_cast<int>(text.size())};
  }

  std::uint64_t bits() const noexcept { return bits_; }
  int sites() const noexcept { return sites_; }

  // site in 1..sites()
  int occupation(int site) const noexcept {
    return static_cast<int>((bits_ >> (sites_ - site)) & 1u);
  }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(sites_), '0');
    for (int i = 1; i <= sites_; ++i)
      if (occupation(i)) s[static_cast<std::size_t>(i - 1)] = '1';
    return s;
  }

  friend bool operator==(const BasisState&, const BasisState&) = default;

 private:
  std::uint64_t bits_ = 0;
  int sites_ = 0;
};

class Sector;
using SectorPtr = std::shared_ptr<const Sector>;

class Sector {
 public:
  // Beyond this many states the basis is not materialized.
  static constexpr std::uint64_t kMaxMaterialized = 1ull << 26;

  static SectorPtr make(int n, BoundaryLabel z0, BoundaryLabel zn) {
    require_anyons(n);
    return SectorPtr(new Sector(n, z0, zn));
  }

  int anyons() const noexcept { return n_; }
  int sites() const noexcept { return n_ - 1; }
  BoundaryLabel z0() const noexcept { return z0_; }
  BoundaryLabel zn() const noexcept { return zn_; }
  std::size_t dim() const noexcept { return states_.size(); }
  std::span<const std::uint64_t> states() const noexcept { return states_; }

  // Two-letter code: 11, 1t, t1, tt.
  std::string code() const {
    return std::string(1, z0_ == BoundaryLabel::One ? '1' : 't') +
           (zn_ == BoundaryLabel::One ? '1' : 't');
  }

  bool same_as(const Sector& other) const noexcept {
    return n_ == other.n_ && z0_ == other.z0_ && zn_ == other.zn_;
  }

  // Occupation of site 0..N for a state given by its bits; ends read the boundary labels.
  int occupation(std::uint64_t bits, int site) const noexcept {
    if (site <= 0) return boundary_occupation(z0_);
    if (site >= n_) return boundary_occupation(zn_);
    return static_cast<int>((bits >> (n_ - 1 - site)) & 1u);
  }

  std::uint64_t site_mask(int site) const noexcept { return 1ull << (n_ - 1 - site); }

  bool contains(std::uint64_t bits) const noexcept {
    const int s = sites();
    if (s < 64 && (bits >> s) != 0) return false;
    if ((bits & (bits >> 1)) != 0) return false;
    if (boundary_occupation(z0_) && occupation(bits, 1)) return false;
    if (boundary_occupation(zn_) && occupation(bits, s)) return false;
    return true;
  }

  bool contains(const BasisState& state) const noexcept {
    return state.sites() == sites() && contains(state.bits());
  }

  // Rank among legal states in ascending order, counted without the state list.
  std::size_t index_of(const BasisState& state) const {
    if (state.sites() != sites() || !contains(state.bits()))
      throw DomainError("state " + state.to_string() + " is not in sector " + describe());
    return rank_unchecked(state.bits());
  }

  std::size_t index_of_bits(std::uint64_t bits) const {
    if (!contains(bits)) throw DomainError("bitstring is not in sector " + describe());
    return rank_unchecked(bits);
  }

  // Precondition: contains(bits).
  std::size_t rank_unchecked(std::uint64_t bits) const noexcept {
    std::uint64_t rank = 0;
    for (int site = 1; site < n_; ++site)
      if (occupation(bits, site)) rank += completions_[site + 1][0];
    return static_cast<std::size_t>(rank);
  }

  BasisState state_at(std::size_t k) const {
    if (k >= total_) {
      throw ArgumentError("state index " + std::to_string(k) + " out of range for dim " +
                          std::to_string(total_));
    }
    return {unrank(k), sites()};
  }

  std::uint64_t unrank(std::uint64_t k) const noexcept {
    std::uint64_t bits = 0;
    int prev = boundary_occupation(z0_);
    for (int site = 1; site < n_; ++site) {
      const std::uint64_t zero_count = completions_[site + 1][0];
      bits <<= 1;
      if (k >= zero_count && prev == 0) {
        bits |= 1u;
        k -= zero_count;
        prev = 1;
      } else {
        prev = 0;
      }
    }
    return bits;
  }

  std::string describe() const {
    return "(N=" + std::to_string(n_) + ", " + to_string(z0_) + ", " + to_string(zn_) + ")";
  }

 private:
  Sector(int n, BoundaryLabel z0, BoundaryLabel zn) : n_(n), z0_(z0), zn_(zn) {
    // completions_[site][p]: legal fillings of sites site..N-1 given n_{site-1} = p.
    completions_.assign(static_cast<std::size_t>(n_ + 2), {0, 0});
    const int right = boundary_occupation(zn_);
    completions_[n_][0] = 1;
    completions_[n_][1] = right ? 0 : 1;
    for (int site = n_ - 1; site >= 1; --site) {
      completions_[site][0] = completions_[site + 1][0] + completions_[site + 1][1];
      completions_[site][1] = completions_[site + 1][0];
    }
    total_ = completions_[1][boundary_occupation(z0_)];
    if (total_ > kMaxMaterialized)
      throw CapacityError("sector " + describe() + " has too many states to enumerate");
    states_.resize(static_cast<std::size_t>(total_));
    parallel_for(0, states_.size(), [this](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) states_[k] = unrank(k);
    }, 1u << 16);
  }

  int n_;
  BoundaryLabel z0_;
  BoundaryLabel zn_;
  std::uint64_t total_ = 0;
  std::vector<std::array<std::uint64_t, 2>> completions_;
  std::vector<std::uint64_t> states_;
};

inline SectorPtr enumerate_sector(int n, BoundaryLabel z0, BoundaryLabel zn) {
  return Sector::make(n, z0, zn);
}

// Accepts the codes 11, 1t, t1, tt.
inline std::pair<BoundaryLabel, BoundaryLabel> parse_sector_code(std::string_view code) {
  auto label = [&](char c) {
    if (c == '1') return BoundaryLabel::One;
    if (c == 't') return BoundaryLabel::Tau;
    throw ArgumentError("sector code must be one of 11, 1t, t1, tt; got '" +
                        std::string(code) + "'");
  };
  if (code.size() != 2) label('?');
  return {label(code[0]), label(code[1])};
}

inline constexpr std::array<std::pair<BoundaryLabel, BoundaryLabel>, 4> kAllSectors{{
    {BoundaryLabel::One, BoundaryLabel::One},
    {BoundaryLabel::One, BoundaryLabel::Tau},
    {BoundaryLabel::Tau, BoundaryLabel::One},
    {BoundaryLabel::Tau, BoundaryLabel::Tau},
}};

}  // namespace blockade_anyon
