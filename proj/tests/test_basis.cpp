#include <gtest/gtest.h>

#include <blockade_anyon/basis.hpp>
#include <blockade_anyon/errors.hpp>

#include "oracles.hpp"

using namespace blockade_anyon;

namespace {

std::vector<std::string> state_strings(const Sector& s) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < s.dim(); ++k) out.push_back(s.state_at(k).to_string());
  return out;
}

}  // namespace

TEST(Fib, BaseCasesAndRecurrence) {
  EXPECT_EQ(fib(1), 1u);
  EXPECT_EQ(fib(2), 1u);
  EXPECT_EQ(fib(10), 55u);
  for (int k = 1; k <= 93; ++k) EXPECT_EQ(fib(k), oracle::fib_iterative(k)) << k;
}

TEST(Fib, RejectsNonPositiveAndOverflowingIndex) {
  EXPECT_THROW(fib(0), ArgumentError);
  EXPECT_THROW(fib(-3), ArgumentError);
  EXPECT_THROW(fib(94), ArgumentError);
}

TEST(SectorDimension, Examples) {
  EXPECT_EQ(sector_dimension(2, BoundaryLabel::Tau, BoundaryLabel::Tau), 2u);
  EXPECT_EQ(sector_dimension(5, BoundaryLabel::One, BoundaryLabel::One), 3u);
  EXPECT_EQ(sector_dimension(4, BoundaryLabel::Tau, BoundaryLabel::Tau), 5u);
  EXPECT_THROW(sector_dimension(1, BoundaryLabel::Tau, BoundaryLabel::Tau), ArgumentError);
}

TEST(SectorDimension, ChargeSplitIdentity) {
  for (int n = 2; n <= 40; ++n) {
    const auto tt = sector_dimension(n, BoundaryLabel::Tau, BoundaryLabel::Tau);
    EXPECT_EQ(tt, sector_dimension(n, BoundaryLabel::One, BoundaryLabel::One) +
                      sector_dimension(n, BoundaryLabel::One, BoundaryLabel::Tau));
    EXPECT_EQ(sector_dimension(n, BoundaryLabel::One, BoundaryLabel::Tau),
              sector_dimension(n, BoundaryLabel::Tau, BoundaryLabel::One));
  }
}

TEST(EnumerateSector, Examples) {
  EXPECT_EQ(state_strings(*enumerate_sector(4, BoundaryLabel::Tau, BoundaryLabel::Tau)),
            (std::vector<std::string>{"000", "001", "010", "100", "101"}));
  EXPECT_EQ(state_strings(*enumerate_sector(2, BoundaryLabel::One, BoundaryLabel::One)),
            (std::vector<std::string>{"0"}));
  EXPECT_EQ(state_strings(*enumerate_sector(3, BoundaryLabel::One, BoundaryLabel::Tau)),
            (std::vector<std::string>{"00", "01"}));
}

TEST(EnumerateSector, MatchesBruteForce) {
  for (int n = 2; n <= 16; ++n) {
    for (auto [z0, zn] : kAllSectors) {
      const auto s = Sector::make(n, z0, zn);
      const auto expected = oracle::brute_force_states(n, z0, zn);
      ASSERT_EQ(s->dim(), expected.size()) << s->describe();
      EXPECT_TRUE(std::equal(expected.begin(), expected.end(), s->states().begin())) << s->describe();
      EXPECT_EQ(s->dim(), sector_dimension(n, z0, zn));
    }
  }
}

TEST(EnumerateSector, StatesRespectBlockadeAndBoundaries) {
  for (int n = 2; n <= 14; ++n) {
    for (auto [z0, zn] : kAllSectors) {
      const auto s = Sector::make(n, z0, zn);
      for (auto bits : s->states()) {
        for (int i = 0; i < n; ++i) EXPECT_FALSE(s->occupation(bits, i) && s->occupation(bits, i + 1));
      }
    }
  }
}

TEST(IndexOf, Examples) {
  const auto s = Sector::make(4, BoundaryLabel::Tau, BoundaryLabel::Tau);
  EXPECT_EQ(s->index_of(BasisState::parse("000")), 0u);
  EXPECT_EQ(s->index_of(BasisState::parse("101")), 4u);
  EXPECT_THROW(s->index_of(BasisState::parse("011")), DomainError);
}

TEST(IndexOf, RejectsBoundaryViolation) {
  const auto s = Sector::make(4, BoundaryLabel::One, BoundaryLabel::Tau);
  EXPECT_THROW(s->index_of(BasisState::parse("100")), DomainError);
  EXPECT_THROW(s->index_of(BasisState::parse("00")), DomainError);
}

TEST(StateAt, Examples) {
  const auto s = Sector::make(4, BoundaryLabel::Tau, BoundaryLabel::Tau);
  EXPECT_EQ(s->state_at(2).to_string(), "010");
  EXPECT_EQ(s->state_at(0).to_string(), "000");
  EXPECT_THROW(s->state_at(5), ArgumentError);
}

TEST(Ranking, RoundTripEverySector) {
  for (int n = 2; n <= 16; ++n) {
    for (auto [z0, zn] : kAllSectors) {
      const auto s = Sector::make(n, z0, zn);
      for (std::size_t k = 0; k < s->dim(); ++k) {
        const auto st = s->state_at(k);
        ASSERT_EQ(s->index_of(st), k);
        ASSERT_EQ(s->unrank(k), s->states()[k]);
      }
    }
  }
}

TEST(SectorCode, ParsesAllFour) {
  EXPECT_EQ(parse_sector_code("tt"), std::make_pair(BoundaryLabel::Tau, BoundaryLabel::Tau));
  EXPECT_EQ(parse_sector_code("11"), std::make_pair(BoundaryLabel::One, BoundaryLabel::One));
  EXPECT_EQ(parse_sector_code("1t"), std::make_pair(BoundaryLabel::One, BoundaryLabel::Tau));
  EXPECT_EQ(parse_sector_code("t1"), std::make_pair(BoundaryLabel::Tau, BoundaryLabel::One));
  EXPECT_THROW(parse_sector_code("xx"), ArgumentError);
}

TEST(Sector, RejectsTooFewAnyons) {
  EXPECT_THROW(Sector::make(1, BoundaryLabel::Tau, BoundaryLabel::Tau), ArgumentError);
}
