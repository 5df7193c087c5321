#include <gtest/gtest.h>

#include <cmath>

#include "qpredict/enhancer.hpp"
#include "qpredict/error.hpp"
#include "test_support.hpp"

namespace qpredict {
namespace {

using testing::kTwoPi;
using testing::max_abs_diff;

// Nearest-frequency oracle over an explicit candidate list.
std::uint64_t nearest_oracle(const std::vector<double>& freqs, std::uint64_t l, unsigned q,
                             unsigned n) {
  const double center = std::ldexp(static_cast<double>(l), -static_cast<int>(q));
  double best = freqs.front();
  for (double w : freqs) {
    const double d = wraparound_distance(center, w);
    const double b = wraparound_distance(center, best);
    if (d < b || (d == b && w < best)) best = w;
  }
  return FrequencyBits::truncate(best, n).value;
}

TEST(BuildEnhancer, TwoFrequencyExample) {
  const std::vector<double> freqs{0.25, 0.75};
  const auto h = build_enhancer_from_frequencies(freqs, 2, 4);
  EXPECT_EQ(h(1), 0b0100U);
  EXPECT_EQ(h(3), 0b1100U);
  for (std::uint64_t l = 0; l < 4; ++l) EXPECT_EQ(h(l), nearest_oracle(freqs, l, 2, 4));
}

TEST(BuildEnhancer, IdentityWhenQEqualsN) {
  const auto u = testing::dyadic(5, 6, 0.0, 3);
  const auto h = build_enhancer(u, 5, 5);
  for (double w : u.frequencies()) {
    const auto cell = FrequencyBits::truncate(w, 5).value;
    EXPECT_EQ(h(cell), cell);
  }
}

TEST(BuildEnhancer, CollisionIsNotSparse) {
  const std::vector<double> freqs{0.250, 0.251};
  try {
    build_enhancer_from_frequencies(freqs, 2, 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::spectrum_not_sparse);
    EXPECT_NE(std::string(e.what()).find("0.251"), std::string::npos);
  }
  // With too few output bits to separate them, the pair is harmless.
  EXPECT_NO_THROW(build_enhancer_from_frequencies(freqs, 2, 8));
}

TEST(BuildEnhancer, ConsistentOnRandomSparseSpectra) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto u = testing::dyadic(8, 8, 1.0 / 16, seed);
    const auto h = build_enhancer(u, 6, 8);
    EXPECT_NO_THROW(verify_consistency(h, u.frequencies()));
    for (double w : u.frequencies()) {
      EXPECT_EQ(h(FrequencyBits::truncate(w, 6).value), FrequencyBits::truncate(w, 8).value);
    }
    // Cells holding no frequency follow the nearest-frequency rule.
    const auto distinct = u.distinct_frequencies();
    for (std::uint64_t l = 0; l < 64; ++l) {
      bool occupied = false;
      for (double w : distinct) occupied |= FrequencyBits::truncate(w, 6).value == l;
      if (!occupied) EXPECT_EQ(h(l), nearest_oracle(distinct, l, 6, 8));
    }
    // |delta*| stays within one cell plus the distance to the chosen frequency.
    for (std::uint64_t l = 0; l < 64; ++l) {
      double nearest = 1.0;
      for (double w : distinct) nearest = std::min(nearest, wraparound_distance(w, l / 64.0));
      const double d = std::fabs(h.delta_star(l));
      EXPECT_LE(std::min(d, 1.0 - d), 1.0 / 64 + nearest + 1e-12);
    }
  }
}

TEST(ZeroExtension, DeltaStarVanishes) {
  const auto h = zero_extension(3, 6);
  for (std::uint64_t l = 0; l < 8; ++l) {
    EXPECT_EQ(h(l), l << 3);
    EXPECT_EQ(h.delta_star(l), 0.0);
  }
}

TEST(ApplyEnhancerPhases, IdentityAtTimeZero) {
  Rng rng(1);
  const auto s = random_state(RegisterLayout::make(4, 3), rng);
  EXPECT_LT(max_abs_diff(apply_enhancer_phases(s, zero_extension(3, 4), 0), s), 1e-15);
}

TEST(ApplyEnhancerPhases, DirectFormula) {
  // n = 4, q = 2 (L = 4); h(1) = 0100, t = 1.
  EnhancerTable h{2, 4, {0b0000, 0b0100, 0b1001, 0b1100}};
  for (std::uint64_t l = 0; l < 4; ++l) {
    const auto s = new_basis_state(RegisterLayout::make(1, 2), 0, l);
    const auto out = apply_enhancer_phases(s, h, 1);
    const double angle = kTwoPi * (h(l) / 16.0) - kTwoPi * 3 * h.delta_star(l);
    EXPECT_NEAR(std::abs(out.at(0, l) - std::polar(1.0, angle)), 0.0, 1e-12);
  }
}

TEST(ApplyEnhancerPhases, MatchesMaterializedRegister) {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const unsigned n = 3 + i % 4;
    const unsigned q = 1 + i % std::min(4U, n);
    const auto u = testing::dyadic(n, 2, std::ldexp(1.0, -static_cast<int>(q)), 70 + i);
    const auto h = build_enhancer(u, q, n);
    const auto s = random_state(RegisterLayout::make(n, q), rng);
    std::uniform_int_distribution<std::int64_t> pick(-100, 100);
    const std::int64_t t = pick(rng);
    const auto fast = apply_enhancer_phases(s, h, t);
    EXPECT_LT(max_abs_diff(fast, materialized_enhancer_roundtrip(s, h, t)), 1e-12);
    EXPECT_NEAR(fast.norm_sq(), s.norm_sq(), 1e-12);
  }
}

TEST(MaterializedEnhancer, IdentityAtTimeZero) {
  Rng rng(3);
  const auto s = random_state(RegisterLayout::make(6, 4), rng);
  EXPECT_LT(max_abs_diff(materialized_enhancer_roundtrip(s, zero_extension(4, 6), 0), s), 1e-15);
}

TEST(ApplyEnhancerPhases, LargeTimesStayExact) {
  // Exact integer phases: t and t + 2^n rotate identically.
  EnhancerTable h = zero_extension(3, 5);
  h.table[2] = 11;
  Rng rng(4);
  const auto s = random_state(RegisterLayout::make(2, 3), rng);
  const std::int64_t big = (std::int64_t{1} << 40) + 7;
  EXPECT_LT(max_abs_diff(apply_enhancer_phases(s, h, big),
                         apply_enhancer_phases(s, h, 7 + (std::int64_t{1} << 45))),
            1e-15);
}

}  // namespace
}  // namespace qpredict
