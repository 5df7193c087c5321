#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Eigenvalues>

#include "qpredict/error.hpp"
#include "qpredict/spectral.hpp"
#include "test_support.hpp"

namespace qpredict {
namespace {

using testing::dense_apply;
using testing::max_abs_diff;

SpectralUnitary shor(std::uint64_t a, std::uint64_t mod, unsigned n) {
  SpectrumSpec s;
  s.kind = SpectrumKind::shor;
  s.base = a;
  s.modulus = mod;
  s.n = n;
  return build(s, 0);
}

SpectralUnitary grover(unsigned n, std::uint64_t marked) {
  SpectrumSpec s;
  s.kind = SpectrumKind::grover;
  s.n = n;
  s.marked = marked;
  return build(s, 0);
}

double gram_error(const SpectralUnitary& u) {
  const CMatrix g = u.adjoint() * u.eigenvectors();
  return (g - CMatrix::Identity(u.dim(), u.dim())).cwiseAbs().maxCoeff();
}

TEST(FrequencyBits, TruncationAndValue) {
  EXPECT_EQ(FrequencyBits::truncate(0.25, 2).value, 1U);
  EXPECT_EQ(FrequencyBits::truncate(0.999, 3).value, 7U);
  EXPECT_DOUBLE_EQ(FrequencyBits::make(5, 4).as_real(), 5.0 / 16.0);
  EXPECT_THROW(FrequencyBits::make(16, 4), Error);
}

TEST(SpectrumKind, ParsesNames) {
  EXPECT_EQ(parse_spectrum_kind("strip"), SpectrumKind::strip);
  EXPECT_EQ(to_string(SpectrumKind::dyadic_sparse), "dyadic-sparse");
  EXPECT_THROW(parse_spectrum_kind("gaussian"), Error);
}

TEST(BuildShor, OrbitOfTwoModFive) {
  const auto u = shor(2, 5, 3);
  EXPECT_LT(gram_error(u), 1e-10);
  // Eigenvectors supported on {1, 2, 4, 3} carry frequencies k / 4.
  std::multiset<double> orbit;
  for (std::size_t k = 0; k < u.dim(); ++k) {
    double support = 0.0;
    for (std::size_t x : {1, 2, 3, 4}) support += std::norm(u.eigenvectors()(x, k));
    if (support > 0.5) orbit.insert(u.frequency(k));
  }
  EXPECT_EQ(orbit, (std::multiset<double>{0.0, 0.25, 0.5, 0.75}));
  EXPECT_DOUBLE_EQ(min_wraparound_gap(u), 0.25);
}

TEST(BuildShor, DenseMatrixIsModularMultiplication) {
  for (auto [a, mod, n] : {std::tuple{2ULL, 5ULL, 3U}, std::tuple{7ULL, 15ULL, 4U},
                           std::tuple{3ULL, 7ULL, 4U}}) {
    const auto u = shor(a, mod, n);
    const CMatrix m = u.dense_matrix();
    for (std::size_t x = 0; x < u.dim(); ++x) {
      const std::size_t y = (x < mod && std::gcd(x, static_cast<std::size_t>(mod)) == 1)
                                ? (a * x) % mod
                                : x;
      for (std::size_t r = 0; r < u.dim(); ++r) {
        EXPECT_NEAR(std::abs(m(r, x) - (r == y ? 1.0 : 0.0)), 0.0, 1e-12);
      }
    }
  }
}

TEST(BuildShor, RejectsNonUnitBase) {
  EXPECT_THROW(shor(5, 15, 4), Error);
  EXPECT_THROW(shor(2, 17, 4), Error);  // 2^4 < 17
}

TEST(BuildGrover, NontrivialPhasesMatchDenseEigenvalues) {
  for (unsigned n : {4U, 6U}) {
    const auto u = grover(n, 3);
    EXPECT_LT(gram_error(u), 1e-10);
    // Independent oracle: eigenvalues of the explicitly built operator.
    const std::size_t N = u.dim();
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(N, N);
    g.array() -= cplx(2.0 / static_cast<double>(N), 0.0);
    g.col(3) *= -1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g);
    std::vector<double> want;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      double w = std::arg(es.eigenvalues()(i)) / (2 * std::numbers::pi);
      if (w < -1e-12) w += 1.0;
      want.push_back(std::max(0.0, w));
    }
    std::vector<double> got(u.frequencies().begin(), u.frequencies().end());
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < N; ++i) EXPECT_NEAR(got[i], want[i], 1e-9);
    const double beta = std::asin(1.0 / std::sqrt(static_cast<double>(N)));
    EXPECT_NEAR(min_wraparound_gap(u), 2.0 * beta / std::numbers::pi, 1e-9);
  }
}

TEST(BuildGrover, IterationsReachMarkedState) {
  for (unsigned n : {4U, 6U}) {
    const auto u = grover(n, 5);
    const std::size_t N = u.dim();
    std::vector<cplx> amps(N, cplx(1.0 / std::sqrt(static_cast<double>(N))));
    const StateVector uniform(RegisterLayout::main_only(n), amps);
    const auto t1 = static_cast<std::int64_t>(std::floor(std::numbers::pi / 4 * std::sqrt(N)));
    const StateVector out = apply_power(u, t1, uniform);
    EXPECT_GE(std::norm(out.amplitudes()[5]), 0.9) << "n=" << n;
  }
}

TEST(BuildDyadic, GapAndGridPostconditions) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = testing::dyadic(6, 4, 0.125, seed);
    EXPECT_LT(gram_error(u), 1e-10);
    EXPECT_TRUE(u.frequencies_exact_in(6));
    EXPECT_EQ(u.distinct_frequencies().size(), 4U);
    EXPECT_GE(min_wraparound_gap(u), 0.125 - 1e-15);
  }
}

TEST(BuildDyadic, InfeasibleGapIsArgumentError) {
  try {
    testing::dyadic(4, 8, 0.25, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::argument);
  }
}

TEST(BuildStrip, StripsSitInsideGaps) {
  SpectrumSpec s;
  s.kind = SpectrumKind::strip;
  s.n = 6;
  s.strips = 4;
  s.strip_width = 1.0 / 256;
  s.strip_gap = 0.125;
  const auto u = build(s, 3);
  ASSERT_EQ(u.band_centers().size(), 4U);
  for (double w : u.frequencies()) {
    double nearest = 1.0;
    for (double c : u.band_centers()) nearest = std::min(nearest, wraparound_distance(w, c));
    EXPECT_LE(nearest, s.strip_width / 2 + 1e-12);
  }
  s.strip_width = 0.2;
  EXPECT_THROW(build(s, 3), Error);
}

TEST(ApplyPower, KnownValues) {
  const auto u = testing::dyadic(4, 4, 0.125, 11);
  Rng rng(1);
  const auto xi = testing::random_main_state(4, rng);
  EXPECT_EQ(max_abs_diff(apply_power(u, 0, xi), xi), 0.0);

  for (std::size_t k : {0UL, 5UL, 15UL}) {
    const auto phi = u.eigenvector(k);
    StateVector want = phi;
    for (auto& z : want.amplitudes()) z *= std::polar(1.0, 2 * std::numbers::pi * u.frequency(k));
    EXPECT_LT(max_abs_diff(apply_power(u, 1, phi), want), 1e-10);
  }
  EXPECT_LT(max_abs_diff(apply_power(u, -7, apply_power(u, 7, xi)), xi), 1e-10);
}

TEST(ExactEvolutionOracle, MatchesDenseMatrix) {
  const auto u = testing::with_frequencies(
      3, {0.1, 0.37, 0.5, 0.9, 0.123, 0.0, 0.77, 0.61}, 4);
  Rng rng(2);
  const auto xi = testing::random_main_state(3, rng);
  const CMatrix m = u.dense_matrix();
  EXPECT_LT(max_abs_diff(exact_evolution_oracle(u, 0, xi), xi), 1e-15);
  EXPECT_LT(max_abs_diff(exact_evolution_oracle(u, 1, xi), dense_apply(m, xi)), 1e-10);
  const CMatrix adj = m.adjoint();
  EXPECT_LT(max_abs_diff(exact_evolution_oracle(u, -1, xi), dense_apply(adj, xi)), 1e-10);
  // Composite states evolve every ancilla slice.
  const auto comp = random_state(RegisterLayout::make(3, 2), rng);
  const auto out = apply_power(u, 3, comp);
  const CMatrix m3 = m * m * m;
  for (std::size_t a = 0; a < 4; ++a) {
    std::vector<cplx> slice(8);
    for (std::size_t x = 0; x < 8; ++x) slice[x] = comp.at(x, a);
    const auto want = dense_apply(m3, StateVector(RegisterLayout::main_only(3), slice));
    for (std::size_t x = 0; x < 8; ++x) EXPECT_NEAR(std::abs(out.at(x, a) - want.amplitudes()[x]), 0.0, 1e-10);
  }
}

TEST(ApplyPowerProperty, GroupLaw) {
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    const auto u = testing::dyadic(5, 6, 0.0, 100 + i, 5);
    const auto xi = testing::random_main_state(5, rng);
    std::uniform_int_distribution<std::int64_t> pick(-5000, 5000);
    const std::int64_t s1 = pick(rng), s2 = pick(rng);
    EXPECT_LT(max_abs_diff(apply_power(u, s1, apply_power(u, s2, xi)), apply_power(u, s1 + s2, xi)),
              1e-10);
  }
}

TEST(WraparoundGap, KnownValues) {
  const std::vector<double> a{0.0, 0.5};
  const std::vector<double> b{0.0, 0.75};
  const std::vector<double> one{0.3};
  EXPECT_DOUBLE_EQ(min_wraparound_gap(a), 0.5);
  EXPECT_DOUBLE_EQ(min_wraparound_gap(b), 0.25);
  const auto single = testing::with_frequencies(1, {0.3, 0.3}, 1);
  EXPECT_DOUBLE_EQ(min_wraparound_gap(single), 1.0);
}

TEST(SpectralUnitary, ValidatesInvariants) {
  Rng rng(1);
  CMatrix bad = random_unitary(4, rng);
  bad(0, 0) += 0.1;
  EXPECT_THROW(SpectralUnitary(2, bad, {0, 0, 0, 0}), Error);
  EXPECT_THROW(SpectralUnitary(2, random_unitary(4, rng), {0, 0, 1.5, 0}), Error);
  // Frequencies a hair below 1 fold to 0.
  SpectralUnitary u(2, random_unitary(4, rng), {1.0 - 1e-14, 0.25, 0.5, 0.75});
  EXPECT_EQ(u.frequency(0), 0.0);
}

TEST(Eigenframe, RoundTrip) {
  const auto u = testing::dyadic(4, 4, 0.125, 3);
  Rng rng(3);
  const auto s = random_state(RegisterLayout::make(4, 3), rng);
  EXPECT_LT(max_abs_diff(from_eigenframe(u, to_eigenframe(u, s)), s), 1e-12);
  EXPECT_NEAR(to_eigenframe(u, s).norm_sq(), 1.0, 1e-12);
}

}  // namespace
}  // namespace qpredict
