#include <gtest/gtest.h>

#include <vector>

#include "qpredict/kernels.hpp"
#include "test_support.hpp"

namespace qpredict {
namespace {

using kernels::KernelTable;
using testing::random_vector;

const KernelTable* simd() { return kernels::avx2_table(); }

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    if (simd() == nullptr) GTEST_SKIP() << "no SIMD variant on this CPU";
  }
  Rng rng{GetParam() * 7919 + 1};
};

void expect_near(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, tol) << i;
}

TEST_P(KernelEquivalence, Reductions) {
  const std::size_t n = GetParam();
  const auto a = random_vector(n, rng);
  const auto b = random_vector(n, rng);
  const KernelTable& s = kernels::scalar_table();
  const KernelTable& v = *simd();
  const double tol = 1e-12 * static_cast<double>(n + 1);
  EXPECT_NEAR(s.norm_sq(a.data(), n), v.norm_sq(a.data(), n), tol);
  EXPECT_NEAR(s.diff_norm_sq(a.data(), b.data(), n), v.diff_norm_sq(a.data(), b.data(), n), tol);
  EXPECT_NEAR(std::abs(s.dotc(a.data(), b.data(), n) - v.dotc(a.data(), b.data(), n)), 0.0, tol);
  EXPECT_NEAR(std::abs(s.dotu(a.data(), b.data(), n) - v.dotu(a.data(), b.data(), n)), 0.0, tol);
}

TEST_P(KernelEquivalence, ElementwiseUpdates) {
  const std::size_t n = GetParam();
  const auto x = random_vector(n, rng);
  const auto y = random_vector(n, rng);
  const cplx alpha(0.3, -1.7);
  const KernelTable& s = kernels::scalar_table();
  const KernelTable& v = *simd();

  auto xs = x, xv = x;
  s.mul(xs.data(), y.data(), n);
  v.mul(xv.data(), y.data(), n);
  expect_near(xs, xv, 1e-14);

  xs = x, xv = x;
  s.scale(xs.data(), alpha, n);
  v.scale(xv.data(), alpha, n);
  expect_near(xs, xv, 1e-14);

  auto ys = y, yv = y;
  s.axpy(alpha, x.data(), ys.data(), n);
  v.axpy(alpha, x.data(), yv.data(), n);
  expect_near(ys, yv, 1e-14);
}

TEST_P(KernelEquivalence, Butterflies) {
  const std::size_t n = GetParam();
  const auto a = random_vector(n, rng);
  const auto b = random_vector(n, rng);
  auto w = random_vector(n, rng);
  const KernelTable& s = kernels::scalar_table();
  const KernelTable& v = *simd();

  auto as = a, bs = b, av = a, bv = b;
  s.hadamard_butterfly(as.data(), bs.data(), n, 0.7071067811865476);
  v.hadamard_butterfly(av.data(), bv.data(), n, 0.7071067811865476);
  expect_near(as, av, 1e-14);
  expect_near(bs, bv, 1e-14);

  as = a, bs = b, av = a, bv = b;
  s.fft_butterfly(as.data(), bs.data(), w.data(), n);
  v.fft_butterfly(av.data(), bv.data(), w.data(), n);
  expect_near(as, av, 1e-13);
  expect_near(bs, bv, 1e-13);
}

// Lengths straddle the vector width so both the SIMD body and the tails run.
INSTANTIATE_TEST_SUITE_P(Lengths, KernelEquivalence,
                         ::testing::Values(0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 257));

TEST(KernelReference, ScalarMatchesDirectFormulas) {
  Rng rng(5);
  const auto a = random_vector(11, rng);
  const auto b = random_vector(11, rng);
  cplx dotc{}, dotu{};
  double nrm = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dotc += std::conj(a[i]) * b[i];
    dotu += a[i] * b[i];
    nrm += std::norm(a[i]);
  }
  const KernelTable& s = kernels::scalar_table();
  EXPECT_NEAR(std::abs(s.dotc(a.data(), b.data(), 11) - dotc), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.dotu(a.data(), b.data(), 11) - dotu), 0.0, 1e-12);
  EXPECT_NEAR(s.norm_sq(a.data(), 11), nrm, 1e-12);
}

TEST(KernelDispatch, SelectSwitchesActiveTable) {
  const std::string_view before = kernels::active().name;
  ASSERT_TRUE(kernels::select("scalar"));
  EXPECT_EQ(kernels::active().name, kernels::scalar_table().name);
  EXPECT_FALSE(kernels::select("neon-nonexistent"));
  kernels::select(before);
  EXPECT_EQ(kernels::active().name, before);
}

TEST(Gemm, MatchesNaiveProduct) {
  Rng rng(9);
  for (auto [rows, inner, cols] : {std::tuple{3, 5, 1}, std::tuple{4, 4, 7}, std::tuple{8, 3, 16}}) {
    const auto a = random_vector(rows * inner, rng);
    const auto b = random_vector(inner * cols, rng);
    std::vector<cplx> c(rows * cols);
    kernels::gemm(a.data(), b.data(), c.data(), rows, inner, cols);
    for (int r = 0; r < rows; ++r) {
      for (int j = 0; j < cols; ++j) {
        cplx acc{};
        for (int k = 0; k < inner; ++k) acc += a[r * inner + k] * b[k * cols + j];
        EXPECT_NEAR(std::abs(c[r * cols + j] - acc), 0.0, 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace qpredict
