#include <gtest/gtest.h>

#include <cmath>

#include "qpredict/error.hpp"
#include "qpredict/predictor.hpp"
#include "test_support.hpp"

namespace qpredict {
namespace {

using testing::max_abs_diff;

StateVector oracle_with_ancilla(const SpectralUnitary& u, std::int64_t t, const StateVector& xi,
                                unsigned q) {
  return with_zero_ancilla(exact_evolution_oracle(u, t, xi), q);
}

TEST(DeriveParams, KnownValues) {
  const auto a = derive_params(0.5, 5, 10);
  EXPECT_EQ(a.c, 3U);
  EXPECT_DOUBLE_EQ(a.C, 1.0 / 28);
  EXPECT_EQ(a.q, 8U);
  EXPECT_EQ(a.L, 256U);
  EXPECT_EQ(a.t_max, 36);
  EXPECT_DOUBLE_EQ(a.rho, 0.5);
  try {
    derive_params(0.5, 2, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precondition);
  }
  try {
    derive_params(0.5, 5, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::capacity);
  }
  EXPECT_EQ(derive_params(0.1, 6, 14).c, 6U);  // log2(40) = 5.32
  EXPECT_EQ(derive_params(0.5, 4, 4, 16).t_max, 2340);
}

TEST(PredictNaiveExact, ReproducesOracle) {
  Rng rng(1);
  const auto u = testing::dyadic(6, 8, 0.0, 3, 4);
  const auto xi = testing::random_main_state(6, rng);
  CostCounter c;
  EXPECT_LT(max_abs_diff(predict_naive_exact(xi, u, 4, 0, c), xi), 1e-12);
  for (std::int64_t t : {1, 17, 500, 1000, -3}) {
    const auto out = predict_naive_exact(xi, u, 4, t, c);
    EXPECT_LT(distance(out, exact_evolution_oracle(u, t, xi)).vector_distance, 1e-9);
  }
  const auto phi = u.eigenvector(3);
  StateVector want = phi;
  for (auto& z : want.amplitudes()) z *= unit_phase(u.frequency(3), 9);
  EXPECT_LT(max_abs_diff(predict_naive_exact(phi, u, 4, 9, c), want), 1e-10);
  EXPECT_EQ(c.u_cond_applications, 0U);
}

TEST(PredictNaiveExact, RejectsInexactSpectrum) {
  const auto u = testing::dyadic(6, 8, 0.0, 3, 6);
  Rng rng(2);
  CostCounter c;
  if (!u.frequencies_exact_in(4)) {
    EXPECT_THROW(predict_naive_exact(testing::random_main_state(6, rng), u, 4, 1, c), Error);
  }
}

TEST(PredictExactEigenvalue, ReproducesOracle) {
  Rng rng(3);
  const auto u = testing::dyadic(8, 8, 0.0, 5, 4);
  const auto h = build_enhancer(u, 4, 8);
  const auto xi = testing::random_main_state(8, rng);
  CostCounter c;
  const auto zero = predict_exact_eigenvalue(xi, u, 4, 0, h, c);
  EXPECT_LT(distance(zero.state, xi).vector_distance, 1e-10);
  for (std::int64_t t : {1, 17, 50, 500}) {
    const auto r = predict_exact_eigenvalue(xi, u, 4, t, h, c);
    EXPECT_LT(distance(r.state, exact_evolution_oracle(u, t, xi)).vector_distance, 1e-8);
    EXPECT_NEAR(r.anc_zero_probability, 1.0, 1e-10);
  }
}

class SparseInstance : public ::testing::Test {
 protected:
  SparseInstance()
      : u(testing::dyadic(8, 8, 2.0 / 16, 17)),
        params(derive_params(0.5, 4, 8)),
        h(build_enhancer(u, params.q, params.precision_bits)) {}
  SpectralUnitary u;
  PredictionParams params;
  EnhancerTable h;
};

TEST_F(SparseInstance, WithinBoundUpToHorizon) {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const auto xi = testing::random_main_state(8, rng);
    for (std::int64_t t : {1L, 5L, params.t_max, -params.t_max}) {
      CostCounter c;
      const auto r = predict_general(xi, u, params, h, t, c);
      const double d = distance(r.state, oracle_with_ancilla(u, t, xi, params.q)).vector_distance;
      EXPECT_NEAR(d, r.report.vector_distance, 1e-10);
      EXPECT_LT(d, params.delta);
      EXPECT_GE(r.report.fidelity, 1.0 - params.delta * params.delta / 2 - 1e-6);
      EXPECT_EQ(r.report.u_cond_count, 2 * (params.L - 1));
      EXPECT_EQ(c.u_cond_applications, 2 * (params.L - 1));
    }
  }
}

TEST_F(SparseInstance, EigenFrameMatchesComputationalFrame) {
  Rng rng(5);
  const auto xi = testing::random_main_state(8, rng);
  CostCounter c;
  const auto comp = predict_general(xi, u, params, h, 7, c, Frame::computational);
  const auto eig = predict_general(xi, u, params, h, 7, c, Frame::eigen);
  EXPECT_LT(max_abs_diff(comp.state, from_eigenframe(u, eig.state)), 1e-12);
  EXPECT_EQ(comp.report.vector_distance, eig.report.vector_distance);
}

TEST_F(SparseInstance, HorizonIsEnforced) {
  Rng rng(6);
  const auto xi = testing::random_main_state(8, rng);
  CostCounter c;
  try {
    predict_general(xi, u, params, h, params.t_max + 1, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::horizon);
  }
  EXPECT_THROW(restore_history(xi, u, params, h, params.t_max + 1, c), Error);
}

TEST_F(SparseInstance, RestorationRoundTrip) {
  Rng rng(7);
  const auto xi = testing::random_main_state(8, rng);
  CostCounter c;
  const auto zero = restore_history(xi, u, params, h, 0, c);
  EXPECT_LT(zero.report.vector_distance, 1e-9 + 0.2);
  for (std::int64_t t : {3L, params.t_max}) {
    const auto r = restore_history(xi, u, params, h, t, c);
    EXPECT_EQ(r.report.t, -t);
    const auto back = apply_power(u, t, r.state);
    EXPECT_LT(distance(back, with_zero_ancilla(xi, params.q)).vector_distance,
              params.delta + 1e-9);
  }
}

TEST_F(SparseInstance, OperatorNormDominatesColumns) {
  const std::int64_t t = 9;
  const double norm = operator_norm_check(u, params, h, t);
  EXPECT_LT(norm, params.delta);
  // Block oracle: the pipeline keeps eigen-components apart, so the norm is
  // the worst eigenvector error.
  double block = 0.0;
  for (std::size_t k = 0; k < u.dim(); ++k) {
    CostCounter c;
    block = std::max(block, predict_general(u.eigenvector(k), u, params, h, t, c).report.vector_distance);
  }
  EXPECT_NEAR(norm, block, 1e-9);
  const RegisterLayout main = RegisterLayout::main_only(8);
  for (std::size_t m = 0; m < u.dim(); m += 37) {
    CostCounter c;
    EXPECT_LE(predict_general(new_basis_state(main, m, 0), u, params, h, t, c).report.vector_distance,
              norm + 1e-12);
  }
}

TEST(PredictGeneral, ZeroTimeZeroExtensionIsIdentity) {
  // q-bit exact spectrum: step 6 undoes step 1 exactly.
  const auto u = testing::dyadic(6, 4, 0.125, 8, 5);
  const auto params = derive_params(0.5, 3, 6);
  ASSERT_EQ(params.q, 6U);
  Rng rng(8);
  const auto xi = testing::random_main_state(6, rng);
  CostCounter c;
  const auto r = predict_general(xi, u, params, zero_extension(6, 6), 0, c);
  EXPECT_LT(r.report.vector_distance, 1e-9);
  EXPECT_LT(operator_norm_check(u, params, zero_extension(6, 6), 0), 1e-9);
}

TEST(PredictGeneral, ReducesToExactEigenvalueWhenQEqualsN) {
  const auto u = testing::dyadic(6, 5, 0.0, 9);
  const auto params = derive_params(0.5, 3, 6);
  const auto h = build_enhancer(u, 6, 6);
  Rng rng(9);
  const auto xi = testing::random_main_state(6, rng);
  for (std::int64_t t : {0, 1, 2}) {
    CostCounter c;
    const auto general = predict_general(xi, u, params, h, t, c);
    const auto exact = predict_exact_eigenvalue(xi, u, 6, t, h, c);
    EXPECT_LT(max_abs_diff(project_ancilla_zero(general.state).conditioned, exact.state), 1e-9);
    EXPECT_NEAR(general.report.vector_distance, 0.0, 1e-9);
  }
}

TEST(PredictGeneralProperty, CostIndependentOfTime) {
  const auto u = testing::dyadic(7, 6, 0.125, 10);
  const auto params = derive_params(0.5, 3, 7);
  const auto h = build_enhancer(u, params.q, 7);
  Rng rng(10);
  const auto xi = testing::random_main_state(7, rng);
  for (std::int64_t t = -params.t_max; t <= params.t_max; ++t) {
    CostCounter c;
    EXPECT_EQ(predict_general(xi, u, params, h, t, c, Frame::eigen).report.u_cond_count,
              2 * (params.L - 1));
  }
}

TEST(SpeedupSummary, FormulaAndEmpty) {
  EXPECT_TRUE(speedup_summary({}, 1.0 / 1024, 1.0 / 32, 0.5).empty());
  std::vector<RunReport> reports(2);
  reports[0].t = 18;
  reports[0].vector_distance = 0.1;
  reports[0].u_cond_count = 510;
  reports[1].t = 36;
  reports[1].vector_distance = 0.2;
  reports[1].u_cond_count = 510;
  const auto s = speedup_summary(reports, 1.0 / 1024, 1.0 / 32, 0.5);
  EXPECT_NEAR(s.theoretical_ratio, 16.0 / 56.0, 1e-12);
  EXPECT_EQ(s.measured_horizon, 36);
  EXPECT_EQ(s.cost, 510U);
  EXPECT_NEAR(s.measured_ratio, 36.0 / 510.0, 1e-15);
  EXPECT_NEAR(s.theoretical_horizon, 0.5 * 1024 / 14, 1e-9);
  EXPECT_NEAR(s.theoretical_time, 4.0 / (0.5 / 32), 1e-9);
}

}  // namespace
}  // namespace qpredict
