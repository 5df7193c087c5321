#include "qpredict/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "qpredict/error.hpp"
#include "qpredict/kernels.hpp"
#include "qpredict/wizard.hpp"

namespace qpredict {
namespace {

// U^t in the eigenframe: x_k -> exp(2 pi i w_k t) x_k.
StateVector evolve_eigenframe(const SpectralUnitary& u, const StateVector& xi_eigen,
                              std::int64_t t) {
  StateVector out = xi_eigen;
  for (std::size_t k = 0; k < u.dim(); ++k) {
    auto block = out.ancilla_block(k);
    kernels::active().scale(block.data(), unit_phase(u.frequency(k), t), block.size());
  }
  return out;
}

void check_horizon(const PredictionParams& params, std::int64_t t) {
  require(t <= params.t_max && t >= -params.t_max, ErrorCode::horizon,
          "|t| = " + std::to_string(t < 0 ? -t : t) + " exceeds the horizon t_max = " +
              std::to_string(params.t_max));
}

RunReport make_report(const SpectralUnitary& u, const StateVector& xi_eigen,
                      const StateVector& out_eigen, std::int64_t t, std::uint64_t u_cond,
                      double weighted) {
  const StateVector expected = evolve_eigenframe(u, xi_eigen, t);
  RunReport r;
  r.t = t;
  r.vector_distance =
      distance(out_eigen, with_zero_ancilla(expected, out_eigen.layout().ancilla_qubits))
          .vector_distance;
  try {
    const AncillaProjection proj = project_ancilla_zero(out_eigen);
    r.anc_zero_probability = proj.probability;
    r.fidelity = std::min(1.0, distance(proj.conditioned, expected).fidelity);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::degenerate_projection) throw;
    r.anc_zero_probability = 0.0;
    r.fidelity = 0.0;
  }
  r.u_cond_count = u_cond;
  r.weighted_u_cond = weighted;
  r.naive_cost = static_cast<std::uint64_t>(t < 0 ? -t : t);
  r.speedup_ratio =
      u_cond == 0 ? 0.0 : static_cast<double>(r.naive_cost) / static_cast<double>(u_cond);
  return r;
}

}  // namespace

PredictionParams derive_params(double delta, unsigned p, unsigned n, unsigned precision_bits) {
  require(delta > 0.0 && delta < 1.0, ErrorCode::argument, "delta must lie in (0, 1)");
  require(n >= 1, ErrorCode::argument, "n must be positive");
  PredictionParams out;
  out.delta = delta;
  out.rho = 1.0 - delta;
  out.n = n;
  out.p = p;
  out.c = static_cast<unsigned>(std::ceil(std::log2(4.0 / delta) - 1e-12));
  require(p >= out.c, ErrorCode::precondition,
          "p = " + std::to_string(p) + " is below c = " + std::to_string(out.c));
  out.q = p + out.c;
  out.precision_bits = precision_bits == 0 ? n : precision_bits;
  require(out.precision_bits <= 52, ErrorCode::capacity, "precision above 52 bits");
  require(out.q <= out.precision_bits, ErrorCode::capacity,
          "q = " + std::to_string(out.q) + " exceeds the precision width " +
              std::to_string(out.precision_bits));
  out.L = std::uint64_t{1} << out.q;
  out.C = delta / 14.0;
  out.t_max = static_cast<std::int64_t>(
      std::floor(std::ldexp(delta, static_cast<int>(out.precision_bits)) / 14.0));
  return out;
}

StateVector predict_naive_exact(const StateVector& xi, const SpectralUnitary& u, unsigned p,
                                std::int64_t t, CostCounter& counter) {
  (void)counter;  // the exact wizard is a reference oracle and costs nothing
  require(u.frequencies_exact_in(p), ErrorCode::precondition,
          "naive prediction needs every frequency to be exact in p bits");
  StateVector s = exact_wizard(with_zero_ancilla(xi, p), u, p);
  const std::size_t dim = s.layout().ancilla_dim();
  PhaseRule rule;
  rule.angles.resize(dim);
  for (std::size_t l = 0; l < dim; ++l) {
    const std::uint64_t r = dyadic_residue(static_cast<std::int64_t>(l), t, p);
    rule.angles[l] = 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(r), -static_cast<int>(p));
  }
  s = rotate_by_ancilla(std::move(s), rule);
  s = exact_wizard(s, u, p);
  return project_ancilla_zero(s).conditioned;
}

MainStateResult predict_exact_eigenvalue(const StateVector& xi, const SpectralUnitary& u,
                                         unsigned p, std::int64_t t, const EnhancerTable& h,
                                         CostCounter& counter) {
  require(u.frequencies_exact_in(p), ErrorCode::precondition,
          "exact-eigenvalue prediction needs every frequency to be exact in p bits");
  require(h.q == p, ErrorCode::argument, "enhancer input width must equal p");
  verify_consistency(h, u.frequencies());

  StateVector s = simulate_wizard_eigenframe(to_eigenframe(u, xi), u, p, false, counter);
  const std::size_t dim = s.layout().ancilla_dim();
  std::vector<cplx> phases(dim);
  for (std::size_t l = 0; l < dim; ++l) {
    phases[l] = dyadic_phase(dyadic_residue(static_cast<std::int64_t>(h(l)), t, h.n), h.n);
  }
  for (std::size_t m = 0; m < s.layout().main_dim(); ++m) {
    kernels::active().mul(s.ancilla_block(m).data(), phases.data(), dim);
  }
  s = qft_ancilla(std::move(s), false);
  s = u_seq_eigenframe(std::move(s), u, false, counter);
  s = walsh_hadamard_ancilla(std::move(s));

  const AncillaProjection proj = project_ancilla_zero(s);
  return {from_eigenframe(u, proj.conditioned), proj.probability};
}

StateVector predict_general_eigenframe(const StateVector& xi_eigen, const SpectralUnitary& u,
                                       const PredictionParams& params, const EnhancerTable& h,
                                       std::int64_t t, CostCounter& counter) {
  check_horizon(params, t);
  require(u.qubits() == params.n, ErrorCode::argument, "parameters were derived for another n");
  require(h.q == params.q && h.n == params.precision_bits, ErrorCode::argument,
          "enhancer widths do not match the parameters");
  StateVector s = simulate_wizard_eigenframe(xi_eigen, u, params.q, false, counter);
  s = apply_enhancer_phases(std::move(s), h, t);
  s = qft_ancilla(std::move(s), false);
  s = u_seq_eigenframe(std::move(s), u, false, counter);
  return walsh_hadamard_ancilla(std::move(s));
}

PredictionResult predict_general(const StateVector& xi, const SpectralUnitary& u,
                                 const PredictionParams& params, const EnhancerTable& h,
                                 std::int64_t t, CostCounter& counter, Frame frame) {
  require(xi.layout().ancilla_qubits == 0, ErrorCode::argument,
          "prediction input must be a main-register state");
  const StateVector xi_eigen = to_eigenframe(u, xi);
  const std::uint64_t before = counter.u_cond_applications;
  const double weighted_before = counter.weighted;
  StateVector out = predict_general_eigenframe(xi_eigen, u, params, h, t, counter);
  RunReport report = make_report(u, xi_eigen, out, t, counter.u_cond_applications - before,
                                 counter.weighted - weighted_before);
  if (frame == Frame::computational) out = from_eigenframe(u, out);
  return {std::move(out), report};
}

PredictionResult restore_history(const StateVector& xi, const SpectralUnitary& u,
                                 const PredictionParams& params, const EnhancerTable& h,
                                 std::int64_t t, CostCounter& counter, Frame frame) {
  require(t >= 0, ErrorCode::argument, "restoration time must be nonnegative");
  return predict_general(xi, u, params, h, -t, counter, frame);
}

double operator_norm_check(const SpectralUnitary& u, const PredictionParams& params,
                           const EnhancerTable& h, std::int64_t t) {
  const std::size_t N = u.dim();
  const std::size_t rows = N * params.L;
  require(rows * N <= (std::size_t{1} << 24), ErrorCode::capacity,
          "operator-norm check limited to 2^24 matrix entries");
  check_horizon(params, t);

  const RegisterLayout main = RegisterLayout::main_only(u.qubits());
  Eigen::MatrixXcd diff(rows, N);
  for (std::size_t m = 0; m < N; ++m) {
    const StateVector xi_eigen = to_eigenframe(u, new_basis_state(main, m, 0));
    CostCounter scratch;
    const StateVector out = predict_general_eigenframe(xi_eigen, u, params, h, t, scratch);
    const StateVector expected =
        with_zero_ancilla(evolve_eigenframe(u, xi_eigen, t), params.q);
    for (std::size_t r = 0; r < rows; ++r) {
      diff(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m)) =
          out.amplitudes()[r] - expected.amplitudes()[r];
    }
  }
  const Eigen::MatrixXcd gram = diff.adjoint() * diff;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorCode::internal_consistency,
          "Gram eigensolver failed");
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

SpeedupSummary speedup_summary(std::span<const RunReport> reports, double eps, double eps1,
                               double rho) {
  SpeedupSummary s;
  if (reports.empty()) return s;
  require(eps > 0.0 && eps1 > 0.0 && rho < 1.0, ErrorCode::argument,
          "speedup summary needs eps, eps1 > 0 and rho < 1");
  const double delta = 1.0 - rho;
  s.runs = reports.size();
  for (const RunReport& r : reports) {
    s.cost = std::max(s.cost, r.u_cond_count);
    if (r.vector_distance < delta) {
      s.measured_horizon = std::max(s.measured_horizon, r.t < 0 ? -r.t : r.t);
    }
  }
  s.measured_ratio =
      s.cost == 0 ? 0.0 : static_cast<double>(s.measured_horizon) / static_cast<double>(s.cost);
  s.theoretical_ratio = eps1 * delta / (56.0 * eps);
  if (s.measured_ratio > 0.0) {
    const double f = s.measured_ratio / s.theoretical_ratio;
    s.agreement_factor = std::max(f, 1.0 / f);
  } else {
    s.agreement_factor = std::numeric_limits<double>::infinity();
  }
  s.theoretical_horizon = delta / (14.0 * eps);
  s.theoretical_time = 4.0 / (delta * eps1);
  return s;
}

}  // namespace qpredict
