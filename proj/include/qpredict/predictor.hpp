#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpredict/circuit.hpp"
#include "qpredict/enhancer.hpp"
#include "qpredict/spectral.hpp"
#include "qpredict/statevector.hpp"

namespace qpredict {

struct PredictionParams {
  double delta = 0.0;
  double rho = 0.0;  ///< 1 - delta
  unsigned n = 0;    ///< main register qubits
  unsigned p = 0;
  unsigned c = 0;    ///< ceil(log2(4 / delta))
  unsigned q = 0;    ///< p + c
  unsigned precision_bits = 0;  ///< output width of h; equals n unless overridden
  std::uint64_t L = 0;
  double C = 0.0;               ///< delta / 14
  std::int64_t t_max = 0;       ///< floor(C * 2^precision_bits)
};

/// Throws precondition when p < c and capacity when q exceeds the precision
/// width. `precision_bits == 0` selects n.
PredictionParams derive_params(double delta, unsigned p, unsigned n, unsigned precision_bits = 0);

struct RunReport {
  std::int64_t t = 0;
  double vector_distance = 0.0;  ///< full composite state vs U^t xi (x) |0>
  double fidelity = 0.0;         ///< ancilla-zero conditioned state vs U^t xi
  double anc_zero_probability = 0.0;
  std::uint64_t u_cond_count = 0;
  double weighted_u_cond = 0.0;
  std::uint64_t naive_cost = 0;  ///< |t|
  double speedup_ratio = 0.0;    ///< naive_cost / u_cond_count
};

enum class Frame { computational, eigen };

struct PredictionResult {
  StateVector state;
  RunReport report;
};

struct MainStateResult {
  StateVector state;  ///< main register, ancilla-zero slice renormalized
  double anc_zero_probability = 0.0;
};

/// Exact wizard, rotation by 2 pi (0.l)_p t, exact wizard again. Requires a
/// p-bit exact spectrum.
StateVector predict_naive_exact(const StateVector& xi, const SpectralUnitary& u, unsigned p,
                                std::int64_t t, CostCounter& counter);

/// Simulated wizard, rotation by 2 pi (0.h(l))_n t, then QFT, U_seq and WH
/// once more. Requires a p-bit exact spectrum and a consistent h with q = p.
MainStateResult predict_exact_eigenvalue(const StateVector& xi, const SpectralUnitary& u,
                                         unsigned p, std::int64_t t, const EnhancerTable& h,
                                         CostCounter& counter);

/// Steps 1-6 on an input already in u's eigenframe; the result stays there.
StateVector predict_general_eigenframe(const StateVector& xi_eigen, const SpectralUnitary& u,
                                       const PredictionParams& params, const EnhancerTable& h,
                                       std::int64_t t, CostCounter& counter);

/// Steps 1-6 with a report against exact_evolution_oracle(t) (x) |0^q>.
/// `frame` selects the basis of the returned state; the report is the same.
PredictionResult predict_general(const StateVector& xi, const SpectralUnitary& u,
                                 const PredictionParams& params, const EnhancerTable& h,
                                 std::int64_t t, CostCounter& counter,
                                 Frame frame = Frame::computational);

/// predict_general at -t.
PredictionResult restore_history(const StateVector& xi, const SpectralUnitary& u,
                                 const PredictionParams& params, const EnhancerTable& h,
                                 std::int64_t t, CostCounter& counter,
                                 Frame frame = Frame::computational);

/// Largest singular value of (predicted - exact) on ancilla-zero inputs, from
/// the dense N L x N difference matrix. Capacity error above 2^24 entries.
double operator_norm_check(const SpectralUnitary& u, const PredictionParams& params,
                           const EnhancerTable& h, std::int64_t t);

struct SpeedupSummary {
  std::size_t runs = 0;
  std::int64_t measured_horizon = 0;  ///< largest |t| whose run met the delta bound
  std::uint64_t cost = 0;             ///< u_cond per run
  double measured_ratio = 0.0;        ///< measured_horizon / cost
  double theoretical_ratio = 0.0;     ///< eps1 (1 - rho) / (56 eps)
  double agreement_factor = 0.0;      ///< max(measured / theory, theory / measured)
  double theoretical_horizon = 0.0;   ///< (1 - rho) / (14 eps)
  double theoretical_time = 0.0;      ///< 4 / ((1 - rho) eps1)

  bool empty() const { return runs == 0; }
};

SpeedupSummary speedup_summary(std::span<const RunReport> reports, double eps, double eps1,
                               double rho);

}  // namespace qpredict
