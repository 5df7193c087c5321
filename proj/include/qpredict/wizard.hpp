#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpredict/circuit.hpp"
#include "qpredict/spectral.hpp"
#include "qpredict/statevector.hpp"

namespace qpredict {

struct WizardOutput {
  StateVector state;                       ///< main (computational basis) x p-bit ancilla
  std::vector<double> eigen_distribution;  ///< |<Phi_k, l|state>|^2 at k * M + l
  std::size_t ancilla_dim = 0;

  double probability(std::size_t k, std::size_t l) const {
    return eigen_distribution[k * ancilla_dim + l];
  }
};

/// Worst case over the checked inputs of the mass that falls outside the
/// frequency window of half-width epsilon = K / M.
struct TailReport {
  double epsilon = 0.0;
  double in_window_mass = 0.0;
  double tail_mass = 0.0;
  std::uint64_t K = 0;
  std::size_t inputs_checked = 0;
};

/// Reference wizard W_U|Phi_k, b> = |Phi_k, b xor trunc_p(w_k)>, computed from
/// the known spectrum. Not a simulation, so it charges no cost.
StateVector exact_wizard(const StateVector& s, const SpectralUnitary& u, unsigned p);

/// QFT_M U_seq WH |xi, 0^p>.
WizardOutput simulate_wizard(const StateVector& xi, const SpectralUnitary& u, unsigned p,
                             CostCounter& counter);

/// QFT_M^{-1} U_seq^{-1} WH |xi, 0^p>.
WizardOutput simulate_wizard_reversed(const StateVector& xi, const SpectralUnitary& u, unsigned p,
                                      CostCounter& counter);

/// Same pipelines on an input already expressed in u's eigenframe (main
/// register only); the result stays in the eigenframe.
StateVector simulate_wizard_eigenframe(const StateVector& xi_eigen, const SpectralUnitary& u,
                                       unsigned p, bool reversed, CostCounter& counter);

/// Circular distance between (0.l)_p and omega is at most epsilon. This
/// covers both the direct and the shifted-by-one comparisons of the window.
bool in_frequency_window(double omega, std::uint64_t l, unsigned p, double epsilon);

/// Mass outside the K/M window for an eigenframe wizard output.
double tail_mass(const StateVector& eigen_state, const SpectralUnitary& u, std::uint64_t K);

/// Maximum tail over `trials` seeded random states plus all 2^n eigenvectors.
TailReport classify_type(const SpectralUnitary& u, unsigned p, std::uint64_t K, std::size_t trials,
                         std::uint64_t seed);

/// One pass over the inputs evaluating several K at once.
std::vector<TailReport> classify_type(const SpectralUnitary& u, unsigned p,
                                      std::span<const std::uint64_t> Ks, std::size_t trials,
                                      std::uint64_t seed);

/// Multiplies each (Phi_k, l) component of a reversed-sequence output by
/// exp(2 pi i (M - 1) d_{k,l}), d_{k,l} = trunc_n(w_k) - (0.l)_p.
StateVector reversed_phase_corrected(const StateVector& reversed_state, const SpectralUnitary& u,
                                     unsigned p);

}  // namespace qpredict
