#pragma once

#include <cstdint>
#include <vector>

#include "qpredict/spectral.hpp"
#include "qpredict/statevector.hpp"

namespace qpredict {

/// Rotation angle (radians) per ancilla value.
struct PhaseRule {
  std::vector<double> angles;
};

/// Counts conditional applications of U. A u_seq pass over an m-bit ancilla is
/// charged the longest conditional chain, 2^m - 1; `weighted` additionally
/// accumulates sum_a P(a) * a for the state actually processed.
struct CostCounter {
  std::uint64_t u_cond_applications = 0;
  double weighted = 0.0;

  void charge(std::uint64_t chain, double weighted_chain) {
    u_cond_applications += chain;
    weighted += weighted_chain;
  }
};

/// WH on the ancilla: (m, s') <- M^{-1/2} sum_a (-1)^{a.s'} (m, a).
StateVector walsh_hadamard_ancilla(StateVector s);

/// QFT_M on the ancilla with kernel exp(-2 pi i s l / M); the inverse uses
/// exp(+2 pi i s l / M). Radix-2 FFT per main index.
StateVector qft_ancilla(StateVector s, bool inverse);

/// Dense O(M^2) DFT with the same convention, kept as the reference path.
StateVector qft_ancilla_dense(StateVector s, bool inverse);

/// U_seq: (psi, a) -> (U^{+-a} psi, a), with the main register in the
/// computational basis.
StateVector u_seq(StateVector s, const SpectralUnitary& u, bool inverse, CostCounter& counter);

/// U_seq on a state whose main register is already in u's eigenframe, where
/// it is the diagonal phase exp(+-2 pi i w_k a).
StateVector u_seq_eigenframe(StateVector s, const SpectralUnitary& u, bool inverse,
                             CostCounter& counter);

/// Amplitude (m, l) multiplied by exp(i rule(l)).
StateVector rotate_by_ancilla(StateVector s, const PhaseRule& rule);

/// H(omega, l) = sum_{s<M} exp(2 pi i s (omega - l/M)) in closed form.
cplx kernel_H(double omega, const FrequencyBits& l, std::uint64_t M);

}  // namespace qpredict
