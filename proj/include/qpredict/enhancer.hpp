#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpredict/spectral.hpp"
#include "qpredict/statevector.hpp"

namespace qpredict {

/// Classical refinement map h from q-bit rough frequencies to n-bit ones.
struct EnhancerTable {
  unsigned q = 0;
  unsigned n = 0;
  std::vector<std::uint64_t> table;  ///< h(l) for every l < 2^q

  std::uint64_t operator()(std::uint64_t l) const { return table.at(l); }
  std::size_t size() const { return table.size(); }

  /// (0.h(l))_n - (0.l)_q.
  double delta_star(std::uint64_t l) const;
};

/// h(l) = trunc_n of the frequency whose q-bit cell is l. Cells holding no
/// frequency take the frequency nearest to (0.l)_q on the circle, ties going
/// to the lower frequency. Throws spectrum_not_sparse when one q-bit cell
/// holds two different n-bit truncations. Strip spectra use their band
/// centers in place of the individual frequencies.
EnhancerTable build_enhancer(const SpectralUnitary& u, unsigned q, unsigned n);
EnhancerTable build_enhancer_from_frequencies(std::span<const double> frequencies, unsigned q,
                                              unsigned n);

/// h(l) = l followed by n - q zero bits.
EnhancerTable zero_extension(unsigned q, unsigned n);

/// For every frequency: trunc_q(w) = l implies h(l) = trunc_n(w).
void verify_consistency(const EnhancerTable& h, std::span<const double> frequencies);

/// Amplitude (m, l) times exp(2 pi i (0.h(l))_n t) exp(-2 pi i (L - 1) delta*_l),
/// evaluated in exact integer arithmetic mod 2^n.
StateVector apply_enhancer_phases(StateVector s, const EnhancerTable& h, std::int64_t t);

/// Same map with the n-qubit output register of h held explicitly: XOR h(l)
/// in, rotate on that register, XOR h(l) out, then check it returned to zero.
StateVector materialized_enhancer_roundtrip(const StateVector& s, const EnhancerTable& h,
                                            std::int64_t t);

}  // namespace qpredict
