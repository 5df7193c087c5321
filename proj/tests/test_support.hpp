#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qpredict/spectral.hpp"
#include "qpredict/statevector.hpp"

namespace qpredict::testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline std::vector<cplx> random_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) {
    const double re = g(rng);
    const double im = g(rng);
    z = cplx(re, im);
  }
  return v;
}

inline StateVector random_main_state(unsigned n, Rng& rng) {
  return random_state(RegisterLayout::main_only(n), rng);
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  }
  return m;
}

/// n-bit exact dyadic spectrum with the given gap.
inline SpectralUnitary dyadic(unsigned n, unsigned distinct, double gap, std::uint64_t seed,
                              unsigned bits = 0) {
  SpectrumSpec s;
  s.kind = SpectrumKind::dyadic_sparse;
  s.n = n;
  s.distinct = distinct;
  s.min_gap = gap;
  s.frequency_bits = bits;
  return build(s, seed);
}

/// Unitary with the given frequency per eigenvector and Haar eigenvectors.
inline SpectralUnitary with_frequencies(unsigned n, std::vector<double> freqs, std::uint64_t seed) {
  Rng rng(seed);
  return SpectralUnitary(n, random_unitary(std::size_t{1} << n, rng), std::move(freqs));
}

/// Dense matrix-vector product, independent of the eigenframe machinery.
inline StateVector dense_apply(const CMatrix& m, const StateVector& v) {
  std::vector<cplx> out(v.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    cplx acc{};
    for (Eigen::Index c = 0; c < m.cols(); ++c) acc += m(r, c) * v.amplitudes()[c];
    out[r] = acc;
  }
  return StateVector(v.layout(), std::move(out));
}

}  // namespace qpredict::testing
