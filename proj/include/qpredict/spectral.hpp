#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qpredict/statevector.hpp"

namespace qpredict {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A `width`-bit binary fraction 0.b_1...b_width, i.e. value / 2^width.
struct FrequencyBits {
  std::uint64_t value = 0;
  unsigned width = 0;

  static FrequencyBits make(std::uint64_t value, unsigned width);
  /// Leading `width` bits of omega in [0, 1).
  static FrequencyBits truncate(double omega, unsigned width);

  double as_real() const;
};

enum class SpectrumKind { dyadic_sparse, strip, shor, grover };

std::string_view to_string(SpectrumKind kind);
SpectrumKind parse_spectrum_kind(std::string_view text);

struct SpectrumSpec {
  SpectrumKind kind = SpectrumKind::dyadic_sparse;
  unsigned n = 0;

  // dyadic-sparse: `distinct` frequencies on the 2^frequency_bits grid
  // (0 means n bits) with pairwise wraparound distance >= min_gap.
  unsigned distinct = 8;
  double min_gap = 0.0;
  unsigned frequency_bits = 0;

  // strip: `strips` bands of width strip_width separated by strip_gap, each
  // discretized into points_per_strip uniformly spaced frequencies.
  unsigned strips = 4;
  double strip_width = 0.0;
  double strip_gap = 0.125;
  unsigned points_per_strip = 5;

  // shor: U|x> = |base * x mod modulus>.
  std::uint64_t base = 2;
  std::uint64_t modulus = 5;

  // grover: U = I_s I_marked with s the uniform superposition.
  std::uint64_t marked = 0;
};

/// Unitary U = sum_k exp(2 pi i w_k) |Phi_k><Phi_k| on n qubits.
class SpectralUnitary {
 public:
  /// `eigenvectors` holds Phi_k as column k. Frequencies within 1e-12 of 1
  /// are folded to 0. Throws if the columns are not orthonormal to 1e-10 or
  /// a frequency lies outside [0, 1).
  SpectralUnitary(unsigned n, CMatrix eigenvectors, std::vector<double> frequencies,
                  std::vector<double> band_centers = {});

  unsigned qubits() const { return n_; }
  std::size_t dim() const { return frequencies_.size(); }

  std::span<const double> frequencies() const { return frequencies_; }
  double frequency(std::size_t k) const { return frequencies_[k]; }

  const CMatrix& eigenvectors() const { return vectors_; }
  const CMatrix& adjoint() const { return adjoint_; }

  StateVector eigenvector(std::size_t k) const;

  /// Strip centers for strip spectra; empty otherwise.
  std::span<const double> band_centers() const { return band_centers_; }

  /// Sorted frequencies with values closer than `tol` merged.
  std::vector<double> distinct_frequencies(double tol = 1e-12) const;

  /// True when every frequency is an exact multiple of 2^-bits.
  bool frequencies_exact_in(unsigned bits) const;

  CMatrix dense_matrix() const;

 private:
  unsigned n_;
  CMatrix vectors_;
  CMatrix adjoint_;
  std::vector<double> frequencies_;
  std::vector<double> band_centers_;
};

SpectralUnitary build(const SpectrumSpec& spec, std::uint64_t seed);

/// exp(2 pi i frac(omega * s)).
cplx unit_phase(double omega, std::int64_t s);

/// exp(2 pi i residue / 2^bits) for a residue already reduced mod 2^bits.
cplx dyadic_phase(std::uint64_t residue, unsigned bits);

/// numerator mod 2^bits, for any signed 64-bit factors a * b.
std::uint64_t dyadic_residue(std::int64_t a, std::int64_t b, unsigned bits);

/// U^s on the main register (applied to every ancilla slice of a composite state).
StateVector apply_power(const SpectralUnitary& u, std::int64_t s, const StateVector& state);

/// Ground truth U^t xi used by every comparison in the project.
StateVector exact_evolution_oracle(const SpectralUnitary& u, std::int64_t t, const StateVector& xi);

double wraparound_distance(double a, double b);
double min_wraparound_gap(std::span<const double> frequencies);
/// Minimum wraparound distance between distinct frequencies; 1 if fewer than two.
double min_wraparound_gap(const SpectralUnitary& u);

/// Re-expresses the main register in the eigenbasis: amplitude (k, a) = <Phi_k| psi_a>.
StateVector to_eigenframe(const SpectralUnitary& u, const StateVector& s);
/// Inverse of to_eigenframe.
StateVector from_eigenframe(const SpectralUnitary& u, const StateVector& s);

/// Haar-distributed N x N unitary from QR of a seeded complex Gaussian matrix.
CMatrix random_unitary(std::size_t dim, Rng& rng);

}  // namespace qpredict
