#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qpredict {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

/// Hard ceiling on the total qubit count of any dense register pair.
inline constexpr unsigned kMaxTotalQubits = 28;

/// Main register of `main_qubits` qubits followed by an ancilla register.
/// `ancilla_qubits == 0` describes a bare main-register state.
struct RegisterLayout {
  unsigned main_qubits = 0;
  unsigned ancilla_qubits = 0;

  /// Validates 1 <= main, main + anc <= kMaxTotalQubits.
  static RegisterLayout make(unsigned main_qubits, unsigned ancilla_qubits);
  static RegisterLayout main_only(unsigned main_qubits) { return make(main_qubits, 0); }

  std::size_t main_dim() const { return std::size_t{1} << main_qubits; }
  std::size_t ancilla_dim() const { return std::size_t{1} << ancilla_qubits; }
  std::size_t size() const { return main_dim() * ancilla_dim(); }
  /// Joint index, main-major.
  std::size_t index(std::size_t m, std::size_t a) const { return m * ancilla_dim() + a; }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

/// Dense amplitude vector over a RegisterLayout. Amplitude (m, a) lives at
/// m * ancilla_dim + a, so each main index owns a contiguous ancilla block.
class StateVector {
 public:
  StateVector() = default;
  StateVector(RegisterLayout layout, std::vector<cplx> amplitudes);

  static StateVector zeros(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  std::size_t size() const { return amps_.size(); }

  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }

  cplx at(std::size_t m, std::size_t a) const { return amps_[layout_.index(m, a)]; }
  cplx& at(std::size_t m, std::size_t a) { return amps_[layout_.index(m, a)]; }

  std::span<const cplx> ancilla_block(std::size_t m) const {
    return std::span<const cplx>(amps_).subspan(m * layout_.ancilla_dim(), layout_.ancilla_dim());
  }
  std::span<cplx> ancilla_block(std::size_t m) {
    return std::span<cplx>(amps_).subspan(m * layout_.ancilla_dim(), layout_.ancilla_dim());
  }

  double norm_sq() const;

 private:
  RegisterLayout layout_{};
  std::vector<cplx> amps_;
};

struct Distances {
  double vector_distance = 0.0;  ///< ||a - b||_2
  double fidelity = 0.0;         ///< |<a|b>|^2
};

struct AncillaProjection {
  double probability = 0.0;
  StateVector conditioned;  ///< main register only, renormalized
};

StateVector new_basis_state(RegisterLayout layout, std::size_t m, std::size_t a);

Distances distance(const StateVector& a, const StateVector& b);

/// <a|b>
cplx inner_product(const StateVector& a, const StateVector& b);

/// Probability of ancilla value 0 and the renormalized main-register state on
/// that slice. Throws ErrorCode::degenerate_projection when the slice is empty.
AncillaProjection project_ancilla_zero(const StateVector& s);

/// Exact marginal distribution of the ancilla register.
std::vector<double> ancilla_marginals(const StateVector& s);

/// Embeds a main-register state as |main, 0^ancilla_qubits>.
StateVector with_zero_ancilla(const StateVector& main, unsigned ancilla_qubits);

/// Normalized complex Gaussian state; the seed fully determines the result.
StateVector random_state(RegisterLayout layout, Rng& rng);

StateVector normalized(StateVector s);

}  // namespace qpredict
