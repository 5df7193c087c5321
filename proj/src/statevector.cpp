#include "qpredict/statevector.hpp"

#include <cmath>
#include <string>

#include "qpredict/error.hpp"
#include "qpredict/kernels.hpp"

namespace qpredict {

RegisterLayout RegisterLayout::make(unsigned main_qubits, unsigned ancilla_qubits) {
  require(main_qubits >= 1, ErrorCode::argument, "main register needs at least one qubit");
  require(main_qubits + ancilla_qubits <= kMaxTotalQubits, ErrorCode::capacity,
          "register layout of " + std::to_string(main_qubits + ancilla_qubits) +
              " qubits exceeds the dense limit of " + std::to_string(kMaxTotalQubits));
  return RegisterLayout{main_qubits, ancilla_qubits};
}

StateVector::StateVector(RegisterLayout layout, std::vector<cplx> amplitudes)
    : layout_(layout), amps_(std::move(amplitudes)) {
  require(amps_.size() == layout_.size(), ErrorCode::argument,
          "amplitude count " + std::to_string(amps_.size()) + " does not match layout size " +
              std::to_string(layout_.size()));
}

StateVector StateVector::zeros(RegisterLayout layout) {
  return StateVector(layout, std::vector<cplx>(layout.size()));
}

double StateVector::norm_sq() const { return kernels::active().norm_sq(amps_.data(), amps_.size()); }

StateVector new_basis_state(RegisterLayout layout, std::size_t m, std::size_t a) {
  require(m < layout.main_dim(), ErrorCode::argument,
          "main index " + std::to_string(m) + " out of range");
  require(a < layout.ancilla_dim(), ErrorCode::argument,
          "ancilla index " + std::to_string(a) + " out of range");
  StateVector s = StateVector::zeros(layout);
  s.at(m, a) = 1.0;
  return s;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  require(a.layout() == b.layout(), ErrorCode::argument, "layout mismatch");
  return kernels::active().dotc(a.amplitudes().data(), b.amplitudes().data(), a.size());
}

Distances distance(const StateVector& a, const StateVector& b) {
  require(a.layout() == b.layout(), ErrorCode::argument, "layout mismatch");
  const auto& k = kernels::active();
  const double d2 = k.diff_norm_sq(a.amplitudes().data(), b.amplitudes().data(), a.size());
  const cplx overlap = k.dotc(a.amplitudes().data(), b.amplitudes().data(), a.size());
  return {std::sqrt(d2), std::norm(overlap)};
}

AncillaProjection project_ancilla_zero(const StateVector& s) {
  const RegisterLayout& layout = s.layout();
  const RegisterLayout main = RegisterLayout::main_only(layout.main_qubits);
  std::vector<cplx> slice(layout.main_dim());
  for (std::size_t m = 0; m < layout.main_dim(); ++m) slice[m] = s.at(m, 0);
  const double prob = kernels::active().norm_sq(slice.data(), slice.size());
  require(prob >= 1e-14, ErrorCode::degenerate_projection,
          "ancilla-zero slice carries no probability mass");
  kernels::active().scale(slice.data(), cplx(1.0 / std::sqrt(prob), 0.0), slice.size());
  return {prob, StateVector(main, std::move(slice))};
}

std::vector<double> ancilla_marginals(const StateVector& s) {
  const RegisterLayout& layout = s.layout();
  std::vector<double> probs(layout.ancilla_dim(), 0.0);
  for (std::size_t m = 0; m < layout.main_dim(); ++m) {
    auto block = s.ancilla_block(m);
    for (std::size_t a = 0; a < block.size(); ++a) probs[a] += std::norm(block[a]);
  }
  return probs;
}

StateVector with_zero_ancilla(const StateVector& main, unsigned ancilla_qubits) {
  require(main.layout().ancilla_qubits == 0, ErrorCode::argument,
          "expected a main-register-only state");
  const RegisterLayout layout = RegisterLayout::make(main.layout().main_qubits, ancilla_qubits);
  StateVector out = StateVector::zeros(layout);
  for (std::size_t m = 0; m < layout.main_dim(); ++m) out.at(m, 0) = main.amplitudes()[m];
  return out;
}

StateVector random_state(RegisterLayout layout, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> amps(layout.size());
  for (auto& z : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = {re, im};
  }
  return normalized(StateVector(layout, std::move(amps)));
}

StateVector normalized(StateVector s) {
  const double n2 = s.norm_sq();
  require(n2 > 0.0, ErrorCode::argument, "cannot normalize the zero vector");
  kernels::active().scale(s.amplitudes().data(), cplx(1.0 / std::sqrt(n2), 0.0), s.size());
  return s;
}

}  // namespace qpredict
