#include "qpredict/wizard.hpp"

#include <algorithm>
#include <cmath>

#include "qpredict/error.hpp"
#include "qpredict/kernels.hpp"

namespace qpredict {
namespace {

void check_width(const StateVector& s, const SpectralUnitary& u, unsigned p) {
  require(s.layout().main_qubits == u.qubits(), ErrorCode::argument,
          "state main register does not match the unitary");
  require(s.layout().ancilla_qubits == p, ErrorCode::argument, "ancilla width must equal p");
}

WizardOutput finish(const SpectralUnitary& u, StateVector eigen_state) {
  WizardOutput out;
  out.ancilla_dim = eigen_state.layout().ancilla_dim();
  out.eigen_distribution.resize(eigen_state.size());
  const auto amps = eigen_state.amplitudes();
  std::transform(amps.begin(), amps.end(), out.eigen_distribution.begin(),
                 [](cplx z) { return std::norm(z); });
  out.state = from_eigenframe(u, eigen_state);
  return out;
}

WizardOutput run(const StateVector& xi, const SpectralUnitary& u, unsigned p, bool reversed,
                 CostCounter& counter) {
  require(xi.layout().ancilla_qubits == 0, ErrorCode::argument,
          "wizard input must be a main-register state");
  StateVector eig = to_eigenframe(u, xi);
  return finish(u, simulate_wizard_eigenframe(eig, u, p, reversed, counter));
}

}  // namespace

StateVector exact_wizard(const StateVector& s, const SpectralUnitary& u, unsigned p) {
  check_width(s, u, p);
  StateVector eig = to_eigenframe(u, s);
  StateVector out = StateVector::zeros(s.layout());
  const std::size_t dim = s.layout().ancilla_dim();
  for (std::size_t k = 0; k < u.dim(); ++k) {
    const std::uint64_t bits = FrequencyBits::truncate(u.frequency(k), p).value;
    auto src = eig.ancilla_block(k);
    auto dst = out.ancilla_block(k);
    for (std::size_t b = 0; b < dim; ++b) dst[b ^ bits] = src[b];
  }
  return from_eigenframe(u, out);
}

StateVector simulate_wizard_eigenframe(const StateVector& xi_eigen, const SpectralUnitary& u,
                                       unsigned p, bool reversed, CostCounter& counter) {
  require(p >= 1, ErrorCode::argument, "wizard needs at least one ancilla qubit");
  StateVector s = with_zero_ancilla(xi_eigen, p);
  s = walsh_hadamard_ancilla(std::move(s));
  s = u_seq_eigenframe(std::move(s), u, reversed, counter);
  return qft_ancilla(std::move(s), reversed);
}

WizardOutput simulate_wizard(const StateVector& xi, const SpectralUnitary& u, unsigned p,
                             CostCounter& counter) {
  return run(xi, u, p, false, counter);
}

WizardOutput simulate_wizard_reversed(const StateVector& xi, const SpectralUnitary& u, unsigned p,
                                      CostCounter& counter) {
  return run(xi, u, p, true, counter);
}

bool in_frequency_window(double omega, std::uint64_t l, unsigned p, double epsilon) {
  const double center = std::ldexp(static_cast<double>(l), -static_cast<int>(p));
  return wraparound_distance(center, omega) <= epsilon + 1e-12;
}

double tail_mass(const StateVector& eigen_state, const SpectralUnitary& u, std::uint64_t K) {
  const unsigned p = eigen_state.layout().ancilla_qubits;
  const std::size_t dim = eigen_state.layout().ancilla_dim();
  require(K >= 1 && K <= dim, ErrorCode::argument, "K must lie in [1, M]");
  const double eps = static_cast<double>(K) / static_cast<double>(dim);
  double tail = 0.0;
  for (std::size_t k = 0; k < u.dim(); ++k) {
    auto block = eigen_state.ancilla_block(k);
    for (std::size_t l = 0; l < dim; ++l) {
      if (!in_frequency_window(u.frequency(k), l, p, eps)) tail += std::norm(block[l]);
    }
  }
  return tail;
}

std::vector<TailReport> classify_type(const SpectralUnitary& u, unsigned p,
                                      std::span<const std::uint64_t> Ks, std::size_t trials,
                                      std::uint64_t seed) {
  const std::size_t dim = std::size_t{1} << p;
  std::vector<TailReport> reports;
  for (std::uint64_t K : Ks) {
    require(K >= 1 && K <= dim, ErrorCode::argument, "K must lie in [1, M]");
    TailReport r;
    r.K = K;
    r.epsilon = static_cast<double>(K) / static_cast<double>(dim);
    reports.push_back(r);
  }

  auto evaluate = [&](const StateVector& xi_eigen) {
    CostCounter scratch;
    const StateVector out = simulate_wizard_eigenframe(xi_eigen, u, p, false, scratch);
    const double total = out.norm_sq();
    for (auto& r : reports) {
      const double tail = tail_mass(out, u, r.K);
      if (r.inputs_checked == 0 || tail > r.tail_mass) {
        r.tail_mass = tail;
        r.in_window_mass = total - tail;
      }
      ++r.inputs_checked;
    }
  };

  Rng rng(seed);
  const RegisterLayout main = RegisterLayout::main_only(u.qubits());
  for (std::size_t i = 0; i < trials; ++i) evaluate(to_eigenframe(u, random_state(main, rng)));
  for (std::size_t k = 0; k < u.dim(); ++k) evaluate(new_basis_state(main, k, 0));
  return reports;
}

TailReport classify_type(const SpectralUnitary& u, unsigned p, std::uint64_t K, std::size_t trials,
                         std::uint64_t seed) {
  const std::uint64_t ks[] = {K};
  return classify_type(u, p, std::span<const std::uint64_t>(ks), trials, seed).front();
}

StateVector reversed_phase_corrected(const StateVector& reversed_state, const SpectralUnitary& u,
                                     unsigned p) {
  check_width(reversed_state, u, p);
  const unsigned n = u.qubits();
  require(p <= n, ErrorCode::argument, "phase correction needs p <= n");
  StateVector eig = to_eigenframe(u, reversed_state);
  const std::size_t dim = reversed_state.layout().ancilla_dim();
  const auto shift = static_cast<std::int64_t>(std::uint64_t{1} << (n - p));
  const auto chain = static_cast<std::int64_t>(dim - 1);
  std::vector<cplx> phases(dim);
  for (std::size_t k = 0; k < u.dim(); ++k) {
    const auto top = static_cast<std::int64_t>(FrequencyBits::truncate(u.frequency(k), n).value);
    for (std::size_t l = 0; l < dim; ++l) {
      // (M - 1) * (trunc_n(w) - l / M), held as a numerator over 2^n.
      const std::int64_t d = top - static_cast<std::int64_t>(l) * shift;
      phases[l] = dyadic_phase(dyadic_residue(chain, d, n), n);
    }
    kernels::active().mul(eig.ancilla_block(k).data(), phases.data(), dim);
  }
  return from_eigenframe(u, eig);
}

}  // namespace qpredict
