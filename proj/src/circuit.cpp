#include "qpredict/circuit.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qpredict/error.hpp"
#include "qpredict/kernels.hpp"

namespace qpredict {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Bit-reversal permutation and per-stage twiddles for a length-M radix-2 FFT.
struct FftPlan {
  std::size_t size = 0;
  std::vector<std::size_t> reversed;
  std::vector<std::vector<cplx>> twiddles;

  FftPlan(std::size_t m, bool inverse) : size(m), reversed(m) {
    const unsigned bits = static_cast<unsigned>(std::countr_zero(m));
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t r = 0;
      for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
      reversed[i] = r;
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= m; len <<= 1) {
      std::vector<cplx> w(len / 2);
      for (std::size_t j = 0; j < len / 2; ++j) {
        w[j] = std::polar(1.0, sign * kTwoPi * static_cast<double>(j) / static_cast<double>(len));
      }
      twiddles.push_back(std::move(w));
    }
  }

  void run(cplx* x) const {
    for (std::size_t i = 0; i < size; ++i) {
      if (i < reversed[i]) std::swap(x[i], x[reversed[i]]);
    }
    const auto& k = kernels::active();
    std::size_t stage = 0;
    for (std::size_t len = 2; len <= size; len <<= 1, ++stage) {
      const std::size_t half = len / 2;
      for (std::size_t i = 0; i < size; i += len) {
        k.fft_butterfly(x + i, x + i + half, twiddles[stage].data(), half);
      }
    }
  }
};

}  // namespace

StateVector walsh_hadamard_ancilla(StateVector s) {
  const std::size_t dim = s.layout().ancilla_dim();
  const auto& k = kernels::active();
  const double r = std::numbers::sqrt2 / 2.0;
  for (std::size_t m = 0; m < s.layout().main_dim(); ++m) {
    cplx* x = s.ancilla_block(m).data();
    for (std::size_t h = 1; h < dim; h <<= 1) {
      for (std::size_t i = 0; i < dim; i += 2 * h) k.hadamard_butterfly(x + i, x + i + h, h, r);
    }
  }
  return s;
}

StateVector qft_ancilla(StateVector s, bool inverse) {
  const std::size_t dim = s.layout().ancilla_dim();
  const FftPlan plan(dim, inverse);
  const auto& k = kernels::active();
  const cplx norm(1.0 / std::sqrt(static_cast<double>(dim)), 0.0);
  for (std::size_t m = 0; m < s.layout().main_dim(); ++m) {
    cplx* x = s.ancilla_block(m).data();
    plan.run(x);
    k.scale(x, norm, dim);
  }
  return s;
}

StateVector qft_ancilla_dense(StateVector s, bool inverse) {
  const std::size_t dim = s.layout().ancilla_dim();
  const double sign = inverse ? 1.0 : -1.0;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<cplx> out(dim);
  for (std::size_t m = 0; m < s.layout().main_dim(); ++m) {
    auto x = s.ancilla_block(m);
    for (std::size_t l = 0; l < dim; ++l) {
      cplx acc{};
      for (std::size_t a = 0; a < dim; ++a) {
        const double frac = static_cast<double>((a * l) % dim) / static_cast<double>(dim);
        acc += x[a] * std::polar(1.0, sign * kTwoPi * frac);
      }
      out[l] = acc * norm;
    }
    std::copy(out.begin(), out.end(), x.begin());
  }
  return s;
}

StateVector u_seq_eigenframe(StateVector s, const SpectralUnitary& u, bool inverse,
                             CostCounter& counter) {
  require(s.layout().main_qubits == u.qubits(), ErrorCode::argument,
          "state main register does not match the unitary");
  const std::size_t dim = s.layout().ancilla_dim();
  const auto marginals = ancilla_marginals(s);
  double weighted = 0.0;
  for (std::size_t a = 0; a < dim; ++a) weighted += marginals[a] * static_cast<double>(a);

  const auto& k = kernels::active();
  const std::int64_t sign = inverse ? -1 : 1;
  std::vector<cplx> phases(dim);
  for (std::size_t m = 0; m < u.dim(); ++m) {
    const double w = u.frequency(m);
    for (std::size_t a = 0; a < dim; ++a) phases[a] = unit_phase(w, sign * static_cast<std::int64_t>(a));
    k.mul(s.ancilla_block(m).data(), phases.data(), dim);
  }
  counter.charge(dim - 1, weighted);
  return s;
}

StateVector u_seq(StateVector s, const SpectralUnitary& u, bool inverse, CostCounter& counter) {
  StateVector eig = to_eigenframe(u, s);
  eig = u_seq_eigenframe(std::move(eig), u, inverse, counter);
  return from_eigenframe(u, eig);
}

StateVector rotate_by_ancilla(StateVector s, const PhaseRule& rule) {
  const std::size_t dim = s.layout().ancilla_dim();
  require(rule.angles.size() == dim, ErrorCode::argument,
          "phase rule must define an angle for every ancilla value");
  std::vector<cplx> phases(dim);
  for (std::size_t a = 0; a < dim; ++a) phases[a] = std::polar(1.0, rule.angles[a]);
  const auto& k = kernels::active();
  for (std::size_t m = 0; m < s.layout().main_dim(); ++m) {
    k.mul(s.ancilla_block(m).data(), phases.data(), dim);
  }
  return s;
}

cplx kernel_H(double omega, const FrequencyBits& l, std::uint64_t M) {
  require(M == (std::uint64_t{1} << l.width), ErrorCode::argument, "M must equal 2^(l.width)");
  double delta = omega - l.as_real();
  delta -= std::floor(delta);
  const cplx step = std::polar(1.0, kTwoPi * delta);
  const cplx denom = 1.0 - step;
  if (std::abs(denom) < 1e-12) {
    cplx acc{};
    for (std::uint64_t s = 0; s < M; ++s) acc += unit_phase(delta, static_cast<std::int64_t>(s));
    return acc;
  }
  double md = static_cast<double>(M) * delta;
  md -= std::floor(md);
  return (1.0 - std::polar(1.0, kTwoPi * md)) / denom;
}

}  // namespace qpredict
