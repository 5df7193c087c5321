#include "qpredict/enhancer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qpredict/error.hpp"
#include "qpredict/kernels.hpp"

namespace qpredict {
namespace {

void check_widths(unsigned q, unsigned n) {
  require(q >= 1 && q <= n, ErrorCode::argument, "enhancer needs 1 <= q <= n");
  require(n <= 52, ErrorCode::argument, "enhancer output width above 52 bits");
}

// Phase numerator over 2^n for output register value r and ancilla value l:
// r t - (L - 1)(r - l 2^(n-q)).
std::uint64_t phase_residue(std::uint64_t r, std::uint64_t l, std::int64_t t, unsigned q,
                            unsigned n) {
  const std::uint64_t modulus = std::uint64_t{1} << n;
  const auto chain = static_cast<std::int64_t>((std::uint64_t{1} << q) - 1);
  const auto d = static_cast<std::int64_t>(r) - static_cast<std::int64_t>(l << (n - q));
  const std::uint64_t rotate = dyadic_residue(static_cast<std::int64_t>(r), t, n);
  const std::uint64_t correct = dyadic_residue(chain, d, n);
  return (rotate + modulus - correct) & (modulus - 1);
}

}  // namespace

double EnhancerTable::delta_star(std::uint64_t l) const {
  return std::ldexp(static_cast<double>(table.at(l)), -static_cast<int>(n)) -
         std::ldexp(static_cast<double>(l), -static_cast<int>(q));
}

EnhancerTable zero_extension(unsigned q, unsigned n) {
  check_widths(q, n);
  EnhancerTable h{q, n, std::vector<std::uint64_t>(std::size_t{1} << q)};
  for (std::size_t l = 0; l < h.table.size(); ++l) h.table[l] = l << (n - q);
  return h;
}

EnhancerTable build_enhancer_from_frequencies(std::span<const double> frequencies, unsigned q,
                                              unsigned n) {
  check_widths(q, n);
  require(!frequencies.empty(), ErrorCode::argument, "enhancer needs at least one frequency");
  std::vector<double> sorted(frequencies.begin(), frequencies.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  const std::size_t cells = std::size_t{1} << q;
  constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> table(cells, kUnset);
  std::vector<double> owner(cells, 0.0);
  for (double w : sorted) {
    const std::uint64_t cell = FrequencyBits::truncate(w, q).value;
    const std::uint64_t fine = FrequencyBits::truncate(w, n).value;
    if (table[cell] != kUnset && table[cell] != fine) {
      fail(ErrorCode::spectrum_not_sparse,
           "frequencies " + std::to_string(owner[cell]) + " and " + std::to_string(w) +
               " share q-bit cell " + std::to_string(cell) + " but differ in " +
               std::to_string(n) + " bits");
    }
    table[cell] = fine;
    owner[cell] = w;
  }

  for (std::size_t l = 0; l < cells; ++l) {
    if (table[l] != kUnset) continue;
    const double center = std::ldexp(static_cast<double>(l), -static_cast<int>(q));
    double best = sorted.front();
    double best_dist = wraparound_distance(center, best);
    for (double w : sorted) {
      const double d = wraparound_distance(center, w);
      if (d < best_dist) {
        best = w;
        best_dist = d;
      }
    }
    table[l] = FrequencyBits::truncate(best, n).value;
  }

  EnhancerTable h{q, n, std::move(table)};
  verify_consistency(h, frequencies);
  return h;
}

EnhancerTable build_enhancer(const SpectralUnitary& u, unsigned q, unsigned n) {
  // Banded spectra are represented by their band centers.
  if (!u.band_centers().empty()) return build_enhancer_from_frequencies(u.band_centers(), q, n);
  return build_enhancer_from_frequencies(u.frequencies(), q, n);
}

void verify_consistency(const EnhancerTable& h, std::span<const double> frequencies) {
  for (double w : frequencies) {
    const std::uint64_t cell = FrequencyBits::truncate(w, h.q).value;
    const std::uint64_t fine = FrequencyBits::truncate(w, h.n).value;
    require(h(cell) == fine, ErrorCode::spectrum_not_sparse,
            "enhancer maps cell " + std::to_string(cell) + " to " + std::to_string(h(cell)) +
                " but frequency " + std::to_string(w) + " truncates to " + std::to_string(fine));
  }
}

StateVector apply_enhancer_phases(StateVector s, const EnhancerTable& h, std::int64_t t) {
  require(s.layout().ancilla_qubits == h.q, ErrorCode::argument,
          "ancilla width must equal the enhancer input width");
  const std::size_t dim = s.layout().ancilla_dim();
  std::vector<cplx> phases(dim);
  for (std::size_t l = 0; l < dim; ++l) {
    phases[l] = dyadic_phase(phase_residue(h(l), l, t, h.q, h.n), h.n);
  }
  const auto& k = kernels::active();
  for (std::size_t m = 0; m < s.layout().main_dim(); ++m) {
    k.mul(s.ancilla_block(m).data(), phases.data(), dim);
  }
  return s;
}

StateVector materialized_enhancer_roundtrip(const StateVector& s, const EnhancerTable& h,
                                            std::int64_t t) {
  const RegisterLayout& layout = s.layout();
  require(layout.ancilla_qubits == h.q, ErrorCode::argument,
          "ancilla width must equal the enhancer input width");
  require(layout.main_qubits + layout.ancilla_qubits + h.n <= 24, ErrorCode::capacity,
          "materialized enhancer register exceeds 24 qubits");
  const std::size_t anc = layout.ancilla_dim();
  const std::size_t third = std::size_t{1} << h.n;

  // Index (m, l, r) = (m * anc + l) * third + r.
  std::vector<cplx> big(layout.size() * third);
  for (std::size_t j = 0; j < layout.size(); ++j) big[j * third] = s.amplitudes()[j];

  auto xor_h = [&]() {
    std::vector<cplx> next(big.size());
    for (std::size_t j = 0; j < layout.size(); ++j) {
      const std::uint64_t hl = h(j % anc);
      for (std::size_t r = 0; r < third; ++r) next[j * third + (r ^ hl)] = big[j * third + r];
    }
    big.swap(next);
  };

  xor_h();
  for (std::size_t j = 0; j < layout.size(); ++j) {
    const std::size_t l = j % anc;
    for (std::size_t r = 0; r < third; ++r) {
      big[j * third + r] *= dyadic_phase(phase_residue(r, l, t, h.q, h.n), h.n);
    }
  }
  xor_h();

  double residual = 0.0;
  std::vector<cplx> out(layout.size());
  for (std::size_t j = 0; j < layout.size(); ++j) {
    out[j] = big[j * third];
    for (std::size_t r = 1; r < third; ++r) residual += std::norm(big[j * third + r]);
  }
  require(residual <= 1e-12, ErrorCode::internal_consistency,
          "output register of h did not return to zero (residual " + std::to_string(residual) +
              ")");
  return StateVector(layout, std::move(out));
}

}  // namespace qpredict
