#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <string>

#include "qpredict/error.hpp"
#include "../wide_int.hpp"
#include "qpredict/harness.hpp"

namespace qpredict::harness {
namespace {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

void check_capacity(const ExperimentConfig& c, unsigned n, unsigned anc) {
  require(n <= c.max_n, ErrorCode::capacity,
          "n = " + std::to_string(n) + " exceeds the guard n <= " + std::to_string(c.max_n));
  require(n + anc <= c.max_qubits, ErrorCode::capacity,
          "n + ancilla = " + std::to_string(n + anc) + " exceeds the guard of " +
              std::to_string(c.max_qubits) + " qubits");
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t modulus) {
  require(modulus >= 1, ErrorCode::argument, "modulus must be positive");
  uint128 result = 1 % modulus;
  uint128 base = a % modulus;
  while (e > 0) {
    if (e & 1U) result = result * base % modulus;
    base = base * base % modulus;
    e >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t modulus) {
  require(modulus >= 2 && std::gcd(a, modulus) == 1, ErrorCode::argument,
          "order needs gcd(a, modulus) = 1");
  std::uint64_t x = a % modulus;
  for (std::uint64_t r = 1; r <= modulus; ++r) {
    if (x == 1) return r;
    x = static_cast<std::uint64_t>(static_cast<uint128>(x) * a % modulus);
  }
  fail(ErrorCode::internal_consistency, "no multiplicative order found");
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents(std::uint64_t numerator,
                                                                 std::uint64_t denominator,
                                                                 std::uint64_t max_denominator) {
  require(denominator >= 1, ErrorCode::argument, "zero denominator");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  std::uint64_t hm2 = 0, hm1 = 1, km2 = 1, km1 = 0;
  std::uint64_t num = numerator, den = denominator;
  while (den != 0) {
    const std::uint64_t a = num / den;
    const std::uint64_t hn = a * hm1 + hm2;
    const std::uint64_t kn = a * km1 + km2;
    if (kn > max_denominator) break;
    out.emplace_back(hn, kn);
    hm2 = hm1;
    hm1 = hn;
    km2 = km1;
    km1 = kn;
    const std::uint64_t r = num % den;
    num = den;
    den = r;
  }
  return out;
}

ExperimentResult run_shor(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.spectrum.kind = SpectrumKind::shor;
  const std::uint64_t modulus = c.spectrum.modulus;
  const std::uint64_t a = c.spectrum.base;
  require(modulus >= 2, ErrorCode::argument, "modulus must be at least 2");
  require(std::gcd(a, modulus) == 1, ErrorCode::argument,
          "gcd(" + std::to_string(a) + ", " + std::to_string(modulus) + ") != 1");
  const auto min_n = static_cast<unsigned>(std::bit_width(modulus - 1));
  const unsigned n = c.n() == 0 ? std::max(1U, min_n) : c.n();
  const unsigned p = c.p() == 0 ? 2 * std::max(1U, min_n) : c.p();
  check_capacity(c, n, p);

  const SpectralUnitary u = build([&] {
    SpectrumSpec s = c.spectrum;
    s.n = n;
    return s;
  }(), c.seed);
  const StateVector one = new_basis_state(RegisterLayout::main_only(n), 1, 0);
  CostCounter counter;
  const WizardOutput out = simulate_wizard(one, u, p, counter);

  ShorResult r;
  r.modulus = modulus;
  r.base = a;
  r.n = n;
  r.p = p;
  r.trials = c.trials;
  r.ancilla_distribution = ancilla_marginals(out.state);
  std::discrete_distribution<std::size_t> sampler(r.ancilla_distribution.begin(),
                                                  r.ancilla_distribution.end());
  Rng rng(c.seed);
  const std::uint64_t M = std::uint64_t{1} << p;
  std::uint64_t running = 1;
  for (std::size_t trial = 1; trial <= c.trials; ++trial) {
    ShorTrial rec;
    rec.trial = trial;
    rec.measured = sampler(rng);
    rec.convergents = convergents(rec.measured, M, modulus);
    rec.candidate = rec.convergents.empty() ? 1 : rec.convergents.back().second;
    running = lcm_u64(running, rec.candidate);
    rec.running = running;
    r.records.push_back(rec);
    r.trials_used = trial;
    if (pow_mod(a, running, modulus) == 1) {
      // Reduce to the minimal exponent dividing the lcm.
      std::uint64_t best = running;
      for (std::uint64_t d = 1; d <= running; ++d) {
        if (running % d == 0 && pow_mod(a, d, modulus) == 1) {
          best = d;
          break;
        }
      }
      r.period = best;
      r.success = true;
      break;
    }
  }
  if (r.success && r.period % 2 == 0) {
    const std::uint64_t x = pow_mod(a, r.period / 2, modulus);
    if (x != modulus - 1) {
      for (std::uint64_t f : {std::gcd(x + modulus - 1, modulus), std::gcd(x + 1, modulus)}) {
        if (f > 1 && f < modulus) r.factors.push_back(f);
      }
      std::sort(r.factors.begin(), r.factors.end());
      r.factors.erase(std::unique(r.factors.begin(), r.factors.end()), r.factors.end());
    }
  }

  ExperimentResult res;
  res.command = "shor";
  res.bound_violated = !r.success;
  res.shor = std::move(r);
  return res;
}

}  // namespace qpredict::harness
