#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qpredict/enhancer.hpp"
#include "qpredict/error.hpp"
#include "qpredict/harness.hpp"

namespace qpredict::harness {
namespace {

constexpr std::uint64_t kInputStream = 0x9e3779b97f4a7c15ULL;

void check_capacity(const ExperimentConfig& c, unsigned n, unsigned anc) {
  require(n <= c.max_n, ErrorCode::capacity,
          "n = " + std::to_string(n) + " exceeds the guard n <= " + std::to_string(c.max_n));
  require(n + anc <= c.max_qubits, ErrorCode::capacity,
          "n + ancilla = " + std::to_string(n + anc) + " exceeds the guard of " +
              std::to_string(c.max_qubits) + " qubits");
}

unsigned require_n(const ExperimentConfig& c) {
  const unsigned n = c.n();
  require(n >= 1, ErrorCode::config, "n is not set");
  return n;
}

SpectrumSpec spectrum_for(const ExperimentConfig& c, unsigned n, unsigned p) {
  SpectrumSpec s = c.spectrum;
  s.n = n;
  // Default dyadic gap: two cells of the p-bit grid, so q-bit cells separate.
  if (s.kind == SpectrumKind::dyadic_sparse && s.min_gap == 0.0 && p >= 1) {
    s.min_gap = std::ldexp(2.0, -static_cast<int>(p));
  }
  return s;
}

unsigned precision_for(const ExperimentConfig& c, unsigned n) {
  if (c.precision_bits != 0) return c.precision_bits;
  return c.spectrum.kind == SpectrumKind::grover ? 16 : n;
}

std::vector<TimeToken> times_or_default(const ExperimentConfig& c) {
  if (!c.times.empty()) return c.times;
  return {{false, 0}, {false, 1}, {true, 0}};
}

std::vector<StateVector> make_inputs(const ExperimentConfig& c, const SpectralUnitary& u) {
  require(c.trials >= 1, ErrorCode::config, "trials must be at least 1");
  Rng rng(c.seed ^ kInputStream);
  const RegisterLayout main = RegisterLayout::main_only(u.qubits());
  std::vector<StateVector> inputs;
  for (std::size_t i = 0; i < c.trials; ++i) inputs.push_back(random_state(main, rng));
  if (c.eigenvector_inputs) {
    for (std::size_t k = 0; k < u.dim(); ++k) inputs.push_back(u.eigenvector(k));
  }
  return inputs;
}

void absorb(RunReport& worst, const RunReport& r, bool first) {
  if (first) {
    worst = r;
    return;
  }
  worst.vector_distance = std::max(worst.vector_distance, r.vector_distance);
  worst.fidelity = std::min(worst.fidelity, r.fidelity);
  worst.anc_zero_probability = std::min(worst.anc_zero_probability, r.anc_zero_probability);
  worst.weighted_u_cond = std::max(worst.weighted_u_cond, r.weighted_u_cond);
  worst.u_cond_count = std::max(worst.u_cond_count, r.u_cond_count);
}

struct FamilyOutcome {
  PredictionParams params;
  std::vector<RunRow> rows;
  std::vector<RunReport> reports;
  bool violated = false;
  bool horizon = false;
};

FamilyOutcome run_family(const ExperimentConfig& c, const SpectralUnitary& u, unsigned p,
                         double delta, bool restore, const std::string& name) {
  const unsigned n = u.qubits();
  FamilyOutcome out;
  out.params = derive_params(delta, p, n, precision_for(c, n));
  const PredictionParams& params = out.params;
  check_capacity(c, n, params.q);
  const EnhancerTable h = build_enhancer(u, params.q, params.precision_bits);
  // Hard bounds apply to spectra exact in the precision width, and
  // to the Grover iterate whose gap the ancilla resolves.
  const bool covered = u.frequencies_exact_in(params.precision_bits) ||
                       c.spectrum.kind == SpectrumKind::grover;
  const auto inputs = make_inputs(c, u);

  for (const TimeToken& tok : times_or_default(c)) {
    const std::int64_t t = tok.resolve(params.t_max);
    RunRow row{name, n, p, params.q, delta, {}, {}};
    if (restore) require(t >= 0, ErrorCode::config, "restoration times must be nonnegative");
    if (t > params.t_max || t < -params.t_max) {
      row.report.t = restore ? -t : t;
      row.error = "horizon";
      out.horizon = true;
      out.rows.push_back(row);
      continue;
    }
    bool first = true;
    for (const StateVector& xi : inputs) {
      CostCounter counter;
      const PredictionResult r = restore
                                     ? restore_history(xi, u, params, h, t, counter, Frame::eigen)
                                     : predict_general(xi, u, params, h, t, counter, Frame::eigen);
      absorb(row.report, r.report, first);
      first = false;
    }
    if (covered && row.report.vector_distance >= delta) out.violated = true;
    out.reports.push_back(row.report);
    out.rows.push_back(row);
  }
  return out;
}

ExperimentResult predict_like(const ExperimentConfig& c, bool restore) {
  ExperimentResult res;
  res.command = restore ? "restore" : "predict";
  const unsigned n = require_n(c);
  const unsigned p = c.p();
  require(p >= 1, ErrorCode::config, "p is not set");
  check_capacity(c, n, 0);
  const SpectralUnitary u = build(spectrum_for(c, n, p), c.seed);
  FamilyOutcome fam = run_family(c, u, p, c.delta(), restore, res.command);
  res.runs = std::move(fam.rows);
  res.bound_violated = fam.violated;
  res.horizon_error = fam.horizon;
  return res;
}

}  // namespace

ExperimentResult run_wizard(const ExperimentConfig& c) {
  ExperimentResult res;
  res.command = "wizard";
  const unsigned n = require_n(c);
  const unsigned p = c.p();
  require(p >= 1, ErrorCode::config, "p is not set");
  require(p <= n, ErrorCode::config, "p must not exceed n");
  check_capacity(c, n, p);
  require(c.trials >= 1, ErrorCode::config, "trials must be at least 1");
  for (std::uint64_t K : c.K_values) {
    require(K <= (std::uint64_t{1} << p), ErrorCode::config, "K must not exceed 2^p");
  }
  const SpectralUnitary u = build(spectrum_for(c, n, 0), c.seed);
  const auto reports = classify_type(u, p, c.K_values, c.trials, c.seed ^ kInputStream);
  for (const TailReport& r : reports) {
    TailRow row{n, p, r, 1.0 / static_cast<double>(r.K), false};
    row.pass = r.tail_mass <= row.bound + c.tolerance;
    if (!row.pass) res.bound_violated = true;
    res.tails.push_back(row);
  }
  return res;
}

ExperimentResult run_predict(const ExperimentConfig& c) { return predict_like(c, false); }
ExperimentResult run_restore(const ExperimentConfig& c) { return predict_like(c, true); }

ExperimentResult run_grover(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.spectrum.kind = SpectrumKind::grover;
  ExperimentResult res;
  res.command = "grover";
  const unsigned n = require_n(c);
  check_capacity(c, n, 0);
  const SpectralUnitary u = build(spectrum_for(c, n, 0), c.seed);

  GroverInfo info;
  info.n = n;
  info.marked = c.spectrum.marked;
  info.gap = min_wraparound_gap(u);
  info.reference_gap =
      4.0 * std::asin(1.0 / std::sqrt(static_cast<double>(u.dim()))) / (2.0 * std::numbers::pi);
  info.relative_error = std::fabs(info.gap - info.reference_gap) / info.reference_gap;

  unsigned p = c.p();
  if (p == 0) {
    // Smallest p >= c whose grid puts two cells inside the gap.
    p = static_cast<unsigned>(std::ceil(std::log2(4.0 / c.delta()) - 1e-12));
    while (std::ldexp(2.0, -static_cast<int>(p)) > info.gap) ++p;
  }
  FamilyOutcome fam = run_family(c, u, p, c.delta(), false, "grover");
  info.p = p;
  info.q = fam.params.q;
  info.precision_bits = fam.params.precision_bits;
  res.grover = info;
  res.runs = std::move(fam.rows);
  res.bound_violated = fam.violated;
  res.horizon_error = fam.horizon;
  return res;
}

ExperimentResult run_sweep(const ExperimentConfig& c) {
  ExperimentResult res;
  res.command = "sweep";
  require(!c.n_values.empty(), ErrorCode::config, "sweep needs a non-empty n range");
  require(!c.p_values.empty(), ErrorCode::config, "sweep needs a non-empty p range");
  require(!c.delta_values.empty(), ErrorCode::config, "sweep needs a non-empty delta list");
  for (unsigned n : c.n_values) {
    check_capacity(c, n, 0);
    for (unsigned p : c.p_values) {
      const SpectralUnitary u = build(spectrum_for(c, n, p), c.seed);
      for (double delta : c.delta_values) {
        FamilyOutcome fam = run_family(c, u, p, delta, false, "sweep");
        const double eps = std::ldexp(1.0, -static_cast<int>(fam.params.precision_bits));
        const double eps1 = std::ldexp(1.0, -static_cast<int>(p));
        res.summaries.push_back(
            {n, p, fam.params.q, delta, speedup_summary(fam.reports, eps, eps1, 1.0 - delta)});
        res.runs.insert(res.runs.end(), fam.rows.begin(), fam.rows.end());
        res.bound_violated = res.bound_violated || fam.violated;
        res.horizon_error = res.horizon_error || fam.horizon;
      }
    }
  }
  return res;
}

ExperimentResult run_command(std::string_view command, const ExperimentConfig& c) {
  if (command == "wizard") return run_wizard(c);
  if (command == "predict") return run_predict(c);
  if (command == "restore") return run_restore(c);
  if (command == "grover") return run_grover(c);
  if (command == "shor") return run_shor(c);
  if (command == "sweep") return run_sweep(c);
  fail(ErrorCode::config, "unknown command '" + std::string(command) + "'");
}

}  // namespace qpredict::harness
