#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpredict/predictor.hpp"
#include "qpredict/spectral.hpp"
#include "qpredict/wizard.hpp"

namespace qpredict::harness {

enum class OutputFormat { csv, json };

/// A time value, either literal or relative to the horizon ("max", "max+1").
struct TimeToken {
  bool from_max = false;
  std::int64_t value = 0;

  std::int64_t resolve(std::int64_t t_max) const { return from_max ? t_max + value : value; }
};

struct ExperimentConfig {
  SpectrumSpec spectrum;
  std::vector<unsigned> n_values;
  std::vector<unsigned> p_values;
  std::vector<double> delta_values{0.5};
  std::vector<TimeToken> times;
  std::vector<std::uint64_t> K_values{2, 4, 8};
  unsigned precision_bits = 0;  ///< 0: n for dyadic spectra, 16 for grover
  std::size_t trials = 1;
  bool eigenvector_inputs = false;
  std::uint64_t seed = 1;
  std::string output;
  OutputFormat format = OutputFormat::csv;
  double tolerance = 1e-8;
  unsigned max_n = 14;
  unsigned max_qubits = 22;

  unsigned n() const { return n_values.empty() ? spectrum.n : n_values.front(); }
  unsigned p() const { return p_values.empty() ? 0 : p_values.front(); }
  double delta() const { return delta_values.front(); }
};

/// Applies one `key = value` assignment; unknown keys and malformed values
/// raise ErrorCode::config.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Flat config text: one `key = value` per line, `#` starts a comment.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Integer list: comma-separated values or inclusive ranges `a:b[:step]`.
std::vector<std::int64_t> parse_int_list(std::string_view text);
/// Real number, also accepting `a/b` and `2^k`.
double parse_real(std::string_view text);

struct RunRow {
  std::string experiment;
  unsigned n = 0;
  unsigned p = 0;
  unsigned q = 0;
  double delta = 0.0;
  RunReport report;  ///< worst case over the inputs of this row
  std::string error;  ///< non-empty when the row could not run
};

struct TailRow {
  unsigned n = 0;
  unsigned p = 0;
  TailReport report;
  double bound = 0.0;
  bool pass = false;
};

struct SummaryRow {
  unsigned n = 0;
  unsigned p = 0;
  unsigned q = 0;
  double delta = 0.0;
  SpeedupSummary summary;
};

struct GroverInfo {
  unsigned n = 0;
  std::uint64_t marked = 0;
  double gap = 0.0;            ///< from the diagonalized operator
  double reference_gap = 0.0;  ///< 4 arcsin(2^(-n/2)) / (2 pi)
  double relative_error = 0.0;
  unsigned p = 0;
  unsigned q = 0;
  unsigned precision_bits = 0;
};

struct ShorTrial {
  std::size_t trial = 0;
  std::uint64_t measured = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents;  ///< (numerator, denominator)
  std::uint64_t candidate = 0;
  std::uint64_t running = 0;  ///< lcm of candidates so far
};

struct ShorResult {
  std::uint64_t modulus = 0;
  std::uint64_t base = 0;
  unsigned n = 0;
  unsigned p = 0;
  std::uint64_t period = 0;  ///< 0 when not recovered
  std::size_t trials = 0;
  std::size_t trials_used = 0;
  bool success = false;
  std::vector<std::uint64_t> factors;
  std::vector<double> ancilla_distribution;
  std::vector<ShorTrial> records;
};

struct ExperimentResult {
  std::string command;
  std::vector<RunRow> runs;
  std::vector<TailRow> tails;
  std::vector<SummaryRow> summaries;
  std::optional<GroverInfo> grover;
  std::optional<ShorResult> shor;
  bool bound_violated = false;
  bool horizon_error = false;
};

ExperimentResult run_wizard(const ExperimentConfig& config);
ExperimentResult run_predict(const ExperimentConfig& config);
ExperimentResult run_restore(const ExperimentConfig& config);
ExperimentResult run_grover(const ExperimentConfig& config);
ExperimentResult run_shor(const ExperimentConfig& config);
ExperimentResult run_sweep(const ExperimentConfig& config);
ExperimentResult run_command(std::string_view command, const ExperimentConfig& config);

// Shor post-processing.
std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents(std::uint64_t numerator,
                                                                 std::uint64_t denominator,
                                                                 std::uint64_t max_denominator);
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t modulus);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t modulus);

inline constexpr std::string_view kRunHeader =
    "experiment,n,p,q,delta,t,distance,fidelity,anc_zero_prob,u_cond,naive_cost,speedup";

std::string to_csv(const ExperimentResult& result);
std::string to_json(const ExperimentResult& result);
std::string render(const ExperimentResult& result, OutputFormat format);

}  // namespace qpredict::harness
