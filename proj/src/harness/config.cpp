#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "qpredict/error.hpp"
#include "qpredict/harness.hpp"

namespace qpredict::harness {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::int64_t parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(), ErrorCode::config,
          "expected an integer, got '" + std::string(text) + "'");
  return v;
}

std::uint64_t parse_unsigned(std::string_view text) {
  const std::int64_t v = parse_int(text);
  require(v >= 0, ErrorCode::config, "expected a nonnegative integer, got '" + std::string(text) + "'");
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  fail(ErrorCode::config, "expected a boolean, got '" + std::string(text) + "'");
}

std::vector<unsigned> parse_width_list(std::string_view text) {
  std::vector<unsigned> out;
  for (std::int64_t v : parse_int_list(text)) {
    require(v >= 0 && v <= 64, ErrorCode::config, "width out of range: " + std::to_string(v));
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

std::vector<TimeToken> parse_times(std::string_view text) {
  std::vector<TimeToken> out;
  for (std::string_view item : split(text, ',')) {
    if (item.substr(0, 3) == "max") {
      std::string_view rest = trim(item.substr(3));
      TimeToken tok{true, 0};
      if (!rest.empty()) {
        require(rest.front() == '+' || rest.front() == '-', ErrorCode::config,
                "malformed time token '" + std::string(item) + "'");
        const std::int64_t off = parse_int(rest.substr(1));
        tok.value = rest.front() == '+' ? off : -off;
      }
      out.push_back(tok);
      continue;
    }
    for (std::int64_t v : parse_int_list(item)) out.push_back({false, v});
  }
  require(!out.empty(), ErrorCode::config, "empty time list");
  return out;
}

}  // namespace

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  text = trim(text);
  require(!text.empty(), ErrorCode::config, "empty list");
  for (std::string_view item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_int(parts[0]));
      continue;
    }
    require(parts.size() <= 3, ErrorCode::config, "malformed range '" + std::string(item) + "'");
    const std::int64_t a = parse_int(parts[0]);
    const std::int64_t b = parse_int(parts[1]);
    const std::int64_t step = parts.size() == 3 ? parse_int(parts[2]) : 1;
    require(step > 0, ErrorCode::config, "range step must be positive");
    require(a <= b, ErrorCode::config, "empty range '" + std::string(item) + "'");
    for (std::int64_t v = a; v <= b; v += step) out.push_back(v);
  }
  return out;
}

double parse_real(std::string_view text) {
  text = trim(text);
  require(!text.empty(), ErrorCode::config, "expected a number");
  if (text.substr(0, 2) == "2^") return std::ldexp(1.0, static_cast<int>(parse_int(text.substr(2))));
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double den = parse_real(text.substr(slash + 1));
    require(den != 0.0, ErrorCode::config, "division by zero in '" + std::string(text) + "'");
    return parse_real(text.substr(0, slash)) / den;
  }
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::config, "expected a number, got '" + s + "'");
  }
  require(used == s.size() && std::isfinite(v), ErrorCode::config,
          "expected a number, got '" + s + "'");
  return v;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  SpectrumSpec& s = c.spectrum;
  if (key == "kind") {
    s.kind = parse_spectrum_kind(value);
  } else if (key == "n") {
    c.n_values = parse_width_list(value);
    require(!c.n_values.empty(), ErrorCode::config, "empty n list");
    s.n = c.n_values.front();
  } else if (key == "p") {
    c.p_values = parse_width_list(value);
  } else if (key == "delta") {
    c.delta_values.clear();
    for (std::string_view item : split(value, ',')) c.delta_values.push_back(parse_real(item));
  } else if (key == "times" || key == "t") {
    c.times = parse_times(value);
  } else if (key == "K") {
    c.K_values.clear();
    for (std::int64_t v : parse_int_list(value)) {
      require(v >= 1, ErrorCode::config, "K must be positive");
      c.K_values.push_back(static_cast<std::uint64_t>(v));
    }
  } else if (key == "trials") {
    c.trials = parse_unsigned(value);
  } else if (key == "eigenvector_inputs") {
    c.eigenvector_inputs = parse_bool(value);
  } else if (key == "seed") {
    c.seed = parse_unsigned(value);
  } else if (key == "precision_bits") {
    c.precision_bits = static_cast<unsigned>(parse_unsigned(value));
  } else if (key == "distinct") {
    s.distinct = static_cast<unsigned>(parse_unsigned(value));
  } else if (key == "min_gap") {
    s.min_gap = parse_real(value);
  } else if (key == "frequency_bits") {
    s.frequency_bits = static_cast<unsigned>(parse_unsigned(value));
  } else if (key == "strips") {
    s.strips = static_cast<unsigned>(parse_unsigned(value));
  } else if (key == "strip_width") {
    s.strip_width = parse_real(value);
  } else if (key == "strip_gap") {
    s.strip_gap = parse_real(value);
  } else if (key == "points_per_strip") {
    s.points_per_strip = static_cast<unsigned>(parse_unsigned(value));
  } else if (key == "base" || key == "a") {
    s.base = parse_unsigned(value);
  } else if (key == "modulus") {
    s.modulus = parse_unsigned(value);
  } else if (key == "marked") {
    s.marked = parse_unsigned(value);
  } else if (key == "output" || key == "out") {
    c.output = std::string(value);
  } else if (key == "format") {
    if (value == "csv") {
      c.format = OutputFormat::csv;
    } else if (value == "json") {
      c.format = OutputFormat::json;
    } else {
      fail(ErrorCode::config, "format must be csv or json");
    }
  } else if (key == "tolerance") {
    c.tolerance = parse_real(value);
    require(c.tolerance >= 0.0, ErrorCode::config, "tolerance must be nonnegative");
  } else if (key == "max_qubits") {
    c.max_qubits = static_cast<unsigned>(parse_unsigned(value));
  } else if (key == "max_n") {
    c.max_n = static_cast<unsigned>(parse_unsigned(value));
  } else {
    fail(ErrorCode::config, "unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    require(eq != std::string_view::npos, ErrorCode::config,
            "line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::config) throw;
      fail(ErrorCode::config, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::config, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

}  // namespace qpredict::harness
