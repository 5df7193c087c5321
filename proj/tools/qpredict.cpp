// qpredict: command-line front end for the prediction experiments.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qpredict/error.hpp"
#include "qpredict/harness.hpp"

namespace {

using qpredict::Error;
using qpredict::ErrorCode;
namespace hx = qpredict::harness;

constexpr int kExitBound = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::capacity ? kExitCapacity : kExitConfig;
}

void report_error(std::string_view code, const std::string& message) {
  std::cerr << "error code=" << code << " message=\"" << message << "\"\n";
}

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

// Subcommand flags that map one-to-one onto config keys.
const std::map<std::string, std::vector<Flag>> kFlags = {
    {"wizard",
     {{"--n", "n", "main register qubits"},
      {"--p", "p", "ancilla qubits"},
      {"--K", "K", "window multipliers, e.g. 2,4,8"},
      {"--trials", "trials", "random input states"},
      {"--kind", "kind", "spectrum kind"},
      {"--distinct", "distinct", "distinct frequencies"},
      {"--min-gap", "min_gap", "minimal wraparound gap"},
      {"--frequency-bits", "frequency_bits", "frequency grid width"}}},
    {"predict",
     {{"--n", "n", "main register qubits"},
      {"--p", "p", "base ancilla width"},
      {"--delta", "delta", "target error"},
      {"--times", "times", "times: list, a:b:step, max, max+1"},
      {"--trials", "trials", "random input states"},
      {"--kind", "kind", "spectrum kind"},
      {"--distinct", "distinct", "distinct frequencies"},
      {"--min-gap", "min_gap", "minimal wraparound gap"},
      {"--strip-width", "strip_width", "strip width"},
      {"--strip-gap", "strip_gap", "gap between strips"},
      {"--precision-bits", "precision_bits", "enhancer output width"},
      {"--eigenvector-inputs", "eigenvector_inputs", "also run every eigenvector"}}},
    {"shor",
     {{"--modulus", "modulus", "modulus"},
      {"--a", "base", "base"},
      {"--p", "p", "ancilla qubits"},
      {"--n", "n", "main register qubits (default: bits of modulus)"},
      {"--trials", "trials", "measurement budget"}}},
    {"grover",
     {{"--n", "n", "main register qubits"},
      {"--marked", "marked", "marked item"},
      {"--delta", "delta", "target error"},
      {"--p", "p", "base ancilla width (default: resolve the gap)"},
      {"--times", "times", "times"},
      {"--trials", "trials", "random input states"},
      {"--precision-bits", "precision_bits", "enhancer output width"}}},
    {"sweep",
     {{"--n", "n", "n range"},
      {"--p", "p", "p range"},
      {"--delta", "delta", "delta list"},
      {"--times", "times", "times"},
      {"--trials", "trials", "random input states"},
      {"--min-gap", "min_gap", "minimal wraparound gap"}}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-spectrum evolution prediction experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format;
  std::optional<double> tolerance;
  std::optional<unsigned> max_qubits;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tolerance", tolerance, "slack for bound checks");
  app.add_option("--max-qubits", max_qubits, "total qubit guard (default 22)");
  app.add_option("--set", sets, "extra key=value settings");

  std::vector<std::pair<std::string, std::string>> overrides;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"wizard", "tail-mass classification of the simulated wizard"},
      {"predict", "general prediction algorithm over a time list"},
      {"restore", "history restoration (negated times)"},
      {"shor", "period finding with the simulated wizard"},
      {"grover", "prediction for the Grover iterate"},
      {"sweep", "parameter sweep with speedup summary"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    subs[name] = sub;
    const auto& flags = kFlags.at(name == "restore" ? "predict" : name);
    for (const Flag& f : flags) sub->add_option(f.name, values[name][f.key], f.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("config", e.what());
    return kExitConfig;
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }

  try {
    hx::ExperimentConfig config;
    if (!config_path.empty()) config = hx::load_config(config_path);
    for (const auto& [key, value] : values[command]) {
      if (!value.empty()) hx::apply_setting(config, key, value);
    }
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      qpredict::require(eq != std::string::npos, ErrorCode::config,
                        "--set expects key=value, got '" + kv + "'");
      hx::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) config.seed = *seed;
    if (!out_path.empty()) config.output = out_path;
    if (!format.empty()) hx::apply_setting(config, "format", format);
    if (tolerance) config.tolerance = *tolerance;
    if (max_qubits) {
      config.max_qubits = *max_qubits;
      if (*max_qubits > 22) {
        std::cerr << "warning: qubit guard raised to " << *max_qubits
                  << "; dense states may need several GiB\n";
      }
    }

    const hx::ExperimentResult result = hx::run_command(command, config);
    const std::string text = hx::render(result, config.format);
    if (config.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.output, std::ios::binary);
      qpredict::require(static_cast<bool>(out), ErrorCode::config,
                        "cannot write '" + config.output + "'");
      out << text;
    }

    if (result.horizon_error) {
      report_error("horizon", "at least one time exceeds the prediction horizon");
      return kExitConfig;
    }
    if (result.bound_violated) {
      report_error("bound_violation", "at least one row violates its bound");
      return kExitBound;
    }
    return 0;
  } catch (const Error& e) {
    report_error(qpredict::to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kExitConfig;
  }
}
