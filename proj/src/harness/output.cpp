#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qpredict/error.hpp"
#include "qpredict/harness.hpp"

namespace qpredict::harness {
namespace {

using Json = nlohmann::ordered_json;

std::string real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fraction(std::uint64_t num, std::uint64_t den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

void write_runs(std::ostringstream& out, const std::vector<RunRow>& runs) {
  out << kRunHeader << '\n';
  for (const RunRow& r : runs) {
    const RunReport& x = r.report;
    out << r.experiment << ',' << r.n << ',' << r.p << ',' << r.q << ',' << real(r.delta) << ','
        << x.t << ',';
    if (!r.error.empty()) {
      out << "error:" << r.error << ",,,,,\n";
      continue;
    }
    out << real(x.vector_distance) << ',' << real(x.fidelity) << ','
        << real(x.anc_zero_probability) << ',' << x.u_cond_count << ',' << x.naive_cost << ','
        << real(x.speedup_ratio) << '\n';
  }
}

void write_tails(std::ostringstream& out, const std::vector<TailRow>& tails) {
  out << "experiment,n,p,K,epsilon,in_window_mass,tail_mass,bound,inputs,pass\n";
  for (const TailRow& r : tails) {
    out << "wizard," << r.n << ',' << r.p << ',' << r.report.K << ',' << real(r.report.epsilon)
        << ',' << real(r.report.in_window_mass) << ',' << real(r.report.tail_mass) << ','
        << real(r.bound) << ',' << r.report.inputs_checked << ',' << (r.pass ? "pass" : "fail")
        << '\n';
  }
}

void write_summaries(std::ostringstream& out, const std::vector<SummaryRow>& rows) {
  out << "n,p,q,delta,runs,measured_horizon,cost,measured_ratio,theoretical_ratio,"
         "agreement_factor,theoretical_horizon,theoretical_time\n";
  for (const SummaryRow& r : rows) {
    const SpeedupSummary& s = r.summary;
    out << r.n << ',' << r.p << ',' << r.q << ',' << real(r.delta) << ',' << s.runs << ','
        << s.measured_horizon << ',' << s.cost << ',' << real(s.measured_ratio) << ','
        << real(s.theoretical_ratio) << ',' << real(s.agreement_factor) << ','
        << real(s.theoretical_horizon) << ',' << real(s.theoretical_time) << '\n';
  }
}

void write_grover(std::ostringstream& out, const GroverInfo& g) {
  out << "n,marked,gap,reference_gap,relative_error,p,q,precision_bits\n";
  out << g.n << ',' << g.marked << ',' << real(g.gap) << ',' << real(g.reference_gap) << ','
      << real(g.relative_error) << ',' << g.p << ',' << g.q << ',' << g.precision_bits << '\n';
}

void write_shor(std::ostringstream& out, const ShorResult& s) {
  out << "trial,measured_l,fraction,convergents,candidate_r,running_r\n";
  const std::uint64_t M = std::uint64_t{1} << s.p;
  for (const ShorTrial& t : s.records) {
    out << t.trial << ',' << t.measured << ',' << fraction(t.measured, M) << ',';
    for (std::size_t i = 0; i < t.convergents.size(); ++i) {
      if (i) out << ' ';
      out << fraction(t.convergents[i].first, t.convergents[i].second);
    }
    out << ',' << t.candidate << ',' << t.running << '\n';
  }
  out << '\n';
  out << "modulus,base,n,p,period,trials,trials_used,success,factors\n";
  out << s.modulus << ',' << s.base << ',' << s.n << ',' << s.p << ',' << s.period << ','
      << s.trials << ',' << s.trials_used << ',' << (s.success ? 1 : 0) << ',';
  for (std::size_t i = 0; i < s.factors.size(); ++i) {
    if (i) out << ' ';
    out << s.factors[i];
  }
  out << '\n';
}

Json run_json(const RunRow& r) {
  Json j;
  j["experiment"] = r.experiment;
  j["n"] = r.n;
  j["p"] = r.p;
  j["q"] = r.q;
  j["delta"] = r.delta;
  j["t"] = r.report.t;
  if (!r.error.empty()) {
    j["error"] = r.error;
    return j;
  }
  j["distance"] = r.report.vector_distance;
  j["fidelity"] = r.report.fidelity;
  j["anc_zero_prob"] = r.report.anc_zero_probability;
  j["u_cond"] = r.report.u_cond_count;
  j["naive_cost"] = r.report.naive_cost;
  j["speedup"] = r.report.speedup_ratio;
  j["weighted_u_cond"] = r.report.weighted_u_cond;
  return j;
}

}  // namespace

std::string to_csv(const ExperimentResult& result) {
  std::ostringstream out;
  bool section = false;
  auto gap = [&] {
    if (section) out << '\n';
    section = true;
  };
  if (!result.tails.empty()) {
    gap();
    write_tails(out, result.tails);
  }
  if (!result.runs.empty()) {
    gap();
    write_runs(out, result.runs);
  }
  if (result.grover) {
    gap();
    write_grover(out, *result.grover);
  }
  if (!result.summaries.empty()) {
    gap();
    write_summaries(out, result.summaries);
  }
  if (result.shor) {
    gap();
    write_shor(out, *result.shor);
  }
  return out.str();
}

std::string to_json(const ExperimentResult& result) {
  Json root;
  root["command"] = result.command;
  root["bound_violated"] = result.bound_violated;
  root["horizon_error"] = result.horizon_error;
  if (!result.runs.empty()) {
    Json runs = Json::array();
    for (const RunRow& r : result.runs) runs.push_back(run_json(r));
    root["runs"] = std::move(runs);
  }
  if (!result.tails.empty()) {
    Json tails = Json::array();
    for (const TailRow& r : result.tails) {
      tails.push_back({{"n", r.n},
                       {"p", r.p},
                       {"K", r.report.K},
                       {"epsilon", r.report.epsilon},
                       {"in_window_mass", r.report.in_window_mass},
                       {"tail_mass", r.report.tail_mass},
                       {"bound", r.bound},
                       {"inputs", r.report.inputs_checked},
                       {"pass", r.pass}});
    }
    root["tails"] = std::move(tails);
  }
  if (result.grover) {
    const GroverInfo& g = *result.grover;
    root["grover"] = {{"n", g.n},
                      {"marked", g.marked},
                      {"gap", g.gap},
                      {"reference_gap", g.reference_gap},
                      {"relative_error", g.relative_error},
                      {"p", g.p},
                      {"q", g.q},
                      {"precision_bits", g.precision_bits}};
  }
  if (!result.summaries.empty()) {
    Json rows = Json::array();
    for (const SummaryRow& r : result.summaries) {
      const SpeedupSummary& s = r.summary;
      rows.push_back({{"n", r.n},
                      {"p", r.p},
                      {"q", r.q},
                      {"delta", r.delta},
                      {"runs", s.runs},
                      {"measured_horizon", s.measured_horizon},
                      {"cost", s.cost},
                      {"measured_ratio", s.measured_ratio},
                      {"theoretical_ratio", s.theoretical_ratio},
                      {"agreement_factor", s.agreement_factor},
                      {"theoretical_horizon", s.theoretical_horizon},
                      {"theoretical_time", s.theoretical_time}});
    }
    root["summary"] = std::move(rows);
  }
  if (result.shor) {
    const ShorResult& s = *result.shor;
    Json trials = Json::array();
    for (const ShorTrial& t : s.records) {
      Json conv = Json::array();
      for (const auto& [num, den] : t.convergents) conv.push_back({num, den});
      trials.push_back({{"trial", t.trial},
                        {"measured_l", t.measured},
                        {"convergents", std::move(conv)},
                        {"candidate_r", t.candidate},
                        {"running_r", t.running}});
    }
    root["shor"] = {{"modulus", s.modulus},
                    {"base", s.base},
                    {"n", s.n},
                    {"p", s.p},
                    {"period", s.period},
                    {"trials", s.trials},
                    {"trials_used", s.trials_used},
                    {"success", s.success},
                    {"factors", s.factors},
                    {"records", std::move(trials)}};
  }
  return root.dump(2) + "\n";
}

std::string render(const ExperimentResult& result, OutputFormat format) {
  return format == OutputFormat::json ? to_json(result) : to_csv(result);
}

}  // namespace qpredict::harness
