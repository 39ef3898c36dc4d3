/*
 * Copyright 2026 The ddesim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddesim/checker.hpp"
#include "ddesim/harness.hpp"

namespace {

using namespace ddesim;

// Accepts ns/us/ms/s suffixes; a bare integer is nanoseconds.
TimeValue parse_time(const std::string& text) {
  std::size_t pos = 0;
  const long long value = std::stoll(text, &pos);
  const std::string unit = text.substr(pos);
  if (value < 0) throw CLI::ValidationError("duration", "negative time: " + text);
  if (unit.empty() || unit == "ns") return value;
  if (unit == "us") return value * 1'000;
  if (unit == "ms") return value * 1'000'000;
  if (unit == "s") return value * 1'000'000'000;
  throw CLI::ValidationError("duration", "unknown unit in " + text);
}

LatencyModel parse_latency(const std::string& text) {
  const auto model = LatencyModel::parse(text);
  if (!model) throw CLI::ValidationError("latency", "expected zero or fixed:K, got " + text);
  return *model;
}

struct RunResult {
  std::string scenario;
  TimeValue period_ns{0};
  bool dnet{false};
  std::size_t net{0}, ltc{0}, tag{0}, dnet_count{0}, msg{0};
};

RunResult summarize(const Trace& trace, const std::string& scenario, TimeValue period_ns,
                    bool dnet) {
  RunResult r;
  r.scenario = scenario;
  r.period_ns = period_ns;
  r.dnet = dnet;
  r.net = count_signals(trace, SignalKind::kNet).total;
  r.ltc = count_signals(trace, SignalKind::kLtc).total;
  r.tag = count_signals(trace, SignalKind::kTag).total;
  r.dnet_count = count_signals(trace, SignalKind::kDnet).total;
  // Logical messages: count federate-originated sends, not coordinator
  // forwards.
  for (const auto& [src, n] : count_signals(trace, SignalKind::kMsg).by_src) {
    if (src != "rti") r.msg += n;
  }
  return r;
}

const char* kCsvHeader =
    "scenario,period_ns,dnet,net_count,ltc_count,tag_count,dnet_count,msg_count,reduction_ratio";

std::string csv_row(const RunResult& r, const std::string& ratio) {
  std::ostringstream out;
  out << r.scenario << ',' << r.period_ns << ',' << (r.dnet ? "on" : "off") << ',' << r.net << ','
      << r.ltc << ',' << r.tag << ',' << r.dnet_count << ',' << r.msg << ',' << ratio;
  return out.str();
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& line : lines) out << line << '\n';
}

void print_summary(const RunResult& r) {
  std::cout << "scenario " << r.scenario << "  period " << r.period_ns << " ns  dnet "
            << (r.dnet ? "on" : "off") << "\n"
            << "  NET  " << r.net << "\n  LTC  " << r.ltc << "\n  TAG  " << r.tag << "\n  DNET "
            << r.dnet_count << "\n  MSG  " << r.msg << "\n";
}

Trace run_and_maybe_write(const Scenario& scenario, const RunConfig& config,
                          const std::string& trace_path) {
  Trace trace = run(scenario, config);
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw std::runtime_error("cannot write " + trace_path);
    write_jsonl(trace, out);
  }
  return trace;
}

int cmd_run(const std::string& scenario_name, const ScenarioParams& params, bool dnet,
            const LatencyModel& latency, const std::string& trace_path,
            const std::string& summary_path) {
  const Scenario scenario = scenario_by_name(scenario_name, params);
  RunConfig config;
  config.dnet = dnet;
  config.latency = latency;
  const Trace trace = run_and_maybe_write(scenario, config, trace_path);
  const RunResult result = summarize(trace, scenario_name, params.period_ns, dnet);
  print_summary(result);
  if (!summary_path.empty()) {
    write_lines(summary_path, {kCsvHeader, csv_row(result, "")});
  }
  if (trace.aborted) {
    std::cerr << "run aborted on a protocol fault; see trace diagnostics\n";
    return 3;
  }
  return 0;
}

int cmd_sweep(const std::string& scenario_name, const std::vector<std::string>& periods,
              ScenarioParams params, const LatencyModel& latency,
              const std::string& summary_path) {
  std::vector<std::string> csv{kCsvHeader};
  std::ostringstream baseline_row, dnet_row, ratio_row;
  baseline_row << "baseline ";
  dnet_row << "dnet     ";
  ratio_row << "ratio    ";
  std::cout << "scenario " << scenario_name << ", NET totals by timer period\n";
  std::cout << "period   ";
  for (const std::string& period_text : periods) {
    params.period_ns = parse_time(period_text);
    const Scenario scenario = scenario_by_name(scenario_name, params);
    RunConfig config;
    config.latency = latency;

    config.dnet = false;
    const RunResult off = summarize(run(scenario, config), scenario_name, params.period_ns, false);
    config.dnet = true;
    const RunResult on = summarize(run(scenario, config), scenario_name, params.period_ns, true);

    std::ostringstream ratio;
    ratio.setf(std::ios::fixed);
    ratio.precision(2);
    ratio << (on.net == 0 ? 0.0 : static_cast<double>(off.net) / static_cast<double>(on.net));
    csv.push_back(csv_row(off, "1.00"));
    csv.push_back(csv_row(on, ratio.str()));

    std::cout << '\t' << period_text;
    baseline_row << '\t' << off.net;
    dnet_row << '\t' << on.net;
    ratio_row << '\t' << ratio.str() << 'x';
  }
  std::cout << '\n'
            << baseline_row.str() << '\n'
            << dnet_row.str() << '\n'
            << ratio_row.str() << '\n';
  if (!summary_path.empty()) write_lines(summary_path, csv);
  return 0;
}

Trace load_trace(const std::string& path, std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_jsonl(in, &errors);
}

int cmd_compare(const std::string& path_a, const std::string& path_b) {
  std::vector<std::string> errors_a, errors_b;
  const Trace a = load_trace(path_a, errors_a);
  const Trace b = load_trace(path_b, errors_b);
  for (const auto& e : errors_a) std::cerr << path_a << ": " << e << '\n';
  for (const auto& e : errors_b) std::cerr << path_b << ": " << e << '\n';
  if (!errors_a.empty() || !errors_b.empty()) return 2;
  const Verdict verdict = check_equivalence(a, b);
  if (verdict.ok) {
    std::cout << "equivalent\n";
    return 0;
  }
  for (const Violation& v : verdict.violations) {
    std::cout << v.rule << " seq=" << v.seq << " " << v.description << '\n';
  }
  return 1;
}

int cmd_check(const std::string& trace_path, const std::string& topology_path) {
  std::vector<std::string> errors;
  const Trace trace = load_trace(trace_path, errors);
  Verdict verdict = check_safety(trace, errors);
  if (!topology_path.empty()) {
    std::ifstream in(topology_path);
    if (!in) throw std::runtime_error("cannot read " + topology_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const Topology topology = Topology::from_json_string(buffer.str());
    const Verdict dnet_verdict = check_dnet_consistency(trace, topology);
    for (const Violation& v : dnet_verdict.violations) {
      verdict.flag(v.rule, v.seq, v.description);
    }
  }
  if (verdict.ok) {
    std::cout << "ok\n";
    return 0;
  }
  for (const Violation& v : verdict.violations) {
    std::cout << v.rule << " seq=" << v.seq << " " << v.description << '\n';
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordination runtime bench: run scenarios, compare and check traces"};
  app.require_subcommand(1);

  std::string scenario_name = "sparse";
  std::string period = "20ms";
  std::string detection = "5s";
  std::string duration = "500s";
  std::string dnet_mode = "off";
  std::string latency_text = "zero";
  std::string trace_path, summary_path, config_path;

  auto* run_cmd = app.add_subcommand("run", "Run one scenario and report signal counts");
  run_cmd->add_option("--scenario", scenario_name, "sparse | chain | fanin | zdc");
  run_cmd->add_option("--period", period, "timer period (ns/us/ms/s suffix)");
  run_cmd->add_option("--detection", detection, "detection period");
  run_cmd->add_option("--duration", duration, "logical run length");
  run_cmd->add_option("--dnet", dnet_mode, "on | off")
      ->check(CLI::IsMember({"on", "off"}));
  run_cmd->add_option("--latency", latency_text, "zero | fixed:K");
  run_cmd->add_option("--trace", trace_path, "write the JSONL trace here");
  run_cmd->add_option("--summary", summary_path, "write the CSV summary here");
  run_cmd->add_option("--config", config_path,
                      "JSON file {scenario, period_ns, detection_period_ns, duration_ns, dnet, "
                      "latency}; overrides the flags above");

  std::vector<std::string> periods{"5ms", "10ms", "20ms", "50ms", "100ms"};
  auto* sweep_cmd = app.add_subcommand("sweep", "Run both modes over a list of timer periods");
  sweep_cmd->add_option("--scenario", scenario_name, "sparse | chain | fanin | zdc");
  sweep_cmd->add_option("--periods", periods, "comma-separated timer periods")->delimiter(',');
  sweep_cmd->add_option("--detection", detection, "detection period");
  sweep_cmd->add_option("--duration", duration, "logical run length");
  sweep_cmd->add_option("--latency", latency_text, "zero | fixed:K");
  sweep_cmd->add_option("--summary", summary_path, "write the CSV summary here");

  std::string compare_a, compare_b;
  auto* compare_cmd = app.add_subcommand("compare", "Check two traces for equivalent behavior");
  compare_cmd->add_option("trace_a", compare_a)->required();
  compare_cmd->add_option("trace_b", compare_b)->required();

  std::string check_trace, check_topology;
  auto* check_cmd = app.add_subcommand("check", "Verify safety rules over a trace");
  check_cmd->add_option("--trace", check_trace, "JSONL trace to verify")->required();
  check_cmd->add_option("--topology", check_topology,
                        "topology JSON; also verifies suppression bounds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      ScenarioParams params;
      bool dnet = dnet_mode == "on";
      LatencyModel latency = parse_latency(latency_text);
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot read " + config_path);
        const nlohmann::json cfg = nlohmann::json::parse(in);
        scenario_name = cfg.value("scenario", scenario_name);
        params.period_ns = cfg.value("period_ns", params.period_ns);
        params.detection_period_ns = cfg.value("detection_period_ns", params.detection_period_ns);
        params.duration_ns = cfg.value("duration_ns", params.duration_ns);
        dnet = cfg.value("dnet", dnet);
        latency = parse_latency(cfg.value("latency", latency_text));
      } else {
        params.period_ns = parse_time(period);
        params.detection_period_ns = parse_time(detection);
        params.duration_ns = parse_time(duration);
      }
      return cmd_run(scenario_name, params, dnet, latency, trace_path, summary_path);
    }
    if (sweep_cmd->parsed()) {
      ScenarioParams params;
      params.detection_period_ns = parse_time(detection);
      params.duration_ns = parse_time(duration);
      return cmd_sweep(scenario_name, periods, params, parse_latency(latency_text), summary_path);
    }
    if (compare_cmd->parsed()) return cmd_compare(compare_a, compare_b);
    if (check_cmd->parsed()) return cmd_check(check_trace, check_topology);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
