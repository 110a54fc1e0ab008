// Copyright 2026 The osmosis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "osmosis/report.h"
#include "osmosis/scenario.h"
#include "osmosis/script.h"

namespace osmosis::cli {

namespace {

struct IoError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    throw IoError{"cannot read '" + path + "': is a directory"};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot read '" + path + "'"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError{"error reading '" + path + "'"};
  return buffer.str();
}

struct Options {
  std::string file;
  std::string script;
  std::vector<std::string> operands;
  std::string n, n1, n2;
  std::vector<std::string> exclude;
  std::string format;
  std::string scenario;
  bool json = false;
  bool assert_isolated = false;
  bool trace = false;
};

HopCount hops_flag(const std::string& flag, const std::string& value) {
  auto h = parse_hop_count(value);
  if (!h) {
    throw CLI::ValidationError(flag, "expected a hop count or 'inf', got '" +
                                         value + "'");
  }
  return *h;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  ScenarioDoc doc;
  try {
    doc = load_scenario_lenient(read_file(o.file));
  } catch (const ParseError& e) {
    err << o.file << ": " << e.what() << '\n';
    return kInvalid;
  }
  auto violations = validate(doc.system);
  if (o.json) {
    auto report = violations_json(violations);
    report["file"] = o.file;
    out << report.dump(2) << '\n';
  } else if (violations.empty()) {
    out << "ok\n";
  } else {
    for (const auto& v : violations) err << o.file << ": " << v.message() << '\n';
  }
  return violations.empty() ? kOk : kInvalid;
}

int run_stanzas(const Options& o, const ScenarioDoc& doc, const Snapshot& snap,
                std::ostream& out) {
  bool all_pass = true;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& stanza : doc.queries) {
    auto parsed = parse_stanza(stanza);
    auto report = run_query(snap, doc.deltas, parsed.request);
    std::string got = render_compact(report.result);
    bool pass = !parsed.expect || *parsed.expect == got;
    all_pass = all_pass && pass;
    if (o.json) {
      auto item = to_json(report);
      item["name"] = stanza.name;
      item["expect"] =
          parsed.expect ? nlohmann::json(*parsed.expect) : nlohmann::json();
      item["pass"] = pass;
      results.push_back(std::move(item));
    } else {
      out << stanza.name << ": " << got;
      if (parsed.expect) {
        out << (pass ? " ok" : " MISMATCH (expected " + *parsed.expect + ")");
      }
      out << '\n';
    }
  }
  if (o.json) out << results.dump(2) << '\n';
  return all_pass ? kOk : kNotIsolated;
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
  ScenarioDoc doc = parse_scenario(read_file(o.file));
  Snapshot snap(doc.system);
  if (o.operands.empty()) return run_stanzas(o, doc, snap, out);

  QueryRequest request;
  request.subcommand = o.operands.front();
  if (!is_query_subcommand(request.subcommand)) {
    err << "unknown query subcommand '" << request.subcommand
        << "' (expected nhop, pd-nhop, shared, isolated, level)\n";
    return kUsage;
  }
  request.targets.assign(o.operands.begin() + 1, o.operands.end());
  if (!o.n.empty()) request.n = hops_flag("--n", o.n);
  if (!o.n1.empty()) request.n1 = hops_flag("--n1", o.n1);
  if (!o.n2.empty()) request.n2 = hops_flag("--n2", o.n2);
  request.exclude = o.exclude;

  QueryReport report = run_query(snap, doc.deltas, request);
  if (o.json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << render_text(snap, report);
  }
  if (o.assert_isolated && !reports_isolated(report.result)) {
    return kNotIsolated;
  }
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  ScenarioDoc doc = parse_scenario(read_file(o.file));
  std::string script = read_file(o.script);
  std::ostringstream trace;
  run_script(doc.system, script, [&](const Edge& e) {
    trace << "# edge " << to_string(e.kind) << ' ' << e.from << ' ' << e.to
          << '\n';
  });
  if (o.trace) out << trace.str();
  out << emit_scenario(doc);
  return kOk;
}

int cmd_export(const Options& o, std::ostream& out) {
  ScenarioDoc doc = parse_scenario(read_file(o.file));
  if (o.format == "dot") {
    out << export_dot(doc.system);
  } else {
    out << export_json(doc.system).dump(2) << '\n';
  }
  return kOk;
}

int cmd_scenario(const Options& o, std::ostream& out, std::ostream& err) {
  auto which = parse_canonical(o.scenario);
  if (!which) {
    err << "unknown scenario '" << o.scenario << "' (expected one of:";
    for (Canonical c : all_canonical()) err << ' ' << to_string(c);
    err << ")\n";
    return kUsage;
  }
  out << emit_scenario(canonical_document(*which));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Isolation analysis over protection domains and resources",
               "osmosis"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd =
      app.add_subcommand("validate", "Check a scenario file for violations");
  validate_cmd->add_option("file", o.file, "Scenario file")->required();
  validate_cmd->add_flag("--json", o.json, "Emit a JSON report");

  auto* query_cmd = app.add_subcommand(
      "query",
      "Run a query (nhop, pd-nhop, shared, isolated, level); with no "
      "subcommand, run the file's query stanzas");
  query_cmd->add_option("file", o.file, "Scenario file")->required();
  query_cmd->add_option("operands", o.operands,
                        "Subcommand followed by resource or PD ids");
  query_cmd->add_option("--n", o.n, "Hop budget (integer or inf)");
  query_cmd->add_option("--n1", o.n1, "Hop budget for the first PD");
  query_cmd->add_option("--n2", o.n2, "Hop budget for the second PD");
  query_cmd
      ->add_option("--exclude", o.exclude,
                   "Exclusion set: resource ids, kinds, delta names, or all")
      ->delimiter(',');
  query_cmd->add_flag("--json", o.json, "Emit the report as JSON");
  query_cmd->add_flag("--assert-isolated", o.assert_isolated,
                      "Exit 1 unless the result is isolated");

  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Apply a framework script and print the resulting scenario");
  simulate_cmd->add_option("file", o.file, "Scenario file")->required();
  simulate_cmd->add_option("script", o.script, "Script file")->required();
  simulate_cmd->add_flag("--trace", o.trace,
                         "Print one comment line per relation edge added");

  auto* export_cmd =
      app.add_subcommand("export", "Serialize a scenario as DOT or JSON");
  export_cmd->add_option("file", o.file, "Scenario file")->required();
  export_cmd->add_option("--format", o.format, "dot or json")
      ->required()
      ->check(CLI::IsMember({"dot", "json"}));

  auto* scenario_cmd =
      app.add_subcommand("scenario", "Print a canonical scenario file");
  scenario_cmd->add_option("name", o.scenario,
                           "threads, isolated-stacks, processes, unikernel, "
                           "or vm")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out, err);
    if (*query_cmd) return cmd_query(o, out, err);
    if (*simulate_cmd) return cmd_simulate(o, out);
    if (*export_cmd) return cmd_export(o, out);
    if (*scenario_cmd) return cmd_scenario(o, out, err);
  } catch (const IoError& e) {
    err << "osmosis: " << e.message << '\n';
    return kIo;
  } catch (const CLI::ValidationError& e) {
    err << "osmosis: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "osmosis: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}

}  // namespace osmosis::cli
