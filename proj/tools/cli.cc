// Copyright 2026 The SIDL Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sidl/analyzer.h"
#include "sidl/errors.h"
#include "sidl/game_manager.h"
#include "sidl/game_model.h"
#include "sidl/parser.h"
#include "sidl/replay.h"

#ifdef SIDL_WITH_SERVER
#include "sidl/server/session_server.h"
#endif

namespace sidl::cli {
namespace {

using json = nlohmann::ordered_json;

// Thrown for I/O problems and malformed invocations (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::int64_t kDefaultRunCap = 1000;

struct Options {
  std::string command;
  std::string path;
  std::string script;
  std::optional<std::uint64_t> seed;
  std::int64_t chronon_ms = 3000;
  std::optional<std::int64_t> max_chronons;
  std::string mode = "mc";
  std::size_t playouts = 1000;
  std::size_t max_nodes = AnalysisLimits{}.max_nodes;
  std::size_t max_depth = AnalysisLimits{}.max_depth;
  bool prune_noop = false;
  bool json_output = false;
  std::string out;
  std::uint16_t port = 8080;
  std::string address = "127.0.0.1";
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void WriteOutput(const Options& options, const std::string& text,
                 std::ostream& out) {
  if (options.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(options.out, std::ios::binary);
  if (!file || !(file << text)) {
    throw UsageError("cannot write " + options.out);
  }
}

std::uint64_t ResolveSeed(const Options& options) {
  if (options.seed) return *options.seed;
  const char* env = std::getenv("SIDL_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    std::uint64_t seed = std::stoull(env, &used, 0);
    if (env[used] != '\0') throw std::invalid_argument(env);
    return seed;
  } catch (const std::exception&) {
    throw UsageError(std::string("SIDL_SEED is not an integer: ") + env);
  }
}

std::vector<ScriptEntry> LoadScript(const std::string& path) {
  std::vector<ScriptEntry> script;
  if (path.empty()) return script;
  json doc;
  try {
    doc = json::parse(ReadFile(path));
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (!doc.is_array()) throw UsageError(path + ": expected a JSON array");
  for (const json& item : doc) {
    try {
      ScriptEntry entry;
      entry.chronon = item.at("chronon").get<std::int64_t>();
      entry.player = ParseTerm(item.at("player").get<std::string>());
      entry.switch_id = ParseTerm(item.at("switch").get<std::string>());
      entry.action = ParseTerm(item.at("action").get<std::string>());
      script.push_back(std::move(entry));
    } catch (const json::exception& e) {
      throw UsageError(path + ": " + e.what());
    } catch (const SyntaxError& e) {
      throw UsageError(path + ": " + e.what());
    }
  }
  return script;
}

DefinitionPtr LoadDefinition(const std::string& path, std::ostream& err) {
  auto [def, report] = GameDefinition::TryLoad(ReadFile(path));
  if (!def) {
    err << path << ":\n" << report.ToText();
    return nullptr;
  }
  return def;
}

ChrononConfig MakeConfig(const Options& options, std::int64_t duration_ms,
                         std::optional<std::int64_t> fallback_cap) {
  ChrononConfig config;
  config.duration_ms = duration_ms;
  config.max_chronons = options.max_chronons ? options.max_chronons
                                             : fallback_cap;
  config.seed = ResolveSeed(options);
  try {
    ValidateConfig(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

int Validate(const Options& options, std::ostream& out) {
  auto [def, report] = GameDefinition::TryLoad(ReadFile(options.path));
  if (options.json_output) {
    json doc;
    doc["path"] = options.path;
    doc["ok"] = report.ok();
    doc["errors"] = report.error_count();
    doc["warnings"] = report.warning_count();
    doc["diagnostics"] = ReportToJson(report);
    out << doc.dump(2) << "\n";
  } else {
    out << options.path << ": " << (report.ok() ? "ok" : "invalid") << " ("
        << report.error_count() << " errors, " << report.warning_count()
        << " warnings)\n";
    out << report.ToText();
  }
  return report.ok() ? kExitOk : kExitFailure;
}

int Run(const Options& options, std::ostream& out, std::ostream& err) {
  DefinitionPtr def = LoadDefinition(options.path, err);
  if (!def) return kExitFailure;
  std::vector<ScriptEntry> script = LoadScript(options.script);
  ChrononConfig config = MakeConfig(options, 0, kDefaultRunCap);
  RunResult result = RunScripted(def, script, config);

  const std::string log = ReplayLog(*def, config, result.records);
  if (!options.out.empty()) {
    std::ofstream file(options.out, std::ios::binary);
    if (!file || !(file << log)) throw UsageError("cannot write " + options.out);
  }
  for (const RejectedSubmission& r : result.rejected) {
    err << "rejected: chronon " << r.entry.chronon << " "
        << Format(r.entry.player) << " " << Format(r.entry.switch_id) << " "
        << Format(r.entry.action) << ": " << RejectReasonText(r.reason)
        << "\n";
  }
  if (options.json_output) {
    json doc;
    doc["chronons"] = result.final_state.chronon;
    doc["terminal"] = result.terminal;
    doc["accounts"] = AccountsToJson(result.final_state.accounts);
    doc["rejected"] = result.rejected.size();
    out << doc.dump(2) << "\n";
  } else {
    out << "chronons: " << result.final_state.chronon
        << (result.terminal ? " (terminal)" : " (chronon cap)") << "\n";
    for (const auto& [player, value] : result.final_state.accounts) {
      out << Format(player) << " " << value << "\n";
    }
  }
  return kExitOk;
}

int Analyze(const Options& options, std::ostream& out, std::ostream& err) {
  DefinitionPtr def = LoadDefinition(options.path, err);
  if (!def) return kExitFailure;
  AnalysisLimits limits{options.max_nodes, options.max_depth};
  json doc;
  doc["mode"] = options.mode;
  json limits_json;
  limits_json["max_nodes"] = limits.max_nodes;
  limits_json["max_depth"] = limits.max_depth;
  int status = kExitOk;
  if (options.mode == "mc") {
    ChrononConfig config = MakeConfig(options, 0, kDefaultRunCap);
    limits_json["playouts"] = options.playouts;
    limits_json["max_chronons"] = *config.max_chronons;
    doc["limits"] = limits_json;
    doc["seed"] = config.seed;
    PlayoutStats stats =
        MonteCarlo(def, options.playouts, *config.max_chronons, config.seed);
    doc["truncated"] = stats.terminated < stats.samples;
    doc["results"] = ToJson(stats);
  } else if (options.mode == "minimax") {
    limits_json["prune_noop"] = options.prune_noop;
    doc["limits"] = limits_json;
    MinimaxResult result = MinimaxValue(*def, options.prune_noop, limits);
    doc["truncated"] = false;
    doc["results"] = ToJson(result);
  } else {
    doc["limits"] = limits_json;
    ConsistencyReport report = CheckInformationConsistency(*def, limits);
    doc["truncated"] = report.truncated;
    doc["results"] = ToJson(report);
    if (!report.passed()) status = kExitFailure;
  }
  WriteOutput(options, doc.dump(2) + "\n", out);
  return status;
}

int Serve(const Options& options, std::ostream& out, std::ostream& err) {
#ifdef SIDL_WITH_SERVER
  const std::string source = ReadFile(options.path);
  server::ServerOptions server_options;
  server_options.address = options.address;
  server_options.port = options.port;
  server_options.default_config =
      MakeConfig(options, options.chronon_ms, std::nullopt);
  server_options.replay_dir = options.out;
  server::SessionServer server(server_options);
  std::uint16_t port = 0;
  try {
    port = server.Listen();
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot listen: ") + e.what());
  }
  server::SessionSpec spec;
  spec.source = source;
  spec.config = server_options.default_config;
  server::CreateResult created = server.CreateSession(spec);
  if (created.id.empty()) {
    err << options.path << ":\n" << created.error.dump(2) << "\n";
    return kExitFailure;
  }
  out << "listening on " << options.address << ":" << port << "\n"
      << "session " << created.id << " roles";
  for (const std::string& role : created.roles) out << " " << role;
  out << std::endl;
  server.Run();
  return kExitOk;
#else
  (void)options;
  (void)out;
  err << "this build has no server support\n";
  return kExitUsage;
#endif
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  Options options;
  CLI::App app{"Simultaneous interactive game definitions: validate, run, "
               "serve and analyze."};
  app.name("sidl");
  app.require_subcommand(1);

  auto add_path = [&](CLI::App* sub) {
    sub->add_option("definition", options.path, "Game definition file")
        ->required();
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", options.seed,
                    "Random seed (default: $SIDL_SEED, else 0)");
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--max-chronons", options.max_chronons,
                    "Stop after this many chronons")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a definition");
  add_path(validate);
  validate->add_flag("--json", options.json_output, "JSON report");

  CLI::App* run = app.add_subcommand("run", "Play a game offline");
  add_path(run);
  run->add_option("--script", options.script,
                  "JSON array of {chronon, player, switch, action}");
  add_seed(run);
  add_cap(run);
  run->add_option("--out", options.out, "Write the replay log here");
  run->add_flag("--json", options.json_output, "JSON summary");

  CLI::App* serve = app.add_subcommand("serve", "Host live sessions");
  add_path(serve);
  serve->add_option("--port", options.port, "TCP port (0 picks one)");
  serve->add_option("--address", options.address, "Listen address");
  serve->add_option("--chronon-ms", options.chronon_ms,
                    "Chronon length in milliseconds (0: close when all "
                    "connected players have acted)")
      ->check(CLI::NonNegativeNumber);
  add_seed(serve);
  add_cap(serve);
  serve->add_option("--out", options.out, "Directory for replay logs");

  CLI::App* analyze = app.add_subcommand("analyze", "Analyze a definition");
  add_path(analyze);
  analyze->add_option("--mode", options.mode, "mc, minimax or consistency")
      ->check(CLI::IsMember({"mc", "minimax", "consistency"}));
  analyze->add_option("--playouts", options.playouts, "Monte Carlo playouts")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--max-nodes", options.max_nodes, "State limit")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--max-depth", options.max_depth, "Depth limit")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--prune-noop", options.prune_noop,
                    "Minimax: drop actions that change nothing");
  add_seed(analyze);
  add_cap(analyze);
  analyze->add_option("--out", options.out, "Write the report here");
  analyze->add_flag("--json", options.json_output,
                    "Accepted for symmetry; reports are always JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*validate) return Validate(options, out);
    if (*run) return Run(options, out, err);
    if (*serve) return Serve(options, out, err);
    return Analyze(options, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace sidl::cli
