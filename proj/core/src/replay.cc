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

#include "sidl/replay.h"

#include <cstdio>

namespace sidl {

std::uint64_t DefinitionHash(std::string_view source) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : source) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

nlohmann::ordered_json ReportToJson(const ValidationReport& report) {
  auto out = nlohmann::ordered_json::array();
  for (const Diagnostic& d : report.diagnostics) {
    nlohmann::ordered_json item;
    item["severity"] =
        d.severity == Diagnostic::Severity::kError ? "error" : "warning";
    item["line"] = d.location.line;
    item["column"] = d.location.column;
    item["message"] = d.message;
    out.push_back(std::move(item));
  }
  return out;
}

nlohmann::ordered_json AccountsToJson(const Accounts& accounts) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [player, value] : accounts) out[Format(player)] = value;
  return out;
}

nlohmann::ordered_json RecordToJson(const TransitionRecord& record) {
  nlohmann::ordered_json out;
  out["chronon"] = record.chronon;
  auto resolved = nlohmann::ordered_json::array();
  for (const ResolvedAction& r : record.resolved) {
    nlohmann::ordered_json item;
    item["switch"] = Format(r.switch_id);
    item["action"] = Format(r.action);
    item["source"] = std::string(SourceName(r.source));
    if (r.source == ResolvedAction::Source::kChance) {
      item["index"] = r.chance_index;
    }
    resolved.push_back(std::move(item));
  }
  out["resolved"] = std::move(resolved);
  auto words = [](const std::vector<Term>& terms) {
    auto arr = nlohmann::ordered_json::array();
    for (const Term& t : terms) arr.push_back(Format(t));
    return arr;
  };
  out["created"] = words(record.created);
  out["deleted"] = words(record.deleted);
  out["payoffs"] = AccountsToJson(record.payoffs);
  out["accounts"] = AccountsToJson(record.accounts_after);
  out["errors"] = record.errors;
  return out;
}

std::string ReplayHeaderLine(const GameDefinition& def,
                             const ChrononConfig& config) {
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(DefinitionHash(def.source())));
  nlohmann::ordered_json header;
  header["game"] = def.name();
  header["seed"] = config.seed;
  if (config.max_chronons) {
    header["max_chronons"] = *config.max_chronons;
  } else {
    header["max_chronons"] = nullptr;
  }
  header["definition_hash"] = hash;
  return header.dump();
}

std::string ReplayRecordLine(const TransitionRecord& record) {
  return RecordToJson(record).dump();
}

std::string ReplayLog(const GameDefinition& def, const ChrononConfig& config,
                      std::span<const TransitionRecord> records) {
  std::string out = ReplayHeaderLine(def, config) + "\n";
  for (const TransitionRecord& r : records) out += ReplayRecordLine(r) + "\n";
  return out;
}

}  // namespace sidl
