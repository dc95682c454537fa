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

#include "sidl/analyzer.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace sidl {
namespace {

struct Joint {
  std::vector<ResolvedAction> actions;
  double probability = 1.0;
};

// Cross product of the options of every legal switch, in legal order.
std::vector<Joint> JointActions(std::span<const SwitchResolution> legal) {
  std::vector<Joint> joints(1);
  for (const SwitchResolution& sw : legal) {
    if (sw.unlimited) {
      throw DefinitionError("unlimited switch " + Format(sw.id) +
                            " cannot be enumerated");
    }
    if (sw.actions.empty()) continue;
    std::vector<Joint> next;
    next.reserve(joints.size() * sw.actions.size());
    for (const Joint& j : joints) {
      for (std::size_t k = 0; k < sw.actions.size(); ++k) {
        Joint extended = j;
        if (sw.controller.is_player()) {
          extended.actions.push_back(ResolvedAction{
              sw.id, sw.actions[k], ResolvedAction::Source::kSubmitted, 0});
        } else {
          double p = sw.controller.probabilities[k];
          if (p <= 0.0) continue;
          extended.actions.push_back(ResolvedAction{
              sw.id, sw.actions[k], ResolvedAction::Source::kChance, k});
          extended.probability *= p;
        }
        next.push_back(std::move(extended));
      }
    }
    joints = std::move(next);
  }
  return joints;
}

std::optional<Term> SingleMover(std::span<const SwitchResolution> legal) {
  std::optional<Term> mover;
  std::size_t player_switches = 0;
  for (const SwitchResolution& sw : legal) {
    if (!sw.controller.is_player()) continue;
    ++player_switches;
    mover = sw.controller.player;
  }
  if (player_switches != 1) return std::nullopt;
  return mover;
}

std::vector<std::string> ActionKey(const SwitchResolution& sw) {
  std::vector<std::string> out;
  for (const Term& t : sw.unlimited ? sw.templates : sw.actions) {
    out.push_back(Format(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool IsNoop(const TransitionRecord& record) {
  if (!record.created.empty() || !record.deleted.empty()) return false;
  return std::all_of(record.payoffs.begin(), record.payoffs.end(),
                     [](const auto& p) { return p.second == 0.0; });
}

constexpr std::size_t kNoCut = std::numeric_limits<std::size_t>::max();

class MinimaxSearch {
 public:
  MinimaxSearch(const GameDefinition& def, bool prune_noop,
                const AnalysisLimits& limits)
      : def_(def), prune_noop_(prune_noop), limits_(limits) {}

  MinimaxResult Run() {
    MinimaxResult result;
    GameState root = def_.InitialState();
    std::optional<Term> first;
    result.values = Visit(root, 0, &first).first;
    result.first_action = first;
    result.nodes = visited_;
    return result;
  }

 private:
  // Returns the value and the shallowest path depth a repetition cut-off
  // below this node referred to.
  std::pair<Accounts, std::size_t> Visit(const GameState& state,
                                         std::size_t depth,
                                         std::optional<Term>* best_action) {
    const std::string key = StateKey(state, true);
    if (auto it = on_path_.find(key); it != on_path_.end()) {
      return {state.accounts, it->second};
    }
    if (best_action == nullptr) {
      if (auto it = memo_.find(key); it != memo_.end()) {
        return {it->second, kNoCut};
      }
    }
    if (depth > limits_.max_depth) {
      throw ResourceError("minimax depth limit of " +
                          std::to_string(limits_.max_depth) + " exceeded");
    }
    if (++visited_ > limits_.max_nodes) {
      throw ResourceError("minimax node limit of " +
                          std::to_string(limits_.max_nodes) + " exceeded");
    }
    auto legal = def_.LegalSwitches(state);
    if (legal.empty()) {
      memo_[key] = state.accounts;
      return {state.accounts, kNoCut};
    }
    if (legal.size() != 1) {
      throw DefinitionError("minimax needs one legal switch per state, found " +
                            std::to_string(legal.size()));
    }
    const SwitchResolution& sw = legal[0];
    if (!sw.controller.is_player()) {
      throw DefinitionError("minimax cannot handle chance switch " +
                            Format(sw.id));
    }
    if (sw.unlimited) {
      throw DefinitionError("unlimited switch " + Format(sw.id) +
                            " cannot be enumerated");
    }
    const std::size_t mover = *def_.PlayerIndex(sw.controller.player);

    std::vector<std::pair<Term, Transition>> children;
    for (const Term& action : sw.actions) {
      children.emplace_back(
          action,
          ApplyResolved(def_, state,
                        {ResolvedAction{sw.id, action,
                                        ResolvedAction::Source::kSubmitted,
                                        0}}));
    }
    if (prune_noop_) {
      std::vector<std::pair<Term, Transition>> kept;
      for (auto& child : children) {
        if (!IsNoop(child.second.record)) kept.push_back(std::move(child));
      }
      if (!kept.empty()) children = std::move(kept);
    }

    on_path_[key] = depth;
    std::optional<Accounts> best;
    std::size_t min_cut = kNoCut;
    for (auto& [action, child] : children) {
      auto [value, cut] = Visit(child.state, depth + 1, nullptr);
      min_cut = std::min(min_cut, cut);
      if (!best || value[mover].second > (*best)[mover].second) {
        best = std::move(value);
        if (best_action != nullptr) *best_action = action;
      }
    }
    on_path_.erase(key);
    if (min_cut >= depth) {
      memo_[key] = *best;
      min_cut = kNoCut;
    }
    return {*best, min_cut};
  }

  const GameDefinition& def_;
  bool prune_noop_;
  AnalysisLimits limits_;
  std::unordered_map<std::string, Accounts> memo_;
  std::unordered_map<std::string, std::size_t> on_path_;
  std::size_t visited_ = 0;
};

nlohmann::ordered_json AccountsJson(const Accounts& accounts) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [player, value] : accounts) out[Format(player)] = value;
  return out;
}

}  // namespace

std::string StateKey(const GameState& state, bool include_accounts) {
  std::string key;
  for (const std::string& f : state.SortedFactText()) {
    key += f;
    key += '\n';
  }
  if (include_accounts) {
    key += '|';
    for (const auto& [player, value] : state.accounts) {
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), "%.17g;", value);
      key += buffer;
    }
  }
  return key;
}

StateGraph EnumerateStates(const GameDefinition& def,
                           const AnalysisLimits& limits,
                           bool include_accounts) {
  StateGraph graph;
  graph.include_accounts = include_accounts;
  std::unordered_map<std::string, std::size_t> index;
  GameState root = def.InitialState();
  index.emplace(StateKey(root, include_accounts), 0);
  graph.nodes.push_back(StateGraph::Node{std::move(root), 0, false, false});

  for (std::size_t current = 0; current < graph.nodes.size(); ++current) {
    const GameState state = graph.nodes[current].state;
    const std::size_t depth = graph.nodes[current].depth;
    auto legal = def.LegalSwitches(state);
    if (legal.empty()) {
      graph.nodes[current].terminal = true;
      continue;
    }
    if (depth >= limits.max_depth) {
      graph.truncated = true;
      continue;
    }
    graph.nodes[current].expanded = true;
    std::optional<Term> mover = SingleMover(legal);
    for (Joint& joint : JointActions(legal)) {
      Transition t = ApplyResolved(def, state, joint.actions);
      std::string key = StateKey(t.state, include_accounts);
      auto it = index.find(key);
      std::size_t to;
      if (it != index.end()) {
        to = it->second;
      } else {
        if (graph.nodes.size() >= limits.max_nodes) {
          graph.truncated = true;
          continue;
        }
        to = graph.nodes.size();
        index.emplace(std::move(key), to);
        t.state.chronon = 0;
        graph.nodes.push_back(
            StateGraph::Node{std::move(t.state), depth + 1, false, false});
      }
      graph.edges.push_back(StateGraph::Edge{current, to,
                                             std::move(joint.actions),
                                             joint.probability, mover});
    }
  }
  return graph;
}

std::uint64_t PlayoutSeed(std::uint64_t seed, std::size_t index) {
  return seed + static_cast<std::uint64_t>(index) * 0x9E3779B97F4A7C15ull;
}

PlayoutStats MonteCarlo(DefinitionPtr def, std::size_t playouts,
                        std::int64_t max_chronons, std::uint64_t seed) {
  if (playouts == 0) throw std::invalid_argument("playouts must be positive");
  PlayoutStats stats;
  const std::size_t n = def->players().size();
  std::vector<double> sum(n, 0.0);
  std::vector<double> sum_sq(n, 0.0);
  Policy policy = UniformPolicy();
  for (std::size_t i = 0; i < playouts; ++i) {
    ChrononConfig config;
    config.seed = PlayoutSeed(seed, i);
    config.max_chronons = max_chronons;
    RunResult run = RunScripted(def, {}, config, policy);
    for (std::size_t p = 0; p < n; ++p) {
      double v = run.final_state.accounts[p].second;
      sum[p] += v;
      sum_sq[p] += v * v;
    }
    ++stats.samples;
    if (run.terminal) ++stats.terminated;
  }
  const double count = static_cast<double>(stats.samples);
  for (std::size_t p = 0; p < n; ++p) {
    PlayoutStats::PlayerStats ps;
    ps.player = def->players()[p];
    ps.mean = sum[p] / count;
    if (stats.samples > 1) {
      double variance =
          std::max(0.0, (sum_sq[p] - count * ps.mean * ps.mean) / (count - 1));
      ps.standard_error = std::sqrt(variance / count);
    }
    stats.players.push_back(std::move(ps));
  }
  return stats;
}

MinimaxResult MinimaxValue(const GameDefinition& def, bool prune_noop,
                           const AnalysisLimits& limits) {
  return MinimaxSearch(def, prune_noop, limits).Run();
}

std::string_view ViolationKindName(ConsistencyViolation::Kind kind) {
  switch (kind) {
    case ConsistencyViolation::Kind::kOwner:
      return "owner";
    case ConsistencyViolation::Kind::kLegality:
      return "legality";
    case ConsistencyViolation::Kind::kActions:
      return "actions";
  }
  return "unknown";
}

ConsistencyReport CheckInformationConsistency(const GameDefinition& def,
                                              const AnalysisLimits& limits,
                                              std::size_t max_witnesses) {
  ConsistencyReport report;
  StateGraph graph = EnumerateStates(def, limits, false);
  report.states = graph.nodes.size();
  report.truncated = graph.truncated;

  std::vector<std::vector<SwitchResolution>> legal;
  std::vector<std::vector<std::string>> facts;
  legal.reserve(graph.nodes.size());
  for (const auto& node : graph.nodes) {
    legal.push_back(def.LegalSwitches(node.state));
    facts.push_back(node.state.SortedFactText());
  }
  auto find = [&](std::size_t state, const std::string& id)
      -> const SwitchResolution* {
    for (const auto& sw : legal[state]) {
      if (Format(sw.id) == id) return &sw;
    }
    return nullptr;
  };

  for (const Term& player : def.players()) {
    std::map<std::vector<std::string>, std::vector<std::size_t>> classes;
    for (std::size_t s = 0; s < graph.nodes.size(); ++s) {
      std::vector<std::string> visible;
      for (const Term& w : def.VisibleWords(player, graph.nodes[s].state.facts)) {
        visible.push_back(Format(w));
      }
      std::sort(visible.begin(), visible.end());
      classes[std::move(visible)].push_back(s);
    }
    for (const auto& [visible, members] : classes) {
      if (members.size() < 2) continue;
      std::vector<std::string> owned;
      std::map<std::string, Term> ids;
      for (std::size_t s : members) {
        for (const auto& sw : legal[s]) {
          if (sw.controller.is_player() && sw.controller.player == player) {
            std::string id = Format(sw.id);
            if (!ids.count(id)) {
              ids.emplace(id, sw.id);
              owned.push_back(id);
            }
          }
        }
      }
      for (std::size_t a : members) {
        for (std::size_t b : members) {
          if (a == b) continue;
          for (const std::string& id : owned) {
            const SwitchResolution* la = find(a, id);
            const SwitchResolution* lb = find(b, id);
            std::optional<ConsistencyViolation::Kind> kind;
            if ((la == nullptr) != (lb == nullptr)) {
              kind = ConsistencyViolation::Kind::kLegality;
            } else if (la != nullptr) {
              bool oa = la->controller.is_player() &&
                        la->controller.player == player;
              bool ob = lb->controller.is_player() &&
                        lb->controller.player == player;
              if (oa != ob) {
                kind = ConsistencyViolation::Kind::kOwner;
              } else if (ActionKey(*la) != ActionKey(*lb)) {
                kind = ConsistencyViolation::Kind::kActions;
              }
            }
            if (!kind) continue;
            if (report.violations.size() >= max_witnesses) return report;
            report.violations.push_back(ConsistencyViolation{
                player, ids.at(id), *kind, a, b, facts[a], facts[b]});
          }
        }
      }
    }
  }
  return report;
}

nlohmann::ordered_json ToJson(const PlayoutStats& stats) {
  nlohmann::ordered_json out;
  out["samples"] = stats.samples;
  out["terminated"] = stats.terminated;
  out["termination_rate"] = stats.termination_rate();
  nlohmann::ordered_json players = nlohmann::ordered_json::object();
  for (const auto& p : stats.players) {
    players[Format(p.player)] = {{"mean", p.mean},
                                 {"standard_error", p.standard_error}};
  }
  out["players"] = std::move(players);
  return out;
}

nlohmann::ordered_json ToJson(const MinimaxResult& result) {
  nlohmann::ordered_json out;
  out["values"] = AccountsJson(result.values);
  out["nodes"] = result.nodes;
  if (result.first_action) {
    out["first_action"] = Format(*result.first_action);
  } else {
    out["first_action"] = nullptr;
  }
  return out;
}

nlohmann::ordered_json ToJson(const ConsistencyReport& report) {
  nlohmann::ordered_json out;
  out["passed"] = report.passed();
  out["states"] = report.states;
  out["truncated"] = report.truncated;
  auto violations = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json item;
    item["player"] = Format(v.player);
    item["switch"] = Format(v.switch_id);
    item["kind"] = std::string(ViolationKindName(v.kind));
    item["state_a"] = v.facts_a;
    item["state_b"] = v.facts_b;
    violations.push_back(std::move(item));
  }
  out["violations"] = std::move(violations);
  return out;
}

}  // namespace sidl
