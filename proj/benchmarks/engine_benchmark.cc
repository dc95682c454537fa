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

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <benchmark/benchmark.h>

#include "sidl/analyzer.h"
#include "sidl/game_manager.h"
#include "sidl/game_model.h"
#include "sidl/parser.h"

namespace {

std::string Corpus(const std::string& file) {
  std::ifstream in(std::string(SIDL_CORPUS_DIR) + "/" + file);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void BM_ParseChess(benchmark::State& state) {
  const std::string source = Corpus("chess.sidl");
  for (auto _ : state) {
    benchmark::DoNotOptimize(sidl::ParseProgram(source));
  }
}
BENCHMARK(BM_ParseChess);

void BM_LoadChess(benchmark::State& state) {
  const std::string source = Corpus("chess.sidl");
  for (auto _ : state) {
    benchmark::DoNotOptimize(sidl::GameDefinition::Load(source));
  }
}
BENCHMARK(BM_LoadChess)->Unit(benchmark::kMillisecond);

void BM_ChessLegalSwitches(benchmark::State& state) {
  auto def = sidl::GameDefinition::Load(Corpus("chess.sidl"));
  const sidl::GameState initial = def->InitialState();
  for (auto _ : state) {
    benchmark::DoNotOptimize(def->LegalSwitches(initial));
  }
}
BENCHMARK(BM_ChessLegalSwitches)->Unit(benchmark::kMicrosecond);

void BM_McpChronon(benchmark::State& state) {
  auto def = sidl::GameDefinition::Load(Corpus("mcp.sidl"));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    sidl::RunResult run = sidl::RunScripted(def, {}, {0, 1, seed++},
                                            sidl::UniformPolicy());
    benchmark::DoNotOptimize(run.records.size());
  }
}
BENCHMARK(BM_McpChronon)->Unit(benchmark::kMicrosecond);

void BM_NimPlayouts(benchmark::State& state) {
  auto def = sidl::GameDefinition::Load(Corpus("nim.sidl"));
  const auto playouts = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sidl::MonteCarlo(def, playouts, 100, 7));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NimPlayouts)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_NimMinimax(benchmark::State& state) {
  auto def = sidl::GameDefinition::Load(Corpus("nim.sidl"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sidl::MinimaxValue(*def, true, {}));
  }
}
BENCHMARK(BM_NimMinimax)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
