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

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/chess_oracle.h"
#include "sidl/game_manager.h"
#include "test_util.h"

namespace sidl {
namespace {

namespace chess = testing::chess;
using testing::LoadCorpus;
using testing::T;

std::set<std::string> EngineActions(const GameDefinition& def,
                                    const GameState& s) {
  std::set<std::string> out;
  for (const auto& sw : def.LegalSwitches(s)) {
    for (const Term& a : sw.actions) out.insert(Format(a));
  }
  return out;
}

GameState ToState(const GameDefinition& def, const chess::Position& p) {
  GameState s = def.InitialState();
  s.facts.clear();
  for (const std::string& w : chess::WordTexts(p)) s.facts.push_back(T(w));
  return s;
}

TEST(ChessOracleTest, InitialPosition) {
  chess::Position p = chess::Position::Initial();
  EXPECT_EQ(chess::LegalActionTexts(p).size(), 20u);
  auto def = LoadCorpus("chess.sidl");
  GameState s = def->InitialState();
  EXPECT_EQ(s.SortedFactText(), chess::WordTexts(p));
  EXPECT_EQ(EngineActions(*def, s), chess::LegalActionTexts(p));
}

TEST(ChessOracleTest, AfterKingsPawn) {
  auto def = LoadCorpus("chess.sidl");
  GameManager manager(def, {});
  manager.Begin();
  ASSERT_TRUE(manager.Submit(T("[white]"), T("[white]"),
                             T("[white, pawn, e, 2, e, 4]"))
                  .accepted());
  manager.CloseChronon();
  chess::Position p = chess::Position::Initial();
  chess::Move e4{chess::kWhite, "pawn", 5, 2, 5, 4};
  p = chess::Apply(p, e4);
  EXPECT_EQ(manager.state().SortedFactText(), chess::WordTexts(p));
  auto actions = EngineActions(*def, manager.state());
  EXPECT_EQ(actions.size(), 20u);
  EXPECT_EQ(actions, chess::LegalActionTexts(p));
  EXPECT_TRUE(actions.count("[black, knight, g, 8, f, 6]"));
}

TEST(ChessOracleTest, KnightMoveEffects) {
  auto def = LoadCorpus("chess.sidl");
  GameState s = def->InitialState();
  Transition t = ApplyResolved(
      *def, s,
      {ResolvedAction{T("[white]"), T("[white, knight, b, 1, c, 3]"),
                      ResolvedAction::Source::kSubmitted, 0}});
  EXPECT_TRUE(t.record.errors.empty());
  EXPECT_EQ(testing::SortedTexts(t.record.created),
            (std::vector<std::string>{"[black]", "[white, knight, c, 3]"}));
  EXPECT_EQ(testing::SortedTexts(t.record.deleted),
            (std::vector<std::string>{"[white, knight, b, 1]", "[white]"}));
}

chess::Position Sparse(std::vector<chess::Man> men, chess::Color to_move) {
  chess::Position p;
  p.men.insert(men.begin(), men.end());
  p.to_move = {to_move};
  p.fortifiable = {chess::kWhite, chess::kBlack};
  return p;
}

TEST(ChessCastlingTest, WhiteCastlesBothWays) {
  auto def = LoadCorpus("chess.sidl");
  chess::Position p = Sparse({{chess::kWhite, "king", 5, 1},
                              {chess::kWhite, "rook", 1, 1},
                              {chess::kWhite, "rook", 8, 1},
                              {chess::kBlack, "king", 5, 8}},
                             chess::kWhite);
  auto actions = EngineActions(*def, ToState(*def, p));
  EXPECT_TRUE(actions.count("[white, castle, right, 1]"));
  EXPECT_TRUE(actions.count("[white, castle, left, 1]"));
  EXPECT_EQ(actions, chess::LegalActionTexts(p));
}

TEST(ChessCastlingTest, BlackNeedsRooksOnTheFirstRank) {
  auto def = LoadCorpus("chess.sidl");
  chess::Position orthodox = Sparse({{chess::kBlack, "king", 5, 8},
                                     {chess::kBlack, "rook", 1, 8},
                                     {chess::kBlack, "rook", 8, 8},
                                     {chess::kWhite, "king", 5, 1}},
                                    chess::kBlack);
  auto actions = EngineActions(*def, ToState(*def, orthodox));
  EXPECT_FALSE(actions.count("[black, castle, right, 8]"));
  EXPECT_FALSE(actions.count("[black, castle, left, 8]"));
  EXPECT_EQ(actions, chess::LegalActionTexts(orthodox));

  chess::Position quirky = Sparse({{chess::kBlack, "king", 5, 8},
                                   {chess::kBlack, "rook", 8, 1},
                                   {chess::kWhite, "king", 3, 3}},
                                  chess::kBlack);
  auto odd = EngineActions(*def, ToState(*def, quirky));
  EXPECT_TRUE(odd.count("[black, castle, right, 8]"));
  EXPECT_EQ(odd, chess::LegalActionTexts(quirky));
}

TEST(ChessCastlingTest, ControlledSquaresBlockCastling) {
  auto def = LoadCorpus("chess.sidl");
  chess::Position p = Sparse({{chess::kWhite, "king", 5, 1},
                              {chess::kWhite, "rook", 8, 1},
                              {chess::kWhite, "rook", 1, 1},
                              {chess::kBlack, "rook", 7, 6},
                              {chess::kBlack, "king", 1, 8}},
                             chess::kWhite);
  auto actions = EngineActions(*def, ToState(*def, p));
  EXPECT_FALSE(actions.count("[white, castle, right, 1]"));
  EXPECT_TRUE(actions.count("[white, castle, left, 1]"));
  EXPECT_EQ(actions, chess::LegalActionTexts(p));
}

TEST(ChessCastlingTest, KingMoveClearsRights) {
  auto def = LoadCorpus("chess.sidl");
  chess::Position p = Sparse({{chess::kWhite, "king", 5, 1},
                              {chess::kWhite, "rook", 8, 1},
                              {chess::kBlack, "king", 5, 8}},
                             chess::kWhite);
  GameState s = ToState(*def, p);
  Transition t = ApplyResolved(
      *def, s,
      {ResolvedAction{T("[white]"), T("[white, king, e, 1, d, 2]"),
                      ResolvedAction::Source::kSubmitted, 0}});
  chess::Position q = chess::Apply(p, {chess::kWhite, "king", 5, 1, 4, 2});
  EXPECT_FALSE(t.state.HasFact(T("[white, fortifiable]")));
  EXPECT_EQ(t.state.SortedFactText(), chess::WordTexts(q));
}

TEST(ChessCastlingTest, CastlingMovesBothMen) {
  auto def = LoadCorpus("chess.sidl");
  chess::Position p = Sparse({{chess::kWhite, "king", 5, 1},
                              {chess::kWhite, "rook", 8, 1},
                              {chess::kBlack, "king", 5, 8}},
                             chess::kWhite);
  Transition t = ApplyResolved(
      *def, ToState(*def, p),
      {ResolvedAction{T("[white]"), T("[white, castle, right, 1]"),
                      ResolvedAction::Source::kSubmitted, 0}});
  chess::Move castle{chess::kWhite, "castle"};
  castle.side = "right";
  castle.ny = 1;
  EXPECT_EQ(t.state.SortedFactText(), chess::WordTexts(chess::Apply(p, castle)));
  EXPECT_TRUE(t.state.HasFact(T("[white, king, g, 1]")));
  EXPECT_TRUE(t.state.HasFact(T("[white, rook, f, 1]")));
}

TEST(ChessPromotionTest, FourChoicesPerPromotingMove) {
  auto def = LoadCorpus("chess.sidl");
  chess::Position p = Sparse({{chess::kWhite, "king", 1, 1},
                              {chess::kWhite, "pawn", 2, 7},
                              {chess::kBlack, "rook", 3, 8},
                              {chess::kBlack, "king", 8, 8}},
                             chess::kWhite);
  auto actions = EngineActions(*def, ToState(*def, p));
  EXPECT_TRUE(actions.count("[white, pawn, b, 7, b, 8, queen]"));
  EXPECT_TRUE(actions.count("[white, pawn, b, 7, c, 8, knight]"));
  EXPECT_EQ(actions, chess::LegalActionTexts(p));
}

std::string Difference(const std::set<std::string>& engine,
                       const std::set<std::string>& oracle) {
  std::string out;
  for (const auto& a : engine) {
    if (!oracle.count(a)) out += "engine only: " + a + "\n";
  }
  for (const auto& a : oracle) {
    if (!engine.count(a)) out += "oracle only: " + a + "\n";
  }
  return out;
}

// Random games: at every ply the engine and the oracle agree on the action
// set and on the resulting position.
TEST(ChessPropertyTest, RandomGamesMatchTheOracle) {
  auto def = LoadCorpus("chess.sidl");
  std::mt19937_64 rng(1234);
  int plies = 0;
  for (int game = 0; game < 6; ++game) {
    chess::Position p = chess::Position::Initial();
    GameState s = def->InitialState();
    for (int ply = 0; ply < 60; ++ply) {
      auto engine = EngineActions(*def, s);
      auto oracle = chess::LegalActionTexts(p);
      ASSERT_EQ(engine, oracle) << "game " << game << " ply " << ply << "\n"
                                << Difference(engine, oracle);
      if (engine.empty()) break;
      std::vector<chess::Move> moves;
      for (chess::Color c : p.to_move) {
        auto m = chess::MovesFor(p, c);
        moves.insert(moves.end(), m.begin(), m.end());
      }
      const chess::Move& pick = moves[rng() % moves.size()];
      auto legal = def->LegalSwitches(s);
      Transition t = ApplyResolved(
          *def, s,
          {ResolvedAction{legal[0].id, T(pick.Text()),
                          ResolvedAction::Source::kSubmitted, 0}});
      ASSERT_TRUE(t.record.errors.empty()) << pick.Text();
      p = chess::Apply(p, pick);
      s = t.state;
      ASSERT_EQ(s.SortedFactText(), chess::WordTexts(p)) << pick.Text();
      ++plies;
    }
  }
  EXPECT_GT(plies, 100);
}

}  // namespace
}  // namespace sidl
