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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sidl/analyzer.h"
#include "sidl/errors.h"
#include "sidl/game_model.h"
#include "test_util.h"

namespace sidl {
namespace {

using testing::LoadCorpus;
using testing::ReadCorpus;
using testing::SortedTexts;
using testing::T;
using testing::Texts;

bool HasMessage(const ValidationReport& report, const std::string& needle) {
  return std::any_of(report.diagnostics.begin(), report.diagnostics.end(),
                     [&](const Diagnostic& d) {
                       return d.message.find(needle) != std::string::npos;
                     });
}

TEST(LoadTest, NimNameAndPlayers) {
  auto nim = LoadCorpus("nim.sidl");
  EXPECT_EQ(nim->name(), "nim");
  EXPECT_EQ(Texts(nim->players()),
            (std::vector<std::string>{"[alice]", "[bob]"}));
  EXPECT_TRUE(nim->report().ok());
  EXPECT_EQ(nim->report().warning_count(), 0u);
}

TEST(LoadTest, PriceNegotiationExpandsBidders) {
  auto price = LoadCorpus("price_negotiation.sidl");
  EXPECT_EQ(price->name(), "priceNegotiation");
  EXPECT_EQ(Texts(price->players()),
            (std::vector<std::string>{"[alice]", "[bob]", "[clara]",
                                      "[david]"}));
}

TEST(LoadTest, AllCorpusFilesAreClean) {
  for (const char* file :
       {"nim.sidl", "mcp.sidl", "rps.sidl", "price_negotiation.sidl",
        "chess.sidl", "mcp3.sidl", "mcp3_leaky.sidl"}) {
    auto [def, report] = GameDefinition::TryLoad(ReadCorpus(file));
    EXPECT_TRUE(def != nullptr) << file << "\n" << report.ToText();
    EXPECT_EQ(report.error_count(), 0u) << file;
  }
}

TEST(ValidationTest, BodyOnlyKeywordInHead) {
  auto [def, report] = GameDefinition::TryLoad("name(x).\nfact([x]).\n");
  EXPECT_EQ(def, nullptr);
  EXPECT_FALSE(report.ok());
  ASSERT_GE(report.error_count(), 1u);
  EXPECT_TRUE(HasMessage(report, "only allowed in rule bodies"));
  EXPECT_EQ(report.diagnostics.front().location.line, 2);
  EXPECT_THROW(GameDefinition::Load("name(x).\nfact([x]).\n"),
               InvalidDefinition);
}

TEST(ValidationTest, HeadOnlyKeywordInBody) {
  auto [def, report] = GameDefinition::TryLoad(
      "name(x). init([p], 0.0). p :- legal([q]).");
  EXPECT_EQ(def, nullptr);
  EXPECT_TRUE(HasMessage(report, "legal"));
}

TEST(ValidationTest, NameClauseRules) {
  EXPECT_TRUE(HasMessage(GameDefinition::TryLoad("init([a], 0.0).").second,
                         "missing name"));
  EXPECT_TRUE(
      HasMessage(GameDefinition::TryLoad("name(a). game(b).").second,
                 "name"));
  EXPECT_NE(GameDefinition::TryLoad("game(g). init([a], 0.0).").first,
            nullptr);
}

TEST(ValidationTest, NonNumericAccountAndSyntaxErrors) {
  auto [def, report] = GameDefinition::TryLoad("name(x). init([a], rich).");
  EXPECT_EQ(def, nullptr);
  EXPECT_FALSE(report.ok());
  auto [bad, syntax] = GameDefinition::TryLoad("name(x). init([a], 0.0");
  EXPECT_EQ(bad, nullptr);
  EXPECT_EQ(syntax.error_count(), 1u);
}

TEST(ValidationTest, HiddenBodiesMayOnlyUsePlayer) {
  auto [def, report] = GameDefinition::TryLoad(
      "name(x). init([a], 0.0). hidden([w], [a]) :- fact([w]).");
  EXPECT_EQ(def, nullptr);
  EXPECT_TRUE(HasMessage(report, "hidden"));
}

TEST(InitialStateTest, Nim) {
  GameState s = LoadCorpus("nim.sidl")->InitialState();
  EXPECT_EQ(Texts(s.facts), (std::vector<std::string>{"[alice, 10]"}));
  EXPECT_EQ(s.chronon, 0);
  ASSERT_EQ(s.accounts.size(), 2u);
  EXPECT_EQ(s.Account(T("[alice]")), 0.0);
  EXPECT_EQ(s.Account(T("[bob]")), 0.0);
}

TEST(InitialStateTest, Chess) {
  GameState s = LoadCorpus("chess.sidl")->InitialState();
  EXPECT_EQ(s.facts.size(), 35u);
  EXPECT_TRUE(s.HasFact(T("[white]")));
  EXPECT_TRUE(s.HasFact(T("[black, fortifiable]")));
  EXPECT_TRUE(s.HasFact(T("[white, king, e, 1]")));
  EXPECT_TRUE(s.HasFact(T("[black, pawn, h, 7]")));
}

TEST(InitialStateTest, Rps) {
  GameState s = LoadCorpus("rps.sidl")->InitialState();
  EXPECT_EQ(SortedTexts(s.facts),
            (std::vector<std::string>{"[chosen, role1, rock]",
                                      "[chosen, role2, rock]", "[gameon]",
                                      "[rounds, 10]", "[timer, 3]"}));
}

TEST(InitialStateTest, ConflictingAccountsAreAnError) {
  auto [def, report] =
      GameDefinition::TryLoad("name(x). init([a], 0.0). init([a], 1.0).");
  EXPECT_EQ(def, nullptr);
  EXPECT_FALSE(report.ok());
}

TEST(LegalSwitchesTest, NimInitial) {
  auto nim = LoadCorpus("nim.sidl");
  auto legal = nim->LegalSwitches(nim->InitialState());
  ASSERT_EQ(legal.size(), 1u);
  EXPECT_EQ(Format(legal[0].id), "[main]");
  ASSERT_TRUE(legal[0].controller.is_player());
  EXPECT_EQ(Format(legal[0].controller.player), "[alice]");
  EXPECT_EQ(Texts(legal[0].actions),
            (std::vector<std::string>{"[1]", "[2]", "[3]", "[wait]"}));
  EXPECT_FALSE(legal[0].unlimited);
}

TEST(LegalSwitchesTest, ChessInitial) {
  auto chess = LoadCorpus("chess.sidl");
  auto legal = chess->LegalSwitches(chess->InitialState());
  ASSERT_EQ(legal.size(), 1u);
  EXPECT_EQ(Format(legal[0].id), "[white]");
  EXPECT_EQ(legal[0].actions.size(), 20u);
}

TEST(LegalSwitchesTest, McpInitial) {
  auto mcp = LoadCorpus("mcp.sidl");
  auto legal = mcp->LegalSwitches(mcp->InitialState());
  ASSERT_EQ(legal.size(), 1u);
  EXPECT_EQ(Format(legal[0].id), "[dirt]");
  EXPECT_FALSE(legal[0].controller.is_player());
  EXPECT_EQ(Format(legal[0].controller.source), "equal(31)");
  EXPECT_EQ(legal[0].actions.size(), 31u);
  ASSERT_EQ(legal[0].controller.probabilities.size(), 31u);
  for (double p : legal[0].controller.probabilities) {
    EXPECT_DOUBLE_EQ(p, 1.0 / 31.0);
  }
}

TEST(LegalSwitchesTest, PriceNegotiationIsUnlimited) {
  auto price = LoadCorpus("price_negotiation.sidl");
  auto legal = price->LegalSwitches(price->InitialState());
  ASSERT_EQ(legal.size(), 4u);
  for (const auto& sw : legal) {
    EXPECT_TRUE(sw.unlimited);
    EXPECT_TRUE(sw.actions.empty());
    EXPECT_EQ(sw.templates.size(), 2u);
  }
  EXPECT_FALSE(price->IsTerminal(price->InitialState()));
}

TEST(LegalSwitchesTest, DistributionInvariants) {
  const std::string base = "name(x). init([p], 0.0). init([go]). legal([c]) :- fact([go]).\n"
                           "switch([c], [h]). switch([c], [t]).\n";
  EXPECT_NE(GameDefinition::TryLoad(base + "owned([c], [0.25, 0.75]).").first,
            nullptr);
  auto bad_sum = GameDefinition::TryLoad(base + "owned([c], [0.5, 0.6]).");
  EXPECT_EQ(bad_sum.first, nullptr);
  auto bad_len = GameDefinition::TryLoad(base + "owned([c], [1.0]).");
  EXPECT_EQ(bad_len.first, nullptr);
  auto bad_equal = GameDefinition::TryLoad(base + "owned([c], equal(3)).");
  EXPECT_EQ(bad_equal.first, nullptr);
  auto no_owner = GameDefinition::TryLoad(base);
  EXPECT_EQ(no_owner.first, nullptr);
  auto stranger = GameDefinition::TryLoad(base + "owned([c], [q]).");
  EXPECT_EQ(stranger.first, nullptr);
}

TEST(TerminalTest, Examples) {
  auto nim = LoadCorpus("nim.sidl");
  GameState done;
  done.facts = {T("[alice, 0]")};
  EXPECT_TRUE(nim->IsTerminal(done));
  auto rps = LoadCorpus("rps.sidl");
  GameState over;
  over.facts = {T("[chosen, role1, rock]"), T("[chosen, role2, rock]"),
                T("[rounds, 1]"), T("[timer, 0]")};
  EXPECT_TRUE(rps->IsTerminal(over));
}

TEST(CheckActionTest, PriceNegotiationGuard) {
  auto price = LoadCorpus("price_negotiation.sidl");
  GameState s = price->InitialState();
  EXPECT_TRUE(price->CheckAction(s, T("[alice]"), T("[alice, 12.5]")).accepted());
  EXPECT_EQ(price->CheckAction(s, T("[alice]"), T("[alice, 9.0]")).reason,
            RejectReason::kGuardUnprovable);
  EXPECT_EQ(price->CheckAction(s, T("[alice]"), T("[alice, 12]")).reason,
            RejectReason::kTemplateMismatch);
  EXPECT_EQ(price->CheckAction(s, T("[alice]"), T("[alice, 12.5, x]")).reason,
            RejectReason::kTemplateMismatch);
  EXPECT_TRUE(price->CheckAction(s, T("[alice]"), T("[wait]")).accepted());
}

TEST(CheckActionTest, NimReasons) {
  auto nim = LoadCorpus("nim.sidl");
  GameState s = nim->InitialState();
  EXPECT_EQ(nim->CheckAction(s, T("[main]"), T("[4]")).reason,
            RejectReason::kActionNotInSet);
  EXPECT_TRUE(nim->CheckAction(s, T("[main]"), T("[3]")).accepted());
  EXPECT_EQ(nim->CheckAction(s, T("[side]"), T("[1]")).reason,
            RejectReason::kUnknownSwitch);
  GameState done;
  done.facts = {T("[bob, 0]")};
  EXPECT_EQ(nim->CheckAction(done, T("[main]"), T("[1]")).reason,
            RejectReason::kSwitchNotLegal);
  EXPECT_EQ(RejectReasonText(RejectReason::kActionNotInSet), "action not in set");
}

TEST(TemplateTest, TypedSlots) {
  EXPECT_TRUE(MatchesTemplate(T("[A, (price, double)]"), T("[alice, 3.5]")));
  EXPECT_FALSE(MatchesTemplate(T("[A, (price, double)]"), T("[alice, 3]")));
  EXPECT_TRUE(MatchesTemplate(T("[(n, int)]"), T("[3]")));
  EXPECT_FALSE(MatchesTemplate(T("[(n, int)]"), T("[3.0]")));
  EXPECT_TRUE(MatchesTemplate(T("[wait]"), T("[wait]")));
  EXPECT_FALSE(MatchesTemplate(T("[wait]"), T("[go]")));
}

TEST(VisibilityTest, Mcp) {
  auto mcp = LoadCorpus("mcp.sidl");
  std::vector<Term> words = {T("[dirty, alice]"), T("[dirty, bob]")};
  EXPECT_EQ(Texts(mcp->VisibleWords(T("[alice]"), words)),
            (std::vector<std::string>{"[dirty, bob]"}));
  EXPECT_TRUE(mcp->PublicWords(words).empty());
  EXPECT_TRUE(mcp->IsHidden(T("[dirty, bob]"), T("[bob]")));
  EXPECT_FALSE(mcp->IsHidden(T("[dirty, bob]"), T("[eric]")));
}

TEST(VisibilityTest, Rps) {
  auto rps = LoadCorpus("rps.sidl");
  std::vector<Term> words = {T("[chosen, role2, paper]")};
  EXPECT_TRUE(rps->VisibleWords(T("[role1]"), words).empty());
  EXPECT_EQ(rps->VisibleWords(T("[role2]"), words).size(), 1u);
}

TEST(VisibilityTest, NoHiddenClausesIsIdentity) {
  auto nim = LoadCorpus("nim.sidl");
  std::vector<Term> words = {T("[alice, 3]"), T("[x]"), T("[bob, 2]")};
  EXPECT_EQ(Texts(nim->VisibleWords(T("[bob]"), words)), Texts(words));
  EXPECT_EQ(Texts(nim->PublicWords(words)), Texts(words));
}

TEST(VisibilityPropertyTest, FilterDistributesOverUnion) {
  auto mcp = LoadCorpus("mcp.sidl");
  std::vector<Term> pool;
  for (const char* c : {"alice", "bob", "charly", "david", "eric"}) {
    pool.push_back(T(std::string("[dirty, ") + c + "]"));
    pool.push_back(T(std::string("[") + c + ", stepped]"));
  }
  pool.push_back(T("[start]"));
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Term> s1, s2, both;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      bool in1 = (mask >> (i % 6)) & 1;
      bool in2 = ((mask * 7 + i) % 3) == 0;
      if (in1) s1.push_back(pool[i]);
      if (in2) s2.push_back(pool[i]);
      if (in1 || in2) both.push_back(pool[i]);
    }
    for (const Term& p : mcp->players()) {
      std::set<std::string> lhs;
      for (const Term& w : mcp->VisibleWords(p, both)) lhs.insert(Format(w));
      std::set<std::string> rhs;
      for (const Term& w : mcp->VisibleWords(p, s1)) rhs.insert(Format(w));
      for (const Term& w : mcp->VisibleWords(p, s2)) rhs.insert(Format(w));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

// Every reachable state of the small games: each legal switch has one
// controller, and enumerated action sets are ground and duplicate-free.
TEST(ModelPropertyTest, ReachableSwitchesAreWellFormed) {
  std::string short_rps = testing::ReplaceOnce(
      testing::ReplaceOnce(ReadCorpus("rps.sidl"), "givenrounds(10).",
                           "givenrounds(2)."),
      "init([rounds, 10]):- givenrounds(10).",
      "init([rounds, 2]):- givenrounds(2).");
  std::vector<DefinitionPtr> defs = {LoadCorpus("nim.sidl"),
                                     LoadCorpus("mcp3.sidl"),
                                     GameDefinition::Load(short_rps)};
  for (const auto& def : defs) {
    StateGraph graph = EnumerateStates(*def, {20000, 100}, false);
    EXPECT_FALSE(graph.truncated) << def->name();
    for (const auto& node : graph.nodes) {
      auto legal = def->LegalSwitches(node.state);
      std::set<std::string> ids;
      for (const auto& sw : legal) {
        EXPECT_TRUE(ids.insert(Format(sw.id)).second);
        std::set<std::string> seen;
        for (const Term& a : sw.actions) {
          EXPECT_TRUE(a.is_ground());
          EXPECT_TRUE(seen.insert(Format(a)).second) << Format(a);
        }
        if (sw.controller.is_player()) {
          EXPECT_TRUE(def->PlayerIndex(sw.controller.player).has_value());
        } else {
          EXPECT_FALSE(sw.actions.empty());
        }
      }
      EXPECT_TRUE(def->DuplicateActionSets(legal).empty()) << def->name();
    }
  }
}

TEST(ModelPropertyTest, UnlimitedAcceptanceImpliesGuard) {
  auto price = LoadCorpus("price_negotiation.sidl");
  GameState s = price->InitialState();
  s.facts.push_back(T("[bid, [bob], 11.0]"));
  for (double v : {5.0, 10.0, 10.5, 11.0, 11.25, 40.0}) {
    Term action = Term::List({T("alice"), Term::Real(v)});
    bool accepted = price->CheckAction(s, T("[alice]"), action).accepted();
    Solver solver(price->kb(), price->Virtuals(s.facts));
    bool guard = solver.Provable(
        Term::Compound("switch", {T("[alice]"), action}));
    EXPECT_EQ(accepted, guard) << v;
    EXPECT_EQ(accepted, v > 11.0) << v;
  }
}

}  // namespace
}  // namespace sidl
