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

#ifndef SIDL_TESTS_ORACLES_CHESS_ORACLE_H_
#define SIDL_TESTS_ORACLES_CHESS_ORACLE_H_

// A direct board model of the shipped chess definition. It reproduces that
// definition's rules, not orthodox chess:
//  - no check detection except that the king may not step onto a square the
//    opponent controls in the current position;
//  - a pawn controls both forward diagonals whatever stands there;
//  - castling requires a friendly rook on h1 (right) or a1 (left) for both
//    colors, and never looks at the king;
//  - capturing with promotion leaves the captured man in place.

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace sidl::testing::chess {

enum Color { kWhite, kBlack };

inline Color Opposite(Color c) { return c == kWhite ? kBlack : kWhite; }
inline const char* ColorName(Color c) { return c == kWhite ? "white" : "black"; }

struct Man {
  Color color;
  std::string kind;
  int x;  // 1..8 for a..h
  int y;  // 1..8
  auto Key() const { return std::tie(color, kind, x, y); }
  bool operator<(const Man& o) const { return Key() < o.Key(); }
  bool operator==(const Man& o) const { return Key() == o.Key(); }
};

using Square2 = std::pair<int, int>;

struct Position {
  std::set<Man> men;
  std::set<Color> to_move;  // words [white] / [black]
  std::set<Color> fortifiable;

  static Position Initial() {
    Position p;
    const char* back[] = {"rook", "knight", "bishop", "queen",
                          "king", "bishop", "knight", "rook"};
    for (int x = 1; x <= 8; ++x) {
      p.men.insert({kWhite, back[x - 1], x, 1});
      p.men.insert({kWhite, "pawn", x, 2});
      p.men.insert({kBlack, back[x - 1], x, 8});
      p.men.insert({kBlack, "pawn", x, 7});
    }
    p.to_move = {kWhite};
    p.fortifiable = {kWhite, kBlack};
    return p;
  }

  bool Occupied(int x, int y) const {
    return std::any_of(men.begin(), men.end(),
                       [&](const Man& m) { return m.x == x && m.y == y; });
  }
  bool OccupiedBy(Color c, int x, int y) const {
    return std::any_of(men.begin(), men.end(), [&](const Man& m) {
      return m.color == c && m.x == x && m.y == y;
    });
  }
  bool Has(Color c, const std::string& kind, int x, int y) const {
    return men.count({c, kind, x, y}) > 0;
  }
  // Two men on one square, which only a capturing promotion produces.
  bool HasStack() const {
    std::set<Square2> seen;
    for (const Man& m : men) {
      if (!seen.insert({m.x, m.y}).second) return true;
    }
    return false;
  }
  bool HasKing(Color c) const {
    return std::any_of(men.begin(), men.end(), [&](const Man& m) {
      return m.color == c && m.kind == "king";
    });
  }
};

inline bool OnBoard(int v) { return v >= 1 && v <= 8; }
inline int Forward(Color c) { return c == kWhite ? 1 : -1; }
// Back rank of the opponent, where pawns promote.
inline int PromotionRank(Color c) { return c == kWhite ? 8 : 1; }
inline int HomeRank(Color c) { return c == kWhite ? 1 : 8; }
inline int PawnRank(Color c) { return c == kWhite ? 2 : 7; }

using Square = std::pair<int, int>;

inline std::vector<Square> SlideDirections(const std::string& kind) {
  std::vector<Square> rook = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<Square> bishop = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  if (kind == "rook") return rook;
  if (kind == "bishop") return bishop;
  if (kind == "queen") {
    rook.insert(rook.end(), bishop.begin(), bishop.end());
    return rook;
  }
  return {};
}

inline std::vector<Square> Steps(const std::string& kind) {
  if (kind == "knight") {
    return {{-2, -1}, {-2, 1}, {2, -1}, {2, 1},
            {-1, -2}, {1, -2}, {-1, 2}, {1, 2}};
  }
  if (kind == "king") return SlideDirections("queen");
  return {};
}

// Squares controlled by one man.
inline std::vector<Square> ControlledBy(const Position& p, const Man& m) {
  std::vector<Square> out;
  if (m.kind == "pawn") {
    int y1 = m.y + Forward(m.color);
    if (!OnBoard(y1)) return out;
    for (int d : {1, -1}) {
      if (OnBoard(m.x + d)) out.push_back({m.x + d, y1});
    }
    return out;
  }
  for (auto [dx, dy] : SlideDirections(m.kind)) {
    int x = m.x + dx;
    int y = m.y + dy;
    while (OnBoard(x) && OnBoard(y)) {
      // An opposing man ends the ray on its square even when a friendly man
      // shares it.
      if (p.OccupiedBy(Opposite(m.color), x, y)) {
        out.push_back({x, y});
        break;
      }
      if (p.OccupiedBy(m.color, x, y)) break;
      out.push_back({x, y});
      x += dx;
      y += dy;
    }
  }
  for (auto [dx, dy] : Steps(m.kind)) {
    int x = m.x + dx;
    int y = m.y + dy;
    if (OnBoard(x) && OnBoard(y) && !p.OccupiedBy(m.color, x, y)) {
      out.push_back({x, y});
    }
  }
  return out;
}

inline bool Controls(const Position& p, Color c, int x, int y) {
  for (const Man& m : p.men) {
    if (m.color != c) continue;
    for (auto [cx, cy] : ControlledBy(p, m)) {
      if (cx == x && cy == y) return true;
    }
  }
  return false;
}

inline std::string File(int x) { return std::string(1, static_cast<char>('a' + x - 1)); }

struct Move {
  Color color;
  std::string kind;  // "castle" for castling
  int x = 0, y = 0, nx = 0, ny = 0;
  std::string promotion;  // empty unless promoting
  std::string side;       // "right" / "left" for castling

  std::string Text() const {
    std::string c = ColorName(color);
    if (kind == "castle") {
      return "[" + c + ", castle, " + side + ", " + std::to_string(ny) + "]";
    }
    std::string out = "[" + c + ", " + kind + ", " + File(x) + ", " +
                      std::to_string(y) + ", " + File(nx) + ", " +
                      std::to_string(ny);
    if (!promotion.empty()) out += ", " + promotion;
    return out + "]";
  }
};

inline const std::vector<std::string>& PromotionKinds() {
  static const std::vector<std::string> kinds = {"queen", "knight", "rook",
                                                 "bishop"};
  return kinds;
}

inline std::vector<Move> MovesFor(const Position& p, Color c) {
  std::vector<Move> moves;
  const Color opp = Opposite(c);
  for (const Man& m : p.men) {
    if (m.color != c) continue;
    if (m.kind == "pawn") {
      const int f = Forward(c);
      const int y1 = m.y + f;
      if (m.y == PawnRank(c) && OnBoard(m.y + 2 * f) && OnBoard(y1) &&
          !p.Occupied(m.x, y1) && !p.Occupied(m.x, m.y + 2 * f)) {
        moves.push_back({c, "pawn", m.x, m.y, m.x, m.y + 2 * f});
      }
      if (OnBoard(y1) && !p.Occupied(m.x, y1)) {
        if (y1 == PromotionRank(c)) {
          for (const auto& k : PromotionKinds()) {
            moves.push_back({c, "pawn", m.x, m.y, m.x, y1, k});
          }
        } else {
          moves.push_back({c, "pawn", m.x, m.y, m.x, y1});
        }
      }
      for (auto [tx, ty] : ControlledBy(p, m)) {
        if (!p.OccupiedBy(opp, tx, ty)) continue;
        if (ty == PromotionRank(c)) {
          for (const auto& k : PromotionKinds()) {
            moves.push_back({c, "pawn", m.x, m.y, tx, ty, k});
          }
        } else {
          moves.push_back({c, "pawn", m.x, m.y, tx, ty});
        }
      }
      continue;
    }
    for (auto [tx, ty] : ControlledBy(p, m)) {
      if (m.kind == "king" && Controls(p, opp, tx, ty)) continue;
      moves.push_back({c, m.kind, m.x, m.y, tx, ty});
    }
  }
  const int home = HomeRank(c);
  if (p.fortifiable.count(c) && p.Has(c, "rook", 8, 1) &&
      !p.Occupied(6, home) && !p.Occupied(7, home) &&
      !Controls(p, opp, 6, home) && !Controls(p, opp, 7, home)) {
    Move castle{c, "castle"};
    castle.side = "right";
    castle.ny = home;
    moves.push_back(castle);
  }
  if (p.fortifiable.count(c) && p.Has(c, "rook", 1, 1) &&
      !p.Occupied(2, home) && !p.Occupied(3, home) && !p.Occupied(4, home) &&
      !Controls(p, opp, 3, home) && !Controls(p, opp, 4, home)) {
    Move castle{c, "castle"};
    castle.side = "left";
    castle.ny = home;
    moves.push_back(castle);
  }
  return moves;
}

// Distinct action texts for the side to move; empty when no side may move.
inline std::set<std::string> LegalActionTexts(const Position& p) {
  std::set<std::string> out;
  for (Color c : p.to_move) {
    if (!p.HasKing(c)) continue;
    for (const Move& m : MovesFor(p, c)) out.insert(m.Text());
  }
  return out;
}

inline Position Apply(const Position& p, const Move& m) {
  Position next = p;
  const Color opp = Opposite(m.color);
  std::vector<Man> removed;
  std::vector<Man> added;
  std::set<Color> unfortify;
  next.to_move.erase(m.color);
  next.to_move.insert(opp);
  if (m.kind == "castle") {
    const int y = m.ny;
    removed.push_back({m.color, "king", 5, y});
    removed.push_back({m.color, "rook", m.side == "right" ? 8 : 1, y});
    unfortify.insert(m.color);
    if (m.side == "right") {
      added.push_back({m.color, "king", 7, y});
      added.push_back({m.color, "rook", 6, y});
    } else {
      added.push_back({m.color, "king", 4, y});
      added.push_back({m.color, "rook", 3, y});
    }
  } else {
    // The mover standing on its target square before the move is the only
    // way the first castling-rights rule can fire.
    bool rule_fired = false;
    for (const Man& k : p.men) {
      if (k.color != opp || k.kind != "king") continue;
      Man ghost{m.color, m.kind, m.nx, m.ny};
      if (!p.men.count(ghost)) continue;
      for (auto [cx, cy] : ControlledBy(p, ghost)) {
        if (cx == k.x && cy == k.y) rule_fired = true;
      }
    }
    if (rule_fired) {
      unfortify.insert(opp);
    } else if (p.Has(opp, "king", m.nx, m.ny)) {
      unfortify.insert(m.color);
    } else if (m.kind == "king") {
      unfortify.insert(m.color);
    }
    if (m.promotion.empty()) {
      for (const Man& other : p.men) {
        if (other.x == m.nx && other.y == m.ny) removed.push_back(other);
      }
    }
    removed.push_back({m.color, m.kind, m.x, m.y});
    added.push_back({m.color, m.promotion.empty() ? m.kind : m.promotion,
                     m.nx, m.ny});
  }
  for (const Man& r : removed) next.men.erase(r);
  for (Color c : unfortify) next.fortifiable.erase(c);
  for (const Man& a : added) next.men.insert(a);
  return next;
}

// Canonical text of every word of the position, sorted.
inline std::vector<std::string> WordTexts(const Position& p) {
  std::vector<std::string> out;
  for (const Man& m : p.men) {
    out.push_back("[" + std::string(ColorName(m.color)) + ", " + m.kind +
                  ", " + File(m.x) + ", " + std::to_string(m.y) + "]");
  }
  for (Color c : p.to_move) out.push_back("[" + std::string(ColorName(c)) + "]");
  for (Color c : p.fortifiable) {
    out.push_back("[" + std::string(ColorName(c)) + ", fortifiable]");
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sidl::testing::chess

#endif  // SIDL_TESTS_ORACLES_CHESS_ORACLE_H_
