#ifndef MB_GAME_STATE_H_
#define MB_GAME_STATE_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mb/board.h"
#include "mb/ordinal.h"

namespace mb {

// Maps the real turn number to its ordinal turn index. Plain schedules are the
// identity; phased schedules of length p send turn n to w*(n/p) + n%p, so each
// phase opens on a limit turn.
class TurnSchedule {
 public:
  static TurnSchedule Plain() { return TurnSchedule(0); }
  static TurnSchedule Phased(std::uint64_t phase_length);
  // "plain" or "phased:<p>".
  static TurnSchedule Parse(std::string_view text);

  Ordinal IndexOf(std::uint64_t turn) const;
  bool IsPlain() const { return phase_length_ == 0; }
  std::uint64_t phase_length() const { return phase_length_; }
  std::string ToString() const;

  friend bool operator==(const TurnSchedule&, const TurnSchedule&) = default;

 private:
  explicit TurnSchedule(std::uint64_t p) : phase_length_(p) {}
  std::uint64_t phase_length_;
};

struct GameOptions {
  int bias = 1;  // Breaker moves per Maker move
  bool breaker_first = false;
  TurnSchedule schedule = TurnSchedule::Plain();

  friend bool operator==(const GameOptions&, const GameOptions&) = default;
};

struct Move {
  Ordinal turn;
  std::uint64_t step = 0;
  Player player = Player::kMaker;
  Edge edge;

  friend bool operator==(const Move&, const Move&) = default;
};

// kStrict enforces the turn order; kRelaxed is for scratch and virtual games
// where a combinator feeds moves in its own order.
enum class Discipline { kStrict, kRelaxed };

class GameState {
 public:
  explicit GameState(Board board, GameOptions options = {},
                     Discipline discipline = Discipline::kStrict);

  const Board& board() const { return board_; }
  const GameOptions& options() const { return options_; }
  int bias() const { return options_.bias; }
  Discipline discipline() const { return discipline_; }

  // Turn discipline, derived from the number of steps taken so far.
  Player ToMove() const;
  std::uint64_t CurrentTurn() const;
  Ordinal CurrentTurnIndex() const;
  bool AtTurnBoundary() const;

  // Throws IllegalMove for off-board, already claimed, or out-of-turn claims.
  void Claim(Player player, const Edge& edge);
  // Same checks as Claim without applying.
  void CheckClaim(Player player, const Edge& edge) const;

  bool IsClaimed(const Edge& edge) const;
  std::optional<Player> Owner(const Edge& edge) const;
  bool IsFresh(const Vertex& v) const;

  const std::set<Edge>& Claims(Player p) const {
    return p == Player::kMaker ? maker_claims_ : breaker_claims_;
  }
  const std::set<Vertex>& Neighbours(Player p, const Vertex& v) const;
  std::size_t Degree(Player p, const Vertex& v) const {
    return Neighbours(p, v).size();
  }
  // Vertices incident with at least one claimed edge, per player or overall.
  const std::set<Vertex>& Explored() const { return explored_; }
  std::vector<Vertex> Touched(Player p) const;
  const std::map<Vertex, std::set<Vertex>>& Adjacency(Player p) const {
    return p == Player::kMaker ? maker_adj_ : breaker_adj_;
  }

  const std::vector<Move>& History() const { return history_; }
  std::size_t ClaimCount(Player p) const { return Claims(p).size(); }

  // Every board edge is claimed (never true for infinite boards).
  bool Exhausted() const;
  // Canonically smallest unclaimed edge, searching labels upwards.
  std::optional<Edge> SmallestUnclaimed() const;
  // Smallest fresh vertex on a side with label >= from.
  std::optional<Vertex> SmallestFresh(Side side, std::uint64_t from = 0) const;

 private:
  void AdvanceRowFloor(const Edge& edge);
  std::optional<Vertex> SmallestFreeNeighbourSlot(const Vertex& a,
                                                  Side other_side,
                                                  std::uint64_t start) const;

  Board board_;
  GameOptions options_;
  Discipline discipline_;
  std::set<Edge> maker_claims_;
  std::set<Edge> breaker_claims_;
  std::map<Vertex, std::set<Vertex>> maker_adj_;
  std::map<Vertex, std::set<Vertex>> breaker_adj_;
  std::set<Vertex> explored_;
  // Per side: every finite label below this one is explored.
  std::array<std::uint64_t, 3> fresh_floor_{};
  // Per first-side label a: every edge from a to a partner label in
  // [start(a), floor) is claimed.
  std::map<std::uint64_t, std::uint64_t> row_floor_;
  std::vector<Move> history_;
};

}  // namespace mb

#endif  // MB_GAME_STATE_H_
