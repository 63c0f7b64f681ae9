#ifndef MB_STRATEGY_H_
#define MB_STRATEGY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mb/board.h"
#include "mb/game_state.h"
#include "mb/goal.h"

namespace mb {

// Seeded generator shared by every randomized component. The algorithm id is
// written into transcript headers so replays can refuse a mismatch.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm =
      "mt19937_64/splitmix64-seed/rejection-v1";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, n); n must be positive.
  std::uint64_t Uniform(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Named integer metrics a strategy reports for summaries and sweeps.
using Diagnostics = std::map<std::string, std::int64_t>;

// Move-selection contract consulted by the referee. Implementations are
// stateful, confined to one session, and deterministic given the history and
// the generator they are handed. Stateful strategies sync on the opponent's
// moves by reading state.History().
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string Name() const = 0;
  virtual Edge NextMove(const GameState& state, Player role, Rng& rng) = 0;

  virtual void Describe(Diagnostics& out) const { (void)out; }
  // Fields merged into the transcript footer, such as phase records.
  virtual void Footer(nlohmann::ordered_json& out) const { (void)out; }
  // Violations of the strategy's internal invariants against `state`.
  virtual std::vector<std::string> CheckInvariants(
      const GameState& state) const {
    (void)state;
    return {};
  }
};

// The canonically smallest unclaimed edge. Throws Exhausted if none.
Edge FallbackMove(const GameState& state);

class FallbackStrategy : public Strategy {
 public:
  std::string Name() const override { return "fallback"; }
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;
};

// Uniform over unclaimed edges inside the exploration window: all vertices on
// finite boards; on lazy boards labels up to two past the largest explored
// label of each side.
class RandomAdversary : public Strategy {
 public:
  // With a seed the strategy uses its own generator instead of the referee's.
  explicit RandomAdversary(std::optional<std::uint64_t> seed = std::nullopt);
  std::string Name() const override;
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;

 private:
  std::optional<std::uint64_t> seed_;
  std::optional<Rng> own_;
};

// Claims the edge that most reduces the opponent's near-complete witnesses:
// an edge completing an opponent witness first, else the highest
// common-neighbour/degree threat score. Ties go to the canonical order.
class GreedyBlocker : public Strategy {
 public:
  explicit GreedyBlocker(Goal goal) : goal_(std::move(goal)) {}
  std::string Name() const override { return "greedy-blocker"; }
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;

 private:
  Goal goal_;
};

// Greedily extends its own best partial witness with the same scoring as
// GreedyBlocker applied to its own graph.
class GoalSeeker : public Strategy {
 public:
  explicit GoalSeeker(Goal goal) : goal_(std::move(goal)) {}
  std::string Name() const override { return "goal-seeker"; }
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;

 private:
  Goal goal_;
};

// Plays away from the action: the canonically largest unclaimed edge on
// finite boards, the smallest unclaimed edge with every label >= offset on
// lazy ones.
class NullAdversary : public Strategy {
 public:
  static constexpr std::uint64_t kDefaultOffset = 1000000;
  explicit NullAdversary(std::uint64_t offset = kDefaultOffset)
      : offset_(offset) {}
  std::string Name() const override;
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;

 private:
  std::uint64_t offset_;
  // Lazy boards: where the last scan stopped. Claims are never undone, so
  // everything before it stays claimed within one game.
  std::uint64_t next_a_ = 0;
  std::uint64_t next_b_ = 0;
  std::size_t last_step_ = 0;
};

// Replays a fixed list of edges, then falls back. Used by tests and scripts.
class ScriptedStrategy : public Strategy {
 public:
  explicit ScriptedStrategy(std::vector<Edge> script)
      : script_(std::move(script)) {}
  std::string Name() const override { return "scripted"; }
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;

 private:
  std::vector<Edge> script_;
  std::size_t next_ = 0;
};

// Candidate vertices for the greedy strategies: every vertex of a side with
// at most kFullScanSide labels, otherwise the `focus` player's 32
// highest-degree vertices plus the smallest fresh vertex.
std::vector<Vertex> CandidateVertices(const GameState& state, Side side,
                                      Player focus);
inline constexpr std::uint64_t kFullScanSide = 40;

}  // namespace mb

#endif  // MB_STRATEGY_H_
