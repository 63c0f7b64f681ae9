#ifndef MB_REFEREE_H_
#define MB_REFEREE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mb/board.h"
#include "mb/game_state.h"
#include "mb/goal.h"
#include "mb/strategy.h"

namespace mb {

// kStrict: an illegal move is a hard failure (tests). kTournament: the
// offender loses on the spot.
enum class RefereeMode { kStrict, kTournament };

enum class GameResult { kMaker, kBreaker, kBudget };

std::string ResultName(GameResult r);  // "maker" / "breaker" / "budget"

struct GameConfig {
  Board board = Board::CompleteLazy();
  Goal goal = Goal::Clique(3);
  GameOptions options;
  // Maker moves; the game stops at the first turn boundary after Maker has
  // used them all.
  std::uint64_t budget = 1000;
  std::uint64_t seed = 0;
  std::string maker = "fallback";
  std::string breaker = "fallback";
  RefereeMode mode = RefereeMode::kStrict;
};

struct Transcript {
  GameConfig config;
  std::vector<Move> moves;
  GameResult result = GameResult::kBudget;
  std::optional<Witness> witness;
  std::optional<Player> forfeit;
  // Strategy footer fields such as phase records.
  nlohmann::ordered_json footer = nlohmann::ordered_json::object();
};

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RefereeHooks {
  // Runs every strategy's CheckInvariants after each move and throws
  // InvariantViolation on the first report.
  bool check_invariants = false;
  std::function<void(const GameState&, const Move&)> after_move;
};

struct GameRecord {
  Transcript transcript;
  GameState state;
};

// Generators handed to the strategies: Maker uses stream 1, Breaker stream 2.
inline Rng MakerRng(std::uint64_t seed) { return Rng(seed, 1); }
inline Rng BreakerRng(std::uint64_t seed) { return Rng(seed, 2); }

// Alternates the strategies under the turn discipline until the goal is met,
// the board is exhausted, or the budget runs out. Deterministic in the seed.
GameRecord RunGame(const GameConfig& config, Strategy& maker, Strategy& breaker,
                   const RefereeHooks& hooks = {});

// Whether Maker's goal holds right after `last` was claimed by Maker.
std::optional<Witness> GoalAfterMakerMove(const GameState& state,
                                          const Goal& goal, const Edge& last);

}  // namespace mb

#endif  // MB_REFEREE_H_
