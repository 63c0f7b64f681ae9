#include "mb/referee.h"

namespace mb {

std::string ResultName(GameResult r) {
  switch (r) {
    case GameResult::kMaker:
      return "maker";
    case GameResult::kBreaker:
      return "breaker";
    case GameResult::kBudget:
      return "budget";
  }
  return "?";
}

std::optional<Witness> GoalAfterMakerMove(const GameState& state,
                                          const Goal& goal, const Edge& last) {
  if (goal.kind == GoalKind::kClub) {
    return FindWitness(state, Player::kMaker, goal);
  }
  return FindWitnessThrough(state, Player::kMaker, goal, last);
}

GameRecord RunGame(const GameConfig& config, Strategy& maker, Strategy& breaker,
                   const RefereeHooks& hooks) {
  GameState state(config.board, config.options);
  Transcript transcript;
  transcript.config = config;
  Rng maker_rng = MakerRng(config.seed);
  Rng breaker_rng = BreakerRng(config.seed);
  std::uint64_t maker_moves = 0;

  auto forfeit = [&](Player offender) {
    transcript.forfeit = offender;
    transcript.result =
        offender == Player::kMaker ? GameResult::kBreaker : GameResult::kMaker;
  };

  for (;;) {
    if (state.Exhausted()) {
      transcript.result = GameResult::kBreaker;
      break;
    }
    if (maker_moves >= config.budget && state.AtTurnBoundary()) {
      transcript.result = GameResult::kBudget;
      break;
    }
    Player mover = state.ToMove();
    Strategy& strategy = mover == Player::kMaker ? maker : breaker;
    Rng& rng = mover == Player::kMaker ? maker_rng : breaker_rng;
    std::optional<Edge> edge;
    try {
      edge = strategy.NextMove(state, mover, rng);
      state.Claim(mover, *edge);
    } catch (const IllegalMove& e) {
      if (config.mode == RefereeMode::kStrict) {
        throw IllegalMove(strategy.Name() + " (" + PlayerName(mover) +
                          "): " + e.what());
      }
      forfeit(mover);
      break;
    } catch (const Exhausted& e) {
      if (config.mode == RefereeMode::kStrict) throw;
      forfeit(mover);
      break;
    }
    const Move& move = state.History().back();
    transcript.moves.push_back(move);
    if (hooks.check_invariants) {
      for (Strategy* s : {&maker, &breaker}) {
        std::vector<std::string> problems = s->CheckInvariants(state);
        if (!problems.empty()) {
          throw InvariantViolation(s->Name() + " at step " +
                                   std::to_string(move.step) + ": " +
                                   problems.front());
        }
      }
    }
    if (hooks.after_move) hooks.after_move(state, move);
    if (mover == Player::kMaker) {
      ++maker_moves;
      if (auto w = GoalAfterMakerMove(state, config.goal, *edge)) {
        transcript.witness = std::move(w);
        transcript.result = GameResult::kMaker;
        break;
      }
    }
  }
  maker.Footer(transcript.footer);
  breaker.Footer(transcript.footer);
  return GameRecord{std::move(transcript), std::move(state)};
}

}  // namespace mb
