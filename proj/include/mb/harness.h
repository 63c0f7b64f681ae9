// Library side of the mb command line: configured runs, transcript
// summaries, offline verification, and parameter sweeps.
#ifndef MB_HARNESS_H_
#define MB_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mb/referee.h"
#include "mb/transcript.h"

namespace mb {

// Builds both strategies from config.maker / config.breaker, records their
// canonical names in the config, and plays the game.
GameRecord RunConfigured(GameConfig config, const RefereeHooks& hooks = {});

// Everything here is computed from the transcript alone.
struct Summary {
  std::string result;
  std::optional<std::string> forfeit;
  std::size_t moves = 0;
  std::size_t maker_moves = 0;
  std::size_t breaker_moves = 0;
  std::size_t witness_size = 0;  // vertices in the witness, 0 without one
  std::string witness;           // JSON text, empty without one
  std::optional<std::uint64_t> longest_chain;
  std::optional<std::uint64_t> phases;
  std::optional<std::string> pool_size;  // last phase's pool; "w" if infinite
  std::optional<std::uint64_t> blocks;   // catalogue answers inside A x {alpha}
};

Summary Summarize(const Transcript& t);
// Fixed line-oriented rendering; identical transcripts give identical bytes.
std::string SummaryText(const Transcript& t);

struct VerifyReport {
  std::vector<std::string> violations;  // each prefixed with "line N: " if known
  std::size_t moves_checked = 0;
  // False when a strategy could not be rebuilt (human, or a missing file);
  // board-level checks still ran.
  bool maker_resimulated = false;
  bool breaker_resimulated = false;

  bool ok() const { return violations.empty(); }
};

// Replays the claims (disjointness, turn order, board membership), checks the
// result and witness, then re-runs each rebuildable strategy against the
// recorded moves: every move must match, every strategy invariant must hold
// after each Maker move and after the last move, and the footer must come out
// identical.
VerifyReport VerifyTranscript(const Transcript& t);

struct SweepGrid {
  GameConfig base;
  std::vector<std::string> makers;
  std::vector<std::string> breakers;
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint64_t> budgets;
  std::vector<std::uint64_t> phase_lengths;  // fills bipartite specs without p
  std::vector<std::uint64_t> biases;         // k; also tree specs without k
  unsigned jobs = 1;
};

struct SweepRow {
  std::size_t index = 0;
  GameConfig config;
  std::uint64_t p = 0;
  Transcript transcript;
};

inline constexpr const char* kSweepHeader =
    "index,maker,breaker,board,goal,seed,budget,p,k,winner,witness_size,"
    "longest_chain,phases,pool_size";

// Rows in grid order: makers, breakers, seeds, budgets, p, k, the last
// varying fastest. Order does not depend on `jobs`.
std::vector<SweepRow> RunSweep(const SweepGrid& grid);
std::string SweepCsvRow(const SweepRow& row);
std::string SweepCsv(const std::vector<SweepRow>& rows);

// "3", "1,2,5", "0..9" (inclusive), or "" for an empty list.
std::vector<std::uint64_t> ParseNumberList(const std::string& text,
                                           const std::string& field);

}  // namespace mb

#endif  // MB_HARNESS_H_
