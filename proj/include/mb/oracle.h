// Brute-force ground truth: exhaustive subgraph search, exact minimax for tiny
// boards, and the filter-and-intersect monochromatic biclique finder. Nothing
// here calls the goal search in goal.h.
#ifndef MB_ORACLE_H_
#define MB_ORACLE_H_

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "mb/board.h"
#include "mb/colouring.h"
#include "mb/game_state.h"
#include "mb/goal.h"
#include "mb/strategy.h"

namespace mb {

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kExhaustiveVertexLimit = 24;
inline constexpr std::size_t kMinimaxEdgeLimit = 10;

// Lexicographically least s-clique of the graph formed by `claims`.
// Throws TooLarge beyond kExhaustiveVertexLimit vertices.
std::optional<std::vector<Vertex>> OracleFindClique(
    const std::set<Edge>& claims, std::uint64_t s);

// Lexicographically least (A, B) with |A| = a, |B| = b and every A-B pair in
// `claims`, compared on A first. With `bipartite`, A is drawn from the Left
// side only.
std::optional<Witness> OracleFindBiclique(const std::set<Edge>& claims,
                                          std::uint64_t a, std::uint64_t b,
                                          bool bipartite);

// Clique or biclique witness on the owner's claims via the functions above.
std::optional<Witness> OracleWitness(const GameState& state, Player owner,
                                     const Goal& goal);

enum class MinimaxValue { kMakerWins, kBreakerWins };

const char* MinimaxName(MinimaxValue v);  // "MakerWins" / "BreakerWins"

// Exact solver for bias-1, Maker-first games on finite boards with at most
// kMinimaxEdgeLimit edges and clique or biclique goals. Positions are keyed
// on the claim sets alone.
class MinimaxSolver {
 public:
  MinimaxSolver(const Board& board, const Goal& goal);

  MinimaxValue Solve() { return ValueOf(0, 0); }
  // Value of the position in `state`; the mover is whoever has fewer claims.
  MinimaxValue Value(const GameState& state);
  // Optimal move for the player to move: the smallest edge keeping a win,
  // else the smallest unclaimed edge. Throws Exhausted on a full board.
  Edge BestMove(const GameState& state);

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t positions_solved() const { return solved_; }

 private:
  MinimaxValue ValueOf(std::uint32_t maker, std::uint32_t breaker);
  bool MakerHasGoal(std::uint32_t maker) const;
  std::uint32_t Key(std::uint32_t maker, std::uint32_t breaker) const;
  std::pair<std::uint32_t, std::uint32_t> Masks(const GameState& state) const;

  std::vector<Edge> edges_;
  std::vector<std::uint32_t> winning_sets_;
  std::vector<std::uint8_t> memo_;  // 0 unknown, 1 Maker, 2 Breaker
  std::vector<std::uint32_t> pow3_;
  std::size_t solved_ = 0;
};

// True when Maker can never claim enough edges for one copy of the goal.
bool CountingImpossible(const Board& board, const Goal& goal);

// Plays the solver's optimal move for either role.
class MinimaxStrategy : public Strategy {
 public:
  explicit MinimaxStrategy(Goal goal) : goal_(std::move(goal)) {}
  std::string Name() const override { return "minimax"; }
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;

 private:
  Goal goal_;
  std::optional<MinimaxSolver> solver_;
};

// Majority colour of a right vertex: red iff it has at least ceil(u/2) red
// edges.
Colour MajorityColour(const Colouring& c, std::uint64_t right);

// Picks the colour that is the majority for at least n/2 right vertices (ties
// to red), then greedily chooses b of those vertices maximizing the running
// intersection of their majority neighbourhoods. Returns a verified
// monochromatic K_{a,b} or nothing. Sound, not complete.
std::optional<MonoBiclique> FilterIntersectFinder(const Colouring& c,
                                                  std::uint64_t a,
                                                  std::uint64_t b);

// Exhaustive scan: the lexicographically least (colour, left set) with b
// common right neighbours in that colour; red is tried first.
std::optional<MonoBiclique> ExhaustiveMonochromatic(const Colouring& c,
                                                    std::uint64_t a,
                                                    std::uint64_t b);

bool VerifyMonochromatic(const Colouring& c, const MonoBiclique& m);

}  // namespace mb

#endif  // MB_ORACLE_H_
