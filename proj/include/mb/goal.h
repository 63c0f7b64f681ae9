#ifndef MB_GOAL_H_
#define MB_GOAL_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mb/board.h"
#include "mb/game_state.h"
#include "mb/ordinal.h"

namespace mb {

enum class GoalKind { kClique, kBiclique, kClub };

struct Goal {
  GoalKind kind = GoalKind::kClique;
  std::uint64_t size = 0;   // clique
  std::uint64_t left = 0;   // biclique
  std::uint64_t right = 0;  // biclique
  Ordinal horizon;          // club

  static Goal Clique(std::uint64_t s);
  static Goal Biclique(std::uint64_t a, std::uint64_t b);
  static Goal Club(Ordinal horizon);
  // "clique:5", "biclique:2x3", "club:w".
  static Goal Parse(std::string_view text);
  std::string ToString() const;

  // Edges a witness needs; the counting bound for minimax.
  std::uint64_t EdgesNeeded() const;

  friend bool operator==(const Goal&, const Goal&) = default;
};

// A witness vertex set (clique, club) or pair of classes (biclique), each
// sorted ascending.
struct Witness {
  std::vector<Vertex> first;
  std::vector<Vertex> second;

  friend bool operator==(const Witness&, const Witness&) = default;
};

// Exact search for a witness among the owner's claims; the returned witness
// is the lexicographically least one for clique and biclique goals.
std::optional<Witness> FindWitness(const GameState& state, Player owner,
                                   const Goal& goal);

// Witness search restricted to witnesses that use `edge`, treating that edge
// as owned even if it is still unclaimed. Club goals fall back to the full
// search.
std::optional<Witness> FindWitnessThrough(const GameState& state, Player owner,
                                          const Goal& goal, const Edge& edge);

// Every witness edge is owned and the sets have the goal's shape.
bool VerifyWitness(const GameState& state, Player owner, const Goal& goal,
                   const Witness& witness);

// Finitized club predicate relative to the explored labels: |s| >= 2,
// max(s) reaches the checkpoint (largest explored limit <= horizon, else the
// largest explored label <= horizon), and s contains every limit reached
// cofinally by s within the explored labels.
bool ClubPredicate(const std::vector<Ordinal>& s,
                   const std::set<Ordinal>& explored, const Ordinal& horizon);
std::optional<Ordinal> ClubCheckpoint(const std::set<Ordinal>& explored,
                                      const Ordinal& horizon);

}  // namespace mb

#endif  // MB_GOAL_H_
