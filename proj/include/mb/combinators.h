// Strategy combinators: stealing a Breaker strategy for Maker, and
// restricting a strategy for a board G to a subboard G' through a vertex
// embedding.
#ifndef MB_COMBINATORS_H_
#define MB_COMBINATORS_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "mb/board.h"
#include "mb/game_state.h"
#include "mb/strategy.h"

namespace mb {

// Maker strategy built from a Breaker strategy. Maker keeps a virtual game
// with the roles swapped: real Breaker moves are virtual Maker moves and the
// wrapped strategy answers them as virtual Breaker. On turns whose schedule
// index is zero or a limit Maker plays FallbackMove and holds the edge as a
// free edge outside the virtual game. If the wrapped strategy names a held
// free edge, Maker plays FallbackMove instead, the virtual claim stands, and
// the new real edge replaces the old one in the free set (recorded in the
// remap table).
class StealStrategy : public Strategy {
 public:
  explicit StealStrategy(std::unique_ptr<Strategy> breaker);

  std::string Name() const override;
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;
  void Describe(Diagnostics& out) const override;
  void Footer(nlohmann::ordered_json& out) const override;
  std::vector<std::string> CheckInvariants(
      const GameState& state) const override;

  const std::optional<GameState>& virtual_state() const { return virtual_; }
  const std::set<Edge>& free_edges() const { return free_; }
  // Colliding virtual claim -> real edge played in its place.
  const std::map<Edge, Edge>& remap() const { return remap_; }
  std::size_t free_turns() const { return free_turns_; }

 private:
  void Sync(const GameState& state);

  std::unique_ptr<Strategy> breaker_;
  std::optional<GameState> virtual_;
  std::size_t synced_ = 0;  // real history entries already mirrored
  std::set<Edge> free_;
  std::map<Edge, Edge> remap_;
  std::size_t free_turns_ = 0;
  // CheckInvariants state. A mirrored real move found among the virtual
  // claims stays there; Maker moves backed only by a free edge are kept in
  // unsettled_ and looked at again on every check.
  mutable std::size_t audited_ = 0;
  mutable std::size_t audited_maker_ = 0;
  mutable std::size_t audited_breaker_ = 0;
  mutable std::vector<Edge> unsettled_;
};

// Injective vertex map from a source board G' into a target board G.
class Embedding {
 public:
  // G' = G, every vertex fixed.
  static Embedding Identity(const Board& board);
  // K_{m,n} into K_{m+n}: Left a -> a, Right b -> m + b. Lazy bipartite
  // boards go into the lazy complete board by interleaving: Left a -> 2a,
  // Right b -> 2b + 1 (finite labels only).
  static Embedding Canonical(const Board& bipartite);
  // "identity" or "canonical".
  static Embedding Parse(const std::string& name, const Board& source);

  const Board& source() const { return source_; }
  const Board& target() const { return target_; }
  std::string Name() const { return identity_ ? "identity" : "canonical"; }

  Vertex Map(const Vertex& v) const;
  Edge Map(const Edge& e) const { return Edge(Map(e.first()), Map(e.second())); }
  std::optional<Vertex> Preimage(const Vertex& v) const;
  // The source edge mapping onto e, if e lies in the image of the source.
  std::optional<Edge> Preimage(const Edge& e) const;

 private:
  Embedding(Board source, Board target, bool identity)
      : source_(std::move(source)), target_(std::move(target)),
        identity_(identity) {}

  Board source_;
  Board target_;
  bool identity_;
};

// Plays a strategy written for the target board on the source board. The
// opponent's real moves are mapped into a virtual target game; when the
// wrapped answer has no preimage, or its preimage is already ours, the
// adapter plays FallbackMove and keeps the virtual claim.
class RestrictStrategy : public Strategy {
 public:
  RestrictStrategy(std::unique_ptr<Strategy> inner, Embedding embedding);

  std::string Name() const override;
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;
  void Describe(Diagnostics& out) const override;
  void Footer(nlohmann::ordered_json& out) const override;
  std::vector<std::string> CheckInvariants(
      const GameState& state) const override;

  const std::optional<GameState>& virtual_state() const { return virtual_; }
  const Embedding& embedding() const { return embedding_; }
  std::size_t fallbacks() const { return fallbacks_; }

 private:
  void Sync(const GameState& state, Player role);

  std::unique_ptr<Strategy> inner_;
  Embedding embedding_;
  std::optional<GameState> virtual_;
  std::optional<Player> role_;
  std::size_t synced_ = 0;
  std::size_t fallbacks_ = 0;
  // Mirrored real moves already audited by CheckInvariants, and how many of
  // them were the opponent's. Both games only grow.
  mutable std::size_t audited_ = 0;
  mutable std::size_t audited_opponent_ = 0;
};

}  // namespace mb

#endif  // MB_COMBINATORS_H_
