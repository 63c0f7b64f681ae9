// Catalogue-driven Breaker for complete boards and the matching avoiding
// colouring of K_{u,n}.
#ifndef MB_CATALOGUE_H_
#define MB_CATALOGUE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mb/colouring.h"
#include "mb/game_state.h"
#include "mb/strategy.h"

namespace mb {

class CatalogueError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sets A_0..A_{c-1}, each k labels ascending, with the slot map
// f(alpha, gamma) = A_{gamma mod (min(alpha, c-1) + 1)} over p slots.
class Catalogue {
 public:
  // Throws CatalogueError on an empty catalogue, sets of unequal or zero
  // size, repeated labels, or p < c (the slot map would miss sets).
  explicit Catalogue(std::vector<std::vector<std::uint64_t>> sets,
                     std::optional<std::uint64_t> slots = std::nullopt);
  // All k-subsets of {0..m-1} in lexicographic order.
  static Catalogue AllSubsets(std::uint64_t k, std::uint64_t m);

  std::size_t size() const { return sets_.size(); }
  std::uint64_t k() const { return sets_.front().size(); }
  std::uint64_t slots() const { return slots_; }
  const std::vector<std::uint64_t>& Set(std::size_t beta) const {
    return sets_.at(beta);
  }
  // Index of f(alpha, gamma).
  std::size_t SlotTarget(std::uint64_t alpha, std::uint64_t gamma) const;
  // Largest label in any set, plus one.
  std::uint64_t Range() const;

  nlohmann::ordered_json ToJson() const;
  static Catalogue FromJson(const nlohmann::ordered_json& j);

  friend bool operator==(const Catalogue&, const Catalogue&) = default;

 private:
  std::vector<std::vector<std::uint64_t>> sets_;
  std::uint64_t slots_;
};

// One response of the catalogue Breaker to a downward Maker edge at alpha.
struct FireRecord {
  std::size_t step = 0;  // history index of the Breaker move
  std::uint64_t alpha = 0;
  std::uint64_t gamma = 0;
  std::optional<std::size_t> target;  // set index; none when gamma >= p
  std::optional<std::uint64_t> delta;  // none when nothing was available
  Edge played = Edge::Plain(0, 1);

  friend bool operator==(const FireRecord&, const FireRecord&) = default;
};

// On Maker's (gamma+1)-st downward edge {beta, alpha}, beta < alpha, Breaker
// answers with {delta, alpha} for the smallest available delta in
// f(alpha, gamma); with nothing available, or gamma >= p, it plays
// fallbackMove. Extra Breaker moves in a biased turn also fall back.
class BreakerCatalogueStrategy : public Strategy {
 public:
  // `name` is what Name() reports, normally the strategy string it was built
  // from; empty gives "catalogue(c=<size>)".
  explicit BreakerCatalogueStrategy(Catalogue catalogue, std::string name = "");

  std::string Name() const override;
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;
  void Describe(Diagnostics& out) const override;
  void Footer(nlohmann::ordered_json& out) const override;
  std::vector<std::string> CheckInvariants(
      const GameState& state) const override;

  const Catalogue& catalogue() const { return catalogue_; }
  const std::vector<FireRecord>& fires() const { return fires_; }
  std::uint64_t DownwardCount(std::uint64_t alpha) const;

 private:
  struct Pending {
    std::uint64_t alpha;
    std::uint64_t gamma;
  };
  void Sync(const GameState& state);

  Catalogue catalogue_;
  std::string name_;
  std::map<std::uint64_t, std::uint64_t> downward_;
  std::vector<Pending> pending_;
  std::size_t synced_ = 0;
  std::vector<FireRecord> fires_;
  // CheckInvariants audits each fire once; after that only a new Maker edge
  // at the fire's alpha can change its verdict.
  mutable std::size_t audited_fires_ = 0;
  mutable std::size_t audited_moves_ = 0;
};

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Colours K_{u,n} so that for every right vertex alpha and every
// beta <= min(alpha, c-1), the edges alpha x A_beta carry both colours.
// Greedy per right vertex (constraints in ascending beta; a monochromatic or
// unassigned set gets its smallest unassigned labels coloured to split it),
// with an exact backtracking search when greedy gets stuck. Throws Infeasible
// if no colouring exists, and CatalogueError if a set leaves 0..u-1.
Colouring BuildAvoidingColouring(const Catalogue& catalogue, std::uint64_t u,
                                 std::uint64_t n);

// Every (alpha, beta) constraint that fails, as "alpha,beta" strings.
std::vector<std::string> CheckAvoiding(const Catalogue& catalogue,
                                       const Colouring& colouring);

}  // namespace mb

#endif  // MB_CATALOGUE_H_
