// Maker's phase strategy for bipartite boards: each phase takes a fresh Right
// centre and joins it to p Left vertices drawn from a shrinking pool, so that
// long runs of phases share many Left endpoints.
#ifndef MB_BIPARTITE_H_
#define MB_BIPARTITE_H_

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mb/board.h"
#include "mb/game_state.h"
#include "mb/goal.h"
#include "mb/strategy.h"

namespace mb {

// A set of Left labels given as "everything below `bound` except `excluded`";
// an absent bound means every natural label.
struct LeftPool {
  std::optional<std::uint64_t> bound;
  std::set<std::uint64_t> excluded;

  bool Contains(std::uint64_t u) const {
    return (!bound || u < *bound) && excluded.count(u) == 0;
  }
  // Nullopt when the pool is infinite.
  std::optional<std::uint64_t> Size() const;
  // Every label of `other` is in this pool.
  bool Includes(const LeftPool& other) const;

  friend bool operator==(const LeftPool&, const LeftPool&) = default;
};

struct PhaseRecord {
  std::size_t index = 0;
  Vertex center;                        // Right side
  std::vector<std::uint64_t> claimed;   // C, in claim order
  LeftPool pool;                        // P, fixed when the phase opens
  std::size_t start_step = 0;           // history length when the phase opened
  bool exhausted = false;

  friend bool operator==(const PhaseRecord&, const PhaseRecord&) = default;
};

nlohmann::ordered_json PhaseToJson(const PhaseRecord& phase);
PhaseRecord PhaseFromJson(const nlohmann::ordered_json& j);

// Raised inside the strategy when a phase's pool has no available label; the
// strategy catches it, records the event and falls back.
class PoolExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BipartiteMakerStrategy : public Strategy {
 public:
  explicit BipartiteMakerStrategy(std::uint64_t phase_length = 8);

  std::string Name() const override;
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;
  void Describe(Diagnostics& out) const override;
  void Footer(nlohmann::ordered_json& out) const override;
  std::vector<std::string> CheckInvariants(
      const GameState& state) const override;

  std::uint64_t phase_length() const { return phase_length_; }
  const std::vector<PhaseRecord>& phases() const { return phases_; }
  std::size_t pool_exhaustions() const { return exhaustions_; }
  bool saturated() const { return saturated_; }

 private:
  bool PhaseOpen() const;
  void OpenPhase(const GameState& state);
  std::uint64_t PickLeft(const GameState& state) const;

  std::uint64_t phase_length_;
  std::vector<PhaseRecord> phases_;
  std::size_t exhaustions_ = 0;
  std::size_t fallbacks_ = 0;
  bool saturated_ = false;
};

// Searches for an a-set L of Left labels and b phases whose claimed sets all
// contain L; the witness is L x {their centres}. Label subsets of the union of
// claimed sets are scanned in lexicographic order while their number stays
// under `exhaustive_limit`, otherwise the most frequent labels are tried. With
// `verify` set, a candidate counts only if every edge is Maker-owned there.
std::optional<Witness> ExtractBiclique(const std::vector<PhaseRecord>& phases,
                                       std::uint64_t a, std::uint64_t b,
                                       const GameState* verify = nullptr,
                                       std::uint64_t exhaustive_limit = 2000000);

}  // namespace mb

#endif  // MB_BIPARTITE_H_
