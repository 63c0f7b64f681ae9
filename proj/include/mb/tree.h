// Maker's tree strategy for complete boards: grow an order tree whose
// comparable pairs are all Maker edges, then read a long branch off it as a
// clique.
#ifndef MB_TREE_H_
#define MB_TREE_H_

#include <map>
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

// An order tree on plain vertices, rooted at 0. A node's predecessors are
// exactly its ancestors, so every predecessor set is a chain.
class HausdorffTree {
 public:
  HausdorffTree(int arity_bound, int limit_multiplicity);

  int arity_bound() const { return arity_bound_; }
  int limit_multiplicity() const { return limit_multiplicity_; }
  std::size_t size() const { return nodes_.size(); }
  bool Contains(const Vertex& v) const { return index_.count(v) > 0; }

  // Adds v as a child of `parent`. Throws std::invalid_argument if v is
  // present or the parent is missing; arity is not enforced here so that
  // CheckInvariants can report violations.
  void Insert(const Vertex& v, const Vertex& parent);

  const Vertex& Root() const { return nodes_[0].vertex; }
  std::optional<Vertex> Parent(const Vertex& v) const;
  std::vector<Vertex> Children(const Vertex& v) const;  // ascending
  // Ancestors from the root down, excluding v.
  std::vector<Vertex> Predecessors(const Vertex& v) const;
  std::size_t Depth(const Vertex& v) const;
  bool IsLeaf(const Vertex& v) const;
  bool IsAncestor(const Vertex& a, const Vertex& b) const;  // a strictly below b
  std::size_t SubtreeSize(const Vertex& v) const;
  std::vector<Vertex> Subtree(const Vertex& v) const;
  std::vector<Vertex> Leaves() const;  // ascending
  std::vector<Vertex> Nodes() const;   // insertion order
  // Height in nodes of the longest root-to-leaf chain.
  std::size_t LongestChain() const;

  // Arity, chain shape of predecessor sets, and the multiplicity bound on
  // nodes sharing a predecessor set without a maximum.
  std::vector<std::string> CheckStructure() const;

  // {"arity":k+1,"nodes":[{"label":..,"parent":..|null,"depth":d}, ...]}.
  nlohmann::ordered_json ToJson() const;

 private:
  struct Node {
    Vertex vertex;
    int parent;  // -1 for the root
    std::vector<int> children;
    std::size_t depth;
  };
  int IndexOf(const Vertex& v) const;

  int arity_bound_;
  int limit_multiplicity_;
  std::vector<Node> nodes_;
  std::map<Vertex, int> index_;
};

class UnknownLeaf : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BranchPolicy { kDeepest, kMostDescendants, kPrincipalAt };

// DeepestBranch: a longest chain, lexicographically least among ties.
// MostDescendants: descend into the child with the larger subtree (ties to
// the smaller label). PrincipalAt: the chain through `leaf`; throws
// UnknownLeaf if it is not a leaf of the tree.
std::vector<Vertex> ExtractBranch(const HausdorffTree& tree,
                                  BranchPolicy policy,
                                  std::optional<Vertex> leaf = std::nullopt);

struct BranchCheck {
  std::optional<Witness> witness;
  // First pair (in branch order) that Maker does not own.
  std::optional<std::pair<Vertex, Vertex>> missing;
};

BranchCheck CliqueFromBranch(const GameState& state,
                             const std::vector<Vertex>& branch);

struct TreeOptions {
  int k = 1;  // Breaker moves per Maker move the tree is sized for
  // 0 picks 1, or k + 1 when the game is breaker-first.
  int limit_multiplicity = 0;
  // Brute-force the claim-time subtree condition on every claim.
  bool audit = false;
};

// Phase structure: pick the smallest fresh non-root v and claim {0, v}; then
// repeatedly claim {w, v} for the smallest child w of the chain's maximum
// whose subtree has no Breaker edge to v; when no such child exists insert v
// under the chain's maximum and start the next phase in the same move.
class TreeMakerStrategy : public Strategy {
 public:
  explicit TreeMakerStrategy(TreeOptions options = {});

  std::string Name() const override;
  Edge NextMove(const GameState& state, Player role, Rng& rng) override;
  void Describe(Diagnostics& out) const override;
  void Footer(nlohmann::ordered_json& out) const override;
  std::vector<std::string> CheckInvariants(
      const GameState& state) const override;

  const HausdorffTree& tree() const { return *tree_; }
  const std::optional<Vertex>& active() const { return active_; }
  // The active vertex's Maker chain in the tree, root first.
  const std::vector<Vertex>& chain() const { return chain_; }
  std::size_t phases_completed() const { return phases_; }
  bool saturated() const { return saturated_; }
  // Children of the chain's maximum and whether each is Breaker-blocked.
  std::vector<std::pair<Vertex, bool>> Candidates() const;

  // Tree snapshot plus the active phase.
  nlohmann::ordered_json SnapshotJson() const;
  nlohmann::ordered_json HintsJson() const;

  // Catches up on Breaker moves since the last call; NextMove does this
  // itself, hint readers call it first.
  void Observe(const GameState& state);

 private:
  void MarkBlocked(const Vertex& x);
  bool Blocked(const Vertex& w) const { return blocked_.count(w) > 0; }
  Edge StartPhase(const GameState& state);
  void Violation(std::string what) { violations_.push_back(std::move(what)); }

  TreeOptions options_;
  std::optional<HausdorffTree> tree_;
  std::optional<Vertex> active_;
  std::vector<Vertex> chain_;
  std::set<Vertex> blocked_;
  std::size_t synced_ = 0;
  std::size_t phases_ = 0;
  std::size_t maker_moves_ = 0;
  std::size_t longest_phase_ = 0;
  std::size_t phase_moves_ = 0;
  bool saturated_ = false;
  std::vector<std::string> violations_;
};

}  // namespace mb

#endif  // MB_TREE_H_
