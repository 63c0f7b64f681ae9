#include "mb/tree.h"

#include <algorithm>

namespace mb {

using Json = nlohmann::ordered_json;

HausdorffTree::HausdorffTree(int arity_bound, int limit_multiplicity)
    : arity_bound_(arity_bound), limit_multiplicity_(limit_multiplicity) {
  if (arity_bound < 1 || limit_multiplicity < 1) {
    throw std::invalid_argument("tree bounds must be positive");
  }
  nodes_.push_back(Node{Vertex::Plain(0), -1, {}, 0});
  index_.emplace(Vertex::Plain(0), 0);
}

int HausdorffTree::IndexOf(const Vertex& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) {
    throw std::invalid_argument("vertex " + v.ToString() + " not in the tree");
  }
  return it->second;
}

void HausdorffTree::Insert(const Vertex& v, const Vertex& parent) {
  if (Contains(v)) {
    throw std::invalid_argument("vertex " + v.ToString() + " already in tree");
  }
  int p = IndexOf(parent);
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{v, p, {}, nodes_[p].depth + 1});
  nodes_[p].children.push_back(id);
  index_.emplace(v, id);
}

std::optional<Vertex> HausdorffTree::Parent(const Vertex& v) const {
  int p = nodes_[IndexOf(v)].parent;
  if (p < 0) return std::nullopt;
  return nodes_[p].vertex;
}

std::vector<Vertex> HausdorffTree::Children(const Vertex& v) const {
  std::vector<Vertex> out;
  for (int c : nodes_[IndexOf(v)].children) out.push_back(nodes_[c].vertex);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> HausdorffTree::Predecessors(const Vertex& v) const {
  std::vector<Vertex> out;
  for (int p = nodes_[IndexOf(v)].parent; p >= 0; p = nodes_[p].parent) {
    out.push_back(nodes_[p].vertex);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::size_t HausdorffTree::Depth(const Vertex& v) const {
  return nodes_[IndexOf(v)].depth;
}

bool HausdorffTree::IsLeaf(const Vertex& v) const {
  return nodes_[IndexOf(v)].children.empty();
}

bool HausdorffTree::IsAncestor(const Vertex& a, const Vertex& b) const {
  int target = IndexOf(a);
  for (int p = nodes_[IndexOf(b)].parent; p >= 0; p = nodes_[p].parent) {
    if (p == target) return true;
  }
  return false;
}

std::size_t HausdorffTree::SubtreeSize(const Vertex& v) const {
  return Subtree(v).size();
}

std::vector<Vertex> HausdorffTree::Subtree(const Vertex& v) const {
  std::vector<Vertex> out;
  std::vector<int> stack{IndexOf(v)};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    out.push_back(nodes_[i].vertex);
    for (int c : nodes_[i].children) stack.push_back(c);
  }
  return out;
}

std::vector<Vertex> HausdorffTree::Leaves() const {
  std::vector<Vertex> out;
  for (const Node& n : nodes_) {
    if (n.children.empty()) out.push_back(n.vertex);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> HausdorffTree::Nodes() const {
  std::vector<Vertex> out;
  for (const Node& n : nodes_) out.push_back(n.vertex);
  return out;
}

std::size_t HausdorffTree::LongestChain() const {
  std::size_t best = 0;
  for (const Node& n : nodes_) best = std::max(best, n.depth + 1);
  return best;
}

std::vector<std::string> HausdorffTree::CheckStructure() const {
  std::vector<std::string> out;
  if (nodes_.empty() || nodes_[0].vertex != Vertex::Plain(0)) {
    out.push_back("root is not 0");
  }
  std::size_t without_max = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (static_cast<int>(n.children.size()) > arity_bound_) {
      out.push_back("node " + n.vertex.ToString() + " has " +
                    std::to_string(n.children.size()) + " children (bound " +
                    std::to_string(arity_bound_) + ")");
    }
    // Walk the predecessor chain: it must reach the root in exactly `depth`
    // steps, each step one level down.
    std::size_t steps = 0;
    int p = n.parent;
    int prev = static_cast<int>(i);
    while (p >= 0 && steps <= nodes_.size()) {
      if (nodes_[p].depth + 1 != nodes_[prev].depth) {
        out.push_back("predecessor chain of " + n.vertex.ToString() +
                      " skips a level");
        break;
      }
      prev = p;
      p = nodes_[p].parent;
      ++steps;
    }
    if (steps != n.depth || prev != 0) {
      out.push_back("predecessor chain of " + n.vertex.ToString() +
                    " does not end at the root");
    }
    // A finite predecessor chain has a maximum unless it is empty.
    if (n.parent < 0) ++without_max;
  }
  if (static_cast<int>(without_max) > limit_multiplicity_) {
    out.push_back("more than " + std::to_string(limit_multiplicity_) +
                  " nodes share a predecessor set without a maximum");
  }
  return out;
}

Json HausdorffTree::ToJson() const {
  Json j = Json::object();
  j["arity"] = arity_bound_;
  j["limitMultiplicity"] = limit_multiplicity_;
  Json nodes = Json::array();
  for (const Node& n : nodes_) {
    Json node = Json::object();
    node["label"] = n.vertex.label.ToString();
    node["parent"] = n.parent < 0 ? Json(nullptr)
                                  : Json(nodes_[n.parent].vertex.label.ToString());
    node["depth"] = n.depth;
    nodes.push_back(node);
  }
  j["nodes"] = nodes;
  return j;
}

std::vector<Vertex> ExtractBranch(const HausdorffTree& tree,
                                  BranchPolicy policy,
                                  std::optional<Vertex> leaf) {
  auto chain_to = [&](const Vertex& v) {
    std::vector<Vertex> out = tree.Predecessors(v);
    out.push_back(v);
    return out;
  };
  switch (policy) {
    case BranchPolicy::kDeepest: {
      std::vector<Vertex> best;
      for (const Vertex& l : tree.Leaves()) {
        std::vector<Vertex> c = chain_to(l);
        if (c.size() > best.size() || (c.size() == best.size() && c < best)) {
          best = std::move(c);
        }
      }
      return best;
    }
    case BranchPolicy::kMostDescendants: {
      std::vector<Vertex> out{tree.Root()};
      for (;;) {
        std::vector<Vertex> kids = tree.Children(out.back());
        if (kids.empty()) return out;
        const Vertex* best = &kids[0];
        std::size_t best_size = tree.SubtreeSize(kids[0]);
        for (std::size_t i = 1; i < kids.size(); ++i) {
          std::size_t s = tree.SubtreeSize(kids[i]);
          if (s > best_size) {
            best = &kids[i];
            best_size = s;
          }
        }
        out.push_back(*best);
      }
    }
    case BranchPolicy::kPrincipalAt:
      if (!leaf || !tree.Contains(*leaf) || !tree.IsLeaf(*leaf)) {
        throw UnknownLeaf((leaf ? leaf->ToString() : std::string("(none)")) +
                          " is not a leaf of the tree");
      }
      return chain_to(*leaf);
  }
  return {};
}

BranchCheck CliqueFromBranch(const GameState& state,
                             const std::vector<Vertex>& branch) {
  BranchCheck out;
  for (std::size_t i = 0; i < branch.size(); ++i) {
    for (std::size_t j = i + 1; j < branch.size(); ++j) {
      if (branch[i] == branch[j] ||
          state.Owner(Edge(branch[i], branch[j])) != Player::kMaker) {
        out.missing = std::make_pair(branch[i], branch[j]);
        return out;
      }
    }
  }
  std::vector<Vertex> sorted = branch;
  std::sort(sorted.begin(), sorted.end());
  out.witness = Witness{sorted, {}};
  return out;
}

TreeMakerStrategy::TreeMakerStrategy(TreeOptions options) : options_(options) {
  if (options_.k < 1) throw std::invalid_argument("tree needs k >= 1");
}

std::string TreeMakerStrategy::Name() const {
  std::string out = "tree(k=" + std::to_string(options_.k);
  if (options_.limit_multiplicity != 0) {
    out += ",limit=" + std::to_string(options_.limit_multiplicity);
  }
  if (options_.audit) out += ",audit=1";
  return out + ")";
}

void TreeMakerStrategy::MarkBlocked(const Vertex& x) {
  std::optional<Vertex> v = x;
  while (v && blocked_.insert(*v).second) v = tree_->Parent(*v);
}

void TreeMakerStrategy::Observe(const GameState& state) {
  const std::vector<Move>& history = state.History();
  for (; synced_ < history.size(); ++synced_) {
    const Move& m = history[synced_];
    if (m.player != Player::kBreaker || !active_ || !m.edge.Touches(*active_)) {
      continue;
    }
    const Vertex& x = m.edge.Other(*active_);
    if (tree_->Contains(x)) MarkBlocked(x);
  }
}

Edge TreeMakerStrategy::StartPhase(const GameState& state) {
  active_.reset();
  chain_.clear();
  blocked_.clear();
  phase_moves_ = 1;
  std::optional<Vertex> v = state.SmallestFresh(Side::kPlain, 1);
  if (!v) {
    saturated_ = true;
    return FallbackMove(state);
  }
  active_ = *v;
  chain_.push_back(tree_->Root());
  return Edge(tree_->Root(), *v);
}

Edge TreeMakerStrategy::NextMove(const GameState& state, Player role,
                                 Rng& rng) {
  (void)rng;
  if (role != Player::kMaker) {
    throw std::invalid_argument("tree plays Maker only");
  }
  if (state.board().IsBipartite()) {
    throw std::invalid_argument("tree needs a complete board");
  }
  if (!tree_) {
    int lm = options_.limit_multiplicity;
    if (lm == 0) lm = state.options().breaker_first ? options_.k + 1 : 1;
    tree_.emplace(options_.k + 1, lm);
  }
  Observe(state);
  ++maker_moves_;
  if (saturated_) return FallbackMove(state);
  if (!active_) return StartPhase(state);

  const Vertex v = *active_;
  const Vertex top = chain_.back();
  std::vector<Vertex> kids = tree_->Children(top);
  for (const Vertex& w : kids) {
    if (Blocked(w) || state.IsClaimed(Edge(w, v))) continue;
    if (options_.audit) {
      for (const Vertex& x : tree_->Subtree(w)) {
        if (state.Owner(Edge(x, v)) == Player::kBreaker) {
          Violation("claimed " + Edge(w, v).ToString() +
                    " while Breaker owns " + Edge(x, v).ToString());
        }
      }
    }
    chain_.push_back(w);
    ++phase_moves_;
    return Edge(w, v);
  }

  // No candidate: v joins the tree under the chain's maximum.
  if (static_cast<int>(kids.size()) >= tree_->arity_bound()) {
    std::size_t since = 0;
    const std::vector<Move>& history = state.History();
    for (auto it = history.rbegin();
         it != history.rend() && it->player == Player::kBreaker; ++it) {
      ++since;
    }
    if (since <= static_cast<std::size_t>(options_.k)) {
      Violation("insertion of " + v.ToString() + " under " + top.ToString() +
                " with all " + std::to_string(kids.size()) +
                " children blocked after " + std::to_string(since) +
                " Breaker moves");
    }
  }
  for (const Vertex& c : chain_) {
    if (state.Owner(Edge(c, v)) != Player::kMaker) {
      Violation("inserted " + v.ToString() + " without owning " +
                Edge(c, v).ToString());
    }
  }
  tree_->Insert(v, top);
  ++phases_;
  longest_phase_ = std::max(longest_phase_, phase_moves_);
  if (phase_moves_ > tree_->size()) {
    Violation("phase of " + v.ToString() + " took " +
              std::to_string(phase_moves_) + " moves");
  }
  return StartPhase(state);
}

std::vector<std::pair<Vertex, bool>> TreeMakerStrategy::Candidates() const {
  std::vector<std::pair<Vertex, bool>> out;
  if (!tree_ || !active_) return out;
  for (const Vertex& w : tree_->Children(chain_.back())) {
    out.emplace_back(w, Blocked(w));
  }
  return out;
}

void TreeMakerStrategy::Describe(Diagnostics& out) const {
  out["phases"] = static_cast<std::int64_t>(phases_);
  out["tree_size"] = static_cast<std::int64_t>(tree_ ? tree_->size() : 1);
  out["longest_chain"] =
      static_cast<std::int64_t>(tree_ ? tree_->LongestChain() : 1);
  out["saturated"] = saturated_ ? 1 : 0;
}

void TreeMakerStrategy::Footer(Json& out) const {
  out["treePhases"] = phases_;
  out["longestChain"] = tree_ ? tree_->LongestChain() : 1;
  if (tree_) out["tree"] = tree_->ToJson();
}

std::vector<std::string> TreeMakerStrategy::CheckInvariants(
    const GameState& state) const {
  std::vector<std::string> out = violations_;
  if (!tree_) return out;
  for (std::string& s : tree_->CheckStructure()) out.push_back(std::move(s));
  if (tree_->size() != phases_ + 1) {
    out.push_back("tree has " + std::to_string(tree_->size()) +
                  " nodes after " + std::to_string(phases_) + " phases");
  }
  if (active_) {
    for (const Vertex& c : chain_) {
      if (state.Owner(Edge(c, *active_)) == Player::kBreaker) {
        out.push_back("chain edge " + Edge(c, *active_).ToString() +
                      " owned by Breaker");
      }
    }
  }
  return out;
}

Json TreeMakerStrategy::SnapshotJson() const {
  Json j = tree_ ? tree_->ToJson() : HausdorffTree(options_.k + 1, 1).ToJson();
  j["phases"] = phases_;
  j["active"] = active_ ? Json(active_->label.ToString()) : Json(nullptr);
  Json chain = Json::array();
  for (const Vertex& c : chain_) chain.push_back(c.label.ToString());
  j["chain"] = chain;
  return j;
}

Json TreeMakerStrategy::HintsJson() const {
  Json j = Json::object();
  j["active"] = active_ ? Json(active_->label.ToString()) : Json(nullptr);
  Json chain = Json::array();
  for (const Vertex& c : chain_) chain.push_back(c.label.ToString());
  j["chain"] = chain;
  Json cands = Json::array();
  for (const auto& [w, blocked] : Candidates()) {
    cands.push_back(Json{{"node", w.label.ToString()}, {"blocked", blocked}});
  }
  j["candidates"] = cands;
  return j;
}

}  // namespace mb
