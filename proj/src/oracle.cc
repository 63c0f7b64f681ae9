#include "mb/oracle.h"

#include <algorithm>
#include <bit>
#include <map>

namespace mb {
namespace {

struct Graph {
  std::vector<Vertex> vertices;  // sorted
  std::vector<std::vector<bool>> adj;
};

Graph BuildGraph(const std::set<Edge>& claims) {
  Graph g;
  std::set<Vertex> seen;
  for (const Edge& e : claims) {
    seen.insert(e.first());
    seen.insert(e.second());
  }
  if (seen.size() > kExhaustiveVertexLimit) {
    throw TooLarge("exhaustive search limited to " +
                   std::to_string(kExhaustiveVertexLimit) + " vertices, got " +
                   std::to_string(seen.size()));
  }
  g.vertices.assign(seen.begin(), seen.end());
  std::size_t n = g.vertices.size();
  g.adj.assign(n, std::vector<bool>(n, false));
  auto index = [&](const Vertex& v) {
    return static_cast<std::size_t>(
        std::lower_bound(g.vertices.begin(), g.vertices.end(), v) -
        g.vertices.begin());
  };
  for (const Edge& e : claims) {
    std::size_t i = index(e.first());
    std::size_t j = index(e.second());
    g.adj[i][j] = g.adj[j][i] = true;
  }
  return g;
}

// Visits the k-subsets of [0, n) in lexicographic order until `visit`
// returns true.
template <typename F>
bool ForEachSubset(std::size_t n, std::size_t k, F&& visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<std::vector<Vertex>> OracleFindClique(
    const std::set<Edge>& claims, std::uint64_t s) {
  Graph g = BuildGraph(claims);
  std::optional<std::vector<Vertex>> found;
  ForEachSubset(g.vertices.size(), s, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (!g.adj[idx[i]][idx[j]]) return false;
      }
    }
    found.emplace();
    for (std::size_t i : idx) found->push_back(g.vertices[i]);
    return true;
  });
  return found;
}

std::optional<Witness> OracleFindBiclique(const std::set<Edge>& claims,
                                          std::uint64_t a, std::uint64_t b,
                                          bool bipartite) {
  Graph g = BuildGraph(claims);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (!bipartite || g.vertices[i].side == Side::kLeft) pool.push_back(i);
  }
  std::optional<Witness> found;
  ForEachSubset(pool.size(), a, [&](const std::vector<std::size_t>& idx) {
    std::vector<Vertex> common;
    for (std::size_t v = 0; v < g.vertices.size() && common.size() < b; ++v) {
      bool all = true;
      for (std::size_t i : idx) all = all && g.adj[pool[i]][v];
      if (all) common.push_back(g.vertices[v]);
    }
    if (common.size() < b) return false;
    found.emplace();
    for (std::size_t i : idx) found->first.push_back(g.vertices[pool[i]]);
    found->second = common;
    return true;
  });
  return found;
}

std::optional<Witness> OracleWitness(const GameState& state, Player owner,
                                     const Goal& goal) {
  const std::set<Edge>& claims = state.Claims(owner);
  switch (goal.kind) {
    case GoalKind::kClique:
      if (auto c = OracleFindClique(claims, goal.size)) {
        return Witness{*c, {}};
      }
      return std::nullopt;
    case GoalKind::kBiclique:
      return OracleFindBiclique(claims, goal.left, goal.right,
                                state.board().IsBipartite());
    case GoalKind::kClub:
      break;
  }
  throw std::invalid_argument("the oracle does not search club goals");
}

const char* MinimaxName(MinimaxValue v) {
  return v == MinimaxValue::kMakerWins ? "MakerWins" : "BreakerWins";
}

MinimaxSolver::MinimaxSolver(const Board& board, const Goal& goal) {
  std::optional<std::uint64_t> count = board.EdgeCount();
  if (board.IsLazy() || !count || *count > kMinimaxEdgeLimit) {
    throw TooLarge("minimax needs a finite board with at most " +
                   std::to_string(kMinimaxEdgeLimit) + " edges");
  }
  if (goal.kind == GoalKind::kClub) {
    throw std::invalid_argument("minimax does not support club goals");
  }
  std::vector<Vertex> first;
  std::vector<Vertex> second;
  if (board.IsBipartite()) {
    for (std::uint64_t i = 0; i < *board.SideSize(Side::kLeft); ++i) {
      first.push_back(Vertex::Left(i));
    }
    for (std::uint64_t i = 0; i < *board.SideSize(Side::kRight); ++i) {
      second.push_back(Vertex::Right(i));
    }
    for (const Vertex& l : first) {
      for (const Vertex& r : second) edges_.emplace_back(l, r);
    }
  } else {
    for (std::uint64_t i = 0; i < *board.SideSize(Side::kPlain); ++i) {
      first.push_back(Vertex::Plain(i));
    }
    second = first;
    for (std::size_t i = 0; i < first.size(); ++i) {
      for (std::size_t j = i + 1; j < first.size(); ++j) {
        edges_.emplace_back(first[i], first[j]);
      }
    }
  }
  std::sort(edges_.begin(), edges_.end());
  std::map<Edge, std::size_t> index;
  for (std::size_t i = 0; i < edges_.size(); ++i) index.emplace(edges_[i], i);
  auto bit = [&](const Vertex& x, const Vertex& y) {
    return std::uint32_t{1} << index.at(Edge(x, y));
  };

  if (goal.kind == GoalKind::kClique && !board.IsBipartite()) {
    ForEachSubset(first.size(), goal.size,
                  [&](const std::vector<std::size_t>& idx) {
                    std::uint32_t mask = 0;
                    for (std::size_t i = 0; i < idx.size(); ++i) {
                      for (std::size_t j = i + 1; j < idx.size(); ++j) {
                        mask |= bit(first[idx[i]], first[idx[j]]);
                      }
                    }
                    winning_sets_.push_back(mask);
                    return false;
                  });
  } else if (goal.kind == GoalKind::kBiclique) {
    ForEachSubset(first.size(), goal.left,
                  [&](const std::vector<std::size_t>& left) {
                    ForEachSubset(
                        second.size(), goal.right,
                        [&](const std::vector<std::size_t>& right) {
                          std::uint32_t mask = 0;
                          for (std::size_t i : left) {
                            for (std::size_t j : right) {
                              if (first[i] == second[j]) return false;
                              mask |= bit(first[i], second[j]);
                            }
                          }
                          winning_sets_.push_back(mask);
                          return false;
                        });
                    return false;
                  });
  }
  // A clique goal on a bipartite board has no copies beyond single edges; the
  // loop above leaves winning_sets_ empty unless size == 2.
  if (goal.kind == GoalKind::kClique && board.IsBipartite() && goal.size == 2) {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      winning_sets_.push_back(std::uint32_t{1} << i);
    }
  }
  std::sort(winning_sets_.begin(), winning_sets_.end());
  winning_sets_.erase(std::unique(winning_sets_.begin(), winning_sets_.end()),
                      winning_sets_.end());

  pow3_.assign(edges_.size() + 1, 1);
  for (std::size_t i = 1; i <= edges_.size(); ++i) pow3_[i] = pow3_[i - 1] * 3;
  memo_.assign(pow3_[edges_.size()], 0);
}

bool MinimaxSolver::MakerHasGoal(std::uint32_t maker) const {
  for (std::uint32_t w : winning_sets_) {
    if ((w & maker) == w) return true;
  }
  return false;
}

std::uint32_t MinimaxSolver::Key(std::uint32_t maker,
                                 std::uint32_t breaker) const {
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    std::uint32_t digit = (maker >> i & 1) ? 1 : (breaker >> i & 1) ? 2 : 0;
    key += digit * pow3_[i];
  }
  return key;
}

MinimaxValue MinimaxSolver::ValueOf(std::uint32_t maker,
                                    std::uint32_t breaker) {
  if (MakerHasGoal(maker)) return MinimaxValue::kMakerWins;
  std::uint32_t full = (std::uint32_t{1} << edges_.size()) - 1;
  std::uint32_t free = full & ~(maker | breaker);
  if (free == 0) return MinimaxValue::kBreakerWins;
  std::uint32_t key = Key(maker, breaker);
  if (memo_[key] != 0) {
    return memo_[key] == 1 ? MinimaxValue::kMakerWins
                           : MinimaxValue::kBreakerWins;
  }
  bool maker_moves = std::popcount(maker) == std::popcount(breaker);
  MinimaxValue mine =
      maker_moves ? MinimaxValue::kMakerWins : MinimaxValue::kBreakerWins;
  MinimaxValue result =
      maker_moves ? MinimaxValue::kBreakerWins : MinimaxValue::kMakerWins;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    std::uint32_t e = std::uint32_t{1} << i;
    if (!(free & e)) continue;
    MinimaxValue v =
        maker_moves ? ValueOf(maker | e, breaker) : ValueOf(maker, breaker | e);
    if (v == mine) {
      result = mine;
      break;
    }
  }
  memo_[key] = result == MinimaxValue::kMakerWins ? 1 : 2;
  ++solved_;
  return result;
}

std::pair<std::uint32_t, std::uint32_t> MinimaxSolver::Masks(
    const GameState& state) const {
  std::uint32_t maker = 0;
  std::uint32_t breaker = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    std::optional<Player> owner = state.Owner(edges_[i]);
    if (owner == Player::kMaker) maker |= std::uint32_t{1} << i;
    if (owner == Player::kBreaker) breaker |= std::uint32_t{1} << i;
  }
  if (std::popcount(maker) + std::popcount(breaker) !=
      static_cast<int>(state.ClaimCount(Player::kMaker) +
                       state.ClaimCount(Player::kBreaker))) {
    throw std::invalid_argument("state is not on the solver's board");
  }
  return {maker, breaker};
}

MinimaxValue MinimaxSolver::Value(const GameState& state) {
  auto [maker, breaker] = Masks(state);
  return ValueOf(maker, breaker);
}

Edge MinimaxSolver::BestMove(const GameState& state) {
  auto [maker, breaker] = Masks(state);
  std::uint32_t full = (std::uint32_t{1} << edges_.size()) - 1;
  std::uint32_t free = full & ~(maker | breaker);
  if (free == 0) throw Exhausted("no unclaimed edge");
  bool maker_moves = std::popcount(maker) == std::popcount(breaker);
  MinimaxValue mine =
      maker_moves ? MinimaxValue::kMakerWins : MinimaxValue::kBreakerWins;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    std::uint32_t e = std::uint32_t{1} << i;
    if (!(free & e)) continue;
    MinimaxValue v =
        maker_moves ? ValueOf(maker | e, breaker) : ValueOf(maker, breaker | e);
    if (v == mine) return edges_[i];
  }
  return edges_[std::countr_zero(free)];
}

bool CountingImpossible(const Board& board, const Goal& goal) {
  std::optional<std::uint64_t> count = board.EdgeCount();
  if (!count) return false;
  return goal.EdgesNeeded() > (*count + 1) / 2;
}

Edge MinimaxStrategy::NextMove(const GameState& state, Player role, Rng& rng) {
  (void)role;
  (void)rng;
  if (!solver_) solver_.emplace(state.board(), goal_);
  return solver_->BestMove(state);
}

Colour MajorityColour(const Colouring& c, std::uint64_t right) {
  std::uint64_t red = 0;
  for (std::uint64_t l = 0; l < c.left_size(); ++l) {
    red += c.At(l, right) == Colour::kRed;
  }
  return red >= (c.left_size() + 1) / 2 ? Colour::kRed : Colour::kBlue;
}

std::optional<MonoBiclique> FilterIntersectFinder(const Colouring& c,
                                                  std::uint64_t a,
                                                  std::uint64_t b) {
  std::uint64_t u = c.left_size();
  std::uint64_t n = c.right_size();
  if (a == 0 || b == 0 || a > u || b > n) return std::nullopt;
  std::uint64_t red_majority = 0;
  for (std::uint64_t r = 0; r < n; ++r) {
    red_majority += MajorityColour(c, r) == Colour::kRed;
  }
  Colour colour = 2 * red_majority >= n ? Colour::kRed : Colour::kBlue;

  std::vector<std::uint64_t> pool;
  for (std::uint64_t r = 0; r < n; ++r) {
    if (MajorityColour(c, r) == colour) pool.push_back(r);
  }
  std::vector<bool> running(u, true);
  std::vector<std::uint64_t> picked;
  std::vector<bool> used(n, false);
  while (picked.size() < b) {
    std::optional<std::uint64_t> best;
    std::uint64_t best_size = 0;
    for (std::uint64_t r : pool) {
      if (used[r]) continue;
      std::uint64_t size = 0;
      for (std::uint64_t l = 0; l < u; ++l) {
        size += running[l] && c.At(l, r) == colour;
      }
      if (!best || size > best_size) {
        best = r;
        best_size = size;
      }
    }
    if (!best) return std::nullopt;
    used[*best] = true;
    picked.push_back(*best);
    for (std::uint64_t l = 0; l < u; ++l) {
      running[l] = running[l] && c.At(l, *best) == colour;
    }
  }
  MonoBiclique out;
  out.colour = colour;
  for (std::uint64_t l = 0; l < u && out.left.size() < a; ++l) {
    if (running[l]) out.left.push_back(l);
  }
  if (out.left.size() < a) return std::nullopt;
  std::sort(picked.begin(), picked.end());
  out.right = picked;
  if (!VerifyMonochromatic(c, out)) return std::nullopt;
  return out;
}

std::optional<MonoBiclique> ExhaustiveMonochromatic(const Colouring& c,
                                                    std::uint64_t a,
                                                    std::uint64_t b) {
  for (Colour colour : {Colour::kRed, Colour::kBlue}) {
    std::optional<MonoBiclique> found;
    ForEachSubset(c.left_size(), a, [&](const std::vector<std::size_t>& idx) {
      std::vector<std::uint64_t> right;
      for (std::uint64_t r = 0; r < c.right_size() && right.size() < b; ++r) {
        bool all = true;
        for (std::size_t l : idx) all = all && c.At(l, r) == colour;
        if (all) right.push_back(r);
      }
      if (right.size() < b) return false;
      found = MonoBiclique{colour, {idx.begin(), idx.end()}, right};
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool VerifyMonochromatic(const Colouring& c, const MonoBiclique& m) {
  for (std::uint64_t l : m.left) {
    for (std::uint64_t r : m.right) {
      if (l >= c.left_size() || r >= c.right_size()) return false;
      if (c.At(l, r) != m.colour) return false;
    }
  }
  std::set<std::uint64_t> ls(m.left.begin(), m.left.end());
  std::set<std::uint64_t> rs(m.right.begin(), m.right.end());
  return ls.size() == m.left.size() && rs.size() == m.right.size();
}

}  // namespace mb
