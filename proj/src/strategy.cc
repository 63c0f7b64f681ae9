#include "mb/strategy.h"

#include <algorithm>
#include <functional>
#include <tuple>

namespace mb {
namespace {

std::size_t CountCommon(const std::set<Vertex>& a, const std::set<Vertex>& b) {
  const std::set<Vertex>& small = a.size() <= b.size() ? a : b;
  const std::set<Vertex>& large = a.size() <= b.size() ? b : a;
  std::size_t n = 0;
  for (const Vertex& v : small) n += large.count(v);
  return n;
}

// Width of the exploration window on a side: its full size when finite and
// small, otherwise two past the largest explored finite label.
std::uint64_t WindowWidth(const GameState& state, Side side) {
  const Ordinal& bound = state.board().Bound(side);
  std::uint64_t width = 2;
  const std::set<Vertex>& explored = state.Explored();
  static const Ordinal kOmega = Ordinal::Omega();
  auto it = explored.lower_bound(Vertex{side, kOmega});
  if (it != explored.begin() && (--it)->side == side) {
    width = std::max(width, it->label.FiniteValue() + 2);
  }
  if (bound.IsFinite()) {
    std::uint64_t n = bound.FiniteValue();
    if (!state.board().IsLazy() && n <= 4096) return n;
    width = std::min(width, n);
  }
  return width;
}

bool MightComplete(const GameState& state, Player owner, const Goal& goal,
                   const Edge& e) {
  const Vertex& x = e.first();
  const Vertex& y = e.second();
  std::size_t dx = state.Degree(owner, x);
  std::size_t dy = state.Degree(owner, y);
  switch (goal.kind) {
    case GoalKind::kClique:
      if (goal.size == 2) return true;
      return std::min(dx, dy) + 2 >= goal.size;
    case GoalKind::kBiclique: {
      bool forward = dx + 1 >= goal.right && dy + 1 >= goal.left;
      bool backward = !state.board().IsBipartite() && dy + 1 >= goal.right &&
                      dx + 1 >= goal.left;
      return forward || backward;
    }
    case GoalKind::kClub:
      return false;
  }
  return false;
}

// Rectangles through {x, y} with x as a row: x's row takes y and the first
// cols-1 of x's own neighbours (y is never one of them, since the edge is
// free). Everything but y is fixed by x, so it is computed once per x.
// Other rows are looked for among the first kRowScan neighbours of each
// column, which keeps hubs from dominating the cost.
constexpr std::size_t kRowScan = 64;

struct RowBase {
  std::vector<Vertex> columns;
  std::vector<std::pair<std::int64_t, Vertex>> ranked;  // best open rows

  // Columns of the base held by row r, or -1 when the opponent has cut r
  // off from them (or r is one of them).
  std::int64_t Share(const GameState& state, Player owner,
                     const Vertex& r) const {
    const std::set<Vertex>& mine = state.Neighbours(owner, r);
    const std::set<Vertex>& cut = state.Neighbours(Opponent(owner), r);
    std::int64_t n = 0;
    for (const Vertex& c : columns) {
      if (c == r || cut.count(c)) return -1;
      n += static_cast<std::int64_t>(mine.count(c));
    }
    return n;
  }
};

RowBase MakeRowBase(const GameState& state, Player owner, const Vertex& x,
                    std::size_t rows, std::size_t cols) {
  RowBase base;
  for (const Vertex& c : state.Neighbours(owner, x)) {
    if (base.columns.size() + 1 >= cols) break;
    base.columns.push_back(c);
  }
  // Enough spares that skipping rows adjacent to y still leaves rows-1.
  const std::size_t keep = rows + 3;
  std::vector<std::pair<std::int64_t, const Vertex*>> found;
  for (const Vertex& c : base.columns) {
    std::size_t scanned = 0;
    for (const Vertex& r : state.Neighbours(owner, c)) {
      if (++scanned > kRowScan) break;
      if (r == x) continue;
      // A row seen through an earlier column was already ranked.
      if (base.columns.size() > 1 &&
          std::any_of(found.begin(), found.end(),
                      [&](const auto& f) { return *f.second == r; })) {
        continue;
      }
      std::int64_t n = base.Share(state, owner, r);
      if (n > 0) found.emplace_back(n, &r);
    }
  }
  // Highest share first, discovery order among equals.
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::size_t take = std::min(keep, order.size());
  std::partial_sort(order.begin(), order.begin() + take, order.end(),
                    [&](std::size_t i, std::size_t j) {
                      if (found[i].first != found[j].first) {
                        return found[i].first > found[j].first;
                      }
                      return i < j;
                    });
  for (std::size_t i = 0; i < take; ++i) {
    base.ranked.emplace_back(found[order[i]].first, *found[order[i]].second);
  }
  return base;
}

// Maker edges in the best rows x cols rectangle through {x, y} with x as a
// row; the other rows are those sharing the most columns and not blocked by
// the opponent.
std::int64_t RectangleFrom(const GameState& state, Player owner,
                           const RowBase& base, const Vertex& x,
                           const Vertex& y, std::size_t rows,
                           std::vector<std::int64_t>& values) {
  std::int64_t score = 1 + static_cast<std::int64_t>(base.columns.size());
  if (rows < 2) return score;
  const std::set<Vertex>& ny = state.Neighbours(owner, y);
  const std::set<Vertex>& by = state.Neighbours(Opponent(owner), y);
  values.clear();
  std::size_t scanned = 0;
  for (const Vertex& r : ny) {
    if (++scanned > kRowScan) break;
    if (r == x) continue;
    std::int64_t n = base.Share(state, owner, r);
    if (n >= 0) values.push_back(1 + n);
  }
  std::size_t from_base = 0;
  for (const auto& [n, r] : base.ranked) {
    if (from_base == rows - 1) break;
    if (r == y || ny.count(r) || by.count(r)) continue;
    values.push_back(n);
    ++from_base;
  }
  std::size_t take = std::min(values.size(), rows - 1);
  std::partial_sort(values.begin(), values.begin() + take, values.end(),
                    std::greater<>());
  for (std::size_t i = 0; i < take; ++i) score += values[i];
  return score;
}

class RectangleScorer {
 public:
  RectangleScorer(const GameState& state, Player owner, const Goal& goal)
      : state_(state), owner_(owner), a_(goal.left), b_(goal.right) {}

  std::int64_t Score(const Edge& e) {
    const Vertex& x = e.first();
    const Vertex& y = e.second();
    std::int64_t best = std::max(From(x, y, a_, b_), From(y, x, b_, a_));
    if (!state_.board().IsBipartite()) {
      best = std::max({best, From(y, x, a_, b_), From(x, y, b_, a_)});
    }
    return best;
  }

 private:
  std::int64_t From(const Vertex& x, const Vertex& y, std::size_t rows,
                    std::size_t cols) {
    auto key = std::make_pair(x, cols);
    auto it = bases_.find(key);
    if (it == bases_.end()) {
      it = bases_.emplace(key, MakeRowBase(state_, owner_, x, rows, cols)).first;
    }
    return RectangleFrom(state_, owner_, it->second, x, y, rows, scratch_);
  }

  const GameState& state_;
  Player owner_;
  std::size_t a_;
  std::size_t b_;
  std::map<std::pair<Vertex, std::size_t>, RowBase> bases_;
  std::vector<std::int64_t> scratch_;
};

// Best edge by (completes a witness of `owner`, score), canonical order
// breaking ties. A seeker scores biclique goals by rectangle progress, all
// else by threat.
std::optional<Edge> BestByThreat(const GameState& state, Player owner,
                                 const Goal& goal, bool seeking = false) {
  std::optional<RectangleScorer> rectangles;
  if (seeking && goal.kind == GoalKind::kBiclique) {
    rectangles.emplace(state, owner, goal);
  }
  struct Candidate {
    Vertex v;
    const std::set<Vertex>* mine;
    const std::set<Vertex>* theirs;
  };
  auto annotate = [&](const std::vector<Vertex>& vs) {
    std::vector<Candidate> out;
    out.reserve(vs.size());
    for (const Vertex& v : vs) {
      out.push_back({v, &state.Neighbours(owner, v),
                     &state.Neighbours(Opponent(owner), v)});
    }
    return out;
  };
  Side s1 = state.board().FirstSide();
  Side s2 = state.board().SecondSide();
  std::vector<Candidate> first = annotate(CandidateVertices(state, s1, owner));
  std::vector<Candidate> second =
      s1 == s2 ? first : annotate(CandidateVertices(state, s2, owner));
  bool bipartite = state.board().IsBipartite();
  bool clique = goal.kind == GoalKind::kClique;
  std::optional<Edge> best;
  std::tuple<int, std::int64_t> best_key{-1, 0};
  // Both lists are sorted, so pairs come out in canonical edge order.
  for (std::size_t i = 0; i < first.size(); ++i) {
    const Candidate& x = first[i];
    for (std::size_t j = bipartite ? 0 : i + 1; j < second.size(); ++j) {
      const Candidate& y = second[j];
      if (x.mine->count(y.v) || x.theirs->count(y.v)) continue;
      std::optional<Edge> built;
      std::int64_t score;
      if (rectangles) {
        built.emplace(x.v, y.v);
        score = rectangles->Score(*built);
      } else {
        score = static_cast<std::int64_t>(x.mine->size() + y.mine->size());
        if (!bipartite) {
          score += 4 * static_cast<std::int64_t>(CountCommon(*x.mine, *y.mine));
        }
      }
      if (best && std::tuple<int, std::int64_t>{1, score} <= best_key) {
        continue;
      }
      if (!built) built.emplace(x.v, y.v);
      const Edge& e = *built;
      int tier = 0;
      bool cheap_miss = clique && goal.size > 2 &&
                        std::min(x.mine->size(), y.mine->size()) + 2 < goal.size;
      if (!cheap_miss && MightComplete(state, owner, goal, e) &&
          FindWitnessThrough(state, owner, goal, e)) {
        tier = 1;
      }
      std::tuple<int, std::int64_t> key{tier, score};
      if (!best || key > best_key) {
        best = e;
        best_key = key;
      }
    }
  }
  return best;
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(SplitMix64(seed ^ SplitMix64(stream))) {}

std::uint64_t Rng::Uniform(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::Uniform with n == 0");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    std::uint64_t x = engine_();
    if (x < limit) return x % n;
  }
}

Edge FallbackMove(const GameState& state) {
  if (auto e = state.SmallestUnclaimed()) return *e;
  throw Exhausted("no unclaimed edge within the horizon");
}

Edge FallbackStrategy::NextMove(const GameState& state, Player, Rng&) {
  return FallbackMove(state);
}

RandomAdversary::RandomAdversary(std::optional<std::uint64_t> seed)
    : seed_(seed) {
  if (seed_) own_.emplace(*seed_, 0x5eed);
}

std::string RandomAdversary::Name() const {
  return seed_ ? "random(" + std::to_string(*seed_) + ")" : "random";
}

Edge RandomAdversary::NextMove(const GameState& state, Player, Rng& rng) {
  Rng& gen = own_ ? *own_ : rng;
  const Board& board = state.board();
  bool bipartite = board.IsBipartite();
  Side s1 = board.FirstSide();
  Side s2 = board.SecondSide();
  std::uint64_t w1 = WindowWidth(state, s1);
  std::uint64_t w2 = bipartite ? WindowWidth(state, s2) : w1;
  for (;;) {
    std::uint64_t pairs = bipartite ? w1 * w2 : (w1 < 2 ? 0 : w1 * (w1 - 1) / 2);
    if (pairs > 0) {
      for (int attempt = 0; attempt < 64; ++attempt) {
        std::uint64_t a = gen.Uniform(w1);
        std::uint64_t b = gen.Uniform(w2);
        if (!bipartite && a == b) continue;
        Edge e(Vertex{s1, Ordinal::Finite(a)}, Vertex{s2, Ordinal::Finite(b)});
        if (!state.IsClaimed(e)) return e;
      }
      std::vector<Edge> open;
      for (std::uint64_t a = 0; a < w1; ++a) {
        for (std::uint64_t b = bipartite ? 0 : a + 1; b < w2; ++b) {
          Edge e(Vertex{s1, Ordinal::Finite(a)},
                 Vertex{s2, Ordinal::Finite(b)});
          if (!state.IsClaimed(e)) open.push_back(e);
        }
      }
      if (!open.empty()) return open[gen.Uniform(open.size())];
    }
    bool grew = false;
    if (!board.Bound(s1).IsFinite() ||
        w1 < board.Bound(s1).FiniteValue()) {
      ++w1;
      grew = true;
    }
    if (bipartite) {
      if (!board.Bound(s2).IsFinite() || w2 < board.Bound(s2).FiniteValue()) {
        ++w2;
        grew = true;
      }
    } else {
      w2 = w1;
    }
    if (!grew) throw Exhausted("no unclaimed edge within the horizon");
  }
}

std::vector<Vertex> CandidateVertices(const GameState& state, Side side,
                                      Player focus) {
  std::vector<Vertex> out;
  const Ordinal& bound = state.board().Bound(side);
  if (bound.IsFinite() && bound.FiniteValue() <= kFullScanSide) {
    for (std::uint64_t i = 0; i < bound.FiniteValue(); ++i) {
      out.push_back(Vertex{side, Ordinal::Finite(i)});
    }
    return out;
  }
  std::vector<std::pair<std::size_t, const Vertex*>> ranked;
  const auto& adj = state.Adjacency(focus);
  auto from = adj.lower_bound(Vertex{side, Ordinal()});
  for (auto it = from; it != adj.end() && it->first.side == side; ++it) {
    ranked.emplace_back(it->second.size(), &it->first);
  }
  // Highest degree first, smaller label among equals.
  std::size_t keep = std::min<std::size_t>(ranked.size(), 32);
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return *a.second < *b.second;
                    });
  ranked.resize(keep);
  for (auto& [deg, v] : ranked) out.push_back(*v);
  if (auto fresh = state.SmallestFresh(side)) out.push_back(*fresh);
  if (out.size() < 2) {
    // Nothing explored yet: seed with the two smallest labels.
    for (std::uint64_t i = 0; out.size() < 2; ++i) {
      Vertex v{side, Ordinal::Finite(i)};
      if (!(v.label < bound)) break;
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Edge GreedyBlocker::NextMove(const GameState& state, Player role, Rng&) {
  if (auto e = BestByThreat(state, Opponent(role), goal_)) return *e;
  return FallbackMove(state);
}

Edge GoalSeeker::NextMove(const GameState& state, Player role, Rng&) {
  if (auto e = BestByThreat(state, role, goal_, true)) return *e;
  return FallbackMove(state);
}

std::string NullAdversary::Name() const {
  if (offset_ == kDefaultOffset) return "null";
  return "null(offset=" + std::to_string(offset_) + ")";
}

Edge NullAdversary::NextMove(const GameState& state, Player, Rng&) {
  const Board& board = state.board();
  Side s1 = board.FirstSide();
  Side s2 = board.SecondSide();
  bool bipartite = board.IsBipartite();
  if (!board.IsLazy()) {
    std::uint64_t n1 = board.Bound(s1).FiniteValue();
    std::uint64_t n2 = board.Bound(s2).FiniteValue();
    for (std::uint64_t a = n1; a-- > 0;) {
      for (std::uint64_t b = n2; b-- > (bipartite ? 0 : a + 1);) {
        Edge e(Vertex{s1, Ordinal::Finite(a)}, Vertex{s2, Ordinal::Finite(b)});
        if (!state.IsClaimed(e)) return e;
      }
    }
    throw Exhausted("no unclaimed edge");
  }
  std::size_t step = state.History().size();
  if (step < last_step_ || next_a_ < offset_) {
    next_a_ = offset_;
    next_b_ = bipartite ? offset_ : offset_ + 1;
  }
  last_step_ = step;
  for (std::uint64_t a = next_a_;; ++a) {
    Vertex va{s1, Ordinal::Finite(a)};
    if (!(va.label < board.Bound(s1))) break;
    std::uint64_t b0 = a == next_a_ ? next_b_ : (bipartite ? offset_ : a + 1);
    for (std::uint64_t b = b0;; ++b) {
      Vertex vb{s2, Ordinal::Finite(b)};
      if (!(vb.label < board.Bound(s2))) break;
      Edge e(va, vb);
      if (!state.IsClaimed(e)) {
        next_a_ = a;
        next_b_ = b;
        return e;
      }
    }
  }
  return FallbackMove(state);
}

Edge ScriptedStrategy::NextMove(const GameState& state, Player, Rng&) {
  if (next_ < script_.size()) return script_[next_++];
  return FallbackMove(state);
}

}  // namespace mb
