#include "mb/goal.h"

#include <algorithm>
#include <charconv>
#include <iterator>

namespace mb {
namespace {

std::uint64_t ParsePositive(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("invalid " + std::string(what) + " \"" +
                                std::string(text) + "\"");
  }
  return value;
}

bool Adjacent(const GameState& state, Player owner, const Vertex& a,
              const Vertex& b) {
  return state.Neighbours(owner, a).count(b) > 0;
}

std::vector<Vertex> Intersect(const std::vector<Vertex>& sorted,
                              const std::set<Vertex>& other) {
  std::vector<Vertex> out;
  for (const Vertex& v : sorted) {
    if (other.count(v) > 0) out.push_back(v);
  }
  return out;
}

// Lexicographically least `need`-clique inside `candidates` (sorted).
bool ExtendClique(const GameState& state, Player owner,
                  const std::vector<Vertex>& candidates, std::size_t need,
                  std::vector<Vertex>& chosen) {
  if (need == 0) return true;
  for (std::size_t i = 0; i + need <= candidates.size(); ++i) {
    const Vertex& v = candidates[i];
    const std::set<Vertex>& nbrs = state.Neighbours(owner, v);
    if (nbrs.size() + 1 < need) continue;
    std::vector<Vertex> next;
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (nbrs.count(candidates[j]) > 0) next.push_back(candidates[j]);
    }
    if (next.size() + 1 < need) continue;
    chosen.push_back(v);
    if (ExtendClique(state, owner, next, need - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

// Chooses `need` more members of the first class from `candidates` (sorted),
// keeping `common` (the joint neighbourhood) of size >= `want`.
bool ExtendBiclass(const GameState& state, Player owner,
                   const std::vector<Vertex>& candidates, std::size_t start,
                   std::size_t need, const std::vector<Vertex>& common,
                   std::size_t want, std::vector<Vertex>& chosen,
                   std::vector<Vertex>& final_common) {
  if (need == 0) {
    final_common = common;
    return true;
  }
  for (std::size_t i = start; i + need <= candidates.size(); ++i) {
    const Vertex& v = candidates[i];
    std::vector<Vertex> next = Intersect(common, state.Neighbours(owner, v));
    if (next.size() < want) continue;
    chosen.push_back(v);
    if (ExtendBiclass(state, owner, candidates, i + 1, need - 1, next, want,
                      chosen, final_common)) {
      return true;
    }
    chosen.pop_back();
  }
  return false;
}

std::optional<Witness> FindClique(const GameState& state, Player owner,
                                  std::uint64_t s) {
  std::vector<Vertex> candidates;
  for (const Vertex& v : state.Touched(owner)) {
    if (state.Degree(owner, v) + 1 >= s) candidates.push_back(v);
  }
  std::vector<Vertex> chosen;
  if (!ExtendClique(state, owner, candidates, s, chosen)) return std::nullopt;
  return Witness{chosen, {}};
}

std::optional<Witness> FindBiclique(const GameState& state, Player owner,
                                    std::uint64_t a, std::uint64_t b) {
  bool bipartite = state.board().IsBipartite();
  std::vector<Vertex> candidates;
  for (const Vertex& v : state.Touched(owner)) {
    if (bipartite && v.side != Side::kLeft) continue;
    if (state.Degree(owner, v) >= b) candidates.push_back(v);
  }
  for (std::size_t i = 0; i + a <= candidates.size(); ++i) {
    const Vertex& v = candidates[i];
    const std::set<Vertex>& nbrs = state.Neighbours(owner, v);
    std::vector<Vertex> common(nbrs.begin(), nbrs.end());
    std::vector<Vertex> chosen{v};
    std::vector<Vertex> final_common;
    if (ExtendBiclass(state, owner, candidates, i + 1, a - 1, common, b,
                      chosen, final_common)) {
      final_common.resize(b);
      return Witness{chosen, final_common};
    }
  }
  return std::nullopt;
}

std::optional<Witness> BicliqueThrough(const GameState& state, Player owner,
                                       std::uint64_t a, std::uint64_t b,
                                       const Vertex& x, const Vertex& y) {
  // x joins the first class, y the second.
  std::vector<Vertex> pool;
  for (const Vertex& v : state.Neighbours(owner, x)) {
    if (v != y) pool.push_back(v);
  }
  if (pool.size() + 1 < b) return std::nullopt;
  std::vector<Vertex> candidates;
  for (const Vertex& v : state.Neighbours(owner, y)) {
    if (v != x) candidates.push_back(v);
  }
  std::vector<Vertex> chosen;
  std::vector<Vertex> final_common;
  if (!ExtendBiclass(state, owner, candidates, 0, a - 1, pool, b - 1, chosen,
                     final_common)) {
    return std::nullopt;
  }
  final_common.resize(b - 1);
  chosen.push_back(x);
  final_common.push_back(y);
  std::sort(chosen.begin(), chosen.end());
  std::sort(final_common.begin(), final_common.end());
  return Witness{chosen, final_common};
}

std::set<Ordinal> ExploredLabels(const GameState& state) {
  std::set<Ordinal> out;
  for (const Vertex& v : state.Explored()) out.insert(v.label);
  return out;
}

std::optional<Witness> FindClub(const GameState& state, Player owner,
                                const Ordinal& horizon) {
  if (state.board().IsBipartite()) return std::nullopt;
  std::set<Ordinal> explored = ExploredLabels(state);
  std::optional<Ordinal> checkpoint = ClubCheckpoint(explored, horizon);
  if (!checkpoint) return std::nullopt;
  std::size_t budget = 200000;
  for (const Vertex& top : state.Touched(owner)) {
    if (top.label < *checkpoint) continue;
    std::vector<Vertex> lower;
    for (const Vertex& v : state.Neighbours(owner, top)) {
      if (v < top) lower.push_back(v);
    }
    // Enumerate cliques inside `lower` in lexicographic order; each plus
    // `top` is a candidate club.
    std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> stack;
    stack.push_back({{}, lower});
    while (!stack.empty() && budget > 0) {
      --budget;
      auto [chosen, cands] = std::move(stack.back());
      stack.pop_back();
      if (!chosen.empty()) {
        std::vector<Ordinal> labels;
        for (const Vertex& v : chosen) labels.push_back(v.label);
        labels.push_back(top.label);
        if (ClubPredicate(labels, explored, horizon)) {
          chosen.push_back(top);
          return Witness{chosen, {}};
        }
      }
      for (std::size_t i = cands.size(); i-- > 0;) {
        std::vector<Vertex> next;
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
          if (Adjacent(state, owner, cands[i], cands[j])) {
            next.push_back(cands[j]);
          }
        }
        std::vector<Vertex> grown = chosen;
        grown.push_back(cands[i]);
        stack.push_back({std::move(grown), std::move(next)});
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Goal Goal::Clique(std::uint64_t s) {
  if (s < 2) throw std::invalid_argument("clique size must be >= 2");
  Goal g;
  g.kind = GoalKind::kClique;
  g.size = s;
  return g;
}

Goal Goal::Biclique(std::uint64_t a, std::uint64_t b) {
  if (a < 1 || b < 1) {
    throw std::invalid_argument("biclique classes must be non-empty");
  }
  Goal g;
  g.kind = GoalKind::kBiclique;
  g.left = a;
  g.right = b;
  return g;
}

Goal Goal::Club(Ordinal horizon) {
  Goal g;
  g.kind = GoalKind::kClub;
  g.horizon = std::move(horizon);
  return g;
}

Goal Goal::Parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("invalid goal \"" + std::string(text) +
                                "\" (expected clique:<s>, biclique:<a>x<b> "
                                "or club:<ordinal>)");
  }
  std::string_view kind = text.substr(0, colon);
  std::string_view arg = text.substr(colon + 1);
  if (kind == "clique") return Clique(ParsePositive(arg, "clique size"));
  if (kind == "biclique") {
    auto sep = arg.find_first_of("x,");
    if (sep == std::string_view::npos) {
      throw std::invalid_argument("invalid biclique goal \"" +
                                  std::string(text) + "\"");
    }
    return Biclique(ParsePositive(arg.substr(0, sep), "biclique class"),
                    ParsePositive(arg.substr(sep + 1), "biclique class"));
  }
  if (kind == "club") return Club(Ordinal::Parse(arg));
  throw std::invalid_argument("unknown goal kind \"" + std::string(kind) + "\"");
}

std::string Goal::ToString() const {
  switch (kind) {
    case GoalKind::kClique:
      return "clique:" + std::to_string(size);
    case GoalKind::kBiclique:
      return "biclique:" + std::to_string(left) + "x" + std::to_string(right);
    case GoalKind::kClub:
      return "club:" + horizon.ToString();
  }
  return "?";
}

std::uint64_t Goal::EdgesNeeded() const {
  switch (kind) {
    case GoalKind::kClique:
      return size * (size - 1) / 2;
    case GoalKind::kBiclique:
      return left * right;
    case GoalKind::kClub:
      return 1;
  }
  return 0;
}

std::optional<Witness> FindWitness(const GameState& state, Player owner,
                                   const Goal& goal) {
  switch (goal.kind) {
    case GoalKind::kClique:
      if (state.board().IsBipartite() && goal.size > 2) return std::nullopt;
      return FindClique(state, owner, goal.size);
    case GoalKind::kBiclique:
      return FindBiclique(state, owner, goal.left, goal.right);
    case GoalKind::kClub:
      return FindClub(state, owner, goal.horizon);
  }
  return std::nullopt;
}

std::optional<Witness> FindWitnessThrough(const GameState& state, Player owner,
                                          const Goal& goal, const Edge& edge) {
  const Vertex& x = edge.first();
  const Vertex& y = edge.second();
  switch (goal.kind) {
    case GoalKind::kClique: {
      if (state.board().IsBipartite() && goal.size > 2) return std::nullopt;
      std::vector<Vertex> common;
      const std::set<Vertex>& ny = state.Neighbours(owner, y);
      for (const Vertex& v : state.Neighbours(owner, x)) {
        if (v != y && ny.count(v) > 0) common.push_back(v);
      }
      std::vector<Vertex> chosen;
      if (!ExtendClique(state, owner, common, goal.size - 2, chosen)) {
        return std::nullopt;
      }
      chosen.push_back(x);
      chosen.push_back(y);
      std::sort(chosen.begin(), chosen.end());
      return Witness{chosen, {}};
    }
    case GoalKind::kBiclique: {
      if (auto w = BicliqueThrough(state, owner, goal.left, goal.right, x, y)) {
        return w;
      }
      if (!state.board().IsBipartite()) {
        return BicliqueThrough(state, owner, goal.left, goal.right, y, x);
      }
      return std::nullopt;
    }
    case GoalKind::kClub:
      return FindClub(state, owner, goal.horizon);
  }
  return std::nullopt;
}

bool VerifyWitness(const GameState& state, Player owner, const Goal& goal,
                   const Witness& witness) {
  auto all_owned = [&](const std::vector<Vertex>& a,
                       const std::vector<Vertex>& b, bool within) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = within ? i + 1 : 0; j < b.size(); ++j) {
        if (a[i] == b[j]) return false;
        if (state.Owner(Edge(a[i], b[j])) != owner) return false;
      }
    }
    return true;
  };
  auto distinct = [](const std::vector<Vertex>& v) {
    return std::adjacent_find(v.begin(), v.end()) == v.end() &&
           std::is_sorted(v.begin(), v.end());
  };
  switch (goal.kind) {
    case GoalKind::kClique:
      return witness.first.size() == goal.size && witness.second.empty() &&
             distinct(witness.first) &&
             all_owned(witness.first, witness.first, true);
    case GoalKind::kBiclique: {
      if (witness.first.size() != goal.left ||
          witness.second.size() != goal.right || !distinct(witness.first) ||
          !distinct(witness.second)) {
        return false;
      }
      if (state.board().IsBipartite()) {
        for (const Vertex& v : witness.first) {
          if (v.side != Side::kLeft) return false;
        }
        for (const Vertex& v : witness.second) {
          if (v.side != Side::kRight) return false;
        }
      }
      return all_owned(witness.first, witness.second, false);
    }
    case GoalKind::kClub: {
      if (!witness.second.empty() || !distinct(witness.first) ||
          !all_owned(witness.first, witness.first, true)) {
        return false;
      }
      std::vector<Ordinal> labels;
      for (const Vertex& v : witness.first) labels.push_back(v.label);
      return ClubPredicate(labels, ExploredLabels(state), goal.horizon);
    }
  }
  return false;
}

std::optional<Ordinal> ClubCheckpoint(const std::set<Ordinal>& explored,
                                      const Ordinal& horizon) {
  std::optional<Ordinal> largest;
  std::optional<Ordinal> largest_limit;
  for (const Ordinal& e : explored) {
    if (horizon < e) break;
    largest = e;
    if (Classify(e).kind == OrdinalKind::kLimit) largest_limit = e;
  }
  return largest_limit ? largest_limit : largest;
}

bool ClubPredicate(const std::vector<Ordinal>& s,
                   const std::set<Ordinal>& explored, const Ordinal& horizon) {
  if (s.size() < 2) return false;
  std::set<Ordinal> members(s.begin(), s.end());
  if (members.size() != s.size()) return false;
  for (const Ordinal& x : members) {
    if (explored.count(x) == 0) return false;
  }
  std::optional<Ordinal> checkpoint = ClubCheckpoint(explored, horizon);
  if (!checkpoint) return false;
  const Ordinal& top = *members.rbegin();
  if (top < *checkpoint) return false;
  // Closure: a limit lambda <= top with max(s & lambda) == max(explored &
  // lambda) must itself be in s. Between consecutive explored labels e < f the
  // only candidate is the first limit after e, and it can be in s only if it
  // equals f.
  for (auto it = explored.begin(); it != explored.end(); ++it) {
    auto next = std::next(it);
    if (next == explored.end() || top < *next) break;
    if (members.count(*it) == 0) continue;
    Ordinal limit = NextLimitAfter(*it);
    if (*next < limit) continue;
    if (!(limit == *next) || members.count(*next) == 0) return false;
  }
  return true;
}

}  // namespace mb
