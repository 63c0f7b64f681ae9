#include "mb/bipartite.h"

#include <algorithm>
#include <map>

#include "mb/transcript.h"

namespace mb {

std::optional<std::uint64_t> LeftPool::Size() const {
  if (!bound) return std::nullopt;
  std::uint64_t inside = 0;
  for (std::uint64_t u : excluded) {
    if (u < *bound) ++inside;
  }
  return *bound - inside;
}

bool LeftPool::Includes(const LeftPool& other) const {
  if (bound && (!other.bound || *other.bound > *bound)) return false;
  for (std::uint64_t u : excluded) {
    if (other.Contains(u)) return false;
  }
  return true;
}

Json PhaseToJson(const PhaseRecord& phase) {
  Json j = Json::object();
  j["index"] = phase.index;
  j["center"] = VertexToJson(phase.center);
  j["claimed"] = phase.claimed;
  Json pool = Json::object();
  pool["bound"] = phase.pool.bound ? Json(*phase.pool.bound) : Json("w");
  pool["excluded"] = phase.pool.excluded;
  j["pool"] = pool;
  j["startStep"] = phase.start_step;
  j["exhausted"] = phase.exhausted;
  return j;
}

PhaseRecord PhaseFromJson(const Json& j) {
  PhaseRecord out;
  out.index = j.at("index").get<std::size_t>();
  out.center = VertexFromJson(j.at("center"));
  out.claimed = j.at("claimed").get<std::vector<std::uint64_t>>();
  const Json& bound = j.at("pool").at("bound");
  if (bound.is_number()) out.pool.bound = bound.get<std::uint64_t>();
  out.pool.excluded = j.at("pool").at("excluded").get<std::set<std::uint64_t>>();
  out.start_step = j.at("startStep").get<std::size_t>();
  out.exhausted = j.at("exhausted").get<bool>();
  return out;
}

BipartiteMakerStrategy::BipartiteMakerStrategy(std::uint64_t phase_length)
    : phase_length_(phase_length) {
  if (phase_length == 0) {
    throw std::invalid_argument("phase length must be at least 1");
  }
}

std::string BipartiteMakerStrategy::Name() const {
  return "bipartite(p=" + std::to_string(phase_length_) + ")";
}

bool BipartiteMakerStrategy::PhaseOpen() const {
  return !phases_.empty() && !phases_.back().exhausted &&
         phases_.back().claimed.size() < phase_length_;
}

void BipartiteMakerStrategy::OpenPhase(const GameState& state) {
  std::optional<Vertex> v = state.SmallestFresh(Side::kRight);
  if (!v) {
    saturated_ = true;
    return;
  }
  PhaseRecord phase;
  phase.index = phases_.size();
  phase.center = *v;
  phase.start_step = state.History().size();
  const Ordinal& left = state.board().Bound(Side::kLeft);
  if (left.IsFinite()) phase.pool.bound = left.FiniteValue();
  if (!phases_.empty()) phase.pool.excluded = phases_.back().pool.excluded;
  for (const PhaseRecord& prior : phases_) {
    for (const Vertex& u : state.Neighbours(Player::kBreaker, prior.center)) {
      if (u.IsFinite()) phase.pool.excluded.insert(u.Index());
    }
  }
  phases_.push_back(std::move(phase));
}

std::uint64_t BipartiteMakerStrategy::PickLeft(const GameState& state) const {
  const PhaseRecord& phase = phases_.back();
  // Only finitely many labels are claimed or excluded, so on an unbounded
  // side the scan ends within that many steps.
  std::uint64_t limit = phase.pool.bound
                            ? *phase.pool.bound
                            : phase.pool.excluded.size() +
                                  state.Degree(Player::kMaker, phase.center) +
                                  state.Degree(Player::kBreaker, phase.center) + 1;
  for (std::uint64_t u = 0; u < limit; ++u) {
    if (!phase.pool.Contains(u)) continue;
    if (!state.IsClaimed(Edge(Vertex::Left(u), phase.center))) return u;
  }
  throw PoolExhausted("pool of phase " + std::to_string(phase.index) +
                      " has no label free at " + phase.center.ToString());
}

Edge BipartiteMakerStrategy::NextMove(const GameState& state, Player role,
                                      Rng& rng) {
  (void)rng;
  if (role != Player::kMaker) {
    throw std::invalid_argument("bipartite strategy plays Maker only");
  }
  if (!state.board().IsBipartite()) {
    throw std::invalid_argument("bipartite strategy needs a bipartite board");
  }
  if (!PhaseOpen()) OpenPhase(state);
  if (saturated_ && !PhaseOpen()) {
    ++fallbacks_;
    return FallbackMove(state);
  }
  try {
    std::uint64_t u = PickLeft(state);
    phases_.back().claimed.push_back(u);
    return Edge(Vertex::Left(u), phases_.back().center);
  } catch (const PoolExhausted&) {
    phases_.back().exhausted = true;
    ++exhaustions_;
    ++fallbacks_;
    return FallbackMove(state);
  }
}

void BipartiteMakerStrategy::Describe(Diagnostics& out) const {
  out["phases"] = static_cast<std::int64_t>(phases_.size());
  out["pool_exhaustions"] = static_cast<std::int64_t>(exhaustions_);
  out["fallbacks"] = static_cast<std::int64_t>(fallbacks_);
  if (!phases_.empty()) {
    if (auto size = phases_.back().pool.Size()) {
      out["pool_size"] = static_cast<std::int64_t>(*size);
    }
    out["pool_excluded"] =
        static_cast<std::int64_t>(phases_.back().pool.excluded.size());
  }
}

void BipartiteMakerStrategy::Footer(Json& out) const {
  Json phases = Json::array();
  for (const PhaseRecord& p : phases_) phases.push_back(PhaseToJson(p));
  out["phaseLength"] = phase_length_;
  out["phases"] = phases;
}

std::vector<std::string> BipartiteMakerStrategy::CheckInvariants(
    const GameState& state) const {
  std::vector<std::string> out;
  const std::vector<Move>& history = state.History();
  for (std::size_t i = 0; i < phases_.size(); ++i) {
    const PhaseRecord& phase = phases_[i];
    std::string tag = "phase " + std::to_string(i) + ": ";
    if (phase.center.side != Side::kRight) {
      out.push_back(tag + "centre is not a Right vertex");
    }
    if (phase.claimed.size() > phase_length_ ||
        (phase.claimed.size() < phase_length_ && !phase.exhausted &&
         i + 1 < phases_.size())) {
      out.push_back(tag + "claimed " + std::to_string(phase.claimed.size()) +
                    " endpoints with phase length " +
                    std::to_string(phase_length_));
    }
    for (std::uint64_t u : phase.claimed) {
      if (!phase.pool.Contains(u)) {
        out.push_back(tag + "endpoint " + std::to_string(u) + " not in the pool");
      }
      Edge e(Vertex::Left(u), phase.center);
      if (state.Owner(e) != Player::kMaker) {
        out.push_back(tag + e.ToString() + " is not a Maker edge");
      }
    }
    // Freshness and the exact pool, recomputed from the history prefix.
    std::set<std::uint64_t> stolen;
    std::set<Vertex> prior;
    for (std::size_t j = 0; j < i; ++j) prior.insert(phases_[j].center);
    for (std::size_t s = 0; s < phase.start_step && s < history.size(); ++s) {
      const Edge& e = history[s].edge;
      if (e.Touches(phase.center)) {
        out.push_back(tag + "centre was not fresh at phase start");
      }
      if (history[s].player == Player::kBreaker && prior.count(e.second()) &&
          e.first().IsFinite()) {
        stolen.insert(e.first().Index());
      }
    }
    if (stolen != phase.pool.excluded) {
      out.push_back(tag + "pool excludes something other than the stolen "
                    "endpoints at prior centres");
    }
    if (i > 0 && !phases_[i - 1].pool.Includes(phase.pool)) {
      out.push_back(tag + "pool is not nested in the previous pool");
    }
  }
  return out;
}

namespace {

// Calls f on each k-subset of `items` in lexicographic order until it returns
// true.
template <typename F>
bool ForEachSubset(const std::vector<std::uint64_t>& items, std::uint64_t k,
                   F&& f) {
  if (k > items.size()) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::uint64_t> pick(k);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) pick[i] = items[idx[i]];
    if (f(pick)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double Binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

std::optional<Witness> ExtractBiclique(const std::vector<PhaseRecord>& phases,
                                       std::uint64_t a, std::uint64_t b,
                                       const GameState* verify,
                                       std::uint64_t exhaustive_limit) {
  if (b > phases.size()) return std::nullopt;
  std::vector<std::set<std::uint64_t>> sets;
  std::map<std::uint64_t, std::size_t> frequency;
  for (const PhaseRecord& p : phases) {
    sets.emplace_back(p.claimed.begin(), p.claimed.end());
    for (std::uint64_t u : sets.back()) ++frequency[u];
  }
  std::vector<std::uint64_t> labels;
  for (const auto& [u, n] : frequency) {
    if (n >= b) labels.push_back(u);
  }

  std::optional<Witness> found;
  auto attempt = [&](const std::vector<std::uint64_t>& pick) {
    Witness w;
    for (std::uint64_t u : pick) w.first.push_back(Vertex::Left(u));
    for (std::size_t i = 0; i < phases.size() && w.second.size() < b; ++i) {
      bool all = std::all_of(pick.begin(), pick.end(), [&](std::uint64_t u) {
        return sets[i].count(u) > 0;
      });
      if (!all) continue;
      if (verify) {
        bool owned = std::all_of(pick.begin(), pick.end(), [&](std::uint64_t u) {
          return verify->Owner(Edge(Vertex::Left(u), phases[i].center)) ==
                 Player::kMaker;
        });
        if (!owned) continue;
      }
      w.second.push_back(phases[i].center);
    }
    if (w.second.size() < b) return false;
    std::sort(w.first.begin(), w.first.end());
    std::sort(w.second.begin(), w.second.end());
    if (verify && !VerifyWitness(*verify, Player::kMaker,
                                 Goal::Biclique(a, b), w)) {
      return false;
    }
    found = std::move(w);
    return true;
  };

  if (Binomial(labels.size(), a) <= static_cast<double>(exhaustive_limit)) {
    ForEachSubset(labels, a, attempt);
    return found;
  }
  std::vector<std::uint64_t> ranked = labels;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::uint64_t x, std::uint64_t y) {
                     return frequency[x] > frequency[y];
                   });
  ranked.resize(a);
  std::sort(ranked.begin(), ranked.end());
  attempt(ranked);
  return found;
}

}  // namespace mb
