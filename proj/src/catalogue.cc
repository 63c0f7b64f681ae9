#include "mb/catalogue.h"

#include <algorithm>
#include <functional>

namespace mb {

using Json = nlohmann::ordered_json;

Catalogue::Catalogue(std::vector<std::vector<std::uint64_t>> sets,
                     std::optional<std::uint64_t> slots)
    : sets_(std::move(sets)) {
  if (sets_.empty()) throw CatalogueError("catalogue is empty");
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    std::vector<std::uint64_t>& s = sets_[i];
    std::sort(s.begin(), s.end());
    if (s.empty()) throw CatalogueError("catalogue set " + std::to_string(i) + " is empty");
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw CatalogueError("catalogue set " + std::to_string(i) +
                           " repeats a label");
    }
    if (s.size() != sets_[0].size()) {
      throw CatalogueError("catalogue sets differ in size");
    }
  }
  slots_ = slots.value_or(sets_.size());
  if (slots_ < sets_.size()) {
    throw CatalogueError("slot count " + std::to_string(slots_) +
                         " is below the catalogue size " +
                         std::to_string(sets_.size()));
  }
}

Catalogue Catalogue::AllSubsets(std::uint64_t k, std::uint64_t m) {
  if (k == 0 || k > m) {
    throw CatalogueError("need 1 <= k <= m, got k=" + std::to_string(k) +
                         " m=" + std::to_string(m));
  }
  std::vector<std::vector<std::uint64_t>> sets;
  std::vector<std::uint64_t> s(k);
  for (std::uint64_t i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    sets.push_back(s);
    std::uint64_t i = k;
    while (i > 0 && s[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::uint64_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return Catalogue(std::move(sets));
}

std::size_t Catalogue::SlotTarget(std::uint64_t alpha,
                                  std::uint64_t gamma) const {
  std::uint64_t top = std::min<std::uint64_t>(alpha, sets_.size() - 1);
  return static_cast<std::size_t>(gamma % (top + 1));
}

std::uint64_t Catalogue::Range() const {
  std::uint64_t out = 0;
  for (const auto& s : sets_) out = std::max(out, s.back() + 1);
  return out;
}

Json Catalogue::ToJson() const {
  Json j = Json::object();
  j["k"] = k();
  j["slots"] = slots_;
  j["sets"] = sets_;
  return j;
}

Catalogue Catalogue::FromJson(const Json& j) {
  try {
    return Catalogue(j.at("sets").get<std::vector<std::vector<std::uint64_t>>>(),
                     j.at("slots").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw CatalogueError(std::string("bad catalogue JSON: ") + e.what());
  }
}

BreakerCatalogueStrategy::BreakerCatalogueStrategy(Catalogue catalogue,
                                                   std::string name)
    : catalogue_(std::move(catalogue)), name_(std::move(name)) {
  if (name_.empty()) {
    name_ = "catalogue(c=" + std::to_string(catalogue_.size()) + ")";
  }
}

std::string BreakerCatalogueStrategy::Name() const { return name_; }

std::uint64_t BreakerCatalogueStrategy::DownwardCount(
    std::uint64_t alpha) const {
  auto it = downward_.find(alpha);
  return it == downward_.end() ? 0 : it->second;
}

void BreakerCatalogueStrategy::Sync(const GameState& state) {
  const std::vector<Move>& history = state.History();
  for (; synced_ < history.size(); ++synced_) {
    const Move& m = history[synced_];
    if (m.player != Player::kMaker) continue;
    const Vertex& lo = m.edge.first();
    const Vertex& hi = m.edge.second();
    if (!lo.IsFinite() || !hi.IsFinite()) continue;
    std::uint64_t alpha = hi.Index();
    pending_.push_back(Pending{alpha, downward_[alpha]++});
  }
}

Edge BreakerCatalogueStrategy::NextMove(const GameState& state, Player role,
                                        Rng& rng) {
  (void)rng;
  if (role != Player::kBreaker) {
    throw std::invalid_argument("catalogue strategy plays Breaker only");
  }
  if (state.board().IsBipartite()) {
    throw std::invalid_argument(
        "catalogue strategy needs a complete board (wrap it in restrict)");
  }
  Sync(state);
  if (pending_.empty()) return FallbackMove(state);
  Pending p = pending_.front();
  pending_.erase(pending_.begin());

  FireRecord fire;
  fire.step = state.History().size();
  fire.alpha = p.alpha;
  fire.gamma = p.gamma;
  if (p.gamma < catalogue_.slots()) {
    fire.target = catalogue_.SlotTarget(p.alpha, p.gamma);
    Vertex a = Vertex::Plain(p.alpha);
    for (std::uint64_t delta : catalogue_.Set(*fire.target)) {
      if (delta == p.alpha) continue;
      Edge e(Vertex::Plain(delta), a);
      if (state.board().Contains(e) && !state.IsClaimed(e)) {
        fire.delta = delta;
        fire.played = e;
        break;
      }
    }
  }
  if (!fire.delta) fire.played = FallbackMove(state);
  fires_.push_back(fire);
  return fire.played;
}

void BreakerCatalogueStrategy::Describe(Diagnostics& out) const {
  std::int64_t blocked = 0;
  for (const FireRecord& f : fires_) blocked += f.delta ? 1 : 0;
  out["fires"] = static_cast<std::int64_t>(fires_.size());
  out["blocks"] = blocked;
  out["catalogue_size"] = static_cast<std::int64_t>(catalogue_.size());
}

void BreakerCatalogueStrategy::Footer(Json& out) const {
  out["catalogue"] = catalogue_.ToJson();
  Json fires = Json::array();
  for (const FireRecord& f : fires_) {
    Json j = Json::object();
    j["step"] = f.step;
    j["alpha"] = f.alpha;
    j["gamma"] = f.gamma;
    j["target"] = f.target ? Json(*f.target) : Json(nullptr);
    j["delta"] = f.delta ? Json(*f.delta) : Json(nullptr);
    fires.push_back(j);
  }
  out["fires"] = fires;
}

std::vector<std::string> BreakerCatalogueStrategy::CheckInvariants(
    const GameState& state) const {
  std::vector<std::string> out;
  const std::vector<Move>& history = state.History();
  if (history.size() < audited_moves_ || audited_fires_ > fires_.size()) {
    audited_fires_ = 0;
    audited_moves_ = 0;
  }
  auto tag = [](const FireRecord& f) {
    return "fire at step " + std::to_string(f.step) + ": ";
  };
  // The finite consequence: a set that was answered at alpha is never
  // fully joined to alpha by Maker.
  auto check_join = [&](const FireRecord& f) {
    for (std::uint64_t d : catalogue_.Set(*f.target)) {
      if (d == f.alpha) continue;
      Edge e(Vertex::Plain(d), Vertex::Plain(f.alpha));
      if (state.Owner(e) != Player::kMaker) return;
    }
    out.push_back(tag(f) + "set " + std::to_string(*f.target) +
                  " is fully Maker-joined to " + std::to_string(f.alpha));
  };
  auto touches = [](const Edge& e, std::uint64_t v) {
    return (e.first().IsFinite() && e.first().Index() == v) ||
           (e.second().IsFinite() && e.second().Index() == v);
  };
  for (std::size_t i = audited_moves_; i < history.size(); ++i) {
    if (history[i].player != Player::kMaker) continue;
    for (std::size_t j = 0; j < audited_fires_; ++j) {
      const FireRecord& f = fires_[j];
      if (f.delta && touches(history[i].edge, f.alpha)) check_join(f);
    }
  }
  audited_moves_ = history.size();
  for (; audited_fires_ < fires_.size(); ++audited_fires_) {
    const FireRecord& f = fires_[audited_fires_];
    if (f.step >= history.size()) break;
    if (history[f.step].edge != f.played) {
      out.push_back(tag(f) + "history has a different Breaker move");
    }
    if (!f.delta) continue;
    const std::vector<std::uint64_t>& set = catalogue_.Set(*f.target);
    if (!std::binary_search(set.begin(), set.end(), *f.delta) ||
        f.played != Edge(Vertex::Plain(*f.delta), Vertex::Plain(f.alpha))) {
      out.push_back(tag(f) + "played edge is outside A x {alpha}");
    }
    if (state.Owner(f.played) != Player::kBreaker) {
      out.push_back(tag(f) + "played edge is not Breaker's");
    }
    check_join(f);
  }
  return out;
}

namespace {

using Partial = std::vector<std::optional<Colour>>;

bool Split(const std::vector<std::uint64_t>& set, const Partial& colours) {
  bool red = false;
  bool blue = false;
  for (std::uint64_t x : set) {
    if (!colours[x]) continue;
    (*colours[x] == Colour::kRed ? red : blue) = true;
  }
  return red && blue;
}

std::optional<Partial> Greedy(const Catalogue& cat, std::size_t top,
                              std::uint64_t u) {
  Partial colours(u);
  for (std::size_t beta = 0; beta <= top; ++beta) {
    const std::vector<std::uint64_t>& set = cat.Set(beta);
    if (Split(set, colours)) continue;
    std::optional<Colour> seen;
    std::vector<std::uint64_t> open;
    for (std::uint64_t x : set) {
      if (colours[x]) {
        seen = colours[x];
      } else {
        open.push_back(x);
      }
    }
    if (seen) {
      if (open.empty()) return std::nullopt;
      colours[open[0]] = Flip(*seen);
    } else {
      colours[open[0]] = Colour::kRed;
      colours[open[1]] = Colour::kBlue;
    }
  }
  return colours;
}

constexpr std::uint64_t kSearchNodeLimit = 20000000;

std::optional<Partial> Exact(const Catalogue& cat, std::size_t top,
                             std::uint64_t u) {
  // Constraints grouped by their largest label, checked once it is coloured.
  std::vector<std::vector<std::size_t>> closing(u);
  std::vector<std::uint64_t> labels;
  for (std::size_t beta = 0; beta <= top; ++beta) {
    closing[cat.Set(beta).back()].push_back(beta);
    for (std::uint64_t x : cat.Set(beta)) labels.push_back(x);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  Partial colours(u);
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == labels.size()) return true;
    if (++nodes > kSearchNodeLimit) {
      throw Infeasible("exact colouring search exceeded " +
                       std::to_string(kSearchNodeLimit) + " nodes");
    }
    std::uint64_t x = labels[i];
    for (Colour c : {Colour::kRed, Colour::kBlue}) {
      // The first label's colour is free up to symmetry.
      if (i == 0 && c == Colour::kBlue) break;
      colours[x] = c;
      bool ok = std::all_of(closing[x].begin(), closing[x].end(),
                            [&](std::size_t b) { return Split(cat.Set(b), colours); });
      if (ok && place(i + 1)) return true;
    }
    colours[x].reset();
    return false;
  };
  if (!place(0)) return std::nullopt;
  return colours;
}

}  // namespace

Colouring BuildAvoidingColouring(const Catalogue& catalogue, std::uint64_t u,
                                 std::uint64_t n) {
  if (catalogue.Range() > u) {
    throw CatalogueError("catalogue uses label " +
                         std::to_string(catalogue.Range() - 1) +
                         " outside the left side of size " + std::to_string(u));
  }
  Colouring out(u, n);
  std::map<std::size_t, Partial> by_top;
  for (std::uint64_t alpha = 0; alpha < n; ++alpha) {
    std::size_t top = std::min<std::uint64_t>(alpha, catalogue.size() - 1);
    auto it = by_top.find(top);
    if (it == by_top.end()) {
      for (std::size_t beta = 0; beta <= top; ++beta) {
        if (catalogue.Set(beta).size() < 2) {
          throw Infeasible("set " + std::to_string(beta) +
                           " has one element and cannot carry both colours");
        }
      }
      std::optional<Partial> colours = Greedy(catalogue, top, u);
      if (!colours) colours = Exact(catalogue, top, u);
      if (!colours) {
        throw Infeasible("no colouring splits sets 0.." + std::to_string(top) +
                         " (needed from right vertex " + std::to_string(alpha) +
                         ")");
      }
      it = by_top.emplace(top, std::move(*colours)).first;
    }
    for (std::uint64_t l = 0; l < u; ++l) {
      out.Set(l, alpha, it->second[l].value_or(Colour::kRed));
    }
  }
  return out;
}

std::vector<std::string> CheckAvoiding(const Catalogue& catalogue,
                                       const Colouring& colouring) {
  std::vector<std::string> out;
  for (std::uint64_t alpha = 0; alpha < colouring.right_size(); ++alpha) {
    std::size_t top = std::min<std::uint64_t>(alpha, catalogue.size() - 1);
    for (std::size_t beta = 0; beta <= top; ++beta) {
      bool red = false;
      bool blue = false;
      for (std::uint64_t x : catalogue.Set(beta)) {
        if (x >= colouring.left_size()) continue;
        (colouring.At(x, alpha) == Colour::kRed ? red : blue) = true;
      }
      if (!(red && blue)) {
        out.push_back(std::to_string(alpha) + "," + std::to_string(beta));
      }
    }
  }
  return out;
}

}  // namespace mb
