#include "mb/combinators.h"

#include <algorithm>
#include <stdexcept>

namespace mb {

StealStrategy::StealStrategy(std::unique_ptr<Strategy> breaker)
    : breaker_(std::move(breaker)) {
  if (!breaker_) throw std::invalid_argument("steal needs a strategy");
}

std::string StealStrategy::Name() const {
  return "steal(" + breaker_->Name() + ")";
}

void StealStrategy::Sync(const GameState& state) {
  const std::vector<Move>& history = state.History();
  for (; synced_ < history.size(); ++synced_) {
    const Move& m = history[synced_];
    if (m.player == Player::kBreaker) virtual_->Claim(Player::kMaker, m.edge);
  }
}

Edge StealStrategy::NextMove(const GameState& state, Player role, Rng& rng) {
  if (role != Player::kMaker) {
    throw std::invalid_argument("steal plays Maker only");
  }
  if (!virtual_) {
    virtual_.emplace(state.board(), GameOptions{}, Discipline::kRelaxed);
  }
  Sync(state);
  if (Classify(state.CurrentTurnIndex()).kind != OrdinalKind::kSuccessor) {
    Edge free = FallbackMove(state);
    free_.insert(free);
    ++free_turns_;
    ++synced_;
    return free;
  }
  Edge e = breaker_->NextMove(*virtual_, Player::kBreaker, rng);
  virtual_->Claim(Player::kBreaker, e);
  ++synced_;
  if (free_.count(e) == 0) return e;
  Edge replacement = FallbackMove(state);
  free_.erase(e);
  free_.insert(replacement);
  remap_.emplace(e, replacement);
  return replacement;
}

void StealStrategy::Describe(Diagnostics& out) const {
  out["free_edges"] = static_cast<std::int64_t>(free_.size());
  out["collisions"] = static_cast<std::int64_t>(remap_.size());
}

void StealStrategy::Footer(nlohmann::ordered_json& out) const {
  breaker_->Footer(out);
}

std::vector<std::string> StealStrategy::CheckInvariants(
    const GameState& state) const {
  std::vector<std::string> out;
  if (!virtual_) return out;
  const std::vector<Move>& history = state.History();
  const std::set<Edge>& virtual_theirs = virtual_->Claims(Player::kMaker);
  const std::set<Edge>& virtual_ours = virtual_->Claims(Player::kBreaker);
  std::size_t upto = std::min(synced_, history.size());
  if (upto < audited_) {
    audited_ = audited_maker_ = audited_breaker_ = 0;
    unsettled_.clear();
  }
  bool maker_ok = true;
  for (; audited_ < upto; ++audited_) {
    const Move& m = history[audited_];
    if (m.player == Player::kBreaker) {
      ++audited_breaker_;
      if (!virtual_theirs.count(m.edge)) {
        out.push_back("real Breaker claim " + m.edge.ToString() +
                      " is not a virtual Maker claim");
      }
    } else {
      ++audited_maker_;
      if (!virtual_ours.count(m.edge)) unsettled_.push_back(m.edge);
    }
  }
  std::erase_if(unsettled_, [&](const Edge& e) {
    if (virtual_ours.count(e)) return true;
    if (!free_.count(e)) maker_ok = false;
    return false;
  });
  if (virtual_theirs.size() != audited_breaker_) {
    out.push_back("virtual Maker claims differ from the real Breaker claims");
  }
  for (const Edge& f : free_) {
    if (virtual_ours.count(f)) {
      maker_ok = false;
      out.push_back("free edge " + f.ToString() + " is also a virtual claim");
    }
  }
  // Every mirrored Maker move lies in the disjoint union of the virtual
  // claims and the free edges; equal sizes make the two sets equal.
  if (!maker_ok || virtual_ours.size() + free_.size() != audited_maker_) {
    out.push_back("real Maker claims differ from virtual claims plus free edges");
  }
  std::set<Edge> targets;
  for (const auto& [from, to] : remap_) {
    if (!targets.insert(to).second) {
      out.push_back("remap table is not injective at " + to.ToString());
    }
  }
  if (free_.size() != free_turns_) {
    out.push_back("free edge count differs from the number of free turns");
  }
  return out;
}

Embedding Embedding::Identity(const Board& board) {
  return Embedding(board, board, true);
}

Embedding Embedding::Canonical(const Board& bipartite) {
  if (bipartite.kind() == BoardKind::kBipartiteFinite) {
    std::uint64_t m = *bipartite.SideSize(Side::kLeft);
    std::uint64_t n = *bipartite.SideSize(Side::kRight);
    return Embedding(bipartite, Board::CompleteFinite(m + n), false);
  }
  if (bipartite.kind() == BoardKind::kBipartiteLazy &&
      bipartite.Bound(Side::kLeft) == Ordinal::Omega() &&
      bipartite.Bound(Side::kRight) == Ordinal::Omega()) {
    return Embedding(bipartite, Board::CompleteLazy(), false);
  }
  throw std::invalid_argument(
      "canonical embedding needs K_{m,n} or K_{w,w}, got " +
      bipartite.ShortName());
}

Embedding Embedding::Parse(const std::string& name, const Board& source) {
  if (name == "identity") return Identity(source);
  if (name == "canonical") return Canonical(source);
  throw std::invalid_argument("unknown embedding \"" + name +
                              "\" (expected identity or canonical)");
}

Vertex Embedding::Map(const Vertex& v) const {
  if (identity_) return v;
  if (!source_.Contains(v)) {
    throw std::invalid_argument("vertex " + v.ToString() + " not on " +
                                source_.ShortName());
  }
  std::uint64_t label = v.Index();
  if (source_.IsLazy()) {
    return Vertex::Plain(v.side == Side::kLeft ? 2 * label : 2 * label + 1);
  }
  std::uint64_t m = *source_.SideSize(Side::kLeft);
  return Vertex::Plain(v.side == Side::kLeft ? label : m + label);
}

std::optional<Vertex> Embedding::Preimage(const Vertex& v) const {
  if (identity_) {
    if (source_.Contains(v)) return v;
    return std::nullopt;
  }
  if (v.side != Side::kPlain || !v.IsFinite()) return std::nullopt;
  std::uint64_t x = v.Index();
  std::optional<Vertex> out;
  if (source_.IsLazy()) {
    out = x % 2 == 0 ? Vertex::Left(x / 2) : Vertex::Right(x / 2);
  } else {
    std::uint64_t m = *source_.SideSize(Side::kLeft);
    out = x < m ? Vertex::Left(x) : Vertex::Right(x - m);
  }
  if (!source_.Contains(*out)) return std::nullopt;
  return out;
}

std::optional<Edge> Embedding::Preimage(const Edge& e) const {
  std::optional<Vertex> a = Preimage(e.first());
  std::optional<Vertex> b = Preimage(e.second());
  if (!a || !b || *a == *b) return std::nullopt;
  Edge out(*a, *b);
  if (!source_.Contains(out)) return std::nullopt;
  return out;
}

RestrictStrategy::RestrictStrategy(std::unique_ptr<Strategy> inner,
                                   Embedding embedding)
    : inner_(std::move(inner)), embedding_(std::move(embedding)) {
  if (!inner_) throw std::invalid_argument("restrict needs a strategy");
}

std::string RestrictStrategy::Name() const {
  return "restrict(" + inner_->Name() + "," + embedding_.Name() + ")";
}

void RestrictStrategy::Sync(const GameState& state, Player role) {
  const std::vector<Move>& history = state.History();
  for (; synced_ < history.size(); ++synced_) {
    const Move& m = history[synced_];
    if (m.player != role) virtual_->Claim(m.player, embedding_.Map(m.edge));
  }
}

Edge RestrictStrategy::NextMove(const GameState& state, Player role,
                                Rng& rng) {
  if (!virtual_) {
    if (!(state.board() == embedding_.source())) {
      throw std::invalid_argument("embedding source " +
                                  embedding_.source().ShortName() +
                                  " does not match the board " +
                                  state.board().ShortName());
    }
    virtual_.emplace(embedding_.target(), state.options(),
                     Discipline::kRelaxed);
    role_ = role;
  }
  Sync(state, role);
  Edge e = inner_->NextMove(*virtual_, role, rng);
  virtual_->Claim(role, e);
  ++synced_;
  std::optional<Edge> pre = embedding_.Preimage(e);
  if (pre && !state.IsClaimed(*pre)) return *pre;
  ++fallbacks_;
  return FallbackMove(state);
}

void RestrictStrategy::Describe(Diagnostics& out) const {
  out["fallbacks"] = static_cast<std::int64_t>(fallbacks_);
}

void RestrictStrategy::Footer(nlohmann::ordered_json& out) const {
  inner_->Footer(out);
}

std::vector<std::string> RestrictStrategy::CheckInvariants(
    const GameState& state) const {
  std::vector<std::string> out;
  if (!virtual_) return out;
  Player opponent = Opponent(*role_);
  const std::vector<Move>& history = state.History();
  std::size_t upto = std::min(synced_, history.size());
  if (upto < audited_) {
    audited_ = 0;
    audited_opponent_ = 0;
  }
  for (; audited_ < upto; ++audited_) {
    if (history[audited_].player != opponent) continue;
    ++audited_opponent_;
    Edge e = embedding_.Map(history[audited_].edge);
    if (virtual_->Owner(e) != opponent) {
      out.push_back("real " + PlayerName(opponent) + " claim " + e.ToString() +
                    " missing from the virtual game");
    }
  }
  if (audited_opponent_ != virtual_->ClaimCount(opponent)) {
    out.push_back("virtual " + PlayerName(opponent) +
                  " claims exceed the mapped real claims");
  }
  return out;
}

}  // namespace mb
