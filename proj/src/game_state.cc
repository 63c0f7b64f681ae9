#include "mb/game_state.h"

#include <algorithm>
#include <charconv>

namespace mb {
namespace {

const std::set<Vertex>& EmptyVertexSet() {
  static const std::set<Vertex> kEmpty;
  return kEmpty;
}

}  // namespace

TurnSchedule TurnSchedule::Phased(std::uint64_t phase_length) {
  if (phase_length == 0) {
    throw std::invalid_argument("phase length must be positive");
  }
  return TurnSchedule(phase_length);
}

TurnSchedule TurnSchedule::Parse(std::string_view text) {
  if (text == "plain") return Plain();
  constexpr std::string_view kPrefix = "phased:";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    std::string_view digits = text.substr(kPrefix.size());
    std::uint64_t p = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && p > 0) {
      return Phased(p);
    }
  }
  throw std::invalid_argument("invalid schedule \"" + std::string(text) +
                              "\" (expected plain or phased:<p>)");
}

Ordinal TurnSchedule::IndexOf(std::uint64_t turn) const {
  if (IsPlain()) return Ordinal::Finite(turn);
  std::uint64_t block = turn / phase_length_;
  std::uint64_t offset = turn % phase_length_;
  Ordinal index = Ordinal::Finite(offset);
  if (block > 0) index = Add(Ordinal::Power(Ordinal::Finite(1), block), index);
  return index;
}

std::string TurnSchedule::ToString() const {
  if (IsPlain()) return "plain";
  return "phased:" + std::to_string(phase_length_);
}

GameState::GameState(Board board, GameOptions options, Discipline discipline)
    : board_(std::move(board)),
      options_(std::move(options)),
      discipline_(discipline) {
  if (options_.bias < 1) throw std::invalid_argument("bias must be >= 1");
}

Player GameState::ToMove() const {
  std::uint64_t k = static_cast<std::uint64_t>(options_.bias);
  std::uint64_t r = history_.size() % (k + 1);
  if (options_.breaker_first) return r == k ? Player::kMaker : Player::kBreaker;
  return r == 0 ? Player::kMaker : Player::kBreaker;
}

std::uint64_t GameState::CurrentTurn() const {
  return history_.size() / (static_cast<std::uint64_t>(options_.bias) + 1);
}

Ordinal GameState::CurrentTurnIndex() const {
  return options_.schedule.IndexOf(CurrentTurn());
}

bool GameState::AtTurnBoundary() const {
  return history_.size() % (static_cast<std::uint64_t>(options_.bias) + 1) ==
         0;
}

void GameState::CheckClaim(Player player, const Edge& edge) const {
  if (!board_.Contains(edge)) {
    throw IllegalMove("edge " + edge.ToString() + " is not on board " +
                      board_.ShortName());
  }
  if (auto owner = Owner(edge)) {
    throw IllegalMove("edge " + edge.ToString() + " already claimed by " +
                      PlayerName(*owner));
  }
  if (discipline_ == Discipline::kStrict && player != ToMove()) {
    throw IllegalMove(PlayerName(player) + " moved out of turn at step " +
                      std::to_string(history_.size()));
  }
}

void GameState::Claim(Player player, const Edge& edge) {
  CheckClaim(player, edge);
  Move move{CurrentTurnIndex(), history_.size(), player, edge};
  if (player == Player::kMaker) {
    maker_claims_.insert(edge);
    maker_adj_[edge.first()].insert(edge.second());
    maker_adj_[edge.second()].insert(edge.first());
  } else {
    breaker_claims_.insert(edge);
    breaker_adj_[edge.first()].insert(edge.second());
    breaker_adj_[edge.second()].insert(edge.first());
  }
  for (const Vertex& v : {edge.first(), edge.second()}) {
    explored_.insert(v);
    std::uint64_t& floor = fresh_floor_[static_cast<std::size_t>(v.side)];
    while (explored_.count(Vertex{v.side, Ordinal::Finite(floor)})) ++floor;
  }
  AdvanceRowFloor(edge);
  history_.push_back(std::move(move));
}

bool GameState::IsClaimed(const Edge& edge) const {
  return maker_claims_.count(edge) > 0 || breaker_claims_.count(edge) > 0;
}

std::optional<Player> GameState::Owner(const Edge& edge) const {
  if (maker_claims_.count(edge) > 0) return Player::kMaker;
  if (breaker_claims_.count(edge) > 0) return Player::kBreaker;
  return std::nullopt;
}

bool GameState::IsFresh(const Vertex& v) const {
  return explored_.count(v) == 0;
}

const std::set<Vertex>& GameState::Neighbours(Player p, const Vertex& v) const {
  const auto& adj = p == Player::kMaker ? maker_adj_ : breaker_adj_;
  auto it = adj.find(v);
  return it == adj.end() ? EmptyVertexSet() : it->second;
}

std::vector<Vertex> GameState::Touched(Player p) const {
  const auto& adj = p == Player::kMaker ? maker_adj_ : breaker_adj_;
  std::vector<Vertex> out;
  out.reserve(adj.size());
  for (const auto& [v, nbrs] : adj) out.push_back(v);
  return out;
}

bool GameState::Exhausted() const {
  auto count = board_.EdgeCount();
  if (!count) return false;
  return maker_claims_.size() + breaker_claims_.size() >= *count;
}

void GameState::AdvanceRowFloor(const Edge& edge) {
  if (!edge.first().IsFinite() || !edge.second().IsFinite()) return;
  // Rows are first-side vertices; in a complete board the row of {a, b} with
  // a < b is a.
  const Vertex& row = edge.first();
  std::uint64_t partner = edge.second().Index();
  if (board_.IsBipartite() && row.side != Side::kLeft) return;
  std::uint64_t start = board_.IsBipartite() ? 0 : row.Index() + 1;
  auto [it, inserted] = row_floor_.emplace(row.Index(), start);
  if (it->second != partner) return;
  Side other = board_.SecondSide();
  const std::set<Vertex>& mk = Neighbours(Player::kMaker, row);
  const std::set<Vertex>& bk = Neighbours(Player::kBreaker, row);
  for (;;) {
    Vertex v{other, Ordinal::Finite(it->second)};
    if (!mk.count(v) && !bk.count(v)) break;
    ++it->second;
  }
}

std::optional<Vertex> GameState::SmallestFreeNeighbourSlot(
    const Vertex& a, Side other_side, std::uint64_t start) const {
  const Ordinal& bound = board_.Bound(other_side);
  if (auto it = row_floor_.find(a.Index()); it != row_floor_.end()) {
    start = std::max(start, it->second);
  }
  const std::set<Vertex>& mk = Neighbours(Player::kMaker, a);
  const std::set<Vertex>& bk = Neighbours(Player::kBreaker, a);
  for (std::uint64_t b = start;; ++b) {
    Vertex candidate{other_side, Ordinal::Finite(b)};
    if (!(candidate.label < bound)) return std::nullopt;
    if (candidate == a) continue;
    if (mk.count(candidate) == 0 && bk.count(candidate) == 0) return candidate;
  }
}

std::optional<Edge> GameState::SmallestUnclaimed() const {
  Side first_side = board_.FirstSide();
  Side second_side = board_.SecondSide();
  const Ordinal& first_bound = board_.Bound(first_side);
  if (board_.Bound(second_side).IsZero()) return std::nullopt;
  for (std::uint64_t a = 0;; ++a) {
    Vertex va{first_side, Ordinal::Finite(a)};
    if (!(va.label < first_bound)) return std::nullopt;
    std::uint64_t start = board_.IsBipartite() ? 0 : a + 1;
    if (auto vb = SmallestFreeNeighbourSlot(va, second_side, start)) {
      return Edge(va, *vb);
    }
  }
}

std::optional<Vertex> GameState::SmallestFresh(Side side,
                                               std::uint64_t from) const {
  const Ordinal& bound = board_.Bound(side);
  from = std::max(from, fresh_floor_[static_cast<std::size_t>(side)]);
  for (std::uint64_t a = from;; ++a) {
    Vertex v{side, Ordinal::Finite(a)};
    if (!(v.label < bound)) return std::nullopt;
    if (IsFresh(v)) return v;
  }
}

}  // namespace mb
