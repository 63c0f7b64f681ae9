#include "mb/board.h"

#include <utility>

namespace mb {

std::string PlayerName(Player p) {
  return p == Player::kMaker ? "maker" : "breaker";
}

std::string Vertex::ToString() const {
  switch (side) {
    case Side::kLeft:
      return "L" + label.ToString();
    case Side::kRight:
      return "R" + label.ToString();
    case Side::kPlain:
      break;
  }
  return label.ToString();
}

Edge::Edge(Vertex a, Vertex b) {
  if (b < a) std::swap(a, b);
  first_ = std::move(a);
  second_ = std::move(b);
}

std::string Edge::ToString() const {
  return "{" + first_.ToString() + "," + second_.ToString() + "}";
}

Board Board::CompleteFinite(std::uint64_t n) {
  return Board(BoardKind::kCompleteFinite, Ordinal::Finite(n), Ordinal());
}

Board Board::CompleteLazy(Ordinal horizon) {
  return Board(BoardKind::kCompleteLazy, std::move(horizon), Ordinal());
}

Board Board::BipartiteFinite(std::uint64_t m, std::uint64_t n) {
  return Board(BoardKind::kBipartiteFinite, Ordinal::Finite(m),
               Ordinal::Finite(n));
}

Board Board::BipartiteLazy(Ordinal left_horizon, Ordinal right_horizon) {
  return Board(BoardKind::kBipartiteLazy, std::move(left_horizon),
               std::move(right_horizon));
}

const Ordinal& Board::Bound(Side side) const {
  if (IsBipartite()) {
    if (side == Side::kRight) return second_;
    return first_;
  }
  return first_;
}

bool Board::Contains(const Vertex& v) const {
  if (IsBipartite()) {
    if (v.side == Side::kPlain) return false;
  } else if (v.side != Side::kPlain) {
    return false;
  }
  return v.label < Bound(v.side);
}

bool Board::Contains(const Edge& e) const {
  if (e.first() == e.second()) return false;
  if (!Contains(e.first()) || !Contains(e.second())) return false;
  if (IsBipartite()) {
    return e.first().side == Side::kLeft && e.second().side == Side::kRight;
  }
  return true;
}

std::optional<std::uint64_t> Board::EdgeCount() const {
  switch (kind_) {
    case BoardKind::kCompleteFinite: {
      std::uint64_t n = first_.FiniteValue();
      return n < 2 ? 0 : n * (n - 1) / 2;
    }
    case BoardKind::kBipartiteFinite:
      return first_.FiniteValue() * second_.FiniteValue();
    case BoardKind::kCompleteLazy:
      if (first_.IsFinite()) {
        std::uint64_t n = first_.FiniteValue();
        return n < 2 ? 0 : n * (n - 1) / 2;
      }
      return std::nullopt;
    case BoardKind::kBipartiteLazy:
      if (first_.IsFinite() && second_.IsFinite()) {
        return first_.FiniteValue() * second_.FiniteValue();
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> Board::SideSize(Side side) const {
  const Ordinal& bound = Bound(side);
  if (!bound.IsFinite()) return std::nullopt;
  return bound.FiniteValue();
}

std::string Board::ShortName() const {
  switch (kind_) {
    case BoardKind::kCompleteFinite:
      return "K" + first_.ToString();
    case BoardKind::kBipartiteFinite:
      return "K" + first_.ToString() + "," + second_.ToString();
    case BoardKind::kCompleteLazy:
      return "Kw";
    case BoardKind::kBipartiteLazy:
      return "Kw,w";
  }
  return "?";
}

}  // namespace mb
