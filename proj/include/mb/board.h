#ifndef MB_BOARD_H_
#define MB_BOARD_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "mb/ordinal.h"

namespace mb {

enum class Side : std::uint8_t { kPlain, kLeft, kRight };

enum class Player : std::uint8_t { kMaker, kBreaker };

inline Player Opponent(Player p) {
  return p == Player::kMaker ? Player::kBreaker : Player::kMaker;
}
inline char PlayerCode(Player p) { return p == Player::kMaker ? 'M' : 'B'; }
std::string PlayerName(Player p);  // "maker" / "breaker"

// A board vertex: Plain(label) on complete boards, Sided(side, label) on
// bipartite ones. Ordered by side, then label.
struct Vertex {
  Side side = Side::kPlain;
  Ordinal label;

  static Vertex Plain(std::uint64_t n) {
    return {Side::kPlain, Ordinal::Finite(n)};
  }
  static Vertex Plain(Ordinal label) { return {Side::kPlain, std::move(label)}; }
  static Vertex Left(std::uint64_t n) { return {Side::kLeft, Ordinal::Finite(n)}; }
  static Vertex Left(Ordinal label) { return {Side::kLeft, std::move(label)}; }
  static Vertex Right(std::uint64_t n) {
    return {Side::kRight, Ordinal::Finite(n)};
  }
  static Vertex Right(Ordinal label) { return {Side::kRight, std::move(label)}; }

  bool IsFinite() const { return label.IsFinite(); }
  std::uint64_t Index() const { return label.FiniteValue(); }

  // "5", "L3", "Rw+1".
  std::string ToString() const;

  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
    if (auto c = a.side <=> b.side; c != 0) return c;
    return a.label <=> b.label;
  }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// An unordered pair stored in canonical order (smaller vertex first).
class Edge {
 public:
  Edge(Vertex a, Vertex b);

  static Edge Plain(std::uint64_t a, std::uint64_t b) {
    return Edge(Vertex::Plain(a), Vertex::Plain(b));
  }
  static Edge Sided(std::uint64_t left, std::uint64_t right) {
    return Edge(Vertex::Left(left), Vertex::Right(right));
  }

  const Vertex& first() const { return first_; }
  const Vertex& second() const { return second_; }
  bool Touches(const Vertex& v) const { return v == first_ || v == second_; }
  const Vertex& Other(const Vertex& v) const {
    return v == first_ ? second_ : first_;
  }

  std::string ToString() const;

  friend std::strong_ordering operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;

 private:
  Vertex first_;
  Vertex second_;
};

enum class BoardKind : std::uint8_t {
  kCompleteFinite,
  kCompleteLazy,
  kBipartiteFinite,
  kBipartiteLazy,
};

// The edge universe. Lazy boards are never enumerated; every query is local.
class Board {
 public:
  static Board CompleteFinite(std::uint64_t n);
  static Board CompleteLazy(Ordinal horizon = Ordinal::Omega());
  static Board BipartiteFinite(std::uint64_t m, std::uint64_t n);
  static Board BipartiteLazy(Ordinal left_horizon = Ordinal::Omega(),
                             Ordinal right_horizon = Ordinal::Omega());

  BoardKind kind() const { return kind_; }
  bool IsBipartite() const {
    return kind_ == BoardKind::kBipartiteFinite ||
           kind_ == BoardKind::kBipartiteLazy;
  }
  bool IsLazy() const {
    return kind_ == BoardKind::kCompleteLazy ||
           kind_ == BoardKind::kBipartiteLazy;
  }
  // Label bound for a side (kPlain on complete boards).
  const Ordinal& Bound(Side side) const;
  // True if the side has infinitely many labels below its bound.
  bool IsInfinite(Side side) const { return !Bound(side).IsFinite(); }
  // Sides carrying vertices: {kPlain} or {kLeft, kRight}.
  Side FirstSide() const { return IsBipartite() ? Side::kLeft : Side::kPlain; }
  Side SecondSide() const {
    return IsBipartite() ? Side::kRight : Side::kPlain;
  }

  bool Contains(const Vertex& v) const;
  bool Contains(const Edge& e) const;

  // Number of edges when every side is finite.
  std::optional<std::uint64_t> EdgeCount() const;
  // Number of vertices on a finite side.
  std::optional<std::uint64_t> SideSize(Side side) const;

  // "K5", "K3,4", "Kw", "Kw,w" (horizons appear only in ToJson).
  std::string ShortName() const;

  friend bool operator==(const Board&, const Board&) = default;

 private:
  Board(BoardKind kind, Ordinal first, Ordinal second)
      : kind_(kind), first_(std::move(first)), second_(std::move(second)) {}

  BoardKind kind_;
  Ordinal first_;   // plain or left bound
  Ordinal second_;  // right bound (bipartite only)
};

class IllegalMove : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Exhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mb

template <>
struct std::hash<mb::Vertex> {
  std::size_t operator()(const mb::Vertex& v) const {
    return v.label.Hash() * 3 + static_cast<std::size_t>(v.side);
  }
};

template <>
struct std::hash<mb::Edge> {
  std::size_t operator()(const mb::Edge& e) const {
    std::hash<mb::Vertex> h;
    return h(e.first()) * 1000003u ^ h(e.second());
  }
};

#endif  // MB_BOARD_H_
