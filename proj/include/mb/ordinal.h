#ifndef MB_ORDINAL_H_
#define MB_ORDINAL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mb {

// Bounds on representable ordinals. Depth counts nested exponent levels:
// finite values have depth 1, w has depth 2, w^{w} depth 3, and so on.
struct OrdinalLimits {
  int max_depth = 4;
  int max_terms = 16;
};

const OrdinalLimits& DefaultOrdinalLimits();

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OrdinalParseError : public std::invalid_argument {
 public:
  OrdinalParseError(std::string_view text, std::size_t position,
                    const std::string& what);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Term;

// An ordinal below epsilon_0 in Cantor normal form.
//
// The finite tail (the coefficient of w^0) is stored inline, so finite values
// never allocate. Values are immutable once built.
class Ordinal {
 public:
  Ordinal();
  Ordinal(const Ordinal&);
  Ordinal(Ordinal&&) noexcept;
  Ordinal& operator=(const Ordinal&);
  Ordinal& operator=(Ordinal&&) noexcept;
  ~Ordinal();

  static Ordinal Finite(std::uint64_t n);
  static Ordinal Omega();
  // w^exponent * coefficient. coefficient must be >= 1.
  static Ordinal Power(const Ordinal& exponent, std::uint64_t coefficient = 1,
                       const OrdinalLimits& limits = DefaultOrdinalLimits());
  // Terms must have strictly decreasing exponents and coefficients >= 1;
  // throws std::invalid_argument otherwise.
  static Ordinal FromTerms(const std::vector<Term>& terms,
                           const OrdinalLimits& limits = DefaultOrdinalLimits());

  // Parses the literal grammar
  //   ordinal := "0" | term ("+" term)*
  //   term    := "w" ("^" "{" ordinal "}")? ("*" nat)? | nat
  // Non-canonical sums such as "1+w" are normalized by ordinal addition.
  static Ordinal Parse(std::string_view text,
                       const OrdinalLimits& limits = DefaultOrdinalLimits());
  static std::optional<Ordinal> TryParse(
      std::string_view text,
      const OrdinalLimits& limits = DefaultOrdinalLimits());

  bool IsZero() const { return infinite_.empty() && finite_ == 0; }
  bool IsFinite() const { return infinite_.empty(); }
  // Throws std::domain_error for infinite values.
  std::uint64_t FiniteValue() const;
  std::uint64_t FinitePart() const { return finite_; }
  // The value with its finite tail removed (largest limit or zero <= this).
  Ordinal InfinitePart() const;

  // All terms in decreasing exponent order, finite tail last.
  std::vector<Term> Terms() const;
  std::size_t TermCount() const {
    return infinite_.size() + (finite_ != 0 ? 1 : 0);
  }
  int Depth() const;

  std::string ToString() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering CompareInfinite(const Ordinal& a,
                                              const Ordinal& b);

  std::size_t Hash() const;

 private:
  friend Ordinal Add(const Ordinal&, const Ordinal&, const OrdinalLimits&);
  friend Ordinal Mul(const Ordinal&, const Ordinal&, const OrdinalLimits&);

  void CheckLimits(const OrdinalLimits& limits) const;

  // Terms with exponent > 0, strictly decreasing exponents.
  std::vector<Term> infinite_;
  std::uint64_t finite_ = 0;
};

struct Term {
  Ordinal exponent;
  std::uint64_t coefficient = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

std::strong_ordering CompareInfinite(const Ordinal& a, const Ordinal& b);

inline Ordinal::Ordinal() = default;
inline Ordinal::Ordinal(const Ordinal&) = default;
inline Ordinal::Ordinal(Ordinal&&) noexcept = default;
inline Ordinal& Ordinal::operator=(const Ordinal&) = default;
inline Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
inline Ordinal::~Ordinal() = default;

// Board labels are almost always finite; keep that comparison inline.
inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  if (a.infinite_.empty() && b.infinite_.empty()) return a.finite_ <=> b.finite_;
  return CompareInfinite(a, b);
}

inline bool operator==(const Ordinal& a, const Ordinal& b) {
  return a.finite_ == b.finite_ && a.infinite_ == b.infinite_;
}

Ordinal Add(const Ordinal& a, const Ordinal& b,
            const OrdinalLimits& limits = DefaultOrdinalLimits());
Ordinal Mul(const Ordinal& a, const Ordinal& b,
            const OrdinalLimits& limits = DefaultOrdinalLimits());

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  return Add(a, b);
}
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) {
  return Mul(a, b);
}

enum class OrdinalKind { kZero, kSuccessor, kLimit };

struct Classification {
  OrdinalKind kind;
  std::optional<Ordinal> predecessor;  // set iff kind == kSuccessor
};

Classification Classify(const Ordinal& a);

inline std::strong_ordering Compare(const Ordinal& a, const Ordinal& b) {
  return a <=> b;
}

// Smallest limit ordinal strictly greater than a.
Ordinal NextLimitAfter(const Ordinal& a);

}  // namespace mb

template <>
struct std::hash<mb::Ordinal> {
  std::size_t operator()(const mb::Ordinal& o) const { return o.Hash(); }
};

#endif  // MB_ORDINAL_H_
