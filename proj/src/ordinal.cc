#include "mb/ordinal.h"

#include <algorithm>
#include <cctype>
#include <utility>

namespace mb {
namespace {

std::uint64_t CheckedAdd(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw CapacityError("ordinal coefficient overflow");
  }
  return out;
}

std::uint64_t CheckedMul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CapacityError("ordinal coefficient overflow");
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const OrdinalLimits& limits)
      : text_(text), limits_(limits) {}

  Ordinal ParseAll() {
    Ordinal result = ParseSum();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected character");
    return result;
  }

 private:
  Ordinal ParseSum() {
    Ordinal sum = ParseTerm();
    for (;;) {
      SkipSpace();
      if (pos_ < text_.size() && text_[pos_] == '+') {
        ++pos_;
        sum = Add(sum, ParseTerm(), limits_);
      } else {
        return sum;
      }
    }
  }

  Ordinal ParseTerm() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("expected a term");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Ordinal::Finite(ParseNat());
    }
    if (c != 'w') Fail("expected 'w' or a natural number");
    ++pos_;
    Ordinal exponent = Ordinal::Finite(1);
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      SkipSpace();
      if (pos_ >= text_.size() || text_[pos_] != '{') Fail("expected '{'");
      ++pos_;
      exponent = ParseSum();
      SkipSpace();
      if (pos_ >= text_.size() || text_[pos_] != '}') Fail("expected '}'");
      ++pos_;
    }
    std::uint64_t coefficient = 1;
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      SkipSpace();
      std::size_t at = pos_;
      coefficient = ParseNat();
      if (coefficient == 0) {
        throw OrdinalParseError(text_, at, "coefficient must be positive");
      }
    }
    return Ordinal::Power(exponent, coefficient, limits_);
  }

  std::uint64_t ParseNat() {
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (__builtin_mul_overflow(value, 10u, &value) ||
          __builtin_add_overflow(value, digit, &value)) {
        throw OrdinalParseError(text_, start, "natural number too large");
      }
      ++pos_;
    }
    if (pos_ == start) Fail("expected a natural number");
    return value;
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void Fail(const std::string& what) {
    throw OrdinalParseError(text_, pos_, what);
  }

  std::string_view text_;
  const OrdinalLimits& limits_;
  std::size_t pos_ = 0;
};

}  // namespace

const OrdinalLimits& DefaultOrdinalLimits() {
  static const OrdinalLimits kLimits;
  return kLimits;
}

OrdinalParseError::OrdinalParseError(std::string_view text,
                                     std::size_t position,
                                     const std::string& what)
    : std::invalid_argument("invalid ordinal literal \"" + std::string(text) +
                            "\" at offset " + std::to_string(position) + ": " +
                            what),
      position_(position) {}

Ordinal Ordinal::Finite(std::uint64_t n) {
  Ordinal o;
  o.finite_ = n;
  return o;
}

Ordinal Ordinal::Omega() { return Power(Finite(1)); }

Ordinal Ordinal::Power(const Ordinal& exponent, std::uint64_t coefficient,
                       const OrdinalLimits& limits) {
  if (coefficient == 0) {
    throw std::invalid_argument("ordinal coefficient must be positive");
  }
  Ordinal o;
  if (exponent.IsZero()) {
    o.finite_ = coefficient;
  } else {
    o.infinite_.push_back(Term{exponent, coefficient});
  }
  o.CheckLimits(limits);
  return o;
}

Ordinal Ordinal::FromTerms(const std::vector<Term>& terms,
                           const OrdinalLimits& limits) {
  Ordinal o;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    if (t.coefficient == 0) {
      throw std::invalid_argument("ordinal coefficient must be positive");
    }
    if (i > 0 && !(t.exponent < terms[i - 1].exponent)) {
      throw std::invalid_argument("exponents must be strictly decreasing");
    }
    if (t.exponent.IsZero()) {
      if (i + 1 != terms.size()) {
        throw std::invalid_argument("exponents must be strictly decreasing");
      }
      o.finite_ = t.coefficient;
    } else {
      o.infinite_.push_back(t);
    }
  }
  o.CheckLimits(limits);
  return o;
}

Ordinal Ordinal::Parse(std::string_view text, const OrdinalLimits& limits) {
  return Parser(text, limits).ParseAll();
}

std::optional<Ordinal> Ordinal::TryParse(std::string_view text,
                                         const OrdinalLimits& limits) {
  try {
    return Parse(text, limits);
  } catch (const OrdinalParseError&) {
    return std::nullopt;
  } catch (const CapacityError&) {
    return std::nullopt;
  }
}

std::uint64_t Ordinal::FiniteValue() const {
  if (!IsFinite()) throw std::domain_error("ordinal " + ToString() +
                                           " is not finite");
  return finite_;
}

Ordinal Ordinal::InfinitePart() const {
  Ordinal o = *this;
  o.finite_ = 0;
  return o;
}

std::vector<Term> Ordinal::Terms() const {
  std::vector<Term> out = infinite_;
  if (finite_ != 0) out.push_back(Term{Ordinal(), finite_});
  return out;
}

int Ordinal::Depth() const {
  int depth = finite_ != 0 ? 1 : 0;
  for (const Term& t : infinite_) {
    depth = std::max(depth, 1 + t.exponent.Depth());
  }
  return depth;
}

std::string Ordinal::ToString() const {
  if (IsZero()) return "0";
  std::string out;
  for (const Term& t : infinite_) {
    if (!out.empty()) out += '+';
    out += 'w';
    if (!(t.exponent == Finite(1))) {
      out += "^{" + t.exponent.ToString() + "}";
    }
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  if (finite_ != 0) {
    if (!out.empty()) out += '+';
    out += std::to_string(finite_);
  }
  return out;
}

std::strong_ordering CompareInfinite(const Ordinal& a, const Ordinal& b) {
  std::size_t common = std::min(a.infinite_.size(), b.infinite_.size());
  for (std::size_t i = 0; i < common; ++i) {
    const Term& x = a.infinite_[i];
    const Term& y = b.infinite_[i];
    if (auto c = x.exponent <=> y.exponent; c != 0) return c;
    if (auto c = x.coefficient <=> y.coefficient; c != 0) return c;
  }
  if (auto c = a.infinite_.size() <=> b.infinite_.size(); c != 0) return c;
  return a.finite_ <=> b.finite_;
}

std::size_t Ordinal::Hash() const {
  std::size_t h = std::hash<std::uint64_t>()(finite_);
  for (const Term& t : infinite_) {
    h ^= t.exponent.Hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>()(t.coefficient) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

void Ordinal::CheckLimits(const OrdinalLimits& limits) const {
  if (static_cast<int>(TermCount()) > limits.max_terms) {
    throw CapacityError("ordinal exceeds term bound (" +
                        std::to_string(limits.max_terms) + ")");
  }
  if (Depth() > limits.max_depth) {
    throw CapacityError("ordinal exceeds depth bound (" +
                        std::to_string(limits.max_depth) + ")");
  }
}

Ordinal Add(const Ordinal& a, const Ordinal& b, const OrdinalLimits& limits) {
  if (b.IsZero()) return a;
  Ordinal out;
  if (b.IsFinite()) {
    out = a;
    out.finite_ = CheckedAdd(a.finite_, b.finite_);
    out.CheckLimits(limits);
    return out;
  }
  const Term& lead = b.infinite_.front();
  for (const Term& t : a.infinite_) {
    auto c = t.exponent <=> lead.exponent;
    if (c > 0) {
      out.infinite_.push_back(t);
    } else {
      if (c == 0) {
        out.infinite_.push_back(
            Term{t.exponent, CheckedAdd(t.coefficient, lead.coefficient)});
      }
      break;
    }
  }
  if (!out.infinite_.empty() && out.infinite_.back().exponent == lead.exponent) {
    out.infinite_.insert(out.infinite_.end(), b.infinite_.begin() + 1,
                         b.infinite_.end());
  } else {
    out.infinite_.insert(out.infinite_.end(), b.infinite_.begin(),
                         b.infinite_.end());
  }
  out.finite_ = b.finite_;
  out.CheckLimits(limits);
  return out;
}

Ordinal Mul(const Ordinal& a, const Ordinal& b, const OrdinalLimits& limits) {
  if (a.IsZero() || b.IsZero()) return Ordinal();
  // a * (b1 + b2 + ...) = a*b1 + a*b2 + ...; each b_i is a single term.
  Ordinal lead_exponent =
      a.IsFinite() ? Ordinal() : a.infinite_.front().exponent;
  Ordinal out;
  for (const Term& t : b.infinite_) {
    Ordinal exponent = Add(lead_exponent, t.exponent, limits);
    out = Add(out, Ordinal::Power(exponent, t.coefficient, limits), limits);
  }
  if (b.finite_ != 0) {
    // a * n scales the leading coefficient of a and keeps its tail.
    Ordinal scaled = a;
    if (a.IsFinite()) {
      scaled.finite_ = CheckedMul(a.finite_, b.finite_);
    } else {
      scaled.infinite_.front().coefficient =
          CheckedMul(a.infinite_.front().coefficient, b.finite_);
    }
    out = Add(out, scaled, limits);
  }
  out.CheckLimits(limits);
  return out;
}

Classification Classify(const Ordinal& a) {
  if (a.IsZero()) return {OrdinalKind::kZero, std::nullopt};
  if (a.FinitePart() != 0) {
    std::vector<Term> terms = a.Terms();
    if (terms.back().coefficient == 1) {
      terms.pop_back();
    } else {
      terms.back().coefficient -= 1;
    }
    OrdinalLimits unbounded{1 << 20, 1 << 20};
    return {OrdinalKind::kSuccessor, Ordinal::FromTerms(terms, unbounded)};
  }
  return {OrdinalKind::kLimit, std::nullopt};
}

Ordinal NextLimitAfter(const Ordinal& a) {
  OrdinalLimits unbounded{1 << 20, 1 << 20};
  return Add(a.InfinitePart(), Ordinal::Omega(), unbounded);
}

}  // namespace mb
