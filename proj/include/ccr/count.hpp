#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace ccr {

/// A wall count or Gromov product: a natural number or +infinity.
class Count {
 public:
  constexpr Count() = default;
  constexpr Count(std::uint64_t n) : value_(n) {}  // NOLINT: implicit by design of call sites

  static constexpr Count infinite() {
    Count c;
    c.infinite_ = true;
    return c;
  }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  /// Throws InternalError when infinite.
  std::uint64_t value() const;

  friend constexpr Count operator+(Count a, Count b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return Count(a.value_ + b.value_);
  }

  friend constexpr bool operator==(Count a, Count b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend constexpr std::strong_ordering operator<=>(Count a, Count b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  /// "inf" or the decimal value.
  std::string to_string() const;

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, Count c);

/// Element of Z ∪ {+inf, -inf}; the codomain of the cross ratio.
class ExtendedInt {
 public:
  enum class Kind : std::uint8_t { Finite, PlusInfinity, MinusInfinity };

  constexpr ExtendedInt() = default;
  constexpr explicit ExtendedInt(std::int64_t v) : value_(v) {}
  static constexpr ExtendedInt plus_infinity() { return ExtendedInt(Kind::PlusInfinity); }
  static constexpr ExtendedInt minus_infinity() { return ExtendedInt(Kind::MinusInfinity); }

  /// a - b. Throws PreconditionError when both are infinite.
  static ExtendedInt difference(Count a, Count b);

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  std::int64_t value() const;

  constexpr ExtendedInt operator-() const {
    switch (kind_) {
      case Kind::PlusInfinity: return minus_infinity();
      case Kind::MinusInfinity: return plus_infinity();
      default: return ExtendedInt(-value_);
    }
  }

  /// Sum in the extended integers; `defined` is false for +inf + -inf.
  struct Sum;
  static Sum add(ExtendedInt a, ExtendedInt b);

  friend constexpr bool operator==(ExtendedInt a, ExtendedInt b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }

  /// "+inf", "-inf" or the decimal value.
  std::string to_string() const;

 private:
  constexpr explicit ExtendedInt(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  std::int64_t value_ = 0;
};

struct ExtendedInt::Sum {
  bool defined = false;
  ExtendedInt value;
};

std::ostream& operator<<(std::ostream& os, ExtendedInt v);

/// Canonical representative of the class <<a:b:c>> of triples over N ∪ {+inf}
/// modulo a common finite shift: the minimum finite entry is zero, or all
/// entries are infinite.
class CrtTriple {
 public:
  CrtTriple() = default;

  /// Normalises (a, b, c) by subtracting the smallest finite entry.
  static CrtTriple from_sums(Count a, Count b, Count c);

  const std::array<Count, 3>& entries() const { return entries_; }
  Count operator[](std::size_t i) const { return entries_[i]; }
  int infinite_entries() const;

  /// The witness pattern <<a:b:c>> with a < min{b, c} < +inf.
  bool is_witness_pattern() const;

  friend bool operator==(const CrtTriple&, const CrtTriple&) = default;

  /// "<<a:b:c>>" with "inf" for infinite entries.
  std::string to_string() const;

 private:
  std::array<Count, 3> entries_{};
};

std::ostream& operator<<(std::ostream& os, const CrtTriple& t);

}  // namespace ccr
