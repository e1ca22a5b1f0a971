#include "ccr/count.hpp"

#include <algorithm>

#include "ccr/error.hpp"

namespace ccr {

std::uint64_t Count::value() const {
  if (infinite_) throw InternalError("Count::value() called on an infinite count");
  return value_;
}

std::string Count::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

std::ostream& operator<<(std::ostream& os, Count c) { return os << c.to_string(); }

ExtendedInt ExtendedInt::difference(Count a, Count b) {
  if (a.is_infinite() && b.is_infinite()) {
    throw PreconditionError("difference of two infinite counts is undefined");
  }
  if (a.is_infinite()) return plus_infinity();
  if (b.is_infinite()) return minus_infinity();
  return ExtendedInt(static_cast<std::int64_t>(a.value()) - static_cast<std::int64_t>(b.value()));
}

std::int64_t ExtendedInt::value() const {
  if (kind_ != Kind::Finite) throw InternalError("ExtendedInt::value() called on an infinity");
  return value_;
}

ExtendedInt::Sum ExtendedInt::add(ExtendedInt a, ExtendedInt b) {
  if (a.is_finite() && b.is_finite()) return {true, ExtendedInt(a.value_ + b.value_)};
  if (a.is_finite()) return {true, b};
  if (b.is_finite()) return {true, a};
  if (a.kind_ == b.kind_) return {true, a};
  return {false, ExtendedInt()};
}

std::string ExtendedInt::to_string() const {
  switch (kind_) {
    case Kind::PlusInfinity: return "+inf";
    case Kind::MinusInfinity: return "-inf";
    default: return std::to_string(value_);
  }
}

std::ostream& operator<<(std::ostream& os, ExtendedInt v) { return os << v.to_string(); }

CrtTriple CrtTriple::from_sums(Count a, Count b, Count c) {
  CrtTriple t;
  t.entries_ = {a, b, c};
  const Count lowest = std::min({a, b, c});
  if (lowest.is_infinite()) return t;
  for (Count& e : t.entries_) {
    if (e.is_finite()) e = Count(e.value() - lowest.value());
  }
  return t;
}

int CrtTriple::infinite_entries() const {
  return static_cast<int>(std::count_if(entries_.begin(), entries_.end(),
                                        [](Count c) { return c.is_infinite(); }));
}

bool CrtTriple::is_witness_pattern() const {
  const Count rest = std::min(entries_[1], entries_[2]);
  return entries_[0] < rest && rest.is_finite();
}

std::string CrtTriple::to_string() const {
  return "<<" + entries_[0].to_string() + ":" + entries_[1].to_string() + ":" +
         entries_[2].to_string() + ">>";
}

std::ostream& operator<<(std::ostream& os, const CrtTriple& t) { return os << t.to_string(); }

}  // namespace ccr
