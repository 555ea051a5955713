#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace propcalc {

/// A multiplicity in N ∪ {aleph0}.  Finite(0) is the unique zero and aleph0
/// absorbs under addition.
class Cardinal {
 public:
  constexpr Cardinal() = default;
  constexpr Cardinal(std::uint64_t n) : value_(n) {}  // NOLINT: implicit from counts

  static constexpr Cardinal aleph0() {
    Cardinal c;
    c.infinite_ = true;
    return c;
  }

  constexpr bool is_aleph0() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0; }

  /// Throws propcalc::Error for aleph0.
  std::uint64_t value() const;

  /// min(this, cap) as a plain count.
  std::uint64_t capped(std::uint64_t cap) const {
    return infinite_ || value_ > cap ? cap : value_;
  }

  /// this - n, with aleph0 - n = aleph0.  Throws on underflow.
  Cardinal minus(std::uint64_t n) const;

  std::string to_string() const;

  friend Cardinal operator+(Cardinal a, Cardinal b);
  friend Cardinal operator*(Cardinal a, Cardinal b);

  friend constexpr bool operator==(const Cardinal& a, const Cardinal& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Cardinal& a, const Cardinal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

}  // namespace propcalc
