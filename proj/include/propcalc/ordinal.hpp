#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace propcalc {

/// One Cantor normal form term w^exponent * coefficient.
struct OrdinalTerm {
  std::uint64_t exponent = 0;
  std::uint64_t coefficient = 1;

  friend bool operator==(const OrdinalTerm&, const OrdinalTerm&) = default;
};

/// An ordinal below w^w in Cantor normal form: strictly decreasing exponents,
/// positive coefficients, empty for zero.
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal from_terms(std::vector<OrdinalTerm> terms);
  static Ordinal finite(std::uint64_t n);
  static Ordinal omega_power(std::uint64_t exponent, std::uint64_t coefficient = 1);
  /// w*k + n.
  static Ordinal omega_times(std::uint64_t k, std::uint64_t n = 0);
  /// Parses "w^2*3+w*2+4" style CNF ("omega" is accepted for "w").
  static Ordinal parse(std::string_view text);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const { return terms_.empty() || terms_.front().exponent == 0; }
  bool is_successor() const { return !terms_.empty() && terms_.back().exponent == 0; }
  bool is_limit() const { return !terms_.empty() && terms_.back().exponent > 0; }

  /// Coefficient of w^e (0 when absent).
  std::uint64_t coefficient(std::uint64_t exponent) const;
  /// True when the ordinal is below w^2, i.e. of the form w*k + n.
  bool below_omega_squared() const { return terms_.empty() || terms_.front().exponent <= 1; }

  Ordinal successor() const;
  /// Throws unless is_successor().
  Ordinal predecessor() const;
  /// Left subtraction: the unique g with b + g = *this.  Requires b <= *this.
  Ordinal minus(const Ordinal& b) const;

  std::string to_string() const;

  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<OrdinalTerm> terms_;
};

enum class Comparison { LT, EQ, GT };
Comparison ord_compare(const Ordinal& a, const Ordinal& b);
inline Ordinal ord_successor(const Ordinal& a) { return a.successor(); }
inline bool ord_is_limit(const Ordinal& a) { return a.is_limit(); }

/// n-th term (n >= 1) of the canonical fundamental sequence of a limit
/// ordinal: for a = b + w^e (e >= 1) it is b + w^(e-1) * n.
Ordinal fundamental_term(const Ordinal& limit, std::uint64_t n);

/// The canonical fundamental sequence as a stateless stream.
class FundamentalSequence {
 public:
  explicit FundamentalSequence(Ordinal limit);
  const Ordinal& limit() const { return limit_; }
  Ordinal operator[](std::uint64_t n) const { return fundamental_term(limit_, n); }
  std::vector<Ordinal> take(std::uint64_t count) const;

 private:
  Ordinal limit_;
};

}  // namespace propcalc
