#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "propcalc/cardinal.hpp"

namespace propcalc {

enum class TailKind { Zero, AllAleph0, Periodic };

/// Longest pattern a multiplicity sequence may carry.  Pointwise sums take
/// the lcm of periods, so this bounds memory for adversarial inputs.
inline constexpr std::size_t kMaxPeriod = std::size_t{1} << 18;

/// The sequence (alpha_i)_{i >= 1} of multiplicities of C_{p^i} in a
/// Cartesian group, stored as an explicit prefix followed by an eventually
/// periodic tail.
///
/// Every constructor except raw() returns the canonical form: the pattern is
/// primitive, the prefix cannot be shortened by rotating the pattern, and the
/// one-element patterns [0] and [aleph0] are stored as TailKind::Zero and
/// TailKind::AllAleph0.  Canonical forms compare equal iff the term functions
/// agree.
class MultiplicitySeq {
 public:
  MultiplicitySeq() = default;

  static MultiplicitySeq raw(std::vector<Cardinal> prefix, TailKind tail,
                             std::vector<Cardinal> pattern = {});
  static MultiplicitySeq finite(std::vector<Cardinal> prefix);
  static MultiplicitySeq periodic(std::vector<Cardinal> prefix, std::vector<Cardinal> pattern);
  static MultiplicitySeq all_aleph0(std::vector<Cardinal> prefix = {});
  /// count copies of C_{p^exponent}; exponent >= 1.
  static MultiplicitySeq cyclic(std::size_t exponent, Cardinal count = 1);
  /// prod_i C_{p^i}, i.e. alpha_i = 1 for all i.
  static MultiplicitySeq all_ones();

  /// Builds the canonical sequence with term function f on indices
  /// 1..prefix_len and f periodic of period `period` afterwards.
  static MultiplicitySeq from_function(std::size_t prefix_len, std::size_t period,
                                       const std::function<Cardinal(std::size_t)>& f);

  const std::vector<Cardinal>& prefix() const { return prefix_; }
  TailKind tail() const { return tail_; }
  /// Empty unless tail() == Periodic.
  const std::vector<Cardinal>& pattern() const { return pattern_; }
  /// Length of one tail period (1 for Zero and AllAleph0).
  std::size_t period() const { return tail_ == TailKind::Periodic ? pattern_.size() : 1; }

  /// alpha_i, 1-based.
  Cardinal at(std::size_t i) const;

  bool is_trivial() const { return tail_ == TailKind::Zero && prefix_.empty(); }
  bool bounded_exponent() const { return tail_ == TailKind::Zero; }
  bool unbounded_torsion() const { return tail_ != TailKind::Zero; }
  bool is_finite_group() const;
  bool is_cyclic() const;
  /// Largest i with alpha_i != 0 for bounded sequences (0 when trivial).
  std::optional<std::size_t> exponent() const;
  /// Smallest i with alpha_i != 0; nullopt when trivial.
  std::optional<std::size_t> first_nonzero() const;
  /// sum of alpha_i.
  Cardinal total_factors() const;

  friend MultiplicitySeq operator+(const MultiplicitySeq& a, const MultiplicitySeq& b);
  /// alpha_i * k for every i.
  MultiplicitySeq scaled(Cardinal k) const;

  friend bool operator==(const MultiplicitySeq&, const MultiplicitySeq&) = default;

 private:
  std::vector<Cardinal> prefix_;
  TailKind tail_ = TailKind::Zero;
  std::vector<Cardinal> pattern_;
};

/// Canonical form of an arbitrary (possibly raw) sequence.
MultiplicitySeq normalize(const MultiplicitySeq& seq);

}  // namespace propcalc
