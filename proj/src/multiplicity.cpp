#include "propcalc/multiplicity.hpp"

#include <algorithm>
#include <numeric>

#include "propcalc/error.hpp"

namespace propcalc {

namespace {

std::vector<Cardinal> expanded_pattern(TailKind tail, const std::vector<Cardinal>& pattern) {
  switch (tail) {
    case TailKind::Zero:
      return {Cardinal(0)};
    case TailKind::AllAleph0:
      return {Cardinal::aleph0()};
    case TailKind::Periodic:
      break;
  }
  if (pattern.empty()) throw Error("periodic tail needs a nonempty pattern");
  return pattern;
}

std::vector<Cardinal> primitive_root(std::vector<Cardinal> pattern) {
  const std::size_t n = pattern.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = pattern[i] == pattern[i - d];
    if (ok) {
      pattern.resize(d);
      return pattern;
    }
  }
  return pattern;
}

}  // namespace

MultiplicitySeq MultiplicitySeq::raw(std::vector<Cardinal> prefix, TailKind tail,
                                     std::vector<Cardinal> pattern) {
  if (tail == TailKind::Periodic && pattern.empty())
    throw Error("periodic tail needs a nonempty pattern");
  if (tail != TailKind::Periodic) pattern.clear();
  if (pattern.size() > kMaxPeriod) throw SizeLimitError("multiplicity period too large");
  MultiplicitySeq s;
  s.prefix_ = std::move(prefix);
  s.tail_ = tail;
  s.pattern_ = std::move(pattern);
  return s;
}

MultiplicitySeq normalize(const MultiplicitySeq& seq) {
  std::vector<Cardinal> prefix = seq.prefix();
  std::vector<Cardinal> pattern = primitive_root(expanded_pattern(seq.tail(), seq.pattern()));
  while (!prefix.empty() && prefix.back() == pattern.back()) {
    prefix.pop_back();
    std::rotate(pattern.rbegin(), pattern.rbegin() + 1, pattern.rend());
  }
  if (pattern.size() == 1 && pattern[0].is_zero())
    return MultiplicitySeq::raw(std::move(prefix), TailKind::Zero);
  if (pattern.size() == 1 && pattern[0].is_aleph0())
    return MultiplicitySeq::raw(std::move(prefix), TailKind::AllAleph0);
  return MultiplicitySeq::raw(std::move(prefix), TailKind::Periodic, std::move(pattern));
}

MultiplicitySeq MultiplicitySeq::finite(std::vector<Cardinal> prefix) {
  return normalize(raw(std::move(prefix), TailKind::Zero));
}

MultiplicitySeq MultiplicitySeq::periodic(std::vector<Cardinal> prefix,
                                          std::vector<Cardinal> pattern) {
  return normalize(raw(std::move(prefix), TailKind::Periodic, std::move(pattern)));
}

MultiplicitySeq MultiplicitySeq::all_aleph0(std::vector<Cardinal> prefix) {
  return normalize(raw(std::move(prefix), TailKind::AllAleph0));
}

MultiplicitySeq MultiplicitySeq::cyclic(std::size_t exponent, Cardinal count) {
  if (exponent == 0) throw Error("cyclic factor exponent must be positive");
  std::vector<Cardinal> prefix(exponent, Cardinal(0));
  prefix.back() = count;
  return finite(std::move(prefix));
}

MultiplicitySeq MultiplicitySeq::all_ones() { return periodic({}, {Cardinal(1)}); }

MultiplicitySeq MultiplicitySeq::from_function(std::size_t prefix_len, std::size_t period,
                                               const std::function<Cardinal(std::size_t)>& f) {
  if (period == 0) throw Error("period must be positive");
  if (period > kMaxPeriod) throw SizeLimitError("multiplicity period too large");
  std::vector<Cardinal> prefix;
  prefix.reserve(prefix_len);
  for (std::size_t i = 1; i <= prefix_len; ++i) prefix.push_back(f(i));
  std::vector<Cardinal> pattern;
  pattern.reserve(period);
  for (std::size_t i = prefix_len + 1; i <= prefix_len + period; ++i) pattern.push_back(f(i));
  return periodic(std::move(prefix), std::move(pattern));
}

Cardinal MultiplicitySeq::at(std::size_t i) const {
  if (i == 0) throw Error("multiplicity index is 1-based");
  if (i <= prefix_.size()) return prefix_[i - 1];
  switch (tail_) {
    case TailKind::Zero:
      return Cardinal(0);
    case TailKind::AllAleph0:
      return Cardinal::aleph0();
    case TailKind::Periodic:
      break;
  }
  return pattern_[(i - prefix_.size() - 1) % pattern_.size()];
}

bool MultiplicitySeq::is_finite_group() const {
  return tail_ == TailKind::Zero &&
         std::none_of(prefix_.begin(), prefix_.end(), [](Cardinal c) { return c.is_aleph0(); });
}

bool MultiplicitySeq::is_cyclic() const {
  if (tail_ != TailKind::Zero) return false;
  std::size_t nonzero = 0;
  for (const auto& c : prefix_) {
    if (c.is_zero()) continue;
    if (c != Cardinal(1)) return false;
    ++nonzero;
  }
  return nonzero == 1;
}

std::optional<std::size_t> MultiplicitySeq::exponent() const {
  if (tail_ != TailKind::Zero) return std::nullopt;
  for (std::size_t i = prefix_.size(); i > 0; --i)
    if (!prefix_[i - 1].is_zero()) return i;
  return 0;
}

std::optional<std::size_t> MultiplicitySeq::first_nonzero() const {
  for (std::size_t i = 0; i < prefix_.size(); ++i)
    if (!prefix_[i].is_zero()) return i + 1;
  if (tail_ == TailKind::Zero) return std::nullopt;
  if (tail_ == TailKind::AllAleph0) return prefix_.size() + 1;
  for (std::size_t j = 0; j < pattern_.size(); ++j)
    if (!pattern_[j].is_zero()) return prefix_.size() + 1 + j;
  return std::nullopt;  // unreachable for canonical forms
}

Cardinal MultiplicitySeq::total_factors() const {
  if (tail_ != TailKind::Zero) return Cardinal::aleph0();
  Cardinal total(0);
  for (const auto& c : prefix_) total = total + c;
  return total;
}

MultiplicitySeq operator+(const MultiplicitySeq& a, const MultiplicitySeq& b) {
  const std::size_t len = std::max(a.prefix().size(), b.prefix().size());
  const std::size_t period = std::lcm(a.period(), b.period());
  return MultiplicitySeq::from_function(len, period,
                                        [&](std::size_t i) { return a.at(i) + b.at(i); });
}

MultiplicitySeq MultiplicitySeq::scaled(Cardinal k) const {
  return from_function(prefix_.size(), period(), [&](std::size_t i) { return at(i) * k; });
}

}  // namespace propcalc
