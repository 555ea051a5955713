#include "propcalc/ordinal.hpp"

#include <cctype>

#include "propcalc/error.hpp"

namespace propcalc {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = 0;
  if (__builtin_add_overflow(a, b, &s)) throw Error("ordinal coefficient overflow");
  return s;
}

}  // namespace

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw Error("CNF coefficients must be positive");
    if (i > 0 && terms[i].exponent >= terms[i - 1].exponent)
      throw Error("CNF exponents must be strictly decreasing");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

Ordinal Ordinal::finite(std::uint64_t n) {
  return n == 0 ? Ordinal() : from_terms({{0, n}});
}

Ordinal Ordinal::omega_power(std::uint64_t exponent, std::uint64_t coefficient) {
  return coefficient == 0 ? Ordinal() : from_terms({{exponent, coefficient}});
}

Ordinal Ordinal::omega_times(std::uint64_t k, std::uint64_t n) {
  std::vector<OrdinalTerm> t;
  if (k > 0) t.push_back({1, k});
  if (n > 0) t.push_back({0, n});
  return from_terms(std::move(t));
}

std::uint64_t Ordinal::coefficient(std::uint64_t exponent) const {
  for (const auto& t : terms_)
    if (t.exponent == exponent) return t.coefficient;
  return 0;
}

Ordinal Ordinal::successor() const { return *this + finite(1); }

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw Error("not a successor ordinal");
  Ordinal o = *this;
  if (--o.terms_.back().coefficient == 0) o.terms_.pop_back();
  return o;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.terms_.empty()) return a;
  const std::uint64_t lead = b.terms_.front().exponent;
  Ordinal out;
  for (const auto& t : a.terms_) {
    if (t.exponent < lead) break;
    out.terms_.push_back(t);
  }
  auto it = b.terms_.begin();
  if (!out.terms_.empty() && out.terms_.back().exponent == lead) {
    out.terms_.back().coefficient = checked_add(out.terms_.back().coefficient, it->coefficient);
    ++it;
  }
  out.terms_.insert(out.terms_.end(), it, b.terms_.end());
  return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.exponent != y.exponent) return x.exponent <=> y.exponent;
    if (x.coefficient != y.coefficient) return x.coefficient <=> y.coefficient;
  }
  return a.terms_.size() <=> b.terms_.size();
}

Comparison ord_compare(const Ordinal& a, const Ordinal& b) {
  const auto c = a <=> b;
  if (c < 0) return Comparison::LT;
  if (c > 0) return Comparison::GT;
  return Comparison::EQ;
}

Ordinal Ordinal::minus(const Ordinal& b) const {
  if (b > *this) throw Error("ordinal subtraction requires b <= a");
  std::size_t i = 0;
  while (i < b.terms_.size() && terms_[i] == b.terms_[i]) ++i;
  if (i == b.terms_.size()) return from_terms({terms_.begin() + i, terms_.end()});
  // First difference: either a has a larger exponent here or the same
  // exponent with a larger coefficient.  b's remaining terms are absorbed.
  std::vector<OrdinalTerm> out(terms_.begin() + i, terms_.end());
  if (out.front().exponent == b.terms_[i].exponent)
    out.front().coefficient -= b.terms_[i].coefficient;
  return from_terms(std::move(out));
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += "+";
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "w";
    if (t.exponent > 1) out += "^" + std::to_string(t.exponent);
    if (t.coefficient > 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

Ordinal Ordinal::parse(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error("invalid ordinal '" + std::string(text) + "' at offset " + std::to_string(pos) +
                 ": " + what);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> std::uint64_t {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw fail("expected a number");
    std::uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (__builtin_mul_overflow(v, 10, &v) ||
          __builtin_add_overflow(v, static_cast<std::uint64_t>(text[pos] - '0'), &v))
        throw fail("number too large");
      ++pos;
    }
    return v;
  };
  Ordinal result;
  skip_ws();
  if (pos == text.size()) throw fail("empty input");
  while (true) {
    skip_ws();
    Ordinal term;
    if (text.substr(pos, 5) == "omega" || (pos < text.size() && text[pos] == 'w')) {
      pos += text.substr(pos, 5) == "omega" ? 5 : 1;
      std::uint64_t e = 1, c = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = number();
        skip_ws();
      }
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        c = number();
      }
      if (c == 0) throw fail("coefficient must be positive");
      term = omega_power(e, c);
    } else {
      term = finite(number());
    }
    result = result + term;
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '+') throw fail("expected '+'");
    ++pos;
  }
  return result;
}

Ordinal fundamental_term(const Ordinal& limit, std::uint64_t n) {
  if (!limit.is_limit()) throw Error("not a limit ordinal");
  if (n == 0) throw Error("fundamental sequence is indexed from 1");
  std::vector<OrdinalTerm> terms = limit.terms();
  OrdinalTerm last = terms.back();
  terms.pop_back();
  if (last.coefficient > 1) terms.push_back({last.exponent, last.coefficient - 1});
  return Ordinal::from_terms(std::move(terms)) + Ordinal::omega_power(last.exponent - 1, n);
}

FundamentalSequence::FundamentalSequence(Ordinal limit) : limit_(std::move(limit)) {
  if (!limit_.is_limit()) throw Error("not a limit ordinal");
}

std::vector<Ordinal> FundamentalSequence::take(std::uint64_t count) const {
  std::vector<Ordinal> out;
  out.reserve(count);
  for (std::uint64_t n = 1; n <= count; ++n) out.push_back((*this)[n]);
  return out;
}

}  // namespace propcalc
