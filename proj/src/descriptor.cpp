#include "propcalc/descriptor.hpp"

#include "propcalc/error.hpp"

namespace propcalc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

CartesianDescriptor operator*(const CartesianDescriptor& a, const CartesianDescriptor& b) {
  if (a.prime != b.prime) throw Error("mixed primes in layer product");
  return {a.prime, a.mults + b.mults};
}

std::optional<CartesianDescriptor> Block::at(std::size_t n) const {
  if (n < head.size()) return head[n];
  return repeat;
}

TorsionSequence::TorsionSequence(std::vector<Segment> segments) : segments_(std::move(segments)) {}

TorsionSequence TorsionSequence::finite(std::vector<CartesianDescriptor> entries) {
  if (entries.empty()) return {};
  return TorsionSequence({FiniteRun{std::move(entries)}});
}

TorsionSequence TorsionSequence::from_blocks(const std::vector<Block>& blocks) {
  std::vector<Segment> segs;
  for (const auto& b : blocks) {
    if (b.repeat)
      segs.emplace_back(OmegaRun{b.head, *b.repeat});
    else if (!b.head.empty())
      segs.emplace_back(FiniteRun{b.head});
  }
  return TorsionSequence(std::move(segs));
}

std::vector<Block> TorsionSequence::blocks() const {
  std::vector<Block> out;
  Block cur;
  for (const auto& seg : segments_) {
    if (const auto* run = std::get_if<FiniteRun>(&seg)) {
      cur.head.insert(cur.head.end(), run->entries.begin(), run->entries.end());
    } else {
      const auto& om = std::get<OmegaRun>(seg);
      cur.head.insert(cur.head.end(), om.prefix.begin(), om.prefix.end());
      cur.repeat = om.repeat;
      out.push_back(std::move(cur));
      cur = Block{};
    }
  }
  if (!cur.head.empty()) out.push_back(std::move(cur));
  return out;
}

bool TorsionSequence::empty() const { return blocks().empty(); }

Ordinal TorsionSequence::order_type() const {
  const auto bs = blocks();
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  for (const auto& b : bs) {
    if (b.repeat)
      ++k;
    else
      n = b.head.size();
  }
  return Ordinal::omega_times(k, n);
}

namespace {

struct BlockPosition {
  std::uint64_t block;
  std::uint64_t offset;
};

BlockPosition split_position(const Ordinal& a) {
  if (!a.below_omega_squared()) throw Error("index exceeds torsion type");
  return {a.coefficient(1), a.coefficient(0)};
}

}  // namespace

CartesianDescriptor TorsionSequence::at(const Ordinal& position) const {
  if (position >= order_type()) throw Error("index exceeds torsion type");
  const auto [k, n] = split_position(position);
  return *blocks()[k].at(n);
}

TorsionSequence TorsionSequence::drop(const Ordinal& start) const {
  if (start > order_type()) throw Error("index exceeds torsion type");
  const auto [k, n] = split_position(start);
  auto bs = blocks();
  std::vector<Block> out;
  for (std::size_t b = k; b < bs.size(); ++b) {
    Block blk = bs[b];
    if (b == k) {
      const std::size_t cut = std::min<std::size_t>(n, blk.head.size());
      blk.head.erase(blk.head.begin(), blk.head.begin() + static_cast<std::ptrdiff_t>(cut));
    }
    out.push_back(std::move(blk));
  }
  return from_blocks(out);
}

TorsionSequence TorsionSequence::take(const Ordinal& end) const {
  if (end > order_type()) throw Error("index exceeds torsion type");
  const auto [k, n] = split_position(end);
  auto bs = blocks();
  std::vector<Block> out(bs.begin(), bs.begin() + static_cast<std::ptrdiff_t>(k));
  if (n > 0) {
    Block last;
    for (std::size_t j = 0; j < n; ++j) last.head.push_back(*bs[k].at(j));
    out.push_back(std::move(last));
  }
  return from_blocks(out);
}

std::optional<CartesianDescriptor> TorsionSequence::final_entry() const {
  const auto bs = blocks();
  if (bs.empty() || bs.back().repeat) return std::nullopt;
  return bs.back().head.back();
}

TorsionSequence TorsionSequence::normalized() const {
  auto bs = blocks();
  for (auto& b : bs) {
    for (auto& e : b.head) e.mults = normalize(e.mults);
    if (b.repeat) {
      b.repeat->mults = normalize(b.repeat->mults);
      while (!b.head.empty() && b.head.back() == *b.repeat) b.head.pop_back();
    }
  }
  while (!bs.empty()) {
    Block& last = bs.back();
    if (last.repeat && last.repeat->is_trivial()) last.repeat.reset();
    if (last.repeat) break;
    while (!last.head.empty() && last.head.back().is_trivial()) last.head.pop_back();
    if (!last.head.empty()) break;
    bs.pop_back();
  }
  return from_blocks(bs);
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::TrivialEntry:
      return "trivial";
    case ViolationKind::BoundedExponent:
      return "bounded exponent";
    case ViolationKind::PrimeMismatch:
      return "prime mismatch";
  }
  return "?";
}

std::string ValidityReport::to_string() const {
  if (valid()) return "valid";
  std::string out = "invalid:";
  for (const auto& v : violations) {
    out += " [" + v.position.to_string() + (v.repeating ? "+" : "") + ": " +
           propcalc::to_string(v.kind) + "]";
  }
  return out;
}

ValidityReport validate(const TorsionSequence& seq) {
  ValidityReport report;
  const auto bs = seq.blocks();
  std::optional<std::uint64_t> prime;
  auto check = [&](const CartesianDescriptor& e, Ordinal pos, bool repeating, bool is_final) {
    if (!prime) prime = e.prime;
    if (e.prime != *prime) {
      report.violations.push_back({pos, repeating, ViolationKind::PrimeMismatch});
      return;
    }
    const auto mults = normalize(e.mults);
    if (mults.is_trivial())
      report.violations.push_back({pos, repeating, ViolationKind::TrivialEntry});
    else if (!is_final && mults.bounded_exponent())
      report.violations.push_back({pos, repeating, ViolationKind::BoundedExponent});
  };
  for (std::size_t k = 0; k < bs.size(); ++k) {
    const auto& b = bs[k];
    for (std::size_t n = 0; n < b.head.size(); ++n) {
      const bool is_final = k + 1 == bs.size() && !b.repeat && n + 1 == b.head.size();
      check(b.head[n], Ordinal::omega_times(k, n), false, is_final);
    }
    if (b.repeat) check(*b.repeat, Ordinal::omega_times(k, b.head.size()), true, false);
  }
  return report;
}

ProPDescriptor ProPDescriptor::cartesian(const CartesianDescriptor& layer) {
  return ProPDescriptor{layer.prime, TorsionSequence::finite({layer}), Cardinal(0)}.normalized();
}

ProPDescriptor ProPDescriptor::normalized() const {
  if (!is_prime(prime)) throw Error(std::to_string(prime) + " is not prime");
  for (const auto& b : torsion.blocks()) {
    for (const auto& e : b.head)
      if (e.prime != prime) throw Error("mixed primes in descriptor");
    if (b.repeat && b.repeat->prime != prime) throw Error("mixed primes in descriptor");
  }
  return {prime, torsion.normalized(), free_rank};
}

bool ProPDescriptor::is_finite_group() const {
  if (!free_rank.is_zero()) return false;
  for (const auto& b : torsion.blocks()) {
    if (b.repeat) return false;
    for (const auto& e : b.head)
      if (!normalize(e.mults).is_finite_group()) return false;
  }
  return true;
}

}  // namespace propcalc
