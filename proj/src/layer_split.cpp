#include "propcalc/layer_split.hpp"

#include <limits>
#include <queue>
#include <tuple>

#include "propcalc/error.hpp"

namespace propcalc {

namespace {

unsigned two_adic(std::uint64_t x) {
  unsigned v = 0;
  while (x % 2 == 0) {
    x /= 2;
    ++v;
  }
  return v;
}

std::uint64_t pow2(std::uint64_t n) {
  if (n >= 40) throw Error("residue part index too large");
  return std::uint64_t{1} << n;
}

const MultiplicitySeq& unbounded_mults(const CartesianDescriptor& layer) {
  if (!layer.mults.unbounded_torsion()) throw Error("residue split needs an unbounded layer");
  return layer.mults;
}

}  // namespace

CartesianDescriptor residue_part(const CartesianDescriptor& layer, std::uint64_t n) {
  const auto& m = unbounded_mults(layer);
  const std::size_t len = m.prefix().size();
  const std::size_t period = m.period();
  const std::uint64_t cycle = pow2(n + 1);
  auto f = [&](std::size_t i) -> Cardinal {
    if (i <= len) return n == 0 ? m.at(i) : Cardinal(0);
    const std::uint64_t q = (i - len - 1) / period;
    return two_adic(q + 1) == n ? m.at(i) : Cardinal(0);
  };
  return {layer.prime, MultiplicitySeq::from_function(len, period * cycle, f)};
}

CartesianDescriptor residue_tail(const CartesianDescriptor& layer, std::uint64_t n) {
  if (n == 0) return layer;
  const auto& m = unbounded_mults(layer);
  const std::size_t len = m.prefix().size();
  const std::size_t period = m.period();
  const std::uint64_t cycle = pow2(n);
  auto f = [&](std::size_t i) -> Cardinal {
    if (i <= len) return Cardinal(0);
    const std::uint64_t q = (i - len - 1) / period;
    return (q + 1) % cycle == 0 ? m.at(i) : Cardinal(0);
  };
  return {layer.prime, MultiplicitySeq::from_function(len, period * cycle, f)};
}

std::vector<FactorSlot> cyclic_slots(const CartesianDescriptor& layer, std::uint64_t count) {
  std::vector<FactorSlot> out;
  const auto& m = layer.mults;
  if (m.is_trivial() || count == 0) return out;
  const Cardinal total = m.total_factors();
  const std::uint64_t wanted = total.is_finite() ? std::min(count, total.value()) : count;

  // Slot (i, c) sits on diagonal i - 1 + c; pending holds the next slot of
  // each exponent already reached, ordered by (diagonal, exponent).
  using Pending = std::tuple<std::uint64_t, std::size_t, std::uint64_t>;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending;
  auto emit_through = [&](std::uint64_t diagonal) {
    while (out.size() < wanted && !pending.empty() && std::get<0>(pending.top()) <= diagonal) {
      const auto [s, i, c] = pending.top();
      pending.pop();
      out.push_back({i, c});
      if (Cardinal(c + 1) < m.at(i)) pending.emplace(s + 1, i, c + 1);
    }
  };
  for (std::size_t i = 1; out.size() < wanted; ++i) {
    emit_through(i - 1);
    if (m.at(i) > Cardinal(0)) pending.emplace(i - 1, i, 0);
    if (m.bounded_exponent() && i >= m.prefix().size()) {
      emit_through(std::numeric_limits<std::uint64_t>::max());
      break;
    }
  }
  return out;
}

CartesianDescriptor remove_first_factors(const CartesianDescriptor& layer, std::uint64_t count) {
  CartesianDescriptor out = layer;
  for (const auto& slot : cyclic_slots(layer, count)) out = remove_factor(out, slot.exponent);
  return out;
}

std::size_t first_cyclic_exponent(const CartesianDescriptor& layer) {
  const auto first = layer.mults.first_nonzero();
  if (!first) throw Error("trivial layer has no cyclic factor");
  return *first;
}

CartesianDescriptor remove_factor(const CartesianDescriptor& layer, std::size_t exponent) {
  const auto& m = layer.mults;
  if (m.at(exponent).is_zero()) throw Error("layer has no factor of that exponent");
  const std::size_t len = std::max(m.prefix().size(), exponent);
  auto f = [&](std::size_t i) { return i == exponent ? m.at(i).minus(1) : m.at(i); };
  return {layer.prime, MultiplicitySeq::from_function(len, m.period(), f)};
}

CartesianDescriptor cyclic_layer(std::uint64_t prime, std::size_t exponent) {
  return {prime, MultiplicitySeq::cyclic(exponent)};
}

TorsionSequence map_entries(const TorsionSequence& seq,
                            const std::function<CartesianDescriptor(const CartesianDescriptor&)>& f) {
  auto bs = seq.blocks();
  for (auto& b : bs) {
    for (auto& e : b.head) e = f(e);
    if (b.repeat) b.repeat = f(*b.repeat);
  }
  return TorsionSequence::from_blocks(bs);
}

}  // namespace propcalc
