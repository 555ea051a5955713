#pragma once

// Index partitions of Cartesian layers used to split a layer into infinitely
// many pieces.  For an unbounded layer with prefix length L and period P the
// index i = L + 1 + P*q + r belongs to part v_2(q + 1); prefix indices belong
// to part 0.  Every part contains whole periods infinitely often, so every
// part is again unbounded.

#include <cstdint>
#include <functional>
#include <vector>

#include "propcalc/descriptor.hpp"

namespace propcalc {

/// Part n of an unbounded layer.
CartesianDescriptor residue_part(const CartesianDescriptor& layer, std::uint64_t n);
/// Union of parts n, n+1, ...; residue_tail(layer, 0) is the layer itself.
CartesianDescriptor residue_tail(const CartesianDescriptor& layer, std::uint64_t n);

/// One cyclic factor of a layer: copy `copy` of C_{p^exponent}.
struct FactorSlot {
  std::size_t exponent = 0;
  std::uint64_t copy = 0;
  friend bool operator==(const FactorSlot&, const FactorSlot&) = default;
};

/// The first `count` cyclic factors in diagonal order (s = 0, 1, ...; within
/// s, exponent i = 1..s+1 and copy s+1-i).  Stops early for finite layers.
std::vector<FactorSlot> cyclic_slots(const CartesianDescriptor& layer, std::uint64_t count);
/// The layer with its first `count` factors in diagonal order removed.
CartesianDescriptor remove_first_factors(const CartesianDescriptor& layer, std::uint64_t count);
/// Exponent of the smallest cyclic factor; throws on a trivial layer.
std::size_t first_cyclic_exponent(const CartesianDescriptor& layer);
/// The layer with one copy of C_{p^exponent} removed.
CartesianDescriptor remove_factor(const CartesianDescriptor& layer, std::size_t exponent);
CartesianDescriptor cyclic_layer(std::uint64_t prime, std::size_t exponent);

/// Applies f to every entry (head and repeat) of every block.
TorsionSequence map_entries(const TorsionSequence& seq,
                            const std::function<CartesianDescriptor(const CartesianDescriptor&)>& f);

}  // namespace propcalc
