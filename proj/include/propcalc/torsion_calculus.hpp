#pragma once

#include <vector>

#include "propcalc/descriptor.hpp"

namespace propcalc {

/// The first torsion layer N_0, trivial for torsion-free groups.
CartesianDescriptor closure_of_torsion(const ProPDescriptor& d);

struct SeriesData {
  CartesianDescriptor layer;
  /// Descriptor of G / T_alpha(G).
  ProPDescriptor remainder;
};

/// Layer alpha and the quotient by T_alpha.  alpha may equal the torsion type,
/// in which case the layer is trivial.
SeriesData torsion_series_data(const ProPDescriptor& d, const Ordinal& alpha);

Ordinal torsion_type(const ProPDescriptor& d);

/// Termwise product of torsion sequences aligned by ordinal position.
TorsionSequence sequence_product(const TorsionSequence& a, const TorsionSequence& b,
                                 std::uint64_t prime);

ProPDescriptor product(const ProPDescriptor& a, const ProPDescriptor& b);
/// Product of a list; the empty product needs the prime.
ProPDescriptor product(const std::vector<ProPDescriptor>& ds, std::uint64_t prime);

DiscreteDescriptor dual(const ProPDescriptor& d);
ProPDescriptor dual_discrete(const DiscreteDescriptor& e);

}  // namespace propcalc
