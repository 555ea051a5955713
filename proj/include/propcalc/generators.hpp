#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "propcalc/descriptor.hpp"
#include "propcalc/finite_group.hpp"

namespace propcalc::gen {

using Rng = std::mt19937_64;

/// Layers drawn from a small pool so that equal layers recur.
CartesianDescriptor unbounded_layer(Rng& rng, std::uint64_t p);
CartesianDescriptor bounded_layer(Rng& rng, std::uint64_t p);

/// A valid torsion sequence of type w*k + n.
TorsionSequence sequence_of_type(Rng& rng, std::uint64_t p, std::uint64_t k, std::uint64_t n,
                                 bool unbounded_final);

struct DescriptorOptions {
  std::uint64_t max_limit_blocks = 1;
  std::uint64_t max_finite_tail = 2;
  bool allow_aleph0_free_rank = true;
};

/// A normalized valid descriptor.
ProPDescriptor descriptor(Rng& rng, const DescriptorOptions& opts = {});

/// Every group (+)C_{p^{e_j}} with |G| <= p^max_log, one per partition.
std::vector<FiniteAbelianPGroup> groups_up_to(std::uint64_t p, unsigned max_log);

}  // namespace propcalc::gen
