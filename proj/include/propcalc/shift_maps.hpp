#pragma once

#include <cstdint>

#include "propcalc/finite_group.hpp"

namespace propcalc {

/// C_{p^i} -> C_{p^j}, x -> x mod p^j for j <= i and the zero map otherwise.
Homomorphism phi_map(std::uint64_t p, unsigned i, unsigned j);

/// prod_{i<=n} C_{p^i}, coordinates in descending exponent order.
FiniteAbelianPGroup truncated_cartesian(std::uint64_t p, unsigned n);

/// prod_{i<=n+1} C_{p^i} -> prod_{i<=n} C_{p^i},
/// (x_i) -> (x_i - x_{i+1} mod p^i)_{i<=n}.
Homomorphism theta_truncated(std::uint64_t p, unsigned n);

/// The element with a generator in every coordinate of
/// truncated_cartesian(p, n).
Element diagonal_eta(std::uint64_t p, unsigned n);

}  // namespace propcalc
