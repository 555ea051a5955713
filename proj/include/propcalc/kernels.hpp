#pragma once

// Element-enumeration kernels behind the finite oracle layer.  Each kernel
// has a serial reference implementation and an OpenMP version with the same
// signature and bit-identical output; tests compare the two and bench/
// measures them.

#include <cstdint>
#include <span>
#include <vector>

#include "propcalc/finite_group.hpp"

namespace propcalc::kernels {

/// chi_c(s) for the character with dual coordinates c: sum_j c_j s_j p^{E-e_j}
/// reduced mod p^E, E the exponent of g.
std::int64_t pairing(const FiniteAbelianPGroup& g, std::span<const std::int64_t> c,
                     std::span<const std::int64_t> s);

namespace serial {

/// Codomain index of f(x) for every domain index x.
std::vector<std::uint64_t> evaluate(const Homomorphism& f);
/// For every character index c of G*: 1 iff chi_c kills every generator.
std::vector<std::uint8_t> annihilator_mask(const FiniteAbelianPGroup& g,
                                           std::span<const Element> gens);
/// log_p of the order of every element, by index.
std::vector<unsigned> element_orders(const FiniteAbelianPGroup& g);
/// Number of pairs (x, chi) with chi(x) != psi_{images[x]}(chi), where
/// psi_d is the character of G* with coordinates d.
std::uint64_t double_dual_mismatches(const FiniteAbelianPGroup& g,
                                     std::span<const std::uint64_t> images);

}  // namespace serial

namespace parallel {

std::vector<std::uint64_t> evaluate(const Homomorphism& f);
std::vector<std::uint8_t> annihilator_mask(const FiniteAbelianPGroup& g,
                                           std::span<const Element> gens);
std::vector<unsigned> element_orders(const FiniteAbelianPGroup& g);
std::uint64_t double_dual_mismatches(const FiniteAbelianPGroup& g,
                                     std::span<const std::uint64_t> images);

}  // namespace parallel

}  // namespace propcalc::kernels
