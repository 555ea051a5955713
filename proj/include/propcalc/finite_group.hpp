#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "propcalc/smith.hpp"

namespace propcalc {

/// Coordinates with respect to the canonical cyclic generators;
/// coords[j] lies in [0, p^{e_j}).
using Element = std::vector<std::int64_t>;

/// Full element enumeration is refused above this many elements.
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 16;

/// (+)_j C_{p^{e_j}} with e_1 >= e_2 >= ... >= e_k >= 1.
class FiniteAbelianPGroup {
 public:
  FiniteAbelianPGroup() = default;
  /// Sorts the exponents and drops zeros.  Throws when p^e would not fit in
  /// 62 bits.
  FiniteAbelianPGroup(std::uint64_t prime, std::vector<unsigned> exponents);

  std::uint64_t prime() const { return prime_; }
  const std::vector<unsigned>& exponents() const { return exponents_; }
  std::size_t rank() const { return exponents_.size(); }
  /// log_p |G|
  unsigned log_order() const;
  /// log_p of the exponent of G (0 for the trivial group).
  unsigned exponent() const { return exponents_.empty() ? 0 : exponents_.front(); }
  std::int64_t modulus(std::size_t j) const { return moduli_[j]; }
  bool is_trivial() const { return exponents_.empty(); }

  /// |G|; throws SizeLimitError above `limit`.
  std::uint64_t order(std::uint64_t limit = kEnumerationLimit) const;

  Element zero() const { return Element(rank(), 0); }
  Element generator(std::size_t j) const;
  bool contains(const Element& x) const;
  Element add(const Element& x, const Element& y) const;
  Element negate(const Element& x) const;
  Element scale(const Element& x, const Integer& k) const;
  /// Reduces arbitrary integer coordinates into canonical ranges.
  Element reduce(std::span<const Integer> coords) const;
  /// log_p of the order of x.
  unsigned order_log(const Element& x) const;

  /// Mixed-radix index of x in [0, |G|).
  std::uint64_t index_of(const Element& x) const;
  Element element_at(std::uint64_t index) const;
  void element_at(std::uint64_t index, Element& out) const;

  /// "C_{2^3} x C_{2^1}" or "trivial".
  std::string to_string() const;

  friend bool operator==(const FiniteAbelianPGroup& a, const FiniteAbelianPGroup& b) {
    return a.prime_ == b.prime_ && a.exponents_ == b.exponents_;
  }

 private:
  std::uint64_t prime_ = 2;
  std::vector<unsigned> exponents_;
  std::vector<std::int64_t> moduli_;
};

std::int64_t checked_power(std::uint64_t p, unsigned e);
/// p-adic valuation of a nonzero integer.
unsigned valuation(const Integer& n, std::uint64_t p);

/// A subgroup given by generators, with its canonical decomposition.
struct Subgroup {
  std::vector<Element> generators;
  FiniteAbelianPGroup structure;
};

/// Result of reducing a relation presentation at p.
struct PresentedGroup {
  FiniteAbelianPGroup group;
  /// Image in `group` of each original generator.
  std::vector<Element> generator_images;
};

/// Z^cols / rowspace(relations), localized at p.  Throws "non-finite p-part"
/// if the p-part is infinite.
PresentedGroup group_from_presentation(const IntMatrix& relations, std::uint64_t p);
/// Exponents of the p-part of Z^n / rows(relations), descending, computed in
/// exact arithmetic; no 64-bit bound on the factor orders.
std::vector<unsigned> presentation_exponents(const IntMatrix& relations, std::uint64_t p);

/// Canonical decomposition of <gens> computed from |p^t <gens>| via SNF.
Subgroup subgroup_generated(const FiniteAbelianPGroup& g, std::vector<Element> gens);
/// log_p |G / <gens>|
unsigned log_index(const FiniteAbelianPGroup& g, std::span<const Element> gens);
/// Exact membership test x in <gens> by solving the congruence system.
bool in_subgroup(const FiniteAbelianPGroup& g, std::span<const Element> gens, const Element& x);

/// nG
Subgroup power_subgroup(const FiniteAbelianPGroup& g, std::uint64_t n);
/// G[n] = {x : nx = 0}
Subgroup torsion_bracket(const FiniteAbelianPGroup& g, std::uint64_t n);
/// G/H; throws when a generator of H is not an element of G.
FiniteAbelianPGroup quotient(const FiniteAbelianPGroup& g, std::span<const Element> h);

/// A homomorphism given by the images of the canonical generators.
struct Homomorphism {
  FiniteAbelianPGroup domain;
  FiniteAbelianPGroup codomain;
  std::vector<Element> images;

  Element apply(const Element& x) const;
  /// p^{e_j} * images[j] = 0 for every generator.
  bool well_defined() const;
};

Subgroup image(const Homomorphism& f);
unsigned log_kernel_order(const Homomorphism& f);
std::vector<Element> kernel_generators(const Homomorphism& f);
bool is_injective(const Homomorphism& f);
bool is_surjective(const Homomorphism& f);

/// Multiplicity of each exponent in the canonical decomposition.
std::map<unsigned, std::uint64_t> decomposition_multiplicities(const FiniteAbelianPGroup& g);

}  // namespace propcalc
