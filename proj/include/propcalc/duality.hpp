#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "propcalc/finite_group.hpp"

namespace propcalc {

/// A homomorphism G -> Z/p^target given by its values on the canonical
/// generators.  target is the exponent of G for every character built here.
struct Character {
  unsigned target_exponent = 0;
  std::vector<std::int64_t> values;

  friend bool operator==(const Character&, const Character&) = default;
};

/// A subset of a finite group stored as a membership mask over element
/// indices.
struct ElementSet {
  FiniteAbelianPGroup ambient;
  std::vector<std::uint8_t> mask;

  std::uint64_t size() const;
  bool contains(const Element& x) const { return mask[ambient.index_of(x)] != 0; }
  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.ambient == b.ambient && a.mask == b.mask;
  }
};

/// Canonical decomposition of a set that is a subgroup, read off from the
/// counts |A[p^t]|.
FiniteAbelianPGroup structure_of(const ElementSet& subgroup);

/// The subgroup generated by `gens`, enumerated.
ElementSet enumerate_subgroup(const FiniteAbelianPGroup& g, std::span<const Element> gens);

/// G* as an abstract group: the character with coordinates c sends generator
/// j to c_j * p^{E - e_j}.  Same decomposition as G.
FiniteAbelianPGroup character_group(const FiniteAbelianPGroup& g);
Character character_from_coordinates(const FiniteAbelianPGroup& g, const Element& dual_coords);
/// Every character of G in index order of G*.  Throws "oracle size limit"
/// above kEnumerationLimit elements.
std::vector<Character> all_characters(const FiniteAbelianPGroup& g);
std::int64_t evaluate(const FiniteAbelianPGroup& g, const Character& chi, const Element& x);
/// p^{e_j} * values[j] == 0 mod p^target for every j.
bool is_well_defined(const FiniteAbelianPGroup& g, const Character& chi);

/// Ann_{G*}(<s>) = {chi : chi(s) = 0 for all s}, as a subset of G*.
ElementSet annihilator(const FiniteAbelianPGroup& g, std::span<const Element> subgroup_gens);

/// {n * chi : chi in G*}, enumerated as the image of multiplication by n.
ElementSet multiples_in_dual(const FiniteAbelianPGroup& g, std::uint64_t n);

struct DoubleDualMap {
  /// Index in G** of ev_x for every element index x of G.
  std::vector<std::uint64_t> images;
  bool agrees_with_evaluation = false;  // ev_x(chi) = chi(x) for all x, chi
  bool homomorphism = false;
  bool bijective = false;
};

/// x -> (chi -> chi(x)).  Checks evaluation agreement over all pairs, so
/// |G| is limited to 2^16.
DoubleDualMap double_dual_map(const FiniteAbelianPGroup& g);

/// The quantity dim_{F_p} G[p^i] / (pG cap G[p^i]) by enumeration, for
/// i = 1..exponent(G).  It counts the cyclic factors of order at most p^i.
std::map<unsigned, std::uint64_t> ulm_cumulative_counts(const FiniteAbelianPGroup& g);

/// alpha_i = multiplicity of C_{p^i}, obtained from the enumerated counts as
/// the first differences of ulm_cumulative_counts.  Zero entries omitted.
std::map<unsigned, std::uint64_t> ulm_invariants_finite(const FiniteAbelianPGroup& g);

}  // namespace propcalc
