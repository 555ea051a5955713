#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "propcalc/descriptor.hpp"
#include "propcalc/layer_split.hpp"

namespace propcalc {

struct InvariantComparison {
  std::string name;
  std::string left;
  std::string right;
  friend bool operator==(const InvariantComparison&, const InvariantComparison&) = default;
};

/// When the verdict is true, `evidence` lists every compared invariant; when
/// false it holds exactly the first mismatch.
struct IsoCertificate {
  bool verdict = false;
  std::string rule;
  std::vector<InvariantComparison> evidence;
};

IsoCertificate topologically_isomorphic(const ProPDescriptor& a, const ProPDescriptor& b);
/// Unbounded torsion on both sides: compare the first layers only.  Bounded on
/// both sides: same as the topological decision.  Mixed: not isomorphic.
IsoCertificate abstractly_isomorphic(const ProPDescriptor& a, const ProPDescriptor& b);

/// A cyclic factor C_{p^u} of a's layers, or one link of a free-rank chain.
struct Demand {
  std::string source;  // "layer[w+1]" or "free[0]"
  std::size_t exponent = 0;
  std::uint64_t copy = 0;
};

struct Assignment {
  Demand demand;
  FactorSlot target;  // factor C_{p^v} of b's first layer, v >= u
};

struct EmbeddingWitness {
  /// Assignments for the first `demand_limit` demands, made greedily in
  /// increasing u.
  std::vector<Assignment> assignments;
  /// For each free generator listed, a chain of slots of strictly increasing
  /// exponent.
  std::vector<std::vector<FactorSlot>> free_chains;
  /// True when a has finitely many demands and all of them are listed.
  bool complete = false;
};

struct EmbeddingResult {
  bool supported = false;
  EmbeddingWitness witness;
};

EmbeddingResult decide_embedding(const ProPDescriptor& a, const ProPDescriptor& b,
                                 std::uint64_t demand_limit = 32, std::size_t chain_length = 8);

/// Checks the witness rule on level-`level` materializations: every cyclic
/// factor of a's materialization goes to a distinct slot of b's first layer
/// with v >= u, and the induced map is injective.  Throws when b's first
/// layer is bounded.
struct FiniteEmbeddingCheck {
  bool well_defined = false;
  /// |image| = |domain|, with the image order read off an exact Smith form.
  bool injective_by_index = false;
  /// Set when every factor order fits in 64 bits.
  std::optional<bool> injective_by_kernel;
  /// Set when the domain is small enough to compare images element by element.
  std::optional<bool> injective_by_enumeration;
  std::string domain;
  /// The summand of b's first layer spanned by the assigned slots.
  std::string codomain;
  bool ok() const {
    return well_defined && injective_by_index && injective_by_kernel.value_or(true) &&
           injective_by_enumeration.value_or(true);
  }
};
FiniteEmbeddingCheck check_embedding_at_level(const ProPDescriptor& a, const ProPDescriptor& b,
                                              unsigned level, std::uint64_t cap);

/// Lazily enumerable factorization d = prod_n K_n.
class ProductDecomposition {
 public:
  ProductDecomposition(ProPDescriptor d, bool cyclic_tops);

  /// nullopt for w many factors.
  std::optional<std::uint64_t> count() const;
  ProPDescriptor factor(std::uint64_t n) const;
  /// Product of the factors with index >= k.
  ProPDescriptor tail(std::uint64_t k) const;
  std::vector<ProPDescriptor> take(std::uint64_t k) const;
  bool cyclic_tops() const { return cyclic_tops_; }

 private:
  ProPDescriptor d_;
  bool cyclic_tops_;
};

/// Throws "not decomposable" for finite d, torsion-free d, or a finite first
/// layer.  With cyclic_tops, the final layer must be non-cyclic and the type
/// a successor.
ProductDecomposition decompose_infinite_product(const ProPDescriptor& d, bool cyclic_tops = false);

struct PeeledDescriptor {
  ProPDescriptor dual_reduced;
  Cardinal free_rank;
};
PeeledDescriptor peel_free_part(const ProPDescriptor& d);

}  // namespace propcalc
