#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "propcalc/descriptor.hpp"
#include "propcalc/finite_group.hpp"

namespace propcalc {

struct PresentationTree;
using TreePtr = std::shared_ptr<const PresentationTree>;

enum class FamilyKind {
  /// Members carry the residue parts of the earlier layers and one cyclic
  /// factor of the final layer on top.
  CyclicTop,
  /// Realizes a sequence of limit type w*k; member m has type w*(k-1) + m + 1.
  LimitCofinal,
  /// Like LimitCofinal but every member has a cyclic top layer, built from
  /// the first cyclic factor of each layer of the last w-block.
  LimitCyclicTop,
};

/// An w-indexed (or finite) family of trees produced on demand from the
/// sequence it realizes.
struct ProductFamily {
  FamilyKind kind = FamilyKind::CyclicTop;
  std::uint64_t prime = 2;
  TorsionSequence source;

  /// Number of members, nullopt for w many.
  std::optional<std::uint64_t> count() const;
  TorsionSequence member_sequence(std::uint64_t m) const;
  TreePtr member(std::uint64_t m) const;
  /// Torsion sequence of the product of all members with index >= k.
  TorsionSequence tail_sequence(std::uint64_t k) const;

  friend bool operator==(const ProductFamily&, const ProductFamily&) = default;
};

/// Unit residue chosen for each cyclic factor of the child's top quotient.
struct DiagonalSpec {
  std::int64_t default_unit = 1;
  std::map<std::uint64_t, std::int64_t> overrides;

  std::int64_t unit(std::uint64_t factor) const;
  friend bool operator==(const DiagonalSpec&, const DiagonalSpec&) = default;
};

struct LeafNode {
  CartesianDescriptor layer;
  friend bool operator==(const LeafNode&, const LeafNode&) = default;
};

struct ProductNode {
  std::uint64_t prime = 2;
  std::vector<TreePtr> children;
  std::optional<ProductFamily> family;  // replaces children when set
};

/// <H, x : p^r x = delta>
struct ExtensionNode {
  std::uint64_t prime = 2;
  TreePtr child;
  unsigned r = 1;
  DiagonalSpec diagonal;
};

struct PresentationTree {
  std::variant<LeafNode, ProductNode, ExtensionNode> node;
};

bool operator==(const PresentationTree& a, const PresentationTree& b);

TreePtr make_leaf(CartesianDescriptor layer);
TreePtr make_product(std::uint64_t prime, std::vector<TreePtr> children);
TreePtr make_family(ProductFamily family);
TreePtr make_extension(std::uint64_t prime, TreePtr child, unsigned r, DiagonalSpec diagonal = {});

/// Builds a tree realizing a valid torsion sequence.  Throws on invalid input
/// with the validation report in the message.  `prime` labels the empty
/// product built for an empty sequence.
TreePtr construct(const TorsionSequence& seq, std::uint64_t prime = 2);

/// "empty", "base", or the case label "I".."V" of the root.
std::string construction_case(const PresentationTree& t);

/// Recomputes the torsion sequence of a tree.  Families contribute their
/// first `family_members` members, each verified recursively, times the
/// symbolic tail of the rest.
TorsionSequence verify_construction_symbolic(const PresentationTree& t,
                                             std::uint64_t family_members = 2);

/// Finite quotient of a tree at resolution `level`.
struct Materialization {
  PresentedGroup presented;
  IntMatrix relations;
  /// Generators of the presentation in order: leaves contribute one per
  /// cyclic factor, extensions one fresh generator after their child's.
  std::size_t generator_count = 0;
  /// Generators of the direct child of an Extension root (a prefix of all
  /// generators); empty for other roots.
  std::size_t child_generator_count = 0;
  /// Top cyclic factors, as integer combinations of generators.
  std::vector<std::vector<Integer>> tops;

  const FiniteAbelianPGroup& group() const { return presented.group; }
};

/// Presentations with more generators than this are refused.
inline constexpr std::size_t kMaterializeGeneratorLimit = 2048;

Materialization materialize(const PresentationTree& t, unsigned level, std::uint64_t cap);
/// The relation matrix of materialize() alone, without building the group.
IntMatrix materialize_relations(const PresentationTree& t, unsigned level, std::uint64_t cap);

/// The extension diagonal of an Extension tree at `level`, as an element of
/// the child's materialization.
Element truncated_diagonal(const PresentationTree& extension, unsigned level, std::uint64_t cap,
                           FiniteAbelianPGroup* child_group = nullptr);

/// delta not in pH + H[p^{level-1}].
bool delta_outside(const FiniteAbelianPGroup& h, const Element& delta, unsigned level);
bool check_delta_condition(const PresentationTree& extension, unsigned level, std::uint64_t cap = 1);

}  // namespace propcalc
