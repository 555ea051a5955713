#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "propcalc/cardinal.hpp"
#include "propcalc/multiplicity.hpp"
#include "propcalc/ordinal.hpp"

namespace propcalc {

bool is_prime(std::uint64_t n);

/// prod_i (C_{p^i})^{alpha_i}.
struct CartesianDescriptor {
  std::uint64_t prime = 2;
  MultiplicitySeq mults;

  static CartesianDescriptor trivial(std::uint64_t p) { return {p, {}}; }
  bool is_trivial() const { return mults.is_trivial(); }

  friend bool operator==(const CartesianDescriptor&, const CartesianDescriptor&) = default;
};

/// Cartesian product of two layers (pointwise multiplicity sum).
CartesianDescriptor operator*(const CartesianDescriptor& a, const CartesianDescriptor& b);

struct FiniteRun {
  std::vector<CartesianDescriptor> entries;
  friend bool operator==(const FiniteRun&, const FiniteRun&) = default;
};

/// prefix entries followed by `repeat` at every later finite position; the
/// run has order type w.
struct OmegaRun {
  std::vector<CartesianDescriptor> prefix;
  CartesianDescriptor repeat;
  friend bool operator==(const OmegaRun&, const OmegaRun&) = default;
};

using Segment = std::variant<FiniteRun, OmegaRun>;

/// The positions w*k + n (n in N) of a torsion sequence for one fixed k.
/// `repeat` is set when the block is infinite.
struct Block {
  std::vector<CartesianDescriptor> head;
  std::optional<CartesianDescriptor> repeat;

  /// Entry at finite offset n, or nullopt past the end of a finite block.
  std::optional<CartesianDescriptor> at(std::size_t n) const;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Transfinite sequence of Cartesian layers, written as FiniteRun/OmegaRun
/// segments.  Order types are below w^2.
class TorsionSequence {
 public:
  TorsionSequence() = default;
  explicit TorsionSequence(std::vector<Segment> segments);
  static TorsionSequence from_blocks(const std::vector<Block>& blocks);
  static TorsionSequence finite(std::vector<CartesianDescriptor> entries);

  const std::vector<Segment>& segments() const { return segments_; }
  /// Grouping by w-block; trailing empty finite blocks are omitted.
  std::vector<Block> blocks() const;

  bool empty() const;
  Ordinal order_type() const;
  /// Throws "index exceeds torsion type" when position >= order_type().
  CartesianDescriptor at(const Ordinal& position) const;
  /// Entries at positions >= start, re-indexed from 0.
  TorsionSequence drop(const Ordinal& start) const;
  /// Entries at positions < end.
  TorsionSequence take(const Ordinal& end) const;
  /// Last entry when the order type is a successor.
  std::optional<CartesianDescriptor> final_entry() const;

  /// Canonical form: each layer normalized, every infinite block written as
  /// one OmegaRun with minimal prefix, at most one trailing FiniteRun, and
  /// trailing trivial layers removed.
  TorsionSequence normalized() const;

  friend bool operator==(const TorsionSequence&, const TorsionSequence&) = default;

 private:
  std::vector<Segment> segments_;
};

enum class ViolationKind { TrivialEntry, BoundedExponent, PrimeMismatch };

struct Violation {
  Ordinal position;
  /// Set when the entry is the repeating entry of an w-run, so the violation
  /// recurs at every later position of the block.
  bool repeating = false;
  ViolationKind kind = ViolationKind::TrivialEntry;
};

struct ValidityReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  std::string to_string() const;
};

/// Every non-final entry must have unbounded exponent and the final entry
/// must be nontrivial.
ValidityReport validate(const TorsionSequence& seq);

/// G = G0 x (Z_p)^free_rank with G0 dual-reduced and described by its
/// torsion sequence.
struct ProPDescriptor {
  std::uint64_t prime = 2;
  TorsionSequence torsion;
  Cardinal free_rank;

  static ProPDescriptor trivial(std::uint64_t p) { return {p, {}, Cardinal(0)}; }
  static ProPDescriptor free(std::uint64_t p, Cardinal rank) { return {p, {}, rank}; }
  static ProPDescriptor cartesian(const CartesianDescriptor& layer);

  /// Checks the prime and every layer's prime; normalizes the sequence.
  ProPDescriptor normalized() const;
  bool is_trivial() const { return torsion.empty() && free_rank.is_zero(); }
  /// True when the group is finite.
  bool is_finite_group() const;

  friend bool operator==(const ProPDescriptor&, const ProPDescriptor&) = default;
};

/// Countable discrete p-group: Ulm sequence of direct-sum layers plus the
/// number of quasicyclic summands.
struct DiscreteDescriptor {
  std::uint64_t prime = 2;
  TorsionSequence ulm;
  Cardinal divisible_rank;

  friend bool operator==(const DiscreteDescriptor&, const DiscreteDescriptor&) = default;
};

std::string to_string(ViolationKind kind);

}  // namespace propcalc
