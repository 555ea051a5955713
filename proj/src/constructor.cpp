#include "propcalc/constructor.hpp"

#include <algorithm>

#include "propcalc/error.hpp"
#include "propcalc/layer_split.hpp"
#include "propcalc/torsion_calculus.hpp"

namespace propcalc {

namespace {

TorsionSequence append_layer(const TorsionSequence& seq, const CartesianDescriptor& layer) {
  auto bs = seq.blocks();
  if (bs.empty() || bs.back().repeat) bs.emplace_back();
  bs.back().head.push_back(layer);
  return TorsionSequence::from_blocks(bs);
}

CartesianDescriptor final_layer(const TorsionSequence& seq) {
  const auto last = seq.final_entry();
  if (!last) throw Error("sequence has no final layer");
  return *last;
}

std::uint64_t tree_prime(const PresentationTree& t) {
  return std::visit(
      [](const auto& n) -> std::uint64_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, LeafNode>)
          return n.layer.prime;
        else
          return n.prime;
      },
      t.node);
}

/// Earlier blocks (all but the last) mapped by f, plus the last block.
std::pair<std::vector<Block>, Block> split_last_block(const TorsionSequence& seq) {
  auto bs = seq.blocks();
  if (bs.empty()) throw Error("empty sequence");
  Block last = bs.back();
  bs.pop_back();
  return {std::move(bs), std::move(last)};
}

void map_blocks(std::vector<Block>& bs,
                const std::function<CartesianDescriptor(const CartesianDescriptor&)>& f) {
  for (auto& b : bs) {
    for (auto& e : b.head) e = f(e);
    if (b.repeat) b.repeat = f(*b.repeat);
  }
}

}  // namespace

std::int64_t DiagonalSpec::unit(std::uint64_t factor) const {
  const auto it = overrides.find(factor);
  return it == overrides.end() ? default_unit : it->second;
}

std::optional<std::uint64_t> ProductFamily::count() const {
  if (kind != FamilyKind::CyclicTop) return std::nullopt;
  const Cardinal total = final_layer(source).mults.total_factors();
  if (total.is_aleph0()) return std::nullopt;
  return total.value();
}

TorsionSequence ProductFamily::member_sequence(std::uint64_t m) const {
  switch (kind) {
    case FamilyKind::CyclicTop: {
      const auto n = count();
      if (n && m >= *n) throw Error("family member out of range");
      const bool last = n && m + 1 == *n;
      const Ordinal sigma = source.order_type().predecessor();
      const auto parts = map_entries(source.take(sigma), [&](const CartesianDescriptor& e) {
        return last ? residue_tail(e, m) : residue_part(e, m);
      });
      const auto slot = cyclic_slots(final_layer(source), m + 1).at(m);
      return append_layer(parts, cyclic_layer(prime, slot.exponent)).normalized();
    }
    case FamilyKind::LimitCofinal: {
      auto [blocks, last] = split_last_block(source);
      map_blocks(blocks, [&](const CartesianDescriptor& e) { return residue_part(e, m); });
      Block top;
      for (std::uint64_t j = 0; j <= m; ++j) top.head.push_back(residue_part(*last.at(j), m - j));
      blocks.push_back(std::move(top));
      return TorsionSequence::from_blocks(blocks).normalized();
    }
    case FamilyKind::LimitCyclicTop: {
      auto [blocks, last] = split_last_block(source);
      map_blocks(blocks, [&](const CartesianDescriptor& e) { return residue_part(e, m); });
      Block top;
      top.head.push_back(residue_part(*last.at(0), m));
      for (std::uint64_t j = 1; j <= m; ++j) {
        const auto layer = *last.at(j);
        top.head.push_back(residue_part(remove_factor(layer, first_cyclic_exponent(layer)), m - j));
      }
      top.head.push_back(cyclic_layer(prime, first_cyclic_exponent(*last.at(m + 1))));
      blocks.push_back(std::move(top));
      return TorsionSequence::from_blocks(blocks).normalized();
    }
  }
  throw Error("unknown family kind");
}

TreePtr ProductFamily::member(std::uint64_t m) const { return construct(member_sequence(m), prime); }

TorsionSequence ProductFamily::tail_sequence(std::uint64_t k) const {
  switch (kind) {
    case FamilyKind::CyclicTop: {
      const auto n = count();
      if (n && k >= *n) return {};
      const Ordinal sigma = source.order_type().predecessor();
      const auto rest = map_entries(source.take(sigma),
                                    [&](const CartesianDescriptor& e) { return residue_tail(e, k); });
      return append_layer(rest, remove_first_factors(final_layer(source), k)).normalized();
    }
    case FamilyKind::LimitCofinal: {
      auto [blocks, last] = split_last_block(source);
      map_blocks(blocks, [&](const CartesianDescriptor& e) { return residue_tail(e, k); });
      Block top;
      const std::size_t len = std::max<std::size_t>(k, last.head.size());
      for (std::size_t j = 0; j < len; ++j)
        top.head.push_back(j < k ? residue_tail(*last.at(j), k - j) : *last.at(j));
      top.repeat = last.repeat;
      blocks.push_back(std::move(top));
      return TorsionSequence::from_blocks(blocks).normalized();
    }
    case FamilyKind::LimitCyclicTop: {
      auto [blocks, last] = split_last_block(source);
      map_blocks(blocks, [&](const CartesianDescriptor& e) { return residue_tail(e, k); });
      Block top;
      const std::size_t len = std::max<std::size_t>(k + 1, last.head.size());
      for (std::size_t j = 0; j < len; ++j) {
        const auto layer = *last.at(j);
        if (j == 0)
          top.head.push_back(residue_tail(layer, k));
        else if (j <= k)
          top.head.push_back(residue_tail(remove_factor(layer, first_cyclic_exponent(layer)), k - j));
        else
          top.head.push_back(layer);
      }
      top.repeat = last.repeat;
      blocks.push_back(std::move(top));
      return TorsionSequence::from_blocks(blocks).normalized();
    }
  }
  throw Error("unknown family kind");
}

bool operator==(const PresentationTree& a, const PresentationTree& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* la = std::get_if<LeafNode>(&a.node)) return *la == std::get<LeafNode>(b.node);
  if (const auto* pa = std::get_if<ProductNode>(&a.node)) {
    const auto& pb = std::get<ProductNode>(b.node);
    if (pa->prime != pb.prime || pa->family != pb.family) return false;
    if (pa->children.size() != pb.children.size()) return false;
    for (std::size_t i = 0; i < pa->children.size(); ++i)
      if (!(*pa->children[i] == *pb.children[i])) return false;
    return true;
  }
  const auto& ea = std::get<ExtensionNode>(a.node);
  const auto& eb = std::get<ExtensionNode>(b.node);
  return ea.prime == eb.prime && ea.r == eb.r && ea.diagonal == eb.diagonal && *ea.child == *eb.child;
}

TreePtr make_leaf(CartesianDescriptor layer) {
  return std::make_shared<PresentationTree>(PresentationTree{LeafNode{std::move(layer)}});
}

TreePtr make_product(std::uint64_t prime, std::vector<TreePtr> children) {
  return std::make_shared<PresentationTree>(
      PresentationTree{ProductNode{prime, std::move(children), std::nullopt}});
}

TreePtr make_family(ProductFamily family) {
  const std::uint64_t p = family.prime;
  return std::make_shared<PresentationTree>(PresentationTree{ProductNode{p, {}, std::move(family)}});
}

TreePtr make_extension(std::uint64_t prime, TreePtr child, unsigned r, DiagonalSpec diagonal) {
  if (r == 0) throw Error("extension exponent must be positive");
  for (const auto& [k, u] : diagonal.overrides)
    if (u % static_cast<std::int64_t>(prime) == 0) throw Error("diagonal residue is not a unit");
  if (diagonal.default_unit % static_cast<std::int64_t>(prime) == 0)
    throw Error("diagonal residue is not a unit");
  return std::make_shared<PresentationTree>(
      PresentationTree{ExtensionNode{prime, std::move(child), r, std::move(diagonal)}});
}

TreePtr construct(const TorsionSequence& seq, std::uint64_t prime) {
  const TorsionSequence s = seq.normalized();
  const auto report = validate(s);
  if (!report.valid()) throw Error("invalid torsion sequence: " + report.to_string());
  const Ordinal tau = s.order_type();
  if (tau.is_zero()) return make_product(prime, {});
  const std::uint64_t p = s.at(Ordinal()).prime;
  if (tau == Ordinal::finite(1)) return make_leaf(s.at(Ordinal()));
  if (tau.is_limit()) return make_family({FamilyKind::LimitCofinal, p, s});

  const Ordinal sigma = tau.predecessor();
  const auto top = final_layer(s);
  if (!top.mults.is_cyclic()) return make_family({FamilyKind::CyclicTop, p, s});
  const auto r = static_cast<unsigned>(*top.mults.exponent());
  if (sigma.is_successor()) return make_extension(p, construct(s.take(sigma), p), r);
  return make_extension(p, make_family({FamilyKind::LimitCyclicTop, p, s.take(sigma)}), r);
}

std::string construction_case(const PresentationTree& t) {
  if (std::holds_alternative<LeafNode>(t.node)) return "base";
  if (const auto* ext = std::get_if<ExtensionNode>(&t.node)) {
    const auto* below = std::get_if<ProductNode>(&ext->child->node);
    return below && below->family && below->family->kind == FamilyKind::LimitCyclicTop ? "IV" : "I";
  }
  const auto& prod = std::get<ProductNode>(t.node);
  if (!prod.family) return prod.children.empty() ? "empty" : "product";
  if (prod.family->kind == FamilyKind::LimitCofinal) return "III";
  const Ordinal sigma = prod.family->source.order_type().predecessor();
  return sigma.is_successor() ? "II" : "V";
}

TorsionSequence verify_construction_symbolic(const PresentationTree& t, std::uint64_t family_members) {
  if (const auto* leaf = std::get_if<LeafNode>(&t.node))
    return TorsionSequence::finite({leaf->layer}).normalized();
  if (const auto* ext = std::get_if<ExtensionNode>(&t.node)) {
    const auto below = verify_construction_symbolic(*ext->child, family_members);
    return append_layer(below, cyclic_layer(ext->prime, ext->r)).normalized();
  }
  const auto& prod = std::get<ProductNode>(t.node);
  TorsionSequence acc;
  if (!prod.family) {
    for (const auto& c : prod.children)
      acc = sequence_product(acc, verify_construction_symbolic(*c, family_members), prod.prime);
    return acc;
  }
  const auto& fam = *prod.family;
  std::uint64_t k = family_members;
  if (const auto n = fam.count()) k = std::min(k, *n);
  for (std::uint64_t m = 0; m < k; ++m)
    acc = sequence_product(acc, verify_construction_symbolic(*fam.member(m), family_members),
                           prod.prime);
  return sequence_product(acc, fam.tail_sequence(k), prod.prime);
}

namespace {

struct Builder {
  std::uint64_t prime;
  unsigned level;
  std::uint64_t cap;

  struct Pres {
    std::size_t gens = 0;
    std::vector<std::vector<Integer>> rows;
    std::vector<std::vector<Integer>> tops;
  };

  static void widen(std::vector<Integer>& v, std::size_t offset, std::size_t total) {
    std::vector<Integer> out(total);
    for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] = v[i];
    v = std::move(out);
  }

  void guard(std::size_t gens) const {
    if (gens > kMaterializeGeneratorLimit) throw SizeLimitError("materialization size limit");
  }

  Integer power(unsigned e) const {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), prime, e);
    return out;
  }

  Pres leaf(const CartesianDescriptor& layer) const {
    Pres out;
    std::vector<unsigned> exps;
    for (unsigned i = 1; i <= level; ++i)
      for (std::uint64_t c = 0; c < layer.mults.at(i).capped(cap); ++c) exps.push_back(i);
    guard(exps.size());
    out.gens = exps.size();
    for (std::size_t g = 0; g < exps.size(); ++g) {
      std::vector<Integer> row(out.gens);
      row[g] = power(exps[g]);
      out.rows.push_back(std::move(row));
      std::vector<Integer> top(out.gens);
      top[g] = 1;
      out.tops.push_back(std::move(top));
    }
    return out;
  }

  Pres product(const std::vector<TreePtr>& children) const {
    std::vector<Pres> parts;
    std::size_t total = 0;
    for (const auto& c : children) {
      parts.push_back(build(*c));
      total += parts.back().gens;
      guard(total);
    }
    Pres out;
    out.gens = total;
    std::size_t offset = 0;
    for (auto& part : parts) {
      for (auto& row : part.rows) {
        widen(row, offset, total);
        out.rows.push_back(std::move(row));
      }
      for (auto& top : part.tops) {
        widen(top, offset, total);
        out.tops.push_back(std::move(top));
      }
      offset += part.gens;
    }
    return out;
  }

  std::vector<Integer> diagonal(const Pres& child, const DiagonalSpec& spec) const {
    std::vector<Integer> delta(child.gens);
    for (std::size_t k = 0; k < child.tops.size(); ++k)
      for (std::size_t g = 0; g < child.gens; ++g)
        delta[g] += Integer(static_cast<long>(spec.unit(k))) * child.tops[k][g];
    return delta;
  }

  Pres extension(const ExtensionNode& ext) const {
    Pres child = build(*ext.child);
    guard(child.gens + 1);
    const auto delta = diagonal(child, ext.diagonal);
    Pres out;
    out.gens = child.gens + 1;
    for (auto& row : child.rows) {
      widen(row, 0, out.gens);
      out.rows.push_back(std::move(row));
    }
    std::vector<Integer> rel(out.gens);
    for (std::size_t g = 0; g < child.gens; ++g) rel[g] = -delta[g];
    rel[child.gens] = power(ext.r);
    out.rows.push_back(std::move(rel));
    std::vector<Integer> top(out.gens);
    top[child.gens] = 1;
    out.tops.push_back(std::move(top));
    return out;
  }

  Pres build(const PresentationTree& t) const {
    if (const auto* l = std::get_if<LeafNode>(&t.node)) return leaf(l->layer);
    if (const auto* e = std::get_if<ExtensionNode>(&t.node)) return extension(*e);
    const auto& prod = std::get<ProductNode>(t.node);
    if (!prod.family) {
      std::vector<TreePtr> first(prod.children.begin(),
                                 prod.children.begin() +
                                     static_cast<std::ptrdiff_t>(std::min<std::size_t>(level, prod.children.size())));
      return product(first);
    }
    std::uint64_t n = level;
    if (const auto c = prod.family->count()) n = std::min(n, *c);
    std::vector<TreePtr> members;
    for (std::uint64_t m = 0; m < n; ++m) members.push_back(prod.family->member(m));
    return product(members);
  }

  static IntMatrix matrix(const Pres& pres) {
    IntMatrix m(pres.rows.size(), pres.gens);
    for (std::size_t r = 0; r < pres.rows.size(); ++r)
      for (std::size_t c = 0; c < pres.gens; ++c) m(r, c) = pres.rows[r][c];
    return m;
  }
};

void check_resolution(unsigned level, std::uint64_t cap) {
  if (level == 0) throw Error("level must be at least 1");
  if (cap == 0) throw Error("cap must be at least 1");
}

}  // namespace

Materialization materialize(const PresentationTree& t, unsigned level, std::uint64_t cap) {
  check_resolution(level, cap);
  const Builder b{tree_prime(t), level, cap};
  auto pres = b.build(t);
  Materialization out;
  out.relations = Builder::matrix(pres);
  out.presented = group_from_presentation(out.relations, b.prime);
  out.generator_count = pres.gens;
  if (std::holds_alternative<ExtensionNode>(t.node)) out.child_generator_count = pres.gens - 1;
  out.tops = std::move(pres.tops);
  return out;
}

IntMatrix materialize_relations(const PresentationTree& t, unsigned level, std::uint64_t cap) {
  check_resolution(level, cap);
  const Builder b{tree_prime(t), level, cap};
  return Builder::matrix(b.build(t));
}

Element truncated_diagonal(const PresentationTree& extension, unsigned level, std::uint64_t cap,
                           FiniteAbelianPGroup* child_group) {
  check_resolution(level, cap);
  const auto* ext = std::get_if<ExtensionNode>(&extension.node);
  if (!ext) throw Error("not an extension tree");
  const Builder b{ext->prime, level, cap};
  const auto child = b.build(*ext->child);
  const auto presented = group_from_presentation(Builder::matrix(child), b.prime);
  const auto delta = b.diagonal(child, ext->diagonal);
  const auto& h = presented.group;
  Element out = h.zero();
  for (std::size_t g = 0; g < child.gens; ++g)
    out = h.add(out, h.scale(presented.generator_images[g], delta[g]));
  if (child_group) *child_group = h;
  return out;
}

bool delta_outside(const FiniteAbelianPGroup& h, const Element& delta, unsigned level) {
  if (level < 2) throw Error("level must be at least 2");
  std::vector<Element> gens;
  for (std::size_t j = 0; j < h.rank(); ++j)
    gens.push_back(h.scale(h.generator(j), Integer(static_cast<long>(h.prime()))));
  const auto bracket = torsion_bracket(h, static_cast<std::uint64_t>(checked_power(h.prime(), level - 1)));
  gens.insert(gens.end(), bracket.generators.begin(), bracket.generators.end());
  return !in_subgroup(h, gens, delta);
}

bool check_delta_condition(const PresentationTree& extension, unsigned level, std::uint64_t cap) {
  FiniteAbelianPGroup h;
  const Element delta = truncated_diagonal(extension, level, cap, &h);
  return delta_outside(h, delta, level);
}

}  // namespace propcalc
