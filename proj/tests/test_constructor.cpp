#include <gtest/gtest.h>

#include "oracles.hpp"
#include "propcalc/error.hpp"
#include "propcalc/constructor.hpp"
#include "propcalc/generators.hpp"
#include "propcalc/layer_split.hpp"
#include "propcalc/shift_maps.hpp"
#include "propcalc/json_io.hpp"

using namespace propcalc;

namespace {

CartesianDescriptor full(std::uint64_t p = 2) { return {p, MultiplicitySeq::all_ones()}; }

}  // namespace

TEST(Construct, BaseCase) {
  const auto a = CartesianDescriptor{2, MultiplicitySeq::periodic({}, {1, 0})};
  const auto t = construct(TorsionSequence::finite({a}));
  EXPECT_EQ(*t, *make_leaf(a));
  EXPECT_EQ(construction_case(*t), "base");
  EXPECT_EQ(verify_construction_symbolic(*t), TorsionSequence::finite({a}));
}

TEST(Construct, CaseI) {
  const auto s = TorsionSequence::finite({full(), cyclic_layer(2, 2)});
  const auto t = construct(s);
  EXPECT_EQ(*t, *make_extension(2, make_leaf(full()), 2));
  EXPECT_EQ(construction_case(*t), "I");
  EXPECT_EQ(verify_construction_symbolic(*make_extension(2, make_leaf(full()), 2)), s);
}

TEST(Construct, CaseII) {
  const auto s = TorsionSequence::finite({full(), full()});
  const auto t = construct(s);
  EXPECT_EQ(construction_case(*t), "II");
  const auto& prod = std::get<ProductNode>(t->node);
  ASSERT_TRUE(prod.family.has_value());
  EXPECT_FALSE(prod.family->count().has_value());
  // Each member is a Case I tree over residue parts of the first layer.
  for (std::uint64_t m = 0; m < 4; ++m) {
    const auto member = prod.family->member(m);
    EXPECT_EQ(construction_case(*member), "I");
    const auto seq = prod.family->member_sequence(m);
    EXPECT_TRUE(seq.final_entry()->mults.is_cyclic());
  }
  // Termwise product of the members recovers the sequence.
  EXPECT_EQ(verify_construction_symbolic(*t), s);
  EXPECT_EQ(verify_construction_symbolic(*t, 5), s);
}

TEST(Construct, LimitCases) {
  const TorsionSequence w({OmegaRun{{}, full()}});
  EXPECT_EQ(construction_case(*construct(w)), "III");
  const TorsionSequence w1({OmegaRun{{}, full()}, FiniteRun{{cyclic_layer(2, 1)}}});
  EXPECT_EQ(construction_case(*construct(w1)), "IV");
  const TorsionSequence w1b({OmegaRun{{}, full()}, FiniteRun{{full()}}});
  EXPECT_EQ(construction_case(*construct(w1b)), "V");
  for (const auto& s : {w, w1, w1b}) EXPECT_EQ(verify_construction_symbolic(*construct(s)), s.normalized());
}

TEST(Construct, RejectsInvalid) {
  EXPECT_THROW(construct(TorsionSequence::finite({cyclic_layer(2, 1), full()})), Error);
}

TEST(Construct, RoundTripAndDeterminism) {
  gen::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto p = t % 3 == 0 ? 3u : 2u;
    const auto s = gen::sequence_of_type(rng, p, static_cast<std::uint64_t>(t % 2),
                                         static_cast<std::uint64_t>(t % 3), t % 4 != 0);
    const auto tree = construct(s, p);
    EXPECT_EQ(verify_construction_symbolic(*tree), s);
    EXPECT_EQ(*construct(s, p), *tree);
    EXPECT_EQ(*tree_from_json(to_json(*tree)), *tree);
  }
}

TEST(Materialize, CaseIAtLevel2) {
  const auto m = materialize(*make_extension(2, make_leaf(full()), 1), 2, 1);
  EXPECT_EQ(m.relations, (IntMatrix{{2, 0, 0}, {0, 4, 0}, {-1, -1, 2}}));
  EXPECT_EQ(m.group().exponents(), (std::vector<unsigned>{3, 1}));
  EXPECT_EQ(m.group().order(), 16u);
}

TEST(Materialize, LeafAndProduct) {
  EXPECT_EQ(materialize(*make_leaf(full(3)), 3, 1).group().exponents(), (std::vector<unsigned>{3, 2, 1}));
  std::vector<TreePtr> kids{make_leaf(full()), make_leaf(full())};
  EXPECT_EQ(materialize(*make_product(2, kids), 2, 1).group().exponents(), (std::vector<unsigned>{2, 2, 1, 1}));
}

TEST(Materialize, QuotientLaw) {
  for (unsigned r = 1; r <= 3; ++r)
    for (unsigned level = 1; level <= 6; ++level) {
      const auto tree = make_extension(3, make_leaf(full(3)), r);
      const auto m = materialize(*tree, level, 1);
      const std::vector<Element> h(m.presented.generator_images.begin(),
                                   m.presented.generator_images.begin() +
                                       static_cast<std::ptrdiff_t>(m.child_generator_count));
      EXPECT_EQ(quotient(m.group(), h), FiniteAbelianPGroup(3, {r}));
      EXPECT_EQ(m.group().log_order(), level * (level + 1) / 2 + r);
    }
}

TEST(Delta, DefaultDiagonalAtLevel4) {
  const auto tree = make_extension(2, make_leaf(full()), 1);
  EXPECT_TRUE(check_delta_condition(*tree, 4, 1));
  FiniteAbelianPGroup h;
  const auto delta = truncated_diagonal(*tree, 4, 1, &h);
  EXPECT_EQ(h, FiniteAbelianPGroup(2, {4, 3, 2, 1}));
  // Enumerate pH + H[p^3] over all 2^10 elements.
  std::set<oracle::Tuple> bad;
  const auto moduli = oracle::moduli(2, h.exponents());
  std::vector<oracle::Tuple> elems;
  oracle::for_each_tuple(moduli, [&](const oracle::Tuple& x) { elems.push_back(x); });
  std::vector<oracle::Tuple> torsion;
  for (const auto& x : elems) {
    bool k = true;
    for (std::size_t j = 0; j < x.size(); ++j) k = k && (x[j] * 8) % moduli[j] == 0;
    if (k) torsion.push_back(x);
  }
  for (const auto& x : elems)
    for (const auto& t : torsion) {
      oracle::Tuple s(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) s[j] = (2 * x[j] + t[j]) % moduli[j];
      bad.insert(s);
    }
  EXPECT_EQ(bad.count(oracle::Tuple(delta.begin(), delta.end())), 0u);
  EXPECT_FALSE(delta_outside(h, h.scale(delta, 2), 4));
  Element order_p = h.zero();
  for (std::size_t j = 0; j < h.rank(); ++j) order_p[j] = h.modulus(j) / 2;
  EXPECT_FALSE(delta_outside(h, order_p, 4));
}

TEST(Delta, LevelsTwoToEight) {
  for (std::uint64_t p : {2u, 3u})
    for (unsigned level = 2; level <= 8; ++level)
      EXPECT_TRUE(check_delta_condition(*make_extension(p, make_leaf(full(p)), 1), level, 1));
}

TEST(Theta, SmallestCase) {
  const auto theta = theta_truncated(2, 1);
  EXPECT_EQ(theta.domain, FiniteAbelianPGroup(2, {2, 1}));
  EXPECT_EQ(theta.codomain, FiniteAbelianPGroup(2, {1}));
  // Kernel by enumeration: x_1 = x_2 mod 2, four elements.
  std::uint64_t kernel = 0;
  for (std::uint64_t i = 0; i < theta.domain.order(); ++i)
    kernel += theta.apply(theta.domain.element_at(i)) == theta.codomain.zero();
  EXPECT_EQ(kernel, 4u);
  EXPECT_EQ(log_kernel_order(theta), 2u);
}

TEST(Theta, DiagonalInKernelAndSurjective) {
  for (std::uint64_t p : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 5; ++n) {
      const auto theta = theta_truncated(p, n);
      EXPECT_EQ(theta.apply(diagonal_eta(p, n + 1)), theta.codomain.zero());
      EXPECT_TRUE(is_surjective(theta));
      EXPECT_EQ(log_kernel_order(theta), n + 1);
    }
}

TEST(Theta, PhiMaps) {
  const auto phi = phi_map(2, 3, 1);
  EXPECT_EQ(phi.apply(Element{5}), Element{1});
  EXPECT_TRUE(image(phi_map(2, 1, 3)).structure.is_trivial());
}

TEST(Json, TreeRoundTripAllCases) {
  const auto tree = construct(TorsionSequence({OmegaRun{{}, full()}, FiniteRun{{cyclic_layer(2, 1)}}}));
  const auto j = to_json(*tree);
  EXPECT_EQ(j["tag"], "extension");
  EXPECT_EQ(*tree_from_json(j), *tree);
  const auto overridden = make_extension(3, make_leaf(full(3)), 2, DiagonalSpec{1, {{2, 2}}});
  EXPECT_EQ(*tree_from_json(to_json(*overridden)), *overridden);
  EXPECT_THROW(make_extension(3, make_leaf(full(3)), 2, DiagonalSpec{3, {}}), Error);
}
