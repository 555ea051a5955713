#include <gtest/gtest.h>

#include "propcalc/error.hpp"
#include "propcalc/classifier.hpp"
#include "propcalc/constructor.hpp"
#include "propcalc/layer_split.hpp"
#include "propcalc/torsion_calculus.hpp"

using namespace propcalc;

namespace {

const Cardinal A0 = Cardinal::aleph0();
CartesianDescriptor full() { return {2, MultiplicitySeq::all_ones()}; }
ProPDescriptor desc(std::vector<CartesianDescriptor> layers, Cardinal free = 0) {
  return ProPDescriptor{2, TorsionSequence::finite(std::move(layers)), free}.normalized();
}

}  // namespace

TEST(Topological, Examples) {
  const auto a = desc({full()});
  EXPECT_TRUE(topologically_isomorphic(a, a).verdict);
  const auto c = topologically_isomorphic(a, desc({full()}, 1));
  EXPECT_FALSE(c.verdict);
  ASSERT_EQ(c.evidence.size(), 1u);
  EXPECT_EQ(c.evidence[0].name, "free_rank");
  EXPECT_EQ(c.evidence[0].left, "0");
  EXPECT_EQ(c.evidence[0].right, "1");
  const auto x = desc({full(), cyclic_layer(2, 2)}), y = desc({full(), cyclic_layer(2, 3)});
  const auto cert = topologically_isomorphic(x, y);
  EXPECT_FALSE(cert.verdict);
  ASSERT_EQ(cert.evidence.size(), 1u);
  EXPECT_EQ(cert.evidence[0].name, "layer[1]");
  // The final layers are visible in the materialized quotients: p^2 versus p^3.
  const auto qx = materialize(*construct(x.torsion), 3, 1), qy = materialize(*construct(y.torsion), 3, 1);
  const auto& ex = std::get<ExtensionNode>(construct(x.torsion)->node);
  EXPECT_EQ(qx.group().log_order() - materialize(*ex.child, 3, 1).group().log_order(), 2u);
  const auto& ey = std::get<ExtensionNode>(construct(y.torsion)->node);
  EXPECT_EQ(qy.group().log_order() - materialize(*ey.child, 3, 1).group().log_order(), 3u);
}

TEST(Topological, EvidenceOnSuccess) {
  const auto a = desc({full(), cyclic_layer(2, 2)}, 1);
  const auto c = topologically_isomorphic(a, a);
  EXPECT_TRUE(c.verdict);
  for (const auto& e : c.evidence) EXPECT_EQ(e.left, e.right);
  EXPECT_GE(c.evidence.size(), 4u);
}

TEST(Abstract, Examples) {
  EXPECT_TRUE(abstractly_isomorphic(desc({full()}), desc({full()}, 1)).verdict);
  const auto c = abstractly_isomorphic(desc({full(), cyclic_layer(2, 2)}), desc({full()}));
  EXPECT_TRUE(c.verdict);
  EXPECT_EQ(c.rule, "abstract/unbounded");
  const auto elem = CartesianDescriptor{2, MultiplicitySeq::cyclic(1, A0)};
  const auto b = abstractly_isomorphic(desc({elem}), desc({elem}, 1));
  EXPECT_FALSE(b.verdict);
  EXPECT_EQ(b.rule, "abstract/bounded");
  EXPECT_FALSE(abstractly_isomorphic(desc({elem}), desc({full()})).verdict);
}

TEST(Abstract, FreeFactorFamily) {
  const auto d = desc({full(), CartesianDescriptor{2, MultiplicitySeq::periodic({}, {0, 1})}});
  for (Cardinal k : {Cardinal(1), Cardinal(2), Cardinal(3), A0}) {
    const auto e = product(d, ProPDescriptor::free(2, k));
    EXPECT_TRUE(abstractly_isomorphic(d, e).verdict);
    EXPECT_FALSE(topologically_isomorphic(d, e).verdict);
  }
  // With free rank aleph0 already present, adding Z_p^k changes nothing.
  const auto big = product(d, ProPDescriptor::free(2, A0));
  EXPECT_TRUE(topologically_isomorphic(big, product(big, ProPDescriptor::free(2, 3))).verdict);
}

TEST(Embedding, FreeIntoFullLayer) {
  const auto r = decide_embedding(ProPDescriptor::free(2, 1), desc({full()}));
  ASSERT_TRUE(r.supported);
  ASSERT_EQ(r.witness.free_chains.size(), 1u);
  const auto& chain = r.witness.free_chains[0];
  ASSERT_GE(chain.size(), 2u);
  for (std::size_t k = 1; k < chain.size(); ++k) EXPECT_GT(chain[k].exponent, chain[k - 1].exponent);
}

TEST(Embedding, TrivialAndBounded) {
  const auto r = decide_embedding(ProPDescriptor::trivial(2), desc({full()}));
  EXPECT_TRUE(r.supported);
  EXPECT_TRUE(r.witness.assignments.empty());
  EXPECT_TRUE(r.witness.free_chains.empty());
  EXPECT_FALSE(decide_embedding(desc({full()}), desc({CartesianDescriptor{2, MultiplicitySeq::cyclic(1, A0)}})).supported);
}

TEST(Embedding, WitnessIsInjectiveAndMonotone) {
  const auto a = desc({full(), cyclic_layer(2, 2)}, 1);
  const auto b = desc({CartesianDescriptor{2, MultiplicitySeq::periodic({}, {0, 1})}});
  const auto r = decide_embedding(a, b);
  ASSERT_TRUE(r.supported);
  std::set<std::pair<std::size_t, std::uint64_t>> used;
  for (const auto& asg : r.witness.assignments) {
    EXPECT_GE(asg.target.exponent, asg.demand.exponent);
    EXPECT_EQ(asg.target.exponent % 2, 0u);
    EXPECT_TRUE(used.insert({asg.target.exponent, asg.target.copy}).second);
  }
  for (unsigned level = 1; level <= 6; ++level) {
    const auto check = check_embedding_at_level(a, b, level, 1);
    EXPECT_TRUE(check.ok()) << level << ": " << check.domain << " -> " << check.codomain;
  }
}
