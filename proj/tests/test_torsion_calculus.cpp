#include <gtest/gtest.h>

#include "propcalc/error.hpp"
#include "propcalc/classifier.hpp"
#include "propcalc/constructor.hpp"
#include "propcalc/generators.hpp"
#include "propcalc/layer_split.hpp"
#include "propcalc/torsion_calculus.hpp"

using namespace propcalc;

namespace {

const Cardinal A0 = Cardinal::aleph0();
CartesianDescriptor full(std::uint64_t p = 2) { return {p, MultiplicitySeq::all_ones()}; }
ProPDescriptor desc(TorsionSequence s, Cardinal free = 0, std::uint64_t p = 2) {
  return ProPDescriptor{p, std::move(s), free}.normalized();
}

}  // namespace

TEST(Closure, Examples) {
  EXPECT_EQ(closure_of_torsion(desc(TorsionSequence::finite({full()}))), full());
  EXPECT_TRUE(closure_of_torsion(ProPDescriptor::free(2, 3)).is_trivial());
  EXPECT_EQ(closure_of_torsion(desc(TorsionSequence::finite({full(), cyclic_layer(2, 2)}))), full());
}

TEST(Series, Shift) {
  const auto a = full(), b = CartesianDescriptor{2, MultiplicitySeq::periodic({}, {1, 0})};
  const auto d = desc(TorsionSequence::finite({a, b}), 2);
  const auto at1 = torsion_series_data(d, Ordinal::finite(1));
  EXPECT_EQ(at1.layer, b);
  EXPECT_EQ(at1.remainder, desc(TorsionSequence::finite({b}), 2));
  const auto at0 = torsion_series_data(d, Ordinal());
  EXPECT_EQ(at0.layer, a);
  EXPECT_EQ(at0.remainder, d);
  EXPECT_TRUE(torsion_series_data(d, Ordinal::finite(2)).layer.is_trivial());
  EXPECT_THROW(torsion_series_data(d, Ordinal::finite(3)), Error);
}

TEST(Series, EntryAtOmega) {
  const auto c = cyclic_layer(2, 3);
  const auto d = desc(TorsionSequence({OmegaRun{{}, full()}, FiniteRun{{c}}}));
  EXPECT_EQ(torsion_series_data(d, Ordinal::omega_times(1)).layer, c);
  for (std::uint64_t n = 0; n < 6; ++n) EXPECT_EQ(torsion_series_data(d, Ordinal::finite(n)).layer, full());
}

TEST(Series, ShiftLawOnCorpus) {
  gen::Rng rng(5);
  for (int t = 0; t < 80; ++t) {
    const auto d = gen::descriptor(rng);
    const auto type = torsion_type(d);
    std::vector<Ordinal> alphas{Ordinal(), type};
    for (std::uint64_t n = 1; n < 4; ++n)
      if (Ordinal::finite(n) <= type) alphas.push_back(Ordinal::finite(n));
    if (Ordinal::omega_times(1, 1) <= type) alphas.push_back(Ordinal::omega_times(1, 1));
    for (const auto& alpha : alphas)
      EXPECT_EQ(torsion_type(torsion_series_data(d, alpha).remainder), type.minus(alpha));
  }
}

TEST(TorsionType, Examples) {
  EXPECT_EQ(torsion_type(desc(TorsionSequence::finite({full()}))), Ordinal::finite(1));
  EXPECT_EQ(torsion_type(desc(TorsionSequence::finite({full(), cyclic_layer(2, 2)}))), Ordinal::finite(2));
  EXPECT_EQ(torsion_type(desc(TorsionSequence({OmegaRun{{}, full()}, FiniteRun{{cyclic_layer(2, 1)}}}))),
            Ordinal::omega_times(1, 1));
  EXPECT_EQ(torsion_type(ProPDescriptor::free(2, A0)), Ordinal());
}

TEST(Product, Examples) {
  const auto d = desc(TorsionSequence::finite({full()}));
  EXPECT_EQ(product(d, ProPDescriptor::trivial(2)), d);
  EXPECT_EQ(product(d, ProPDescriptor::free(2, 1)), desc(TorsionSequence::finite({full()}), 1));
  EXPECT_THROW(product(d, ProPDescriptor::free(3, 1)), Error);
}

TEST(Product, PointwiseAgainstMaterializations) {
  const auto d = desc(TorsionSequence::finite({full()}));
  const auto dd = product(d, d);
  EXPECT_EQ(dd.torsion.at(Ordinal()).mults, MultiplicitySeq::periodic({}, {2}));
  // Truncation 6: (C_2 + ... + C_64)^2 from the descriptor, and from the direct sum of two copies.
  const auto one = materialize(*construct(d.torsion), 6, 1).group();
  const auto two = materialize(*construct(dd.torsion), 6, 2).group();
  auto doubled = one.exponents();
  doubled.insert(doubled.end(), one.exponents().begin(), one.exponents().end());
  EXPECT_EQ(two, FiniteAbelianPGroup(2, doubled));
  for (unsigned i = 1; i <= 6; ++i) EXPECT_EQ(decomposition_multiplicities(two).at(i), 2u);
}

TEST(Product, LawsOnCorpus) {
  gen::Rng rng(8);
  std::vector<ProPDescriptor> ds;
  for (int t = 0; t < 60; ++t) {
    auto d = gen::descriptor(rng);
    if (d.prime == 2) ds.push_back(d);
  }
  for (std::size_t i = 0; i + 2 < ds.size(); ++i) {
    EXPECT_EQ(product(ds[i], ds[i + 1]), product(ds[i + 1], ds[i]));
    EXPECT_EQ(product(product(ds[i], ds[i + 1]), ds[i + 2]), product(ds[i], product(ds[i + 1], ds[i + 2])));
  }
}

TEST(Dual, Examples) {
  const auto d = desc(TorsionSequence::finite({full()}), 1);
  const auto e = dual(d);
  EXPECT_EQ(e.ulm, TorsionSequence::finite({full()}));
  EXPECT_EQ(e.divisible_rank, Cardinal(1));
  EXPECT_EQ(dual(ProPDescriptor::trivial(2)), (DiscreteDescriptor{2, {}, 0}));
}

TEST(Dual, RoundTripOnCorpus) {
  gen::Rng rng(50);
  for (int t = 0; t < 50; ++t) {
    const auto d = gen::descriptor(rng);
    EXPECT_EQ(dual_discrete(dual(d)), d);
  }
}

TEST(Peel, Examples) {
  const auto s = TorsionSequence::finite({full()});
  const auto peeled = peel_free_part(desc(s, 2));
  EXPECT_EQ(peeled.dual_reduced, desc(s));
  EXPECT_EQ(peeled.free_rank, Cardinal(2));
  const auto z = peel_free_part(ProPDescriptor::free(2, A0));
  EXPECT_TRUE(z.dual_reduced.is_trivial());
  EXPECT_EQ(z.free_rank, A0);
}

TEST(Peel, RoundTripOnCorpus) {
  gen::Rng rng(51);
  for (int t = 0; t < 50; ++t) {
    const auto d = gen::descriptor(rng);
    const auto peeled = peel_free_part(d);
    EXPECT_TRUE(peeled.dual_reduced.free_rank.is_zero());
    EXPECT_EQ(product(peeled.dual_reduced, ProPDescriptor::free(d.prime, peeled.free_rank)), d);
  }
}

TEST(LayerSplit, ResiduePartsPartitionTheIndices) {
  const auto layer = CartesianDescriptor{2, MultiplicitySeq::periodic({3, 0}, {1, A0, 2})};
  const std::size_t horizon = 400;
  std::vector<Cardinal> sum(horizon + 1, 0);
  for (std::uint64_t n = 0; n < 9; ++n) {
    const auto part = residue_part(layer, n);
    EXPECT_TRUE(part.mults.unbounded_torsion());
    for (std::size_t i = 1; i <= horizon; ++i) {
      const auto c = part.mults.at(i);
      if (!c.is_zero()) {
        EXPECT_EQ(c, layer.mults.at(i));
        EXPECT_TRUE(sum[i].is_zero()) << "index " << i << " in two parts";
      }
      sum[i] = sum[i] + c;
    }
    // Parts >= n form the tail.
    CartesianDescriptor rest = residue_tail(layer, n + 1);
    for (std::size_t i = 1; i <= horizon; ++i)
      EXPECT_EQ(residue_tail(layer, n).mults.at(i), part.mults.at(i) + rest.mults.at(i));
  }
  EXPECT_EQ(residue_tail(layer, 0), layer);
  EXPECT_THROW(residue_part(cyclic_layer(2, 3), 0), Error);
}

TEST(LayerSplit, CyclicSlotsFollowDiagonals) {
  // Walks diagonal s = 0, 1, ... visiting exponent i = 1..s+1 with copy s+1-i.
  auto by_diagonals = [](const CartesianDescriptor& layer, std::uint64_t count, std::uint64_t diagonals) {
    std::vector<FactorSlot> out;
    for (std::uint64_t s = 0; s < diagonals && out.size() < count; ++s)
      for (std::uint64_t i = 1; i <= s + 1 && out.size() < count; ++i)
        if (Cardinal(s + 1 - i) < layer.mults.at(i)) out.push_back({i, s + 1 - i});
    return out;
  };
  gen::Rng rng(31);
  std::vector<CartesianDescriptor> layers{residue_part(CartesianDescriptor{2, MultiplicitySeq::all_ones()}, 3),
                                          CartesianDescriptor{3, MultiplicitySeq::periodic({0, 2}, {0, 0, A0})}};
  for (int t = 0; t < 30; ++t) {
    layers.push_back(gen::unbounded_layer(rng, 2));
    layers.push_back(gen::bounded_layer(rng, 3));
  }
  for (const auto& layer : layers)
    for (const std::uint64_t count : {1u, 5u, 40u})
      EXPECT_EQ(cyclic_slots(layer, count), by_diagonals(layer, count, 1000)) << count;
}

TEST(Decompose, ResidueFactorsOfFullLayer) {
  const auto d = desc(TorsionSequence::finite({full()}));
  const auto dec = decompose_infinite_product(d);
  EXPECT_FALSE(dec.count().has_value());
  const auto ks = dec.take(5);
  for (const auto& k : ks) {
    EXPECT_FALSE(k.is_trivial());
    EXPECT_TRUE(closure_of_torsion(k).mults.unbounded_torsion());
  }
  auto all = ks;
  all.push_back(dec.tail(5));
  EXPECT_EQ(product(all, 2), d);
}

TEST(Decompose, BoundedFinalLayerAndErrors) {
  EXPECT_THROW(decompose_infinite_product(desc(TorsionSequence::finite({cyclic_layer(2, 2)}))), Error);
  EXPECT_THROW(decompose_infinite_product(ProPDescriptor::free(2, 3)), Error);
  const auto d = desc(TorsionSequence::finite({full(), CartesianDescriptor{2, MultiplicitySeq::cyclic(2, A0)}}), 1);
  const auto ks = decompose_infinite_product(d).take(4);
  for (const auto& k : ks) EXPECT_GE(torsion_type(k), Ordinal::finite(1));
  EXPECT_THROW(decompose_infinite_product(desc(TorsionSequence::finite({full(), cyclic_layer(2, 2)})), true),
               Error);
}

TEST(Decompose, ClausesOnCorpus) {
  gen::Rng rng(77);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 60; ++t) {
    const auto d = gen::descriptor(rng);
    if (d.torsion.empty() || !closure_of_torsion(d).mults.unbounded_torsion()) continue;
    ++checked;
    const auto tau = torsion_type(d);
    for (bool cyclic : {false, true}) {
      const auto top = d.torsion.final_entry();
      if (cyclic && (tau.is_limit() || top->mults.is_cyclic())) {
        EXPECT_THROW(decompose_infinite_product(d, true), Error);
        continue;
      }
      const auto dec = decompose_infinite_product(d, cyclic);
      const auto ks = dec.take(4);
      for (const auto& k : ks) {
        EXPECT_FALSE(k.is_trivial());
        const auto kt = torsion_type(k);
        if (tau.is_limit()) {
          EXPECT_EQ(kt, tau);
        } else {
          EXPECT_TRUE(kt == tau || kt == tau.predecessor());
        }
        if (cyclic) {
          EXPECT_TRUE(k.torsion.final_entry()->mults.is_cyclic());
        }
      }
      auto all = ks;
      all.push_back(dec.tail(ks.size()));
      EXPECT_EQ(product(all, d.prime), d);
    }
  }
  EXPECT_GE(checked, 30);
}
