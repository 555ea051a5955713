#include <gtest/gtest.h>

#include "propcalc/error.hpp"
#include "propcalc/descriptor.hpp"
#include "propcalc/generators.hpp"
#include "propcalc/layer_split.hpp"

using namespace propcalc;

namespace {

const Cardinal A0 = Cardinal::aleph0();

CartesianDescriptor full(std::uint64_t p = 2) { return {p, MultiplicitySeq::all_ones()}; }

// alpha_i of a raw (prefix, tail, pattern) form, evaluated directly.
Cardinal raw_term(const std::vector<Cardinal>& prefix, TailKind tail, const std::vector<Cardinal>& pattern,
                  std::size_t i) {
  if (i <= prefix.size()) return prefix[i - 1];
  if (tail == TailKind::Zero) return 0;
  if (tail == TailKind::AllAleph0) return A0;
  return pattern[(i - prefix.size() - 1) % pattern.size()];
}

}  // namespace

TEST(Cardinal, Arithmetic) {
  EXPECT_EQ(Cardinal(2) + Cardinal(3), Cardinal(5));
  EXPECT_EQ(Cardinal(2) + A0, A0);
  EXPECT_EQ(Cardinal(0) * A0, Cardinal(0));
  EXPECT_EQ(Cardinal(3) * A0, A0);
  EXPECT_LT(Cardinal(1000), A0);
  EXPECT_EQ(A0.to_string(), "aleph0");
  EXPECT_THROW(Cardinal(std::uint64_t{1} << 40) * Cardinal(std::uint64_t{1} << 40), Error);
}

TEST(MultiplicitySeq, ZeroPatternBecomesZeroTail) {
  const auto m = normalize(MultiplicitySeq::raw({1, 1}, TailKind::Periodic, {0}));
  EXPECT_EQ(m.prefix(), (std::vector<Cardinal>{1, 1}));
  EXPECT_EQ(m.tail(), TailKind::Zero);
}

TEST(MultiplicitySeq, AlephPatternBecomesAllAleph0) {
  const auto m = normalize(MultiplicitySeq::raw({}, TailKind::Periodic, {A0}));
  EXPECT_TRUE(m.prefix().empty());
  EXPECT_EQ(m.tail(), TailKind::AllAleph0);
}

TEST(MultiplicitySeq, PrefixAbsorbedIntoPattern) {
  const auto m = normalize(MultiplicitySeq::raw({1}, TailKind::Periodic, {1}));
  EXPECT_TRUE(m.prefix().empty());
  EXPECT_EQ(m.tail(), TailKind::Periodic);
  EXPECT_EQ(m.pattern(), (std::vector<Cardinal>{1}));
  for (std::size_t i = 1; i <= 12; ++i) EXPECT_EQ(m.at(i), raw_term({1}, TailKind::Periodic, {1}, i));
}

TEST(MultiplicitySeq, NormalizePreservesTermsAndIsIdempotent) {
  gen::Rng rng(17);
  std::uniform_int_distribution<int> small(0, 3);
  for (int t = 0; t < 500; ++t) {
    std::vector<Cardinal> prefix, pattern;
    const int lp = small(rng) + small(rng), lq = 1 + small(rng) + small(rng);
    for (int i = 0; i < lp; ++i) prefix.push_back(small(rng) == 3 ? A0 : Cardinal(small(rng) % 2));
    // Repeat a short motif so that the period can shrink.
    std::vector<Cardinal> motif;
    for (int i = 0; i < lq; ++i) motif.push_back(small(rng) == 3 ? A0 : Cardinal(small(rng) % 3));
    for (int r = 0; r < 1 + small(rng) % 2; ++r) pattern.insert(pattern.end(), motif.begin(), motif.end());
    const TailKind tail = t % 5 == 0 ? TailKind::Zero : t % 5 == 1 ? TailKind::AllAleph0 : TailKind::Periodic;
    if (tail != TailKind::Periodic) pattern.clear();
    const auto raw = MultiplicitySeq::raw(prefix, tail, pattern);
    const auto n = normalize(raw);
    EXPECT_EQ(normalize(n), n);
    const std::size_t horizon = 3 * (prefix.size() + std::max<std::size_t>(pattern.size(), 1));
    for (std::size_t i = 1; i <= horizon; ++i) EXPECT_EQ(n.at(i), raw_term(prefix, tail, pattern, i)) << i;
    // Minimality: no shorter prefix or period reproduces the same terms.
    if (n.tail() == TailKind::Periodic) {
      const auto& pat = n.pattern();
      for (std::size_t d = 1; d < pat.size(); ++d) {
        if (pat.size() % d) continue;
        bool periodic = true;
        for (std::size_t k = 0; k < pat.size(); ++k) periodic = periodic && pat[k] == pat[k % d];
        EXPECT_FALSE(periodic);
      }
      if (!n.prefix().empty()) {
        EXPECT_NE(n.prefix().back(), pat.back());
      }
    }
  }
}

TEST(MultiplicitySeq, Predicates) {
  EXPECT_TRUE(MultiplicitySeq::cyclic(3).is_cyclic());
  EXPECT_FALSE(MultiplicitySeq::cyclic(3, 2).is_cyclic());
  EXPECT_TRUE(MultiplicitySeq::cyclic(3, 2).is_finite_group());
  EXPECT_FALSE(MultiplicitySeq::cyclic(3, A0).is_finite_group());
  EXPECT_TRUE(MultiplicitySeq::cyclic(3, A0).bounded_exponent());
  EXPECT_TRUE(MultiplicitySeq::all_ones().unbounded_torsion());
  EXPECT_EQ(MultiplicitySeq::all_ones().total_factors(), A0);
  EXPECT_EQ(MultiplicitySeq::cyclic(4, 3).exponent(), std::optional<std::size_t>(4));
}

TEST(Ordinal, SuccessorAndParse) {
  EXPECT_EQ(Ordinal::omega_times(1).successor(), Ordinal::omega_times(1, 1));
  EXPECT_EQ(Ordinal::omega_times(1, 1).to_string(), "w+1");
  EXPECT_EQ(Ordinal::parse("w^2*3+w*1+4"), Ordinal::omega_power(2, 3) + Ordinal::omega_times(1, 4));
  EXPECT_EQ(Ordinal::parse(Ordinal::parse("w^2*3+w*1+4").to_string()), Ordinal::parse("w^2*3+w+4"));
  EXPECT_THROW(Ordinal::parse("w+"), Error);
  EXPECT_EQ(Ordinal::finite(3) + Ordinal::omega_times(1), Ordinal::omega_times(1));
  EXPECT_EQ(Ordinal::omega_times(2, 3).minus(Ordinal::omega_times(1, 5)), Ordinal::omega_times(1, 3));
}

TEST(Ordinal, FundamentalSequences) {
  EXPECT_EQ(FundamentalSequence(Ordinal::omega_times(1)).take(3),
            (std::vector<Ordinal>{Ordinal::finite(1), Ordinal::finite(2), Ordinal::finite(3)}));
  const auto w2 = Ordinal::omega_times(2);
  const auto terms = FundamentalSequence(w2).take(3);
  EXPECT_EQ(terms, (std::vector<Ordinal>{Ordinal::omega_times(1, 1), Ordinal::omega_times(1, 2),
                                         Ordinal::omega_times(1, 3)}));
  // Cofinal: every ordinal below w*2 is eventually exceeded, and all terms stay below.
  for (std::uint64_t n = 0; n < 20; ++n) {
    const auto beta = Ordinal::omega_times(1, n);
    EXPECT_LT(beta, fundamental_term(w2, n + 1));
    EXPECT_LT(fundamental_term(w2, n + 1), w2);
  }
}

TEST(TorsionSequence, SingleFinalTermIsValid) {
  EXPECT_TRUE(validate(TorsionSequence::finite({full()})).valid());
}

TEST(TorsionSequence, BoundedNonFinalEntryIsInvalid) {
  const auto report = validate(TorsionSequence::finite({cyclic_layer(2, 2), full()}));
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].position, Ordinal());
  EXPECT_EQ(report.violations[0].kind, ViolationKind::BoundedExponent);
}

TEST(TorsionSequence, OmegaRunThenCyclic) {
  const TorsionSequence s({OmegaRun{{}, full()}, FiniteRun{{cyclic_layer(2, 1)}}});
  EXPECT_TRUE(validate(s).valid());
  EXPECT_EQ(s.order_type(), Ordinal::omega_times(1, 1));
  for (std::uint64_t n = 0; n < 10; ++n) EXPECT_EQ(s.at(Ordinal::finite(n)), full());
  EXPECT_EQ(s.at(Ordinal::omega_times(1)), cyclic_layer(2, 1));
}

TEST(TorsionSequence, TrivialAndMixedPrimeViolations) {
  EXPECT_FALSE(validate(TorsionSequence::finite({full(), CartesianDescriptor::trivial(2)})).valid());
  EXPECT_FALSE(validate(TorsionSequence::finite({full(2), cyclic_layer(3, 1)})).valid());
  const TorsionSequence s({OmegaRun{{}, cyclic_layer(2, 1)}});
  const auto r = validate(s);
  ASSERT_FALSE(r.valid());
  EXPECT_TRUE(r.violations[0].repeating);
}

TEST(TorsionSequence, NormalizeMergesRuns) {
  const TorsionSequence a({FiniteRun{{full()}}, FiniteRun{{cyclic_layer(2, 1)}}});
  EXPECT_EQ(a.normalized(), TorsionSequence::finite({full(), cyclic_layer(2, 1)}));
  const TorsionSequence b({FiniteRun{{full()}}, OmegaRun{{}, full()}});
  EXPECT_EQ(b.normalized().order_type(), Ordinal::omega_times(1));
  EXPECT_EQ(b.normalized(), TorsionSequence({OmegaRun{{}, full()}}).normalized());
}

TEST(TorsionSequence, DropAndTake) {
  const TorsionSequence s({OmegaRun{{}, full()}, FiniteRun{{full(), cyclic_layer(2, 2)}}});
  EXPECT_EQ(s.order_type(), Ordinal::omega_times(1, 2));
  EXPECT_EQ(s.drop(Ordinal::omega_times(1)), TorsionSequence::finite({full(), cyclic_layer(2, 2)}));
  EXPECT_EQ(s.take(Ordinal::omega_times(1)).order_type(), Ordinal::omega_times(1));
  EXPECT_EQ(s.drop(Ordinal::finite(5)), s.normalized());
}
