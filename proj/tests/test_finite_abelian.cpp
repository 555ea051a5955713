#include <gtest/gtest.h>

#include "oracles.hpp"
#include "propcalc/error.hpp"
#include "propcalc/duality.hpp"
#include "propcalc/finite_group.hpp"
#include "propcalc/generators.hpp"
#include "propcalc/kernels.hpp"
#include "propcalc/smith.hpp"

using namespace propcalc;

namespace {

std::vector<long long> snf_diagonal(const IntMatrix& m) {
  std::vector<long long> out;
  for (const auto& d : smith_normal_form(m).diagonal) out.push_back(d.get_si());
  return out;
}

std::vector<std::vector<long long>> plain(const IntMatrix& m) {
  std::vector<std::vector<long long>> out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
  return out;
}

}  // namespace

TEST(Smith, TwoByTwo) {
  const IntMatrix m{{2, 4}, {6, 8}};
  const auto d = snf_diagonal(m);
  EXPECT_EQ(d, (std::vector<long long>{2, 4}));
  EXPECT_EQ(d[0], oracle::minor_gcd(plain(m), 1));
  EXPECT_EQ(d[0] * d[1], oracle::minor_gcd(plain(m), 2));
}

TEST(Smith, IdentityAndZero) {
  EXPECT_EQ(snf_diagonal(IntMatrix::identity(3)), (std::vector<long long>{1, 1, 1}));
  EXPECT_EQ(snf_diagonal(IntMatrix{{0, 0}, {0, 0}}), (std::vector<long long>{0, 0}));
}

TEST(Smith, RandomAgainstMinorOracle) {
  gen::Rng rng(99);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<long> entry(-20, 20);
  for (int t = 0; t < 150; ++t) {
    IntMatrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    const auto snf = smith_normal_form(m);
    const auto d = snf_diagonal(m);
    long long prefix = 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
      prefix *= d[i];
      EXPECT_EQ(prefix, oracle::minor_gcd(plain(m), i + 1)) << m.to_string();
    }
    EXPECT_EQ(oracle::det(plain(snf.left)) * oracle::det(plain(snf.left)), 1);
    EXPECT_EQ(oracle::det(plain(snf.right)) * oracle::det(plain(snf.right)), 1);
  }
}

TEST(Presentation, Diagonal) {
  EXPECT_EQ(group_from_presentation(IntMatrix{{2, 0}, {0, 4}}, 2).group.exponents(), (std::vector<unsigned>{2, 1}));
}

TEST(Presentation, CaseIExtension) {
  const IntMatrix rel{{2, 0, 0}, {0, 4, 0}, {-1, -1, 2}};
  const auto g = group_from_presentation(rel, 2).group;
  EXPECT_EQ(g.exponents(), (std::vector<unsigned>{3, 1}));
  EXPECT_EQ(snf_diagonal(rel), (std::vector<long long>{1, 2, 8}));
  EXPECT_EQ(oracle::minor_gcd(plain(rel), 3), 16);
}

TEST(Presentation, TriangularExponentsMatchMinorOracle) {
  gen::Rng rng(7);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> extra(0, 2);
  std::uniform_int_distribution<unsigned> power(0, 3);
  std::uniform_int_distribution<long> entry(-6, 6);
  for (const std::uint64_t p : {2u, 3u}) {
    for (int t = 0; t < 200; ++t) {
      const auto n = static_cast<std::size_t>(dim(rng));
      IntMatrix m(n + static_cast<std::size_t>(extra(rng)), n);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i < n && j > i) continue;
          long v = entry(rng);
          if (i == j) {
            v = 1;
            for (unsigned e = power(rng); e > 0; --e) v *= static_cast<long>(p);
          }
          m(i, j) = v;
        }
      std::vector<unsigned> expected;
      long long prev = 1;
      for (std::size_t k = 1; k <= n; ++k) {
        const long long g = oracle::minor_gcd(plain(m), k);
        long long d = g / prev;
        prev = g;
        unsigned v = 0;
        while (d % static_cast<long long>(p) == 0) d /= static_cast<long long>(p), ++v;
        if (v > 0) expected.push_back(v);
      }
      std::sort(expected.begin(), expected.end(), std::greater<>());
      EXPECT_EQ(presentation_exponents(m, p), expected) << m.to_string();
    }
  }
}

TEST(Presentation, Empty) {
  EXPECT_TRUE(group_from_presentation(IntMatrix(0, 0), 2).group.is_trivial());
}

TEST(Subgroups, CyclicFormulas) {
  const FiniteAbelianPGroup c8(2, {3});
  EXPECT_EQ(power_subgroup(c8, 2).structure.exponents(), (std::vector<unsigned>{2}));
  EXPECT_EQ(torsion_bracket(c8, 2).structure.exponents(), (std::vector<unsigned>{1}));
  const std::vector<Element> four{Element{4}};
  EXPECT_EQ(quotient(c8, four).exponents(), (std::vector<unsigned>{2}));
}

TEST(Subgroups, BracketByEnumeration) {
  const FiniteAbelianPGroup g(2, {3, 1});
  const auto b = torsion_bracket(g, 2);
  EXPECT_EQ(b.structure.exponents(), (std::vector<unsigned>{1, 1}));
  EXPECT_EQ(oracle::count_killed_by(2, {3, 1}, 2), 4u);
}

TEST(Subgroups, BracketAndPowerSizesOnAllSmallGroups) {
  for (std::uint64_t p : {2u, 3u})
    for (const auto& g : gen::groups_up_to(p, p == 2 ? 7 : 4))
      for (unsigned v = 0; v <= g.exponent(); ++v) {
        const auto n = oracle::ipow(static_cast<std::int64_t>(p), v);
        EXPECT_EQ(torsion_bracket(g, static_cast<std::uint64_t>(n)).structure.order(),
                  oracle::count_killed_by(static_cast<std::int64_t>(p), g.exponents(), n));
        // |nG| * |G[n]| = |G|
        EXPECT_EQ(power_subgroup(g, static_cast<std::uint64_t>(n)).structure.order() *
                      torsion_bracket(g, static_cast<std::uint64_t>(n)).structure.order(),
                  g.order());
      }
}

TEST(Ulm, Examples) {
  const auto c8 = FiniteAbelianPGroup(2, {3});
  EXPECT_EQ(ulm_invariants_finite(c8), (std::map<unsigned, std::uint64_t>{{3, 1}}));
  const auto g = FiniteAbelianPGroup(2, {3, 1});
  EXPECT_EQ(ulm_invariants_finite(g), (std::map<unsigned, std::uint64_t>{{1, 1}, {3, 1}}));
  EXPECT_TRUE(ulm_invariants_finite(FiniteAbelianPGroup(2, {})).empty());
}

TEST(Ulm, FormulaMatchesEnumeration) {
  for (std::uint64_t p : {2u, 3u})
    for (const auto& g : gen::groups_up_to(p, p == 2 ? 8 : 5)) {
      const auto literal = oracle::ulm_by_enumeration(static_cast<std::int64_t>(p), g.exponents());
      EXPECT_EQ(ulm_cumulative_counts(g), literal) << g.to_string();
      std::map<unsigned, std::uint64_t> by_count;
      for (auto e : g.exponents()) ++by_count[e];
      EXPECT_EQ(ulm_invariants_finite(g), by_count) << g.to_string();
      EXPECT_EQ(decomposition_multiplicities(g), by_count);
    }
}

TEST(Duality, AnnihilatorOfC4Bracket) {
  const FiniteAbelianPGroup g(2, {2});
  const auto chars = all_characters(g);
  ASSERT_EQ(chars.size(), 4u);
  // Characters vanishing on G[2] = {0, 2}: chi(1) in {0, 2}.
  std::uint64_t vanishing = 0;
  for (const auto& chi : chars) vanishing += evaluate(g, chi, Element{2}) == 0;
  const std::vector<Element> bracket{Element{2}};
  const auto ann = annihilator(g, bracket);
  EXPECT_EQ(ann.size(), vanishing);
  EXPECT_EQ(ann.size(), 2u);
  EXPECT_EQ(ann, multiples_in_dual(g, 2));
}

TEST(Duality, SelfDualAndTrivialAnnihilator) {
  const FiniteAbelianPGroup g(2, {2, 1});
  EXPECT_EQ(character_group(g).exponents(), (std::vector<unsigned>{2, 1}));
  EXPECT_EQ(annihilator(g, std::vector<Element>{}).size(), g.order());
}

TEST(Duality, CharacterGroupMatchesCountingOracle) {
  for (const auto& g : gen::groups_up_to(3, 4)) {
    const auto chars = all_characters(g);
    EXPECT_EQ(chars.size(), g.order());
    for (const auto& chi : chars) EXPECT_TRUE(is_well_defined(g, chi));
    EXPECT_EQ(oracle::exponents_by_counting(3, character_group(g).exponents()), g.exponents());
  }
}

TEST(Duality, DoubleDual) {
  for (const auto& g : gen::groups_up_to(2, 6)) {
    const auto dd = double_dual_map(g);
    EXPECT_TRUE(dd.agrees_with_evaluation && dd.homomorphism && dd.bijective) << g.to_string();
  }
}

TEST(FiniteGroup, IndexingRoundTrip) {
  const FiniteAbelianPGroup g(3, {2, 1, 1});
  for (std::uint64_t i = 0; i < g.order(); ++i) EXPECT_EQ(g.index_of(g.element_at(i)), i);
  EXPECT_THROW(FiniteAbelianPGroup(2, {40}).order(), SizeLimitError);
  EXPECT_THROW(checked_power(2, 63), SizeLimitError);
}

TEST(Homomorphism, KernelAndImage) {
  // x -> 2x on C_8
  const FiniteAbelianPGroup c8(2, {3});
  const Homomorphism f{c8, c8, {Element{2}}};
  EXPECT_TRUE(f.well_defined());
  EXPECT_EQ(log_kernel_order(f), 1u);
  EXPECT_FALSE(is_injective(f));
  EXPECT_FALSE(is_surjective(f));
  EXPECT_EQ(image(f).structure.exponents(), (std::vector<unsigned>{2}));
  // C_2 -> C_4 sending 1 to 1 is not well defined
  EXPECT_FALSE((Homomorphism{FiniteAbelianPGroup(2, {1}), FiniteAbelianPGroup(2, {2}), {Element{1}}}.well_defined()));
}
