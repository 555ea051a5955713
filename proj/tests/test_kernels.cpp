#include <gtest/gtest.h>

#include "propcalc/error.hpp"
#include "propcalc/duality.hpp"
#include "propcalc/generators.hpp"
#include "propcalc/kernels.hpp"
#include "propcalc/shift_maps.hpp"

using namespace propcalc;

TEST(Kernels, EvaluateSerialMatchesParallel) {
  for (std::uint64_t p : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 4; ++n) {
      const auto theta = theta_truncated(p, n);
      if (theta.domain.log_order() * (p == 2 ? 1 : p == 3 ? 2 : 3) > 16) continue;
      EXPECT_EQ(kernels::serial::evaluate(theta), kernels::parallel::evaluate(theta));
    }
}

TEST(Kernels, OrdersSerialMatchesParallel) {
  for (const auto& g : gen::groups_up_to(2, 9))
    EXPECT_EQ(kernels::serial::element_orders(g), kernels::parallel::element_orders(g));
  for (const auto& g : gen::groups_up_to(3, 5))
    EXPECT_EQ(kernels::serial::element_orders(g), kernels::parallel::element_orders(g));
}

TEST(Kernels, AnnihilatorSerialMatchesParallel) {
  for (const auto& g : gen::groups_up_to(2, 7))
    for (unsigned v = 0; v <= g.exponent(); ++v) {
      const auto gens = torsion_bracket(g, std::uint64_t{1} << v).generators;
      EXPECT_EQ(kernels::serial::annihilator_mask(g, gens), kernels::parallel::annihilator_mask(g, gens));
    }
}

TEST(Kernels, DoubleDualSerialMatchesParallel) {
  for (const auto& g : gen::groups_up_to(3, 4)) {
    const auto dd = double_dual_map(g);
    EXPECT_EQ(kernels::serial::double_dual_mismatches(g, dd.images), 0u);
    EXPECT_EQ(kernels::parallel::double_dual_mismatches(g, dd.images), 0u);
    auto broken = dd.images;
    if (broken.size() > 1) {
      std::swap(broken[0], broken[1]);
      EXPECT_EQ(kernels::serial::double_dual_mismatches(g, broken),
                kernels::parallel::double_dual_mismatches(g, broken));
      EXPECT_GT(kernels::serial::double_dual_mismatches(g, broken), 0u);
    }
  }
}
