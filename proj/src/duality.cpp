#include "propcalc/duality.hpp"

#include <algorithm>

#include "propcalc/error.hpp"
#include "propcalc/kernels.hpp"

namespace propcalc {

std::uint64_t ElementSet::size() const {
  return static_cast<std::uint64_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

namespace {

unsigned log_count(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n > 1) {
    if (n % p != 0) throw Error("set size is not a power of p");
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

FiniteAbelianPGroup structure_of(const ElementSet& subgroup) {
  const auto& g = subgroup.ambient;
  const auto orders = kernels::parallel::element_orders(g);
  // count_at_most[t] = |A[p^t]|
  std::vector<std::uint64_t> count_at_most(g.exponent() + 1, 0);
  for (std::uint64_t i = 0; i < orders.size(); ++i)
    if (subgroup.mask[i]) ++count_at_most[orders[i]];
  for (std::size_t t = 1; t < count_at_most.size(); ++t) count_at_most[t] += count_at_most[t - 1];
  // number of factors of exponent >= t is log_p(|A[p^t]| / |A[p^{t-1}]|)
  std::vector<unsigned> at_least(g.exponent() + 2, 0);
  for (std::size_t t = 1; t < count_at_most.size(); ++t)
    at_least[t] = log_count(count_at_most[t], g.prime()) - log_count(count_at_most[t - 1], g.prime());
  std::vector<unsigned> exps;
  for (unsigned e = 1; e <= g.exponent(); ++e)
    for (unsigned c = 0; c < at_least[e] - at_least[e + 1]; ++c) exps.push_back(e);
  return FiniteAbelianPGroup(g.prime(), std::move(exps));
}

ElementSet enumerate_subgroup(const FiniteAbelianPGroup& g, std::span<const Element> gens) {
  ElementSet out{g, std::vector<std::uint8_t>(g.order(), 0)};
  std::vector<Element> members{g.zero()};
  out.mask[g.index_of(g.zero())] = 1;
  for (const auto& s : gens) {
    if (!g.contains(s)) throw Error("generator is not an element of the group");
    // Close under adding s: sweep the current members along the cycle of s.
    const std::size_t base = members.size();
    for (std::size_t m = 0; m < base; ++m) {
      Element x = g.add(members[m], s);
      while (!out.mask[g.index_of(x)]) {
        out.mask[g.index_of(x)] = 1;
        members.push_back(x);
        x = g.add(x, s);
      }
    }
  }
  return out;
}

FiniteAbelianPGroup character_group(const FiniteAbelianPGroup& g) { return g; }

Character character_from_coordinates(const FiniteAbelianPGroup& g, const Element& dual_coords) {
  if (!g.contains(dual_coords)) throw Error("dual coordinates out of range");
  Character chi{g.exponent(), std::vector<std::int64_t>(g.rank())};
  for (std::size_t j = 0; j < g.rank(); ++j)
    chi.values[j] = dual_coords[j] * checked_power(g.prime(), g.exponent() - g.exponents()[j]);
  return chi;
}

std::vector<Character> all_characters(const FiniteAbelianPGroup& g) {
  const std::uint64_t n = g.order();
  std::vector<Character> out;
  out.reserve(n);
  Element c;
  for (std::uint64_t i = 0; i < n; ++i) {
    g.element_at(i, c);
    out.push_back(character_from_coordinates(g, c));
  }
  return out;
}

std::int64_t evaluate(const FiniteAbelianPGroup& g, const Character& chi, const Element& x) {
  const auto target = static_cast<__int128>(checked_power(g.prime(), chi.target_exponent));
  __int128 acc = 0;
  for (std::size_t j = 0; j < x.size(); ++j) acc = (acc + static_cast<__int128>(chi.values[j]) * x[j]) % target;
  return static_cast<std::int64_t>(acc);
}

bool is_well_defined(const FiniteAbelianPGroup& g, const Character& chi) {
  const auto target = static_cast<__int128>(checked_power(g.prime(), chi.target_exponent));
  for (std::size_t j = 0; j < g.rank(); ++j)
    if (static_cast<__int128>(chi.values[j]) * g.modulus(j) % target != 0) return false;
  return true;
}

ElementSet annihilator(const FiniteAbelianPGroup& g, std::span<const Element> subgroup_gens) {
  for (const auto& s : subgroup_gens)
    if (!g.contains(s)) throw Error("generator is not an element of the group");
  return {character_group(g), kernels::parallel::annihilator_mask(g, subgroup_gens)};
}

ElementSet multiples_in_dual(const FiniteAbelianPGroup& g, std::uint64_t n) {
  const FiniteAbelianPGroup dual = character_group(g);
  Homomorphism times_n{dual, dual, {}};
  for (std::size_t j = 0; j < dual.rank(); ++j)
    times_n.images.push_back(dual.scale(dual.generator(j), Integer(static_cast<unsigned long>(n))));
  ElementSet out{dual, std::vector<std::uint8_t>(dual.order(), 0)};
  for (auto idx : kernels::parallel::evaluate(times_n)) out.mask[idx] = 1;
  return out;
}

DoubleDualMap double_dual_map(const FiniteAbelianPGroup& g) {
  const std::uint64_t n = g.order();
  const FiniteAbelianPGroup dual = character_group(g);
  const FiniteAbelianPGroup bidual = character_group(dual);
  DoubleDualMap out;
  out.images.resize(n);
  // ev_x on the basis characters chi_j takes the value p^{E-e_j} x_j; as a
  // character of G* that is coordinate x_j after dividing by p^{E-e_j}.
  Element x, d(g.rank());
  std::vector<Character> basis;
  for (std::size_t j = 0; j < dual.rank(); ++j)
    basis.push_back(character_from_coordinates(g, dual.generator(j)));
  for (std::uint64_t i = 0; i < n; ++i) {
    g.element_at(i, x);
    for (std::size_t j = 0; j < g.rank(); ++j) {
      const std::int64_t value = evaluate(g, basis[j], x);
      const std::int64_t weight = checked_power(g.prime(), g.exponent() - dual.exponents()[j]);
      if (value % weight != 0) throw Error("evaluation is not a character of G*");
      d[j] = value / weight;
    }
    out.images[i] = bidual.index_of(d);
  }
  out.agrees_with_evaluation = kernels::parallel::double_dual_mismatches(g, out.images) == 0;

  std::vector<std::uint8_t> hit(n, 0);
  std::uint64_t distinct = 0;
  for (auto idx : out.images)
    if (!hit[idx]) {
      hit[idx] = 1;
      ++distinct;
    }
  out.bijective = distinct == n;

  out.homomorphism = true;
  Element y;
  for (std::uint64_t i = 0; i < n && out.homomorphism; ++i) {
    g.element_at(i, x);
    for (std::uint64_t k = 0; k < n; ++k) {
      g.element_at(k, y);
      const auto sum = bidual.add(bidual.element_at(out.images[i]), bidual.element_at(out.images[k]));
      if (out.images[g.index_of(g.add(x, y))] != bidual.index_of(sum)) {
        out.homomorphism = false;
        break;
      }
    }
  }
  return out;
}

std::map<unsigned, std::uint64_t> ulm_cumulative_counts(const FiniteAbelianPGroup& g) {
  const auto orders = kernels::parallel::element_orders(g);
  // pG, enumerated as the image of multiplication by p.
  Homomorphism times_p{g, g, {}};
  for (std::size_t j = 0; j < g.rank(); ++j)
    times_p.images.push_back(g.scale(g.generator(j), Integer(static_cast<unsigned long>(g.prime()))));
  std::vector<std::uint8_t> in_pg(orders.size(), 0);
  for (auto idx : kernels::parallel::evaluate(times_p)) in_pg[idx] = 1;

  std::map<unsigned, std::uint64_t> out;
  for (unsigned i = 1; i <= g.exponent(); ++i) {
    std::uint64_t bracket = 0, meet = 0;
    for (std::size_t x = 0; x < orders.size(); ++x) {
      if (orders[x] > i) continue;
      ++bracket;
      if (in_pg[x]) ++meet;
    }
    out[i] = log_count(bracket, g.prime()) - log_count(meet, g.prime());
  }
  return out;
}

std::map<unsigned, std::uint64_t> ulm_invariants_finite(const FiniteAbelianPGroup& g) {
  const auto cumulative = ulm_cumulative_counts(g);
  std::map<unsigned, std::uint64_t> out;
  std::uint64_t previous = 0;
  for (const auto& [i, count] : cumulative) {
    if (count > previous) out[i] = count - previous;
    previous = count;
  }
  return out;
}

}  // namespace propcalc
