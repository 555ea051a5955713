#include "propcalc/torsion_calculus.hpp"

#include <algorithm>

#include "propcalc/error.hpp"

namespace propcalc {

CartesianDescriptor closure_of_torsion(const ProPDescriptor& d) {
  const auto n = d.normalized();
  if (n.torsion.empty()) return CartesianDescriptor::trivial(n.prime);
  return n.torsion.at(Ordinal());
}

SeriesData torsion_series_data(const ProPDescriptor& d, const Ordinal& alpha) {
  const auto n = d.normalized();
  const Ordinal type = n.torsion.order_type();
  if (alpha > type) throw Error("index exceeds torsion type");
  CartesianDescriptor layer =
      alpha == type ? CartesianDescriptor::trivial(n.prime) : n.torsion.at(alpha);
  ProPDescriptor rest{n.prime, n.torsion.drop(alpha), n.free_rank};
  return {std::move(layer), rest.normalized()};
}

Ordinal torsion_type(const ProPDescriptor& d) { return d.normalized().torsion.order_type(); }

TorsionSequence sequence_product(const TorsionSequence& a, const TorsionSequence& b,
                                 std::uint64_t prime) {
  const auto ab = a.blocks();
  const auto bb = b.blocks();
  const CartesianDescriptor one = CartesianDescriptor::trivial(prime);
  auto entry = [&](const std::vector<Block>& bs, std::size_t k, std::size_t n) {
    if (k >= bs.size()) return one;
    return bs[k].at(n).value_or(one);
  };
  std::vector<Block> out;
  for (std::size_t k = 0; k < std::max(ab.size(), bb.size()); ++k) {
    const std::size_t ha = k < ab.size() ? ab[k].head.size() : 0;
    const std::size_t hb = k < bb.size() ? bb[k].head.size() : 0;
    Block blk;
    for (std::size_t n = 0; n < std::max(ha, hb); ++n)
      blk.head.push_back(entry(ab, k, n) * entry(bb, k, n));
    const bool ra = k < ab.size() && ab[k].repeat;
    const bool rb = k < bb.size() && bb[k].repeat;
    if (ra || rb)
      blk.repeat = (ra ? *ab[k].repeat : one) * (rb ? *bb[k].repeat : one);
    out.push_back(std::move(blk));
  }
  return TorsionSequence::from_blocks(out).normalized();
}

ProPDescriptor product(const ProPDescriptor& a, const ProPDescriptor& b) {
  if (a.prime != b.prime) throw Error("mixed primes in product");
  ProPDescriptor out{a.prime, sequence_product(a.torsion, b.torsion, a.prime),
                     a.free_rank + b.free_rank};
  return out.normalized();
}

ProPDescriptor product(const std::vector<ProPDescriptor>& ds, std::uint64_t prime) {
  ProPDescriptor acc = ProPDescriptor::trivial(prime);
  for (const auto& d : ds) acc = product(acc, d);
  return acc;
}

DiscreteDescriptor dual(const ProPDescriptor& d) {
  const auto n = d.normalized();
  return {n.prime, n.torsion, n.free_rank};
}

ProPDescriptor dual_discrete(const DiscreteDescriptor& e) {
  return ProPDescriptor{e.prime, e.ulm, e.divisible_rank}.normalized();
}

}  // namespace propcalc
