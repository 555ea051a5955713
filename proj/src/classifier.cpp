#include "propcalc/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "propcalc/constructor.hpp"
#include "propcalc/error.hpp"
#include "propcalc/kernels.hpp"
#include "propcalc/print.hpp"
#include "propcalc/torsion_calculus.hpp"

namespace propcalc {

namespace {

class Comparer {
 public:
  explicit Comparer(IsoCertificate& cert) : cert_(cert) {}

  bool operator()(std::string name, std::string left, std::string right) {
    if (left != right) {
      cert_.verdict = false;
      cert_.evidence = {{std::move(name), std::move(left), std::move(right)}};
      return false;
    }
    cert_.evidence.push_back({std::move(name), std::move(left), std::move(right)});
    return true;
  }

 private:
  IsoCertificate& cert_;
};

std::string exponent_kind(const CartesianDescriptor& first) {
  return first.mults.unbounded_torsion() ? "unbounded" : "bounded";
}

bool compare_layers(Comparer& cmp, const TorsionSequence& a, const TorsionSequence& b) {
  const auto ab = a.blocks();
  const auto bb = b.blocks();
  for (std::size_t k = 0; k < ab.size(); ++k) {
    const bool infinite = ab[k].repeat.has_value();
    const std::size_t len = infinite ? std::max(ab[k].head.size(), bb[k].head.size()) + 1 : ab[k].head.size();
    for (std::size_t n = 0; n < len; ++n) {
      const bool onward = infinite && n + 1 == len;
      const std::string name =
          "layer[" + Ordinal::omega_times(k, n).to_string() + (onward ? " onward" : "") + "]";
      if (!cmp(name, format_layer(*ab[k].at(n)), format_layer(*bb[k].at(n)))) return false;
    }
  }
  return true;
}

}  // namespace

IsoCertificate topologically_isomorphic(const ProPDescriptor& a, const ProPDescriptor& b) {
  IsoCertificate cert;
  cert.rule = "topological";
  cert.verdict = true;
  Comparer cmp(cert);
  if (!cmp("prime", std::to_string(a.prime), std::to_string(b.prime))) return cert;
  const auto na = a.normalized();
  const auto nb = b.normalized();
  if (!cmp("free_rank", na.free_rank.to_string(), nb.free_rank.to_string())) return cert;
  if (!cmp("torsion_type", na.torsion.order_type().to_string(), nb.torsion.order_type().to_string()))
    return cert;
  compare_layers(cmp, na.torsion, nb.torsion);
  return cert;
}

IsoCertificate abstractly_isomorphic(const ProPDescriptor& a, const ProPDescriptor& b) {
  IsoCertificate cert;
  cert.rule = "abstract";
  cert.verdict = true;
  Comparer cmp(cert);
  if (!cmp("prime", std::to_string(a.prime), std::to_string(b.prime))) return cert;
  const auto fa = closure_of_torsion(a);
  const auto fb = closure_of_torsion(b);
  if (!cmp("torsion_exponent", exponent_kind(fa), exponent_kind(fb))) {
    cert.rule = "abstract/mixed";
    return cert;
  }
  if (fa.mults.unbounded_torsion()) {
    cert.rule = "abstract/unbounded";
    cmp("first_layer", format_layer(fa), format_layer(fb));
    return cert;
  }
  const auto topo = topologically_isomorphic(a, b);
  cert.rule = "abstract/bounded";
  cert.verdict = topo.verdict;
  if (topo.verdict) {
    cert.evidence.insert(cert.evidence.end(), topo.evidence.begin() + 1, topo.evidence.end());
  } else {
    cert.evidence = topo.evidence;
  }
  return cert;
}

namespace {

/// Hands out the factors of an unbounded layer: the smallest unused copy of
/// the smallest exponent v >= u.
class SlotPool {
 public:
  explicit SlotPool(const CartesianDescriptor& layer) : layer_(layer) {}

  FactorSlot take(std::size_t min_exponent) {
    for (std::size_t v = std::max<std::size_t>(min_exponent, 1);; ++v) {
      auto& next = next_copy_[v];
      if (Cardinal(next) < layer_.mults.at(v)) return {v, next++};
    }
  }

 private:
  const CartesianDescriptor& layer_;
  std::map<std::size_t, std::uint64_t> next_copy_;
};

struct DemandSource {
  std::string name;
  CartesianDescriptor layer;
};

std::vector<Demand> enumerate_demands(const TorsionSequence& seq, std::uint64_t limit, bool& complete) {
  const auto blocks = seq.blocks();
  bool finite = true;
  std::uint64_t total = 0;
  for (const auto& b : blocks) {
    if (b.repeat) finite = false;
    for (const auto& e : b.head) {
      const Cardinal t = e.mults.total_factors();
      if (t.is_aleph0()) finite = false;
      else total += t.value();
    }
  }
  std::vector<Demand> out;
  // Weight w collects the factors f of position w*k + n with n + f = w.
  for (std::uint64_t w = 0; out.size() < limit; ++w) {
    if (finite && out.size() == total) break;
    for (std::size_t k = 0; k < blocks.size() && out.size() < limit; ++k) {
      for (std::uint64_t n = 0; n <= w && out.size() < limit; ++n) {
        const auto layer = blocks[k].at(n);
        if (!layer) break;
        const std::uint64_t f = w - n;
        const auto slots = cyclic_slots(*layer, f + 1);
        if (slots.size() <= f) continue;
        out.push_back({"layer[" + Ordinal::omega_times(k, n).to_string() + "]", slots[f].exponent, f});
      }
    }
  }
  complete = finite && out.size() == total;
  return out;
}

}  // namespace

EmbeddingResult decide_embedding(const ProPDescriptor& a, const ProPDescriptor& b,
                                 std::uint64_t demand_limit, std::size_t chain_length) {
  if (a.prime != b.prime) throw Error("mixed primes in embedding");
  const auto na = a.normalized();
  const auto nb = b.normalized();
  EmbeddingResult out;
  if (na.is_trivial()) {
    out.supported = true;
    out.witness.complete = true;
    return out;
  }
  const auto first = closure_of_torsion(nb);
  if (!first.mults.unbounded_torsion()) return out;
  out.supported = true;

  bool complete = false;
  auto demands = enumerate_demands(na.torsion, demand_limit, complete);
  std::stable_sort(demands.begin(), demands.end(),
                   [](const Demand& x, const Demand& y) { return x.exponent < y.exponent; });
  SlotPool pool(first);
  for (auto& d : demands) {
    const auto slot = pool.take(d.exponent);
    out.witness.assignments.push_back({std::move(d), slot});
  }
  const std::uint64_t chains = na.free_rank.capped(demand_limit);
  for (std::uint64_t c = 0; c < chains; ++c) {
    std::vector<FactorSlot> chain;
    std::size_t v = 1;
    for (std::size_t link = 0; link < chain_length; ++link) {
      chain.push_back(pool.take(v));
      v = chain.back().exponent + 1;
    }
    out.witness.free_chains.push_back(std::move(chain));
  }
  out.witness.complete = complete && na.free_rank.is_zero();
  return out;
}

namespace {

std::string describe_exponents(std::uint64_t p, const std::vector<unsigned>& exps) {
  if (exps.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i)
    out += (i ? " x " : "") + std::string("C_{") + std::to_string(p) + "^" + std::to_string(exps[i]) + "}";
  return out;
}

}  // namespace

FiniteEmbeddingCheck check_embedding_at_level(const ProPDescriptor& a, const ProPDescriptor& b,
                                              unsigned level, std::uint64_t cap) {
  if (a.prime != b.prime) throw Error("mixed primes in embedding");
  const auto na = a.normalized();
  const auto first = closure_of_torsion(b);
  if (!first.mults.unbounded_torsion())
    throw Error("embedding check needs an unbounded first layer");
  const std::uint64_t p = na.prime;

  auto exps = presentation_exponents(materialize_relations(*construct(na.torsion, p), level, cap), p);
  for (std::uint64_t c = 0; c < na.free_rank.capped(cap); ++c) exps.push_back(level);
  std::sort(exps.begin(), exps.end(), std::greater<>());

  // Ascending u, so the greedy pool sees the smallest demands first.
  SlotPool pool(first);
  std::vector<FactorSlot> slots(exps.size());
  for (std::size_t k = exps.size(); k-- > 0;) slots[k] = pool.take(exps[k]);

  // Coordinates outside the assigned slots form a direct complement of a
  // summand containing the image, so the codomain keeps the assigned slots.
  std::vector<FactorSlot> used(slots.begin(), slots.end());
  const auto slot_order = [](const FactorSlot& x, const FactorSlot& y) {
    return x.exponent != y.exponent ? x.exponent > y.exponent : x.copy < y.copy;
  };
  std::sort(used.begin(), used.end(), slot_order);
  used.erase(std::unique(used.begin(), used.end(),
                         [](const FactorSlot& x, const FactorSlot& y) {
                           return x.exponent == y.exponent && x.copy == y.copy;
                         }),
             used.end());
  std::vector<unsigned> cod_exps;
  for (const auto& u : used) cod_exps.push_back(static_cast<unsigned>(u.exponent));
  auto coordinate = [&](const FactorSlot& x) {
    return static_cast<std::size_t>(std::lower_bound(used.begin(), used.end(), x, slot_order) - used.begin());
  };
  std::size_t top = 0;
  for (const auto& u : used) top = std::max(top, u.exponent);
  auto power = [p](unsigned e) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), p, e);
    return out;
  };

  FiniteEmbeddingCheck out;
  out.domain = describe_exponents(p, exps);
  out.codomain = describe_exponents(p, cod_exps);

  // Generator k of order p^u goes to p^(v-u) e_slot; it is well defined when
  // p^u * p^(v-u) vanishes modulo the slot's order p^v.
  out.well_defined = true;
  for (std::size_t k = 0; k < exps.size(); ++k)
    out.well_defined = out.well_defined && slots[k].exponent >= exps[k] &&
                       Cardinal(slots[k].copy) < first.mults.at(slots[k].exponent);

  // |im f| = |C| / |C / im f|, with C / im f presented by the codomain
  // relations plus the image rows.
  const std::size_t s = cod_exps.size();
  IntMatrix rel(s + exps.size(), s);
  for (std::size_t j = 0; j < s; ++j) rel(j, j) = power(cod_exps[j]);
  for (std::size_t k = 0; k < exps.size(); ++k)
    rel(s + k, coordinate(slots[k])) = power(static_cast<unsigned>(slots[k].exponent) - exps[k]);
  const auto coker = presentation_exponents(rel, p);
  const auto sum = [](const std::vector<unsigned>& v) { return std::accumulate(v.begin(), v.end(), std::uint64_t{0}); };
  out.injective_by_index = out.well_defined && sum(cod_exps) - sum(coker) == sum(exps);

  const double bits = std::log2(static_cast<double>(p));
  // The 64-bit cross-checks are optional; their own size guards only skip them.
  try {
    if (static_cast<double>(top) * bits <= 62.0) {
      const FiniteAbelianPGroup domain(p, exps), codomain(p, cod_exps);
      Homomorphism f{domain, codomain, {}};
      for (std::size_t k = 0; k < domain.rank(); ++k) {
        Element img = codomain.zero();
        img[coordinate(slots[k])] = checked_power(p, static_cast<unsigned>(slots[k].exponent) - exps[k]);
        f.images.push_back(std::move(img));
      }
      out.injective_by_kernel = f.well_defined() && is_injective(f);
      if (domain.log_order() * bits <= 16.0) {
        const auto images = kernels::parallel::evaluate(f);
        std::vector<std::uint64_t> sorted(images.begin(), images.end());
        std::sort(sorted.begin(), sorted.end());
        out.injective_by_enumeration = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      }
    }
  } catch (const SizeLimitError&) {
    out.injective_by_kernel.reset();
    out.injective_by_enumeration.reset();
  }
  return out;
}

namespace {

// aleph0 multiplicities go to every part, finite ones to part 0.
CartesianDescriptor bounded_part(const CartesianDescriptor& layer, std::uint64_t n) {
  const auto& m = layer.mults;
  auto f = [&](std::size_t i) -> Cardinal {
    const Cardinal c = m.at(i);
    return c.is_aleph0() || n == 0 ? c : Cardinal(0);
  };
  return {layer.prime, MultiplicitySeq::from_function(m.prefix().size(), 1, f)};
}

ProductFamily cyclic_family(const ProPDescriptor& d) {
  return {FamilyKind::CyclicTop, d.prime, d.torsion};
}

}  // namespace

ProductDecomposition::ProductDecomposition(ProPDescriptor d, bool cyclic_tops)
    : d_(d.normalized()), cyclic_tops_(cyclic_tops) {
  if (d_.is_finite_group() || d_.torsion.empty()) throw Error("not decomposable");
  if (!validate(d_.torsion).valid()) throw Error("not decomposable: invalid torsion sequence");
  if (closure_of_torsion(d_).mults.is_finite_group()) throw Error("not decomposable");
  if (cyclic_tops_) {
    const auto top = d_.torsion.final_entry();
    if (!top || top->mults.is_cyclic()) throw Error("not decomposable with cyclic tops");
  }
}

std::optional<std::uint64_t> ProductDecomposition::count() const {
  if (!cyclic_tops_) return std::nullopt;
  return cyclic_family(d_).count();
}

ProPDescriptor ProductDecomposition::factor(std::uint64_t n) const {
  const Cardinal free = n == 0 ? d_.free_rank : Cardinal(0);
  if (cyclic_tops_) return ProPDescriptor{d_.prime, cyclic_family(d_).member_sequence(n), free}.normalized();
  const auto seq = map_entries(d_.torsion, [&](const CartesianDescriptor& e) {
    return e.mults.unbounded_torsion() ? residue_part(e, n) : bounded_part(e, n);
  });
  return ProPDescriptor{d_.prime, seq, free}.normalized();
}

ProPDescriptor ProductDecomposition::tail(std::uint64_t k) const {
  if (k == 0) return d_;
  if (cyclic_tops_) return ProPDescriptor{d_.prime, cyclic_family(d_).tail_sequence(k), Cardinal(0)}.normalized();
  const auto seq = map_entries(d_.torsion, [&](const CartesianDescriptor& e) {
    return e.mults.unbounded_torsion() ? residue_tail(e, k) : bounded_part(e, k);
  });
  return ProPDescriptor{d_.prime, seq, Cardinal(0)}.normalized();
}

std::vector<ProPDescriptor> ProductDecomposition::take(std::uint64_t k) const {
  if (const auto n = count()) k = std::min(k, *n);
  std::vector<ProPDescriptor> out;
  for (std::uint64_t i = 0; i < k; ++i) out.push_back(factor(i));
  return out;
}

ProductDecomposition decompose_infinite_product(const ProPDescriptor& d, bool cyclic_tops) {
  return ProductDecomposition(d, cyclic_tops);
}

PeeledDescriptor peel_free_part(const ProPDescriptor& d) {
  const auto n = d.normalized();
  return {ProPDescriptor{n.prime, n.torsion, Cardinal(0)}, n.free_rank};
}

}  // namespace propcalc
