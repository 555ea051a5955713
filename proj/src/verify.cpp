#include "propcalc/verify.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "propcalc/classifier.hpp"
#include "propcalc/constructor.hpp"
#include "propcalc/dsl.hpp"
#include "propcalc/duality.hpp"
#include "propcalc/error.hpp"
#include "propcalc/generators.hpp"
#include "propcalc/kernels.hpp"
#include "propcalc/layer_split.hpp"
#include "propcalc/print.hpp"
#include "propcalc/shift_maps.hpp"
#include "propcalc/smith.hpp"
#include "propcalc/torsion_calculus.hpp"

namespace propcalc::verify {

namespace {

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}

  void check(bool ok, const std::function<std::string()>& what) {
    ++r_.cases;
    if (ok) return;
    r_.passed = false;
    ++r_.failure_count;
    if (r_.failures.size() < 5) r_.failures.push_back(what());
  }

 private:
  SuiteResult& r_;
};

std::string exps_text(const std::vector<unsigned>& e) {
  std::string out = "[";
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? "," : "") + std::to_string(e[i]);
  return out + "]";
}

double log2_order(const FiniteAbelianPGroup& g) {
  return g.log_order() * std::log2(static_cast<double>(g.prime()));
}

// ---------------------------------------------------------------- snf

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  if (k > n) return;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  combinations(m.rows(), k, rs);
  combinations(m.cols(), k, cs);
  Integer g = 0;
  IntMatrix sub(k, k);
  for (const auto& r : rs)
    for (const auto& c : cs) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), determinant(sub).get_mpz_t());
    }
  return g;
}

void suite_snf(Recorder& rec, SuiteResult& res, const Context& ctx) {
  gen::Rng rng(ctx.seed);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<long> entry(-50, 50);
  for (int t = 0; t < 500; ++t) {
    IntMatrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
    // Mix in low-rank and sparse matrices.
    const int style = t % 4;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = style == 3 && (i + j) % 2 ? 0 : entry(rng);
    if (style == 2 && m.rows() > 1)
      for (std::size_t j = 0; j < m.cols(); ++j) m(m.rows() - 1, j) = m(0, j) * 3;
    const auto snf = smith_normal_form(m);
    const std::size_t n = std::min(m.rows(), m.cols());
    IntMatrix d(m.rows(), m.cols());
    for (std::size_t i = 0; i < n; ++i) d(i, i) = snf.diagonal[i];
    const auto where = [&] { return m.to_string(); };
    rec.check(snf.left * m * snf.right == d, [&] { return "left*m*right != diag for " + where(); });
    rec.check(abs(determinant(snf.left)) == 1 && abs(determinant(snf.right)) == 1,
              [&] { return "transform not unimodular for " + where(); });
    Integer prefix_product = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const Integer& di = snf.diagonal[i];
      rec.check(di >= 0, [&] { return "negative diagonal entry for " + where(); });
      if (i + 1 < n) {
        const Integer& next = snf.diagonal[i + 1];
        const bool divides = di == 0 ? next == 0 : mpz_divisible_p(next.get_mpz_t(), di.get_mpz_t()) != 0;
        rec.check(divides, [&] { return "divisibility chain broken for " + where(); });
      }
      prefix_product *= di;
      const Integer g = minor_gcd(m, i + 1);
      rec.check(prefix_product == g, [&] {
        return "d_1..d_" + std::to_string(i + 1) + " = " + prefix_product.get_str() + " but minor gcd " +
               g.get_str() + " for " + where();
      });
    }
  }
  res.summary = "500 random matrices up to 6x6, |entries| <= 50: chain, unimodularity, minor gcds";
}

// ---------------------------------------------------------------- duality

/// Canonical exponents from the counts N_t = #{x : order(x) <= p^t}.
std::vector<unsigned> exponents_from_order_counts(std::uint64_t p, const std::vector<std::uint64_t>& at_most) {
  auto lg = [p](std::uint64_t n) {
    unsigned v = 0;
    while (n > 1) {
      n /= p;
      ++v;
    }
    return v;
  };
  // number of factors with exponent >= t is log(N_t) - log(N_{t-1})
  std::vector<unsigned> ge(at_most.size() + 1, 0);
  for (std::size_t t = 1; t < at_most.size(); ++t) ge[t] = lg(at_most[t]) - lg(at_most[t - 1]);
  std::vector<unsigned> out;
  for (std::size_t t = at_most.size() - 1; t >= 1; --t)
    for (unsigned c = 0; c < ge[t] - ge[t + 1]; ++c) out.push_back(static_cast<unsigned>(t));
  return out;
}

void suite_duality(Recorder& rec, SuiteResult& res, const Context&) {
  std::uint64_t groups = 0, bidual = 0;
  for (std::uint64_t p : {2u, 3u}) {
    for (const auto& g : gen::groups_up_to(p, p == 2 ? 10 : 6)) {
      ++groups;
      const auto chars = all_characters(g);
      const std::uint64_t n = g.order();
      rec.check(chars.size() == n, [&] { return "character count for " + g.to_string(); });
      std::set<std::vector<std::int64_t>> distinct;
      const unsigned e = g.exponent();
      std::vector<std::uint64_t> at_most(e + 1, 0);
      bool all_defined = true;
      for (const auto& chi : chars) {
        all_defined = all_defined && is_well_defined(g, chi);
        distinct.insert(chi.values);
        // order of chi from its values in Z/p^E
        unsigned ord = 0;
        for (auto v : chi.values) {
          if (v == 0) continue;
          unsigned val = 0;
          for (std::int64_t x = v; x % static_cast<std::int64_t>(p) == 0; x /= static_cast<std::int64_t>(p)) ++val;
          ord = std::max(ord, e - val);
        }
        ++at_most[ord];
      }
      for (std::size_t t = 1; t < at_most.size(); ++t) at_most[t] += at_most[t - 1];
      rec.check(all_defined, [&] { return "ill-defined character on " + g.to_string(); });
      rec.check(distinct.size() == n, [&] { return "repeated characters on " + g.to_string(); });
      const auto dual_exps = exponents_from_order_counts(p, at_most);
      rec.check(dual_exps == g.exponents(), [&] {
        return "G* of " + g.to_string() + " decomposes as " + exps_text(dual_exps);
      });
      if (log2_order(g) <= 8.0) {
        ++bidual;
        const auto dd = double_dual_map(g);
        rec.check(dd.agrees_with_evaluation && dd.homomorphism && dd.bijective,
                  [&] { return "double dual map fails on " + g.to_string(); });
      }
    }
  }
  res.summary = std::to_string(groups) + " groups with |G| <= 2^10 (p = 2, 3); double dual on " +
                std::to_string(bidual) + " with |G| <= 2^8";
}

// ---------------------------------------------------------------- annihilator

void suite_annihilator(Recorder& rec, SuiteResult& res, const Context&) {
  std::uint64_t groups = 0;
  for (std::uint64_t p : {2u, 3u}) {
    for (const auto& g : gen::groups_up_to(p, p == 2 ? 8 : 5)) {
      ++groups;
      const auto orders = kernels::serial::element_orders(g);
      for (unsigned v = 0; v <= g.exponent(); ++v) {
        std::vector<Element> bracket;
        for (std::uint64_t i = 0; i < orders.size(); ++i)
          if (orders[i] <= v) bracket.push_back(g.element_at(i));
        const std::uint64_t n = static_cast<std::uint64_t>(checked_power(p, v));
        const auto ann = annihilator(g, bracket);
        const auto mult = multiples_in_dual(g, n);
        const auto where = [&] { return g.to_string() + ", n = " + std::to_string(n); };
        rec.check(ann == mult, [&] { return "Ann(G[n]) != nG* for " + where(); });
        rec.check(ann.size() * bracket.size() == g.order(), [&] { return "order law fails for " + where(); });
        const auto by_snf = torsion_bracket(g, n);
        rec.check(annihilator(g, by_snf.generators) == ann,
                  [&] { return "SNF generators of G[n] give another annihilator for " + where(); });
      }
      rec.check(annihilator(g, std::vector<Element>{}).size() == g.order(),
                [&] { return "annihilator of the trivial subgroup is not G* for " + g.to_string(); });
    }
  }
  res.summary = "Ann(G[n]) = nG* setwise on " + std::to_string(groups) +
                " groups with |G| <= 2^8, every p-power n up to the exponent";
}

// ---------------------------------------------------------------- ulm

void suite_ulm(Recorder& rec, SuiteResult& res, const Context&) {
  std::uint64_t groups = 0;
  for (std::uint64_t p : {2u, 3u}) {
    for (const auto& g : gen::groups_up_to(p, p == 2 ? 10 : 6)) {
      ++groups;
      const auto formula = ulm_invariants_finite(g);
      const auto decomposition = decomposition_multiplicities(g);
      rec.check(formula == decomposition, [&] { return "invariants differ on " + g.to_string(); });
      const auto cumulative = ulm_cumulative_counts(g);
      for (const auto& [i, count] : cumulative) {
        const auto expected = static_cast<std::uint64_t>(
            std::count_if(g.exponents().begin(), g.exponents().end(), [i = i](unsigned e) { return e <= i; }));
        rec.check(count == expected, [&] {
          return "dim G[p^" + std::to_string(i) + "]/(pG cap G[p^i]) = " + std::to_string(count) + " on " +
                 g.to_string();
        });
      }
    }
  }
  res.summary = "formula invariants equal decomposition multiplicities on " + std::to_string(groups) +
                " groups with |G| <= 2^10";
}

// ---------------------------------------------------------------- theta

void suite_theta(Recorder& rec, SuiteResult& res, const Context&) {
  std::uint64_t enumerated = 0;
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (unsigned n = 1; n <= 6; ++n) {
      const auto theta = theta_truncated(p, n);
      const auto eta = diagonal_eta(p, n + 1);
      const auto where = [&] { return "p = " + std::to_string(p) + ", n = " + std::to_string(n); };
      rec.check(theta.well_defined(), [&] { return "theta ill-defined at " + where(); });
      rec.check(is_surjective(theta), [&] { return "theta not surjective at " + where(); });
      rec.check(log_kernel_order(theta) == n + 1, [&] { return "|ker theta| != p^(n+1) at " + where(); });
      rec.check(theta.apply(eta) == theta.codomain.zero(), [&] { return "theta(eta) != 0 at " + where(); });
      rec.check(theta.domain.order_log(eta) == n + 1, [&] { return "eta has the wrong order at " + where(); });
      const std::vector<Element> eta_gen{eta};
      bool inside = true;
      for (const auto& k : kernel_generators(theta)) inside = inside && in_subgroup(theta.domain, eta_gen, k);
      rec.check(inside, [&] { return "kernel not generated by eta at " + where(); });
      if (log2_order(theta.domain) <= 16.0) {
        ++enumerated;
        const auto images = kernels::parallel::evaluate(theta);
        const auto zero = theta.codomain.index_of(theta.codomain.zero());
        const auto in_kernel = static_cast<std::uint64_t>(std::count(images.begin(), images.end(), zero));
        std::set<std::uint64_t> hit(images.begin(), images.end());
        rec.check(in_kernel == static_cast<std::uint64_t>(checked_power(p, n + 1)),
                  [&] { return "enumerated kernel size wrong at " + where(); });
        rec.check(hit.size() == theta.codomain.order(), [&] { return "enumerated image not full at " + where(); });
      }
    }
    for (unsigned i = 1; i <= 4; ++i)
      for (unsigned j = 1; j <= 4; ++j) {
        const auto phi = phi_map(p, i, j);
        rec.check(phi.well_defined(), [&] { return "phi ill-defined"; });
        rec.check((j <= i) == is_surjective(phi) && (j > i) == (image(phi).structure.is_trivial()),
                  [&] { return "phi^" + std::to_string(i) + "_" + std::to_string(j) + " has the wrong image"; });
      }
  }
  res.summary = "theta surjective with kernel <eta> of order p^(n+1) for p in {2,3,5}, n <= 6; " +
                std::to_string(enumerated) + " cases enumerated";
}

// ---------------------------------------------------------------- classifier

bool certificate_shape(const IsoCertificate& c) {
  if (c.verdict) {
    return !c.evidence.empty() &&
           std::all_of(c.evidence.begin(), c.evidence.end(), [](const auto& e) { return e.left == e.right; });
  }
  return c.evidence.size() == 1 && c.evidence[0].left != c.evidence[0].right;
}

void suite_classifier(Recorder& rec, SuiteResult& res, const Context& ctx) {
  gen::Rng rng(ctx.seed + 6);
  std::vector<ProPDescriptor> corpus;
  for (int i = 0; i < 220; ++i) corpus.push_back(gen::descriptor(rng));
  const std::size_t n = corpus.size();
  std::vector<std::vector<char>> topo(n, std::vector<char>(n)), abst(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto t = topologically_isomorphic(corpus[i], corpus[j]);
      const auto a = abstractly_isomorphic(corpus[i], corpus[j]);
      topo[i][j] = t.verdict;
      abst[i][j] = a.verdict;
      if (i <= j) {
        rec.check(certificate_shape(t) && certificate_shape(a), [&] {
          return "certificate shape for " + format_descriptor(corpus[i]) + " vs " + format_descriptor(corpus[j]);
        });
      }
    }
  const auto name = [&](std::size_t i) { return format_descriptor(corpus[i]); };
  for (const auto* m : {&topo, &abst}) {
    const auto& r = *m;
    const char* which = m == &topo ? "topological" : "abstract";
    for (std::size_t i = 0; i < n; ++i) {
      rec.check(r[i][i], [&] { return std::string(which) + " not reflexive on " + name(i); });
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][j] != r[j][i])
          rec.check(false, [&] { return std::string(which) + " not symmetric on " + name(i) + ", " + name(j); });
        if (!r[i][j]) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (r[j][k] && !r[i][k])
            rec.check(false, [&] { return std::string(which) + " not transitive via " + name(j); });
      }
    }
  }
  std::uint64_t bounded_pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (topo[i][j] && !abst[i][j])
        rec.check(false, [&] { return "topological but not abstract: " + name(i) + ", " + name(j); });
      const bool bi = closure_of_torsion(corpus[i]).mults.bounded_exponent();
      const bool bj = closure_of_torsion(corpus[j]).mults.bounded_exponent();
      if (bi && bj) {
        ++bounded_pairs;
        if (topo[i][j] != abst[i][j])
          rec.check(false, [&] { return "bounded deciders disagree: " + name(i) + ", " + name(j); });
      }
    }
  std::uint64_t unbounded = 0, absorbing = 0, free_factor_pairs = 0, topologically_iso_pairs = 0;
  for (const auto& d : corpus) {
    if (!closure_of_torsion(d).mults.unbounded_torsion()) continue;
    ++unbounded;
    for (Cardinal k : {Cardinal(1), Cardinal(2), Cardinal(3), Cardinal::aleph0()}) {
      const auto e = product(d, ProPDescriptor::free(d.prime, k));
      rec.check(abstractly_isomorphic(d, e).verdict,
                [&] { return "adding Z_p^" + k.to_string() + " changed the abstract class of " + format_descriptor(d); });
      // aleph0 + k = aleph0, so only finite free ranks can change.
      const bool expect_topo = d.free_rank.is_aleph0();
      if (expect_topo) ++absorbing;
      const bool topo_iso = topologically_isomorphic(d, e).verdict;
      ++free_factor_pairs;
      if (topo_iso) ++topologically_iso_pairs;
      rec.check(topo_iso == expect_topo, [&] {
        return "topological verdict for " + format_descriptor(d) + " x Z_p^" + k.to_string();
      });
    }
  }
  res.summary = std::to_string(n) + " descriptors, " + std::to_string(bounded_pairs) + " bounded pairs, " +
                std::to_string(unbounded) + " unbounded descriptors in the free-factor family (" +
                std::to_string(absorbing / 4) + " with free rank aleph0)";
  res.counters["free_factor_pairs"] = free_factor_pairs;
  res.counters["free_factor_pairs_topologically_iso"] = topologically_iso_pairs;
  res.counters["free_factor_pairs_with_aleph0_free_rank"] = absorbing;
}

// ---------------------------------------------------------------- construct

void suite_construct(Recorder& rec, SuiteResult& res, const Context& ctx) {
  gen::Rng rng(ctx.seed + 7);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> types = {{0, 1}, {0, 2}, {0, 3},
                                                                      {1, 0}, {1, 1}, {1, 2}};
  std::map<std::string, std::uint64_t> cases;
  for (int i = 0; i < 120; ++i) {
    const auto [k, n] = types[static_cast<std::size_t>(i) % types.size()];
    const std::uint64_t p = i % 5 == 4 ? 3 : 2;
    const int final_kind = (i / 6) % 3;
    auto seq = gen::sequence_of_type(rng, p, k, n, final_kind == 0);
    if (final_kind == 2 && n > 0) {
      auto bs = seq.blocks();
      bs.back().head.back() = cyclic_layer(p, 1 + static_cast<std::size_t>(i % 3));
      seq = TorsionSequence::from_blocks(bs).normalized();
    }
    const auto tree = construct(seq);
    ++cases[construction_case(*tree)];
    const auto back = verify_construction_symbolic(*tree);
    rec.check(back == seq, [&] {
      return "round trip " + format_sequence(seq) + " -> " + format_sequence(back);
    });
    rec.check(*construct(seq) == *tree, [&] { return "construct not deterministic on " + format_sequence(seq); });
  }
  for (const char* c : {"I", "II", "III", "IV", "V"})
    rec.check(cases[c] > 0, [&] { return std::string("case ") + c + " not covered"; });
  std::string counts;
  for (const auto& [c, k] : cases) counts += (counts.empty() ? "" : ", ") + c + ": " + std::to_string(k);
  res.summary = "120 sequences of type <= w+2 (" + counts + ")";
}

// ---------------------------------------------------------------- materialize

void suite_materialize(Recorder& rec, SuiteResult& res, const Context& ctx) {
  {
    const auto u = CartesianDescriptor{2, MultiplicitySeq::all_ones()};
    const auto tree = make_extension(2, make_leaf(u), 1);
    const auto m = materialize(*tree, 2, 1);
    rec.check(m.relations == IntMatrix{{2, 0, 0}, {0, 4, 0}, {-1, -1, 2}} &&
                  m.group().exponents() == std::vector<unsigned>{3, 1},
              [&] { return "level-2 extension of prod C_{2^i} is " + m.group().to_string(); });
  }
  gen::Rng rng(ctx.seed + 8);
  std::uint64_t trees = 0, checks = 0;
  for (std::uint64_t p : {2u, 3u}) {
    for (int t = 0; t < 12; ++t) {
      const unsigned r = 1 + static_cast<unsigned>(t % 3);
      std::vector<CartesianDescriptor> layers{gen::unbounded_layer(rng, p)};
      if (t >= 8) layers.push_back(gen::unbounded_layer(rng, p));
      layers.push_back(cyclic_layer(p, r));
      const auto seq = TorsionSequence::finite(layers).normalized();
      const auto tree = construct(seq);
      if (construction_case(*tree) != "I") continue;
      ++trees;
      const auto& ext = std::get<ExtensionNode>(tree->node);
      const unsigned max_level = layers.size() > 2 ? 5 : 8;
      for (unsigned level = 1; level <= max_level; ++level)
        for (std::uint64_t cap = 1; cap <= 2; ++cap) {
          ++checks;
          const auto whole = materialize(*tree, level, cap);
          const auto child = materialize(*ext.child, level, cap);
          const auto where = [&] {
            return format_sequence(seq) + " at level " + std::to_string(level) + ", cap " + std::to_string(cap);
          };
          rec.check(whole.group().log_order() == child.group().log_order() + r,
                    [&] { return "order law fails for " + where(); });
          const std::vector<Element> h(whole.presented.generator_images.begin(),
                                       whole.presented.generator_images.begin() +
                                           static_cast<std::ptrdiff_t>(whole.child_generator_count));
          const auto q = quotient(whole.group(), h);
          rec.check(q.exponents() == std::vector<unsigned>{r},
                    [&] { return "G/H is " + q.to_string() + " for " + where(); });
        }
    }
  }
  res.summary = std::to_string(trees) + " Case I trees, " + std::to_string(checks) +
                " materializations (levels <= 8, caps 1-2): order law and cyclic quotient";
}

// ---------------------------------------------------------------- delta

bool delta_outside_by_enumeration(const FiniteAbelianPGroup& h, const Element& delta, unsigned level) {
  const auto orders = kernels::serial::element_orders(h);
  std::vector<std::uint8_t> in_set(orders.size(), 0);
  std::vector<Element> torsion;
  for (std::uint64_t i = 0; i < orders.size(); ++i)
    if (orders[i] <= level - 1) torsion.push_back(h.element_at(i));
  Element x;
  for (std::uint64_t i = 0; i < orders.size(); ++i) {
    h.element_at(i, x);
    const Element px = h.scale(x, Integer(static_cast<long>(h.prime())));
    for (const auto& s : torsion) in_set[h.index_of(h.add(px, s))] = 1;
  }
  return in_set[h.index_of(delta)] == 0;
}

void suite_delta(Recorder& rec, SuiteResult& res, const Context&) {
  std::uint64_t checks = 0, enumerated = 0;
  for (std::uint64_t p : {2u, 3u}) {
    const std::vector<CartesianDescriptor> layers = {
        {p, MultiplicitySeq::all_ones()},
        {p, MultiplicitySeq::all_aleph0()},
        {p, MultiplicitySeq::periodic({1}, {2})},
        {p, MultiplicitySeq::periodic({}, {1, 2})},
    };
    for (const auto& layer : layers) {
      const auto tree = make_extension(p, make_leaf(layer), 1);
      for (unsigned level = 2; level <= 8; ++level)
        for (std::uint64_t cap = 1; cap <= 2; ++cap) {
          ++checks;
          FiniteAbelianPGroup h;
          const Element delta = truncated_diagonal(*tree, level, cap, &h);
          const auto where = [&] {
            return format_layer(layer) + " at level " + std::to_string(level) + ", cap " + std::to_string(cap);
          };
          rec.check(check_delta_condition(*tree, level, cap), [&] { return "default diagonal fails for " + where(); });
          const Element p_delta = h.scale(delta, Integer(static_cast<long>(p)));
          rec.check(!delta_outside(h, p_delta, level), [&] { return "p*delta passes for " + where(); });
          Element torsion = h.zero();
          for (std::size_t j = 0; j < h.rank(); ++j) torsion[j] = h.modulus(j) / static_cast<std::int64_t>(p);
          rec.check(!delta_outside(h, torsion, level), [&] { return "a torsion delta passes for " + where(); });
          if (log2_order(h) <= 14.0) {
            ++enumerated;
            for (const auto& candidate : {delta, p_delta, torsion})
              rec.check(delta_outside(h, candidate, level) == delta_outside_by_enumeration(h, candidate, level),
                        [&] { return "SNF and enumeration disagree for " + where(); });
          }
        }
    }
  }
  res.summary = std::to_string(checks) + " default diagonals at levels 2-8, p in {2,3}; " +
                std::to_string(enumerated) + " cross-checked by enumeration";
}

// ---------------------------------------------------------------- embed

void suite_embed(Recorder& rec, SuiteResult& res, const Context& ctx) {
  gen::Rng rng(ctx.seed + 10);
  std::uint64_t pairs = 0, checks = 0, by_kernel = 0, enumerated = 0, too_large = 0;
  std::map<std::string, std::uint64_t> skipped_by;
  unsigned lowest_skipped = 0;
  for (int t = 0; t < 160; ++t) {
    gen::DescriptorOptions opts;
    opts.max_limit_blocks = t % 4 == 3 ? 1 : 0;
    opts.max_finite_tail = 2;
    auto a = gen::descriptor(rng, opts);
    const std::uint64_t p = a.prime;
    auto b = ProPDescriptor{p, gen::sequence_of_type(rng, p, 0, 1 + static_cast<std::uint64_t>(t % 2), true),
                            Cardinal(static_cast<std::uint64_t>(t % 3))}
                 .normalized();
    const auto result = decide_embedding(a, b);
    const auto where = [&] { return format_descriptor(a) + " into " + format_descriptor(b); };
    rec.check(result.supported, [&] { return "not supported: " + where(); });
    if (!result.supported) continue;
    ++pairs;
    std::set<std::pair<std::size_t, std::uint64_t>> used;
    bool ok = true;
    for (const auto& asg : result.witness.assignments) {
      ok = ok && asg.target.exponent >= asg.demand.exponent;
      ok = ok && used.insert({asg.target.exponent, asg.target.copy}).second;
      ok = ok && Cardinal(asg.target.copy) < closure_of_torsion(b).mults.at(asg.target.exponent);
    }
    for (const auto& chain : result.witness.free_chains)
      for (std::size_t k = 0; k < chain.size(); ++k) {
        ok = ok && used.insert({chain[k].exponent, chain[k].copy}).second;
        if (k) ok = ok && chain[k].exponent > chain[k - 1].exponent;
      }
    rec.check(ok, [&] { return "witness not injective or not order-compatible: " + where(); });
    const unsigned max_level = 8;
    for (unsigned level = 1; level <= max_level; ++level) {
      FiniteEmbeddingCheck check;
      try {
        check = check_embedding_at_level(a, b, level, 1);
      } catch (const SizeLimitError& e) {
        too_large += max_level - level + 1;
        skipped_by[e.what()] += max_level - level + 1;
        if (lowest_skipped == 0 || level < lowest_skipped) lowest_skipped = level;
        break;
      }
      ++checks;
      if (check.injective_by_kernel) ++by_kernel;
      if (check.injective_by_enumeration) ++enumerated;
      rec.check(check.ok(), [&] {
        return "level " + std::to_string(level) + " map " + check.domain + " -> " + check.codomain +
               " not injective: " + where();
      });
    }
  }
  {
    const auto zp = ProPDescriptor::free(2, 1);
    const auto full = ProPDescriptor::cartesian({2, MultiplicitySeq::all_ones()});
    const auto e = decide_embedding(zp, full);
    rec.check(e.supported && e.witness.free_chains.size() == 1 && e.witness.assignments.empty(),
              [] { return "Z_p into prod C_{p^i} has no chain"; });
    rec.check(decide_embedding(ProPDescriptor::trivial(2), ProPDescriptor::cartesian({2, MultiplicitySeq::cyclic(1)}))
                  .supported,
              [] { return "trivial group does not embed"; });
    rec.check(!decide_embedding(full, ProPDescriptor::cartesian({2, MultiplicitySeq::cyclic(1, Cardinal::aleph0())}))
                   .supported,
              [] { return "bounded target reported as supported"; });
  }
  res.summary = std::to_string(pairs) + " witnesses, " + std::to_string(checks) +
                " level maps at levels 1-8 injective by exact index (" + std::to_string(by_kernel) +
                " also by 64-bit kernel, " + std::to_string(enumerated) + " element by element); " +
                std::to_string(too_large) + " skipped by size guards";
  std::string reasons;
  for (const auto& [reason, n] : skipped_by) reasons += (reasons.empty() ? "" : ", ") + reason + ": " + std::to_string(n);
  if (!reasons.empty())
    res.summary += " at levels >= " + std::to_string(lowest_skipped) + " (" + reasons + ")";
}

// ---------------------------------------------------------------- calculus

void suite_calculus(Recorder& rec, SuiteResult& res, const Context& ctx) {
  gen::Rng rng(ctx.seed + 12);
  std::vector<ProPDescriptor> corpus;
  for (int i = 0; i < 50; ++i) corpus.push_back(gen::descriptor(rng));
  std::uint64_t decomposed = 0, materialized = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& d = corpus[i];
    const auto text = format_descriptor(d);
    rec.check(dual_discrete(dual(d)) == d, [&] { return "dual round trip fails on " + text; });
    const auto peeled = peel_free_part(d);
    rec.check(product(peeled.dual_reduced, ProPDescriptor::free(d.prime, peeled.free_rank)) == d,
              [&] { return "peel round trip fails on " + text; });
    rec.check(product(d, ProPDescriptor::trivial(d.prime)) == d, [&] { return "trivial factor changes " + text; });
    const auto& e = corpus[(i * 7 + 3) % corpus.size()];
    const auto& f = corpus[(i * 13 + 5) % corpus.size()];
    if (e.prime == d.prime && f.prime == d.prime) {
      rec.check(product(d, e) == product(e, d), [&] { return "product not commutative on " + text; });
      rec.check(product(product(d, e), f) == product(d, product(e, f)),
                [&] { return "product not associative on " + text; });
    }
    const Ordinal type = d.torsion.order_type();
    std::vector<Ordinal> alphas{Ordinal(), type};
    if (Ordinal::finite(1) <= type) alphas.push_back(Ordinal::finite(1));
    if (Ordinal::omega_times(1) <= type) alphas.push_back(Ordinal::omega_times(1));
    for (const auto& alpha : alphas) {
      const auto data = torsion_series_data(d, alpha);
      rec.check(data.remainder.torsion.order_type() == type.minus(alpha) && data.remainder.free_rank == d.free_rank,
                [&] { return "shift law fails at " + alpha.to_string() + " on " + text; });
    }
    if (!d.is_finite_group() && !d.torsion.empty() && !closure_of_torsion(d).mults.is_finite_group()) {
      for (bool cyclic : {false, true}) {
        const auto top = d.torsion.final_entry();
        if (cyclic && (!top || top->mults.is_cyclic())) continue;
        ++decomposed;
        const auto dec = decompose_infinite_product(d, cyclic);
        const auto factors = dec.take(5);
        for (const auto& k : factors) rec.check(!k.is_trivial(), [&] { return "trivial factor of " + text; });
        auto all = factors;
        all.push_back(dec.tail(factors.size()));
        rec.check(product(all, d.prime) == d, [&] { return "factors do not multiply back to " + text; });
      }
    }
    if (d.torsion.order_type() <= Ordinal::finite(2)) {
      const auto m = materialize(*construct(d.torsion, d.prime), 3, 1);
      const auto& g = m.group();
      if (log2_order(g) <= 12.0) {
        ++materialized;
        for (unsigned v = 0; v <= g.exponent(); ++v) {
          const auto n = static_cast<std::uint64_t>(checked_power(g.prime(), v));
          rec.check(annihilator(g, torsion_bracket(g, n).generators) == multiples_in_dual(g, n),
                    [&] { return "annihilator law fails on a materialization of " + text; });
        }
      }
    }
  }
  res.summary = "50 descriptors: dual and peel round trips, product laws, shift law; " + std::to_string(decomposed) +
                " decompositions; annihilator law on " + std::to_string(materialized) + " materializations";
}

// ---------------------------------------------------------------- cli

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

std::string fuzz_input(gen::Rng& rng, const std::vector<std::string>& golden) {
  static const char* const vocab[] = {"C", "(", ")", "2", "3", "4", "0", "1", ",", "prod", "for", "i", "in",
                                      "N", "L", "[", "]", "aleph0", "Zp", "trivial", "seq", "repeat", "*",
                                      "^", "let", "x", "=", ";", " ", "#", "\n", "99999999999999999999999",
                                      "4096", "4097", "j"};
  std::uniform_int_distribution<int> byte(0, 255);
  std::string out;
  switch (rng() % 3) {
    case 0: {
      const auto len = rng() % 48;
      for (std::uint64_t i = 0; i < len; ++i) out.push_back(static_cast<char>(byte(rng)));
      break;
    }
    case 1: {
      const auto len = rng() % 24;
      for (std::uint64_t i = 0; i < len; ++i) out += vocab[rng() % std::size(vocab)];
      break;
    }
    default: {
      out = golden.empty() ? "seq[C(2,1)]" : golden[rng() % golden.size()];
      const auto edits = 1 + rng() % 4;
      for (std::uint64_t e = 0; e < edits && !out.empty(); ++e) {
        const auto pos = rng() % out.size();
        switch (rng() % 3) {
          case 0: out.erase(pos, 1); break;
          case 1: out.insert(pos, 1, static_cast<char>(byte(rng))); break;
          default: out[pos] = static_cast<char>(byte(rng));
        }
      }
    }
  }
  return out;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

int run_command(const std::string& cmd, std::string* output) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::string buf;
  char chunk[4096];
  std::size_t n;
  while ((n = fread(chunk, 1, sizeof chunk, pipe)) > 0) buf.append(chunk, n);
  const int status = pclose(pipe);
  if (output) *output = buf;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void suite_cli(Recorder& rec, SuiteResult& res, const Context& ctx) {
  const auto golden = read_lines(ctx.fixtures_dir + "/golden.txt");
  rec.check(golden.size() >= 100, [&] { return "golden corpus has " + std::to_string(golden.size()) + " entries"; });
  for (const auto& line : golden) {
    try {
      const auto d = dsl::parse_descriptor(line);
      const auto printed = dsl::print(d);
      rec.check(printed == line, [&] { return "golden line reprints as " + printed + ": " + line; });
      rec.check(dsl::parse_descriptor(printed) == d, [&] { return "golden line does not lower back: " + line; });
    } catch (const std::exception& ex) {
      rec.check(false, [&] { return "golden line rejected: " + line + ": " + ex.what(); });
    }
  }
  gen::Rng rng(ctx.seed + 11);
  std::uint64_t accepted = 0, rejected = 0;
  for (std::uint64_t i = 0; i < ctx.fuzz_inputs; ++i) {
    const auto input = fuzz_input(rng, golden);
    try {
      const auto d = dsl::parse_descriptor(input);
      ++accepted;
      if (dsl::parse_descriptor(dsl::print(d)) != d)
        rec.check(false, [&] { return "accepted fuzz input does not round trip: " + input; });
    } catch (const dsl::DslError& e) {
      ++rejected;
      if (e.span().line == 0 || e.span().column == 0)
        rec.check(false, [&] { return "unpositioned error for fuzz input: " + input; });
    } catch (const std::exception& ex) {
      rec.check(false, [&] { return "fuzz input escaped as " + std::string(ex.what()) + ": " + input; });
    }
  }
  rec.check(accepted + rejected == ctx.fuzz_inputs, [] { return "fuzz count mismatch"; });
  std::string exit_note = "exit codes not checked";
  if (!ctx.cli_path.empty()) {
    const std::string cli = shell_quote(ctx.cli_path);
    const std::string a = shell_quote("seq[prod(C(2,i) for i in N)]");
    const std::string b = shell_quote("seq[prod(C(2,i) for i in N)] * Zp(2)^1");
    struct Expect {
      std::string args;
      int code;
    };
    const std::vector<Expect> expected = {
        {"iso --topological " + a + " " + a, 0},
        {"iso --topological " + a + " " + b, 1},
        {"iso --abstract " + a + " " + b, 0},
        {"iso --abstract " + a + " " + shell_quote("C(4,1)"), 2},
        {"normalize " + shell_quote("seq[C(2,"), 2},
        {"no-such-command", 2},
    };
    for (const auto& e : expected) {
      const int code = run_command(cli + " " + e.args + " >/dev/null 2>&1", nullptr);
      rec.check(code == e.code, [&] {
        return "exit code " + std::to_string(code) + " (expected " + std::to_string(e.code) + ") for " + e.args;
      });
    }
    for (const auto& line : golden) {
      std::string out;
      const int code = run_command(cli + " normalize " + shell_quote(line), &out);
      rec.check(code == 0 && out == line + "\n", [&] { return "CLI normalize changes " + line + " to " + out; });
    }
    exit_note = "exit codes and CLI normalize checked";
  }
  res.summary = std::to_string(golden.size()) + " golden lines; " + std::to_string(ctx.fuzz_inputs) +
                " fuzz inputs (" + std::to_string(accepted) + " accepted, " + std::to_string(rejected) +
                " rejected with positions); " + exit_note;
}

using SuiteFn = void (*)(Recorder&, SuiteResult&, const Context&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"snf", suite_snf},           {"duality", suite_duality},       {"annihilator", suite_annihilator},
      {"ulm", suite_ulm},           {"theta", suite_theta},           {"classifier", suite_classifier},
      {"construct", suite_construct}, {"materialize", suite_materialize}, {"delta", suite_delta},
      {"embed", suite_embed},       {"calculus", suite_calculus},     {"cli", suite_cli},
  };
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

SuiteResult run_suite(const std::string& name, const Context& ctx) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    SuiteResult res;
    res.name = name;
    Recorder rec(res);
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(rec, res, ctx);
    } catch (const std::exception& ex) {
      rec.check(false, [&] { return std::string("suite aborted: ") + ex.what(); });
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
  }
  throw Error("unknown suite \"" + name + "\"");
}

std::string format_table(const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %-6s %9s %9s\n", "suite", "result", "checks", "seconds");
  os << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-12s %-6s %9llu %9.2f\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                  static_cast<unsigned long long>(r.cases), r.seconds);
    os << line;
    for (const auto& f : r.failures) os << "    " << f << "\n";
  }
  return os.str();
}

}  // namespace propcalc::verify
