#include "propcalc/finite_group.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

#include "propcalc/error.hpp"

namespace propcalc {

std::int64_t checked_power(std::uint64_t p, unsigned e) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  std::int64_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (v > kLimit / static_cast<std::int64_t>(p)) throw SizeLimitError("p^e exceeds 62 bits");
    v *= static_cast<std::int64_t>(p);
  }
  return v;
}

unsigned valuation(const Integer& n, std::uint64_t p) {
  if (n == 0) throw Error("valuation of zero");
  if (p == 2) return static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0));
  Integer rest, prime(static_cast<unsigned long>(p));
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

FiniteAbelianPGroup::FiniteAbelianPGroup(std::uint64_t prime, std::vector<unsigned> exponents)
    : prime_(prime) {
  if (prime < 2) throw Error("group prime must be at least 2");
  std::erase(exponents, 0u);
  std::sort(exponents.begin(), exponents.end(), std::greater<>());
  exponents_ = std::move(exponents);
  moduli_.reserve(exponents_.size());
  for (unsigned e : exponents_) moduli_.push_back(checked_power(prime_, e));
}

unsigned FiniteAbelianPGroup::log_order() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0u);
}

std::uint64_t FiniteAbelianPGroup::order(std::uint64_t limit) const {
  std::uint64_t n = 1;
  for (auto m : moduli_) {
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(m), &n) || n > limit)
      throw SizeLimitError("oracle size limit");
  }
  return n;
}

Element FiniteAbelianPGroup::generator(std::size_t j) const {
  Element e = zero();
  e.at(j) = 1;
  return e;
}

bool FiniteAbelianPGroup::contains(const Element& x) const {
  if (x.size() != rank()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < 0 || x[j] >= moduli_[j]) return false;
  return true;
}

Element FiniteAbelianPGroup::add(const Element& x, const Element& y) const {
  Element out(rank());
  for (std::size_t j = 0; j < out.size(); ++j) {
    std::int64_t s = x[j] + y[j];
    out[j] = s >= moduli_[j] ? s - moduli_[j] : s;
  }
  return out;
}

Element FiniteAbelianPGroup::negate(const Element& x) const {
  Element out(rank());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = x[j] == 0 ? 0 : moduli_[j] - x[j];
  return out;
}

Element FiniteAbelianPGroup::scale(const Element& x, const Integer& k) const {
  Element out(rank());
  Integer r;
  for (std::size_t j = 0; j < out.size(); ++j) {
    mpz_fdiv_r_ui(r.get_mpz_t(), k.get_mpz_t(), static_cast<unsigned long>(moduli_[j]));
    const auto kk = static_cast<__int128>(r.get_ui());
    out[j] = static_cast<std::int64_t>((kk * x[j]) % moduli_[j]);
  }
  return out;
}

Element FiniteAbelianPGroup::reduce(std::span<const Integer> coords) const {
  if (coords.size() != rank()) throw Error("coordinate count does not match group rank");
  Element out(rank());
  Integer r;
  for (std::size_t j = 0; j < out.size(); ++j) {
    mpz_fdiv_r_ui(r.get_mpz_t(), coords[j].get_mpz_t(), static_cast<unsigned long>(moduli_[j]));
    out[j] = static_cast<std::int64_t>(r.get_ui());
  }
  return out;
}

unsigned FiniteAbelianPGroup::order_log(const Element& x) const {
  unsigned best = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    unsigned v = 0;
    std::int64_t y = x[j];
    while (y % static_cast<std::int64_t>(prime_) == 0) {
      y /= static_cast<std::int64_t>(prime_);
      ++v;
    }
    best = std::max(best, exponents_[j] - v);
  }
  return best;
}

std::uint64_t FiniteAbelianPGroup::index_of(const Element& x) const {
  std::uint64_t idx = 0;
  for (std::size_t j = rank(); j > 0; --j)
    idx = idx * static_cast<std::uint64_t>(moduli_[j - 1]) + static_cast<std::uint64_t>(x[j - 1]);
  return idx;
}

void FiniteAbelianPGroup::element_at(std::uint64_t index, Element& out) const {
  out.resize(rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto m = static_cast<std::uint64_t>(moduli_[j]);
    out[j] = static_cast<std::int64_t>(index % m);
    index /= m;
  }
}

Element FiniteAbelianPGroup::element_at(std::uint64_t index) const {
  Element out;
  element_at(index, out);
  return out;
}

std::string FiniteAbelianPGroup::to_string() const {
  if (exponents_.empty()) return "trivial";
  std::string out;
  for (unsigned e : exponents_) {
    if (!out.empty()) out += " x ";
    out += "C_{" + std::to_string(prime_) + "^" + std::to_string(e) + "}";
  }
  return out;
}

namespace {

void append_relations(IntMatrix& m, std::size_t first_row, const FiniteAbelianPGroup& g) {
  for (std::size_t j = 0; j < g.rank(); ++j) m(first_row + j, j) = Integer(g.modulus(j));
}

IntMatrix rows_with_relations(const FiniteAbelianPGroup& g, std::span<const Element> gens) {
  IntMatrix m(gens.size() + g.rank(), g.rank());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!g.contains(gens[i])) throw Error("generator is not an element of the group");
    for (std::size_t j = 0; j < g.rank(); ++j) m(i, j) = Integer(gens[i][j]);
  }
  append_relations(m, gens.size(), g);
  return m;
}

}  // namespace

PresentedGroup group_from_presentation(const IntMatrix& relations, std::uint64_t p) {
  const std::size_t n = relations.cols();
  const SmithForm snf = smith_normal_form(relations);
  struct Kept {
    std::size_t column;
    unsigned exponent;
  };
  std::vector<Kept> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= snf.diagonal.size() || snf.diagonal[i] == 0) throw Error("non-finite p-part");
    const unsigned v = valuation(snf.diagonal[i], p);
    if (v > 0) kept.push_back({i, v});
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const Kept& a, const Kept& b) { return a.exponent > b.exponent; });
  std::vector<unsigned> exps;
  for (const auto& k : kept) exps.push_back(k.exponent);
  FiniteAbelianPGroup group(p, exps);

  std::vector<Element> images;
  images.reserve(n);
  std::vector<Integer> coords(kept.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < kept.size(); ++c) coords[c] = snf.right(j, kept[c].column);
    images.push_back(group.reduce(coords));
  }
  return {std::move(group), std::move(images)};
}

namespace {

/// Sum of p-valuations of the diagonal when the leading square block is lower
/// triangular with nonzero diagonal; that sum bounds log_p of the group order.
std::optional<unsigned> triangular_log_bound(const IntMatrix& m, std::uint64_t p) {
  const std::size_t n = m.cols();
  if (m.rows() < n) return std::nullopt;
  unsigned bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) == 0) return std::nullopt;
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) != 0) return std::nullopt;
    bound += valuation(m(i, i), p);
  }
  return bound;
}

/// Diagonalizes over Z/p^k; exact for every invariant exponent below k.
std::vector<unsigned> local_exponents(const IntMatrix& m, std::uint64_t p, unsigned k) {
  Integer modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), p, k);
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_mod(a[i][j].get_mpz_t(), m(i, j).get_mpz_t(), modulus.get_mpz_t());

  std::vector<unsigned> exps;
  const std::size_t n = std::min(m.rows(), m.cols());
  Integer unit_inv, factor, q;
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pi = 0, pj = 0;
    unsigned best = k;
    for (std::size_t i = t; i < a.size() && best > 0; ++i)
      for (std::size_t j = t; j < m.cols() && best > 0; ++j) {
        if (a[i][j] == 0) continue;
        const unsigned v = valuation(a[i][j], p);
        if (v < best) best = v, pi = i, pj = j;
      }
    if (best == k) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    if (best > 0) exps.push_back(best);

    Integer pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), p, best);
    mpz_divexact(q.get_mpz_t(), a[t][t].get_mpz_t(), pv.get_mpz_t());
    mpz_invert(unit_inv.get_mpz_t(), q.get_mpz_t(), modulus.get_mpz_t());
    for (std::size_t i = t + 1; i < a.size(); ++i) {
      if (a[i][t] == 0) continue;
      mpz_divexact(factor.get_mpz_t(), a[i][t].get_mpz_t(), pv.get_mpz_t());
      factor = factor * unit_inv;
      for (std::size_t j = t; j < m.cols(); ++j) {
        if (a[t][j] == 0) continue;
        a[i][j] -= factor * a[t][j];
        mpz_mod(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), modulus.get_mpz_t());
      }
    }
    // Column operations now touch row t only.
    for (std::size_t j = t + 1; j < m.cols(); ++j) a[t][j] = 0;
  }
  std::sort(exps.begin(), exps.end(), std::greater<>());
  return exps;
}

}  // namespace

std::vector<unsigned> presentation_exponents(const IntMatrix& relations, std::uint64_t p) {
  if (const auto bound = triangular_log_bound(relations, p)) return local_exponents(relations, p, *bound + 1);
  const SmithForm snf = smith_normal_form(relations);
  std::vector<unsigned> exps;
  for (std::size_t i = 0; i < relations.cols(); ++i) {
    if (i >= snf.diagonal.size() || snf.diagonal[i] == 0) throw Error("non-finite p-part");
    if (const unsigned v = valuation(snf.diagonal[i], p)) exps.push_back(v);
  }
  std::sort(exps.begin(), exps.end(), std::greater<>());
  return exps;
}

unsigned log_index(const FiniteAbelianPGroup& g, std::span<const Element> gens) {
  return group_from_presentation(rows_with_relations(g, gens), g.prime()).group.log_order();
}

bool in_subgroup(const FiniteAbelianPGroup& g, std::span<const Element> gens, const Element& x) {
  if (!g.contains(x)) throw Error("element is not in the ambient group");
  const IntMatrix m = rows_with_relations(g, gens);
  const SmithForm snf = smith_normal_form(m);
  // c * M = x  <=>  (c * L^-1) * D = x * R
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer w = 0;
    for (std::size_t k = 0; k < m.cols(); ++k) w += Integer(x[k]) * snf.right(k, j);
    const Integer d = j < snf.diagonal.size() ? snf.diagonal[j] : Integer(0);
    if (d == 0) {
      if (w != 0) return false;
    } else if (!mpz_divisible_p(w.get_mpz_t(), d.get_mpz_t())) {
      return false;
    }
  }
  return true;
}

Subgroup subgroup_generated(const FiniteAbelianPGroup& g, std::vector<Element> gens) {
  const unsigned total = g.log_order();
  const unsigned top = g.exponent();
  // sizes[t] = log_p |p^t H|
  std::vector<unsigned> sizes(top + 2, 0);
  for (unsigned t = 0; t <= top; ++t) {
    std::vector<Element> scaled;
    scaled.reserve(gens.size());
    const Integer pt = Integer(checked_power(g.prime(), t));
    for (const auto& x : gens) scaled.push_back(g.scale(x, pt));
    if (t == 0) scaled = gens;
    sizes[t] = total - log_index(g, scaled);
  }
  std::vector<unsigned> exps;
  for (unsigned e = 1; e <= top; ++e) {
    const unsigned at_least_e = sizes[e - 1] - sizes[e];
    const unsigned at_least_next = sizes[e] - sizes[e + 1];
    for (unsigned c = 0; c < at_least_e - at_least_next; ++c) exps.push_back(e);
  }
  return {std::move(gens), FiniteAbelianPGroup(g.prime(), std::move(exps))};
}

namespace {

unsigned valuation_of(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw Error("n must be positive");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

Subgroup power_subgroup(const FiniteAbelianPGroup& g, std::uint64_t n) {
  const unsigned v = valuation_of(n, g.prime());
  std::vector<Element> gens;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    if (g.exponents()[j] <= v) continue;
    gens.push_back(g.scale(g.generator(j), Integer(checked_power(g.prime(), v))));
  }
  return subgroup_generated(g, std::move(gens));
}

Subgroup torsion_bracket(const FiniteAbelianPGroup& g, std::uint64_t n) {
  const unsigned v = valuation_of(n, g.prime());
  std::vector<Element> gens;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    if (v == 0) break;
    const unsigned e = g.exponents()[j];
    const unsigned shift = e > v ? e - v : 0;
    gens.push_back(g.scale(g.generator(j), Integer(checked_power(g.prime(), shift))));
  }
  return subgroup_generated(g, std::move(gens));
}

FiniteAbelianPGroup quotient(const FiniteAbelianPGroup& g, std::span<const Element> h) {
  return group_from_presentation(rows_with_relations(g, h), g.prime()).group;
}

Element Homomorphism::apply(const Element& x) const {
  Element out = codomain.zero();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    out = codomain.add(out, codomain.scale(images[j], Integer(x[j])));
  }
  return out;
}

bool Homomorphism::well_defined() const {
  if (images.size() != domain.rank()) return false;
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (!codomain.contains(images[j])) return false;
    if (codomain.scale(images[j], Integer(domain.modulus(j))) != codomain.zero()) return false;
  }
  return true;
}

Subgroup image(const Homomorphism& f) { return subgroup_generated(f.codomain, f.images); }

unsigned log_kernel_order(const Homomorphism& f) {
  return f.domain.log_order() - image(f).structure.log_order();
}

std::vector<Element> kernel_generators(const Homomorphism& f) {
  const std::size_t k = f.domain.rank();
  IntMatrix m = rows_with_relations(f.codomain, f.images);
  const SmithForm snf = smith_normal_form(m);
  std::size_t rank = 0;
  for (const auto& d : snf.diagonal)
    if (d != 0) ++rank;
  std::vector<Element> out;
  std::vector<Integer> coords(k);
  for (std::size_t i = rank; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) coords[j] = snf.left(i, j);
    Element x = f.domain.reduce(coords);
    if (x != f.domain.zero()) out.push_back(std::move(x));
  }
  return out;
}

bool is_injective(const Homomorphism& f) { return log_kernel_order(f) == 0; }

bool is_surjective(const Homomorphism& f) {
  return image(f).structure.log_order() == f.codomain.log_order();
}

std::map<unsigned, std::uint64_t> decomposition_multiplicities(const FiniteAbelianPGroup& g) {
  std::map<unsigned, std::uint64_t> out;
  for (unsigned e : g.exponents()) ++out[e];
  return out;
}

}  // namespace propcalc
