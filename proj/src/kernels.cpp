#include "propcalc/kernels.hpp"

#include "propcalc/error.hpp"

namespace propcalc::kernels {

namespace {

// x -> f(x) in codomain coordinates, written into `out`.
void apply_into(const Homomorphism& f, const Element& x, Element& out) {
  const auto& cod = f.codomain;
  out.assign(cod.rank(), 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    const Element& img = f.images[j];
    for (std::size_t k = 0; k < out.size(); ++k) {
      const auto m = static_cast<__int128>(cod.modulus(k));
      out[k] = static_cast<std::int64_t>((out[k] + static_cast<__int128>(x[j]) * img[k]) % m);
    }
  }
}

std::vector<std::int64_t> dual_weights(const FiniteAbelianPGroup& g) {
  std::vector<std::int64_t> w(g.rank());
  for (std::size_t j = 0; j < g.rank(); ++j)
    w[j] = checked_power(g.prime(), g.exponent() - g.exponents()[j]);
  return w;
}

std::int64_t pairing_with(const std::vector<std::int64_t>& weights, std::int64_t target,
                          std::span<const std::int64_t> c, std::span<const std::int64_t> s) {
  __int128 acc = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    acc += static_cast<__int128>(c[j]) * s[j] % target * weights[j];
    acc %= target;
  }
  return static_cast<std::int64_t>(acc);
}

bool kills_all(const std::vector<std::int64_t>& weights, std::int64_t target, const Element& c,
               std::span<const Element> gens) {
  for (const auto& s : gens)
    if (pairing_with(weights, target, c, s) != 0) return false;
  return true;
}

std::uint64_t mismatches_for(const FiniteAbelianPGroup& g, const std::vector<std::int64_t>& w,
                             std::int64_t target, std::uint64_t n, std::uint64_t x_index,
                             std::span<const std::uint64_t> images, Element& x, Element& d,
                             Element& chi) {
  g.element_at(x_index, x);
  g.element_at(images[x_index], d);
  std::uint64_t bad = 0;
  for (std::uint64_t c = 0; c < n; ++c) {
    g.element_at(c, chi);
    // chi(x) versus psi_d(chi); G* and G** share G's coordinates.
    if (pairing_with(w, target, chi, x) != pairing_with(w, target, d, chi)) ++bad;
  }
  return bad;
}

}  // namespace

std::int64_t pairing(const FiniteAbelianPGroup& g, std::span<const std::int64_t> c,
                     std::span<const std::int64_t> s) {
  return pairing_with(dual_weights(g), checked_power(g.prime(), g.exponent()), c, s);
}

namespace serial {

std::vector<std::uint64_t> evaluate(const Homomorphism& f) {
  const std::uint64_t n = f.domain.order();
  f.codomain.order(std::numeric_limits<std::uint64_t>::max());
  std::vector<std::uint64_t> out(n);
  Element x, y;
  for (std::uint64_t i = 0; i < n; ++i) {
    f.domain.element_at(i, x);
    apply_into(f, x, y);
    out[i] = f.codomain.index_of(y);
  }
  return out;
}

std::vector<std::uint8_t> annihilator_mask(const FiniteAbelianPGroup& g,
                                           std::span<const Element> gens) {
  const std::uint64_t n = g.order();
  const auto w = dual_weights(g);
  const auto target = checked_power(g.prime(), g.exponent());
  std::vector<std::uint8_t> mask(n);
  Element c;
  for (std::uint64_t i = 0; i < n; ++i) {
    g.element_at(i, c);
    mask[i] = kills_all(w, target, c, gens) ? 1 : 0;
  }
  return mask;
}

std::vector<unsigned> element_orders(const FiniteAbelianPGroup& g) {
  const std::uint64_t n = g.order();
  std::vector<unsigned> out(n);
  Element x;
  for (std::uint64_t i = 0; i < n; ++i) {
    g.element_at(i, x);
    out[i] = g.order_log(x);
  }
  return out;
}

std::uint64_t double_dual_mismatches(const FiniteAbelianPGroup& g,
                                     std::span<const std::uint64_t> images) {
  const std::uint64_t n = g.order();
  if (images.size() != n) throw Error("image table size mismatch");
  const auto w = dual_weights(g);
  const auto target = checked_power(g.prime(), g.exponent());
  std::uint64_t bad = 0;
  Element x, d, chi;
  for (std::uint64_t i = 0; i < n; ++i) bad += mismatches_for(g, w, target, n, i, images, x, d, chi);
  return bad;
}

}  // namespace serial

namespace parallel {

std::vector<std::uint64_t> evaluate(const Homomorphism& f) {
  const std::uint64_t n = f.domain.order();
  f.codomain.order(std::numeric_limits<std::uint64_t>::max());
  std::vector<std::uint64_t> out(n);
#pragma omp parallel
  {
    Element x, y;
#pragma omp for schedule(static)
    for (std::uint64_t i = 0; i < n; ++i) {
      f.domain.element_at(i, x);
      apply_into(f, x, y);
      out[i] = f.codomain.index_of(y);
    }
  }
  return out;
}

std::vector<std::uint8_t> annihilator_mask(const FiniteAbelianPGroup& g,
                                           std::span<const Element> gens) {
  const std::uint64_t n = g.order();
  const auto w = dual_weights(g);
  const auto target = checked_power(g.prime(), g.exponent());
  std::vector<std::uint8_t> mask(n);
#pragma omp parallel
  {
    Element c;
#pragma omp for schedule(static)
    for (std::uint64_t i = 0; i < n; ++i) {
      g.element_at(i, c);
      mask[i] = kills_all(w, target, c, gens) ? 1 : 0;
    }
  }
  return mask;
}

std::vector<unsigned> element_orders(const FiniteAbelianPGroup& g) {
  const std::uint64_t n = g.order();
  std::vector<unsigned> out(n);
#pragma omp parallel
  {
    Element x;
#pragma omp for schedule(static)
    for (std::uint64_t i = 0; i < n; ++i) {
      g.element_at(i, x);
      out[i] = g.order_log(x);
    }
  }
  return out;
}

std::uint64_t double_dual_mismatches(const FiniteAbelianPGroup& g,
                                     std::span<const std::uint64_t> images) {
  const std::uint64_t n = g.order();
  if (images.size() != n) throw Error("image table size mismatch");
  const auto w = dual_weights(g);
  const auto target = checked_power(g.prime(), g.exponent());
  std::uint64_t bad = 0;
#pragma omp parallel reduction(+ : bad)
  {
    Element x, d, chi;
#pragma omp for schedule(dynamic, 16)
    for (std::uint64_t i = 0; i < n; ++i)
      bad += mismatches_for(g, w, target, n, i, images, x, d, chi);
  }
  return bad;
}

}  // namespace parallel

}  // namespace propcalc::kernels
