#include "propcalc/shift_maps.hpp"

#include "propcalc/error.hpp"

namespace propcalc {

namespace {

// Coordinate of the C_{p^i} factor in truncated_cartesian(p, n).
std::size_t coordinate(unsigned n, unsigned i) { return n - i; }

}  // namespace

Homomorphism phi_map(std::uint64_t p, unsigned i, unsigned j) {
  if (i == 0 || j == 0) throw Error("phi needs positive exponents");
  Homomorphism f{FiniteAbelianPGroup(p, {i}), FiniteAbelianPGroup(p, {j}), {}};
  f.images.push_back(Element{j <= i ? 1 : 0});
  return f;
}

FiniteAbelianPGroup truncated_cartesian(std::uint64_t p, unsigned n) {
  std::vector<unsigned> exps;
  for (unsigned i = n; i >= 1; --i) exps.push_back(i);
  return FiniteAbelianPGroup(p, std::move(exps));
}

Homomorphism theta_truncated(std::uint64_t p, unsigned n) {
  if (n == 0) throw Error("theta needs n >= 1");
  Homomorphism f{truncated_cartesian(p, n + 1), truncated_cartesian(p, n), {}};
  for (std::size_t g = 0; g < f.domain.rank(); ++g) {
    const unsigned i = n + 1 - static_cast<unsigned>(g);
    std::vector<Integer> image(f.codomain.rank());
    if (i <= n) image[coordinate(n, i)] += 1;
    if (i >= 2) image[coordinate(n, i - 1)] -= 1;
    f.images.push_back(f.codomain.reduce(image));
  }
  return f;
}

Element diagonal_eta(std::uint64_t p, unsigned n) {
  return Element(truncated_cartesian(p, n).rank(), 1);
}

}  // namespace propcalc
