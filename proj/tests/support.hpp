#pragma once

// Hand-rolled generators for the property tests.

#include <random>
#include <utility>

#include "hmfan/fan.hpp"

namespace hmfan::gen {

inline Rational random_rational(std::mt19937& rng, int lo = -8, int hi = 8, int max_den = 5) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline DivisorClass random_divisor(std::mt19937& rng, int lo = -8, int hi = 8) {
  return DivisorClass(random_rational(rng, lo, hi), random_rational(rng, lo, hi), random_rational(rng, lo, hi),
                      random_rational(rng, lo, hi));
}

// (x, y) with 2x, 2y, x-y integral
inline std::pair<Rational, Rational> random_lattice_point(std::mt19937& rng, int bound = 6) {
  std::uniform_int_distribution<int> u(-bound, bound), parity(0, 1);
  int h = parity(rng);  // both integers or both half-odd
  Rational x(2 * u(rng) + h, 2), y(2 * u(rng) + h, 2);
  x.canonicalize(), y.canonicalize();
  return {x, y};
}

// Positive combination of a cone's generators; tilings use the apex and the
// four vertices around the origin of their frame.
inline DivisorClass random_point_in(const Cone& c, std::mt19937& rng) {
  std::uniform_int_distribution<int> w(1, 7);
  DivisorClass p;
  if (c.type == ConeType::Tiling) {
    p += Rational(w(rng)) * c.apex();
    Rational h(1, 2);
    for (auto [x, y] : std::vector<std::pair<Rational, Rational>>{{0, 0}, {h, h}, {h, -h}, {-h, h}, {-h, -h}})
      p += Rational(w(rng)) * c.vertex(x, y);
    return p;
  }
  for (const auto& r : c.rays) p += Rational(w(rng)) * r;
  return p;
}

}  // namespace hmfan::gen
