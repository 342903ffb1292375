#pragma once

// The divisor sequence D_{i-1} + D_{i+1} = 4 D_i from the determinantal
// construction, its closed form over Q(sqrt3), and its two limit rays.

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "hmfan/cones.hpp"
#include "hmfan/lattice.hpp"

namespace hmfan {

// a + b*sqrt(3)
struct QuadExt {
  Rational a, b;

  QuadExt() = default;
  QuadExt(Rational x, Rational y = 0) : a(std::move(x)), b(std::move(y)) {}

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b}; }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b}; }
  friend QuadExt operator-(const QuadExt& x) { return {-x.a, -x.b}; }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    return {x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a == y.a && x.b == y.b; }

  QuadExt conj() const { return {a, -b}; }
  Rational norm() const { return a * a - 3 * b * b; }
  QuadExt inverse() const {
    Rational n = norm();
    if (n == 0) throw DegenerateInput("zero has no inverse");
    return {a / n, -b / n};
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

  bool rational() const { return b == 0; }
  double approx() const { return a.get_d() + b.get_d() * std::sqrt(3.0); }
  std::string str() const {
    if (b == 0) return a.get_str();
    return a.get_str() + (sgn(b) < 0 ? " - " : " + ") + Rational(abs(b)).get_str() + "*sqrt3";
  }
};

inline int sgn(const QuadExt& x) {
  int sa = sgn(x.a), sb = sgn(x.b);
  if (sa == sb || sb == 0) return sa;
  if (sa == 0) return sb;
  // opposite signs: compare a^2 with 3b^2
  int c = cmp(Rational(x.a * x.a), Rational(3 * x.b * x.b));
  return c == 0 ? 0 : (c > 0 ? sa : sb);
}

inline QuadExt pow(QuadExt x, long n) {
  if (n < 0) {
    x = x.inverse();
    n = -n;
  }
  QuadExt r(1);
  while (n) {
    if (n & 1) r = r * x;
    x = x * x;
    n >>= 1;
  }
  return r;
}

inline const QuadExt kSqrt3{0, 1};

using QuadExtVector = std::array<QuadExt, 4>;

inline QuadExtVector lift(const DivisorClass& d) { return {QuadExt(d[0]), QuadExt(d[1]), QuadExt(d[2]), QuadExt(d[3])}; }

inline QuadExtVector scale(const QuadExt& s, const QuadExtVector& v) {
  return {s * v[0], s * v[1], s * v[2], s * v[3]};
}
inline QuadExtVector operator+(const QuadExtVector& u, const QuadExtVector& v) {
  return {u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3]};
}

inline QuadExt pair(const CurveClass& c, const QuadExtVector& v) {
  QuadExt s;
  for (int i = 0; i < 4; ++i) s = s + QuadExt(c[i]) * v[i];
  return s;
}

inline std::string to_string(const QuadExtVector& v) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

inline DivisorClass d_sequence(const DivisorClass& d0, const DivisorClass& d1, long i) {
  DivisorClass prev = d0, cur = d1;
  if (i == 0) return d0;
  if (i > 0) {
    for (long k = 1; k < i; ++k) {
      DivisorClass nxt = Rational(4) * cur - prev;
      prev = cur, cur = nxt;
    }
    return cur;
  }
  // walk down: D_{k-1} = 4 D_k - D_{k+1}
  cur = d0, prev = d1;
  for (long k = 0; k > i; --k) {
    DivisorClass nxt = Rational(4) * cur - prev;
    prev = cur, cur = nxt;
  }
  return cur;
}

// D_i = 1/2 (D0 + (D1-2D0)/sqrt3)(2+sqrt3)^i + 1/2 (D0 - (D1-2D0)/sqrt3)(2-sqrt3)^i
inline DivisorClass d_closed_form(const DivisorClass& d0, const DivisorClass& d1, long i) {
  QuadExt inv_s3 = kSqrt3.inverse();
  QuadExt up = pow(QuadExt(2, 1), i), down = pow(QuadExt(2, -1), i);
  DivisorClass out;
  for (int k = 0; k < 4; ++k) {
    QuadExt slope = inv_s3 * QuadExt(d1[k] - 2 * d0[k]);
    QuadExt v = QuadExt(Rational(1, 2)) * ((QuadExt(d0[k]) + slope) * up + (QuadExt(d0[k]) - slope) * down);
    if (!v.rational()) throw IrrationalResidue("sqrt3 part " + v.b.get_str() + " in coordinate " + std::to_string(k));
    out[k] = v.a;
  }
  return out;
}

// D0 +- (D1 - 2D0)/sqrt3; the first is approached as i -> +inf.
inline std::pair<QuadExtVector, QuadExtVector> limit_rays(const DivisorClass& d0, const DivisorClass& d1) {
  DivisorClass slope = d1 - Rational(2) * d0;
  if (d0.is_zero()) throw DegenerateInput("D0 is zero");
  if (!slope.is_zero()) {
    // proportional seeds other than D1 = 2D0 give a one-dimensional sequence
    bool dependent = true;
    for (int i = 0; i < 4 && dependent; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (d0[i] * d1[j] != d0[j] * d1[i]) {
          dependent = false;
          break;
        }
    if (dependent) throw DegenerateInput("D0 and D1 are proportional");
  }
  QuadExtVector base = lift(d0), s = scale(kSqrt3.inverse(), lift(slope));
  return {base + s, base + scale(QuadExt(-1), s)};
}

// Exact sign test of an irrational ray against a cone: true when some facet
// (or, for tilings, some square face near the ray) is negative on it.
inline bool certified_outside(const QuadExtVector& v, const Cone& c) {
  if (c.type != ConeType::Tiling) {
    for (const auto& f : c.facets)
      if (sgn(pair(f.normal, v)) < 0) return true;
    return false;
  }
  Mat4 gi = c.frame.m.inverse();
  QuadExtVector x;
  for (int i = 0; i < 4; ++i) {
    QuadExt s;
    for (int k = 0; k < 4; ++k) s = s + QuadExt(gi(i, k)) * v[k];
    x[i] = s;
  }
  if (sgn(x[3]) < 0) return true;
  if (sgn(x[3]) == 0) return sgn(x[1]) != 0 || sgn(x[2]) != 0 || sgn(x[0]) < 0;
  double u = x[1].approx() / x[3].approx(), w = x[2].approx() / x[3].approx();
  long pu = std::lround(2 * u), pw = std::lround(2 * w);
  for (long i = pu - 3; i <= pu + 3; ++i)
    for (long j = pw - 3; j <= pw + 3; ++j) {
      Rational p(i, 2), q(j, 2);
      p.canonicalize(), q.canonicalize();
      if (square_center(p, q) && sgn(pair(square_normal(p, q), x)) < 0) return true;
    }
  return false;
}

}  // namespace hmfan
