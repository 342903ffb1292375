#pragma once

#include "hmfan/lattice.hpp"
#include "hmfan/matrix.hpp"

namespace hmfan {

// Q(D,E) = d1e4 + d4e1 - 2d2e2 - 2d3e3, invariant under the automorphisms.
inline Rational q_form(const DivisorClass& d, const DivisorClass& e) {
  return d[0] * e[3] + d[3] * e[0] - 2 * d[1] * e[1] - 2 * d[2] * e[2];
}

inline Mat4 q_matrix() {
  Mat4 m;
  m(0, 3) = m(3, 0) = 1;
  m(1, 1) = m(2, 2) = -2;
  return m;
}

inline Rational gamma_of(const DivisorClass& d) { return d[3]; }

inline Rational cubic(const DivisorClass& d) {
  Rational g = gamma_of(d);
  return 5 * g * (g * g + 3 * q_form(d, d));
}

// Polarization of cubic(): symmetric, and trilinear(d,d,d) == cubic(d).
inline Rational trilinear(const DivisorClass& d, const DivisorClass& e, const DivisorClass& f) {
  Rational gd = gamma_of(d), ge = gamma_of(e), gf = gamma_of(f);
  return 5 * gd * ge * gf + 5 * (gd * q_form(e, f) + ge * q_form(d, f) + gf * q_form(d, e));
}

inline Rational q_form_in_frame(const DivisorClass& d, const DivisorClass& e, const Mat4& g) {
  if (g.det() == 0) throw SingularFrame("frame map is not invertible");
  return q_form(g * d, g * e);
}

}  // namespace hmfan
