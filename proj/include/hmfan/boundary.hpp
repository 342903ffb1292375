#pragma once

// Boundary rays of the movable cone: apex (fibration) rays of tiling models,
// the quadric invariant -5Q/Gamma^2 and its orbits.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hmfan/fan.hpp"

namespace hmfan {

struct BoundaryRay {
  DivisorClass ray;
  std::string source;  // key of the tiling whose apex this is, if known
  std::optional<Rational> quadric;
};

inline std::optional<Rational> quadric_invariant(const DivisorClass& d) {
  Rational g = gamma_of(d);
  if (g == 0) return std::nullopt;
  return Rational(-5 * q_form(d, d) / (g * g));
}

inline DivisorClass fibration_ray(const MarkedModel& m) {
  if (m.type() != ConeType::Tiling) throw NotAFace("fibration rays belong to tiling models");
  return to_divisor(canonical_ray(m.cone.apex()));
}

// The tiling with frame g is reached from the tiling with frame g*phi by
// flopping the images of Lambda1..Lambda4 and then Lambda'. The new apex is
// the class pairing -1 with all five.
struct FlopCheck {
  Frame predecessor;
  DivisorClass predecessor_apex;
  std::vector<CurveClass> flopped;
  DivisorClass solved;
  bool agrees = false;
};

inline FlopCheck forward_flop_check(const Frame& g) {
  FlopCheck c;
  c.predecessor = g * phi_frame();
  c.predecessor_apex = to_divisor(canonical_ray(c.predecessor(divisor("A"))));
  for (const char* n : {"Lambda1", "Lambda2", "Lambda3", "Lambda4", "LambdaP"}) c.flopped.push_back(c.predecessor(curve(n)));
  c.solved = solve_pairings(c.flopped, std::vector<Rational>(c.flopped.size(), Rational(-1)));
  c.agrees = same_ray(c.solved, g(divisor("A")));
  return c;
}

inline FlopCheck forward_flop_check(const MarkedModel& m) {
  if (m.type() != ConeType::Tiling) throw NotAFace("flop check applies to tilings");
  return forward_flop_check(m.cone.frame);
}

inline BoundaryRay boundary_ray(const MarkedModel& m) {
  DivisorClass r = fibration_ray(m);
  return {r, m.key, quadric_invariant(r)};
}

// Lattice translations ordered by (x^2+y^2, x, y), the identity first.
inline std::vector<FanSymmetry> translation_words(std::size_t n) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (long r = 1;; ++r) {
    pts.clear();
    for (long i = -2 * r; i <= 2 * r; ++i)
      for (long j = -2 * r; j <= 2 * r; ++j) {
        Rational x(i, 2), y(j, 2);
        x.canonicalize(), y.canonicalize();
        if (lattice_point(x, y) && x * x + y * y <= r * r) pts.emplace_back(x, y);
      }
    if (pts.size() >= n) break;
  }
  auto norm = [](const auto& p) { return Rational(p.first * p.first + p.second * p.second); };
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    if (norm(a) != norm(b)) return norm(a) < norm(b);
    return a < b;
  });
  pts.resize(n);
  std::vector<FanSymmetry> out;
  for (const auto& [x, y] : pts) out.push_back(FanSymmetry::translation(x, y));
  return out;
}

// Images of the seed, canonicalized and deduplicated in first-seen order.
inline std::vector<BoundaryRay> boundary_orbit(const DivisorClass& seed, const std::vector<FanSymmetry>& syms) {
  std::vector<BoundaryRay> out;
  std::set<IntRay> seen;
  for (const auto& g : syms) {
    IntRay r = canonical_ray(act_on_divisor(g, seed));
    if (!seen.insert(r).second) continue;
    DivisorClass d = to_divisor(r);
    out.push_back({d, "", quadric_invariant(d)});
  }
  return out;
}

// --- slices and projections -----------------------------------------------

// Gamma + Lambda1 + Lambda3, equal to 2 on A.
inline CurveClass default_slice() { return curve("Gamma") + curve("Lambda1") + curve("Lambda3"); }

inline DivisorClass slice_point(const DivisorClass& d, const CurveClass& slice = default_slice()) {
  Rational s = pair(slice, d);
  if (s == 0) throw SliceDegenerate("ray pairs zero with the slice functional");
  return (Rational(2) / s) * d;
}

enum class Projection { Plane23, Residual };

inline const char* to_string(Projection p) { return p == Projection::Plane23 ? "d2,d3" : "d2,d1-d2^2-d3^2"; }

// Planar coordinates of a slice point, centred so that A goes to the origin.
inline std::pair<Rational, Rational> project(const DivisorClass& p, Projection proj) {
  auto raw = [proj](const DivisorClass& x) -> std::pair<Rational, Rational> {
    if (proj == Projection::Plane23) return {x[1], x[2]};
    return {x[1], x[0] - x[1] * x[1] - x[2] * x[2]};
  };
  auto a = raw(slice_point(divisor("A")));
  auto b = raw(p);
  return {b.first - a.first, b.second - a.second};
}

struct BoundaryPoint {
  DivisorClass ray, slice;
  std::pair<Rational, Rational> xy;
};

inline std::vector<BoundaryPoint> emit_boundary_points(const CurveClass& slice, Projection proj,
                                                       const std::vector<DivisorClass>& rays) {
  std::vector<BoundaryPoint> out;
  for (const auto& r : rays) {
    DivisorClass s = slice_point(r, slice);
    out.push_back({r, s, project(s, proj)});
  }
  return out;
}

inline Rational slice_distance2(const DivisorClass& a, const DivisorClass& b) {
  Rational s = 0;
  for (int i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// --- non-C2 certificate ---------------------------------------------------

struct QuadricSequence {
  DivisorClass seed;
  Rational coefficient;
  std::vector<DivisorClass> rays, slice_points;
  std::vector<Rational> distances;  // squared, to A's slice point
  bool decreasing = true;
  bool on_quadric = true;
};

struct NonC2Report {
  std::vector<QuadricSequence> sequences;
  bool distinct_coefficients = false;
};

// T(k/2,k/2) seed for k = 1..n: both sequences run into A along the slice.
inline QuadricSequence quadric_sequence(const DivisorClass& seed, int n) {
  QuadricSequence s;
  s.seed = seed;
  s.coefficient = *quadric_invariant(seed);
  DivisorClass a = slice_point(divisor("A"));
  for (int k = 1; k <= n; ++k) {
    DivisorClass r = act_on_divisor(FanSymmetry::translation(Rational(k, 2), Rational(k, 2)), seed);
    DivisorClass p = slice_point(r);
    s.rays.push_back(r);
    s.slice_points.push_back(p);
    s.distances.push_back(slice_distance2(p, a));
    Rational g = gamma_of(r);
    if (5 * q_form(r, r) + s.coefficient * g * g != 0) s.on_quadric = false;
    if (k > 1 && !(s.distances[k - 1] < s.distances[k - 2])) s.decreasing = false;
  }
  return s;
}

inline NonC2Report non_c2_certificate(int n) {
  if (n < 2) throw DegenerateInput("need at least two points per sequence");
  NonC2Report r;
  r.sequences.push_back(quadric_sequence(divisor("AP"), n));
  r.sequences.push_back(quadric_sequence(divisor("APP"), n));
  r.distinct_coefficients = r.sequences[0].coefficient != r.sequences[1].coefficient;
  return r;
}

// The forward process repeated from the A' tiling across its rho-rotated
// face: frame phi^-1 rho phi^-1. Returns the new fibration ray.
struct IteratedStep {
  Frame frame;
  DivisorClass ray;
  std::optional<Rational> quadric;
  FlopCheck check;
};

inline IteratedStep iterated_process() {
  IteratedStep s;
  s.frame = frame_word("FrF");
  s.ray = to_divisor(canonical_ray(s.frame(divisor("A"))));
  s.quadric = quadric_invariant(s.ray);
  s.check = forward_flop_check(s.frame);
  return s;
}

// Rays for the scatter plots: n/2 translates of each seed, the nearest first.
inline std::vector<BoundaryRay> dotplot_rays(std::size_t n) {
  std::vector<BoundaryRay> out;
  auto words = translation_words((n + 1) / 2);
  for (const char* seed : {"AP", "APP"}) {
    auto orb = boundary_orbit(divisor(seed), words);
    for (auto& b : orb) {
      if (out.size() == n) break;
      b.source = seed;
      out.push_back(b);
    }
  }
  return out;
}

}  // namespace hmfan
