#include <gtest/gtest.h>

#include <set>

#include "hmfan/boundary.hpp"
#include "support.hpp"

using namespace hmfan;

namespace {

const DivisorClass& D(const char* n) { return divisor(n); }

const FanStore& depth5() {
  static const FanStore s = explore(5);
  return s;
}

}  // namespace

TEST(Quadric, Invariants) {
  EXPECT_EQ(*quadric_invariant(D("AP")), 2);
  EXPECT_EQ(*quadric_invariant(D("APP")), Rational(7, 2));
  EXPECT_FALSE(quadric_invariant(D("A")));
  EXPECT_EQ(*quadric_invariant(D("H")), 0);
  // scale invariant
  EXPECT_EQ(*quadric_invariant(Rational(3) * D("APP")), Rational(7, 2));
}

TEST(Quadric, InvolutionRecoversA) {
  EXPECT_EQ(Rational(5) * D("H") - D("AP"), D("A"));
  EXPECT_EQ(Rational(5) * D("Delta1") - D("APP"), D("A"));
}

TEST(BoundaryRays, TilingsOfAPrimeAndADoublePrime) {
  const auto* ap = depth5().find("T:-1,0,0,5");
  const auto* app = depth5().find("T:-1,-5,0,10");
  ASSERT_TRUE(ap);
  ASSERT_TRUE(app);
  EXPECT_EQ(fibration_ray(*ap), D("AP"));
  EXPECT_EQ(fibration_ray(*app), D("APP"));
  EXPECT_EQ(*boundary_ray(*ap).quadric, 2);
  EXPECT_EQ(*boundary_ray(*app).quadric, Rational(7, 2));
  EXPECT_TRUE(forward_flop_check(*ap).agrees);
  EXPECT_TRUE(forward_flop_check(*app).agrees);
  EXPECT_THROW(fibration_ray(make_model(make_cone(ConeType::Pyramid, Frame{}))), NotAFace);
}

TEST(BoundaryRays, FlopCheckSolvesMinusOne) {
  FlopCheck c = forward_flop_check(*depth5().find("T:-1,0,0,5"));
  ASSERT_EQ(c.flopped.size(), 5u);
  for (const auto& curve : c.flopped) EXPECT_EQ(pair(curve, c.solved), -1);
  EXPECT_TRUE(same_ray(c.solved, D("AP")));
}

TEST(BoundaryRays, EveryTilingPassesTheFlopCheck) {
  for (const auto& [k, m] : depth5().models()) {
    if (m.type() != ConeType::Tiling) continue;
    EXPECT_TRUE(forward_flop_check(m).agrees) << k;
    auto b = boundary_ray(m);
    EXPECT_EQ(b.source, k);
    // the apex pairs positively with the faces of its own tiling
    for (const auto& w : walls(m)) EXPECT_GT(sgn(pair(w.normal, b.ray)), 0) << k;
  }
}

TEST(BoundaryRays, QuadricConstantOnOrbits) {
  auto words = translation_words(40);
  ASSERT_EQ(words.size(), 40u);
  for (const char* seed : {"AP", "APP"}) {
    auto orb = boundary_orbit(D(seed), words);
    EXPECT_EQ(orb.size(), 40u);
    std::set<IntRay> distinct;
    for (const auto& b : orb) {
      EXPECT_EQ(*b.quadric, *quadric_invariant(D(seed)));
      distinct.insert(canonical_ray(b.ray));
    }
    EXPECT_EQ(distinct.size(), orb.size());
  }
  auto ao = boundary_orbit(D("A"), words);
  EXPECT_EQ(ao.size(), 1u);
}

TEST(BoundaryRays, TranslationWordsSortedByNorm) {
  auto words = translation_words(25);
  Rational prev = -1;
  for (const auto& w : words) {
    auto t = w.as_translation();
    ASSERT_TRUE(t);
    Rational n = t->x * t->x + t->y * t->y;
    EXPECT_GE(n, prev);
    prev = n;
  }
}

TEST(Slices, Points) {
  EXPECT_EQ(slice_point(D("A")), D("A"));
  EXPECT_EQ(pair(default_slice(), slice_point(D("APP"))), 2);
  EXPECT_THROW(slice_point(DivisorClass(1, 0, 0, -2)), SliceDegenerate);
  auto pts = emit_boundary_points(default_slice(), Projection::Plane23, {D("A"), D("AP")});
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].xy.first, 0);
  EXPECT_EQ(pts[0].xy.second, 0);
  EXPECT_EQ(pts[1].slice, Rational(2, 3) * D("AP"));
  auto res = emit_boundary_points(default_slice(), Projection::Residual, {D("AP")});
  EXPECT_EQ(res[0].xy.first, 0);
  EXPECT_EQ(res[0].xy.second, Rational(-2, 3) - 1);
}

TEST(NonC2, Certificate) {
  NonC2Report r = non_c2_certificate(6);
  ASSERT_EQ(r.sequences.size(), 2u);
  EXPECT_TRUE(r.distinct_coefficients);
  EXPECT_EQ(r.sequences[0].coefficient, 2);
  EXPECT_EQ(r.sequences[1].coefficient, Rational(7, 2));
  for (const auto& s : r.sequences) {
    EXPECT_TRUE(s.decreasing);
    EXPECT_TRUE(s.on_quadric);
    EXPECT_EQ(s.rays.size(), 6u);
  }
  EXPECT_EQ(r.sequences[0].distances[0], Rational(175, 64));
  EXPECT_EQ(r.sequences[0].distances[1], Rational(325, 529));
  EXPECT_EQ(r.sequences[1].distances[0], Rational(75, 8));
  EXPECT_EQ(r.sequences[1].distances[1], Rational(125, 98));
  EXPECT_THROW(non_c2_certificate(1), DegenerateInput);
}

TEST(NonC2, IteratedProcess) {
  IteratedStep s = iterated_process();
  EXPECT_EQ(s.ray, DivisorClass(-3, -5, 5, 20));
  ASSERT_TRUE(s.quadric);
  EXPECT_EQ(*s.quadric, Rational(11, 4));
  EXPECT_TRUE(s.check.agrees);
}

TEST(Dotplot, Rays) {
  auto rays = dotplot_rays(200);
  ASSERT_EQ(rays.size(), 200u);
  std::set<IntRay> distinct;
  int ap = 0;
  for (const auto& b : rays) {
    distinct.insert(canonical_ray(b.ray));
    ap += b.source == "AP";
    Rational g = gamma_of(b.ray);
    EXPECT_EQ(5 * q_form(b.ray, b.ray) + *b.quadric * g * g, 0);
  }
  EXPECT_EQ(distinct.size(), 200u);
  EXPECT_EQ(ap, 100);
}
