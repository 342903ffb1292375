#include <gtest/gtest.h>

#include "hmfan/symmetry.hpp"
#include "support.hpp"

using namespace hmfan;

namespace {

const DivisorClass& D(const char* n) { return divisor(n); }

FanSymmetry T(Rational x, Rational y) { return FanSymmetry::translation(x, y); }

FanSymmetry random_symmetry(std::mt19937& rng) {
  auto [x, y] = gen::random_lattice_point(rng, 3);
  FanSymmetry t = T(x, y);
  return rng() % 2 ? compose(FanSymmetry::iota(), t) : t;
}

}  // namespace

TEST(Translation, Examples) {
  FanSymmetry t = T(Rational(1, 2), Rational(1, 2));
  EXPECT_EQ(act_on_divisor(t, D("H")), DivisorClass(Rational(1, 2), Rational(1, 2), Rational(1, 2), 1));
  EXPECT_EQ(act_on_divisor(t, D("A")), D("A"));
  EXPECT_EQ(act_on_divisor(T(1, 0), D("H")), DivisorClass(1, 1, 0, 1));
  EXPECT_EQ(act_on_divisor(T(1, 0), D("Delta3")), DivisorClass(4, 3, 0, 2));
}

TEST(Translation, LatticeViolation) {
  EXPECT_THROW(T(Rational(1, 2), 0), LatticeViolation);
  EXPECT_THROW(T(Rational(1, 3), Rational(1, 3)), LatticeViolation);
  EXPECT_NO_THROW(T(Rational(3, 2), Rational(-1, 2)));
  EXPECT_NO_THROW(T(1, 1));
}

TEST(Iota, Examples) {
  FanSymmetry i = FanSymmetry::iota();
  EXPECT_EQ(act_on_divisor(i, D("Delta1")), D("Delta3"));
  EXPECT_EQ(act_on_divisor(i, D("Delta2")), D("Delta4"));
  EXPECT_EQ(act_on_divisor(i, D("H")), D("H"));
  EXPECT_EQ(act_on_curve(i, curve("Lambda1")), curve("Lambda3"));
}

TEST(Compose, InverseAndProvenance) {
  FanSymmetry t = T(Rational(1, 2), Rational(-1, 2));
  EXPECT_EQ(compose(t, inverse(t)).matrix(), Mat4::identity());
  auto tr = compose(T(1, 0), T(0, 1)).as_translation();
  ASSERT_TRUE(tr);
  EXPECT_EQ(tr->x, 1);
  EXPECT_EQ(tr->y, 1);
  EXPECT_EQ(t.word(), "T(1/2,-1/2)");
  EXPECT_EQ(FanSymmetry::iota().word(), "i");
  EXPECT_FALSE(FanSymmetry::iota().as_translation());
}

TEST(Symmetry, ContragredientPreservesPairing) {
  std::mt19937 rng(11);
  for (int k = 0; k < 50; ++k) {
    FanSymmetry g = random_symmetry(rng);
    auto d = gen::random_divisor(rng);
    for (const auto& [name, c] : registry().curves())
      EXPECT_EQ(pair(act_on_curve(g, c), act_on_divisor(g, d)), pair(c, d)) << name;
  }
}

TEST(Symmetry, EquivarianceOfForms) {
  std::mt19937 rng(12);
  for (int k = 0; k < 50; ++k) {
    FanSymmetry g = random_symmetry(rng);
    auto a = gen::random_divisor(rng), b = gen::random_divisor(rng), c = gen::random_divisor(rng);
    EXPECT_EQ(trilinear(g.matrix() * a, g.matrix() * b, g.matrix() * c), trilinear(a, b, c));
  }
}

TEST(Symmetry, GroupLawOnRandomPairs) {
  std::mt19937 rng(13);
  for (int k = 0; k < 50; ++k) {
    auto [x1, y1] = gen::random_lattice_point(rng, 3);
    auto [x2, y2] = gen::random_lattice_point(rng, 3);
    EXPECT_EQ(compose(T(x1, y1), T(x2, y2)).matrix(), T(x1 + x2, y1 + y2).matrix());
    FanSymmetry g = random_symmetry(rng), h = random_symmetry(rng);
    EXPECT_EQ(compose(g, h).matrix().inverse(), compose(inverse(h), inverse(g)).matrix());
  }
}

TEST(Symmetry, IotaConjugatesTranslations) {
  std::mt19937 rng(14);
  FanSymmetry i = FanSymmetry::iota();
  for (int k = 0; k < 30; ++k) {
    auto [x, y] = gen::random_lattice_point(rng);
    EXPECT_EQ(compose(compose(i, T(x, y)), i).matrix(), T(-x, -y).matrix());
  }
}

TEST(SymLabel, DihedralRelations) {
  SymLabel e, r{1, 0, 0}, d{0, 1, 0}, f{0, 0, 1};
  EXPECT_EQ(f * r * f.inverse(), d);
  EXPECT_EQ(f * f, e);
  EXPECT_EQ(r * r, e);
  EXPECT_EQ(d * d, e);
  std::vector<SymLabel> all;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) all.push_back({a, b, c});
  for (const auto& x : all) {
    EXPECT_EQ(x * x.inverse(), e);
    EXPECT_EQ(SymLabel::parse(x.str()), x);
    for (const auto& y : all)
      for (const auto& z : all) EXPECT_EQ((x * y) * z, x * (y * z));
  }
  EXPECT_THROW(SymLabel::parse("rx"), ParseError);
}

TEST(Frames, LetterLabels) {
  EXPECT_EQ(frame_letter('a').label, SymLabel{});
  EXPECT_EQ(frame_letter('i').label, SymLabel{});
  EXPECT_EQ(frame_letter('r').label, (SymLabel{1, 0, 0}));
  EXPECT_EQ(frame_letter('d').label, (SymLabel{0, 1, 0}));
  EXPECT_EQ(frame_letter('f').label, (SymLabel{0, 0, 1}));
  EXPECT_EQ(frame_letter('F').label, (SymLabel{0, 0, 1}));
  EXPECT_EQ(frame_word("FrF").label.str(), "d");
  EXPECT_THROW(frame_letter('z'), ParseError);
}

TEST(Frames, Phi) {
  Frame f = phi_frame();
  EXPECT_EQ(f(D("H")), D("Delta1"));
  EXPECT_EQ(f(D("A")), D("APP"));
  EXPECT_EQ(f(D("Nabla1")), D("HP"));
  EXPECT_EQ(f(D("Nabla2")), D("NablaP2"));
  EXPECT_EQ((f * frame_letter('F')).m, Mat4::identity());
  // f r f^-1 acts as d on matrices as well as on labels
  Frame conj = f * rho_frame() * f.inverse();
  EXPECT_EQ(conj.label, delta_frame().label);
}

TEST(Frames, RhoDeltaFixH) {
  EXPECT_EQ(rho_frame()(D("H")), D("H"));
  EXPECT_EQ(delta_frame()(D("H")), D("H"));
  EXPECT_EQ(delta_frame()(D("Delta1")), D("Delta2"));
}

TEST(Json, SymmetryRoundTrip) {
  FanSymmetry t = T(Rational(-1, 2), Rational(1, 2));
  auto j = symmetry_json(t);
  EXPECT_EQ(j["provenance"], "T(-1/2,1/2)");
  EXPECT_EQ(matrix_from_json(j["matrix"]), t.matrix());
}
