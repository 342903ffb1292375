#include <gtest/gtest.h>

#include "hmfan/comb.hpp"

using namespace hmfan;

namespace {

const DivisorClass& D(const char* n) { return divisor(n); }

const FanStore& store_at(int depth) {
  static std::map<int, FanStore> cache;
  auto it = cache.find(depth);
  if (it == cache.end()) it = cache.emplace(depth, explore(depth)).first;
  return it->second;
}

int saturated(const FanStore& s, const GluedComplex& gc, bool require_antiprism) {
  int n = 0;
  for (const auto& r : vertex_rays(s)) {
    try {
      auto vc = vertex_configuration(to_divisor(r), s, gc);
      ++n;
      if (require_antiprism) {
        EXPECT_TRUE(vc.antiprism) << ray_key(r) << ": " << vc.describe();
        EXPECT_TRUE(vc.opposite_markings) << ray_key(r);
      }
    } catch (const StarNotSaturated&) {
    }
  }
  return n;
}

}  // namespace

TEST(Glued, CellCounts) {
  auto g3 = build_glued_complex(store_at(3));
  EXPECT_EQ(g3.cells.size(), 57u);
  EXPECT_EQ(g3.paraboloid_count(), 13);
  EXPECT_EQ(g3.cube_count(), 44);
  EXPECT_EQ(build_glued_complex(store_at(4)).cells.size(), 186u);
}

TEST(Glued, TilingAbsorbsItsPyramids) {
  auto gc = build_glued_complex(store_at(1));
  ASSERT_EQ(gc.cells.size(), 1u);
  EXPECT_EQ(gc.cells[0].kind, CellKind::Paraboloid);
  EXPECT_EQ(gc.cells[0].members.size(), 5u);
  EXPECT_EQ(gc.cells[0].marking, "V");
  EXPECT_FALSE(gc.cells[0].implied);
}

TEST(Glued, CanonicalLozengoidMeetsT0) {
  const auto& s = store_at(2);
  auto gc = build_glued_complex(s);
  std::string l0 = make_model(make_cone(ConeType::Lozengoid, Frame{})).key;
  ASSERT_TRUE(gc.cell_of.count(l0));
  int a = gc.cell_of.at("T:1,0,0,0"), b = gc.cell_of.at(l0);
  EXPECT_TRUE(gc.adjacency.count({std::min(a, b), std::max(a, b)}));
}

TEST(Glued, ImpliedBaseCells) {
  auto gc = build_glued_complex(store_at(4));
  int implied = 0;
  for (const auto& c : gc.cells) {
    implied += c.implied;
    if (c.kind == CellKind::Cube) {
      EXPECT_EQ(c.members.size(), 1u);
    }
  }
  EXPECT_GT(implied, 0);
}

TEST(Glued, EmptyStore) { EXPECT_THROW(build_glued_complex(FanStore{}), UnsaturatedStore); }

TEST(Vertex, AntiprismAtH) {
  const auto& s = store_at(4);
  auto gc = build_glued_complex(s);
  auto vc = vertex_configuration(D("H"), s, gc);
  EXPECT_EQ(vc.raw_cones, 14);
  EXPECT_EQ(vc.vertices.size(), 8u);
  EXPECT_EQ(vc.squares, 2);
  EXPECT_EQ(vc.triangles, 8);
  EXPECT_EQ(vc.paraboloid_cells, 2);
  EXPECT_EQ(vc.cube_cells, 8);
  EXPECT_TRUE(vc.antiprism);
  EXPECT_TRUE(vc.opposite_markings);
}

TEST(Vertex, AntiprismAtDelta1) {
  const auto& s = store_at(5);
  auto gc = build_glued_complex(s);
  auto vc = vertex_configuration(D("Delta1"), s, gc);
  EXPECT_TRUE(vc.antiprism) << vc.describe();
  EXPECT_TRUE(vc.opposite_markings);
}

TEST(Vertex, SaturatedCounts) {
  EXPECT_EQ(saturated(store_at(3), build_glued_complex(store_at(3)), true), 0);
  EXPECT_EQ(saturated(store_at(4), build_glued_complex(store_at(4)), true), 5);
  EXPECT_EQ(saturated(store_at(5), build_glued_complex(store_at(5)), true), 13);
}

TEST(Vertex, NegativeControl) {
  // a square antiprism needs eight vertices; the bare pyramid figure has five
  std::vector<IntRay> five(5);
  EXPECT_FALSE(detail::is_square_antiprism(five, {}));
}

TEST(Cubes, EveryLozengoidIsACube) {
  for (const auto& [k, m] : store_at(4).models())
    if (m.type() == ConeType::Lozengoid) {
      EXPECT_TRUE(is_cube(m)) << k;
    }
  EXPECT_THROW(cube_faces(canonical_model()), NotAFace);
}

TEST(Glued, NeighboursDropFoldAndBaseEdges) {
  MarkedModel p = make_model(make_cone(ConeType::Pyramid, Frame{}));
  auto g = glued_neighbors(p, D("H"));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], canonical_ray(D("Delta1")));
  EXPECT_TRUE(glued_neighbors(canonical_model(), D("H")).empty());
}

TEST(Coxeter, Matrix) {
  auto c = coxeter_matrix();
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(c.m[i][i], 1);
    for (int j = 0; j < 4; ++j) EXPECT_EQ(c.m[i][j], c.m[j][i]);
  }
  EXPECT_EQ(c.m[0][1], 8);
  EXPECT_EQ(c.m[1][2], 8);
  EXPECT_EQ(c.m[0][2], 4);
  EXPECT_EQ(c.m[0][3], 4);
}

TEST(Coxeter, Index) {
  auto ci = coxeter_index();
  EXPECT_EQ(ci.stab_all, 8);
  EXPECT_EQ(ci.index(), 8);
}

TEST(Export, JsonAndDot) {
  auto gc = build_glued_complex(store_at(2));
  auto j = complex_json(gc);
  EXPECT_EQ(j["cells"].size(), gc.cells.size());
  EXPECT_EQ(j["adjacency"].size(), gc.adjacency.size());
  std::string dot = complex_dot(gc);
  EXPECT_EQ(dot.rfind("graph glued {", 0), 0u);
  EXPECT_NE(dot.find("paraboloid V"), std::string::npos);
}
