#pragma once

// The glued complex: pyramids absorbed into the tiling over their base,
// lozengoids flattened to cubes. Its vertex figures and the Coxeter data.

#include <array>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hmfan/fan.hpp"

namespace hmfan {

enum class CellKind { Paraboloid, Cube };

inline const char* to_string(CellKind k) { return k == CellKind::Paraboloid ? "paraboloid" : "cube"; }

struct Cell {
  CellKind kind = CellKind::Paraboloid;
  std::string key;                   // tiling key, or the lozengoid's own key
  std::vector<std::string> members;  // stored models merged into this cell
  std::string marking;               // paraboloid cells only
  bool implied = false;              // base tiling not itself in the store
};

struct GluedComplex {
  std::vector<Cell> cells;
  std::map<std::string, int> cell_of;  // model key -> cell index
  std::set<std::pair<int, int>> adjacency;

  int paraboloid_count() const {
    int n = 0;
    for (const auto& c : cells) n += c.kind == CellKind::Paraboloid;
    return n;
  }
  int cube_count() const { return static_cast<int>(cells.size()) - paraboloid_count(); }
};

// The tiling under a pyramid's square face.
inline MarkedModel base_tiling(const MarkedModel& pyramid) {
  for (std::size_t i = 0; i < pyramid.cone.facets.size(); ++i)
    if (pyramid.cone.facets[i].shape == FacetShape::Square) return cross_wall(pyramid, facet_wall(pyramid, static_cast<int>(i)));
  throw std::logic_error("pyramid without a square face");
}

inline GluedComplex build_glued_complex(const FanStore& store) {
  if (store.size() == 0) throw UnsaturatedStore("empty store");
  GluedComplex gc;
  std::map<std::string, int> tiling_cell;
  auto paraboloid = [&](const MarkedModel& t, bool implied) {
    auto it = tiling_cell.find(t.key);
    if (it != tiling_cell.end()) return it->second;
    Cell c;
    c.kind = CellKind::Paraboloid;
    c.key = t.key;
    c.marking = t.cone.marking();
    c.implied = implied;
    gc.cells.push_back(c);
    return tiling_cell[t.key] = static_cast<int>(gc.cells.size()) - 1;
  };
  for (const auto& [k, m] : store.models())
    if (m.type() == ConeType::Tiling) {
      int ci = paraboloid(m, false);
      gc.cells[ci].members.push_back(k);
      gc.cell_of[k] = ci;
    }
  for (const auto& [k, m] : store.models()) {
    if (m.type() == ConeType::Pyramid) {
      MarkedModel base = base_tiling(m);
      int ci = paraboloid(base, !store.contains(base.key));
      gc.cells[ci].members.push_back(k);
      gc.cell_of[k] = ci;
    } else if (m.type() == ConeType::Lozengoid) {
      gc.cells.push_back({CellKind::Cube, k, {k}, "", false});
      gc.cell_of[k] = static_cast<int>(gc.cells.size()) - 1;
    }
  }
  for (const auto& [k, m] : store.models())
    for (const auto& w : walls(m, store.window)) {
      MarkedModel nb = cross_wall(m, w);
      auto it = gc.cell_of.find(nb.key);
      if (it == gc.cell_of.end()) continue;
      int a = gc.cell_of.at(k), b = it->second;
      if (a != b) gc.adjacency.insert({std::min(a, b), std::max(a, b)});
    }
  return gc;
}

// Neighbours of `ray` along edges that survive the gluing: tiling edges and
// lozengoid fold edges disappear, and so do pyramid base edges.
inline std::vector<IntRay> glued_neighbors(const MarkedModel& m, const DivisorClass& ray) {
  std::vector<IntRay> out;
  if (m.type() == ConeType::Tiling) return out;
  auto nbs = edge_neighbors(m, ray);
  IntRay k = canonical_ray(ray);
  auto index_of = [&](const IntRay& r) {
    for (std::size_t i = 0; i < m.cone.rays.size(); ++i)
      if (canonical_ray(m.cone.rays[i]) == r) return static_cast<int>(i);
    return -1;
  };
  int ri = index_of(k);
  for (const auto& s : nbs) {
    int si = index_of(s);
    if (m.type() == ConeType::Pyramid) {
      if (ri < 4 && si < 4) continue;  // base edge
    } else {
      bool fold = false;
      for (auto [a, b] : templates().lozengoid.fold_edges)
        if ((a == ri && b == si) || (a == si && b == ri)) fold = true;
      if (fold) continue;
    }
    out.push_back(s);
  }
  return out;
}

struct VertexFace {
  std::string cell;
  CellKind kind;
  std::string marking;
  std::vector<IntRay> vertices;
};

struct VertexConfiguration {
  std::vector<IntRay> vertices;
  std::vector<VertexFace> faces;
  int raw_cones = 0;
  int squares = 0, triangles = 0;
  int paraboloid_cells = 0, cube_cells = 0;
  bool antiprism = false;
  bool opposite_markings = false;

  std::string describe() const {
    std::ostringstream s;
    s << vertices.size() << " vertices, " << squares << " squares + " << triangles << " triangles"
      << (antiprism ? " (square antiprism)" : "");
    return s.str();
  }
};

namespace detail {

inline bool is_square_antiprism(const std::vector<IntRay>& verts, const std::vector<VertexFace>& faces) {
  if (verts.size() != 8 || faces.size() != 10) return false;
  std::vector<const VertexFace*> sq, tri;
  for (const auto& f : faces) {
    if (f.vertices.size() == 4) sq.push_back(&f);
    else if (f.vertices.size() == 3) tri.push_back(&f);
    else return false;
  }
  if (sq.size() != 2 || tri.size() != 8) return false;
  std::map<IntRay, std::pair<int, int>> inc;
  for (const auto* f : sq)
    for (const auto& v : f->vertices) ++inc[v].first;
  for (const auto* f : tri)
    for (const auto& v : f->vertices) ++inc[v].second;
  if (inc.size() != 8) return false;
  for (const auto& [v, c] : inc)
    if (c != std::make_pair(1, 3)) return false;
  // each triangle has an edge on one square and its third vertex on the other
  for (const auto* f : tri) {
    int on0 = 0;
    for (const auto& v : f->vertices)
      on0 += std::count(sq[0]->vertices.begin(), sq[0]->vertices.end(), v) > 0;
    if (on0 != 1 && on0 != 2) return false;
  }
  // Euler characteristic of the sphere
  int e = (4 * 2 + 3 * 8) / 2;
  return 8 - e + 10 == 2;
}

}  // namespace detail

inline VertexConfiguration vertex_configuration(const DivisorClass& ray, const FanStore& store, const GluedComplex& gc) {
  VertexConfiguration vc;
  auto cones = cones_at_ray(ray, store);
  vc.raw_cones = static_cast<int>(cones.size());
  std::map<int, std::set<IntRay>> by_cell;
  for (const auto* m : cones) {
    int ci = gc.cell_of.at(m->key);
    auto& face = by_cell[ci];
    for (const auto& r : glued_neighbors(*m, ray)) face.insert(r);
  }
  std::set<IntRay> verts;
  std::set<std::string> markings;
  for (const auto& [ci, vs] : by_cell) {
    const Cell& c = gc.cells[ci];
    vc.faces.push_back({c.key, c.kind, c.marking, {vs.begin(), vs.end()}});
    verts.insert(vs.begin(), vs.end());
    if (c.kind == CellKind::Paraboloid) {
      ++vc.paraboloid_cells;
      markings.insert(c.marking);
    } else {
      ++vc.cube_cells;
    }
    if (vs.size() == 4) ++vc.squares;
    if (vs.size() == 3) ++vc.triangles;
  }
  vc.vertices.assign(verts.begin(), verts.end());
  vc.antiprism = detail::is_square_antiprism(vc.vertices, vc.faces);
  vc.opposite_markings = vc.paraboloid_cells == 2 && markings.size() == 2;
  return vc;
}

// H-class rays of the store: every ray of a finite cone.
inline std::vector<IntRay> vertex_rays(const FanStore& store) {
  std::set<IntRay> out;
  for (const auto& [k, m] : store.models())
    for (const auto& r : m.cone.rays) out.insert(canonical_ray(r));
  return {out.begin(), out.end()};
}

// Faces of a lozengoid after flattening: its quadrilaterals, and the pairs of
// triangles glued along a fold edge.
inline std::vector<std::set<int>> cube_faces(const MarkedModel& m) {
  if (m.type() != ConeType::Lozengoid) throw NotAFace("not a lozengoid");
  std::vector<std::set<int>> faces;
  const auto& fs = m.cone.facets;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].shape == FacetShape::Quad) faces.emplace_back(fs[i].rays.begin(), fs[i].rays.end());
    else if (fs[i].fold_partner > static_cast<int>(i)) {
      std::set<int> f(fs[i].rays.begin(), fs[i].rays.end());
      f.insert(fs[fs[i].fold_partner].rays.begin(), fs[fs[i].fold_partner].rays.end());
      faces.push_back(f);
    }
  }
  return faces;
}

inline bool is_cube(const MarkedModel& m) {
  auto faces = cube_faces(m);
  if (faces.size() != 6 || m.cone.rays.size() != 8) return false;
  std::map<int, int> deg;
  for (const auto& f : faces) {
    if (f.size() != 4) return false;
    for (int v : f) ++deg[v];
  }
  if (deg.size() != 8) return false;
  for (const auto& [v, d] : deg)
    if (d != 3) return false;
  return true;
}

// --- Coxeter data ---------------------------------------------------------

struct CoxeterPresentation {
  std::array<std::array<int, 4>, 4> m{};
};

// Angle pi/m between faces: m = 8 for nodes joined by a double line, 4 for
// nodes not joined.
inline CoxeterPresentation coxeter_matrix() {
  CoxeterPresentation c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c.m[i][j] = i == j ? 1 : (std::abs(i - j) == 1 ? 8 : 4);
  return c;
}

// Fundamental cells of the reflection group per fundamental domain of the
// birational automorphisms: symmetries of the vertex figure at H modulo those
// preserving the marking, times the two colours of vertices.
struct CoxeterIndex {
  int stab_all = 0, stab_birational = 0, colours = 2;
  int index() const { return stab_all / stab_birational * colours; }
};

inline CoxeterIndex coxeter_index() {
  CoxeterIndex ci;
  for (const auto& s : templates().square_stab) {
    ++ci.stab_all;
    if (s.label == SymLabel{}) ++ci.stab_birational;
  }
  return ci;
}

// --- export ---------------------------------------------------------------

inline nlohmann::json complex_json(const GluedComplex& gc) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : gc.cells) {
    nlohmann::json j{{"kind", to_string(c.kind)}, {"key", c.key}, {"members", c.members}, {"implied", c.implied}};
    if (c.kind == CellKind::Paraboloid) j["marking"] = c.marking;
    cells.push_back(j);
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : gc.adjacency) edges.push_back({a, b});
  return {{"cells", cells}, {"adjacency", edges}};
}

inline std::string complex_dot(const GluedComplex& gc) {
  std::ostringstream s;
  s << "graph glued {\n";
  for (std::size_t i = 0; i < gc.cells.size(); ++i) {
    const auto& c = gc.cells[i];
    s << "  c" << i << " [label=\"" << to_string(c.kind) << (c.marking.empty() ? "" : " " + c.marking) << "\""
      << (c.kind == CellKind::Paraboloid ? ", shape=box" : "") << "];\n";
  }
  for (auto [a, b] : gc.adjacency) s << "  c" << a << " -- c" << b << ";\n";
  s << "}\n";
  return s.str();
}

}  // namespace hmfan
