#pragma once

// The movable fan as a traversable complex of marked models.

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hmfan/cones.hpp"

namespace hmfan {

enum class IsoClass { T_V, T_betaV, P_V, P_betaV, L1, L2, L3, L4 };

inline const char* to_string(IsoClass c) {
  static const char* names[] = {"T_V", "T_betaV", "P_V", "P_betaV", "L1", "L2", "L3", "L4"};
  return names[static_cast<int>(c)];
}
inline IsoClass iso_class_from_string(std::string_view s) {
  for (int i = 0; i < 8; ++i)
    if (s == to_string(static_cast<IsoClass>(i))) return static_cast<IsoClass>(i);
  throw ParseError("unknown iso class '" + std::string(s) + "'");
}

// The label is determined up to the stabilizer of the template: all of
// r, d for tilings and pyramids, only d for lozengoids. What survives is the
// marking bit f, plus for lozengoids the flag-orbit parity.
inline IsoClass classify(const Cone& c) {
  const SymLabel& l = c.frame.label;
  switch (c.type) {
    case ConeType::Tiling: return l.c ? IsoClass::T_betaV : IsoClass::T_V;
    case ConeType::Pyramid: return l.c ? IsoClass::P_betaV : IsoClass::P_V;
    default: {
      int parity = l.c ? l.b : l.a;
      return static_cast<IsoClass>(static_cast<int>(IsoClass::L1) + 2 * l.c + parity);
    }
  }
}

inline std::string cone_key(const Cone& c) {
  if (c.type == ConeType::Tiling) return "T:" + ray_key(c.apex());
  std::vector<IntRay> rs;
  for (const auto& r : c.rays) rs.push_back(canonical_ray(r));
  std::sort(rs.begin(), rs.end());
  std::string s = c.type == ConeType::Pyramid ? "P:" : "L:";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i) s += ';';
    s += ray_key(rs[i]);
  }
  return s;
}

// A facet of a model: an index into the facet list for finite cones, a square
// centre (in the model's canonical frame) for tilings.
struct Wall {
  std::string cone_key;
  int facet = -1;
  Rational p, q;
  CurveClass normal;

  bool is_square() const { return facet < 0; }
  std::string str() const {
    return is_square() ? cone_key + "@" + p.get_str() + "," + q.get_str() : cone_key + "#" + std::to_string(facet);
  }
};

struct MarkedModel {
  Cone cone;
  std::string key;
  IsoClass iso = IsoClass::T_V;
  int depth = 0;
  std::vector<std::string> path;

  ConeType type() const { return cone.type; }
};

inline MarkedModel make_model(const Cone& c) {
  MarkedModel m;
  m.cone = canonicalize(c);
  m.key = cone_key(m.cone);
  m.iso = classify(m.cone);
  return m;
}

inline MarkedModel canonical_model() { return make_model(canonical_tiling()); }

inline Wall facet_wall(const MarkedModel& m, int facet) {
  if (m.type() == ConeType::Tiling) throw NotAFace("tiling walls are squares");
  if (facet < 0 || facet >= static_cast<int>(m.cone.facets.size())) throw NotAFace("facet index out of range");
  Wall w;
  w.cone_key = m.key;
  w.facet = facet;
  w.normal = m.cone.facets[facet].normal;
  return w;
}

inline Wall square_wall(const MarkedModel& m, const Rational& p, const Rational& q) {
  TilingFacet f = tiling_facet(m.cone, p, q);
  Wall w;
  w.cone_key = m.key;
  w.p = p;
  w.q = q;
  w.normal = f.normal;
  return w;
}

// Wall of m with the given normal (any positive multiple).
inline Wall wall_with_normal(const MarkedModel& m, const CurveClass& normal) {
  IntRay want = canonical_ray(normal);
  if (m.type() != ConeType::Tiling) {
    for (std::size_t i = 0; i < m.cone.facets.size(); ++i)
      if (canonical_ray(m.cone.facets[i].normal) == want) return facet_wall(m, static_cast<int>(i));
    throw NotAFace("no facet with normal " + ray_key(want));
  }
  CurveClass n0;  // pulled back to T0 coordinates
  for (int j = 0; j < 4; ++j) {
    Rational acc = 0;
    for (int i = 0; i < 4; ++i) acc += normal[i] * m.cone.frame.m(i, j);
    n0[j] = acc;
  }
  if (n0[0] == 0) throw BoundaryWall("hyperplane passes through the fibration ray; no flop across it");
  if (sgn(n0[0]) < 0) throw NotAFace("normal is negative on the tiling");
  n0 = n0 / Rational(n0[0]);
  Rational p = -n0[1] / 2, q = -n0[2] / 2;
  if (!square_center(p, q) || !(n0 == square_normal(p, q))) throw NotAFace("not a face of the tiling");
  return square_wall(m, p, q);
}

// Walls of a model; tiling squares are enumerated with centres in |p|,|q| <= window.
inline std::vector<Wall> walls(const MarkedModel& m, const Rational& window = Rational(1, 2)) {
  std::vector<Wall> out;
  if (m.type() != ConeType::Tiling) {
    for (std::size_t i = 0; i < m.cone.facets.size(); ++i) out.push_back(facet_wall(m, static_cast<int>(i)));
    return out;
  }
  Integer lim = floor_of(2 * window);
  for (Integer i = -lim; i <= lim; ++i)
    for (Integer j = -lim; j <= lim; ++j) {
      Rational p(i, 2), q(j, 2);
      p.canonicalize(), q.canonicalize();
      if (square_center(p, q)) out.push_back(square_wall(m, p, q));
    }
  return out;
}

// Walls of m that contain the given ray.
inline std::vector<Wall> walls_through(const MarkedModel& m, const DivisorClass& ray) {
  std::vector<Wall> out;
  if (m.type() == ConeType::Tiling) {
    auto idx = tiling_vertex_index(m.cone, ray);
    if (!idx) return out;
    const auto& [x, y] = *idx;
    Rational h(1, 2);
    for (auto [p, q] : std::vector<std::pair<Rational, Rational>>{{x - h, y}, {x + h, y}, {x, y - h}, {x, y + h}})
      out.push_back(square_wall(m, p, q));
    return out;
  }
  IntRay k = canonical_ray(ray);
  for (std::size_t i = 0; i < m.cone.facets.size(); ++i)
    for (int r : m.cone.facets[i].rays)
      if (canonical_ray(m.cone.rays[r]) == k) out.push_back(facet_wall(m, static_cast<int>(i)));
  return out;
}

inline std::vector<IntRay> wall_rays(const MarkedModel& m, const Wall& w) {
  std::vector<IntRay> rs;
  if (w.is_square()) {
    for (const auto& r : tiling_facet(m.cone, w.p, w.q).rays) rs.push_back(canonical_ray(r));
  } else {
    for (int r : m.cone.facets.at(w.facet).rays) rs.push_back(canonical_ray(m.cone.rays[r]));
  }
  std::sort(rs.begin(), rs.end());
  return rs;
}

struct Crossing {
  MarkedModel model;
  Wall back;  // the shared wall seen from the new model
};

inline Crossing cross(const MarkedModel& m, const Wall& w) {
  if (w.cone_key != m.key) throw NotAFace("wall belongs to " + w.cone_key);
  Cone next;
  if (w.is_square()) {
    next = make_cone(ConeType::Pyramid, m.cone.frame * frame_of(FanSymmetry::translation(w.p + Rational(1, 2), w.q)));
  } else {
    const auto& td = templates();
    const auto& rules = m.type() == ConeType::Pyramid ? td.pyramid_rules : td.lozengoid_rules;
    const CrossRule& rule = rules.at(w.facet);
    next = make_cone(rule.target, m.cone.frame * rule.step);
  }
  Crossing out{make_model(next), {}};
  auto shared = wall_rays(m, w);
  const MarkedModel& nb = out.model;
  if (nb.type() == ConeType::Tiling) {
    std::vector<std::pair<Rational, Rational>> corners;
    for (const auto& r : shared) {
      auto idx = tiling_vertex_index(nb.cone, to_divisor(r));
      if (!idx) throw std::logic_error("shared square not on neighbouring tiling");
      corners.push_back(*idx);
    }
    auto [p, q] = square_from_corners(corners);
    out.back = square_wall(nb, p, q);
  } else {
    bool found = false;
    for (std::size_t i = 0; i < nb.cone.facets.size() && !found; ++i) {
      Wall cand = facet_wall(nb, static_cast<int>(i));
      if (wall_rays(nb, cand) == shared) out.back = cand, found = true;
    }
    if (!found) throw std::logic_error("neighbour does not share the crossed wall");
  }
  out.model.path = m.path;
  out.model.path.push_back(w.str());
  out.model.depth = m.depth + 1;
  return out;
}

inline MarkedModel cross_wall(const MarkedModel& m, const Wall& w) { return cross(m, w).model; }

// --- store ----------------------------------------------------------------

class FanStore {
 public:
  Rational window = Rational(1, 2);

  bool contains(const std::string& key) const { return models_.count(key) > 0; }
  const MarkedModel* find(const std::string& key) const {
    auto it = models_.find(key);
    return it == models_.end() ? nullptr : &it->second;
  }
  // Inserts unless present; returns the stored model.
  const MarkedModel& insert(const MarkedModel& m) { return models_.emplace(m.key, m).first->second; }
  std::size_t size() const { return models_.size(); }
  const std::map<std::string, MarkedModel>& models() const { return models_; }

  std::map<IsoClass, int> class_counts() const {
    std::map<IsoClass, int> c;
    for (const auto& [k, m] : models_) ++c[m.iso];
    return c;
  }

 private:
  std::map<std::string, MarkedModel> models_;
};

struct ExploreOptions {
  Rational window = Rational(1, 2);
  std::optional<unsigned> shuffle_seed;  // randomizes frontier order within each level
};

// All models within `depth` wall crossings of the canonical tiling, tiling
// squares restricted to the window. Continues from whatever `store` holds.
inline void explore_into(FanStore& store, int depth, const ExploreOptions& opt = {}) {
  store.window = opt.window;
  if (!store.contains(canonical_model().key)) store.insert(canonical_model());
  std::map<int, std::vector<std::string>> levels;
  for (const auto& [k, m] : store.models()) levels[m.depth].push_back(k);
  std::optional<std::mt19937> rng;
  if (opt.shuffle_seed) rng.emplace(*opt.shuffle_seed);
  for (int d = 0; d < depth; ++d) {
    auto frontier = levels[d];
    if (rng) std::shuffle(frontier.begin(), frontier.end(), *rng);
    for (const auto& key : frontier) {
      MarkedModel m = *store.find(key);
      auto ws = walls(m, opt.window);
      if (rng) std::shuffle(ws.begin(), ws.end(), *rng);
      for (const auto& w : ws) {
        MarkedModel nb = cross_wall(m, w);
        if (store.contains(nb.key)) continue;
        store.insert(nb);
        levels[d + 1].push_back(nb.key);
      }
    }
  }
}

inline FanStore explore(int depth, const ExploreOptions& opt = {}) {
  if (depth < 0) throw DegenerateInput("depth must be nonnegative");
  FanStore s;
  explore_into(s, depth, opt);
  return s;
}

// --- local structure ------------------------------------------------------

// All stored models containing the ray; the star must be closed under
// crossing every wall through the ray.
inline std::vector<const MarkedModel*> cones_at_ray(const DivisorClass& ray, const FanStore& store) {
  std::vector<const MarkedModel*> out;
  for (const auto& [k, m] : store.models())
    if (contains_ray(m.cone, ray)) out.push_back(&m);
  if (out.empty()) throw StarNotSaturated("no stored cone contains " + ray_key(ray));
  for (const auto* m : out)
    for (const auto& w : walls_through(*m, ray)) {
      MarkedModel nb = cross_wall(*m, w);
      if (!store.contains(nb.key))
        throw StarNotSaturated("star of " + ray_key(ray) + " is missing " + nb.key + " (found " +
                               std::to_string(out.size()) + " cones)");
    }
  return out;
}

// Rays joined to `ray` by an edge (2-face) of some cone of its star.
inline std::vector<IntRay> edge_neighbors(const MarkedModel& m, const DivisorClass& ray) {
  std::vector<IntRay> out;
  if (m.type() == ConeType::Tiling) {
    auto idx = tiling_vertex_index(m.cone, ray);
    if (!idx) return out;
    Rational h(1, 2);
    for (int sx : {-1, 1})
      for (int sy : {-1, 1}) out.push_back(canonical_ray(m.cone.vertex(idx->first + sx * h, idx->second + sy * h)));
    return out;
  }
  IntRay k = canonical_ray(ray);
  int ri = -1;
  for (std::size_t i = 0; i < m.cone.rays.size(); ++i)
    if (canonical_ray(m.cone.rays[i]) == k) ri = static_cast<int>(i);
  if (ri < 0) return out;
  const int n = static_cast<int>(m.cone.rays.size());
  for (int s = 0; s < n; ++s) {
    if (s == ri) continue;
    std::vector<int> common(n);
    std::iota(common.begin(), common.end(), 0);
    int facets_with_both = 0;
    for (const auto& f : m.cone.facets) {
      std::vector<int> fr = f.rays;
      std::sort(fr.begin(), fr.end());
      if (!std::binary_search(fr.begin(), fr.end(), ri) || !std::binary_search(fr.begin(), fr.end(), s)) continue;
      ++facets_with_both;
      std::vector<int> keep;
      std::set_intersection(common.begin(), common.end(), fr.begin(), fr.end(), std::back_inserter(keep));
      common = keep;
    }
    if (facets_with_both >= 2 && common.size() == 2) out.push_back(canonical_ray(m.cone.rays[s]));
  }
  return out;
}

inline std::vector<IntRay> neighbor_rays(const DivisorClass& ray, const FanStore& store) {
  std::set<IntRay> all;
  for (const auto* m : cones_at_ray(ray, store))
    for (const auto& r : edge_neighbors(*m, ray)) all.insert(r);
  return {all.begin(), all.end()};
}

// --- locating a divisor ---------------------------------------------------

struct LocateOptions {
  int max_steps = 10000;
};

namespace detail {

struct Exit {
  std::optional<Wall> wall;  // none: d lies in the model
  bool degenerate = false;
};

// Where the segment p0 -> d leaves the model (p0 may lie outside; the part of
// the segment inside the model is what matters).
inline Exit segment_exit(const MarkedModel& m, const DivisorClass& p0, const DivisorClass& d) {
  struct Cand {
    Rational t;
    Wall w;
  };
  std::vector<Cand> cands;
  if (m.type() != ConeType::Tiling) {
    for (std::size_t i = 0; i < m.cone.facets.size(); ++i) {
      const auto& n = m.cone.facets[i].normal;
      Rational nd = pair(n, d);
      if (sgn(nd) >= 0) continue;
      Rational np = pair(n, p0);
      cands.push_back({np / (np - nd), facet_wall(m, static_cast<int>(i))});
    }
  } else {
    Mat4 gi = m.cone.frame.m.inverse();
    DivisorClass xd = gi * d, xp = gi * p0;
    if (sgn(xd[3]) <= 0) throw NotInMovableInterior("pairs nonpositively with the fibre curve of " + m.key);
    Rational u = xd[1] / xd[3], v = xd[2] / xd[3];
    Rational K = xd[0] - (xd[1] * xd[1] + xd[2] * xd[2]) / xd[3] - xd[3] / 4;
    Rational r2 = -K / xd[3];
    if (sgn(r2) > 0) {
      Integer box;
      mpz_sqrt(box.get_mpz_t(), Integer(floor_of(r2) + 1).get_mpz_t());
      box += 2;
      Integer iu = floor_of(2 * u), iv = floor_of(2 * v);
      for (Integer i = iu - 2 * box; i <= iu + 2 * box; ++i)
        for (Integer j = iv - 2 * box; j <= iv + 2 * box; ++j) {
          Rational p(i, 2), q(j, 2);
          p.canonicalize(), q.canonicalize();
          if (!square_center(p, q)) continue;
          CurveClass n = square_normal(p, q);
          Rational nd = pair(n, xd);
          if (sgn(nd) >= 0) continue;
          Rational np = pair(n, xp);
          cands.push_back({np / (np - nd), square_wall(m, p, q)});
        }
    }
  }
  if (cands.empty()) return {};
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.t < b.t; });
  Exit e;
  e.wall = cands[0].w;
  e.degenerate = cands.size() > 1 && cands[1].t == cands[0].t;
  return e;
}

}  // namespace detail

// Walks the straight segment from a generic point of the canonical tiling to
// d, crossing the wall where the segment leaves each model.
inline MarkedModel locate(const DivisorClass& d, FanStore& store, const LocateOptions& opt = {}) {
  if (d.is_zero()) throw NotInMovableInterior("zero class");
  for (int attempt = 0; attempt < 16; ++attempt) {
    DivisorClass p0(1, Rational(1, 97 + 7 * attempt), Rational(1, 89 + 11 * attempt), 1);
    MarkedModel cur = canonical_model();
    if (const auto* s = store.find(cur.key)) cur = *s;
    store.insert(cur);
    bool restart = false;
    for (int step = 0; step < opt.max_steps; ++step) {
      auto e = detail::segment_exit(cur, p0, d);
      if (!e.wall) return cur;
      if (e.degenerate) {
        restart = true;
        break;
      }
      MarkedModel nb = cross_wall(cur, *e.wall);
      if (const auto* s = store.find(nb.key))
        nb = *s;
      else
        store.insert(nb);
      cur = nb;
    }
    if (!restart) throw NonTermination("locate exceeded " + std::to_string(opt.max_steps) + " steps");
  }
  throw NonTermination("segment kept meeting lower-dimensional faces");
}

// --- persistence ----------------------------------------------------------

inline nlohmann::json model_json(const MarkedModel& m) {
  nlohmann::json j;
  j["key"] = m.key;
  j["type"] = to_string(m.type());
  j["iso_class"] = to_string(m.iso);
  j["marking"] = m.cone.marking();
  j["label"] = m.cone.frame.label.str();
  j["frame"] = matrix_json(m.cone.frame.m);
  if (m.type() == ConeType::Tiling) {
    j["apex"] = ray_key(m.cone.apex());
  } else {
    nlohmann::json rays = nlohmann::json::array();
    for (const auto& r : m.cone.rays) rays.push_back(ray_key(r));
    j["rays"] = rays;
    nlohmann::json folds = nlohmann::json::array();
    for (std::size_t i = 0; i < m.cone.facets.size(); ++i)
      if (m.cone.facets[i].fold_partner >= 0) folds.push_back({i, m.cone.facets[i].fold_partner});
    if (!folds.empty()) j["folds"] = folds;
  }
  j["depth"] = m.depth;
  j["path"] = m.path;
  return j;
}

inline MarkedModel model_from_json(const nlohmann::json& j) {
  Frame g{matrix_from_json(j.at("frame")), SymLabel::parse(j.at("label").get<std::string>())};
  MarkedModel m;
  m.cone = make_cone(cone_type_from_string(j.at("type").get<std::string>()), g);
  m.key = cone_key(m.cone);
  m.iso = classify(m.cone);
  if (m.key != j.at("key").get<std::string>()) throw ParseError("stored key does not match frame: " + m.key);
  if (to_string(m.iso) != j.at("iso_class").get<std::string>()) throw ParseError("stored iso class mismatch");
  m.depth = j.value("depth", 0);
  m.path = j.value("path", std::vector<std::string>{});
  return m;
}

inline void save_store(const FanStore& store, std::ostream& out) {
  for (const auto& [k, m] : store.models()) out << model_json(m).dump() << '\n';
}

inline void save_store(const FanStore& store, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  save_store(store, f);
}

inline FanStore load_store(std::istream& in) {
  FanStore s;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      s.insert(model_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad store line: ") + e.what());
    }
  }
  return s;
}

inline FanStore load_store(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  return load_store(f);
}

}  // namespace hmfan
