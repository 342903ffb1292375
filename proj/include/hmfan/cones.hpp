#pragma once

// The three nef-cone shapes. Every cone of the fan is g*C for a frame g and
// one of three templates:
//   T0 = cone over A and the paraboloid vertices (x^2+y^2, x, y, 1),
//   P0 = pyramid over the L1 square {H, N'1, H', N'2} with apex Delta1,
//   L0 = the lozengoid attached to P0 along {Delta1, H, N'1}.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hmfan/symmetry.hpp"

namespace hmfan {

enum class ConeType { Tiling, Pyramid, Lozengoid };
enum class Membership { Interior, Boundary, Outside };
enum class FacetShape { Square, Triangle, Quad };

inline const char* to_string(ConeType t) {
  switch (t) {
    case ConeType::Tiling: return "tiling";
    case ConeType::Pyramid: return "pyramid";
    default: return "lozengoid";
  }
}
inline ConeType cone_type_from_string(std::string_view s) {
  if (s == "tiling") return ConeType::Tiling;
  if (s == "pyramid") return ConeType::Pyramid;
  if (s == "lozengoid") return ConeType::Lozengoid;
  throw ParseError("unknown cone type '" + std::string(s) + "'");
}
inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    default: return "Outside";
  }
}

struct Facet {
  CurveClass normal;  // primitive integral, nonnegative on the cone
  std::vector<int> rays;
  FacetShape shape = FacetShape::Triangle;
  int fold_partner = -1;  // lozengoid triangles folded along a common diagonal
};

// Normal to the hyperplane through three divisor classes (generalized cross product).
inline CurveClass hyperplane_normal(const DivisorClass& u, const DivisorClass& v, const DivisorClass& w) {
  CurveClass n;
  for (int i = 0; i < 4; ++i) {
    int cols[3], k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) cols[k++] = j;
    auto m = [&](const DivisorClass& x, int c) -> const Rational& { return x[cols[c]]; };
    Rational det = m(u, 0) * (m(v, 1) * m(w, 2) - m(v, 2) * m(w, 1)) -
                   m(u, 1) * (m(v, 0) * m(w, 2) - m(v, 2) * m(w, 0)) +
                   m(u, 2) * (m(v, 0) * m(w, 1) - m(v, 1) * m(w, 0));
    n[i] = (i % 2 == 0) ? det : Rational(-det);
  }
  return n;
}

inline CurveClass primitive(const CurveClass& c) { return to_curve(canonical_ray(c)); }

// All facets of the cone over finitely many rays, by testing every triple.
inline std::vector<Facet> derive_facets(const std::vector<DivisorClass>& rays) {
  std::map<IntRay, Facet> found;
  const int n = static_cast<int>(rays.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        CurveClass nrm = hyperplane_normal(rays[i], rays[j], rays[k]);
        if (nrm.is_zero()) continue;
        int pos = 0, neg = 0;
        std::vector<int> on;
        for (int r = 0; r < n; ++r) {
          int s = sgn(pair(nrm, rays[r]));
          if (s > 0) ++pos;
          else if (s < 0) ++neg;
          else on.push_back(r);
        }
        if (pos && neg) continue;
        if (neg) nrm = -nrm;
        IntRay key = canonical_ray(nrm);
        if (found.count(key)) continue;
        Facet f;
        f.normal = to_curve(key);
        f.rays = on;
        f.shape = on.size() == 3 ? FacetShape::Triangle : FacetShape::Quad;
        found.emplace(key, f);
      }
  std::vector<Facet> out;
  for (auto& [k, f] : found) out.push_back(f);
  return out;
}

struct Template {
  ConeType type;
  std::vector<DivisorClass> rays;
  std::vector<Facet> facets;
  std::vector<std::pair<int, int>> fold_edges;
};

// Step taken when crossing a template facet: the neighbour is g*step*C_target.
struct CrossRule {
  Frame step;
  ConeType target;
  std::string word;
};

struct TemplateData {
  Template pyramid, lozengoid;
  std::vector<CrossRule> pyramid_rules, lozengoid_rules;  // indexed by facet
  std::vector<Frame> pyramid_stab, lozengoid_stab, square_stab;
};

inline DivisorClass paraboloid_vertex(const Rational& x, const Rational& y) {
  return DivisorClass(x * x + y * y, x, y, 1);
}

// Normal of the T0 face whose square has centre (p,q).
inline CurveClass square_normal(const Rational& p, const Rational& q) {
  return CurveClass(1, -2 * p, -2 * q, p * p + q * q - Rational(1, 4));
}

inline bool square_center(const Rational& p, const Rational& q) { return lattice_point(p - Rational(1, 2), q); }

// Corners of the square with centre (p,q), in cyclic order starting at (p+1/2, q).
inline std::array<std::pair<Rational, Rational>, 4> square_corners(const Rational& p, const Rational& q) {
  Rational h(1, 2);
  return {{{p + h, q}, {p, q + h}, {p - h, q}, {p, q - h}}};
}

const TemplateData& templates();

struct Cone {
  ConeType type = ConeType::Tiling;
  Frame frame;
  std::vector<DivisorClass> rays;  // finite types: frame images of template rays
  std::vector<Facet> facets;       // finite types

  bool beta_side() const { return frame.label.c == 1; }
  const char* marking() const { return beta_side() ? "betaV" : "V"; }

  // Tiling data, in the natural scale carried by the frame.
  DivisorClass apex() const { return frame.m * DivisorClass(1, 0, 0, 0); }
  DivisorClass vertex(const Rational& x, const Rational& y) const { return frame.m * paraboloid_vertex(x, y); }
  CurveClass gamma() const { return primitive(frame(CurveClass(0, 0, 0, 1))); }

  const std::vector<int>& facet_rays(int f) const { return facets.at(f).rays; }
};

inline Cone make_cone_from(const TemplateData& td, ConeType type, const Frame& g) {
  Cone c;
  c.type = type;
  c.frame = g;
  if (type == ConeType::Tiling) return c;
  const Template& t = type == ConeType::Pyramid ? td.pyramid : td.lozengoid;
  Mat4 ct = g.m.contragredient();
  for (const auto& r : t.rays) c.rays.push_back(g.m * r);
  for (auto f : t.facets) {
    f.normal = primitive(ct * f.normal);
    c.facets.push_back(std::move(f));
  }
  return c;
}

inline Cone make_cone(ConeType type, const Frame& g) { return make_cone_from(templates(), type, g); }

inline Cone canonical_tiling() { return make_cone(ConeType::Tiling, Frame{}); }

// --- tiling faces ---------------------------------------------------------

struct TilingFacet {
  Rational p, q;  // centre, in the cone's own frame
  std::array<std::pair<Rational, Rational>, 4> corners;
  std::array<DivisorClass, 4> rays;
  CurveClass normal;
};

inline TilingFacet tiling_facet(const Cone& tiling, const Rational& p, const Rational& q) {
  if (tiling.type != ConeType::Tiling) throw NotAFace("not a tiling cone");
  if (!square_center(p, q)) throw NotAFace("(" + p.get_str() + "," + q.get_str() + ") is not a square centre");
  TilingFacet f{p, q, square_corners(p, q), {}, {}};
  for (int i = 0; i < 4; ++i) f.rays[i] = tiling.vertex(f.corners[i].first, f.corners[i].second);
  f.normal = primitive(tiling.frame(square_normal(p, q)));
  return f;
}

// Identify a square from its four lattice corners (any order).
inline std::pair<Rational, Rational> square_from_corners(const std::vector<std::pair<Rational, Rational>>& pts) {
  if (pts.size() != 4) throw NotAFace("a square has four corners");
  Rational p = 0, q = 0;
  for (const auto& [x, y] : pts) p += x, q += y;
  p /= 4, q /= 4;
  if (!square_center(p, q)) throw NotAFace("corners do not bound a unit square");
  auto want = square_corners(p, q);
  for (const auto& w : want)
    if (std::find(pts.begin(), pts.end(), w) == pts.end()) throw NotAFace("corners do not bound a unit square");
  return {p, q};
}

// Lattice coordinates of a tiling vertex, if the ray is one.
inline std::optional<std::pair<Rational, Rational>> tiling_vertex_index(const Cone& tiling, const DivisorClass& ray) {
  DivisorClass x = tiling.frame.m.inverse() * ray;
  if (sgn(x[3]) <= 0) return std::nullopt;
  Rational u = x[1] / x[3], v = x[2] / x[3];
  if (x[0] / x[3] != u * u + v * v || !lattice_point(u, v)) return std::nullopt;
  return std::make_pair(u, v);
}

inline bool is_tiling_apex(const Cone& tiling, const DivisorClass& ray) {
  return same_ray(tiling.apex(), ray);
}

// --- membership -----------------------------------------------------------

struct TilingWindow {
  Rational bound = 1000;
};

inline Membership classify_values(const std::vector<Rational>& values) {
  bool zero = false;
  for (const auto& v : values) {
    if (sgn(v) < 0) return Membership::Outside;
    if (sgn(v) == 0) zero = true;
  }
  return zero ? Membership::Boundary : Membership::Interior;
}

// Nearest square centre to (u,v) and the value of its face functional on x
// (T0 coordinates). Face functionals are x4*|c - (u,v)|^2 + const, so the
// nearest centre attains the minimum over all faces.
struct NearestFace {
  Rational p, q, value;
};

inline NearestFace nearest_face(const DivisorClass& x) {
  Rational u = x[1] / x[3], v = x[2] / x[3];
  Integer iu = floor_of(2 * u), iv = floor_of(2 * v);
  std::optional<NearestFace> best;
  for (int dx = -2; dx <= 3; ++dx)
    for (int dy = -2; dy <= 3; ++dy) {
      Rational p(Integer(iu + dx), 2), q(Integer(iv + dy), 2);
      p.canonicalize(), q.canonicalize();
      if (!square_center(p, q)) continue;
      Rational val = pair(square_normal(p, q), x);
      if (!best || val < best->value || (val == best->value && std::tie(p, q) < std::tie(best->p, best->q)))
        best = NearestFace{p, q, val};
    }
  return *best;
}

inline Membership membership(const DivisorClass& d, const Cone& c, const TilingWindow& window = {}) {
  if (c.type != ConeType::Tiling) {
    std::vector<Rational> vals;
    for (const auto& f : c.facets) vals.push_back(pair(f.normal, d));
    return classify_values(vals);
  }
  DivisorClass x = c.frame.m.inverse() * d;
  int s4 = sgn(x[3]);
  if (s4 < 0) return Membership::Outside;
  if (s4 == 0) {
    if (x[1] == 0 && x[2] == 0 && sgn(x[0]) > 0) return Membership::Boundary;
    return x.is_zero() ? Membership::Boundary : Membership::Outside;
  }
  NearestFace nf = nearest_face(x);
  if (abs(nf.p) > window.bound || abs(nf.q) > window.bound)
    throw BoundExceeded("relevant face centre (" + nf.p.get_str() + "," + nf.q.get_str() + ") outside window");
  return classify_values({nf.value});
}

inline bool contains_ray(const Cone& c, const DivisorClass& ray) {
  if (c.type == ConeType::Tiling) return is_tiling_apex(c, ray) || tiling_vertex_index(c, ray).has_value();
  IntRay k = canonical_ray(ray);
  for (const auto& r : c.rays)
    if (canonical_ray(r) == k) return true;
  return false;
}

inline DivisorClass interior_point(const Cone& c) {
  if (c.type == ConeType::Tiling) return c.frame.m * DivisorClass(1, 0, 0, 1);
  DivisorClass s;
  for (const auto& r : c.rays) s += r;
  return s;
}

// --- constructions --------------------------------------------------------

inline Cone pyramid_over(const Cone& tiling, const Rational& p, const Rational& q) {
  TilingFacet f = tiling_facet(tiling, p, q);
  Frame g = tiling.frame * frame_of(FanSymmetry::translation(p + Rational(1, 2), q));
  Cone pyr = make_cone(ConeType::Pyramid, g);
  DivisorClass sum;
  for (const auto& r : f.rays) sum += r;
  DivisorClass apex = sum / 2 - tiling.apex();
  if (!(pyr.rays[4] == apex)) throw std::logic_error("pyramid apex formula failed");
  for (int i = 0; i < 4; ++i)
    if (!(pyr.rays[i] == f.rays[i])) throw std::logic_error("pyramid base does not match face");
  return pyr;
}

inline Cone lozengoid_from_flag(const Cone& pyramid, int facet) {
  if (pyramid.type != ConeType::Pyramid) throw NotAFace("not a pyramid");
  if (facet < 0 || facet >= static_cast<int>(pyramid.facets.size()))
    throw NotAFace("facet index out of range");
  if (pyramid.facets[facet].shape != FacetShape::Triangle) throw NotAFace("not a triangular facet");
  const CrossRule& rule = templates().pyramid_rules.at(facet);
  if (rule.target != ConeType::Lozengoid) throw FrameUnderdetermined("no lozengoid template for this flag");
  return make_cone(ConeType::Lozengoid, pyramid.frame * rule.step);
}

// --- canonical frames -----------------------------------------------------

inline Frame lex_max_frame(const Frame& g, const std::vector<Frame>& stab) {
  std::optional<Frame> best;
  for (const auto& s : stab) {
    Frame h = g * s;
    if (!best || best->m < h.m) best = h;
  }
  return *best;
}

// The slice functional 2*d1 + d4 (pairing with Gamma + L1 + L3).
inline CurveClass slice_functional() { return CurveClass(2, 0, 0, 1); }

inline Frame canonical_frame(ConeType type, const Frame& g) {
  const auto& td = templates();
  if (type == ConeType::Pyramid) return lex_max_frame(g, td.pyramid_stab);
  if (type == ConeType::Lozengoid) return lex_max_frame(g, td.lozengoid_stab);
  // Tiling: move the vertex minimizing the slice functional to the origin,
  // then fix the square symmetry.
  CurveClass s = slice_functional();
  CurveClass sg;  // s o g
  for (int j = 0; j < 4; ++j) {
    Rational acc = 0;
    for (int i = 0; i < 4; ++i) acc += s[i] * g.m(i, j);
    sg[j] = acc;
  }
  const Rational& a = sg[0];
  if (sgn(a) <= 0) throw std::logic_error("slice functional not positive on tiling apex");
  Rational u = -sg[1] / (2 * a), v = -sg[2] / (2 * a);
  Integer iu = floor_of(2 * u), iv = floor_of(2 * v);
  std::optional<std::tuple<Rational, IntRay, Rational, Rational>> best;
  for (int dx = -2; dx <= 3; ++dx)
    for (int dy = -2; dy <= 3; ++dy) {
      Rational x(Integer(iu + dx), 2), y(Integer(iv + dy), 2);
      x.canonicalize(), y.canonicalize();
      if (!lattice_point(x, y)) continue;
      DivisorClass vtx = g.m * paraboloid_vertex(x, y);
      auto cand = std::make_tuple(pair(s, vtx), canonical_ray(vtx), x, y);
      if (!best || std::tie(std::get<0>(cand), std::get<1>(cand)) < std::tie(std::get<0>(*best), std::get<1>(*best)))
        best = cand;
    }
  Frame moved = g * frame_of(FanSymmetry::translation(std::get<2>(*best), std::get<3>(*best)));
  return lex_max_frame(moved, td.square_stab);
}

inline Cone canonicalize(const Cone& c) { return make_cone(c.type, canonical_frame(c.type, c.frame)); }

// --- template construction and certification ------------------------------

namespace detail {

inline Template make_template(ConeType type, std::vector<DivisorClass> rays) {
  Template t{type, std::move(rays), {}, {}};
  t.facets = derive_facets(t.rays);
  for (auto& f : t.facets)
    if (type == ConeType::Pyramid && f.rays.size() == 4) f.shape = FacetShape::Square;
  for (std::size_t i = 0; i < t.facets.size(); ++i)
    for (std::size_t j = i + 1; j < t.facets.size(); ++j) {
      auto& a = t.facets[i];
      auto& b = t.facets[j];
      if (a.shape != FacetShape::Triangle || b.shape != FacetShape::Triangle || type != ConeType::Lozengoid)
        continue;
      std::vector<int> common;
      std::set_intersection(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end(),
                            std::back_inserter(common));
      if (common.size() == 2) {
        a.fold_partner = static_cast<int>(j);
        b.fold_partner = static_cast<int>(i);
        t.fold_edges.emplace_back(common[0], common[1]);
      }
    }
  return t;
}

inline std::vector<IntRay> ray_set(const std::vector<DivisorClass>& rays) {
  std::vector<IntRay> out;
  for (const auto& r : rays) out.push_back(canonical_ray(r));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Frame> words_to_frames(std::initializer_list<const char*> words) {
  std::vector<Frame> out;
  for (const char* w : words) out.push_back(frame_word(w));
  return out;
}

inline std::vector<CrossRule> make_rules(const Template& t,
                                         const std::map<std::string, std::pair<const char*, ConeType>>& by_normal) {
  std::vector<CrossRule> rules;
  for (const auto& f : t.facets) {
    auto it = by_normal.find(ray_key(f.normal));
    if (it == by_normal.end()) throw std::logic_error("no crossing rule for facet " + ray_key(f.normal));
    rules.push_back({frame_word(it->second.first), it->second.second, it->second.first});
  }
  return rules;
}

inline void certify(const TemplateData& td) {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("template certification failed: " + what);
  };
  auto stab_ok = [&](const Template& t, const std::vector<Frame>& stab) {
    auto base = ray_set(t.rays);
    for (const auto& s : stab) {
      std::vector<DivisorClass> img;
      for (const auto& r : t.rays) img.push_back(s.m * r);
      check(ray_set(img) == base, "stabilizer element moves the template");
    }
  };
  stab_ok(td.pyramid, td.pyramid_stab);
  stab_ok(td.lozengoid, td.lozengoid_stab);
  check(td.pyramid.facets.size() == 5 && td.lozengoid.facets.size() == 8, "facet counts");

  auto rules_ok = [&](const Template& t, const std::vector<CrossRule>& rules) {
    for (std::size_t i = 0; i < t.facets.size(); ++i) {
      const Facet& f = t.facets[i];
      const CrossRule& rule = rules[i];
      std::vector<IntRay> wall;
      for (int r : f.rays) wall.push_back(canonical_ray(t.rays[r]));
      std::sort(wall.begin(), wall.end());
      if (rule.target == ConeType::Tiling) {
        Cone tc = make_cone_from(td, ConeType::Tiling, rule.step);
        for (int r : f.rays) check(tiling_vertex_index(tc, t.rays[r]).has_value(), "base not on tiling");
        check(sgn(pair(f.normal, tc.apex())) < 0, "tiling on the wrong side");
        continue;
      }
      Cone nb = make_cone_from(td, rule.target, rule.step);
      bool shared = false;
      for (const auto& g : nb.facets) {
        std::vector<IntRay> w;
        for (int r : g.rays) w.push_back(canonical_ray(nb.rays[r]));
        std::sort(w.begin(), w.end());
        if (w == wall) shared = true;
      }
      check(shared, "neighbour does not share facet " + ray_key(f.normal));
      check(sgn(pair(f.normal, interior_point(nb))) < 0, "neighbour on the wrong side of " + ray_key(f.normal));
    }
  };
  rules_ok(td.pyramid, td.pyramid_rules);
  rules_ok(td.lozengoid, td.lozengoid_rules);
}

}  // namespace detail

inline const TemplateData& templates() {
  static const TemplateData td = [] {
    const auto& R = registry();
    auto D = [&](const char* n) { return R.divisor(n); };
    TemplateData t;
    t.pyramid = detail::make_template(ConeType::Pyramid,
                                      {D("H"), D("NablaP1"), D("HP"), D("NablaP2"), D("Delta1")});
    const DivisorClass& H = D("H");
    t.lozengoid = detail::make_template(
        ConeType::Lozengoid, {H, D("Delta1"), D("Delta4"), D("NablaP1"), D("Nabla3"), D("NablaP1") + D("Nabla3") - H,
                              D("Delta1") + D("Nabla3") - H, D("Delta4") + D("Nabla3") - H});

    // Stabilizers of the templates (and of the square at H) in the fan symmetries.
    t.pyramid_stab = detail::words_to_frames({"", "r", "R", "rR", "db", "bRd", "rdb", "dbr"});
    t.lozengoid_stab = detail::words_to_frames({"", "aR", "id", "db", "ff", "frf", "FrF", "afif"});
    t.square_stab = detail::words_to_frames({"", "r", "d", "rd", "dr", "rdr", "drd", "rdrd"});

    using CT = ConeType;
    t.pyramid_rules = detail::make_rules(t.pyramid, {{"-1,-1,0,0", {"", CT::Tiling}},
                                                     {"1,0,-1,0", {"", CT::Lozengoid}},
                                                     {"1,0,1,0", {"r", CT::Lozengoid}},
                                                     {"1,2,-1,1", {"Rr", CT::Lozengoid}},
                                                     {"1,2,1,1", {"R", CT::Lozengoid}}});
    // Triangles meet pyramids; quadrilaterals meet lozengoids twisted by phi.
    t.lozengoid_rules = detail::make_rules(t.lozengoid, {{"-1,0,1,0", {"", CT::Pyramid}},
                                                         {"-1,-1,0,0", {"a", CT::Pyramid}},
                                                         {"4,1,-1,1", {"ff", CT::Pyramid}},
                                                         {"4,3,-3,2", {"ffa", CT::Pyramid}},
                                                         {"1,0,1,0", {"f", CT::Lozengoid}},
                                                         {"1,-1,0,0", {"Fr", CT::Lozengoid}},
                                                         {"1,2,-1,1", {"fr", CT::Lozengoid}},
                                                         {"1,1,-2,1", {"afb", CT::Lozengoid}}});
    return t;
  }();
  static std::once_flag certified;
  std::call_once(certified, [] { detail::certify(td); });
  return td;
}

}  // namespace hmfan
