#pragma once

// The seven-vertex rational polyhedral cone that is a fundamental domain for
// the birational automorphisms on the movable cone.

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hmfan/fan.hpp"

namespace hmfan {

struct FundamentalDomain {
  // v0, va, vb, vc, vd, ve, vf
  std::array<DivisorClass, 7> v;
  std::vector<std::vector<int>> facets;

  static constexpr const char* names = "0abcdef";
  const DivisorClass& at(char name) const { return v.at(std::string_view(names).find(name)); }
};

inline FundamentalDomain build_domain() {
  auto D = [](const char* n) { return divisor(n); };
  const DivisorClass& A = D("A");
  const DivisorClass& H = D("H");
  FundamentalDomain d;
  d.v = {A,
         Rational(5) * H - A,
         Rational(5) * D("NablaP1") - A,
         Rational(5) * D("NablaP2") - A,
         Rational(5) * D("Delta1") - A,
         Rational(10) * H + Rational(10) * D("NablaP1") - Rational(6) * A,
         Rational(10) * H + Rational(10) * D("NablaP2") - Rational(6) * A};
  // triangles bde ade adf cdf, quadrilaterals 0bdc 0aeb 0cfa
  d.facets = {{2, 4, 5}, {1, 4, 5}, {1, 4, 6}, {3, 4, 6}, {0, 2, 4, 3}, {0, 1, 5, 2}, {0, 3, 6, 1}};
  return d;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  bool informational = false;  // reported, not counted by all_pass()
};

struct DomainReport {
  std::vector<Check> checks;
  std::vector<CurveClass> normals;  // inward, primitive, one per facet

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass && !c.informational) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Coefficients expressing target in the given independent vectors, if any.
inline std::optional<std::vector<Rational>> solve_combination(const std::vector<DivisorClass>& basis,
                                                              const DivisorClass& target) {
  const int n = static_cast<int>(basis.size());
  std::vector<std::vector<Rational>> aug(4, std::vector<Rational>(n + 1));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = basis[j][i];
    aug[i][n] = target[i];
  }
  int row = 0;
  std::vector<int> piv(n, -1);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = row; r < 4; ++r)
      if (aug[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) return std::nullopt;
    std::swap(aug[p], aug[row]);
    Rational pv = aug[row][col];
    for (auto& x : aug[row]) x /= pv;
    for (int r = 0; r < 4; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      Rational f = aug[r][col];
      for (int k = 0; k <= n; ++k) aug[r][k] -= f * aug[row][k];
    }
    piv[col] = row++;
  }
  for (int r = row; r < 4; ++r)
    if (aug[r][n] != 0) return std::nullopt;
  std::vector<Rational> out;
  for (int j = 0; j < n; ++j) out.push_back(aug[piv[j]][n]);
  return out;
}

inline int rank_of(const std::vector<DivisorClass>& vs) {
  std::vector<std::array<Rational, 4>> rows;
  for (const auto& v : vs) rows.push_back(v.c);
  int rank = 0;
  for (int col = 0; col < 4 && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (int k = 0; k < 4; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// The inequality description from the named facets, each oriented inward.
inline std::vector<CurveClass> domain_normals(const FundamentalDomain& d) {
  std::vector<CurveClass> out;
  for (const auto& f : d.facets) {
    CurveClass n = primitive(hyperplane_normal(d.v[f[0]], d.v[f[1]], d.v[f[2]]));
    for (const auto& v : d.v)
      if (sgn(pair(n, v)) != 0) {
        if (sgn(pair(n, v)) < 0) n = -n;
        break;
      }
    out.push_back(n);
  }
  return out;
}

inline DomainReport verify_convexity(const FundamentalDomain& d) {
  DomainReport rep;
  auto V = [&](char c) { return d.at(c); };
  auto eq = [&](const std::string& name, const DivisorClass& lhs, const DivisorClass& rhs, bool info = false) {
    rep.checks.push_back({name, lhs == rhs, to_string(lhs) + " vs " + to_string(rhs), info});
  };
  Rational two(2), four(4);
  // Kept for reference: it fails, the left side equals vd+4v0.
  eq("identity (1) vb+vc = va+4v0", V('b') + V('c'), V('a') + four * V('0'), true);
  eq("identity (1) corrected vb+vc = vd+4v0", V('b') + V('c'), V('d') + four * V('0'));
  eq("identity (2) 2va+2vb = ve+2v0", two * V('a') + two * V('b'), V('e') + two * V('0'));
  eq("identity (3) 2va+2vc = vf+2v0", two * V('a') + two * V('c'), V('f') + two * V('0'));
  eq("identity (4) ve+vf = 4va+2vd+4v0", V('e') + V('f'), four * V('a') + two * V('d') + four * V('0'));

  for (const auto& f : d.facets) {
    if (f.size() != 4) continue;
    std::string name;
    for (int i : f) name += FundamentalDomain::names[i];
    std::vector<DivisorClass> vs;
    for (int i : f) vs.push_back(d.v[i]);
    int r = rank_of(vs);
    rep.checks.push_back({"planar " + name, r == 3, "rank " + std::to_string(r)});
  }

  // every vertex on the right side of every facet, and on it exactly when named
  rep.normals = domain_normals(d);
  bool hrep = true;
  std::string bad;
  for (std::size_t i = 0; i < d.facets.size(); ++i)
    for (int k = 0; k < 7; ++k) {
      int s = sgn(pair(rep.normals[i], d.v[k]));
      bool named = std::count(d.facets[i].begin(), d.facets[i].end(), k) > 0;
      if (s < 0 || (s == 0) != named) {
        hrep = false;
        bad += std::string(bad.empty() ? "" : "; ") + "facet " + std::to_string(i) + " vertex " +
               FundamentalDomain::names[k];
      }
    }
  rep.checks.push_back({"H-representation certifies convexity", hrep, bad.empty() ? "7 facets, 7 vertices" : bad});

  // ve+vf = a v0 + b va + c vd with a, b, c > 0
  auto coeffs = solve_combination({V('0'), V('a'), V('d')}, V('e') + V('f'));
  bool through = coeffs.has_value();
  std::string detail = "not in the span";
  if (coeffs) {
    detail = "coefficients";
    for (const auto& c : *coeffs) {
      detail += " " + c.get_str();
      if (sgn(c) <= 0) through = false;
    }
  }
  rep.checks.push_back({"segment ve-vf meets the interior of v0 va vd", through, detail});
  return rep;
}

// --- translates -----------------------------------------------------------

// Translations T(x,y), |x|,|y| <= bound, and their composites with iota.
inline std::vector<FanSymmetry> domain_words(const Rational& bound = Rational(3, 2)) {
  std::vector<FanSymmetry> out;
  Integer lim = floor_of(2 * bound);
  for (Integer i = -lim; i <= lim; ++i)
    for (Integer j = -lim; j <= lim; ++j) {
      Rational x(i, 2), y(j, 2);
      x.canonicalize(), y.canonicalize();
      if (!lattice_point(x, y)) continue;
      out.push_back(FanSymmetry::translation(x, y));
      out.push_back(compose(FanSymmetry::iota(), FanSymmetry::translation(x, y)));
    }
  return out;
}

inline Membership domain_membership(const DivisorClass& p, const FanSymmetry& g,
                                    const std::vector<CurveClass>& normals) {
  DivisorClass x = g.matrix().inverse() * p;
  std::vector<Rational> vals;
  for (const auto& n : normals) vals.push_back(pair(n, x));
  return classify_values(vals);
}

struct TileReport {
  int samples = 0;
  int words = 0;
  int overlaps = 0;         // samples interior to two or more translates
  int coverage_samples = 0;
  int uncovered = 0;        // coverage samples in no closed translate
  int domain_hits = 0;      // samples of the domain itself found in the identity translate only
  bool pass() const { return overlaps == 0 && uncovered == 0; }
};

// Random points of stored cones are checked against every translate; points
// from the cones at H must also be covered.
inline TileReport tile_check(const FundamentalDomain& d, const FanStore& store, const std::vector<FanSymmetry>& words,
                             int samples = 200, unsigned seed = 1) {
  if (store.size() == 0) throw UnsaturatedStore("no cones to sample");
  auto normals = domain_normals(d);
  TileReport rep;
  rep.words = static_cast<int>(words.size());
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(1, 9);
  std::vector<const MarkedModel*> cones;
  for (const auto& [k, m] : store.models()) cones.push_back(&m);

  auto random_point = [&](const std::vector<DivisorClass>& gens) {
    DivisorClass p;
    for (const auto& g : gens) p += Rational(coef(rng)) * g;
    return p;
  };
  auto generators = [&](const Cone& c) {
    if (c.type != ConeType::Tiling) return c.rays;
    std::vector<DivisorClass> g{c.apex()};
    for (auto [x, y] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}})
      g.push_back(c.vertex(Rational(x, 2), Rational(y, 2)));
    return g;
  };

  for (int s = 0; s < samples; ++s) {
    DivisorClass p;
    if (s % 4 == 0) {
      p = random_point({d.v.begin(), d.v.end()});
      int hits = 0;
      bool identity_hit = false;
      for (const auto& g : words)
        if (domain_membership(p, g, normals) == Membership::Interior) {
          ++hits;
          if (g.matrix() == Mat4::identity()) identity_hit = true;
        }
      if (hits == 1 && identity_hit) ++rep.domain_hits;
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, cones.size() - 1);
      p = random_point(generators(cones[pick(rng)]->cone));
    }
    ++rep.samples;
    int interior = 0;
    for (const auto& g : words) interior += domain_membership(p, g, normals) == Membership::Interior;
    if (interior > 1) ++rep.overlaps;
  }

  // coverage near H
  for (const auto& [k, m] : store.models()) {
    if (!contains_ray(m.cone, divisor("H"))) continue;
    for (int t = 0; t < 5; ++t) {
      auto gens = generators(m.cone);
      DivisorClass p = Rational(40) * divisor("H");
      for (const auto& g : gens) p += Rational(coef(rng)) * to_divisor(canonical_ray(g)) / Rational(canonical_ray(g)[3] + 1);
      ++rep.coverage_samples;
      bool covered = false;
      for (const auto& g : words)
        if (domain_membership(p, g, normals) != Membership::Outside) covered = true;
      if (!covered) ++rep.uncovered;
    }
  }
  return rep;
}

}  // namespace hmfan
