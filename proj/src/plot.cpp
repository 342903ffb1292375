#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "hmfan/cli.hpp"

namespace hmfan::plot {

namespace {

using cli::Format;

// Minimal SVG canvas mapping a data box onto a fixed pixel frame.
class Svg {
 public:
  Svg(double x0, double y0, double x1, double y1, int width = 640, int height = 640)
      : x0_(x0), y0_(y0), x1_(x1), y1_(y1), w_(width), h_(height) {
    out_ << std::fixed << std::setprecision(3);
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_ << "\" viewBox=\"0 0 "
         << w_ << ' ' << h_ << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  double px(double x) const { return kMargin + (x - x0_) / (x1_ - x0_) * (w_ - 2 * kMargin); }
  double py(double y) const { return h_ - kMargin - (y - y0_) / (y1_ - y0_) * (h_ - 2 * kMargin); }

  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill, const std::string& stroke) {
    out_ << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) out_ << (i ? " " : "") << px(pts[i].first) << ',' << py(pts[i].second);
    out_ << "\" fill=\"" << fill << "\" fill-opacity=\"0.35\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
  }
  void dot(double x, double y, const std::string& colour, double r = 2.0) {
    out_ << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"" << r << "\" fill=\"" << colour << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 12) {
    out_ << "<text x=\"" << px(x) << "\" y=\"" << py(y) << "\" font-family=\"monospace\" font-size=\"" << size
         << "\">" << s << "</text>\n";
  }
  void raw(const std::string& s) { out_ << s; }
  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  static constexpr double kMargin = 30;
  double x0_, y0_, x1_, y1_;
  int w_, h_;
  std::ostringstream out_;
};

double d(const Rational& r) { return r.get_d(); }

std::vector<std::pair<Rational, Rational>> centres(const Rational& window) {
  std::vector<std::pair<Rational, Rational>> out;
  Integer lim = floor_of(2 * window);
  for (Integer i = -lim; i <= lim; ++i)
    for (Integer j = -lim; j <= lim; ++j) {
      Rational p(i, 2), q(j, 2);
      p.canonicalize(), q.canonicalize();
      if (square_center(p, q)) out.emplace_back(p, q);
    }
  return out;
}

}  // namespace

// The slice d4 = 1 of the canonical tiling, drawn in the (d2, d3) plane.
std::string tiling(Format f, const Rational& window) {
  Cone t = canonical_tiling();
  auto cs = centres(window);
  if (f == Format::Csv || f == Format::Json) {
    std::ostringstream s;
    nlohmann::json j = nlohmann::json::array();
    if (f == Format::Csv) s << "centre_p,centre_q,corner,d1,d2,d3,d4\n";
    for (const auto& [p, q] : cs) {
      auto tf = tiling_facet(t, p, q);
      nlohmann::json sq{{"centre", {p.get_str(), q.get_str()}}, {"normal", to_string(tf.normal)}};
      for (int k = 0; k < 4; ++k) {
        const auto& v = tf.rays[k];
        if (f == Format::Csv)
          s << p.get_str() << ',' << q.get_str() << ',' << k << ',' << v[0].get_str() << ',' << v[1].get_str() << ','
            << v[2].get_str() << ',' << v[3].get_str() << '\n';
        sq["corners"].push_back(to_string(v));
      }
      j.push_back(sq);
    }
    return f == Format::Csv ? s.str() : j.dump(2) + "\n";
  }
  if (f != Format::Svg) throw ParseError("tiling plot supports csv, svg or json");
  double w = d(window) + 1;
  Svg svg(-w, -w, w, w);
  for (const auto& [p, q] : cs) {
    auto corners = square_corners(p, q);
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : corners) pts.emplace_back(d(x), d(y));
    bool dark = (Rational(p + q + Rational(1, 2)).get_num() % 2) == 0;
    svg.polygon(pts, dark ? "#88a" : "#ccd", "#223");
  }
  for (const auto& [p, q] : cs)
    for (const auto& [x, y] : square_corners(p, q)) svg.dot(d(x), d(y), "#223", 2.5);
  svg.dot(0, 0, "#c22", 4);
  svg.text(0.05, 0.05, "H");
  return svg.finish();
}

// The vertex figure at H: one face per cone containing H, vertices at the
// neighbouring rays in the slice d4 = 1 centred at H.
std::string cubocta(Format f) {
  FanStore store = explore(4);
  const DivisorClass& H = divisor("H");
  auto cones = cones_at_ray(H, store);
  auto coords = [&](const IntRay& r) {
    DivisorClass v = to_divisor(r);
    DivisorClass w = v / v[3] - H;
    // oblique view of (d1, d2, d3)
    return std::make_pair(Rational(w[1] + w[0] / 3), Rational(w[2] + w[0] / 5));
  };
  struct Face {
    std::string type, key;
    std::vector<IntRay> verts;
  };
  std::vector<Face> faces;
  for (const auto* m : cones) {
    auto vs = edge_neighbors(*m, H);
    // cyclic order around the centroid
    double cx = 0, cy = 0;
    for (const auto& v : vs) cx += d(coords(v).first), cy += d(coords(v).second);
    cx /= vs.size(), cy /= vs.size();
    std::sort(vs.begin(), vs.end(), [&](const IntRay& a, const IntRay& b) {
      auto pa = coords(a), pb = coords(b);
      return std::atan2(d(pa.second) - cy, d(pa.first) - cx) < std::atan2(d(pb.second) - cy, d(pb.first) - cx);
    });
    faces.push_back({to_string(m->type()), m->key, vs});
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) { return a.key < b.key; });
  if (f == Format::Csv) {
    std::ostringstream s;
    s << "face,type,vertex,ray,x,y\n";
    for (std::size_t i = 0; i < faces.size(); ++i)
      for (std::size_t k = 0; k < faces[i].verts.size(); ++k) {
        auto [x, y] = coords(faces[i].verts[k]);
        s << i << ',' << faces[i].type << ',' << k << ",\"" << ray_key(faces[i].verts[k]) << "\"," << x.get_str() << ','
          << y.get_str() << '\n';
      }
    return s.str();
  }
  if (f == Format::Json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& fc : faces) {
      nlohmann::json jf{{"type", fc.type}, {"cone", fc.key}};
      for (const auto& v : fc.verts) jf["vertices"].push_back(ray_key(v));
      j.push_back(jf);
    }
    return j.dump(2) + "\n";
  }
  if (f != Format::Svg) throw ParseError("cubocta plot supports csv, svg or json");
  Svg svg(-0.9, -0.9, 0.9, 0.9);
  const std::map<std::string, std::string> fill{{"tiling", "#4a7"}, {"pyramid", "#d84"}, {"lozengoid", "#68c"}};
  for (const auto& fc : faces) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : fc.verts) pts.emplace_back(d(coords(v).first), d(coords(v).second));
    svg.polygon(pts, fill.at(fc.type), "#222");
  }
  std::set<IntRay> all;
  for (const auto& fc : faces) all.insert(fc.verts.begin(), fc.verts.end());
  for (const auto& v : all) svg.dot(d(coords(v).first), d(coords(v).second), "#111", 3);
  return svg.finish();
}

// Slice points of boundary rays on the two quadrics, in both projections.
std::string dotplot(Format f, std::size_t n, int digits) {
  auto rays = dotplot_rays(n);
  CurveClass slice = default_slice();
  struct Row {
    std::string seed, quadric, ray;
    std::pair<Rational, Rational> a, b;
  };
  std::vector<Row> rows;
  for (const auto& r : rays) {
    DivisorClass p = slice_point(r.ray, slice);
    rows.push_back({r.source, r.quadric ? r.quadric->get_str() : "undefined", to_string(r.ray),
                    project(p, Projection::Plane23), project(p, Projection::Residual)});
  }
  if (f == Format::Csv) {
    std::ostringstream s;
    s << "seed,quadric,ray,x1,y1,x2,y2\n";
    for (const auto& r : rows)
      s << r.seed << ',' << r.quadric << ",\"" << r.ray << "\"," << to_decimal(r.a.first, digits) << ','
        << to_decimal(r.a.second, digits) << ',' << to_decimal(r.b.first, digits) << ','
        << to_decimal(r.b.second, digits) << '\n';
    return s.str();
  }
  if (f == Format::Json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows)
      j.push_back({{"seed", r.seed},
                   {"quadric", r.quadric},
                   {"ray", r.ray},
                   {"plane23", {r.a.first.get_str(), r.a.second.get_str()}},
                   {"residual", {r.b.first.get_str(), r.b.second.get_str()}}});
    return j.dump(2) + "\n";
  }
  if (f != Format::Svg) throw ParseError("dotplot supports csv, svg or json");
  double m1 = 0.1, m2 = 0.1;
  for (const auto& r : rows) {
    m1 = std::max({m1, std::abs(d(r.a.first)), std::abs(d(r.a.second))});
    m2 = std::max({m2, std::abs(d(r.b.first)), std::abs(d(r.b.second))});
  }
  // two panels side by side, each in its own coordinate box
  Svg left(-m1, -m1, m1, m1), right(-m2, -m2, m2, m2);
  std::ostringstream body;
  body << std::fixed << std::setprecision(3);
  body << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1280\" height=\"640\" viewBox=\"0 0 1280 640\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int panel = 0; panel < 2; ++panel) {
    const Svg& s = panel ? right : left;
    body << "<g transform=\"translate(" << panel * 640 << ",0)\">\n";
    body << "<text x=\"40\" y=\"20\" font-family=\"monospace\" font-size=\"12\">"
         << to_string(panel ? Projection::Residual : Projection::Plane23) << "</text>\n";
    for (const auto& r : rows) {
      const auto& xy = panel ? r.b : r.a;
      body << "<circle cx=\"" << s.px(d(xy.first)) << "\" cy=\"" << s.py(d(xy.second)) << "\" r=\"2\" fill=\""
           << (r.seed == "AP" ? "#c33" : "#36c") << "\"/>\n";
    }
    body << "<circle cx=\"" << s.px(0) << "\" cy=\"" << s.py(0) << "\" r=\"4\" fill=\"none\" stroke=\"#000\"/>\n";
    body << "</g>\n";
  }
  body << "</svg>\n";
  return body.str();
}

}  // namespace hmfan::plot
