#pragma once

// Linear symmetries of the fan.
//
// FanSymmetry: the maps induced by automorphisms (translations T(x,y) and the
// point reflection iota). They preserve Q and the Gamma functional.
//
// Frame: any linear symmetry of the fan, tagged with its class in the
// quotient (fan symmetries)/(birational ones), a dihedral group of order 8
// generated by r = rho, d = delta, f = phi with f r f^-1 = d and f^2 = 1.
// Frames carry the canonical templates onto the cones of the fan; the tag
// is what separates marked models into isomorphism classes.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "hmfan/forms.hpp"
#include "hmfan/matrix.hpp"

namespace hmfan {

struct Translation {
  Rational x, y;
};
struct Iota {};
struct Composite {
  std::string word;
};
using Provenance = std::variant<Translation, Iota, Composite>;

inline bool lattice_point(const Rational& x, const Rational& y) {
  auto integral = [](const Rational& r) { return r.get_den() == 1; };
  return integral(2 * x) && integral(2 * y) && integral(x - y);
}

inline Mat4 translation_matrix(const Rational& x, const Rational& y) {
  Mat4 m = Mat4::identity();
  m(0, 1) = 2 * x;
  m(0, 2) = 2 * y;
  m(0, 3) = x * x + y * y;
  m(1, 3) = x;
  m(2, 3) = y;
  return m;
}

class FanSymmetry {
 public:
  const Mat4& matrix() const { return m_; }
  const Provenance& provenance() const { return prov_; }

  std::string word() const {
    if (auto t = std::get_if<Translation>(&prov_)) return "T(" + t->x.get_str() + "," + t->y.get_str() + ")";
    if (std::holds_alternative<Iota>(prov_)) return "i";
    return std::get<Composite>(prov_).word;
  }

  // If the matrix is a pure translation, its parameters.
  std::optional<Translation> as_translation() const {
    Mat4 t = translation_matrix(m_(1, 3), m_(2, 3));
    if (t == m_) return Translation{m_(1, 3), m_(2, 3)};
    return std::nullopt;
  }

  static FanSymmetry translation(const Rational& x, const Rational& y) {
    if (!lattice_point(x, y))
      throw LatticeViolation("T(" + x.get_str() + "," + y.get_str() + ") needs 2x, 2y, x-y integral");
    return FanSymmetry(translation_matrix(x, y), Translation{x, y});
  }
  static FanSymmetry iota() { return FanSymmetry(Mat4::diag(1, -1, -1, 1), Iota{}); }
  static FanSymmetry identity() { return translation(0, 0); }

  friend FanSymmetry compose(const FanSymmetry& g, const FanSymmetry& h) {
    return FanSymmetry(g.m_ * h.m_, Composite{g.word() + "*" + h.word()});
  }
  friend FanSymmetry inverse(const FanSymmetry& g) {
    if (auto t = std::get_if<Translation>(&g.prov_)) return translation(-t->x, -t->y);
    if (std::holds_alternative<Iota>(g.prov_)) return g;
    return FanSymmetry(g.m_.inverse(), Composite{"(" + g.word() + ")^-1"});
  }

 private:
  FanSymmetry(Mat4 m, Provenance p) : m_(std::move(m)), prov_(std::move(p)) { validate(); }

  void validate() const {
    Rational d = m_.det();
    if (d != 1 && d != -1) throw LatticeViolation("symmetry has determinant " + d.get_str());
    if (m_.transpose() * q_matrix() * m_ != q_matrix()) throw LatticeViolation("symmetry does not preserve Q");
    for (int j = 0; j < 4; ++j)
      if (m_(3, j) != (j == 3 ? 1 : 0)) throw LatticeViolation("symmetry does not preserve Gamma");
  }

  Mat4 m_;
  Provenance prov_;
};

inline DivisorClass act_on_divisor(const FanSymmetry& g, const DivisorClass& d) { return g.matrix() * d; }
inline CurveClass act_on_curve(const FanSymmetry& g, const CurveClass& c) {
  return g.matrix().contragredient() * c;
}

// --- the quotient group --------------------------------------------------

// r^a d^b f^c.
struct SymLabel {
  int a = 0, b = 0, c = 0;

  friend SymLabel operator*(const SymLabel& x, const SymLabel& y) {
    int a2 = x.c ? y.b : y.a;
    int b2 = x.c ? y.a : y.b;
    return {(x.a + a2) % 2, (x.b + b2) % 2, (x.c + y.c) % 2};
  }
  SymLabel inverse() const {
    // (r^a d^b f)^-1 = f r^a d^b = r^b d^a f
    return c ? SymLabel{b, a, 1} : *this;
  }
  friend bool operator==(const SymLabel&, const SymLabel&) = default;
  friend auto operator<=>(const SymLabel&, const SymLabel&) = default;

  std::string str() const {
    std::string s = std::string(a ? "r" : "") + (b ? "d" : "") + (c ? "f" : "");
    return s.empty() ? "e" : s;
  }
  static SymLabel parse(std::string_view s) {
    SymLabel l;
    if (s == "e") return l;
    for (char ch : s) {
      if (ch == 'r') l.a = 1;
      else if (ch == 'd') l.b = 1;
      else if (ch == 'f') l.c = 1;
      else throw ParseError("bad label '" + std::string(s) + "'");
    }
    return l;
  }
};

struct Frame {
  Mat4 m = Mat4::identity();
  SymLabel label;

  friend Frame operator*(const Frame& g, const Frame& h) { return {g.m * h.m, g.label * h.label}; }
  Frame inverse() const { return {m.inverse(), label.inverse()}; }
  template <class Tag>
  ClassVector<Tag> operator()(const ClassVector<Tag>& v) const {
    if constexpr (std::is_same_v<Tag, DivisorTag>)
      return m * v;
    else
      return m.contragredient() * v;
  }
};

inline Frame frame_of(const FanSymmetry& g) { return {g.matrix(), {}}; }

// rho fixes d1, d2, d4 and negates d3; delta swaps d2 and d3. Together they
// generate the dihedral stabilizer of H in the fan symmetries.
inline Frame rho_frame() { return {Mat4::diag(1, 1, -1, 1), {1, 0, 0}}; }
inline Frame delta_frame() {
  Mat4 m;
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return {m, {0, 1, 0}};
}

// phi sends the top pyramid at H onto the pyramid over the L1 face:
// H -> Delta1, A -> A'' = 5 Delta1 - A, Nabla1 -> H', Nabla2 -> Nabla'2.
// It is not Q-preserving and swaps the two kinds of H-class rays.
inline Frame phi_frame() {
  static const Frame phi = [] {
    const auto& R = registry();
    Mat4 src = Mat4::from_columns({R.divisor("H"), R.divisor("A"), R.divisor("Nabla1"), R.divisor("Nabla2")});
    Mat4 dst = Mat4::from_columns({R.divisor("Delta1"), R.divisor("APP"), R.divisor("HP"), R.divisor("NablaP2")});
    return Frame{dst * src.inverse(), {0, 0, 1}};
  }();
  return phi;
}

// Letters: a=T(1/2,1/2) b=T(1/2,-1/2) A=T(-1/2,-1/2) B=T(-1/2,1/2)
// i=iota R=T(-1,0)iota r=rho d=delta f=phi F=phi^-1.
inline Frame frame_letter(char ch) {
  auto t = [](long xn, long xd, long yn, long yd) {
    return frame_of(FanSymmetry::translation(rat(xn, xd), rat(yn, yd)));
  };
  switch (ch) {
    case 'a': return t(1, 2, 1, 2);
    case 'b': return t(1, 2, -1, 2);
    case 'A': return t(-1, 2, -1, 2);
    case 'B': return t(-1, 2, 1, 2);
    case 'i': return frame_of(FanSymmetry::iota());
    case 'R': return frame_of(compose(FanSymmetry::translation(-1, 0), FanSymmetry::iota()));
    case 'r': return rho_frame();
    case 'd': return delta_frame();
    case 'f': return phi_frame();
    case 'F': return phi_frame().inverse();
    default: throw ParseError(std::string("unknown frame letter '") + ch + "'");
  }
}

inline Frame frame_word(std::string_view w) {
  Frame g;
  for (char ch : w) g = g * frame_letter(ch);
  return g;
}

inline nlohmann::json symmetry_json(const FanSymmetry& g) {
  return {{"provenance", g.word()}, {"matrix", matrix_json(g.matrix())}};
}

}  // namespace hmfan
