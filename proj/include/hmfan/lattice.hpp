#pragma once

// Divisor and curve classes in N and its dual, the intersection pairing,
// and the registry of named classes.
//
// Divisor coordinates are taken in the basis {A, 2H-Delta1, 2H-Delta2, H};
// curve coordinates in the dual basis {(L1+L3)/2, (L1-L3)/2, (L2-L4)/2, Gamma}.

#include <array>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hmfan/rational.hpp"

namespace hmfan {

template <class Tag>
struct ClassVector {
  std::array<Rational, 4> c{};

  ClassVector() = default;
  ClassVector(Rational a, Rational b, Rational x, Rational y)
      : c{std::move(a), std::move(b), std::move(x), std::move(y)} {
    for (auto& v : c) v.canonicalize();
  }
  explicit ClassVector(const std::array<Rational, 4>& v) : c(v) {}

  Rational& operator[](std::size_t i) { return c[i]; }
  const Rational& operator[](std::size_t i) const { return c[i]; }

  bool is_zero() const {
    for (const auto& v : c)
      if (v != 0) return false;
    return true;
  }

  friend ClassVector operator+(ClassVector a, const ClassVector& b) {
    for (int i = 0; i < 4; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend ClassVector operator-(ClassVector a, const ClassVector& b) {
    for (int i = 0; i < 4; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend ClassVector operator-(ClassVector a) {
    for (auto& v : a.c) v = -v;
    return a;
  }
  friend ClassVector operator*(const Rational& s, ClassVector a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
  friend ClassVector operator*(ClassVector a, const Rational& s) { return s * std::move(a); }
  friend ClassVector operator/(ClassVector a, const Rational& s) {
    for (auto& v : a.c) v /= s;
    return a;
  }
  ClassVector& operator+=(const ClassVector& b) { return *this = *this + b; }
  ClassVector& operator-=(const ClassVector& b) { return *this = *this - b; }

  friend bool operator==(const ClassVector& a, const ClassVector& b) { return a.c == b.c; }
  friend bool operator<(const ClassVector& a, const ClassVector& b) { return a.c < b.c; }
};

struct DivisorTag {};
struct CurveTag {};
using DivisorClass = ClassVector<DivisorTag>;
using CurveClass = ClassVector<CurveTag>;

inline Rational pair(const CurveClass& c, const DivisorClass& d) {
  Rational s = 0;
  for (int i = 0; i < 4; ++i) s += c[i] * d[i];
  return s;
}

inline DivisorClass divisor_from_pairings(const Rational& l1, const Rational& l2, const Rational& l3,
                                          const Rational& l4, const Rational& g) {
  if (l1 + l3 != l2 + l4)
    throw InconsistentPairings("L1+L3=" + to_string(Rational(l1 + l3)) +
                               " but L2+L4=" + to_string(Rational(l2 + l4)));
  return DivisorClass((l1 + l3) / 2, (l1 - l3) / 2, (l2 - l4) / 2, g);
}

// --- canonical rays -------------------------------------------------------

using IntRay = std::array<Integer, 4>;

template <class Tag>
IntRay canonical_ray(const ClassVector<Tag>& v) {
  if (v.is_zero()) throw DegenerateInput("zero vector has no ray");
  Integer l = 1;
  for (const auto& x : v.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntRay out;
  Integer g = 0;
  for (int i = 0; i < 4; ++i) {
    Rational s = v[i] * l;
    out[i] = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  for (auto& x : out) x /= g;
  return out;
}

inline std::string ray_key(const IntRay& r) {
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (i) s += ',';
    s += r[i].get_str();
  }
  return s;
}

template <class Tag>
std::string ray_key(const ClassVector<Tag>& v) {
  return ray_key(canonical_ray(v));
}

inline DivisorClass to_divisor(const IntRay& r) {
  return DivisorClass(Rational(r[0]), Rational(r[1]), Rational(r[2]), Rational(r[3]));
}
inline CurveClass to_curve(const IntRay& r) {
  return CurveClass(Rational(r[0]), Rational(r[1]), Rational(r[2]), Rational(r[3]));
}

template <class Tag>
bool same_ray(const ClassVector<Tag>& a, const ClassVector<Tag>& b) {
  return canonical_ray(a) == canonical_ray(b);
}

// --- registry -------------------------------------------------------------

// Intersection numbers of the curves {Gamma, L1..L4} (rows) with the divisors
// {H, A, Delta1..4, Nabla1..4, Nabla'1..4} (columns).
inline constexpr std::array<const char*, 14> kTableDivisors = {
    "H", "A", "Delta1", "Delta2", "Delta3", "Delta4", "Nabla1",
    "Nabla2", "Nabla3", "Nabla4", "NablaP1", "NablaP2", "NablaP3", "NablaP4"};
inline constexpr std::array<const char*, 5> kTableCurves = {"Gamma", "Lambda1", "Lambda2", "Lambda3",
                                                            "Lambda4"};
inline constexpr int kIntersectionTable[5][14] = {
    {1, 0, 2, 2, 2, 2, 3, 3, 3, 3, 1, 1, 1, 1},
    {0, 1, -1, 0, 1, 0, 0, 0, -1, -1, 0, 0, 1, 1},
    {0, 1, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0, 0, 1},
    {0, 1, 1, 0, -1, 0, -1, -1, 0, 0, 1, 1, 0, 0},
    {0, 1, 0, 1, 0, -1, 0, -1, -1, 0, 0, 1, 1, 0},
};

class Registry {
 public:
  Registry() {
    for (int j = 0; j < 14; ++j) {
      auto v = [&](int row) { return rat(kIntersectionTable[row][j]); };
      divisors_[kTableDivisors[j]] = divisor_from_pairings(v(1), v(2), v(3), v(4), v(0));
    }
    const auto& H = divisors_["H"];
    const auto& A = divisors_["A"];
    divisors_["HP"] = divisors_["NablaP1"] + divisors_["NablaP2"] - H;
    divisors_["AP"] = rat(5) * H - A;
    divisors_["APP"] = rat(5) * divisors_["Delta1"] - A;

    curves_["Gamma"] = CurveClass(0, 0, 0, 1);
    curves_["Lambda1"] = CurveClass(1, 1, 0, 0);
    curves_["Lambda2"] = CurveClass(1, 0, 1, 0);
    curves_["Lambda3"] = CurveClass(1, -1, 0, 0);
    curves_["Lambda4"] = CurveClass(1, 0, -1, 0);
    curves_["LambdaP"] = rat(3) * (curves_["Lambda1"] + curves_["Lambda3"]) + curves_["Gamma"];
  }

  const std::map<std::string, DivisorClass>& divisors() const { return divisors_; }
  const std::map<std::string, CurveClass>& curves() const { return curves_; }

  bool has_divisor(std::string_view name) const { return divisors_.count(resolve(name)) > 0; }
  bool has_curve(std::string_view name) const { return curves_.count(resolve(name)) > 0; }

  const DivisorClass& divisor(std::string_view name) const {
    auto it = divisors_.find(resolve(name));
    if (it == divisors_.end()) throw UnknownName(std::string(name));
    return it->second;
  }
  const CurveClass& curve(std::string_view name) const {
    auto it = curves_.find(resolve(name));
    if (it == curves_.end()) throw UnknownName(std::string(name));
    return it->second;
  }

  // Accepts the ASCII names above and the usual typeset spellings.
  static std::string resolve(std::string_view name) {
    static const std::map<std::string, std::string, std::less<>> aliases = [] {
      std::map<std::string, std::string, std::less<>> m;
      const char* sub[] = {"₁", "₂", "₃", "₄"};
      for (int i = 0; i < 4; ++i) {
        std::string k = std::to_string(i + 1);
        m[std::string("Δ") + sub[i]] = "Delta" + k;
        m[std::string("∇") + sub[i]] = "Nabla" + k;
        m[std::string("∇′") + sub[i]] = "NablaP" + k;
        m[std::string("∇'") + sub[i]] = "NablaP" + k;
        m[std::string("Λ") + sub[i]] = "Lambda" + k;
      }
      m["H′"] = m["H'"] = "HP";
      m["A′"] = m["A'"] = "AP";
      m["A″"] = m["A''"] = "APP";
      m["Γ"] = "Gamma";
      m["Λ′"] = m["Λ'"] = "LambdaP";
      return m;
    }();
    auto it = aliases.find(name);
    return it == aliases.end() ? std::string(name) : it->second;
  }

 private:
  std::map<std::string, DivisorClass> divisors_;
  std::map<std::string, CurveClass> curves_;
};

inline const Registry& registry() {
  static const Registry r;
  return r;
}

inline const DivisorClass& divisor(std::string_view name) { return registry().divisor(name); }
inline const CurveClass& curve(std::string_view name) { return registry().curve(name); }

// --- serialization --------------------------------------------------------

inline nlohmann::json rational_json(const Rational& r) {
  return nlohmann::json::array({r.get_num().get_str(), r.get_den().get_str()});
}

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_array() && j.size() == 2) {
    auto part = [](const nlohmann::json& x) {
      return x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>());
    };
    return parse_rational(part(j[0]) + "/" + part(j[1]));
  }
  throw ParseError("bad rational json " + j.dump());
}

template <class Tag>
nlohmann::json class_json(const ClassVector<Tag>& v, const char* name = nullptr) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& x : v.c) coords.push_back(rational_json(x));
  return {{"name", name ? nlohmann::json(name) : nlohmann::json(nullptr)},
          {"kind", std::is_same_v<Tag, DivisorTag> ? "divisor" : "curve"},
          {"coords", coords}};
}

template <class Tag>
ClassVector<Tag> class_from_json(const nlohmann::json& j) {
  const auto& coords = j.at("coords");
  if (coords.size() != 4) throw ParseError("class needs 4 coordinates");
  ClassVector<Tag> v;
  for (int i = 0; i < 4; ++i) v[i] = rational_from_json(coords[i]);
  return v;
}

template <class Tag>
std::string to_string(const ClassVector<Tag>& v) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

template <class Tag>
std::ostream& operator<<(std::ostream& os, const ClassVector<Tag>& v) {
  return os << to_string(v);
}

// "(a/b, c, d, e)"
inline DivisorClass parse_divisor(std::string_view text) {
  std::string s(text);
  auto l = s.find('('), r = s.rfind(')');
  if (l == std::string::npos || r == std::string::npos || r < l)
    throw ParseError("divisor literal must look like (a/b, c, d, e)");
  std::string body = s.substr(l + 1, r - l - 1);
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',') {
      parts.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 4) throw ParseError("divisor literal needs 4 coordinates");
  return DivisorClass(parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]),
                      parse_rational(parts[3]));
}

}  // namespace hmfan
