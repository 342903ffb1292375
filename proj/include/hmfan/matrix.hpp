#pragma once

#include <array>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hmfan/lattice.hpp"

namespace hmfan {

// Exact 4x4 matrix acting on column coordinate vectors.
struct Mat4 {
  std::array<std::array<Rational, 4>, 4> a{};

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m.a[i][i] = 1;
    return m;
  }
  static Mat4 diag(long d0, long d1, long d2, long d3) {
    Mat4 m;
    m.a[0][0] = d0, m.a[1][1] = d1, m.a[2][2] = d2, m.a[3][3] = d3;
    return m;
  }
  // Matrix whose columns are the given divisor classes.
  static Mat4 from_columns(const std::array<DivisorClass, 4>& cols) {
    Mat4 m;
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) m.a[i][j] = cols[j][i];
    return m;
  }

  Rational& operator()(int i, int j) { return a[i][j]; }
  const Rational& operator()(int i, int j) const { return a[i][j]; }

  friend Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rational s = 0;
        for (int k = 0; k < 4; ++k) s += x.a[i][k] * y.a[k][j];
        m.a[i][j] = s;
      }
    return m;
  }
  template <class Tag>
  friend ClassVector<Tag> operator*(const Mat4& m, const ClassVector<Tag>& v) {
    ClassVector<Tag> out;
    for (int i = 0; i < 4; ++i) {
      Rational s = 0;
      for (int k = 0; k < 4; ++k) s += m.a[i][k] * v[k];
      out[i] = s;
    }
    return out;
  }
  friend bool operator==(const Mat4& x, const Mat4& y) { return x.a == y.a; }
  friend bool operator<(const Mat4& x, const Mat4& y) { return x.a < y.a; }

  Mat4 transpose() const {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m.a[i][j] = a[j][i];
    return m;
  }

  Rational det() const {
    auto w = a;
    Rational d = 1;
    for (int col = 0; col < 4; ++col) {
      int piv = -1;
      for (int r = col; r < 4; ++r)
        if (w[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      if (piv != col) {
        std::swap(w[piv], w[col]);
        d = -d;
      }
      d *= w[col][col];
      for (int r = col + 1; r < 4; ++r) {
        Rational f = w[r][col] / w[col][col];
        for (int k = col; k < 4; ++k) w[r][k] -= f * w[col][k];
      }
    }
    return d;
  }

  Mat4 inverse() const {
    auto w = a;
    Mat4 inv = identity();
    for (int col = 0; col < 4; ++col) {
      int piv = -1;
      for (int r = col; r < 4; ++r)
        if (w[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) throw SingularFrame("matrix is not invertible");
      std::swap(w[piv], w[col]);
      std::swap(inv.a[piv], inv.a[col]);
      Rational p = w[col][col];
      for (int k = 0; k < 4; ++k) {
        w[col][k] /= p;
        inv.a[col][k] /= p;
      }
      for (int r = 0; r < 4; ++r) {
        if (r == col || w[r][col] == 0) continue;
        Rational f = w[r][col];
        for (int k = 0; k < 4; ++k) {
          w[r][k] -= f * w[col][k];
          inv.a[r][k] -= f * inv.a[col][k];
        }
      }
    }
    return inv;
  }

  // Contragredient: pair(m^{-T} c, m d) = pair(c, d).
  Mat4 contragredient() const { return inverse().transpose(); }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < 4; ++i) {
      if (i) s += "; ";
      for (int j = 0; j < 4; ++j) {
        if (j) s += ",";
        s += a[i][j].get_str();
      }
    }
    return s + "]";
  }
};

inline std::ostream& operator<<(std::ostream& os, const Mat4& m) { return os << m.str(); }

inline nlohmann::json matrix_json(const Mat4& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) row.push_back(m.a[i][j].get_str());
    rows.push_back(row);
  }
  return rows;
}

inline Mat4 matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw ParseError("matrix needs 4 rows");
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4) throw ParseError("matrix row needs 4 entries");
    for (int k = 0; k < 4; ++k) m.a[i][k] = rational_from_json(j[i][k]);
  }
  return m;
}

// Solve for the divisor D with pair(curves[i], D) = values[i]; the system may
// be overdetermined but must be consistent and of rank 4.
inline DivisorClass solve_pairings(const std::vector<CurveClass>& curves,
                                   const std::vector<Rational>& values) {
  const std::size_t n = curves.size();
  if (n != values.size()) throw DegenerateInput("curve/value count mismatch");
  std::vector<std::array<Rational, 5>> rows(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (int k = 0; k < 4; ++k) rows[r][k] = curves[r][k];
    rows[r][4] = values[r];
  }
  std::size_t rank = 0;
  std::array<int, 4> pivcol{};
  for (int col = 0; col < 4 && rank < n; ++col) {
    std::size_t piv = rank;
    while (piv < n && rows[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(rows[piv], rows[rank]);
    Rational p = rows[rank][col];
    for (auto& x : rows[rank]) x /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (int k = 0; k < 5; ++k) rows[r][k] -= f * rows[rank][k];
    }
    pivcol[rank] = col;
    ++rank;
  }
  if (rank < 4) throw DegenerateInput("pairing system has rank " + std::to_string(rank));
  for (std::size_t r = rank; r < n; ++r)
    if (rows[r][4] != 0) throw InconsistentPairings("overdetermined pairing system is inconsistent");
  DivisorClass d;
  for (std::size_t r = 0; r < 4; ++r) d[pivcol[r]] = rows[r][4];
  return d;
}

}  // namespace hmfan
