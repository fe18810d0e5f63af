#include "bt3/matrix.hpp"

#include <utility>

namespace bt3 {

Mat3 Mat3::identity() { return diag(1, 1, 1); }

Mat3 Mat3::diag(const Rational& a, const Rational& b, const Rational& c) {
  Mat3 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 m;
  m.set_column(0, c0);
  m.set_column(1, c1);
  m.set_column(2, c2);
  return m;
}

Mat3 Mat3::from_rows(const std::array<std::array<Rational, 3>, 3>& rows) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = rows[r][c];
  return m;
}

void Mat3::set_column(int c, const Vec3& v) {
  for (int r = 0; r < 3; ++r) a_[3 * r + c] = v[r];
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Rational s = (*this)(r, 0) * o(0, c);
      s += (*this)(r, 1) * o(1, c);
      s += (*this)(r, 2) * o(2, c);
      m(r, c) = std::move(s);
    }
  return m;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  Vec3 out;
  for (int r = 0; r < 3; ++r) out[r] = (*this)(r, 0) * v[0] + (*this)(r, 1) * v[1] + (*this)(r, 2) * v[2];
  return out;
}

Mat3 Mat3::transposed() const {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = (*this)(c, r);
  return m;
}

Rational Mat3::det() const { return det3(column(0), column(1), column(2)); }

Mat3 Mat3::inverse() const {
  const Mat3& m = *this;
  Rational d = det();
  if (sgn(d) == 0) throw DomainError("inverse of singular matrix");
  Mat3 adj;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      int r1 = (c + 1) % 3, r2 = (c + 2) % 3, c1 = (r + 1) % 3, c2 = (r + 2) % 3;
      adj(r, c) = (m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1)) / d;
    }
  return adj;
}

int compare(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

int compare(const Mat3& a, const Mat3& b) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      int s = cmp(a(r, c), b(r, c));
      if (s != 0) return s < 0 ? -1 : 1;
    }
  return 0;
}

Rational dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 scaled(const Vec3& v, const Rational& s) { return {v[0] * s, v[1] * s, v[2] * s}; }

bool is_zero(const Vec3& v) { return sgn(v[0]) == 0 && sgn(v[1]) == 0 && sgn(v[2]) == 0; }

Rational det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

int rank(std::vector<Vec3> v) {
  int rk = 0;
  for (int col = 0; col < 3 && rk < static_cast<int>(v.size()); ++col) {
    std::size_t piv = rk;
    while (piv < v.size() && sgn(v[piv][col]) == 0) ++piv;
    if (piv == v.size()) continue;
    std::swap(v[rk], v[piv]);
    for (std::size_t i = rk + 1; i < v.size(); ++i) {
      if (sgn(v[i][col]) == 0) continue;
      Rational f = v[i][col] / v[rk][col];
      for (int k = col; k < 3; ++k) v[i][k] -= f * v[rk][k];
    }
    ++rk;
  }
  return rk;
}

Vec3 normalize_line(const Vec3& v) {
  for (int i = 0; i < 3; ++i)
    if (sgn(v[i]) != 0) {
      Rational inv = 1 / v[i];
      return scaled(v, inv);
    }
  throw DomainError("normalize_line: zero vector");
}

Mat3 power(const Mat3& m, long n) {
  Mat3 base = n < 0 ? m.inverse() : m;
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  Mat3 acc = Mat3::identity();
  while (e != 0) {
    if (e & 1UL) acc = acc * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return acc;
}

}  // namespace bt3
