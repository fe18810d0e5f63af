#pragma once

#include <array>
#include <vector>

#include "bt3/padic.hpp"

namespace bt3 {

using Vec3 = std::array<Rational, 3>;

/// 3x3 matrix of exact rationals, row-major.
class Mat3 {
 public:
  Mat3() = default;

  static Mat3 identity();
  static Mat3 diag(const Rational& a, const Rational& b, const Rational& c);
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);
  static Mat3 from_rows(const std::array<std::array<Rational, 3>, 3>& rows);

  Rational& operator()(int r, int c) { return a_[3 * r + c]; }
  const Rational& operator()(int r, int c) const { return a_[3 * r + c]; }

  Vec3 column(int c) const { return {a_[c], a_[3 + c], a_[6 + c]}; }
  void set_column(int c, const Vec3& v);

  Mat3 operator*(const Mat3& o) const;
  Vec3 operator*(const Vec3& v) const;
  Mat3 transposed() const;
  Rational det() const;
  /// Throws DomainError when singular.
  Mat3 inverse() const;

  friend bool operator==(const Mat3& a, const Mat3& b) { return a.a_ == b.a_; }

 private:
  std::array<Rational, 9> a_;
};

/// Lexicographic three-way comparison (row-major entries).
int compare(const Mat3& a, const Mat3& b);
int compare(const Vec3& a, const Vec3& b);

Rational dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Vec3 scaled(const Vec3& v, const Rational& s);
bool is_zero(const Vec3& v);
Rational det3(const Vec3& a, const Vec3& b, const Vec3& c);
/// Rank over Q of a family of vectors.
int rank(std::vector<Vec3> vectors);

/// Scales v so that its first nonzero entry is 1; v must be nonzero.
Vec3 normalize_line(const Vec3& v);

Mat3 power(const Mat3& m, long n);

}  // namespace bt3
