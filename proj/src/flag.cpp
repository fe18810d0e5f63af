#include "bt3/flag.hpp"

#include <algorithm>

namespace bt3 {

namespace {

int leading_index(const Vec3& v) {
  for (int i = 0; i < 3; ++i)
    if (sgn(v[i]) != 0) return i;
  return -1;
}

}  // namespace

bool same_line(const Vec3& a, const Vec3& b) { return is_zero(cross(a, b)) && !is_zero(a) && !is_zero(b); }

Flag::Flag(const Vec3& line, const Vec3& plane_vector) {
  if (is_zero(cross(line, plane_vector))) throw DomainError("flag vectors are dependent");
  line_ = normalize_line(line);
  int i1 = leading_index(line_);
  Vec3 f2 = plane_vector;
  Rational c = f2[i1];
  for (int i = 0; i < 3; ++i) f2[i] -= c * line_[i];
  second_ = normalize_line(f2);
}

Flag Flag::from_matrix(const Mat3& m) { return Flag(m.column(0), m.column(1)); }

Flag Flag::standard() { return Flag({1, 0, 0}, {0, 1, 0}); }

Flag Flag::reversed() { return Flag({0, 0, 1}, {0, 1, 0}); }

Vec3 Flag::plane_normal() const { return normalize_line(cross(line_, second_)); }

Mat3 Flag::matrix() const {
  int i1 = leading_index(line_), i2 = leading_index(second_);
  int k = 3 - i1 - i2;
  Vec3 e{0, 0, 0};
  e[k] = 1;
  return Mat3::from_columns(line_, second_, e);
}

Flag Flag::transformed(const Mat3& g) const { return Flag(g * line_, g * second_); }

bool operator<(const Flag& a, const Flag& b) {
  int c = compare(a.line_, b.line_);
  if (c != 0) return c < 0;
  return compare(a.second_, b.second_) < 0;
}

Frame::Frame(const Vec3& a, const Vec3& b, const Vec3& c) {
  if (sgn(det3(a, b, c)) == 0) throw DomainError("frame lines are dependent");
  lines_ = {normalize_line(a), normalize_line(b), normalize_line(c)};
  std::sort(lines_.begin(), lines_.end(), [](const Vec3& x, const Vec3& y) { return compare(x, y) > 0; });
}

Frame Frame::from_matrix(const Mat3& m) { return Frame(m.column(0), m.column(1), m.column(2)); }

Frame Frame::standard() { return Frame({1, 0, 0}, {0, 1, 0}, {0, 0, 1}); }

Mat3 Frame::basis() const { return Mat3::from_columns(lines_[0], lines_[1], lines_[2]); }

int Frame::index_of(const Vec3& v) const {
  for (int i = 0; i < 3; ++i)
    if (same_line(lines_[i], v)) return i;
  return -1;
}

Frame Frame::transformed(const Mat3& g) const { return Frame(g * lines_[0], g * lines_[1], g * lines_[2]); }

}  // namespace bt3
