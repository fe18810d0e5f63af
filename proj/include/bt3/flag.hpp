#pragma once

#include <array>

#include "bt3/matrix.hpp"

namespace bt3 {

/// Complete flag <f1> in <f1,f2> of Q^3 in canonical form: f1 has leading entry 1
/// at index i1; f2 vanishes at i1 and has leading entry 1.
class Flag {
 public:
  /// Throws DomainError when the vectors are dependent.
  Flag(const Vec3& line, const Vec3& plane_vector);

  /// Uses columns 0 and 1 of m.
  static Flag from_matrix(const Mat3& m);
  /// e1 in <e1,e2>.
  static Flag standard();
  /// e3 in <e2,e3>.
  static Flag reversed();

  const Vec3& line() const { return line_; }
  const Vec3& plane_vector() const { return second_; }
  Vec3 plane_normal() const;
  /// Columns f1, f2 and a coordinate vector completing them to a basis.
  Mat3 matrix() const;

  Flag transformed(const Mat3& g) const;

  friend bool operator==(const Flag& a, const Flag& b) { return a.line_ == b.line_ && a.second_ == b.second_; }
  friend bool operator<(const Flag& a, const Flag& b);

 private:
  Vec3 line_;
  Vec3 second_;
};

/// Three independent lines, each normalized to leading entry 1, in decreasing lexicographic order
/// (so the standard frame has basis e1, e2, e3).
class Frame {
 public:
  /// Throws DomainError when the lines are dependent.
  Frame(const Vec3& a, const Vec3& b, const Vec3& c);
  static Frame from_matrix(const Mat3& m);
  static Frame standard();

  const Vec3& line(int i) const { return lines_[i]; }
  const std::array<Vec3, 3>& lines() const { return lines_; }
  /// Lines as columns in canonical order.
  Mat3 basis() const;
  /// Index of the frame line spanning the same line as v, or -1.
  int index_of(const Vec3& v) const;

  Frame transformed(const Mat3& g) const;

  friend bool operator==(const Frame& a, const Frame& b) { return a.lines_ == b.lines_; }

 private:
  std::array<Vec3, 3> lines_;
};

bool same_line(const Vec3& a, const Vec3& b);

}  // namespace bt3
