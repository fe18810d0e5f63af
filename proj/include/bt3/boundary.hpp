#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "bt3/building.hpp"

namespace bt3 {

/// Raised when an iteration does not stabilize within its horizon.
class HorizonExceeded : public std::runtime_error {
 public:
  HorizonExceeded(const std::string& what, std::vector<Flag> trajectory = {}, std::vector<long> depths = {})
      : std::runtime_error(what), trajectory_(std::move(trajectory)), depths_(std::move(depths)) {}

  const std::vector<Flag>& trajectory() const { return trajectory_; }
  const std::vector<long>& depths() const { return depths_; }

 private:
  std::vector<Flag> trajectory_;
  std::vector<long> depths_;
};

/// Permutation of {0,1,2}, stored as images.
class WeylElement {
 public:
  WeylElement() : w_{0, 1, 2} {}
  /// Throws DomainError unless images is a permutation.
  explicit WeylElement(std::array<int, 3> images);

  static WeylElement longest() { return WeylElement({2, 1, 0}); }
  static std::array<WeylElement, 6> all();

  int operator()(int a) const { return w_[a]; }
  const std::array<int, 3>& images() const { return w_; }
  int length() const;

  friend bool operator==(const WeylElement&, const WeylElement&) = default;
  friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.w_ < b.w_; }

 private:
  std::array<int, 3> w_;
};

/// The w with dim(C_i ∩ D_j) = #{a <= i : w(a) <= j} (indices from 1).
WeylElement weyl_distance(const Flag& c, const Flag& d);
bool is_opposite(const Flag& c, const Flag& d);

/// Frame {C_1, C_2 ∩ D_2, D_1}; throws PreconditionError unless C, D are opposite.
Frame apartment_from_opposite(const Flag& c, const Flag& d);
/// The six chambers of the apartment at infinity, one per ordering of the lines.
std::array<Flag, 6> apartment_chambers(const Frame& f);
bool contains_chamber(const Frame& f, const Flag& c);
/// Frame lines as columns ordered by C: line of C, the other line in C's plane, the rest.
/// Throws PreconditionError when C is not a chamber of the apartment.
Mat3 ordered_frame_basis(const Frame& f, const Flag& c);

/// The sector Q(x,C): vertices [p^m1 b1, p^m2 b2, p^m3 b3] with m1 <= m2 <= m3 for a
/// C-adapted basis b of L_x.
class Sector {
 public:
  Sector(const LatticeVertex& x, const Flag& c);

  bool contains(const LatticeVertex& y) const;
  /// Vertex at exponents (0, t, 2t): theta = (2t, t, 0).
  LatticeVertex ray_vertex(long t) const;
  const Mat3& adapted() const { return basis_; }

 private:
  Mat3 basis_;
  Mat3 inverse_;
  Prime p_;
};

bool sector_membership(const LatticeVertex& x, const Flag& c, const LatticeVertex& y);
/// C ∈ U_x(y); throws PreconditionError when x and y have different types.
bool basis_set_contains(const LatticeVertex& x, const LatticeVertex& y, const Flag& c);

/// Largest r <= rmax with a vertex y on the barycentric ray of Q(o,C), d(o,y) >= r and D ∈ U_o(y).
long common_depth(const Flag& c, const Flag& d, const LatticeVertex& o, long rmax);

/// rho_{A,C}(x); throws PreconditionError unless C is a chamber of A(F).
LatticeVertex retraction(const Frame& f, const Flag& c, const LatticeVertex& x, const Prime& p);
/// Stable chamber of A(F) approached by rho_{A,C}(x_n) for x_n tending to D.
Flag boundary_retraction(const Frame& f, const Flag& c, const Flag& d, const Prime& p, long horizon = 40);
/// A chamber of A(F) opposite D.
Flag opposite_in_apartment(const Flag& d, const Frame& f);

}  // namespace bt3
