#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bt3/flag.hpp"
#include "bt3/normal_form.hpp"

namespace bt3 {

/// Dominant triple a1 >= a2 >= a3 = 0.
struct WeylVector {
  long a1 = 0;
  long a2 = 0;
  long a3 = 0;

  /// Sorts and subtracts the minimum.
  static WeylVector normalized(std::array<long, 3> e);

  friend bool operator==(const WeylVector&, const WeylVector&) = default;
};

WeylVector opposition_involution(const WeylVector& l);
bool is_regular(const WeylVector& l);
/// Squared CAT(0) length of the vector in the unit-edge A2 apartment.
long squared_length(const WeylVector& l);
/// Same quadratic form on an arbitrary (not necessarily dominant) exponent triple.
long squared_norm(const std::array<long, 3>& e);

/// Homothety class of a full-rank lattice, in canonical Hermite form.
class LatticeVertex {
 public:
  LatticeVertex(const Mat3& generators, const Prime& p);

  static LatticeVertex standard(const Prime& p);

  const Mat3& basis() const { return basis_; }
  const Prime& prime() const { return p_; }
  int type() const { return type_; }

  LatticeVertex transformed(const Mat3& g) const { return LatticeVertex(g * basis_, p_); }

  friend bool operator==(const LatticeVertex& a, const LatticeVertex& b) { return a.basis_ == b.basis_; }
  friend bool operator<(const LatticeVertex& a, const LatticeVertex& b) { return compare(a.basis_, b.basis_) < 0; }

 private:
  Mat3 basis_;
  Prime p_;
  int type_ = 0;
};

WeylVector vector_distance(const LatticeVertex& x, const LatticeVertex& y);
long squared_distance(const LatticeVertex& x, const LatticeVertex& y);

/// The 2(p^2+p+1) vertices adjacent to x (lattices strictly between pL_x and L_x).
std::vector<LatticeVertex> neighbors(const LatticeVertex& x);

/// Vertex of the apartment with frame basis fb at exponents m.
LatticeVertex apartment_vertex(const Mat3& fb, const std::array<long, 3>& m, const Prime& p);

/// Vector distances from a fixed vertex x to the vertices of one apartment,
/// from precomputed minor valuations of M_x^{-1} fb.
class ApartmentProbe {
 public:
  ApartmentProbe(const LatticeVertex& x, const Mat3& fb);
  WeylVector theta(const std::array<long, 3>& m) const;

 private:
  std::array<long, 3> col_;
  std::array<std::optional<long>, 3> pair_;  // column pairs (0,1), (0,2), (1,2)
  long det_ = 0;
};

struct ApartmentDistance {
  long squared = 0;
  LatticeVertex witness;
  std::array<long, 3> exponents;
};

/// Minimum squared distance from x to the vertices of the apartment of F, with a witness.
ApartmentDistance distance_to_apartment(const LatticeVertex& x, const Frame& f);

/// Basis of L_x whose first i columns span the i-dimensional subspace of the flag.
Mat3 adapted_basis(const LatticeVertex& x, const Flag& c);

/// Complete flag of F_p^3, line vector and plane normal normalized to leading entry 1.
struct ResidueChamber {
  std::array<std::int64_t, 3> line;
  std::array<std::int64_t, 3> plane;
  std::int64_t p;

  friend bool operator==(const ResidueChamber&, const ResidueChamber&) = default;
};

ResidueChamber make_residue_chamber(std::array<std::int64_t, 3> line, std::array<std::int64_t, 3> plane_normal,
                                    std::int64_t p);
bool residue_opposite(const ResidueChamber& a, const ResidueChamber& b);

/// Germ at o of the ideal chamber C.
ResidueChamber residue_projection(const LatticeVertex& o, const Flag& c);
/// Germ at o of the segment [o,y]; throws PreconditionError unless theta(o,y) is regular.
ResidueChamber residue_projection(const LatticeVertex& o, const LatticeVertex& y);

/// Simplex of the residue at o containing the germ of [o,z]: a chamber, a line, a plane,
/// or nothing when z = o. Vectors are reductions mod p, normalized.
struct GermSimplex {
  enum class Kind { Empty, Line, Plane, Chamber } kind = Kind::Empty;
  std::array<std::int64_t, 3> line{};
  std::array<std::int64_t, 3> plane{};
};

GermSimplex segment_germ(const LatticeVertex& o, const LatticeVertex& z);
/// Whether some residue chamber containing the germ is opposite c.
bool closed_opposite(const GermSimplex& germ, const ResidueChamber& c);

}  // namespace bt3
