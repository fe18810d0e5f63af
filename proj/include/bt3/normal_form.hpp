#pragma once

#include <array>
#include <span>

#include "bt3/matrix.hpp"

namespace bt3 {

/// Upper triangular basis of a full-rank Z_(p)-lattice: diagonal entries p^k_i,
/// entry (i,j) for j > i reduced modulo p^k_i. Unique per lattice.
struct HermiteForm {
  Mat3 basis;
  std::array<long, 3> exponents;
};

/// Hermite form of the Z_(p)-span of the given vectors; throws DomainError when
/// they do not span Q^3.
HermiteForm column_hermite_form(std::span<const Vec3> generators, const Prime& p);
HermiteForm column_hermite_form(const Mat3& m, const Prime& p);

/// Lattice spanned by p^exponents[i] * basis.column(i), with basis invertible over Z_(p)
/// relative to the reference lattice of the decomposed matrix.
struct SmithDecomposition {
  Mat3 basis;
  std::array<long, 3> exponents;
};

/// For invertible M: a Z_(p)-basis b of Z_(p)^3 and exponents e with
/// M Z_(p)^3 = span(p^e_i b_i). Throws DomainError on singular input.
SmithDecomposition smith_decomposition(const Mat3& m, const Prime& p);

/// Elementary divisor exponents, sorted a1 >= a2 >= a3.
std::array<long, 3> smith_exponents(const Mat3& m, const Prime& p);

/// Lattice operations on column bases (results in Hermite form).
Mat3 lattice_sum(const Mat3& a, const Mat3& b, const Prime& p);
Mat3 lattice_intersection(const Mat3& a, const Mat3& b, const Prime& p);
/// True when the lattice spanned by b contains the one spanned by a.
bool lattice_contains(const Mat3& b, const Mat3& a, const Prime& p);

}  // namespace bt3
