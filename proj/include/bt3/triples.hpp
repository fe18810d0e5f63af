#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bt3/boundary.hpp"
#include "bt3/rng.hpp"

namespace bt3 {

/// Finite sum of integer multiples of square roots of integers, kept as a map from
/// squarefree radicand to coefficient. Comparisons are exact.
class SqrtSum {
 public:
  SqrtSum() = default;
  /// sqrt(n) for n >= 0.
  static SqrtSum root(long n);
  static SqrtSum of_squares(const std::vector<long>& squares);

  SqrtSum& operator+=(const SqrtSum& o);
  SqrtSum operator+(const SqrtSum& o) const;
  SqrtSum operator-(const SqrtSum& o) const;

  /// -1, 0 or 1; equality is symbolic, nonzero signs are settled by interval refinement.
  int sign() const;
  double approx() const;
  /// Outward-rounded double enclosure.
  std::pair<double, double> enclosure() const;
  std::string to_string() const;
  const std::map<long, Integer>& terms() const { return terms_; }

  friend int compare(const SqrtSum& a, const SqrtSum& b) { return (a - b).sign(); }
  friend bool operator==(const SqrtSum& a, const SqrtSum& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const SqrtSum& a, const SqrtSum& b) { return compare(a, b) < 0; }

 private:
  std::map<long, Integer> terms_;
};

/// Three pairwise distinct chambers at infinity with their pairwise relative positions.
class ChamberTriple {
 public:
  /// Throws PreconditionError when two flags coincide.
  ChamberTriple(const Flag& c1, const Flag& c2, const Flag& c3);

  const Flag& operator[](int i) const { return c_[i]; }
  /// Relative positions of the pairs (1,2), (1,3), (2,3).
  const std::array<WeylElement, 3>& positions() const { return w_; }
  ChamberTriple transformed(const Mat3& g) const;
  /// Apartments A12, A13, A23; throws PreconditionError unless antipodal.
  std::array<Frame, 3> apartments() const;

 private:
  std::array<Flag, 3> c_;
  std::array<WeylElement, 3> w_;
};

bool is_antipodal(const ChamberTriple& t);

/// A simplex of the spherical building at infinity: a line, a plane or a chamber.
struct IdealSimplex {
  enum class Kind { Line, Plane, Chamber } kind;
  Vec3 line;    // Line, Chamber
  Vec3 normal;  // Plane, Chamber (normalized plane normal)

  friend bool operator==(const IdealSimplex&, const IdealSimplex&) = default;
  friend bool operator<(const IdealSimplex& a, const IdealSimplex& b);
};

/// The 3 lines, 3 planes and 6 chambers of an apartment at infinity, sorted.
std::vector<IdealSimplex> ideal_simplices(const Frame& f);
std::vector<IdealSimplex> apartment_infinity_intersection(const Frame& f1, const Frame& f2);
bool is_generic(const ChamberTriple& t);

/// First candidate C3 from `next` making (C1, C2, C3) generic. Throws PreconditionError
/// unless C1, C2 are opposite and DomainError when `next` runs dry.
Flag construct_generic(const Flag& c1, const Flag& c2, const std::function<std::optional<Flag>()>& next);
/// Same, drawing harmonic samples at the standard vertex.
Flag construct_generic(const Flag& c1, const Flag& c2, const Prime& p, std::uint64_t seed, long depth = 6,
                       long max_draws = 1000);

/// Sum of the three vertex distances to A12, A13, A23. Throws PreconditionError unless generic.
SqrtSum f_t_value(const ChamberTriple& t, const LatticeVertex& x);

struct BarycenterConfig {
  long r0 = 1;
  long cap = 12;
  unsigned threads = 1;
};

struct BarycenterResult {
  LatticeVertex center;  // local minimum the balls grow around
  SqrtSum min_value;
  std::pair<double, double> enclosure;
  std::vector<LatticeVertex> min_vertices;  // sorted
  long search_radius = 0;  // largest graph distance from center reached
  bool certified = false;
  long evaluated = 0;
};

/// Minimizing vertices of F_T: descend from the nearest apartment witness of the standard
/// vertex, then flood outward, expanding every vertex within graph distance r0 and every
/// vertex with F_T <= min + 2 sqrt(3). Certified when the flood closes within graph radius
/// cap of the descent point. Throws PreconditionError unless generic.
BarycenterResult barycenter(const ChamberTriple& t, const Prime& p, const BarycenterConfig& cfg = {});

/// Fraction of harmonic samples C3 (standard vertex, given depth) with (C1, C2, C3) generic.
Rational genericity_rate(const Flag& c1, const Flag& c2, long trials, long depth, std::uint64_t seed, const Prime& p);

/// Random chamber of U_x(y) for y = Sector(x, C0).ray_vertex(t): C0 moved by a random
/// element of the stabilizer of x and y, entries drawn modulo p^depth.
Flag sample_basis_set(const LatticeVertex& x, const Flag& c0, long t, long depth, Rng& rng);

struct BasisSetSearch {
  std::optional<ChamberTriple> triple;
  long draws = 0;
};

/// Draws triples inside U_x(y) until one is generic, at most max_draws times.
BasisSetSearch generic_triple_in_basis_set(const LatticeVertex& x, const Flag& c0, long t, long max_draws,
                                           std::uint64_t seed, long depth = 6);

}  // namespace bt3
