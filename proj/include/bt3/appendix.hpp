#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bt3/triples.hpp"

namespace bt3 {

/// Laurent polynomial with integer coefficients in four variables, enough for products
/// of two torus members A_{a,e} A_{a',e'}.
class Laurent {
 public:
  using Monomial = std::array<int, 4>;

  Laurent() = default;
  static Laurent constant(long c);
  /// x_i^k.
  static Laurent var(int i, int k = 1);

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  friend Laurent operator*(long c, const Laurent& l) { return constant(c) * l; }

  bool is_zero() const { return terms_.empty(); }
  /// Throws DomainError when a variable with a negative power evaluates to 0.
  Rational evaluate(const std::array<Rational, 4>& x) const;

  friend bool operator==(const Laurent&, const Laurent&) = default;

 private:
  void add(const Monomial& m, const Integer& c);
  std::map<Monomial, Integer> terms_;
};

using SymbolicMatrix = std::array<Laurent, 9>;  // row-major

SymbolicMatrix symbolic_product(const SymbolicMatrix& x, const SymbolicMatrix& y);
Mat3 evaluate(const SymbolicMatrix& m, const std::array<Rational, 4>& x);

enum class TorusFamily { A, B };

/// A_{a,e} (upper triangular, in P and P^1) or B_{a,e} (lower triangular, in P' and P^1)
/// with a = x_i, e = x_{i+1}.
SymbolicMatrix torus_symbolic(TorusFamily f, int i = 0);
/// Throws PreconditionError when a e = 0.
Mat3 torus_family_member(const Rational& a, const Rational& e, TorusFamily f = TorusFamily::A);

/// P: <e1> in <e1,e2>. P': <e3> in <e2,e3>. P^t: <v> in V_t with v = e1 + e2 + e3 and
/// V_t = {-t x + (1 + t) y - z = 0}.
Flag parabolic_p();
Flag parabolic_p_prime();
Flag parabolic_pt(const Rational& t);
/// Normal of V_t.
Vec3 vt_normal(const Rational& t);

bool stabilizes(const Mat3& g, const IdealSimplex& s);
/// Simplices of the standard apartment at infinity stabilized by g.
std::vector<IdealSimplex> stabilized_simplices(const Mat3& g);
/// Simplices whose stabilization conditions vanish identically in (a, e).
std::vector<IdealSimplex> stabilized_simplices(const SymbolicMatrix& m);

struct PairPosition {
  std::string name;  // "P,P'", "P,Pt" or "P',Pt"
  bool opposite = false;
  std::vector<IdealSimplex> common_with_standard;  // with A(P, P') at infinity, opposite pairs only
};

struct PositionReport {
  Rational t;
  std::array<PairPosition, 3> pairs;
  bool e1_in_vt = false;  // P^t stabilizes <e1>-incidence: the t = 0 degeneracy
  bool e2_in_vt = false;  // the t = -1 degeneracy
};

PositionReport pairwise_position_report(const Rational& t);

struct FamilyVerdict {
  Rational t;
  bool generic = false;
  std::string witness;  // empty, "e1 in V_t" or "e2 in V_t"
};

/// is_generic on (P, P', P^t) for each t.
std::vector<FamilyVerdict> generic_family_scan(const std::vector<Rational>& ts, unsigned threads = 1);

/// Genericity of (P, P', P^t) over F_q for q prime, t read mod q.
bool generic_over_fq(std::int64_t t, std::int64_t q);

struct TorusCount {
  long intersection = 0;  // |P cap P^1| (family A) or |P' cap P^1| (family B) in SL3(F_q)
  long torus = 0;         // distinct members of the family over F_q
  bool contained = false;  // every family member lies in the intersection
};

/// Exhaustive count over F_q, q an odd prime.
TorusCount torus_count_fq(TorusFamily f, std::int64_t q);

}  // namespace bt3
