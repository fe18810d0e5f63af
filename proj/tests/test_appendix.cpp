#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bt3/appendix.hpp"
#include "support.hpp"

using namespace bt3;
using namespace testing_support;

namespace {

using Kind = IdealSimplex::Kind;

Rational nonzero_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 60), den(1, 25), sign(0, 1);
  Rational x(num(rng) * (sign(rng) ? 1 : -1), den(rng));
  x.canonicalize();
  return x;
}

IdealSimplex line(Vec3 v) { return {Kind::Line, v, Vec3{}}; }
IdealSimplex plane(Vec3 n) { return {Kind::Plane, Vec3{}, n}; }
IdealSimplex chamber(Vec3 v, Vec3 n) { return {Kind::Chamber, v, n}; }

std::vector<IdealSimplex> sorted(std::vector<IdealSimplex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// C = (<e1> in <e1,e2>) with its two faces.
const std::vector<IdealSimplex> kChamberC = sorted({line({1, 0, 0}), plane({0, 0, 1}), chamber({1, 0, 0}, {0, 0, 1})});
// C' = (<e3> in <e2,e3>) with its two faces.
const std::vector<IdealSimplex> kChamberCPrime =
    sorted({line({0, 0, 1}), plane({1, 0, 0}), chamber({0, 0, 1}, {1, 0, 0})});

}  // namespace

TEST_CASE("Laurent arithmetic") {
  auto a = Laurent::var(0), e = Laurent::var(1);
  auto inv = Laurent::var(0, -1);
  CHECK((a * inv) == Laurent::constant(1));
  CHECK((a - a).is_zero());
  CHECK(((a + e) * (a - e)) == (a * a - e * e));
  CHECK((2 * a).evaluate({Rational(3, 2), 0, 0, 0}) == 3);
  CHECK_THROWS_AS(inv.evaluate({0, 1, 0, 0}), DomainError);
}

TEST_CASE("parabolic flags") {
  CHECK(parabolic_p() == Flag::standard());
  CHECK(parabolic_p_prime() == Flag::reversed());
  for (long t : {-3L, -1L, 0L, 1L, 2L, 7L}) {
    Rational tt(t);
    Flag f = parabolic_pt(tt);
    CHECK(f.line() == Vec3{1, 1, 1});
    // v and the second vector lie in V_t
    Vec3 n = vt_normal(tt);
    CHECK(n[0] + n[1] + n[2] == 0);
    CHECK(n[0] * f.plane_vector()[0] + n[1] * f.plane_vector()[1] + n[2] * f.plane_vector()[2] == 0);
  }
}

TEST_CASE("torus family members") {
  CHECK(torus_family_member(1, 1) == Mat3::identity());
  CHECK(torus_family_member(1, 1, TorusFamily::B) == Mat3::identity());
  CHECK_THROWS_AS(torus_family_member(0, 2), PreconditionError);
  CHECK_THROWS_AS(torus_family_member(3, 0, TorusFamily::B), PreconditionError);

  // symbolic: A and B multiply like the torus k* x k*, and stabilize their flags
  for (auto fam : {TorusFamily::A, TorusFamily::B}) {
    auto prod = symbolic_product(torus_symbolic(fam, 0), torus_symbolic(fam, 2));
    SymbolicMatrix expected;
    auto a = Laurent::var(0) * Laurent::var(2), e = Laurent::var(1) * Laurent::var(3);
    auto inv = Laurent::var(0, -1) * Laurent::var(1, -1) * Laurent::var(2, -1) * Laurent::var(3, -1);
    if (fam == TorusFamily::A)
      expected = {a, 2 * e - 2 * a, inv - 2 * e + a, {}, e, inv - e, {}, {}, inv};
    else
      expected = {a, {}, {}, a - e, e, {}, a - 2 * e + inv, 2 * e - 2 * inv, inv};
    CHECK(prod == expected);
  }

  std::mt19937_64 rng(41);
  const Flag p = parabolic_p(), pp = parabolic_p_prime(), p1 = parabolic_pt(1);
  for (int k = 0; k < 50; ++k) {
    Rational a = nonzero_rational(rng), e = nonzero_rational(rng), a2 = nonzero_rational(rng),
             e2 = nonzero_rational(rng);
    Mat3 m = torus_family_member(a, e), m2 = torus_family_member(a2, e2);
    CHECK(m.det() == 1);
    CHECK(m * m2 == torus_family_member(a * a2, e * e2));
    CHECK(p.transformed(m) == p);
    CHECK(p1.transformed(m) == p1);
    Mat3 b = torus_family_member(a, e, TorusFamily::B), b2 = torus_family_member(a2, e2, TorusFamily::B);
    CHECK(b.det() == 1);
    CHECK(b * b2 == torus_family_member(a * a2, e * e2, TorusFamily::B));
    CHECK(pp.transformed(b) == pp);
    CHECK(p1.transformed(b) == p1);
  }
}

TEST_CASE("stabilized simplices of the standard apartment") {
  CHECK(stabilized_simplices(torus_symbolic(TorusFamily::A)) == kChamberC);
  // the second family fixes C', the chamber of P'
  CHECK(stabilized_simplices(torus_symbolic(TorusFamily::B)) == kChamberCPrime);
  CHECK(stabilized_simplices(Mat3::identity()).size() == 12);

  std::mt19937_64 rng(43);
  int exceptional = 0;
  for (int k = 0; k < 50; ++k) {
    Rational a = nonzero_rational(rng), e = nonzero_rational(rng);
    auto sa = stabilized_simplices(torus_family_member(a, e));
    auto sb = stabilized_simplices(torus_family_member(a, e, TorusFamily::B));
    CHECK(std::includes(sa.begin(), sa.end(), kChamberC.begin(), kChamberC.end()));
    CHECK(std::includes(sb.begin(), sb.end(), kChamberCPrime.begin(), kChamberCPrime.end()));
    exceptional += (sa != kChamberC) + (sb != kChamberCPrime);
  }
  CHECK(exceptional == 0);

  // a = e is exceptional: A_{a,a} fixes <e2>
  auto s = stabilized_simplices(torus_family_member(2, 2));
  CHECK(std::find(s.begin(), s.end(), line({0, 1, 0})) != s.end());
  CHECK(std::find(s.begin(), s.end(), plane({0, 1, 0})) == s.end());
}

TEST_CASE("pairwise positions") {
  auto r1 = pairwise_position_report(1);
  for (const auto& pr : r1.pairs) CHECK(pr.opposite);
  CHECK(r1.pairs[0].common_with_standard.size() == 12);
  CHECK(r1.pairs[1].common_with_standard == kChamberC);
  CHECK(r1.pairs[2].common_with_standard == kChamberCPrime);
  CHECK_FALSE(r1.e1_in_vt);
  CHECK_FALSE(r1.e2_in_vt);

  auto r0 = pairwise_position_report(0);
  CHECK(r0.e1_in_vt);
  CHECK_FALSE(r0.pairs[1].opposite);
  CHECK(r0.pairs[1].common_with_standard.empty());

  auto rm = pairwise_position_report(-1);
  CHECK(rm.e2_in_vt);
  CHECK_FALSE(rm.e1_in_vt);
}

TEST_CASE("generic family scan") {
  std::vector<Rational> ts{1, 2, 3, 5, -2, 7, Rational(1, 2), Rational(-1, 3), 0, -1};
  auto v = generic_family_scan(ts, 2);
  REQUIRE(v.size() == ts.size());
  for (const auto& r : v) {
    bool degenerate = r.t == 0 || r.t == -1;
    CAPTURE(r.t.get_str());
    CHECK(r.generic == !degenerate);
    CHECK(r.witness.empty() == !degenerate);
  }
  CHECK(v[8].witness == "e1 in V_t");
  CHECK(v[9].witness == "e2 in V_t");
}

TEST_CASE("finite field cross-checks") {
  for (std::int64_t q : {3, 5, 7, 11}) {
    for (std::int64_t t = 0; t < q; ++t) {
      CAPTURE(q);
      CAPTURE(t);
      CHECK(generic_over_fq(t, q) == (t != 0 && t != q - 1));
    }
  }
  // the rational verdict agrees with the reduction whenever t stays away from 0 and -1 mod q
  for (long t : {1L, 2L, 3L, 5L, -2L, 7L})
    for (std::int64_t q : {3, 5, 7}) {
      std::int64_t r = ((t % q) + q) % q;
      if (r == 0 || r == q - 1) continue;
      bool over_q = generic_family_scan({Rational(t)})[0].generic;
      CHECK(generic_over_fq(t, q) == over_q);
    }
}

TEST_CASE("torus equals the parabolic intersection over small fields") {
  for (std::int64_t q : {3, 5, 7}) {
    for (auto fam : {TorusFamily::A, TorusFamily::B}) {
      auto c = torus_count_fq(fam, q);
      CAPTURE(q);
      CHECK(c.contained);
      CHECK(c.torus == (q - 1) * (q - 1));
      CHECK(c.intersection == c.torus);
    }
  }
  CHECK_THROWS_AS(torus_count_fq(TorusFamily::A, 2), PreconditionError);
}
