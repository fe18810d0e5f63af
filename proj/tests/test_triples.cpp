#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "bt3/harmonic.hpp"
#include "bt3/triples.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bt3;
using namespace testing_support;

namespace {

Flag appendix_flag(const Rational& t) { return Flag({1, 1, 1}, {1, 0, -t}); }

ChamberTriple appendix_triple(const Rational& t) { return ChamberTriple(Flag::standard(), Flag::reversed(), appendix_flag(t)); }

// Rank-based oracle: lines, planes and chambers common to three frames, counted without
// any normal form.
int common_simplex_count(const std::array<Frame, 3>& f) {
  auto has_line = [](const Frame& g, const Vec3& v) {
    for (const auto& l : g.lines())
      if (rank({l, v}) == 1) return true;
    return false;
  };
  auto has_plane = [](const Frame& g, const Vec3& a, const Vec3& b) {
    int inside = 0;
    for (const auto& l : g.lines())
      if (rank({a, b, l}) == 2) ++inside;
    return inside >= 2;
  };
  int count = 0;
  const auto& l = f[0].lines();
  for (int i = 0; i < 3; ++i)
    if (has_line(f[1], l[i]) && has_line(f[2], l[i])) ++count;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (has_plane(f[1], l[i], l[j]) && has_plane(f[2], l[i], l[j])) ++count;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && has_line(f[1], l[i]) && has_line(f[2], l[i]) && has_plane(f[1], l[i], l[j]) &&
          has_plane(f[2], l[i], l[j]))
        ++count;
  return count;
}

Flag harmonic(std::uint64_t seed, std::uint64_t i, const Prime& p, long depth = 6) {
  Rng rng = Rng::stream(seed, i);
  return harmonic_sample(LatticeVertex::standard(p), depth, rng);
}

std::vector<LatticeVertex> moved(const std::vector<LatticeVertex>& vs, const Mat3& g) {
  std::vector<LatticeVertex> out;
  for (const auto& v : vs) out.push_back(v.transformed(g));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("sqrt sums") {
  CHECK(SqrtSum::root(8) == SqrtSum::root(2) + SqrtSum::root(2));
  CHECK(SqrtSum::of_squares({2, 8}) == SqrtSum::root(18));
  CHECK(SqrtSum::of_squares({0, 4, 9}) == SqrtSum::root(25));
  CHECK(SqrtSum::of_squares({3, 12}).to_string() == "3*sqrt(3)");
  CHECK(SqrtSum::of_squares({1, 3}).to_string() == "1 + sqrt(3)");
  CHECK(SqrtSum().to_string() == "0");
  CHECK(SqrtSum().sign() == 0);
  CHECK_THROWS_AS(SqrtSum::root(-1), DomainError);
  // sqrt(2) + sqrt(3) vs sqrt(10): 3.146 vs 3.162
  CHECK(SqrtSum::of_squares({2, 3}) < SqrtSum::root(10));
  // 10 + sqrt(2) - sqrt(3) - ... close values resolved exactly
  CHECK(compare(SqrtSum::of_squares({10001, 9999}), SqrtSum::root(40000)) < 0);
  std::mt19937_64 rng(70);
  std::uniform_int_distribution<long> d(0, 60);
  for (int i = 0; i < 2000; ++i) {
    std::vector<long> a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)};
    long double va = 0, vb = 0;
    for (long x : a) va += std::sqrt(static_cast<long double>(x));
    for (long x : b) vb += std::sqrt(static_cast<long double>(x));
    int c = compare(SqrtSum::of_squares(a), SqrtSum::of_squares(b));
    if (std::fabs(static_cast<double>(va - vb)) > 1e-9)
      CHECK(c == (va < vb ? -1 : 1));
    else
      CHECK(c == 0);
    auto [lo, hi] = SqrtSum::of_squares(a).enclosure();
    CHECK(lo <= static_cast<double>(va) + 1e-12);
    CHECK(hi >= static_cast<double>(va) - 1e-12);
  }
}

TEST_CASE("chamber triples and antipodality") {
  CHECK_THROWS_AS(ChamberTriple(Flag::standard(), Flag::standard(), Flag::reversed()), PreconditionError);
  auto t = appendix_triple(1);
  CHECK(is_antipodal(t));
  for (const auto& w : t.positions()) CHECK(w == WeylElement::longest());
  auto ch = apartment_chambers(Frame::standard());
  CHECK_FALSE(is_antipodal(ChamberTriple(ch[0], ch[1], ch[2])));
  CHECK_THROWS_AS(ChamberTriple(ch[0], ch[1], ch[2]).apartments(), PreconditionError);
}

TEST_CASE("apartment intersections at infinity") {
  Frame s = Frame::standard();
  CHECK(apartment_infinity_intersection(s, s).size() == 12);
  Frame one({1, 0, 0}, {0, 1, 1}, {1, 2, 3});
  auto c1 = apartment_infinity_intersection(s, one);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].kind == IdealSimplex::Kind::Line);
  CHECK(c1[0].line == Vec3{1, 0, 0});

  auto f = appendix_triple(1).apartments();
  CHECK(f[0] == s);
  auto c = apartment_infinity_intersection(f[0], f[1]);
  REQUIRE(c.size() == 3);
  std::set<IdealSimplex::Kind> kinds;
  for (const auto& x : c) kinds.insert(x.kind);
  CHECK(kinds.size() == 3);
  for (const auto& x : c) {
    if (x.kind != IdealSimplex::Kind::Plane) CHECK(x.line == Vec3{1, 0, 0});
    if (x.kind != IdealSimplex::Kind::Line) CHECK(x.normal == Vec3{0, 0, 1});
  }
}

TEST_CASE("generic position examples") {
  CHECK(is_generic(appendix_triple(1)));
  CHECK_FALSE(is_generic(appendix_triple(0)));
  CHECK_FALSE(is_generic(appendix_triple(-1)));
  for (int t : {2, 3, 5, -2, 7}) CHECK(is_generic(appendix_triple(t)));
  CHECK(is_generic(appendix_triple(Rational(1, 2))));
}

TEST_CASE("genericity agrees with the rank oracle and is invariant") {
  std::mt19937_64 rng(71);
  Prime p(3);
  int generic = 0, antipodal = 0;
  for (int i = 0; i < 300; ++i) {
    Flag c1 = Flag::standard(), c2 = Flag::reversed();
    // mix harmonic samples with flags sharing a line or plane with the standard frame
    Flag c3 = harmonic(71, i, p, 2);
    if (i % 3 == 1) c3 = Flag({1, 0, 0}, c3.plane_vector());
    if (i % 3 == 2) c3 = Flag(c3.line(), {0, 1, 0});
    if (c3 == c1 || c3 == c2) continue;
    ChamberTriple t(c1, c2, c3);
    bool g = is_generic(t);
    if (is_antipodal(t)) {
      ++antipodal;
      CHECK(g == (common_simplex_count(t.apartments()) == 0));
    } else {
      CHECK_FALSE(g);
    }
    Mat3 k = random_sl3(rng, p);
    CHECK(is_generic(t.transformed(k)) == g);
    generic += g ? 1 : 0;
  }
  CHECK(generic > 50);
  CHECK(antipodal > generic);
}

TEST_CASE("opposite to every apartment chamber implies generic") {
  std::mt19937_64 rng(72);
  Prime p(3);
  int hits = 0;
  for (int i = 0; i < 1000; ++i) {
    Frame f = Frame::from_matrix(random_invertible(rng, p));
    auto ch = apartment_chambers(f);
    Flag c3 = i % 2 ? random_flag(rng, p) : harmonic(72, i, p, 3);
    bool all = std::all_of(ch.begin(), ch.end(), [&](const Flag& e) { return is_opposite(c3, e); });
    if (!all) continue;
    ++hits;
    CHECK(is_generic(ChamberTriple(ch[0], ch[5], c3)));
  }
  CHECK(hits > 300);
}

TEST_CASE("construct_generic") {
  Prime p(5);
  Flag c1 = Flag::standard(), c2 = Flag::reversed();
  Flag c3 = construct_generic(c1, c2, p, 7);
  CHECK(is_generic(ChamberTriple(c1, c2, c3)));
  CHECK_THROWS_AS(construct_generic(c1, c1, p, 7), PreconditionError);

  // sampler restricted to the appendix family: t = 0 and t = -1 are skipped
  std::vector<Rational> ts{0, -1, 1, 2};
  std::size_t i = 0;
  Flag fam = construct_generic(c1, c2, [&]() -> std::optional<Flag> {
    if (i >= ts.size()) return std::nullopt;
    return appendix_flag(ts[i++]);
  });
  CHECK(fam == appendix_flag(1));

  // candidates inside the apartment never work
  auto ch = apartment_chambers(Frame::standard());
  std::size_t j = 0;
  CHECK_THROWS_AS(construct_generic(c1, c2, [&]() -> std::optional<Flag> {
                    if (j >= ch.size()) return std::nullopt;
                    return ch[j++];
                  }),
                  DomainError);

  std::mt19937_64 rng(73);
  Mat3 g = random_sl3(rng, p);
  Flag d3 = construct_generic(c1.transformed(g), c2.transformed(g), p, 8);
  CHECK(is_generic(ChamberTriple(c1.transformed(g), c2.transformed(g), d3)));
  CHECK(is_generic(ChamberTriple(c1, c2, c3).transformed(g)));
}

TEST_CASE("F_T values") {
  Prime p(3);
  auto t = appendix_triple(1);
  auto o = LatticeVertex::standard(p);
  CHECK(f_t_value(t, o) == SqrtSum());
  CHECK_THROWS_AS(f_t_value(appendix_triple(0), o), PreconditionError);

  std::mt19937_64 rng(74);
  auto frames = t.apartments();
  for (int i = 0; i < 40; ++i) {
    auto x = random_vertex(rng, p, 1);
    std::vector<long> sq;
    for (const auto& f : frames) sq.push_back(oracle::apartment_distance_box(x, f, 6));
    CHECK(f_t_value(t, x) == SqrtSum::of_squares(sq));
    Mat3 g = random_sl3(rng, p);
    CHECK(f_t_value(t.transformed(g), x.transformed(g)) == f_t_value(t, x));
    auto w = distance_to_apartment(x, frames[0]).witness;
    CHECK(compare(f_t_value(t, w), SqrtSum::of_squares({distance_to_apartment(w, frames[1]).squared,
                                                        distance_to_apartment(w, frames[2]).squared})) >= 0);
  }
}

TEST_CASE("barycenter") {
  Prime p(2);
  CHECK_THROWS_AS(barycenter(appendix_triple(0), p), PreconditionError);
  CHECK_THROWS_AS(barycenter(appendix_triple(1), p, BarycenterConfig{0, 12, 1}), PreconditionError);

  std::mt19937_64 rng(75);
  std::vector<ChamberTriple> triples{appendix_triple(1)};
  for (std::uint64_t s : {102, 103}) triples.emplace_back(Flag::standard(), Flag::reversed(), construct_generic(Flag::standard(), Flag::reversed(), p, s));
  for (const auto& t : triples) {
    auto r = barycenter(t, p);
    REQUIRE(r.certified);
    REQUIRE_FALSE(r.min_vertices.empty());
    CHECK(r.enclosure.first <= r.min_value.approx());
    CHECK(r.enclosure.second >= r.min_value.approx());
    for (const auto& v : r.min_vertices) CHECK(f_t_value(t, v) == r.min_value);
    // no vertex of a wider ball does better
    for (const auto& v : oracle::graph_ball(r.center, 2)) CHECK(compare(f_t_value(t, v), r.min_value) >= 0);
    for (int i = 0; i < 3; ++i) {
      Mat3 g = random_sl3(rng, p);
      auto rg = barycenter(t.transformed(g), p);
      CHECK(rg.certified);
      CHECK(rg.min_value == r.min_value);
      CHECK(rg.min_vertices == moved(r.min_vertices, g));
    }
    auto wide = barycenter(t, p, BarycenterConfig{4, 12, 2});
    CHECK(wide.min_vertices == r.min_vertices);
  }
  auto tight = barycenter(triples[2], p, BarycenterConfig{1, 1, 1});
  CHECK_FALSE(tight.certified);
}

TEST_CASE("genericity rate") {
  Prime p(5);
  Rational r = genericity_rate(Flag::standard(), Flag::reversed(), 400, 6, 9, p);
  CHECK(r >= Rational(99, 100));
  CHECK_THROWS_AS(genericity_rate(Flag::standard(), Flag::standard(), 10, 6, 9, p), PreconditionError);
  // depth 1 samples are opposite a fixed chamber with probability q^3 / ((1+q)(1+q+q^2))
  Prime q(2);
  long trials = 3000, opp = 0;
  for (long i = 0; i < trials; ++i)
    if (is_opposite(harmonic(10, i, q, 1), Flag::reversed())) ++opp;
  double exact = 8.0 / 21.0, sigma = std::sqrt(exact * (1 - exact) / trials);
  CHECK(std::abs(static_cast<double>(opp) / trials - exact) <= 3 * sigma);
}

TEST_CASE("generic triples inside a basis set") {
  Prime p(5);
  auto x = LatticeVertex::standard(p);
  Flag c0 = harmonic(11, 0, p);
  auto y = Sector(x, c0).ray_vertex(1);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng = Rng::stream(12, i);
    CHECK(basis_set_contains(x, y, sample_basis_set(x, c0, 1, 6, rng)));
  }
  auto found = generic_triple_in_basis_set(x, c0, 1, 100, 13);
  REQUIRE(found.triple.has_value());
  CHECK(found.draws <= 100);
  for (int i = 0; i < 3; ++i) CHECK(basis_set_contains(x, y, (*found.triple)[i]));
  CHECK(is_generic(*found.triple));
}
