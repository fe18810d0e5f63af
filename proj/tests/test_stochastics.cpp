#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "bt3/stochastics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bt3;
using namespace testing_support;
using oracle::minor_exponents;

namespace {

SrhCertificate cert(const GroupElement& g, const Prime& p) {
  auto c = certify_srh(g, p);
  REQUIRE(std::holds_alternative<SrhCertificate>(c));
  return std::get<SrhCertificate>(c);
}

// Vertex at theta = (a1, a2, 0) from the standard vertex along the standard sector.
LatticeVertex dominant_vertex(const Prime& p, long a1, long a2) {
  return apartment_vertex(Mat3::identity(), {0, a2, a1}, p);
}

// N_lambda from the row Hermite forms of index p^(a1+a2) sublattices of Z^3, sorted by
// their minor-gcd exponents.
long count_by_hermite(long p, long a1, long a2) {
  const Prime pr(p);
  const long total = a1 + a2;
  long count = 0;
  for (long d0 = 0; d0 <= total; ++d0)
    for (long d1 = 0; d0 + d1 <= total; ++d1) {
      const long d2 = total - d0 - d1;
      const long q1 = static_cast<long>(std::pow(p, d1)), q2 = static_cast<long>(std::pow(p, d2));
      for (long h01 = 0; h01 < q1; ++h01)
        for (long h02 = 0; h02 < q2; ++h02)
          for (long h12 = 0; h12 < q2; ++h12) {
            Mat3 h = Mat3::from_rows({{{static_cast<long>(std::pow(p, d0)), h01, h02}, {0, q1, h12}, {0, 0, q2}}});
            auto e = minor_exponents(h, pr);
            if (e == std::array<long, 3>{a1, a2, 0}) ++count;
          }
    }
  return count;
}

WalkConfig single(const GroupElement& g, const Prime& p, long steps) {
  return WalkConfig{{g}, {Rational(1)}, steps, 1, LatticeVertex::standard(p), 8};
}

WalkConfig schottky(const Prime& p, std::uint64_t seed, const LatticeVertex& base) {
  std::vector<Rational> w(4, Rational(1, 4));
  return WalkConfig{schottky_generators(p), w, 200, seed, base, 0};
}

std::vector<BasisSetEvent> generator_events(const Prime& p) {
  auto o = LatticeVertex::standard(p);
  std::vector<BasisSetEvent> ev;
  for (const auto& g : schottky_generators(p)) {
    if (g.word.front() < 0) continue;
    auto c = cert(g, p);
    ev.push_back(BasisSetEvent{o, Sector(o, c.attracting).ray_vertex(1)});
    ev.push_back(BasisSetEvent{o, Sector(o, c.repelling).ray_vertex(1)});
  }
  return ev;
}

}  // namespace

TEST_CASE("count_V_lambda against Hermite enumeration") {
  for (long p : {2L, 3L}) {
    Prime pr(p);
    auto o = LatticeVertex::standard(pr);
    CHECK(count_V_lambda(o, {0, 0, 0}) == 1);
    for (auto [a1, a2] : std::vector<std::pair<long, long>>{{1, 0}, {1, 1}, {2, 1}, {2, 0}, {2, 2}, {3, 1}}) {
      long n = count_V_lambda(o, {a1, a2, 0});
      CHECK(n == count_by_hermite(p, a1, a2));
      // same count from a non-standard vertex
      CHECK(count_V_lambda(dominant_vertex(pr, 2, 1), {a1, a2, 0}) == n);
    }
  }
  Prime two(2);
  auto o = LatticeVertex::standard(two);
  CHECK(count_V_lambda(o, {1, 0, 0}) == 7);
  CHECK(count_V_lambda(o, {1, 1, 0}) == 7);
  CHECK(count_V_lambda(o, {2, 1, 0}) == 42);
  CHECK_THROWS_AS(count_V_lambda(o, {3, 1, 0}, 10), DomainError);
}

TEST_CASE("harmonic samples are canonical flags") {
  Prime p(3);
  auto x = dominant_vertex(p, 2, 1);
  Rng rng = Rng::stream(5, 0);
  for (int i = 0; i < 200; ++i) {
    Flag c = harmonic_sample(x, 4, rng);
    CHECK(Flag(c.line(), c.plane_vector()) == c);
  }
}

TEST_CASE("harmonic mass law") {
  const long trials = 100000;
  for (long p : {2L, 3L}) {
    Prime pr(p);
    auto x = LatticeVertex::standard(pr);
    for (auto [a1, a2] : std::vector<std::pair<long, long>>{{1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 1}}) {
      auto y = dominant_vertex(pr, a1, a2);
      REQUIRE(vector_distance(x, y) == WeylVector{a1, a2, 0});
      double nu = 1.0 / static_cast<double>(count_V_lambda(x, {a1, a2, 0}));
      double m = harmonic_mass(x, y, trials, 6, static_cast<std::uint64_t>(100 * p + 10 * a1 + a2)).get_d();
      CAPTURE(p);
      CAPTURE(a1);
      CAPTURE(a2);
      CHECK(std::abs(m - nu) <= 3 * std::sqrt(nu * (1 - nu) / trials));
    }
  }
}

TEST_CASE("base-point absolute continuity proxy") {
  Prime p(2);
  auto x = LatticeVertex::standard(p);
  auto z = dominant_vertex(p, 2, 1);
  REQUIRE(z.type() == x.type());
  std::vector<LatticeVertex> ys{dominant_vertex(p, 2, 1), dominant_vertex(p, 3, 0), dominant_vertex(p, 3, 3)};
  for (const auto& y : ys) {
    long hx = 0, hz = 0;
    Rng rx = Rng::stream(9, 0), rz = Rng::stream(9, 1);
    for (int i = 0; i < 3000; ++i) {
      hx += basis_set_contains(x, y, harmonic_sample(x, 6, rx));
      hz += basis_set_contains(x, y, harmonic_sample(z, 6, rz));
    }
    if (hx > 0) CHECK(hz > 0);
  }
}

TEST_CASE("walk examples") {
  Prime p(3);
  auto g = make_srh(Frame::standard(), {2, 1, 0}, p);
  auto t0 = run_walk(single(g.element, p, 0));
  REQUIRE(t0.records.size() == 1);
  CHECK(t0.records[0].theta == WeylVector{0, 0, 0});
  CHECK(t0.element == Mat3::identity());

  auto t = run_walk(single(g.element, p, 30));
  REQUIRE(t.records.size() == 31);
  for (long n = 0; n <= 30; ++n) {
    CHECK(t.records[n].theta == WeylVector{2 * n, n, 0});
    if (n > 0) CHECK(t.records[n].letter == 0);
  }
  auto rep = convergence_report(t);
  CHECK(rep.converged);
  CHECK(rep.stabilization_time <= 2);
  REQUIRE(rep.germ.has_value());
  CHECK(*rep.germ == residue_projection(LatticeVertex::standard(p), g.attracting));

  auto id = run_walk(single(GroupElement::make(Mat3::identity()), p, 20));
  for (const auto& r : id.records) CHECK_FALSE(r.germ.has_value());
  CHECK_FALSE(convergence_report(id).converged);

  // a singular direction type never converges either
  Mat3 d = Mat3::identity();
  d(0, 0) = 3;
  d(1, 1) = 3;
  d(2, 2) = Rational(1, 9);
  auto sing = run_walk(single(GroupElement::make(d), p, 20));
  CHECK_FALSE(convergence_report(sing).converged);
}

TEST_CASE("walk configuration guard") {
  Prime p(2);
  auto gens = schottky_generators(p);
  auto base = LatticeVertex::standard(p);
  CHECK_NOTHROW(validate(WalkConfig{gens, {Rational(1, 2), Rational(1, 6), Rational(1, 6), Rational(1, 6)}, 5, 0, base, 0}));
  CHECK_THROWS_AS(run_walk(WalkConfig{gens, {Rational(1, 2), Rational(1, 2), Rational(0), Rational(0)}, 5, 0, base, 0}),
                  PreconditionError);
  CHECK_THROWS_AS(run_walk(WalkConfig{gens, {Rational(1), Rational(1, 2), Rational(-1, 4), Rational(-1, 4)}, 5, 0, base, 0}),
                  PreconditionError);
  CHECK_THROWS_AS(run_walk(WalkConfig{gens, {Rational(1, 4), Rational(1, 4), Rational(1, 4)}, 5, 0, base, 0}),
                  PreconditionError);
  CHECK_THROWS_AS(run_walk(WalkConfig{gens, std::vector<Rational>(4, Rational(1, 5)), 5, 0, base, 0}),
                  PreconditionError);
  CHECK_THROWS_AS(run_walk(WalkConfig{{}, {}, 5, 0, base, 0}), PreconditionError);
  CHECK_THROWS_AS(stationary_estimate(WalkConfig{gens, std::vector<Rational>(4, Rational(1, 4)), 5, 0, base, 0}, 0, {}),
                  PreconditionError);
}

TEST_CASE("walk reproducibility") {
  Prime p(5);
  auto base = LatticeVertex::standard(p);
  auto cfg = schottky(p, 77, base);
  cfg.steps = 60;
  cfg.depth_cap = 6;
  auto a = run_walk(cfg), b = run_walk(cfg);
  REQUIRE(a.records.size() == b.records.size());
  CHECK(a.element == b.element);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].letter == b.records[i].letter);
    CHECK(a.records[i].theta == b.records[i].theta);
    CHECK(a.records[i].germ == b.records[i].germ);
    CHECK(a.records[i].direction == b.records[i].direction);
    CHECK(a.records[i].depth == b.records[i].depth);
  }
  cfg.seed = 78;
  CHECK_FALSE(run_walk(cfg).element == a.element);
}

TEST_CASE("walk product and theta") {
  Prime p(3);
  auto base = dominant_vertex(p, 1, 0);
  auto cfg = schottky(p, 4, base);
  cfg.steps = 25;
  auto gens = schottky_generators(p);
  auto t = run_walk(cfg);
  Mat3 z = Mat3::identity();
  for (std::size_t n = 1; n < t.records.size(); ++n) {
    z = z * gens[t.records[n].letter].matrix;
    CHECK(t.records[n].theta == vector_distance(base, base.transformed(z)));
    CHECK(Sector(base, t.records[n].direction).contains(base.transformed(z)));
  }
  CHECK(z == t.element);
}

TEST_CASE("Schottky pair passes the proximal check") {
  for (long q : {3L, 7L}) {
    Prime p(q);
    auto gens = schottky_generators(p);
    CHECK(proximal_pair_check(cert(gens[0], p), cert(gens[2], p)));
  }
}

TEST_CASE("Schottky walks converge") {
  Prime p(3);
  long ok = 0;
  const long n = 200;
  for (long i = 0; i < n; ++i) ok += convergence_report(run_walk(schottky(p, 1000 + i, LatticeVertex::standard(p)))).converged;
  CHECK(ok >= 95 * n / 100);
}

TEST_CASE("stationary estimates") {
  Prime p(3);
  auto o = LatticeVertex::standard(p);
  auto events = generator_events(p);

  auto g = schottky_generators(p)[0];
  auto cfg = single(g, p, 40);
  auto dirac = stationary_estimate(cfg, 5, events);
  CHECK(dirac.converged == 5);
  CHECK(dirac.masses[0] == 1);
  CHECK(dirac.masses[1] == 0);

  auto a = stationary_estimate(schottky(p, 11, o), 400, events);
  auto b = stationary_estimate(schottky(p, 12, dominant_vertex(p, 2, 1)), 400, events);
  CHECK(2 * a.converged >= a.trials);
  for (std::size_t j = 0; j < events.size(); ++j) {
    double s = std::sqrt(a.sigma[j] * a.sigma[j] + b.sigma[j] * b.sigma[j]);
    CAPTURE(j);
    CHECK(std::abs(a.masses[j].get_d() - b.masses[j].get_d()) <= 3 * s + 1e-12);
  }

  // order-independent aggregation
  auto a2 = stationary_estimate(schottky(p, 11, o), 400, events, 3);
  CHECK(a2.masses == a.masses);

  auto never = WalkConfig{{GroupElement::make(Mat3::identity())}, {Rational(1)}, 10, 0, o, 0};
  CHECK_THROWS_AS(stationary_estimate(never, 10, events), DomainError);
}

TEST_CASE("strip growth") {
  Prime p(5);
  std::vector<std::pair<Flag, Flag>> pairs{
      {Flag::standard(), Flag::reversed()},
      {Flag({1, 1, 1}, {1, 0, -1}), Flag({1, 2, 0}, {0, 1, 5})},
      {Flag::standard(), Flag({1, 1, 1}, {1, 0, -1})},
  };
  for (const auto& [c1, c2] : pairs) {
    REQUIRE(is_opposite(c1, c2));
    auto s = strip_growth(c1, c2, 20, p);
    REQUIRE(s.counts.size() == 21);
    CHECK(s.counts[0].second == 1);
    CHECK(s.counts[1].second == 7);
    CHECK(s.exponent >= 1.8);
    CHECK(s.exponent <= 2.2);
  }
  // hexagonal lattice oracle: points (a, b) with a^2 - ab + b^2 <= R^2
  auto s = strip_growth(pairs[0].first, pairs[0].second, 6, p);
  for (long r = 0; r <= 6; ++r) {
    long n = 0;
    for (long a = -3 * r; a <= 3 * r; ++a)
      for (long b = -3 * r; b <= 3 * r; ++b) n += (a * a - a * b + b * b <= r * r);
    CHECK(s.counts[r].second == n);
  }
  CHECK_THROWS_AS(strip_growth(pairs[0].first, pairs[0].first, 3, p), PreconditionError);
}
