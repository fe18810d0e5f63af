#include "bt3/stochastics.hpp"

#include <cmath>
#include <numeric>

#include "bt3/parallel.hpp"

namespace bt3 {

namespace {

// Integer weights over a common denominator.
std::pair<std::vector<Integer>, Integer> integer_weights(const std::vector<Rational>& w) {
  Integer den = 1;
  for (const auto& x : w) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<Integer> out;
  for (const auto& x : w) {
    Rational s = x * Rational(den);
    out.push_back(s.get_num());
  }
  return {out, den};
}

// Chamber C with y in Q(x, C), read off the Smith basis of M_x^{-1} g M_x, and theta(x, g x).
std::pair<Flag, WeylVector> direction(const LatticeVertex& x, const Mat3& g) {
  auto sd = smith_decomposition(x.basis().inverse() * g * x.basis(), x.prime());
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sd.exponents[a] < sd.exponents[b]; });
  Mat3 b = x.basis() * sd.basis;
  return {Flag(b.column(order[0]), b.column(order[1])), WeylVector::normalized(sd.exponents)};
}

WalkRecord record(const LatticeVertex& x, const Mat3& z, int letter) {
  auto [flag, theta] = direction(x, z);
  std::optional<ResidueChamber> germ;
  if (is_regular(theta)) germ = residue_projection(x, flag);
  return WalkRecord{letter, theta, germ, flag, 0};
}

}  // namespace

void validate(const WalkConfig& cfg) {
  if (cfg.generators.empty() || cfg.generators.size() != cfg.weights.size())
    throw PreconditionError("walk: one weight per generator is required");
  Rational total = 0;
  for (const auto& w : cfg.weights) {
    if (sgn(w) <= 0) throw PreconditionError("walk: weights must be positive");
    total += w;
  }
  if (total != 1) throw PreconditionError("walk: weights must sum to 1");
  if (cfg.steps < 0) throw PreconditionError("walk: negative step count");
}

WalkTrace run_walk(const WalkConfig& cfg) {
  validate(cfg);
  auto [w, den] = integer_weights(cfg.weights);
  if (!den.fits_ulong_p()) throw DomainError("walk: weight denominator too large");
  Rng rng = Rng::stream(cfg.seed, 0);
  const LatticeVertex& x = cfg.base_vertex;
  WalkTrace trace{{}, Mat3::identity()};
  trace.records.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  trace.records.push_back(record(x, trace.element, -1));
  for (long n = 1; n <= cfg.steps; ++n) {
    Integer r = static_cast<unsigned long>(rng.below(den.get_ui()));
    int k = 0;
    while (r >= w[k]) r -= w[k++];
    trace.element = trace.element * cfg.generators[k].matrix;
    WalkRecord rec = record(x, trace.element, k);
    if (cfg.depth_cap > 0) rec.depth = common_depth(trace.records.back().direction, rec.direction, x, cfg.depth_cap);
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

ConvergenceReport convergence_report(const WalkTrace& trace, long window) {
  ConvergenceReport rep;
  const auto& rs = trace.records;
  const long steps = static_cast<long>(rs.size()) - 1;
  if (window < 0) window = steps / 4;
  if (steps < 1 || !rs.back().germ) return rep;
  long n1 = steps;
  while (n1 > 0 && rs[n1 - 1].germ && *rs[n1 - 1].germ == *rs.back().germ) --n1;
  rep.stabilization_time = n1;
  rep.germ = rs.back().germ;
  rep.converged = n1 <= steps - window;
  return rep;
}

StationaryEstimate stationary_estimate(const WalkConfig& cfg, long trials, const std::vector<BasisSetEvent>& events,
                                       unsigned threads) {
  if (trials < 1) throw PreconditionError("stationary_estimate: trials must be positive");
  validate(cfg);
  auto hits = parallel_map(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    WalkConfig c = cfg;
    c.seed = splitmix64(cfg.seed) ^ i;
    c.depth_cap = 0;
    auto trace = run_walk(c);
    std::optional<std::vector<char>> in;
    if (!convergence_report(trace).converged) return in;
    const Flag& d = trace.records.back().direction;
    in.emplace();
    for (const auto& e : events) in->push_back(basis_set_contains(e.x, e.y, d) ? 1 : 0);
    return in;
  });
  StationaryEstimate est;
  est.trials = trials;
  std::vector<long> counts(events.size(), 0);
  for (const auto& h : hits) {
    if (!h) continue;
    ++est.converged;
    for (std::size_t j = 0; j < h->size(); ++j) counts[j] += (*h)[j];
  }
  if (2 * est.converged < trials) throw DomainError("stationary_estimate: fewer than half of the walks converged");
  for (long c : counts) {
    Rational m(c, est.converged);
    m.canonicalize();
    double f = m.get_d();
    est.masses.push_back(m);
    est.sigma.push_back(std::sqrt(f * (1 - f) / static_cast<double>(est.converged)));
  }
  return est;
}

std::vector<GroupElement> schottky_generators(const Prime& p) {
  auto g1 = make_srh(Frame::standard(), {2, 1, 0}, p).element;
  Mat3 v = Mat3::from_rows({{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}}});
  auto g2 = GroupElement::make(v * g1.matrix * v.inverse());
  return {GroupElement::make(g1.matrix, {1}), GroupElement::make(g1.matrix.inverse(), {-1}),
          GroupElement::make(g2.matrix, {2}), GroupElement::make(g2.matrix.inverse(), {-2})};
}

Rational harmonic_mass(const LatticeVertex& x, const LatticeVertex& y, long trials, long depth, std::uint64_t seed,
                       unsigned threads) {
  if (trials < 1) throw PreconditionError("harmonic_mass: trials must be positive");
  // sector membership directly: the mass law also covers y of another type
  auto q_contains = [&](const Flag& c) { return sector_membership(x, c, y); };
  auto in = parallel_map(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    return q_contains(harmonic_sample(x, depth, rng)) ? 1 : 0;
  });
  Rational m(std::accumulate(in.begin(), in.end(), 0L), trials);
  m.canonicalize();
  return m;
}

StripGrowth strip_growth(const Flag& c1, const Flag& c2, long rmax, const Prime& p) {
  if (rmax < 0) throw PreconditionError("strip_growth: negative radius");
  Mat3 fb = apartment_from_opposite(c1, c2).basis();
  auto base = apartment_vertex(fb, {0, 0, 0}, p);
  // vertices within distance R have exponent differences at most 2R / sqrt(3) <= 2R
  std::vector<long> hist(static_cast<std::size_t>(rmax) + 1, 0);
  for (long a = -2 * rmax; a <= 2 * rmax; ++a)
    for (long b = -2 * rmax; b <= 2 * rmax; ++b) {
      long d2 = squared_distance(base, apartment_vertex(fb, {a, b, 0}, p));
      long r = 0;
      while (r * r < d2) ++r;
      if (r <= rmax) ++hist[r];
    }
  StripGrowth out;
  long acc = 0;
  for (long r = 0; r <= rmax; ++r) {
    acc += hist[r];
    out.counts.emplace_back(r, acc);
  }
  if (rmax >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rmax);
    for (long r = 1; r <= rmax; ++r) {
      double lx = std::log(static_cast<double>(r)), ly = std::log(static_cast<double>(out.counts[r].second));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    out.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return out;
}

}  // namespace bt3
