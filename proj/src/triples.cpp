#include "bt3/triples.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include "bt3/harmonic.hpp"
#include "bt3/parallel.hpp"

namespace bt3 {

namespace {

// n = k^2 m with m squarefree
std::pair<long, long> split_square(long n) {
  long k = 1, m = 1;
  for (long d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) k *= d;
    if (e % 2) m *= d;
  }
  return {k, m * n};
}

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Lower and upper bounds of the sum at the given precision.
void bounds(const std::map<long, Integer>& terms, mpfr_prec_t prec, MpfrValue& lo, MpfrValue& hi) {
  MpfrValue r(prec), t(prec);
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  for (const auto& [m, c] : terms) {
    bool pos = sgn(c) > 0;
    mpfr_sqrt_ui(r.get(), static_cast<unsigned long>(m), pos ? MPFR_RNDD : MPFR_RNDU);
    mpfr_mul_z(t.get(), r.get(), c.get_mpz_t(), MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    mpfr_sqrt_ui(r.get(), static_cast<unsigned long>(m), pos ? MPFR_RNDU : MPFR_RNDD);
    mpfr_mul_z(t.get(), r.get(), c.get_mpz_t(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  }
}

std::vector<Vec3> normalized_lines(const Frame& f) {
  return {normalize_line(f.line(0)), normalize_line(f.line(1)), normalize_line(f.line(2))};
}

void require_generic(const ChamberTriple& t) {
  if (!is_generic(t)) throw PreconditionError("triple is not in generic position");
}

SqrtSum ft(const std::array<Frame, 3>& frames, const LatticeVertex& x) {
  return SqrtSum::of_squares({distance_to_apartment(x, frames[0]).squared, distance_to_apartment(x, frames[1]).squared,
                              distance_to_apartment(x, frames[2]).squared});
}

}  // namespace

SqrtSum SqrtSum::root(long n) {
  if (n < 0) throw DomainError("square root of a negative number");
  SqrtSum s;
  if (n == 0) return s;
  auto [k, m] = split_square(n);
  s.terms_[m] = k;
  return s;
}

SqrtSum SqrtSum::of_squares(const std::vector<long>& squares) {
  SqrtSum s;
  for (long n : squares) s += root(n);
  return s;
}

SqrtSum& SqrtSum::operator+=(const SqrtSum& o) {
  for (const auto& [m, c] : o.terms_) {
    Integer& d = terms_[m];
    d += c;
    if (sgn(d) == 0) terms_.erase(m);
  }
  return *this;
}

SqrtSum SqrtSum::operator+(const SqrtSum& o) const {
  SqrtSum s = *this;
  s += o;
  return s;
}

SqrtSum SqrtSum::operator-(const SqrtSum& o) const {
  SqrtSum s = *this;
  for (const auto& [m, c] : o.terms_) {
    Integer& d = s.terms_[m];
    d -= c;
    if (sgn(d) == 0) s.terms_.erase(m);
  }
  return s;
}

int SqrtSum::sign() const {
  if (terms_.empty()) return 0;
  // square roots of distinct squarefree integers are linearly independent, so a nonzero
  // sum has a nonzero value and refinement terminates
  for (mpfr_prec_t prec = 64; prec <= (1 << 20); prec *= 2) {
    MpfrValue lo(prec), hi(prec);
    bounds(terms_, prec, lo, hi);
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
  }
  throw std::logic_error("SqrtSum::sign: refinement did not separate from zero");
}

double SqrtSum::approx() const {
  auto [lo, hi] = enclosure();
  return (lo + hi) / 2;
}

std::pair<double, double> SqrtSum::enclosure() const {
  MpfrValue lo(128), hi(128);
  bounds(terms_, 128, lo, hi);
  return {mpfr_get_d(lo.get(), MPFR_RNDD), mpfr_get_d(hi.get(), MPFR_RNDU)};
}

std::string SqrtSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer a = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    if (m == 1) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "sqrt(" << m << ")";
  }
  return os.str();
}

ChamberTriple::ChamberTriple(const Flag& c1, const Flag& c2, const Flag& c3) : c_{c1, c2, c3} {
  if (c1 == c2 || c1 == c3 || c2 == c3) throw PreconditionError("chamber triple needs distinct flags");
  w_ = {weyl_distance(c1, c2), weyl_distance(c1, c3), weyl_distance(c2, c3)};
}

ChamberTriple ChamberTriple::transformed(const Mat3& g) const {
  return ChamberTriple(c_[0].transformed(g), c_[1].transformed(g), c_[2].transformed(g));
}

std::array<Frame, 3> ChamberTriple::apartments() const {
  if (!is_antipodal(*this)) throw PreconditionError("triple is not antipodal");
  return {apartment_from_opposite(c_[0], c_[1]), apartment_from_opposite(c_[0], c_[2]),
          apartment_from_opposite(c_[1], c_[2])};
}

bool is_antipodal(const ChamberTriple& t) {
  const auto& w = t.positions();
  return std::all_of(w.begin(), w.end(), [](const WeylElement& x) { return x == WeylElement::longest(); });
}

bool operator<(const IdealSimplex& a, const IdealSimplex& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (int c = compare(a.line, b.line)) return c < 0;
  return compare(a.normal, b.normal) < 0;
}

std::vector<IdealSimplex> ideal_simplices(const Frame& f) {
  auto l = normalized_lines(f);
  std::vector<IdealSimplex> out;
  for (int i = 0; i < 3; ++i) out.push_back({IdealSimplex::Kind::Line, l[i], Vec3{}});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) out.push_back({IdealSimplex::Kind::Plane, Vec3{}, normalize_line(cross(l[i], l[j]))});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) out.push_back({IdealSimplex::Kind::Chamber, l[i], normalize_line(cross(l[i], l[j]))});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IdealSimplex> apartment_infinity_intersection(const Frame& f1, const Frame& f2) {
  auto a = ideal_simplices(f1), b = ideal_simplices(f2);
  std::vector<IdealSimplex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_generic(const ChamberTriple& t) {
  if (!is_antipodal(t)) return false;
  auto f = t.apartments();
  auto common = apartment_infinity_intersection(f[0], f[1]);
  auto c = ideal_simplices(f[2]);
  std::vector<IdealSimplex> out;
  std::set_intersection(common.begin(), common.end(), c.begin(), c.end(), std::back_inserter(out));
  return out.empty();
}

Flag construct_generic(const Flag& c1, const Flag& c2, const std::function<std::optional<Flag>()>& next) {
  if (!is_opposite(c1, c2)) throw PreconditionError("construct_generic: C1 and C2 must be opposite");
  while (auto c3 = next()) {
    if (*c3 == c1 || *c3 == c2) continue;
    if (is_generic(ChamberTriple(c1, c2, *c3))) return *c3;
  }
  throw DomainError("construct_generic: sampler exhausted without a generic triple");
}

Flag construct_generic(const Flag& c1, const Flag& c2, const Prime& p, std::uint64_t seed, long depth,
                       long max_draws) {
  auto o = LatticeVertex::standard(p);
  long i = 0;
  return construct_generic(c1, c2, [&]() -> std::optional<Flag> {
    if (i >= max_draws) return std::nullopt;
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i++));
    return harmonic_sample(o, depth, rng);
  });
}

SqrtSum f_t_value(const ChamberTriple& t, const LatticeVertex& x) {
  require_generic(t);
  return ft(t.apartments(), x);
}

BarycenterResult barycenter(const ChamberTriple& t, const Prime& p, const BarycenterConfig& cfg) {
  require_generic(t);
  if (cfg.r0 < 1 || cfg.cap < cfg.r0) throw PreconditionError("barycenter: need 1 <= r0 <= cap");
  auto frames = t.apartments();

  auto o = LatticeVertex::standard(p);
  std::optional<ApartmentDistance> near;
  for (const auto& f : frames) {
    auto d = distance_to_apartment(o, f);
    if (!near || d.squared < near->squared) near = d;
  }

  std::map<LatticeVertex, SqrtSum> cache;
  auto value = [&](const LatticeVertex& x) -> const SqrtSum& {
    auto it = cache.find(x);
    if (it == cache.end()) it = cache.emplace(x, ft(frames, x)).first;
    return it->second;
  };

  // steepest descent to a local minimum among neighbors
  LatticeVertex x = near->witness;
  for (;;) {
    std::optional<LatticeVertex> best;
    SqrtSum fb = value(x);
    for (const auto& y : neighbors(x)) {
      const SqrtSum& fy = value(y);
      int c = compare(fy, fb);
      if (c < 0 || (c == 0 && best && y < *best)) {
        best = y;
        fb = fy;
      }
    }
    if (!best) break;
    x = *best;
  }
  BarycenterResult res{x, {}, {}, {}};

  // F is within sqrt(3) of the convex sum D of true distances, and every point is within
  // 1/sqrt(3) of a vertex, so any vertex with F <= min is joined to a minimizer by a path
  // of neighbors with F <= min + 2 sqrt(3). Expanding exactly those vertices finds them all.
  const SqrtSum margin = SqrtSum::root(12);
  SqrtSum best = value(x);
  std::map<LatticeVertex, long> dist{{x, 0}};
  std::deque<LatticeVertex> queue{x};
  res.certified = true;
  while (!queue.empty()) {
    LatticeVertex v = std::move(queue.front());
    queue.pop_front();
    long dv = dist.at(v);
    if (dv >= cfg.r0 && compare(value(v), best + margin) > 0) continue;
    std::vector<LatticeVertex> fresh;
    for (auto& w : neighbors(v))
      if (!dist.count(w)) fresh.push_back(std::move(w));
    if (dv + 1 > cfg.cap) {
      if (!fresh.empty()) res.certified = false;
      continue;
    }
    auto vals = parallel_map(fresh.size(), cfg.threads, [&](std::size_t i) { return ft(frames, fresh[i]); });
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      if (compare(vals[i], best) < 0) best = vals[i];
      cache.emplace(fresh[i], std::move(vals[i]));
      dist.emplace(fresh[i], dv + 1);
      res.search_radius = std::max(res.search_radius, dv + 1);
      queue.push_back(std::move(fresh[i]));
    }
  }

  res.min_value = best;
  res.enclosure = best.enclosure();
  for (const auto& [v, d] : dist)
    if (cache.at(v) == best) res.min_vertices.push_back(v);
  res.evaluated = static_cast<long>(cache.size());
  return res;
}

Rational genericity_rate(const Flag& c1, const Flag& c2, long trials, long depth, std::uint64_t seed, const Prime& p) {
  if (!is_opposite(c1, c2)) throw PreconditionError("genericity_rate: C1 and C2 must be opposite");
  if (trials < 1) throw PreconditionError("genericity_rate: trials must be positive");
  auto o = LatticeVertex::standard(p);
  long hits = 0;
  for (long i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    Flag c3 = harmonic_sample(o, depth, rng);
    if (c3 != c1 && c3 != c2 && is_generic(ChamberTriple(c1, c2, c3))) ++hits;
  }
  Rational r(hits, trials);
  r.canonicalize();
  return r;
}

Flag sample_basis_set(const LatticeVertex& x, const Flag& c0, long t, long depth, Rng& rng) {
  if (t < 0 || depth < 1) throw PreconditionError("sample_basis_set: need t >= 0 and depth >= 1");
  const Prime& p = x.prime();
  std::uint64_t mod = 1;
  for (long i = 0; i < depth; ++i) mod *= static_cast<std::uint64_t>(p.value());
  const std::uint64_t q = static_cast<std::uint64_t>(p.value());
  Mat3 k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        std::uint64_t u;
        do u = rng.below(mod);
        while (u % q == 0);
        k(i, j) = static_cast<unsigned long>(u);
      } else {
        Rational e = static_cast<unsigned long>(rng.below(mod));
        k(i, j) = i > j ? e * pow_p(p, t * (i - j)) : e;
      }
    }
  Mat3 m = Sector(x, c0).adapted() * k;
  return Flag(m.column(0), m.column(1));
}

BasisSetSearch generic_triple_in_basis_set(const LatticeVertex& x, const Flag& c0, long t, long max_draws,
                                           std::uint64_t seed, long depth) {
  BasisSetSearch out;
  for (long d = 0; d < max_draws; ++d) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(d));
    Flag a = sample_basis_set(x, c0, t, depth, rng), b = sample_basis_set(x, c0, t, depth, rng),
         c = sample_basis_set(x, c0, t, depth, rng);
    out.draws = d + 1;
    if (a == b || a == c || b == c) continue;
    ChamberTriple tr(a, b, c);
    if (is_generic(tr)) {
      out.triple = tr;
      return out;
    }
  }
  return out;
}

}  // namespace bt3
