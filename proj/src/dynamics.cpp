#include "bt3/dynamics.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace bt3 {

namespace {

// y^3 + a y^2 + b y + c
Integer cubic(const Integer& a, const Integer& b, const Integer& c, const Integer& y) { return ((y + a) * y + b) * y + c; }

// Root of a strictly monotone cubic on the integers of [lo, hi], if any.
std::optional<Integer> monotone_root(const Integer& a, const Integer& b, const Integer& c, Integer lo, Integer hi,
                                     bool increasing) {
  if (lo > hi) return std::nullopt;
  auto f = [&](const Integer& y) {
    int s = sgn(cubic(a, b, c, y));
    return increasing ? s : -s;
  };
  if (f(lo) > 0 || f(hi) < 0) return std::nullopt;
  // smallest y with f(y) >= 0
  while (lo < hi) {
    Integer mid = lo + (hi - lo) / 2;
    if (f(mid) >= 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  if (f(lo) == 0) return lo;
  return std::nullopt;
}

Integer floor_div(const Integer& a, long b) {
  Integer q;
  mpz_fdiv_q_ui(q.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(b));
  return q;
}

std::optional<Integer> some_integer_root(const Integer& a, const Integer& b, const Integer& c) {
  Integer bound = 1 + std::max({abs(a), abs(b), abs(c)});
  Integer disc = a * a - 3 * b;
  if (disc <= 0) return monotone_root(a, b, c, -bound, bound, true);
  Integer s = sqrt(disc);
  // integers near the two critical points are tested directly
  Integer l1 = floor_div(-a - s - 1, 3) - 1, r1 = floor_div(-a - s, 3) + 2;
  Integer l2 = floor_div(-a + s, 3) - 1, r2 = floor_div(-a + s + 1, 3) + 2;
  for (const auto& [lo, hi] : {std::pair{l1, r1}, std::pair{l2, r2}})
    for (Integer y = lo; y <= hi; ++y)
      if (sgn(cubic(a, b, c, y)) == 0) return y;
  if (auto r = monotone_root(a, b, c, -bound, l1 - 1, true)) return r;
  if (auto r = monotone_root(a, b, c, r1 + 1, l2 - 1, false)) return r;
  return monotone_root(a, b, c, r2 + 1, bound, true);
}

// Rational roots (with multiplicity) of x^3 - t x^2 + s x - d when all three are rational.
std::optional<std::array<Rational, 3>> rational_spectrum(const Rational& t, const Rational& s, const Rational& d) {
  Integer den;
  mpz_lcm(den.get_mpz_t(), t.get_den().get_mpz_t(), s.get_den().get_mpz_t());
  mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_den().get_mpz_t());
  Rational dq(den);
  Rational ra = -t * dq, rb = s * dq * dq, rc = -d * dq * dq * dq;
  Integer a = ra.get_num(), b = rb.get_num(), c = rc.get_num();
  auto y0 = some_integer_root(a, b, c);
  if (!y0) return std::nullopt;
  Integer q1 = a + *y0, q0 = b + *y0 * q1;
  Integer disc = q1 * q1 - 4 * q0;
  if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) return std::nullopt;
  Integer r = sqrt(disc);
  std::array<Rational, 3> out{Rational(*y0, den), Rational(-q1 + r, 2 * den), Rational(-q1 - r, 2 * den)};
  for (auto& x : out) x.canonicalize();
  return out;
}

Vec3 kernel_vector(const Mat3& m) {
  Vec3 rows[3] = {{m(0, 0), m(0, 1), m(0, 2)}, {m(1, 0), m(1, 1), m(1, 2)}, {m(2, 0), m(2, 1), m(2, 2)}};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Vec3 v = cross(rows[i], rows[j]);
      if (!is_zero(v)) return v;
    }
  throw DomainError("eigenspace is not a line");
}

SrhCertificate srh_on_basis(const Mat3& fb, const WeylVector& lambda, const Prime& p) {
  if (!is_regular(lambda)) throw PreconditionError("make_srh: lambda must be regular");
  if ((lambda.a1 + lambda.a2) % 3 != 0)
    throw PreconditionError("make_srh: a1 + a2 must be divisible by 3 for a determinant-one element");
  long s = (lambda.a1 + lambda.a2) / 3;
  Mat3 d = Mat3::diag(pow_p(p, -s), pow_p(p, lambda.a2 - s), pow_p(p, lambda.a1 - s));
  Mat3 g = fb * d * fb.inverse();
  return {GroupElement::make(g), Frame::from_matrix(fb), lambda, Flag(fb.column(0), fb.column(1)),
          Flag(fb.column(2), fb.column(1))};
}

LatticeVertex frame_vertex(const Frame& f, const Prime& p) { return LatticeVertex(f.basis(), p); }

// Runs the stabilization detector on the sequence produced by `next`.
Flag settle(const std::function<Flag()>& next, const LatticeVertex& o, const Frame& f, const DetectorConfig& cfg) {
  const long rcap = cfg.rcap > 0 ? cfg.rcap : 10 * cfg.horizon;
  std::vector<Flag> traj{next()};
  std::vector<long> depths;
  int streak = 0;
  auto chambers = apartment_chambers(f);
  for (long n = 0; n < cfg.horizon; ++n) {
    traj.push_back(next());
    long dn = common_depth(traj[n], traj[n + 1], o, rcap);
    if (dn <= cfg.threshold)
      streak = 0;
    else if (depths.empty() || dn >= depths.back())
      ++streak;
    else
      streak = 1;
    depths.push_back(dn);
    if (streak < 3) continue;
    long best = -1;
    int which = -1;
    bool tie = false;
    for (int k = 0; k < 6; ++k) {
      long d = common_depth(traj.back(), chambers[k], o, rcap);
      if (d > best) {
        best = d;
        which = k;
        tie = false;
      } else if (d == best) {
        tie = true;
      }
    }
    if (!tie && best > cfg.threshold) return chambers[which];
  }
  throw HorizonExceeded("limit did not stabilize within the horizon", std::move(traj), std::move(depths));
}

}  // namespace

GroupElement GroupElement::make(const Mat3& m, std::vector<int> word) {
  if (m.det() != 1) throw DomainError("group element must have determinant 1");
  return {m, std::move(word)};
}

GroupElement GroupElement::inverse() const {
  std::vector<int> w(word.rbegin(), word.rend());
  for (auto& l : w) l = -l;
  return {matrix.inverse(), std::move(w)};
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  std::vector<int> w = word;
  w.insert(w.end(), o.word.begin(), o.word.end());
  return {matrix * o.matrix, std::move(w)};
}

std::string to_string(SrhRejection r) {
  switch (r) {
    case SrhRejection::IrrationalSpectrum:
      return "irrational spectrum";
    case SrhRejection::NotHyperbolic:
      return "not hyperbolic";
    case SrhRejection::RepeatedValuation:
      return "repeated valuation";
  }
  return "unknown";
}

SrhCertificate make_srh(const Frame& f, const WeylVector& lambda, const Prime& p) {
  return srh_on_basis(f.basis(), lambda, p);
}

SrhCertificate make_srh(const Flag& attracting, const Flag& repelling, const WeylVector& lambda, const Prime& p) {
  if (!is_opposite(attracting, repelling)) throw PreconditionError("make_srh: chambers must be opposite");
  Mat3 fb = Mat3::from_columns(attracting.line(), cross(attracting.plane_normal(), repelling.plane_normal()),
                               repelling.line());
  return srh_on_basis(fb, lambda, p);
}

std::variant<SrhCertificate, SrhRejection> certify_srh(const GroupElement& g, const Prime& p) {
  const Mat3& m = g.matrix;
  Rational tr = m(0, 0) + m(1, 1) + m(2, 2);
  Rational c2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) -
                m(1, 2) * m(2, 1);
  auto spec = rational_spectrum(tr, c2, m.det());
  if (!spec) return SrhRejection::IrrationalSpectrum;
  std::array<std::pair<long, Rational>, 3> ev;
  for (int i = 0; i < 3; ++i) ev[i] = {valuation((*spec)[i], p), (*spec)[i]};
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (ev[0].first == ev[2].first) return SrhRejection::NotHyperbolic;
  if (ev[0].first == ev[1].first || ev[1].first == ev[2].first) return SrhRejection::RepeatedValuation;
  std::array<Vec3, 3> lines;
  for (int i = 0; i < 3; ++i) {
    Mat3 shifted = m;
    for (int k = 0; k < 3; ++k) shifted(k, k) -= ev[i].second;
    lines[i] = kernel_vector(shifted);
  }
  WeylVector lambda{ev[2].first - ev[0].first, ev[1].first - ev[0].first, 0};
  return SrhCertificate{g, Frame(lines[0], lines[1], lines[2]), lambda, Flag(lines[0], lines[1]),
                        Flag(lines[2], lines[1])};
}

Flag north_south_limit(const SrhCertificate& cert, const Flag& c, const Prime& p, const DetectorConfig& cfg) {
  if (cfg.horizon < 1) throw PreconditionError("north_south_limit: horizon must be positive");
  std::optional<Flag> cur;
  auto next = [&]() {
    cur = cur ? cur->transformed(cert.element.matrix) : c;
    return *cur;
  };
  return settle(next, frame_vertex(cert.frame, p), cert.frame, cfg);
}

bool proximal_pair_check(const SrhCertificate& cert1, const SrhCertificate& cert2) {
  for (const auto& e : apartment_chambers(cert1.frame))
    if (!is_opposite(cert2.repelling, e)) return false;
  return true;
}

Flag universal_contraction(const SrhCertificate& cert1, const SrhCertificate& cert2, const Flag& c, const Prime& p,
                           const DetectorConfig& cfg) {
  if (!proximal_pair_check(cert1, cert2)) throw PreconditionError("universal_contraction: pair is not in generic position");
  Mat3 p1 = Mat3::identity(), p2 = Mat3::identity();
  bool first = true;
  auto next = [&]() {
    if (!first) {
      p1 = cert1.element.matrix * p1;
      p2 = cert2.element.matrix * p2;
    }
    first = false;
    return c.transformed(p2 * p1);
  };
  return settle(next, frame_vertex(cert2.frame, p), cert2.frame, cfg);
}

std::vector<GroupElement> enumerate_elements(const std::vector<GroupElement>& generators, long length,
                                             bool with_inverses) {
  std::vector<GroupElement> letters;
  std::vector<int> codes;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    letters.push_back({generators[i].matrix, {}});
    codes.push_back(static_cast<int>(i) + 1);
    if (with_inverses) {
      letters.push_back({generators[i].matrix.inverse(), {}});
      codes.push_back(-static_cast<int>(i) - 1);
    }
  }
  auto less = [](const Mat3& a, const Mat3& b) { return compare(a, b) < 0; };
  std::set<Mat3, decltype(less)> seen(less);
  std::vector<GroupElement> out{GroupElement::make(Mat3::identity())};
  seen.insert(out[0].matrix);
  std::vector<std::size_t> frontier{0};
  for (long len = 0; len < length; ++len) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      for (std::size_t k = 0; k < letters.size(); ++k) {
        const auto& w = out[idx].word;
        if (!w.empty() && w.back() == -codes[k]) continue;
        Mat3 m = out[idx].matrix * letters[k].matrix;
        if (!seen.insert(m).second) continue;
        std::vector<int> word = w;
        word.push_back(codes[k]);
        out.push_back({std::move(m), std::move(word)});
        next.push_back(out.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

LimitSetSample limit_set_sample(const std::vector<GroupElement>& generators, long length, const Prime& p,
                                bool with_inverses) {
  if (length < 1) throw PreconditionError("limit_set_sample: word bound must be positive");
  LimitSetSample sample;
  sample.word_bound = length;
  std::set<Flag> seen;
  for (const auto& g : enumerate_elements(generators, length, with_inverses)) {
    auto r = certify_srh(g, p);
    if (auto* cert = std::get_if<SrhCertificate>(&r)) {
      if (!seen.insert(cert->attracting).second) continue;
      sample.flags.push_back(cert->attracting);
      sample.witnesses.push_back(*cert);
    }
  }
  return sample;
}

std::map<WeylElement, bool> schubert_avoidance_report(const LimitSetSample& sample, const SrhCertificate& cert) {
  if (std::find(sample.flags.begin(), sample.flags.end(), cert.attracting) == sample.flags.end())
    throw PreconditionError("schubert_avoidance_report: attracting chamber not in the sample");
  std::map<WeylElement, bool> out;
  for (const auto& w : WeylElement::all()) out[w] = false;
  for (const auto& f : sample.flags) out[weyl_distance(cert.repelling, f)] = true;
  return out;
}

Rational fixed_flag_fraction(const GroupElement& g, long trials, long depth, std::uint64_t seed, const Prime& p) {
  if (trials < 1) throw PreconditionError("fixed_flag_fraction: trials must be positive");
  auto o = LatticeVertex::standard(p);
  long fixed = 0;
  for (long i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    Flag c = harmonic_sample(o, depth, rng);
    if (c.transformed(g.matrix) == c) ++fixed;
  }
  Rational r(fixed, trials);
  r.canonicalize();
  return r;
}

namespace {

void require_probe(const LatticeVertex& o, const LatticeVertex& y) {
  auto t = vector_distance(o, y);
  if (t.a2 < 1 || t.a1 != 2 * t.a2) throw PreconditionError("probe vertex must be regular and on the barycentric ray");
}

bool member_with(const GermSimplex& germ, const ResidueChamber& cy) { return closed_opposite(germ, cy); }

}  // namespace

bool equicontinuity_set_member(const GroupElement& g, const LatticeVertex& o, const LatticeVertex& y) {
  require_probe(o, y);
  return member_with(segment_germ(o, o.transformed(g.matrix.inverse())), residue_projection(o, y));
}

bool equicontinuity_check(const GroupElement& g, const LatticeVertex& o, const LatticeVertex& y, const Flag& c,
                          const Flag& d) {
  if (!equicontinuity_set_member(g, o, y)) throw PreconditionError("equicontinuity_check: g is not in G(y)");
  if (!basis_set_contains(o, y, c) || !basis_set_contains(o, y, d))
    throw PreconditionError("equicontinuity_check: chambers must lie in U_o(y)");
  auto gy = y.transformed(g.matrix);
  return basis_set_contains(o, gy, c.transformed(g.matrix)) && basis_set_contains(o, gy, d.transformed(g.matrix)) &&
         squared_distance(o, gy) >= squared_distance(o, y);
}

std::vector<LatticeVertex> partition_probe_set(const LatticeVertex& o, const Frame& f) {
  if (distance_to_apartment(o, f).squared != 0) throw PreconditionError("partition_check: o must lie in A(F)");
  std::vector<LatticeVertex> out;
  for (const auto& e : apartment_chambers(f)) out.push_back(Sector(o, e).ray_vertex(1));
  return out;
}

bool partition_check(const std::vector<GroupElement>& generators, long length, const LatticeVertex& o, const Frame& f) {
  auto probes = partition_probe_set(o, f);
  std::vector<ResidueChamber> germs;
  for (const auto& y : probes) germs.push_back(residue_projection(o, y));
  for (const auto& g : enumerate_elements(generators, length)) {
    auto germ = segment_germ(o, o.transformed(g.matrix.inverse()));
    bool covered = std::any_of(germs.begin(), germs.end(), [&](const auto& cy) { return member_with(germ, cy); });
    if (!covered) return false;
  }
  return true;
}

}  // namespace bt3
