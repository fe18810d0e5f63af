#include "bt3/building.hpp"

#include <algorithm>
#include <limits>

namespace bt3 {

namespace {

using FpVec = std::array<std::int64_t, 3>;

FpVec reduce(const Vec3& v, const Prime& p) {
  return {reduce_mod_p(v[0], p), reduce_mod_p(v[1], p), reduce_mod_p(v[2], p)};
}

FpVec normalize_fp(FpVec v, std::int64_t p) {
  for (int i = 0; i < 3; ++i)
    if (v[i] != 0) {
      std::int64_t inv = mod_inverse(v[i], p);
      for (auto& x : v) x = static_cast<std::int64_t>((static_cast<__int128>(x) * inv) % p);
      return v;
    }
  throw DomainError("zero vector over F_p");
}

FpVec cross_fp(const FpVec& a, const FpVec& b, std::int64_t p) {
  auto m = [p](std::int64_t x, std::int64_t y) { return static_cast<std::int64_t>((static_cast<__int128>(x) * y) % p); };
  auto sub = [p](std::int64_t x, std::int64_t y) { return ((x - y) % p + p) % p; };
  return {sub(m(a[1], b[2]), m(a[2], b[1])), sub(m(a[2], b[0]), m(a[0], b[2])), sub(m(a[0], b[1]), m(a[1], b[0]))};
}

std::int64_t dot_fp(const FpVec& a, const FpVec& b, std::int64_t p) {
  __int128 s = 0;
  for (int i = 0; i < 3; ++i) s += static_cast<__int128>(a[i]) * b[i];
  return static_cast<std::int64_t>(s % p);
}

long min_valuation(const Mat3& m, const Prime& p) {
  long best = std::numeric_limits<long>::max();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (sgn(m(r, c)) != 0) best = std::min(best, valuation(m(r, c), p));
  return best;
}

long isqrt(long n) {
  if (n <= 0) return 0;
  long r = static_cast<long>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Smith basis of M_o^{-1} M_z as (exponent, column) pairs sorted by exponent.
std::array<std::pair<long, Vec3>, 3> sorted_smith(const LatticeVertex& o, const LatticeVertex& z) {
  auto sd = smith_decomposition(o.basis().inverse() * z.basis(), o.prime());
  std::array<std::pair<long, Vec3>, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = {sd.exponents[i], sd.basis.column(i)};
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

WeylVector WeylVector::normalized(std::array<long, 3> e) {
  std::sort(e.begin(), e.end(), std::greater<>());
  return {e[0] - e[2], e[1] - e[2], 0};
}

WeylVector opposition_involution(const WeylVector& l) { return {l.a1 - l.a3, l.a1 - l.a2, 0}; }

bool is_regular(const WeylVector& l) { return l.a1 > l.a2 && l.a2 > l.a3; }

long squared_length(const WeylVector& l) { return squared_norm({l.a1, l.a2, l.a3}); }

long squared_norm(const std::array<long, 3>& e) {
  long s = e[0] + e[1] + e[2];
  return (3 * (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]) - s * s) / 2;
}

LatticeVertex::LatticeVertex(const Mat3& generators, const Prime& p) : p_(p) {
  long m = min_valuation(generators, p);
  Mat3 scaled_gen = generators;
  if (m != 0) {
    Rational s = pow_p(p, -m);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) scaled_gen(r, c) *= s;
  }
  auto h = column_hermite_form(scaled_gen, p);
  basis_ = h.basis;
  long t = (h.exponents[0] + h.exponents[1] + h.exponents[2]) % 3;
  type_ = static_cast<int>(t < 0 ? t + 3 : t);
}

LatticeVertex LatticeVertex::standard(const Prime& p) { return LatticeVertex(Mat3::identity(), p); }

WeylVector vector_distance(const LatticeVertex& x, const LatticeVertex& y) {
  return WeylVector::normalized(smith_exponents(x.basis().inverse() * y.basis(), x.prime()));
}

long squared_distance(const LatticeVertex& x, const LatticeVertex& y) { return squared_length(vector_distance(x, y)); }

std::vector<LatticeVertex> neighbors(const LatticeVertex& x) {
  const Prime& p = x.prime();
  const long q = p.value();
  std::vector<LatticeVertex> out;
  out.reserve(static_cast<std::size_t>(2 * (q * q + q + 1)));
  // upper triangular H with diagonal in {1,p}; (i,j) free in [0,p) when H(i,i) = p and H(j,j) = 1
  for (int mask = 1; mask < 7; ++mask) {
    std::array<bool, 3> big{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0};
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (big[i] && !big[j]) free.emplace_back(i, j);
    long total = 1;
    for (std::size_t k = 0; k < free.size(); ++k) total *= q;
    for (long code = 0; code < total; ++code) {
      Mat3 h = Mat3::diag(big[0] ? q : 1, big[1] ? q : 1, big[2] ? q : 1);
      long c = code;
      for (auto [i, j] : free) {
        h(i, j) = c % q;
        c /= q;
      }
      out.emplace_back(x.basis() * h, p);
    }
  }
  return out;
}

LatticeVertex apartment_vertex(const Mat3& fb, const std::array<long, 3>& m, const Prime& p) {
  return LatticeVertex(fb * Mat3::diag(pow_p(p, m[0]), pow_p(p, m[1]), pow_p(p, m[2])), p);
}

ApartmentProbe::ApartmentProbe(const LatticeVertex& x, const Mat3& fb) {
  const Prime& p = x.prime();
  Mat3 n = x.basis().inverse() * fb;
  for (int j = 0; j < 3; ++j) {
    long best = std::numeric_limits<long>::max();
    for (int r = 0; r < 3; ++r)
      if (sgn(n(r, j)) != 0) best = std::min(best, valuation(n(r, j), p));
    col_[j] = best;
  }
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int q = 0; q < 3; ++q) {
    int j = pairs[q][0], k = pairs[q][1];
    for (int r = 0; r < 3; ++r)
      for (int s = r + 1; s < 3; ++s) {
        Rational minor = n(r, j) * n(s, k) - n(r, k) * n(s, j);
        if (sgn(minor) == 0) continue;
        long v = valuation(minor, p);
        if (!pair_[q] || v < *pair_[q]) pair_[q] = v;
      }
  }
  det_ = valuation(n.det(), p);
}

WeylVector ApartmentProbe::theta(const std::array<long, 3>& m) const {
  long s1 = std::min({col_[0] + m[0], col_[1] + m[1], col_[2] + m[2]});
  long s2 = std::min({*pair_[0] + m[0] + m[1], *pair_[1] + m[0] + m[2], *pair_[2] + m[1] + m[2]});
  long s3 = det_ + m[0] + m[1] + m[2];
  return {s3 - s2 - s1, s2 - 2 * s1, 0};
}

ApartmentDistance distance_to_apartment(const LatticeVertex& x, const Frame& f) {
  const Prime& p = x.prime();
  Mat3 fb = f.basis();
  auto h = column_hermite_form(fb.inverse() * x.basis(), p);
  std::array<long, 3> k = {h.exponents[0] - h.exponents[2], h.exponents[1] - h.exponents[2], 0};
  ApartmentProbe probe(x, fb);
  long d0 = squared_length(probe.theta(k));
  long bound = 4 * d0;
  long kmax = isqrt(16 * d0 / 3) + 1;
  long best = d0;
  std::array<long, 3> best_m = k;
  for (long a = -kmax; a <= kmax; ++a)
    for (long b = -kmax; b <= kmax; ++b) {
      if (a * a - a * b + b * b > bound) continue;
      std::array<long, 3> m = {k[0] + a, k[1] + b, 0};
      long d = squared_length(probe.theta(m));
      if (d < best || (d == best && m < best_m)) {
        best = d;
        best_m = m;
      }
    }
  return {best, apartment_vertex(fb, best_m, p), best_m};
}

Mat3 adapted_basis(const LatticeVertex& x, const Flag& c) {
  Mat3 fm = c.matrix();
  return fm * column_hermite_form(fm.inverse() * x.basis(), x.prime()).basis;
}

ResidueChamber make_residue_chamber(std::array<std::int64_t, 3> line, std::array<std::int64_t, 3> plane_normal,
                                    std::int64_t p) {
  for (auto* v : {&line, &plane_normal})
    for (auto& e : *v) e = ((e % p) + p) % p;
  if (dot_fp(line, plane_normal, p) != 0) throw DomainError("residue line not contained in plane");
  return {normalize_fp(line, p), normalize_fp(plane_normal, p), p};
}

bool residue_opposite(const ResidueChamber& a, const ResidueChamber& b) {
  return dot_fp(a.line, b.plane, a.p) != 0 && dot_fp(b.line, a.plane, a.p) != 0;
}

ResidueChamber residue_projection(const LatticeVertex& o, const Flag& c) {
  const Prime& p = o.prime();
  Mat3 u = o.basis().inverse() * adapted_basis(o, c);
  FpVec l = reduce(u.column(0), p), s = reduce(u.column(1), p);
  return make_residue_chamber(l, cross_fp(l, s, p.value()), p.value());
}

ResidueChamber residue_projection(const LatticeVertex& o, const LatticeVertex& y) {
  auto s = sorted_smith(o, y);
  if (s[0].first == s[1].first || s[1].first == s[2].first) throw PreconditionError("irregular segment");
  const Prime& p = o.prime();
  FpVec l = reduce(s[0].second, p), m = reduce(s[1].second, p);
  return make_residue_chamber(l, cross_fp(l, m, p.value()), p.value());
}

GermSimplex segment_germ(const LatticeVertex& o, const LatticeVertex& z) {
  auto s = sorted_smith(o, z);
  const Prime& p = o.prime();
  const std::int64_t q = p.value();
  GermSimplex g;
  bool lo = s[0].first == s[1].first, hi = s[1].first == s[2].first;
  if (lo && hi) return g;
  FpVec b0 = reduce(s[0].second, p), b1 = reduce(s[1].second, p);
  if (!lo && !hi) {
    auto c = make_residue_chamber(b0, cross_fp(b0, b1, q), q);
    g.kind = GermSimplex::Kind::Chamber;
    g.line = c.line;
    g.plane = c.plane;
  } else if (lo) {
    g.kind = GermSimplex::Kind::Plane;
    g.plane = normalize_fp(cross_fp(b0, b1, q), q);
  } else {
    g.kind = GermSimplex::Kind::Line;
    g.line = normalize_fp(b0, q);
  }
  return g;
}

bool closed_opposite(const GermSimplex& germ, const ResidueChamber& c) {
  switch (germ.kind) {
    case GermSimplex::Kind::Empty:
      return true;
    case GermSimplex::Kind::Line:
      return dot_fp(germ.line, c.plane, c.p) != 0;
    case GermSimplex::Kind::Plane:
      return dot_fp(c.line, germ.plane, c.p) != 0;
    case GermSimplex::Kind::Chamber:
      return residue_opposite({germ.line, germ.plane, c.p}, c);
  }
  return false;
}

}  // namespace bt3
