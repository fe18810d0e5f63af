#include "bt3/appendix.hpp"

#include <algorithm>
#include <set>

#include "bt3/parallel.hpp"

namespace bt3 {

void Laurent::add(const Monomial& m, const Integer& c) {
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Laurent Laurent::constant(long c) {
  Laurent l;
  if (c != 0) l.add({0, 0, 0, 0}, c);
  return l;
}

Laurent Laurent::var(int i, int k) {
  Laurent l;
  Monomial m{0, 0, 0, 0};
  m[i] = k;
  l.add(m, 1);
  return l;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  for (const auto& [m, c] : o.terms_) r.add(m, c);
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
  Laurent r = *this;
  for (const auto& [m, c] : o.terms_) r.add(m, -c);
  return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m;
      for (int i = 0; i < 4; ++i) m[i] = m1[i] + m2[i];
      r.add(m, c1 * c2);
    }
  return r;
}

Rational Laurent::evaluate(const std::array<Rational, 4>& x) const {
  Rational s = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < 4; ++i) {
      if (m[i] < 0 && sgn(x[i]) == 0) throw DomainError("Laurent: negative power of zero");
      Rational b = m[i] < 0 ? Rational(1 / x[i]) : x[i];
      for (int k = 0; k < std::abs(m[i]); ++k) t *= b;
    }
    s += t;
  }
  return s;
}

SymbolicMatrix symbolic_product(const SymbolicMatrix& x, const SymbolicMatrix& y) {
  SymbolicMatrix r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[3 * i + j] = r[3 * i + j] + x[3 * i + k] * y[3 * k + j];
  return r;
}

Mat3 evaluate(const SymbolicMatrix& m, const std::array<Rational, 4>& x) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m[3 * i + j].evaluate(x);
  return r;
}

SymbolicMatrix torus_symbolic(TorusFamily f, int i) {
  const Laurent a = Laurent::var(i), e = Laurent::var(i + 1);
  const Laurent inv = Laurent::var(i, -1) * Laurent::var(i + 1, -1);
  const Laurent zero;
  if (f == TorusFamily::A)
    return {a, 2 * e - 2 * a, inv - 2 * e + a, zero, e, inv - e, zero, zero, inv};
  return {a, zero, zero, a - e, e, zero, a - 2 * e + inv, 2 * e - 2 * inv, inv};
}

Mat3 torus_family_member(const Rational& a, const Rational& e, TorusFamily f) {
  if (sgn(a) == 0 || sgn(e) == 0) throw PreconditionError("torus_family_member: a e must be nonzero");
  return evaluate(torus_symbolic(f), {a, e, 0, 0});
}

Flag parabolic_p() { return Flag({1, 0, 0}, {0, 1, 0}); }
Flag parabolic_p_prime() { return Flag({0, 0, 1}, {0, 1, 0}); }
Flag parabolic_pt(const Rational& t) { return Flag({1, 1, 1}, {1, 0, -t}); }
Vec3 vt_normal(const Rational& t) { return {-t, 1 + t, -1}; }

namespace {

Vec3 row_times(const Vec3& n, const Mat3& g) {
  Vec3 r{0, 0, 0};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) r[j] += n[k] * g(k, j);
  return r;
}

using LVec = std::array<Laurent, 3>;

long as_long(const Rational& x) {
  if (x.get_den() != 1 || !x.get_num().fits_slong_p()) throw DomainError("symbolic stabilizer: non-integer frame vector");
  return x.get_num().get_si();
}

LVec lcross(const LVec& a, const Vec3& b) {
  const long b0 = as_long(b[0]), b1 = as_long(b[1]), b2 = as_long(b[2]);
  return {b2 * a[1] - b1 * a[2], b0 * a[2] - b2 * a[0], b1 * a[0] - b0 * a[1]};
}

LVec apply(const SymbolicMatrix& m, const Vec3& v) {
  LVec r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[i] = r[i] + as_long(v[k]) * m[3 * i + k];
  return r;
}

LVec apply_row(const Vec3& n, const SymbolicMatrix& m) {
  LVec r;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) r[j] = r[j] + as_long(n[k]) * m[3 * k + j];
  return r;
}

bool lzero(const LVec& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

}  // namespace

bool stabilizes(const Mat3& g, const IdealSimplex& s) {
  bool ok = true;
  if (s.kind != IdealSimplex::Kind::Plane) ok = ok && is_zero(cross(g * s.line, s.line));
  if (s.kind != IdealSimplex::Kind::Line) ok = ok && is_zero(cross(row_times(s.normal, g), s.normal));
  return ok;
}

std::vector<IdealSimplex> stabilized_simplices(const Mat3& g) {
  std::vector<IdealSimplex> out;
  for (const auto& s : ideal_simplices(Frame::standard()))
    if (stabilizes(g, s)) out.push_back(s);
  return out;
}

std::vector<IdealSimplex> stabilized_simplices(const SymbolicMatrix& m) {
  std::vector<IdealSimplex> out;
  for (const auto& s : ideal_simplices(Frame::standard())) {
    bool ok = true;
    if (s.kind != IdealSimplex::Kind::Plane) ok = ok && lzero(lcross(apply(m, s.line), s.line));
    if (s.kind != IdealSimplex::Kind::Line) ok = ok && lzero(lcross(apply_row(s.normal, m), s.normal));
    if (ok) out.push_back(s);
  }
  return out;
}

PositionReport pairwise_position_report(const Rational& t) {
  const Flag p = parabolic_p(), pp = parabolic_p_prime(), pt = parabolic_pt(t);
  const Frame standard = apartment_from_opposite(p, pp);
  auto position = [&](std::string name, const Flag& c, const Flag& d) {
    PairPosition r{std::move(name), is_opposite(c, d), {}};
    if (r.opposite) r.common_with_standard = apartment_infinity_intersection(standard, apartment_from_opposite(c, d));
    return r;
  };
  PositionReport rep{t, {position("P,P'", p, pp), position("P,Pt", p, pt), position("P',Pt", pp, pt)}};
  const Vec3 n = vt_normal(t);
  rep.e1_in_vt = sgn(n[0]) == 0;
  rep.e2_in_vt = sgn(n[1]) == 0;
  return rep;
}

std::vector<FamilyVerdict> generic_family_scan(const std::vector<Rational>& ts, unsigned threads) {
  return parallel_map(ts.size(), threads, [&](std::size_t i) {
    const Rational& t = ts[i];
    FamilyVerdict v{t, is_generic(ChamberTriple(parabolic_p(), parabolic_p_prime(), parabolic_pt(t))), ""};
    const Vec3 n = vt_normal(t);
    if (sgn(n[0]) == 0) v.witness = "e1 in V_t";
    if (sgn(n[1]) == 0) v.witness = "e2 in V_t";
    return v;
  });
}

namespace {

using FVec = std::array<std::int64_t, 3>;

struct Fq {
  std::int64_t q;

  std::int64_t red(std::int64_t x) const { return ((x % q) + q) % q; }
  std::int64_t inv(std::int64_t x) const {
    std::int64_t r = 1, b = red(x);
    for (std::int64_t k = q - 2; k > 0; k >>= 1, b = b * b % q)
      if (k & 1) r = r * b % q;
    return r;
  }
  FVec cross(const FVec& a, const FVec& b) const {
    return {red(a[1] * b[2] - a[2] * b[1]), red(a[2] * b[0] - a[0] * b[2]), red(a[0] * b[1] - a[1] * b[0])};
  }
  std::int64_t dot(const FVec& a, const FVec& b) const { return red(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]); }
  FVec normalize(FVec v) const {
    for (auto x : v)
      if (x != 0) {
        std::int64_t s = inv(x);
        for (auto& y : v) y = red(y * s);
        return v;
      }
    return v;
  }
};

struct FFlag {
  FVec line, normal;
};

std::set<std::pair<FVec, FVec>> fq_simplices(const Fq& f, const FFlag& c, const FFlag& d) {
  std::array<FVec, 3> l{f.normalize(c.line), f.normalize(f.cross(c.normal, d.normal)), f.normalize(d.line)};
  const FVec none{0, 0, 0};
  std::set<std::pair<FVec, FVec>> out;
  for (int i = 0; i < 3; ++i) {
    out.insert({l[i], none});
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        FVec n = f.normalize(f.cross(l[i], l[j]));
        out.insert({none, n});
        out.insert({l[i], n});
      }
  }
  return out;
}

}  // namespace

bool generic_over_fq(std::int64_t t, std::int64_t q) {
  Prime check(q);
  Fq f{q};
  t = f.red(t);
  std::array<FFlag, 3> c{FFlag{{1, 0, 0}, {0, 0, 1}}, FFlag{{0, 0, 1}, {1, 0, 0}},
                         FFlag{{1, 1, 1}, {f.red(-t), f.red(1 + t), f.red(-1)}}};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (f.dot(c[i].line, c[j].normal) == 0 || f.dot(c[j].line, c[i].normal) == 0) return false;
  auto s01 = fq_simplices(f, c[0], c[1]), s02 = fq_simplices(f, c[0], c[2]), s12 = fq_simplices(f, c[1], c[2]);
  for (const auto& s : s01)
    if (s02.count(s) && s12.count(s)) return false;
  return true;
}

TorusCount torus_count_fq(TorusFamily family, std::int64_t q) {
  Prime check(q);
  if (q == 2) throw PreconditionError("torus_count_fq: t = 1 degenerates in characteristic 2");
  Fq f{q};
  const FVec v{1, 1, 1}, n{f.red(-1), 2 % q, f.red(-1)};
  using M = std::array<std::int64_t, 9>;
  auto in_p1 = [&](const M& m) {
    FVec mv{}, nm{};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) {
        mv[i] = f.red(mv[i] + m[3 * i + k] * v[k]);
        nm[i] = f.red(nm[i] + n[k] * m[3 * k + i]);
      }
    FVec zero{0, 0, 0};
    return f.cross(mv, v) == zero && f.cross(nm, n) == zero;
  };
  // free triangular positions: above the diagonal for A, below for B
  const std::array<int, 3> slots = family == TorusFamily::A ? std::array<int, 3>{1, 2, 5} : std::array<int, 3>{3, 6, 7};
  TorusCount out;
  for (std::int64_t a = 1; a < q; ++a)
    for (std::int64_t e = 1; e < q; ++e)
      for (std::int64_t x = 0; x < q * q * q; ++x) {
        M m{};
        m[0] = a;
        m[4] = e;
        m[8] = f.inv(a * e);
        m[slots[0]] = x % q;
        m[slots[1]] = (x / q) % q;
        m[slots[2]] = x / (q * q);
        if (in_p1(m)) ++out.intersection;
      }
  std::set<M> members;
  out.contained = true;
  const SymbolicMatrix s = torus_symbolic(family);
  for (std::int64_t a = 1; a < q; ++a)
    for (std::int64_t e = 1; e < q; ++e) {
      M m{};
      Mat3 r = evaluate(s, {Rational(a), Rational(e), 0, 0});
      for (int k = 0; k < 9; ++k) {
        const Rational& x = r(k / 3, k % 3);
        m[k] = f.red(f.red(x.get_num().get_si()) * f.inv(f.red(x.get_den().get_si())));
      }
      out.contained = out.contained && in_p1(m);
      members.insert(m);
    }
  out.torus = static_cast<long>(members.size());
  return out;
}

}  // namespace bt3
