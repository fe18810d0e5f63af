#include "bt3/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace bt3 {

namespace {

long isqrt(long n) {
  if (n <= 0) return 0;
  long r = static_cast<long>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

long ceil_div(long a, long b) { return a / b + ((a % b != 0 && ((a < 0) == (b < 0))) ? 1 : 0); }

// min over terms (alpha + slope * n); returns the n from which the term with the
// smallest slope is minimal
long final_piece_start(const std::vector<std::pair<long, long>>& terms) {
  long s_min = std::numeric_limits<long>::max();
  for (auto [a, s] : terms) s_min = std::min(s_min, s);
  long a_min = std::numeric_limits<long>::max();
  for (auto [a, s] : terms)
    if (s == s_min) a_min = std::min(a_min, a);
  long start = 0;
  for (auto [a, s] : terms)
    if (s > s_min) start = std::max(start, ceil_div(a_min - a, s - s_min));
  return start;
}

std::array<long, 3> hermite_exponents(const Mat3& m, const Prime& p) { return column_hermite_form(m, p).exponents; }

}  // namespace

WeylElement::WeylElement(std::array<int, 3> images) : w_(images) {
  auto s = images;
  std::sort(s.begin(), s.end());
  if (s != std::array<int, 3>{0, 1, 2}) throw DomainError("not a permutation");
}

std::array<WeylElement, 6> WeylElement::all() {
  return {WeylElement({0, 1, 2}), WeylElement({0, 2, 1}), WeylElement({1, 0, 2}),
          WeylElement({1, 2, 0}), WeylElement({2, 0, 1}), WeylElement({2, 1, 0})};
}

int WeylElement::length() const {
  int inv = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (w_[a] > w_[b]) ++inv;
  return inv;
}

WeylElement weyl_distance(const Flag& c, const Flag& d) {
  auto t = [&](int i, int j) {
    std::vector<Vec3> v;
    if (i >= 1) v.push_back(c.line());
    if (i >= 2) v.push_back(c.plane_vector());
    if (j >= 1) v.push_back(d.line());
    if (j >= 2) v.push_back(d.plane_vector());
    return i + j - rank(v);
  };
  std::array<int, 3> w{};
  int w0 = t(1, 1) == 1 ? 0 : (t(1, 2) == 1 ? 1 : 2);
  w[0] = w0;
  int w1 = 2;
  for (int j = 1; j <= 2; ++j)
    if (t(2, j) - (w0 + 1 <= j ? 1 : 0) == 1) {
      w1 = j - 1;
      break;
    }
  w[1] = w1;
  w[2] = 3 - w0 - w1;
  return WeylElement(w);
}

bool is_opposite(const Flag& c, const Flag& d) {
  return sgn(det3(c.line(), d.line(), d.plane_vector())) != 0 && sgn(det3(c.line(), c.plane_vector(), d.line())) != 0;
}

Frame apartment_from_opposite(const Flag& c, const Flag& d) {
  if (!is_opposite(c, d)) throw PreconditionError("apartment_from_opposite: flags are not opposite");
  return Frame(c.line(), cross(c.plane_normal(), d.plane_normal()), d.line());
}

std::array<Flag, 6> apartment_chambers(const Frame& f) {
  std::array<Flag, 6> out{Flag::standard(), Flag::standard(), Flag::standard(),
                          Flag::standard(), Flag::standard(), Flag::standard()};
  int k = 0;
  for (const auto& w : WeylElement::all()) out[k++] = Flag(f.line(w(0)), f.line(w(1)));
  return out;
}

bool contains_chamber(const Frame& f, const Flag& c) {
  int i = f.index_of(c.line());
  if (i < 0) return false;
  Vec3 n = c.plane_normal();
  for (int j = 0; j < 3; ++j)
    if (j != i && sgn(dot(n, f.line(j))) == 0) return true;
  return false;
}

Mat3 ordered_frame_basis(const Frame& f, const Flag& c) {
  int i = f.index_of(c.line());
  if (i >= 0) {
    Vec3 n = c.plane_normal();
    for (int j = 0; j < 3; ++j)
      if (j != i && sgn(dot(n, f.line(j))) == 0) return Mat3::from_columns(f.line(i), f.line(j), f.line(3 - i - j));
  }
  throw PreconditionError("flag is not a chamber of the apartment");
}

Sector::Sector(const LatticeVertex& x, const Flag& c)
    : basis_(adapted_basis(x, c)), inverse_(basis_.inverse()), p_(x.prime()) {}

bool Sector::contains(const LatticeVertex& y) const {
  auto h = column_hermite_form(inverse_ * y.basis(), p_);
  if (sgn(h.basis(0, 1)) != 0 || sgn(h.basis(0, 2)) != 0 || sgn(h.basis(1, 2)) != 0) return false;
  return h.exponents[0] <= h.exponents[1] && h.exponents[1] <= h.exponents[2];
}

LatticeVertex Sector::ray_vertex(long t) const { return apartment_vertex(basis_, {0, t, 2 * t}, p_); }

bool sector_membership(const LatticeVertex& x, const Flag& c, const LatticeVertex& y) { return Sector(x, c).contains(y); }

bool basis_set_contains(const LatticeVertex& x, const LatticeVertex& y, const Flag& c) {
  if (x.type() != y.type()) throw PreconditionError("basis set requires vertices of the same type");
  return sector_membership(x, c, y);
}

long common_depth(const Flag& c, const Flag& d, const LatticeVertex& o, long rmax) {
  if (rmax < 0) throw PreconditionError("common_depth: negative radius");
  Sector qc(o, c), qd(o, d);
  long top = 0;
  while (isqrt(3 * top * top) < rmax) ++top;
  if (qd.contains(qc.ray_vertex(top))) return rmax;
  long lo = 0, hi = top;  // lo inside, hi outside
  while (hi - lo > 1) {
    long mid = (lo + hi) / 2;
    (qd.contains(qc.ray_vertex(mid)) ? lo : hi) = mid;
  }
  return std::min(rmax, isqrt(3 * lo * lo));
}

LatticeVertex retraction(const Frame& f, const Flag& c, const LatticeVertex& x, const Prime& p) {
  Mat3 fb = ordered_frame_basis(f, c);
  return apartment_vertex(fb, hermite_exponents(fb.inverse() * x.basis(), p), p);
}

Flag boundary_retraction(const Frame& f, const Flag& c, const Flag& d, const Prime& p, long horizon) {
  Mat3 fb = ordered_frame_basis(f, c);
  Mat3 n = fb.inverse() * d.matrix();
  // x_n = fb * n * diag(1, p^n, p^2n); its Hermite exponents are minima of linear
  // functions of n, which are linear from some computable n on
  const long slope[3] = {0, 1, 2};
  std::vector<std::pair<long, long>> bottom, pairs;
  for (int j = 0; j < 3; ++j)
    if (sgn(n(2, j)) != 0) bottom.emplace_back(valuation(n(2, j), p), slope[j]);
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      Rational minor = n(1, j) * n(2, k) - n(1, k) * n(2, j);
      if (sgn(minor) != 0) pairs.emplace_back(valuation(minor, p), slope[j] + slope[k]);
    }
  long start = std::max({1L, final_piece_start(bottom), final_piece_start(pairs)});
  if (start + 3 > horizon) throw HorizonExceeded("boundary_retraction: no stabilization within horizon");
  auto exps = [&](long m) {
    return hermite_exponents(n * Mat3::diag(1, pow_p(p, m), pow_p(p, 2 * m)), p);
  };
  std::optional<std::array<long, 3>> step;
  auto prev = exps(start);
  for (long m = start + 1; m <= start + 3; ++m) {
    auto cur = exps(m);
    std::array<long, 3> inc{cur[0] - prev[0], cur[1] - prev[1], cur[2] - prev[2]};
    long lo = std::min({inc[0], inc[1], inc[2]});
    for (auto& e : inc) e -= lo;
    if (step && *step != inc) throw HorizonExceeded("boundary_retraction: increments did not stabilize");
    step = inc;
    prev = cur;
  }
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return (*step)[a] < (*step)[b]; });
  auto s = *step;
  std::sort(s.begin(), s.end());
  if (s != std::array<long, 3>{0, 1, 2}) throw std::logic_error("boundary_retraction: degenerate limit direction");
  return Flag(fb.column(order[0]), fb.column(order[1]));
}

Flag opposite_in_apartment(const Flag& d, const Frame& f) {
  for (const auto& e : apartment_chambers(f))
    if (is_opposite(d, e)) return e;
  throw std::logic_error("opposite_in_apartment: no opposite chamber found");
}

}  // namespace bt3
