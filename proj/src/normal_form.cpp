#include "bt3/normal_form.hpp"

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

namespace bt3 {

namespace {

void axpy(Vec3& y, const Rational& a, const Vec3& x) {
  for (int i = 0; i < 3; ++i)
    if (sgn(x[i]) != 0) y[i] -= a * x[i];
}

}  // namespace

HermiteForm column_hermite_form(std::span<const Vec3> generators, const Prime& p) {
  std::vector<Vec3> active(generators.begin(), generators.end());
  HermiteForm h;
  std::array<Vec3, 3> cols;
  for (int row = 2; row >= 0; --row) {
    std::size_t piv = active.size();
    long best = 0;
    for (std::size_t j = 0; j < active.size(); ++j) {
      if (sgn(active[j][row]) == 0) continue;
      long v = valuation(active[j][row], p);
      if (piv == active.size() || v < best) {
        piv = j;
        best = v;
      }
    }
    if (piv == active.size()) throw DomainError("lattice generators do not span");
    Vec3 pivot = std::move(active[piv]);
    active.erase(active.begin() + static_cast<long>(piv));
    for (auto& c : active) {
      if (sgn(c[row]) == 0) continue;
      Rational f = c[row] / pivot[row];
      axpy(c, f, pivot);
    }
    pivot = scaled(pivot, pow_p(p, best) / pivot[row]);
    h.exponents[row] = best;
    cols[row] = std::move(pivot);
  }
  for (int j = 1; j < 3; ++j)
    for (int i = j - 1; i >= 0; --i) {
      const Rational& x = cols[j][i];
      if (sgn(x) == 0) continue;
      Rational r = residue(x, p, h.exponents[i]);
      if (r == x) continue;
      Rational q = (x - r) / cols[i][i];
      axpy(cols[j], q, cols[i]);
    }
  h.basis = Mat3::from_columns(cols[0], cols[1], cols[2]);
  return h;
}

HermiteForm column_hermite_form(const Mat3& m, const Prime& p) {
  std::array<Vec3, 3> g{m.column(0), m.column(1), m.column(2)};
  return column_hermite_form(std::span<const Vec3>(g), p);
}

SmithDecomposition smith_decomposition(const Mat3& m, const Prime& p) {
  Mat3 n = m;
  Mat3 einv = Mat3::identity();
  SmithDecomposition out;
  auto swap_rows = [&](int a, int b) {
    if (a == b) return;
    for (int c = 0; c < 3; ++c) std::swap(n(a, c), n(b, c));
    for (int r = 0; r < 3; ++r) std::swap(einv(r, a), einv(r, b));
  };
  auto swap_cols = [&](int a, int b) {
    if (a == b) return;
    for (int r = 0; r < 3; ++r) std::swap(n(r, a), n(r, b));
  };
  for (int k = 0; k < 3; ++k) {
    int pr = -1, pc = -1;
    long best = 0;
    for (int r = k; r < 3; ++r)
      for (int c = k; c < 3; ++c) {
        if (sgn(n(r, c)) == 0) continue;
        long v = valuation(n(r, c), p);
        if (pr < 0 || v < best) {
          pr = r;
          pc = c;
          best = v;
        }
      }
    if (pr < 0) throw DomainError("smith decomposition of singular matrix");
    swap_rows(k, pr);
    swap_cols(k, pc);
    for (int i = k + 1; i < 3; ++i) {
      if (sgn(n(i, k)) == 0) continue;
      Rational f = n(i, k) / n(k, k);
      // row_i -= f row_k, so E^{-1} gains column_k += f column_i
      for (int c = k; c < 3; ++c) n(i, c) -= f * n(k, c);
      for (int r = 0; r < 3; ++r)
        if (sgn(einv(r, i)) != 0) einv(r, k) += f * einv(r, i);
    }
    for (int c = k + 1; c < 3; ++c) n(k, c) = 0;
    out.exponents[k] = best;
  }
  out.basis = einv;
  return out;
}

std::array<long, 3> smith_exponents(const Mat3& m, const Prime& p) {
  auto e = smith_decomposition(m, p).exponents;
  std::sort(e.begin(), e.end(), std::greater<>());
  return e;
}

Mat3 lattice_sum(const Mat3& a, const Mat3& b, const Prime& p) {
  std::array<Vec3, 6> g{a.column(0), a.column(1), a.column(2), b.column(0), b.column(1), b.column(2)};
  return column_hermite_form(std::span<const Vec3>(g), p).basis;
}

Mat3 lattice_intersection(const Mat3& a, const Mat3& b, const Prime& p) {
  Mat3 dual = lattice_sum(a.inverse().transposed(), b.inverse().transposed(), p);
  return column_hermite_form(dual.inverse().transposed(), p).basis;
}

bool lattice_contains(const Mat3& b, const Mat3& a, const Prime& p) {
  Mat3 t = b.inverse() * a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (sgn(t(r, c)) != 0 && valuation(t(r, c), p) < 0) return false;
  return true;
}

}  // namespace bt3
