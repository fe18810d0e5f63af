#pragma once

#include <random>

#include "bt3/building.hpp"

namespace testing_support {

using namespace bt3;

inline Rational random_rational(std::mt19937_64& rng, const Prime& p, int vmax = 2) {
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12), shift(-vmax, vmax);
  Rational x(num(rng), den(rng));
  x.canonicalize();
  return x * pow_p(p, shift(rng));
}

inline Mat3 random_matrix(std::mt19937_64& rng, const Prime& p, int vmax = 2) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = random_rational(rng, p, vmax);
  return m;
}

inline Mat3 random_invertible(std::mt19937_64& rng, const Prime& p, int vmax = 2) {
  for (;;) {
    Mat3 m = random_matrix(rng, p, vmax);
    if (sgn(m.det()) != 0) return m;
  }
}

/// Random element of GL3(Z_(p)).
inline Mat3 random_unimodular(std::mt19937_64& rng, const Prime& p) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 20);
  for (;;) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        long d = den(rng);
        while (d % p.value() == 0) d = den(rng);
        m(r, c) = Rational(num(rng), d);
        m(r, c).canonicalize();
      }
    Rational d = m.det();
    if (sgn(d) != 0 && valuation(d, p) == 0) return m;
  }
}

/// Random element of SL3(Q) with moderate entries.
inline Mat3 random_sl3(std::mt19937_64& rng, const Prime& p) {
  std::uniform_int_distribution<int> idx(0, 2), expo(-1, 1);
  Mat3 g = Mat3::identity();
  for (int k = 0; k < 4; ++k) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Mat3 e = Mat3::identity();
    e(i, j) = random_rational(rng, p, 1);
    g = g * e;
  }
  int a = expo(rng), b = expo(rng);
  return g * Mat3::diag(pow_p(p, a), pow_p(p, b), pow_p(p, -a - b));
}

inline LatticeVertex random_vertex(std::mt19937_64& rng, const Prime& p, int vmax = 2) {
  return LatticeVertex(random_invertible(rng, p, vmax), p);
}

inline Vec3 random_vec(std::mt19937_64& rng, const Prime& p) {
  for (;;) {
    Vec3 v{random_rational(rng, p, 1), random_rational(rng, p, 1), random_rational(rng, p, 1)};
    if (!is_zero(v)) return v;
  }
}

inline Flag random_flag(std::mt19937_64& rng, const Prime& p) {
  for (;;) {
    Vec3 a = random_vec(rng, p), b = random_vec(rng, p);
    if (!is_zero(cross(a, b))) return Flag(a, b);
  }
}

}  // namespace testing_support
