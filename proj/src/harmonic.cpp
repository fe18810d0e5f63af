#include "bt3/harmonic.hpp"

#include <set>
#include <vector>

namespace bt3 {

Mat3 random_gl3_mod(const Prime& p, long depth, Rng& rng) {
  if (depth < 1) throw PreconditionError("harmonic sampling needs depth >= 1");
  std::uint64_t mod = 1;
  for (long i = 0; i < depth; ++i) mod *= static_cast<std::uint64_t>(p.value());
  for (;;) {
    Mat3 u;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) u(r, c) = static_cast<unsigned long>(rng.below(mod));
    Rational d = u.det();
    if (sgn(d) != 0 && valuation(d, p) == 0) return u;
  }
}

Flag harmonic_sample(const LatticeVertex& x, long depth, Rng& rng) {
  Mat3 g = x.basis() * random_gl3_mod(x.prime(), depth, rng);
  return Flag(g.column(0), g.column(1));
}

long count_V_lambda(const LatticeVertex& x, const WeylVector& lambda, long cap) {
  std::set<LatticeVertex> seen{x};
  std::vector<LatticeVertex> frontier{x};
  long count = lambda == WeylVector{} ? 1 : 0;
  for (long step = 0; step < lambda.a1; ++step) {
    std::vector<LatticeVertex> next;
    for (const auto& v : frontier)
      for (auto& w : neighbors(v)) {
        if (!seen.insert(w).second) continue;
        if (static_cast<long>(seen.size()) > cap) throw DomainError("count_V_lambda: enumeration cap exceeded");
        if (vector_distance(x, w) == lambda) ++count;
        next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return count;
}

}  // namespace bt3
