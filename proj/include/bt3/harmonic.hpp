#pragma once

#include "bt3/building.hpp"
#include "bt3/rng.hpp"

namespace bt3 {

/// Uniform element of GL3(Z/p^k), lifted to integer entries in [0, p^k).
Mat3 random_gl3_mod(const Prime& p, long depth, Rng& rng);

/// Flag M_x U (e1 in <e1,e2>) for U uniform in GL3(Z/p^k): events of depth <= k have
/// exactly their harmonic mass nu_x.
Flag harmonic_sample(const LatticeVertex& x, long depth, Rng& rng);

/// N_lambda: number of vertices z with theta(x,z) = lambda, by breadth-first search.
/// Throws DomainError when more than `cap` vertices would be visited.
long count_V_lambda(const LatticeVertex& x, const WeylVector& lambda, long cap = 2000000);

}  // namespace bt3
