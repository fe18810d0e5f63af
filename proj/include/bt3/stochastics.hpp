#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bt3/dynamics.hpp"

namespace bt3 {

struct WalkConfig {
  std::vector<GroupElement> generators;
  std::vector<Rational> weights;  // positive, summing to 1
  long steps = 200;
  std::uint64_t seed = 0;
  LatticeVertex base_vertex;
  long depth_cap = 8;  // rmax for the successive-direction depth; 0 skips it
};

struct WalkRecord {
  int letter = -1;  // generator index chosen at this step; -1 for n = 0
  WeylVector theta;
  std::optional<ResidueChamber> germ;  // when theta is regular
  Flag direction;                      // a chamber C with Z_n x in Q(x, C)
  long depth = 0;                      // common depth of the previous and current directions
};

struct WalkTrace {
  std::vector<WalkRecord> records;  // steps + 1 entries
  Mat3 element;                     // Z_steps
};

/// Throws PreconditionError unless weights are positive, sum to 1 and match the generators.
void validate(const WalkConfig& cfg);

/// Z_n = w_1 ... w_n with w_i drawn from the weights on stream (seed, 0).
WalkTrace run_walk(const WalkConfig& cfg);

struct ConvergenceReport {
  bool converged = false;
  long stabilization_time = -1;
  std::optional<ResidueChamber> germ;
};

/// Converged when theta is regular and the germ is constant from some n1 on, with
/// n1 <= steps - window. window < 0 means steps / 4.
ConvergenceReport convergence_report(const WalkTrace& trace, long window = -1);

/// Basis set U_x(y).
struct BasisSetEvent {
  LatticeVertex x;
  LatticeVertex y;
};

struct StationaryEstimate {
  std::vector<Rational> masses;  // over converged walks
  std::vector<double> sigma;     // binomial standard errors
  long trials = 0;
  long converged = 0;
};

/// Runs walks with seeds derived from (cfg.seed, trial) and records, for each converged
/// walk, which events contain its final direction. Throws DomainError when fewer than half
/// of the walks converge.
StationaryEstimate stationary_estimate(const WalkConfig& cfg, long trials, const std::vector<BasisSetEvent>& events,
                                       unsigned threads = 1);

/// Standard Schottky-style pair at p: g1 = make_srh(standard frame, (2,1,0)) and its conjugate
/// by the Vandermonde matrix on nodes 1, 2, 3; returned as {g1, g1^-1, g2, g2^-1}.
std::vector<GroupElement> schottky_generators(const Prime& p);

/// Empirical nu_x of {C : y in Q(x, C)} from harmonic samples at x; y may have any type.
Rational harmonic_mass(const LatticeVertex& x, const LatticeVertex& y, long trials, long depth, std::uint64_t seed,
                       unsigned threads = 1);

struct StripGrowth {
  std::vector<std::pair<long, long>> counts;  // (R, vertices within distance R), R = 0..Rmax
  double exponent = 0;                        // least-squares slope of log count on log R, R >= 1
};

/// Vertices of A(C1, C2) within distance R of the apartment vertex of the unit lattice of its
/// frame. Throws PreconditionError unless C1, C2 are opposite.
StripGrowth strip_growth(const Flag& c1, const Flag& c2, long rmax, const Prime& p);

}  // namespace bt3
