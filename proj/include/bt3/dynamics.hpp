#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bt3/boundary.hpp"
#include "bt3/harmonic.hpp"

namespace bt3 {

/// Element of SL3(Q) with an optional word in the generators: letter +k is generator k-1,
/// letter -k its inverse.
struct GroupElement {
  Mat3 matrix;
  std::vector<int> word;

  /// Throws DomainError unless det(m) = 1.
  static GroupElement make(const Mat3& m, std::vector<int> word = {});
  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const;
};

struct SrhCertificate {
  GroupElement element;
  Frame frame;
  WeylVector lambda;
  Flag attracting;
  Flag repelling;
};

enum class SrhRejection { IrrationalSpectrum, NotHyperbolic, RepeatedValuation };
std::string to_string(SrhRejection r);

/// g = h diag(p^b) h^{-1}, b = (0, a2, a1) - s with s = (a1 + a2) / 3, h the frame basis in
/// canonical order, so theta(o, g o) = lambda. Throws PreconditionError unless lambda is regular with a1 + a2 = 0 mod 3.
SrhCertificate make_srh(const Frame& f, const WeylVector& lambda, const Prime& p);
/// Same construction on the frame {C+_1, C+_2 ∩ C-_2, C-_1}, with prescribed attracting and
/// repelling chambers.
SrhCertificate make_srh(const Flag& attracting, const Flag& repelling, const WeylVector& lambda, const Prime& p);

std::variant<SrhCertificate, SrhRejection> certify_srh(const GroupElement& g, const Prime& p);

/// Stopping rule shared by the limit detectors.
struct DetectorConfig {
  long threshold = 4;  // depths must exceed this
  long horizon = 40;
  long rcap = 0;       // 0 means 10 * horizon
};

/// Limit of g^n C, as the chamber of the translation apartment the orbit settles on.
Flag north_south_limit(const SrhCertificate& cert, const Flag& c, const Prime& p, const DetectorConfig& cfg = {});

/// C2^- opposite every chamber of cert1's apartment.
bool proximal_pair_check(const SrhCertificate& cert1, const SrhCertificate& cert2);

/// Limit of g2^n g1^n C. Throws PreconditionError when proximal_pair_check fails.
Flag universal_contraction(const SrhCertificate& cert1, const SrhCertificate& cert2, const Flag& c, const Prime& p,
                           const DetectorConfig& cfg = {});

/// Distinct group elements of word length <= L, by breadth-first search over reduced words.
std::vector<GroupElement> enumerate_elements(const std::vector<GroupElement>& generators, long length,
                                             bool with_inverses = true);

struct LimitSetSample {
  std::vector<Flag> flags;
  std::vector<SrhCertificate> witnesses;  // aligned with flags
  long word_bound = 0;
};

/// Attracting chambers of the SRH elements among words of length <= L.
LimitSetSample limit_set_sample(const std::vector<GroupElement>& generators, long length, const Prime& p,
                                bool with_inverses = true);

/// For each w, whether some sampled flag lies in Opp_w(C-).
std::map<WeylElement, bool> schubert_avoidance_report(const LimitSetSample& sample, const SrhCertificate& cert);

/// Fraction of harmonic samples at the standard vertex fixed by g.
Rational fixed_flag_fraction(const GroupElement& g, long trials, long depth, std::uint64_t seed, const Prime& p);

/// g^{-1} o lies in the closed set of vertices whose germ at o is opposite the germ of [o,y].
bool equicontinuity_set_member(const GroupElement& g, const LatticeVertex& o, const LatticeVertex& y);
/// gC, gD ∈ U_o(gy) and d(o, gy) >= d(o, y).
bool equicontinuity_check(const GroupElement& g, const LatticeVertex& o, const LatticeVertex& y, const Flag& c,
                          const Flag& d);
/// One probe vertex (theta = (2,1,0)) per chamber of A(F) at o.
std::vector<LatticeVertex> partition_probe_set(const LatticeVertex& o, const Frame& f);
/// Every word of length <= L lies in G(y) for some probe y.
bool partition_check(const std::vector<GroupElement>& generators, long length, const LatticeVertex& o, const Frame& f);

}  // namespace bt3
