#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bt3 {

using Integer = mpz_class;
using Rational = mpq_class;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A rational prime p. Construction checks primality.
class Prime {
 public:
  explicit Prime(std::int64_t p);

  std::int64_t value() const { return p_; }
  const Integer& z() const { return z_; }

  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

 private:
  std::int64_t p_;
  Integer z_;
};

bool is_prime(std::int64_t n);

/// p-adic valuation of a nonzero integer.
long valuation(const Integer& n, const Prime& p);
/// p-adic valuation of a nonzero rational; throws DomainError on zero.
long valuation(const Rational& x, const Prime& p);

/// p^e as an exact rational (e may be negative).
Rational pow_p(const Prime& p, long e);

/// Canonical representative of x mod p^k Z_(p): zero when v(x) >= k, otherwise
/// p^v * r with 0 < r < p^(k-v) and r coprime to p.
Rational residue(const Rational& x, const Prime& p, long k);

/// Image of x in F_p for x in Z_(p), as an integer in [0, p).
std::int64_t reduce_mod_p(const Rational& x, const Prime& p);

std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// "num" or "num/den".
std::string to_string(const Rational& x);
/// Parses "num" or "num/den" (optional sign); throws DomainError.
Rational parse_rational(std::string_view text);

}  // namespace bt3
