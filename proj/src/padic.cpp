#include "bt3/padic.hpp"

#include <cctype>

namespace bt3 {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Prime::Prime(std::int64_t p) : p_(p), z_(static_cast<long>(p)) {
  if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
}

long valuation(const Integer& n, const Prime& p) {
  if (sgn(n) == 0) throw DomainError("valuation of zero");
  if (!mpz_divisible_p(n.get_mpz_t(), p.z().get_mpz_t())) return 0;
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.z().get_mpz_t()));
}

long valuation(const Rational& x, const Prime& p) {
  if (sgn(x) == 0) throw DomainError("valuation of zero");
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

Rational pow_p(const Prime& p, long e) {
  Integer q;
  mpz_pow_ui(q.get_mpz_t(), p.z().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(q);
  return Rational(Integer(1), q);
}

Rational residue(const Rational& x, const Prime& p, long k) {
  if (sgn(x) == 0) return Rational(0);
  long v = valuation(x, p);
  if (v >= k) return Rational(0);
  // x = p^v * n / d with n, d prime to p
  Integer num = x.get_num(), den = x.get_den(), pv;
  mpz_pow_ui(pv.get_mpz_t(), p.z().get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
  if (v >= 0)
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pv.get_mpz_t());
  else
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), pv.get_mpz_t());
  Integer mod;
  mpz_pow_ui(mod.get_mpz_t(), p.z().get_mpz_t(), static_cast<unsigned long>(k - v));
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  Integer r = num * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return v >= 0 ? Rational(r * pv) : Rational(r, pv);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::int64_t t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw DomainError("mod_inverse: not invertible");
  return ((x % m) + m) % m;
}

std::int64_t reduce_mod_p(const Rational& x, const Prime& p) {
  const long pl = static_cast<long>(p.value());
  long n = static_cast<long>(mpz_fdiv_ui(x.get_num().get_mpz_t(), static_cast<unsigned long>(pl)));
  long d = static_cast<long>(mpz_fdiv_ui(x.get_den().get_mpz_t(), static_cast<unsigned long>(pl)));
  if (d == 0) throw DomainError("reduce_mod_p: argument not integral");
  return static_cast<std::int64_t>((static_cast<__int128>(n) * mod_inverse(d, pl)) % pl);
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw DomainError("malformed rational: '" + std::string(text) + "'");
  Integer n(strip_plus(num)), d(strip_plus(den));
  if (d == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace bt3
