#include "bsva/angles.hpp"

#include <cstdlib>

namespace bsva {

RationalAngle RationalAngle::normalize(const BigInt& p, const BigInt& q) {
  if (q == 0) throw invalid_params("angle with zero denominator");
  BigInt pp = p, qq = q;
  if (qq < 0) {
    pp = -pp;
    qq = -qq;
  }
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), pp.get_mpz_t(), qq.get_mpz_t());  // r in [0, qq)
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), qq.get_mpz_t());
  RationalAngle out;
  out.p_ = r / g;
  out.q_ = qq / g;
  return out;
}

RationalAngle RationalAngle::from_rational(const Rational& x) {
  return normalize(x.num(), x.den());
}

RationalAngle RationalAngle::parse(std::string_view s) {
  return from_rational(Rational::parse(s));
}

std::string RationalAngle::str() const {
  return p_.get_str() + "/" + q_.get_str();
}

std::size_t AngleHash::operator()(const RationalAngle& a) const {
  // 2^61 - 1 is prime; residues spread canonical (p, q) pairs well enough.
  const unsigned long M = 0x1fffffffffffffffUL;
  unsigned long hp = mpz_fdiv_ui(a.num().get_mpz_t(), M);
  unsigned long hq = mpz_fdiv_ui(a.den().get_mpz_t(), M);
  std::size_t h = hp;
  h ^= hq + 0x9e3779b97f4a7c15UL + (h << 6) + (h >> 2);
  return h;
}

RationalAngle angle_pow(const RationalAngle& t, const BigInt& k) {
  return RationalAngle::normalize(k * t.num(), t.den());
}

RationalAngle angle_add(const RationalAngle& a, const RationalAngle& b) {
  return RationalAngle::normalize(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

RationalAngle angle_sub(const RationalAngle& a, const RationalAngle& b) {
  return RationalAngle::normalize(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}

Rational lambda_of(long long n, long long m) {
  long long am = std::llabs(m);
  if (n < 2 || n >= am) throw invalid_params("lambda_of requires 2 <= n < |m|");
  return Rational(to_bigint(n), to_bigint(am));
}

}  // namespace bsva
