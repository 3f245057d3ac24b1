#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "bsva/rational.hpp"

namespace bsva {

// The point exp(2*pi*i*p/q) on the unit circle, stored as the unique reduced
// fraction with 0 <= p < q. The identity is 0/1.
class RationalAngle {
 public:
  RationalAngle() : p_(0), q_(1) {}

  // Reduces p/q mod 1 into canonical form. q may be negative; q == 0 throws.
  static RationalAngle normalize(const BigInt& p, const BigInt& q);
  static RationalAngle from_rational(const Rational& x);
  // Accepts "p/q" or an integer string.
  static RationalAngle parse(std::string_view s);

  const BigInt& num() const { return p_; }
  const BigInt& den() const { return q_; }
  Rational value() const { return Rational(p_, q_); }
  bool is_identity() const { return p_ == 0; }

  std::string str() const;  // "p/q"

  friend bool operator==(const RationalAngle& a, const RationalAngle& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend bool operator!=(const RationalAngle& a, const RationalAngle& b) { return !(a == b); }
  // Order by numeric value; total on canonical representatives.
  friend bool operator<(const RationalAngle& a, const RationalAngle& b) {
    return mpz_cmp(BigInt(a.p_ * b.q_).get_mpz_t(), BigInt(b.p_ * a.q_).get_mpz_t()) < 0;
  }

 private:
  BigInt p_, q_;
};

struct AngleHash {
  std::size_t operator()(const RationalAngle& a) const;
};

// k-th power of the circle point: k*p/q mod 1. k may be any integer.
RationalAngle angle_pow(const RationalAngle& t, const BigInt& k);
RationalAngle angle_add(const RationalAngle& a, const RationalAngle& b);
RationalAngle angle_sub(const RationalAngle& a, const RationalAngle& b);

// n/|m| as a reduced rational in (0,1). Requires 2 <= n < |m|.
Rational lambda_of(long long n, long long m);

}  // namespace bsva
