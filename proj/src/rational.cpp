#include "bsva/rational.hpp"

namespace bsva {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw invalid_params("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(s)));
    }
    BigInt num(std::string(s.substr(0, slash)));
    BigInt den(std::string(s.substr(slash + 1)));
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw invalid_params("malformed rational: " + std::string(s));
  }
}

Rational Rational::abs() const {
  return sgn(v_) < 0 ? Rational(mpq_class(-v_)) : *this;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw invalid_params("reciprocal of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
  return Rational(r);
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

Rational Rational::mod1() const {
  return *this - Rational(floor());
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw invalid_params("division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

}  // namespace bsva
