#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bsva/angles.hpp"

using namespace bsva;

namespace {

RationalAngle rand_angle(std::mt19937_64& rng, long max_den) {
  std::uniform_int_distribution<long> dq(1, max_den);
  long q = dq(rng);
  std::uniform_int_distribution<long> dp(0, q - 1);
  return RationalAngle::normalize(BigInt(dp(rng)), BigInt(q));
}

}  // namespace

TEST_CASE("normalize canonicalizes into [0,1) with reduced fraction") {
  CHECK(RationalAngle::normalize(3, 2).str() == "1/2");
  CHECK(RationalAngle::normalize(-1, 3).str() == "2/3");
  CHECK(RationalAngle::normalize(0, 5).str() == "0/1");
  CHECK(RationalAngle::normalize(7, -3).str() == "2/3");  // 7/-3 = -7/3 = 2/3 mod 1
  CHECK(RationalAngle::normalize(6, 4).str() == "1/2");
  CHECK_THROWS_AS(RationalAngle::normalize(1, 0), invalid_params);
}

TEST_CASE("angle_pow") {
  RationalAngle t = RationalAngle::normalize(2, 5);
  CHECK(angle_pow(t, -1).str() == "3/5");
  CHECK(angle_pow(t, 0).str() == "0/1");
  CHECK(angle_pow(t, 5).str() == "0/1");
  CHECK(angle_pow(t, 7).str() == "4/5");
}

TEST_CASE("angle_add and angle_sub") {
  RationalAngle x = RationalAngle::normalize(1, 4);
  RationalAngle y = RationalAngle::normalize(5, 6);
  CHECK(angle_add(x, y).str() == "1/12");
  CHECK(angle_add(x, RationalAngle()).str() == "1/4");
  CHECK(angle_sub(x, y).str() == "5/12");
  CHECK(angle_sub(x, x).is_identity());
}

TEST_CASE("lambda_of reduces n/|m| and enforces the parameter range") {
  CHECK(lambda_of(2, 3).str() == "2/3");
  CHECK(lambda_of(2, -3).str() == "2/3");
  CHECK(lambda_of(4, 6).str() == "2/3");
  CHECK(lambda_of(3, 5).str() == "3/5");
  CHECK_THROWS_AS(lambda_of(3, 3), invalid_params);
  CHECK_THROWS_AS(lambda_of(1, 2), invalid_params);
  CHECK_THROWS_AS(lambda_of(3, -2), invalid_params);
  for (long long n = 2; n <= 8; ++n)
    for (long long am = n + 1; am <= 9; ++am) {
      Rational l = lambda_of(n, -am);
      CHECK(l > Rational(0));
      CHECK(l < Rational(1));
    }
}

TEST_CASE("power composition and group laws on random angles") {
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<long> dk(-20, 20);
  for (int it = 0; it < 2000; ++it) {
    RationalAngle t = rand_angle(rng, 500);
    long k = dk(rng), l = dk(rng);
    CHECK(angle_pow(angle_pow(t, k), l) == angle_pow(t, BigInt(k) * BigInt(l)));
    CHECK(angle_add(angle_pow(t, k), angle_pow(t, -k)).is_identity());
    RationalAngle u = rand_angle(rng, 500);
    CHECK(angle_add(t, u) == angle_add(u, t));
    // re-normalizing a canonical value is a no-op
    CHECK(RationalAngle::normalize(t.num(), t.den()) == t);
  }
}

TEST_CASE("parse round trip and ordering") {
  CHECK(RationalAngle::parse("5/10").str() == "1/2");
  CHECK(RationalAngle::parse("-1/3").str() == "2/3");
  CHECK(RationalAngle::parse("4").str() == "0/1");
  CHECK_THROWS_AS(RationalAngle::parse("x/y"), invalid_params);
  CHECK(RationalAngle::normalize(1, 3) < RationalAngle::normalize(1, 2));
  CHECK_FALSE(RationalAngle::normalize(1, 2) < RationalAngle::normalize(1, 2));
}

TEST_CASE("rational helpers used by the arc algebra") {
  Rational x(BigInt(-7), BigInt(2));
  CHECK(x.str() == "-7/2");
  CHECK(x.floor() == -4);
  CHECK(x.mod1().str() == "1/2");
  CHECK((Rational(3) / Rational(BigInt(9), BigInt(2))).str() == "2/3");
  CHECK(Rational::parse("-4/6").str() == "-2/3");
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), invalid_params);
}
