#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "bsva/bs_relation.hpp"
#include "bsva/errors.hpp"
#include "doctest.h"

using namespace bsva;

namespace {

RationalAngle ang(const std::string& s) { return RationalAngle::parse(s); }

std::vector<RationalAngle> sorted(std::vector<RationalAngle> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool member(const std::vector<RationalAngle>& v, const RationalAngle& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// m * theta_y = n * theta_z (mod 1)
bool related(const BsParams& p, const RationalAngle& y, const RationalAngle& z) {
  const Rational d =
      Rational(to_bigint(p.m)) * y.value() - Rational(to_bigint(p.n)) * z.value();
  return d.is_integer();
}

RationalAngle random_angle(std::mt19937_64& rng, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(0, 10 * max_den);
  return RationalAngle::normalize(BigInt(num(rng)), BigInt(q));
}

bool verify_rotation_path(const BsParams& p, const RotationCheck& rc) {
  RationalAngle cur = rc.start;
  long long net = 0;
  for (const RotationStep& st : rc.path) {
    const auto ns = step_neighbors(p, cur, st.dir);
    if (st.branch < 0 || st.branch >= static_cast<int>(ns.size())) return false;
    if (!(ns[st.branch] == st.to)) return false;
    net += step_weight(st.dir);
    cur = st.to;
  }
  return net == 0 && cur == rc.target &&
         static_cast<int>(rc.path.size()) == rc.length;
}

}  // namespace

TEST_CASE("step neighbors at frozen points") {
  const BsParams p23{2, 3};
  CHECK(step_neighbors(p23, ang("0"), StepDirection::Forward) ==
        std::vector<RationalAngle>{ang("0"), ang("1/2")});
  CHECK(step_neighbors(p23, ang("0"), StepDirection::Backward) ==
        std::vector<RationalAngle>{ang("0"), ang("1/3"), ang("2/3")});
  CHECK(sorted(step_neighbors(p23, ang("1/2"), StepDirection::Forward)) ==
        std::vector<RationalAngle>{ang("1/4"), ang("3/4")});

  const BsParams p2m3{2, -3};
  CHECK(sorted(step_neighbors(p2m3, ang("0"), StepDirection::Backward)) ==
        std::vector<RationalAngle>{ang("0"), ang("1/3"), ang("2/3")});
  CHECK(sorted(step_neighbors(p2m3, ang("1/2"), StepDirection::Forward)) ==
        std::vector<RationalAngle>{ang("1/4"), ang("3/4")});

  CHECK(step_weight(StepDirection::Forward) == 1);
  CHECK(step_weight(StepDirection::Backward) == -1);
  CHECK_THROWS_AS(step_neighbors(BsParams{-2, 3}, ang("0"), StepDirection::Forward),
                  invalid_params);
}

TEST_CASE("neighbors satisfy the relation and duality") {
  std::mt19937_64 rng(11);
  const std::vector<BsParams> params{{2, 3}, {2, 5}, {3, 4}, {4, 7}, {2, -3}, {3, -5}, {5, -6}};
  for (const BsParams& p : params) {
    for (int i = 0; i < 40; ++i) {
      const RationalAngle y = random_angle(rng, 50);
      const auto fwd = step_neighbors(p, y, StepDirection::Forward);
      const auto bwd = step_neighbors(p, y, StepDirection::Backward);
      CHECK(fwd.size() == static_cast<std::size_t>(p.n));
      CHECK(bwd.size() == static_cast<std::size_t>(p.abs_m()));
      CHECK(sorted(fwd).size() == fwd.size());
      for (const RationalAngle& z : fwd) {
        CHECK(related(p, y, z));
        CHECK(member(step_neighbors(p, z, StepDirection::Backward), y));
      }
      for (const RationalAngle& w : bwd) {
        CHECK(related(p, w, y));
        CHECK(member(step_neighbors(p, w, StepDirection::Forward), y));
      }
    }
  }
}

TEST_CASE("orbit generators realize backward steps") {
  std::mt19937_64 rng(12);
  for (const BsParams& p : std::vector<BsParams>{{2, 3}, {3, 5}, {2, -3}, {4, -5}}) {
    const auto gens = relation_generators(p);
    REQUIRE(gens.size() == static_cast<std::size_t>(p.abs_m()));
    for (std::size_t j = 0; j < gens.size(); ++j) {
      CHECK(gens[j].unit == -1);
      CHECK(gens[j].name == "g" + std::to_string(j));
      REQUIRE(gens[j].map.branches().size() == 1);
      CHECK(gens[j].map.domain_length() == Rational(1));
    }
    for (int i = 0; i < 25; ++i) {
      const RationalAngle t = random_angle(rng, 40);
      const auto bwd = step_neighbors(p, t, StepDirection::Backward);
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const auto img = gens[j].map.apply(t);
        REQUIRE(img.has_value());
        CHECK(*img == bwd[j]);
      }
    }
  }
  CHECK_THROWS_AS(relation_generators(BsParams{3, 2}), invalid_params);
}

TEST_CASE("orbit of the seed at depth one") {
  const OrbitGraph g = orbit(BsParams{2, 3}, ang("0"), 1);
  REQUIRE(g.nodes.size() == 4);
  CHECK(g.nodes[0] == ang("0"));
  CHECK(g.nodes[1] == ang("1/3"));
  CHECK(g.nodes[2] == ang("2/3"));
  CHECK(g.nodes[3] == ang("1/2"));
  CHECK(g.complete);

  const OrbitGraph h = orbit(BsParams{2, -3}, ang("0"), 1);
  REQUIRE(h.nodes.size() == 4);
  CHECK(sorted(h.nodes) ==
        std::vector<RationalAngle>{ang("0"), ang("1/3"), ang("1/2"), ang("2/3")});
}

TEST_CASE("orbit edges carry unit weights with reverses") {
  const OrbitGraph g = orbit(BsParams{2, 5}, ang("1/3"), 3);
  CHECK(g.complete);
  CHECK(g.nodes.size() > 10);
  for (const OrbitEdge& e : g.edges) {
    CHECK((e.weight == 1 || e.weight == -1));
    const bool has_reverse =
        std::any_of(g.edges.begin(), g.edges.end(), [&](const OrbitEdge& r) {
          return r.src == e.dst && r.dst == e.src && r.gen == e.gen && r.branch == e.branch &&
                 r.weight == -e.weight;
        });
    CHECK(has_reverse);
  }
  CHECK(image_evidence(g) == 1);

  const OrbitGraph par = orbit(BsParams{2, 5}, ang("1/3"), 3, default_budget(), 4);
  CHECK(par.export_text() == g.export_text());
}

TEST_CASE("equivalence witnesses by exponent search") {
  const BsParams p{2, 3};
  const auto w = are_equivalent_def(p, ang("0"), ang("1/2"), 8);
  REQUIRE(w.has_value());
  CHECK(*w == std::pair<long long, long long>{0, 1});
  const auto wr = are_equivalent_def(p, ang("1/2"), ang("0"), 8);
  REQUIRE(wr.has_value());
  CHECK(*wr == std::pair<long long, long long>{1, 0});

  CHECK(are_equivalent_def(p, ang("1/7"), ang("1/7"), 8) ==
        std::pair<long long, long long>{0, 0});
  CHECK_FALSE(are_equivalent_def(p, ang("1/7"), ang("1/5"), 8).has_value());
  CHECK_THROWS_AS(are_equivalent_def(p, ang("0"), ang("0"), -1), invalid_params);

  // Any returned witness satisfies the defining power identity.
  std::mt19937_64 rng(13);
  for (int i = 0; i < 60; ++i) {
    const RationalAngle y = random_angle(rng, 30);
    const RationalAngle z = random_angle(rng, 30);
    const auto ww = are_equivalent_def(p, y, z, 4);
    if (!ww) continue;
    const auto [a, b] = *ww;
    BigInt e1(1), e2(1);
    for (long long t = 0; t < a; ++t) {
      e1 *= to_bigint(p.n);
      e2 *= to_bigint(p.m);
    }
    for (long long t = 0; t < b; ++t) {
      e1 *= to_bigint(p.m);
      e2 *= to_bigint(p.n);
    }
    CHECK(angle_pow(y, e1) == angle_pow(z, e2));
  }
}

TEST_CASE("witnesses exist along sampled step paths") {
  std::mt19937_64 rng(14);
  for (const BsParams& p : std::vector<BsParams>{{2, 3}, {2, 5}}) {
    for (int i = 0; i < 30; ++i) {
      RationalAngle cur = random_angle(rng, 12);
      const RationalAngle start = cur;
      long long f = 0, g = 0;
      std::uniform_int_distribution<int> len(1, 3);
      const int steps = len(rng);
      for (int s = 0; s < steps; ++s) {
        const StepDirection d =
            rng() % 2 == 0 ? StepDirection::Forward : StepDirection::Backward;
        const auto ns = step_neighbors(p, cur, d);
        cur = ns[rng() % ns.size()];
        (d == StepDirection::Forward ? f : g) += 1;
      }
      CHECK(are_equivalent_def(p, start, cur, std::max(f, g) + 1).has_value());
    }
  }
}

TEST_CASE("fiber counts") {
  const FiberCount fc = fiber_count_check(BsParams{2, 3}, ang("0"));
  CHECK(fc.forward_count == 3);
  CHECK(fc.backward_count == 2);
  CHECK(fc.pair_count == 6);

  std::mt19937_64 rng(15);
  for (const BsParams& p : std::vector<BsParams>{{2, 5}, {3, -4}, {4, 7}}) {
    for (int i = 0; i < 20; ++i) {
      const FiberCount c = fiber_count_check(p, random_angle(rng, 60));
      CHECK(c.forward_count == static_cast<std::size_t>(p.abs_m()));
      CHECK(c.backward_count == static_cast<std::size_t>(p.n));
      CHECK(c.pair_count == static_cast<std::size_t>(p.n * p.abs_m()));
    }
  }
}

TEST_CASE("rotation certificate at the seed") {
  const RotationCheck rc = lambda_rotation_check(BsParams{2, 3}, ang("0"), 1, 8);
  CHECK(rc.ok);
  CHECK(rc.target == ang("1/6"));
  CHECK(rc.length == 4);
  CHECK(verify_rotation_path(BsParams{2, 3}, rc));
  CHECK(rc.exhausted);

  const RotationCheck none = lambda_rotation_check(BsParams{2, 3}, ang("0"), 1, 2);
  CHECK_FALSE(none.ok);
  CHECK(none.length == -1);
  CHECK(none.exhausted);

  const RotationCheck tiny = lambda_rotation_check(BsParams{2, 3}, ang("0"), 1, 8, 6);
  if (!tiny.ok) CHECK_FALSE(tiny.exhausted);

  CHECK_THROWS_AS(lambda_rotation_check(BsParams{2, 3}, ang("0"), 0, 8), invalid_params);
}

TEST_CASE("rotation checks across parameters and samples") {
  std::mt19937_64 rng(16);
  for (const BsParams& p : std::vector<BsParams>{{2, 3}, {2, 5}, {3, 4}, {2, -3}}) {
    const long long base = p.n * p.abs_m();
    for (int i = 0; i < 12; ++i) {
      const RationalAngle y =
          RationalAngle::normalize(BigInt(static_cast<long>(rng() % base)), to_bigint(base));
      const RotationCheck rc = lambda_rotation_check(p, y, 1, 8);
      CHECK(rc.ok);
      CHECK(rc.length % 2 == 0);
      CHECK(verify_rotation_path(p, rc));
    }
  }
}

TEST_CASE("type classification verdicts") {
  const TypeVerdict v23 = classify_type(BsParams{2, 3});
  CHECK(v23.verdict == "III_lambda");
  CHECK(v23.lambda == Rational::parse("2/3"));
  CHECK(v23.image_units == 1);
  CHECK(v23.kernel.passed == v23.kernel.samples);
  CHECK(v23.kernel.samples == 50);
  CHECK(v23.warnings.empty());

  ClassifyOptions quick;
  quick.samples = 8;
  quick.depth = 8;
  const TypeVerdict vneg = classify_type(BsParams{2, -3}, quick);
  CHECK(vneg.verdict == "III_lambda");
  CHECK(vneg.lambda == Rational::parse("2/3"));

  const TypeVerdict v46 = classify_type(BsParams{4, 6}, quick);
  CHECK(v46.lambda == Rational::parse("2/3"));
  REQUIRE(v46.warnings.size() >= 1);
  CHECK(v46.warnings[0].find("common factor") != std::string::npos);

  ClassifyOptions tiny;
  tiny.samples = 2;
  tiny.depth = 4;
  const TypeVerdict v12 = classify_type(BsParams{1, 2}, tiny);
  CHECK(v12.lambda == Rational::parse("1/2"));
  REQUIRE(v12.warnings.size() >= 1);
  CHECK(v12.warnings[0].find("standard range") != std::string::npos);

  CHECK_THROWS_AS(classify_type(BsParams{3, 3}), invalid_params);
  CHECK_THROWS_AS(classify_type(BsParams{3, 2}), invalid_params);

  const TypeVerdict again = classify_type(BsParams{2, 3});
  CHECK(again.verdict == v23.verdict);
  CHECK(again.kernel.passed == v23.kernel.passed);
}

TEST_CASE("distinguishing parameter pairs") {
  const DistinguishResult r1 = distinguish(BsParams{2, 3}, BsParams{2, 5});
  CHECK(r1.separated);
  CHECK(r1.lambda1 == Rational::parse("2/3"));
  CHECK(r1.lambda2 == Rational::parse("2/5"));

  CHECK_FALSE(distinguish(BsParams{2, 3}, BsParams{2, -3}).separated);
  CHECK_FALSE(distinguish(BsParams{2, 3}, BsParams{4, 6}).separated);
  CHECK_FALSE(distinguish(BsParams{2, 3}, BsParams{2, 3}).separated);

  const std::vector<BsParams> ps{{2, 3}, {2, 5}, {3, 4}, {3, -5}, {4, 6}};
  for (const BsParams& a : ps)
    for (const BsParams& b : ps)
      CHECK(distinguish(a, b).separated == distinguish(b, a).separated);

  CHECK_THROWS_AS(distinguish(BsParams{3, 2}, BsParams{2, 3}), invalid_params);
}
