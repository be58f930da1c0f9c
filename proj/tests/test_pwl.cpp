#include <doctest.h>

#include <random>

#include "sm/errors.hpp"
#include "sm/pwl.hpp"

using namespace sm;

TEST_CASE("eval interpolates exactly") {
  PwlFunction id = PwlFunction::identity_seed();
  CHECK(id.eval(Rat(3, 2)) == Rat(3, 2));
  CHECK(id.eval(Rat(2)) == 2);

  PwlFunction f = PwlFunction::create({Rat(1), Rat(2), Rat(4)},
                                      {Rat(1), Rat(2), Rat(5, 2)});
  CHECK(f.eval(Rat(3)) == Rat(9, 4));
  CHECK_THROWS_AS(f.eval(Rat(5)), DomainError);
  CHECK_THROWS_AS(f.eval(Rat(1, 2)), DomainError);
}

TEST_CASE("final slope is the best uniform increase rate") {
  CHECK(PwlFunction::identity_seed().final_slope() == 1);
  PwlFunction f = PwlFunction::create({Rat(1), Rat(2), Rat(4)},
                                      {Rat(1), Rat(2), Rat(5, 2)});
  CHECK(f.final_slope() == Rat(1, 4));
  PwlFunction g = PwlFunction::create({Rat(1), Rat(2), Rat(4), Rat(8)},
                                      {Rat(1), Rat(2), Rat(3), Rat(4)});
  CHECK(g.final_slope() == Rat(1, 4));

  // eval(x) - eval(x-h) >= c*h for random rational pairs, exactly.
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(1, 64);
  Rat c = g.final_slope();
  for (int t = 0; t < 1000; ++t) {
    Rat x(1 + num(rng) * 7 % 57, 8);
    x += 1;  // x in (1, 8+...]
    if (x > g.domain_end()) continue;
    Rat h(num(rng), 64);
    if (x - h < 1) continue;
    CHECK(g.eval(x) - g.eval(x - h) >= c * h);
  }
}

TEST_CASE("invariant validation") {
  // Values not strictly increasing.
  CHECK_THROWS_AS(PwlFunction::create({Rat(1), Rat(2), Rat(3)},
                                      {Rat(1), Rat(2), Rat(2)}),
                  InvariantError);
  // Convexity (increasing chord slopes) rejected.
  CHECK_THROWS_AS(PwlFunction::create({Rat(1), Rat(2), Rat(4)},
                                      {Rat(1), Rat(2), Rat(5)}, false),
                  InvariantError);
  // Domain must start at 1.
  CHECK_THROWS_AS(PwlFunction::create({Rat(2), Rat(4)}, {Rat(2), Rat(4)}),
                  InvariantError);
  // Degenerate domain rejected.
  CHECK_THROWS_AS(PwlFunction::create({Rat(1)}, {Rat(1)}), InvariantError);
  // Normalized flag demands identity on [1,2].
  CHECK_THROWS_AS(PwlFunction::create({Rat(1), Rat(3)}, {Rat(1), Rat(2)}, true),
                  InvariantError);
  CHECK_NOTHROW(PwlFunction::create({Rat(1), Rat(3)}, {Rat(1), Rat(2)}, false));
}

TEST_CASE("monotonicity of eval") {
  PwlFunction f = PwlFunction::create({Rat(1), Rat(2), Rat(4), Rat(16)},
                                      {Rat(1), Rat(2), Rat(5, 2), Rat(11, 4)});
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(8, 128);
  for (int t = 0; t < 500; ++t) {
    Rat x(num(rng), 8);
    Rat y(num(rng), 8);
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    CHECK(f.eval(x) < f.eval(y));
  }
}

TEST_CASE("submultiplicativity checker") {
  SubmultReport ok = check_submultiplicative(PwlFunction::identity_seed(), 32);
  CHECK(ok.ok);
  CHECK(ok.pairs_checked > 0);

  // A concave increasing function that grows too slowly from S(1) = 1 is
  // not submultiplicative: S(x)S(y) - S(xy) ~ -(x-1)(y-1)/10 < 0 here.
  PwlFunction bad = PwlFunction::create(
      {Rat(1), Rat(2), Rat(4)}, {Rat(1), Rat(11, 10), Rat(13, 10)}, false);
  SubmultReport report = check_submultiplicative(bad, 16);
  CHECK_FALSE(report.ok);
  REQUIRE_FALSE(report.violations.empty());
  // Every recorded violation re-verifies exactly against eval.
  for (const auto& v : report.violations) {
    CHECK(v.defect < 0);
    CHECK(bad.eval(v.x) * bad.eval(v.y) - bad.eval(v.x * v.y) == v.defect);
  }
}

TEST_CASE("checker is independent of thread count") {
  PwlFunction f = PwlFunction::create(
      {Rat(1), Rat(2), Rat(4)}, {Rat(1), Rat(11, 10), Rat(13, 10)}, false);
  SubmultReport a = check_submultiplicative(f, 32, 32, 1);
  SubmultReport b = check_submultiplicative(f, 32, 32, 4);
  CHECK(a.ok == b.ok);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    CHECK(a.violations[i].x == b.violations[i].x);
    CHECK(a.violations[i].y == b.violations[i].y);
    CHECK(a.violations[i].defect == b.violations[i].defect);
  }
}

TEST_CASE("CSV round-trip is exact") {
  PwlFunction f = PwlFunction::create({Rat(1), Rat(2), Rat(4), Rat(20)},
                                      {Rat(1), Rat(2), Rat(5, 2), Rat(3)});
  PwlFunction g = pwl_from_csv_string(pwl_to_csv(f));
  CHECK(f.breakpoints() == g.breakpoints());
  CHECK(f.values() == g.values());
  CHECK(g.normalized());
  CHECK_THROWS_AS(pwl_from_csv_string("nope\n1,1\n"), ParameterError);
}
