#include <doctest.h>

#include <set>

#include "sm/encoder.hpp"
#include "sm/errors.hpp"

using namespace sm;

namespace {
const OrliczParams kParams{Rat(1, 2), Rat(2), Rat(5, 2)};
}

TEST_CASE("initial state") {
  EncoderState s = encoder_init(chain_lattice(2), kParams);
  CHECK(s.horizon == 1);
  CHECK(s.checkpoints == std::vector<Int>{Int(1)});
  CHECK(s.zeros[s.lattice.minimum()].empty());
  CHECK(s.zeros[1] == std::vector<Int>{Int(1)});
  CHECK(s.pattern(0).ones(Int(1)) == 1);
  CHECK(s.pattern(1).ones(Int(1)) == 0);

  // Parameters must be strictly valid, not merely indeterminate.
  const OrliczParams borderline{parse_rat("999999999999/1000000000000"),
                                Rat(2), Rat(5, 2)};
  CHECK_THROWS_AS(encoder_init(chain_lattice(2), borderline), ParameterError);
}

TEST_CASE("request schedule is a fair diagonal") {
  FiniteLattice chain = chain_lattice(2);
  auto d1 = request_schedule(chain, 1);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].k == 1);
  CHECK(d1[0].element == 1);
  auto d2 = request_schedule(chain, 2);
  REQUIRE(d2.size() == 2);
  CHECK(d2[1].k == 2);
  CHECK(d2[1].element == 1);

  // Every non-minimum element of M3 appears with unboundedly large k.
  FiniteLattice m3 = m3_lattice();
  auto sched = request_schedule(m3, 6);
  std::set<int> elements;
  long max_k = 0;
  for (const ScheduleItem& item : sched) {
    CHECK(item.k >= 1);
    CHECK(item.element != m3.minimum());
    elements.insert(item.element);
    max_k = std::max(max_k, item.k);
  }
  CHECK(elements.size() == 4);
  CHECK(max_k == 6);
  // Triangular count: pairs with k + j <= depth + 1 over 4 elements.
  CHECK(sched.size() == 6 + 5 + 4 + 3);
}

TEST_CASE("apply_domination rejects bad requests") {
  EncoderState s = encoder_init(m3_lattice(), kParams);
  CHECK_THROWS_AS(apply_domination(s, 0, {1}), ParameterError);
  // {a, b} is not a down-set: join(a, b) = top but top is missing.
  CHECK_THROWS_AS(apply_domination(s, 1, {1, 2}), ParameterError);
  CHECK_THROWS_AS(apply_domination(s, 1, {}), ParameterError);
}

TEST_CASE("chain(2) encoder run verifies") {
  EncoderState s = run_encoder(chain_lattice(2), kParams, 4);
  PropertiesReport report = verify_properties(s);
  CHECK(report.ok);
  CHECK(report.prop_i);
  CHECK(report.prop_ii);
  CHECK(report.prop_iii);
  CHECK(report.prop_iv);
  CHECK(report.balanced);
  CHECK(report.failures.empty());
  CHECK(s.request_log.size() == 4);
  // The horizon is the last checkpoint and every zero is a power of two.
  CHECK(s.checkpoints.back() == s.horizon);
  for (const auto& zs : s.zeros)
    for (const Int& z : zs)
      CHECK(mpz_popcount(z.get_mpz_t()) == 1);
  // The full-lattice request is trivial (everything dominates everything).
  bool saw_trivial = false;
  for (const DominationRecord& r : s.request_log)
    if (r.trivial) saw_trivial = true;
  CHECK(saw_trivial);
}

TEST_CASE("tampered state fails verification with a witness") {
  EncoderState s = run_encoder(m3_lattice(), kParams, 3);
  REQUIRE(verify_properties(s).ok);
  // Dropping one zero unbalances the ones counts at later checkpoints.
  s.zeros[1].erase(s.zeros[1].begin());
  PropertiesReport bad = verify_properties(s);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.balanced);
  CHECK_FALSE(bad.failures.empty());
}

TEST_CASE("M3 run matches the lattice order exactly") {
  EncoderState s = run_encoder(m3_lattice(), kParams, 4);
  REQUIRE(verify_properties(s).ok);
  DominationMatrix matrix = encoder_domination_matrix(s);
  REQUIRE(matrix.size() == 5);
  std::vector<int> identity{0, 1, 2, 3, 4};
  CHECK(is_order_isomorphic(s.lattice, matrix, identity).ok);
  // The minimum's function is dominated by every other with constant 1,
  // and each failing direction carries a certified positive gap.
  for (int j = 1; j < 5; ++j) {
    CHECK(matrix.entry(0, j).dominates);
    CHECK(matrix.entry(0, j).constant == 1);
    CHECK_FALSE(matrix.entry(j, 0).dominates);
    CHECK(matrix.entry(j, 0).ratio > 0);
  }
}

TEST_CASE("JSON round-trip is bit-exact") {
  EncoderState s = run_encoder(n5_lattice(), kParams, 3);
  std::string text = encoder_state_to_json(s);
  EncoderState back = encoder_state_from_json(text);
  CHECK(encoder_state_to_json(back) == text);
  CHECK(back.horizon == s.horizon);
  CHECK(back.checkpoints == s.checkpoints);
  CHECK(back.zeros == s.zeros);
  PropertiesReport a = verify_properties(s);
  PropertiesReport b = verify_properties(back);
  CHECK(a.ok == b.ok);
  CHECK(a.failures == b.failures);

  CHECK_THROWS_AS(encoder_state_from_json("{}"), ParameterError);
}
