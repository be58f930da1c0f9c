#include <doctest.h>

#include <cmath>
#include <random>

#include "sm/errors.hpp"
#include "sm/norms.hpp"

using namespace sm;

namespace {
const OrliczParams kParams{Rat(1, 2), Rat(2), Rat(5, 2)};
}

TEST_CASE("basic lp and combos") {
  NormPtr l1 = lp_norm(1.0), l2 = lp_norm(2.0);
  CHECK(l2->eval({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(l2->const_block(9) == doctest::Approx(3.0).epsilon(1e-12));

  NormPtr mx = max_combo({l1, l2});
  CHECK(mx->eval({1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));
  // max dominates each input with constant 1.
  CHECK(mx->eval({0.3, -0.4}) >= l2->eval({0.3, -0.4}));

  NormPtr w = weighted_sum_combo({2.0, 4.0}, {l1, l2});
  CHECK(w->eval({1.0}) == doctest::Approx(0.75).epsilon(1e-12));
  // ||a||_n <= C_n W(a).
  CHECK(l1->eval({1.0, 2.0}) <= 2.0 * w->eval({1.0, 2.0}) + 1e-12);
  CHECK_THROWS_AS(weighted_sum_combo({2.0, 2.0, 2.0}, {l1, l2, l2}),
                  ParameterError);

  NormPtr sup = sup_family_norm({l1, l2}, {1});
  CHECK(sup->eval({1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(sup_family_norm({l1}, {}), ParameterError);
}

TEST_CASE("lorentz and orlicz norm adapters") {
  WeightSeq ws = WeightSeq::create({Rat(1), Rat(1, 2)}, Rat(1));
  NormPtr lor = lorentz_sym_norm(ws, "lorentz");
  CHECK(lor->label() == "lorentz");
  CHECK(lor->eval({1.0, 1.0}) == doctest::Approx(1.5).epsilon(1e-12));

  NormPtr orl = orlicz_sym_norm(
      OrliczFunction(kParams, Pattern::all_ones(Int(60))));
  CHECK(orl->eval({1.0}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(orl->eval({}) == 0.0);
  CHECK(orl->eval({0.0, 0.0}) == 0.0);
}

TEST_CASE("lp-sum combination collapses exactly when c_1 = 1") {
  WeightSeq ws = WeightSeq::create({Rat(1), Rat(1, 2), Rat(1, 4)}, Rat(1));
  NormPtr lor = lorentz_sym_norm(ws);
  NormPtr combined = lp_sum_combine({0.0, 1.0}, {lor}, 2.0);
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> a(3);
    for (double& v : a) v = unif(rng);
    // Bitwise equality: the collapse path must call the component norm.
    CHECK(combined->eval(a) == lor->eval(a));
  }
  // c_0 = 1 reduces to the plain lp norm.
  NormPtr base = lp_sum_combine({1.0, 0.0}, {lor}, 2.0);
  NormPtr l2 = lp_norm(2.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(4);
    for (double& v : a) v = unif(rng);
    CHECK(base->eval(a) == doctest::Approx(l2->eval(a)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lp_sum_combine({0.5, 0.5}, {lor}, 2.0), ParameterError);
  CHECK_THROWS_AS(lp_sum_combine({1.0}, {lor}, 2.0), ParameterError);
}

TEST_CASE("gap witnesses over constant blocks") {
  std::vector<NormPtr> norms{lp_norm(1.0), lp_norm(2.0)};
  auto hit = find_gap_witness(norms, {1}, 3.0, 100);
  REQUIRE(hit.has_value());
  CHECK(hit->m == 10);  // first m with m > 3 sqrt(m)
  CHECK(hit->ratio == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK_FALSE(find_gap_witness(norms, {0, 1}, 3.0, 100).has_value());
}

TEST_CASE("sampled domination estimates") {
  NormPtr l1 = lp_norm(1.0), l2 = lp_norm(2.0);
  DominationEstimate forward = estimate_domination(*l2, *l1);
  CHECK_FALSE(forward.diverged);
  CHECK(forward.constant <= 1.0 + 1e-12);
  DominationEstimate backward = estimate_domination(*l1, *l2);
  CHECK_FALSE(backward.diverged);
  // The 1^64 block already certifies a ratio of 8.
  CHECK(backward.constant >= 8.0 - 1e-9);
  REQUIRE_FALSE(backward.witness.empty());
  CHECK(l1->eval(backward.witness) ==
        doctest::Approx(backward.constant * l2->eval(backward.witness))
            .epsilon(1e-9));
}

TEST_CASE("lp-sum classification by least supported index") {
  LpSumClassification a = classify_lp_sum({0.0, 1.0, 0.0}, {2.0, 2.25, 2.5});
  CHECK(a.index == 1);
  CHECK(a.lower == doctest::Approx(1.0));
  LpSumClassification b = classify_lp_sum({0.0, 0.6, 0.8}, {2.0, 2.25, 2.5});
  CHECK(b.index == 1);
  CHECK(b.lower == doctest::Approx(0.6));
  CHECK(b.upper == doctest::Approx(1.0));
  CHECK_THROWS_AS(classify_lp_sum({0.0, 0.0}, {2.0, 3.0}), ParameterError);
  CHECK_THROWS_AS(classify_lp_sum({1.0, 0.0}, {3.0, 2.0}), ParameterError);
}

TEST_CASE("spreading-model classification over an encoded lattice") {
  EncoderState state = run_encoder(m3_lattice(), kParams, 3);
  const double p = 2.5;
  const double half = std::pow(0.5, 1.0 / p);  // half^p = 1/2

  // Two basis-equivalent atoms supported: the join (the top) wins.
  std::vector<double> c{0.0, half, half, 0.0, 0.0};
  std::vector<ComponentKind> kinds(5, ComponentKind::BasisEquivalent);
  SumClassification two = classify_sum_spreading_model(state, c, kinds);
  CHECK(two.j0 == 4);
  CHECK_FALSE(two.is_lp_node);
  CHECK(two.lower == doctest::Approx(0.5));  // 1/|B|
  CHECK(two.upper == doctest::Approx(32.0));  // tau^(-2p) * 1

  // Only the minimum supported: the lp node.
  std::vector<double> c0{1.0, 0.0, 0.0, 0.0, 0.0};
  SumClassification lp_node = classify_sum_spreading_model(state, c0, kinds);
  CHECK(lp_node.is_lp_node);
  CHECK(lp_node.j0 == state.lattice.minimum());

  // lp-case components never enter B even when supported.
  std::vector<ComponentKind> lp_kinds(5, ComponentKind::LpCase);
  SumClassification none = classify_sum_spreading_model(state, c, lp_kinds);
  CHECK(none.is_lp_node);

  CHECK_THROWS_AS(
      classify_sum_spreading_model(state, {1.0, 1.0, 0.0, 0.0, 0.0}, kinds),
      ParameterError);
}
