#include <doctest.h>

#include <algorithm>

#include "sm/errors.hpp"
#include "sm/lattice.hpp"

using namespace sm;

namespace {

// Exhaustive lattice-axiom audit used against every generator.
void audit(const FiniteLattice& l) {
  const int n = static_cast<int>(l.size());
  for (int i = 0; i < n; ++i) {
    CHECK(l.leq(i, i));
    CHECK(l.leq(l.minimum(), i));
    for (int j = 0; j < n; ++j) {
      int v = l.join(i, j);
      int m = l.meet(i, j);
      CHECK(l.leq(i, v));
      CHECK(l.leq(j, v));
      CHECK(l.leq(m, i));
      CHECK(l.leq(m, j));
      for (int u = 0; u < n; ++u) {
        if (l.leq(i, u) && l.leq(j, u)) CHECK(l.leq(v, u));
        if (l.leq(u, i) && l.leq(u, j)) CHECK(l.leq(u, m));
      }
      if (i != j) CHECK_FALSE((l.leq(i, j) && l.leq(j, i)));
    }
  }
}

}  // namespace

TEST_CASE("generators satisfy the axioms") {
  audit(chain_lattice(1));
  audit(chain_lattice(4));
  audit(power_set_lattice(1));
  audit(power_set_lattice(2));
  audit(power_set_lattice(3));
  audit(m3_lattice());
  audit(n5_lattice());
}

TEST_CASE("chain and power-set structure") {
  FiniteLattice c = chain_lattice(3);
  CHECK(c.names() == std::vector<std::string>{"c0", "c1", "c2"});
  CHECK(c.minimum() == 0);
  CHECK(c.join(0, 2) == 2);
  CHECK(c.meet(1, 2) == 1);
  CHECK(c.down_set(2) == std::vector<int>{0, 1, 2});

  FiniteLattice p = power_set_lattice(3);
  CHECK(p.size() == 8);
  CHECK(p.names()[p.minimum()] == "{}");
  auto index_of = [&](const std::string& name) {
    return static_cast<int>(std::find(p.names().begin(), p.names().end(),
                                      name) -
                            p.names().begin());
  };
  int a = index_of("{1}"), b = index_of("{2}"), ab = index_of("{1,2}");
  int abc = index_of("{1,2,3}");
  CHECK(p.join(a, b) == ab);
  CHECK(p.meet(ab, index_of("{2,3}")) == b);
  CHECK(p.join_all({a, b, index_of("{3}")}) == abc);
  std::vector<int> down = p.down_set(ab);
  CHECK(down.size() == 4);
  CHECK(std::find(down.begin(), down.end(), p.minimum()) != down.end());
  CHECK(std::find(down.begin(), down.end(), a) != down.end());
  CHECK(std::find(down.begin(), down.end(), b) != down.end());
  CHECK(std::find(down.begin(), down.end(), ab) != down.end());
}

TEST_CASE("M3 and N5 shapes") {
  FiniteLattice m3 = m3_lattice();
  CHECK(m3.size() == 5);
  CHECK(m3.join(1, 2) == 4);   // any two atoms join to the top
  CHECK(m3.meet(1, 3) == 0);
  FiniteLattice n5 = n5_lattice();
  CHECK(n5.size() == 5);
  // bot < a < top and bot < b < c < top; a incomparable with both b and c.
  CHECK(n5.join(1, 2) == 4);
  CHECK(n5.meet(1, 3) == 0);
  CHECK_FALSE(n5.leq(1, 3));
  CHECK_FALSE(n5.leq(3, 1));
}

TEST_CASE("cover-list validation") {
  // Two maximal elements: the pair has no join.
  CHECK_THROWS_AS(FiniteLattice::from_covers({"x", "y", "z"}, {{0, 1}, {0, 2}}),
                  ParameterError);
  // Cycle in the covers breaks antisymmetry.
  CHECK_THROWS_AS(FiniteLattice::from_covers({"x", "y"}, {{0, 1}, {1, 0}}),
                  ParameterError);
  // No minimum: two disconnected chains.
  CHECK_THROWS_AS(
      FiniteLattice::from_covers({"x", "y", "z", "w"}, {{0, 1}, {2, 3}}),
      ParameterError);
  // Hexagon with two incomparable midpoints over two incomparable atoms:
  // the atoms have no unique join.
  CHECK_THROWS_AS(
      FiniteLattice::from_covers(
          {"bot", "a", "b", "x", "y", "top"},
          {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 5}}),
      ParameterError);
}

TEST_CASE("JSON parse and round-trip") {
  FiniteLattice l = parse_lattice(
      R"({"elements": ["lo", "hi"], "covers": [["lo", "hi"]]})");
  CHECK(l.size() == 2);
  CHECK(l.leq(0, 1));
  CHECK(l.minimum() == 0);

  // Index-based covers and a non-first minimum.
  FiniteLattice r = parse_lattice(
      R"({"elements": ["top", "bot"], "covers": [[1, 0]]})");
  CHECK(r.minimum() == 1);

  FiniteLattice m3 = m3_lattice();
  FiniteLattice back = parse_lattice(m3.to_json());
  CHECK(back.names() == m3.names());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(back.leq(i, j) == m3.leq(i, j));

  CHECK_THROWS_AS(parse_lattice("{\"elements\": []}"), ParameterError);
  CHECK_THROWS_AS(parse_lattice("not json"), ParameterError);
}

TEST_CASE("order isomorphism against a matrix") {
  FiniteLattice c = chain_lattice(3);
  DominationMatrix good(std::vector<std::string>{"x", "y", "z"});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      DominationEvidence& e = good.entry(i, j);
      e.dominates = i <= j;
      if (e.dominates) e.constant = 1;
    }
  CHECK(is_order_isomorphic(c, good, {0, 1, 2}).ok);
  // Reversing the mapping breaks every strict pair; the report names one.
  IsoReport bad = is_order_isomorphic(c, good, {2, 1, 0});
  CHECK_FALSE(bad.ok);
  CHECK(bad.i >= 0);
  CHECK(bad.j >= 0);
  CHECK(c.leq(bad.i, bad.j) != good.dominates(2 - bad.i, 2 - bad.j));
}
