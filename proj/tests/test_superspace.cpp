#include <doctest.h>

#include <random>

#include "supercurrent/superspace.hpp"

using namespace supercurrent;

TEST_CASE("level values") {
  CHECK(level(mdeg(0, 0, 4, 4, 4)) == 24);
  CHECK(level(mdeg(0, 0, 3, 3, 3)) == 18);
  CHECK(level(mdeg(0, 0, 0, 0, 0)) == 0);
  CHECK(level(mdeg(1, 1, 2, 2, 2)) == 18);
  // additivity
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    MultiDegree a = mdeg(rng() % 4, rng() % 4, rng() % 5, rng() % 5, rng() % 5);
    MultiDegree b = mdeg(rng() % 4, rng() % 4, rng() % 5, rng() % 5, rng() % 5);
    CHECK(level(a + b) == level(a) + level(b));
  }
}

TEST_CASE("charges: sector values and Q charge") {
  auto c1 = charges(8, mdeg(0, 0, 3, 3, 3));
  CHECK(c1.J1 == Rat(1, 2));
  CHECK(c1.J2 == Rat(1, 2));
  CHECK(c1.q1 == Rat(5, 2));
  CHECK(c1.q2 == Rat(5, 2));
  CHECK(c1.q3 == Rat(5, 2));
  auto c2 = charges(8, mdeg(1, 1, 2, 2, 2));
  CHECK(c2.J1 == 0);
  CHECK(c2.J2 == 0);
  CHECK(c2.q1 == 3);
  CHECK(c2.q2 == 3);
  CHECK(c2.q3 == 3);
  CHECK(charges(0, mdeg(0, 0, 0, 0, 0)) == ChargeVector{0, 0, 0, 0, 0});
  // difference between the two level-18 sectors is minus the charge of Q
  auto d = c1 - c2;
  auto qc = q_charge();
  CHECK(d.J1 == -qc.J1);
  CHECK(d.J2 == -qc.J2);
  CHECK(d.q1 == -qc.q1);
}

TEST_CASE("charges: conserved combinations and degree step") {
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    int p = rng() % 10;
    MultiDegree n = mdeg(rng() % 4, rng() % 4, rng() % 5, rng() % 5, rng() % 5);
    auto a = charges(p, n);
    auto b = charges(p + 1, n);
    CHECK(a.J1 - a.J2 == b.J1 - b.J2);
    CHECK(a.J1 + a.q1 == b.J1 + b.q1);
    CHECK(a.J1 + a.q2 == b.J1 + b.q2);
    CHECK(a.J1 + a.q3 == b.J1 + b.q3);
    CHECK(b.deg() - a.deg() == 1);
    // stepping p by one shifts the charge vector by Q's charge
    auto diff = b - a;
    CHECK(diff == q_charge());
    // 2*entry integral
    CHECK(Rat(a.J1 * 2).get_den() == 1);
    CHECK(Rat(a.q3 * 2).get_den() == 1);
  }
}

TEST_CASE("monomial enumeration") {
  auto l1 = enumerate_monomials(mdeg(0, 0, 1, 1, 0));
  REQUIRE(l1.size() == 3);
  CHECK(l1[0] == AMonomial{0, 0, 1});
  CHECK(l1[1] == AMonomial{0, 0, 2});
  CHECK(l1[2] == AMonomial{0, 0, 3});
  auto l2 = enumerate_monomials(mdeg(1, 0, 0, 0, 0));
  REQUIRE(l2.size() == 1);
  CHECK(l2[0] == AMonomial{1, 0, 0});
  CHECK(enumerate_monomials(mdeg(0, 0, 1, 1, 1)).size() == 7);
  // deterministic order: codes strictly increasing
  auto l3 = enumerate_monomials(mdeg(2, 1, 1, 0, 1));
  for (size_t i = 1; i < l3.size(); ++i) CHECK(mono_code(l3[i - 1]) < mono_code(l3[i]));
}

TEST_CASE("supercommutative multiplication") {
  AMonomial t1{0, 0, 1}, t2{0, 0, 2}, zp{1, 0, 0}, t13{0, 0, 5};
  auto r = multiply(t1, t2);
  REQUIRE(r);
  CHECK(r->first == 1);
  CHECK(r->second == AMonomial{0, 0, 3});
  auto r2 = multiply(t2, t1);
  REQUIRE(r2);
  CHECK(r2->first == -1);
  CHECK(r2->second == AMonomial{0, 0, 3});
  CHECK(!multiply(t1, t1));
  auto r3 = multiply(zp, t13);
  REQUIRE(r3);
  CHECK(r3->first == 1);
  CHECK(r3->second == AMonomial{1, 0, 5});

  // supercommutativity with signs on random pairs
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    AMonomial a{rng() % 3, rng() % 3, rng() % 8}, b{rng() % 3, rng() % 3, rng() % 8};
    auto ab = multiply(a, b), ba = multiply(b, a);
    CHECK(ab.has_value() == ba.has_value());
    if (ab) {
      int koszul = (a.parity() && b.parity()) ? -1 : 1;
      CHECK(ab->second == ba->second);
      CHECK(ab->first == koszul * ba->first);
      // degree-vector additivity
      MultiDegree da = a.degree_vector(), db = b.degree_vector(), dp = ab->second.degree_vector();
      CHECK(dp == da + db);
    }
  }
}

TEST_CASE("monomial code round trip and order") {
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    AMonomial a{rng() % 100, rng() % 100, rng() % 8};
    CHECK(mono_from_code(mono_code(a)) == a);
  }
}
