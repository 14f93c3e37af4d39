#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "random_cases.hpp"
#include "shiftcg/delay_monoid.hpp"
#include "shiftcg/error.hpp"

using namespace shiftcg;

namespace {

constexpr ExtTime ninf = kMinusInfinity;

SElement T(ExtTime bg, Count doc, ExtTime dot, Count dtc, ExtTime dtt) {
  return SElement::triple(bg, doc, dot, dtc, dtt);
}

}  // namespace

TEST_SUITE("monoid") {

TEST_CASE("identity and absorption") {
  const SElement q = T(10, 0, 20, 1, ninf);
  CHECK(s_plus(SElement::neutral(), q) == q);
  CHECK(s_plus(q, SElement::neutral()) == q);
  CHECK(s_plus(q, SElement::top()) == SElement::top());
  CHECK(s_plus(SElement::top(), q) == SElement::top());
  CHECK(s_plus(SElement::neutral(), SElement::top()) == SElement::top());
}

TEST_CASE("sum of two kept jobs") {
  const SElement a = T(10, 0, 20, 1, ninf);
  const SElement b = T(25, 0, 35, 1, ninf);
  const SElement r = s_plus(a, b);
  CHECK(r == T(10, 0, 35, 1, 35));
  CHECK(in_s(r));
}

TEST_CASE("sum where the second job is lost when the first is kept") {
  const SElement a = T(10, 0, 20, 1, ninf);
  const SElement b = T(18, 0, 28, 1, ninf);
  const SElement r = s_plus(a, b);
  CHECK(r == T(10, 1, ninf, 1, 28));
  CHECK(in_s(r));
  // Not commutative.
  CHECK(s_plus(b, a) != r);
}

TEST_CASE("order examples") {
  const SElement q = T(10, 0, 20, 1, ninf);
  CHECK(s_leq(q, q));
  CHECK(s_leq(SElement::neutral(), SElement::top()));
  CHECK_FALSE(s_leq(SElement::top(), SElement::neutral()));
  CHECK(s_leq(T(30, 0, 20, 0, 20), T(10, 1, 15, 1, 15)));
  CHECK_FALSE(s_leq(T(10, 1, 15, 1, 15), T(30, 0, 20, 0, 20)));
  // Incomparable: earlier begin but fewer losses.
  CHECK_FALSE(s_leq(T(5, 0, 20, 0, 20), T(10, 1, 15, 1, 15)));
  CHECK_FALSE(s_leq(T(10, 1, 15, 1, 15), T(5, 0, 20, 0, 20)));
}

TEST_CASE("meet examples") {
  const SElement q = T(10, 0, 20, 1, ninf);
  CHECK(s_meet(q, q) == q);
  CHECK(s_meet(SElement::top(), q) == q);
  CHECK(s_meet(q, SElement::top()) == q);
  CHECK(s_meet(SElement::neutral(), q) == SElement::neutral());

  // Counts decide before times.
  const SElement a = T(10, 0, 20, 0, 25);
  const SElement b = T(15, 1, 18, 2, 12);
  REQUIRE(in_s(a));
  REQUIRE(in_s(b));
  const SElement m = s_meet(a, b);
  CHECK(m == T(15, 0, 20, 0, 25));
  CHECK(in_s(m));
  CHECK(s_leq(m, a));
  CHECK(s_leq(m, b));
}

TEST_CASE("membership cases") {
  CHECK(in_s(T(0, 2, 5, 2, 9)));         // do_t < dt_t, equal counts
  CHECK_FALSE(in_s(T(0, 1, 5, 2, 9)));
  CHECK(in_s(T(0, 1, 9, 2, 5)));         // do_t > dt_t, one fewer
  CHECK_FALSE(in_s(T(0, 2, 9, 2, 5)));
  CHECK(in_s(T(0, 1, 5, 2, 5)));         // equal times
  CHECK(in_s(T(0, 2, 5, 2, 5)));
  CHECK_FALSE(in_s(T(0, 0, 5, 2, 5)));
  CHECK(in_s(T(0, 1, ninf, 1, ninf)));
  CHECK(in_s(T(0, 0, ninf, 1, ninf)));
  CHECK_FALSE(in_s(T(0, -1, 5, 0, 5)));
  CHECK(in_s(SElement::neutral()));
  CHECK(in_s(SElement::top()));
}

TEST_CASE("generated triples are members") {
  cases::Rng rng(1);
  for (int i = 0; i < 5000; ++i) {
    const SElement q = cases::random_triple(rng);
    REQUIRE(oracle::member(q));
    REQUIRE(in_s(q) == oracle::member(q));
  }
}

TEST_CASE("order matches its definition and is a partial order") {
  cases::Rng rng(2);
  for (int i = 0; i < 3000; ++i) {
    const SElement a = cases::random_element(rng);
    const SElement b = cases::random_element(rng);
    const SElement c = cases::random_element(rng);
    REQUIRE(s_leq(a, b) == oracle::leq(a, b));
    CHECK(s_leq(a, a));
    if (s_leq(a, b) && s_leq(b, a)) CHECK(a == b);
    if (s_leq(a, b) && s_leq(b, c)) CHECK(s_leq(a, c));
  }
}

TEST_CASE("algebra properties on random elements") {
  cases::Rng rng(3);
  for (int i = 0; i < 3000; ++i) {
    const SElement a = cases::random_element(rng);
    const SElement b = cases::random_element(rng);
    const SElement c = cases::random_element(rng);
    REQUIRE(s_plus(s_plus(a, b), c) == s_plus(a, s_plus(b, c)));
    REQUIRE(oracle::member(s_plus(a, b)));
    const SElement m = s_meet(a, b);
    REQUIRE(oracle::member(m));
    REQUIRE(oracle::leq(m, a));
    REQUIRE(oracle::leq(m, b));
    if (oracle::leq(c, a) && oracle::leq(c, b)) REQUIRE(oracle::leq(c, m));
  }
}

TEST_CASE("sum is monotone on triples and top") {
  cases::Rng rng(4);
  int pairs = 0;
  for (int i = 0; i < 20000 && pairs < 2000; ++i) {
    const SElement b = cases::random_triple(rng);
    const SElement a = s_meet(b, cases::random_triple(rng));
    const SElement x = cases::random_triple(rng);
    REQUIRE(oracle::leq(a, b));
    REQUIRE(oracle::leq(s_plus(a, x), s_plus(b, x)));
    REQUIRE(oracle::leq(s_plus(x, a), s_plus(x, b)));
    ++pairs;
  }
  CHECK(pairs == 2000);
}

TEST_CASE("neutral breaks left monotonicity") {
  // neutral <= q, but neutral + x = x is not below q + x when q begins
  // later than x ends. Pricing never meets this case: bounds of vertices
  // other than d are triples.
  const SElement q = T(30, 0, 40, 1, ninf);
  const SElement x = T(10, 0, 20, 1, ninf);
  CHECK(s_leq(SElement::neutral(), q));
  CHECK_FALSE(s_leq(s_plus(SElement::neutral(), x), s_plus(q, x)));
}

TEST_CASE("resources") {
  Resource a{{T(10, 0, 20, 1, ninf), SElement::neutral()}, 3.0};
  Resource b{{T(25, 0, 35, 1, ninf), T(5, 0, 9, 1, ninf)}, -1.0};
  const Resource e = identity_resource(2);
  CHECK(resource_plus(e, a) == a);
  CHECK(resource_plus(a, e) == a);
  const Resource s = resource_plus(a, b);
  CHECK(s.per_scenario[0] == T(10, 0, 35, 1, 35));
  CHECK(s.per_scenario[1] == b.per_scenario[1]);
  CHECK(s.lambda == 2.0);
  CHECK(resource_meet(a, b).lambda == -1.0);
  CHECK(resource_leq(resource_meet(a, b), a));
  CHECK(resource_leq(resource_meet(a, b), b));
  CHECK_FALSE(resource_leq(a, b));  // lambda 3 > -1

  const Resource wrong = identity_resource(3);
  CHECK_THROWS_AS(resource_plus(a, wrong), InvalidInput);
  CHECK_THROWS_AS(resource_leq(a, wrong), InvalidInput);
  CHECK_THROWS_AS(resource_meet(a, wrong), InvalidInput);
}

TEST_CASE("resource cost") {
  CHECK(resource_cost(Resource{{SElement::neutral(), SElement::neutral()}, 7.0}, 100.0) == 7.0);
  CHECK(std::isinf(resource_cost(Resource{{SElement::top(), SElement::neutral()}, 7.0}, 1.0)));
  CHECK(resource_cost(Resource{{T(0, 1, ninf, 1, 5), T(0, 0, 5, 1, ninf)}, 500.0}, 120.0) ==
        doctest::Approx(560.0));
  CHECK(resource_cost(Resource{{}, -4.5}, 120.0) == -4.5);
  CHECK(resource_feasible(Resource{}));
}

TEST_CASE("string form") {
  CHECK(to_string(SElement::neutral()) == "e");
  CHECK(to_string(SElement::top()) == "inf");
  CHECK(to_string(T(10, 0, 20, 1, ninf)) == "{bg=10, do=(0,20), dt=(1,-inf)}");
}

}  // TEST_SUITE
