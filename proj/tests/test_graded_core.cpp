#include "doctest.h"
#include "fixtures.hpp"

using namespace prelie;
using namespace prelie::testing;

TEST_CASE("koszul sign rule") {
  std::vector<int> even{0, 0};
  CHECK(koszul_sign(even, 3) == 1);
  std::vector<int> one{1};
  CHECK(koszul_sign(one, 1) == -1);
  std::vector<int> two{1, 1};
  CHECK(koszul_sign(two, 1) == 1);
}

TEST_CASE("koszul sign is multiplicative over concatenation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> a, b, ab;
    for (int i = 0; i < 4; ++i) a.push_back(d(rng));
    for (int i = 0; i < 3; ++i) b.push_back(d(rng));
    ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    int passed = d(rng);
    CHECK(koszul_sign(ab, passed) == koszul_sign(a, passed) * koszul_sign(b, passed));
  }
}

TEST_CASE("shifted degree") {
  CHECK(shifted_degree(2, -1) == 0);
  CHECK(shifted_degree(1, 1) == 1);
  for (int d = 1; d <= 6; ++d) CHECK(shifted_degree(d, 2 - d) == 1);
}

TEST_CASE("rational round trips stay exact") {
  Rational p(3, 7), r(-5, 13);
  CHECK((p + r) - r == p);
  CHECK(parse_rational(rational_str(p * r)) == p * r);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(rational_div(p, Rational(0)));
}

TEST_CASE("term list algebra") {
  TermList t;
  term_add(t, 2, Rational(1, 2));
  term_add(t, 1, Rational(3));
  term_add(t, 2, Rational(-1, 2));
  REQUIRE(t.size() == 1);
  CHECK(t[0].basis == 1);
  term_axpy(t, Rational(2), TermList{{1, Rational(-3, 2)}});
  CHECK(t.empty());
}

TEST_CASE("evaluate_graded_map on fixtures") {
  Fixture b = make_gentle_b();
  const GradedGraph& g = *b.graph;
  std::vector<ObjId> loop_at_2{1, 0, 1};

  SUBCASE("zero argument anywhere gives the empty list") {
    auto out = evaluate_graded_map(b.a.mu, loop_at_2, {TermList{}, TermList{{bid(g, "al"), 1}}});
    CHECK(out.empty());
  }
  SUBCASE("identity table returns the input") {
    Cochain one = brace_unit(g);
    auto out = evaluate_graded_map(one, {0, 1}, {TermList{{bid(g, "al"), Rational(2, 3)}}});
    REQUIRE(out.size() == 1);
    CHECK(out[0].basis == bid(g, "al"));
    CHECK(out[0].coefficient == Rational(2, 3));
  }
  SUBCASE("mu2(be, al) hits the relation path") {
    auto out = evaluate_graded_map(
        b.a.mu, loop_at_2, {TermList{{bid(g, "be"), 1}}, TermList{{bid(g, "al"), 1}}});
    CHECK(out.empty());
  }
  SUBCASE("mu2(al, be) reaches the surviving loop") {
    auto out = evaluate_graded_map(
        b.a.mu, {0, 1, 0}, {TermList{{bid(g, "al"), 1}}, TermList{{bid(g, "be"), 1}}});
    REQUIRE(out.size() == 1);
    CHECK(out[0].basis == bid(g, "ga"));
  }
  SUBCASE("degree-inhomogeneous argument rejected") {
    TermList mixed{{bid(g, "e1"), 1}, {bid(g, "ga"), 1}};
    CHECK_THROWS(evaluate_graded_map(b.a.mu, {0, 0, 0}, {mixed, TermList{{bid(g, "e1"), 1}}}));
  }
  SUBCASE("non-composable object sequence rejected") {
    CHECK_THROWS(evaluate_graded_map(b.a.mu, {0, 1, 1},
                                     {TermList{{bid(g, "be"), 1}}, TermList{{bid(g, "al"), 1}}}));
  }
}

TEST_CASE("brace linearity in each slot") {
  Fixture lam = make_lambda();
  std::mt19937_64 rng(11);
  WeightWindow win{0, 8};
  for (int trial = 0; trial < 20; ++trial) {
    Cochain f = random_cochain(*lam.graph, 0, 1, 4, rng);
    Cochain g1 = random_cochain(*lam.graph, 0, 1, 3, rng);
    Cochain g2 = random_cochain(*lam.graph, 0, 1, 3, rng);
    Rational s(3, 2);
    Cochain combo = cochain_add(g1, cochain_scaled(g2, s));
    Cochain lhs = star(f, combo, win);
    Cochain rhs = cochain_add(star(f, g1, win), cochain_scaled(star(f, g2, win), s));
    CHECK(lhs == rhs);
  }
}
