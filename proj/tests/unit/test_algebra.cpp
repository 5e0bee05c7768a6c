#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "folab/errors.hpp"
#include "folab/mpoly.hpp"
#include "folab/linalg.hpp"
#include "folab/parse.hpp"
#include "folab/roots.hpp"

using namespace folab;

namespace {

const std::vector<std::string> kUV = {"u", "v"};
MPoly P(const std::string& s) { return parse_poly(s, kUV); }

}  // namespace

TEST_CASE("field tower arithmetic") {
  FieldElement r2 = FieldElement::sqrt_of(2);
  CHECK(r2 * r2 == FieldElement(2));
  CHECK((FieldElement(1) + r2).inverse() == r2 - FieldElement(1));
  FieldElement i = FieldElement::sqrt_of(-1);
  CHECK(i * i == FieldElement(-1));
  CHECK(i.to_string() == "i");
  CHECK((FieldElement(Rational(1, 2)) - r2).to_string() == "1/2 - rt(2)");
  CHECK_THROWS_AS(r2 + FieldElement::sqrt_of(3), FieldExtensionError);

  FieldElement s = FieldElement::parameter("s");
  FieldElement q = (s * s - FieldElement(1)) / (s - FieldElement(1));
  CHECK(q == s + FieldElement(1));
  CHECK(q.to_string() == "s + 1");
}

TEST_CASE("square roots in the tower") {
  auto a = sqrt_in_tower(FieldElement(Rational(9, 4)), 2);
  REQUIRE(a);
  CHECK(*a == FieldElement(Rational(3, 2)));
  auto b = sqrt_in_tower(FieldElement(8), 2);
  REQUIRE(b);
  CHECK(*b * *b == FieldElement(8));
  CHECK(b->descriptor().sqrt_of == 2);
  CHECK_FALSE(sqrt_in_tower(FieldElement(8), 1));
  // 3 + 2 rt(2) = (1 + rt(2))^2
  auto c = sqrt_in_tower(FieldElement(3) + FieldElement(2) * FieldElement::sqrt_of(2), 2);
  REQUIRE(c);
  CHECK(*c * *c == FieldElement(3) + FieldElement(2) * FieldElement::sqrt_of(2));
  CHECK_FALSE(sqrt_in_tower(FieldElement::sqrt_of(2), 2));
  auto d = sqrt_in_tower(FieldElement(-3), 2);
  REQUIRE(d);
  CHECK(d->descriptor().sqrt_of == -3);
}

TEST_CASE("poly_arith examples") {
  CHECK(P("(u+v)*(u-v)") == P("u^2 - v^2"));
  CHECK(P("v^2 - u^3").derivative(0) == P("-3*u^2"));
  CHECK(P("rt(2)*u") * P("rt(2)*u") == P("2*u^2"));
  CHECK_THROWS_AS(P("u") + parse_poly("x", {"x", "y", "z"}), DomainError);
}

TEST_CASE("series_compose examples") {
  std::vector<std::string> t = {"t"};
  PSeries f1(parse_poly("t + t^2", t));
  auto r1 = series_compose(f1, {PSeries(P("u*v"))});
  CHECK(r1.poly == P("u*v + u^2*v^2"));
  auto r2 = series_compose(PSeries(parse_poly("t", t)), {PSeries(P("u^2"))});
  CHECK(r2.poly == P("u^2"));
  PSeries f3(parse_poly("t + t^2 + 2*t^3 + 6*t^4", t), 5);
  auto r3 = series_compose(f3, {PSeries(P("u"))});
  CHECK(r3.poly == P("u + u^2 + 2*u^3 + 6*u^4"));
  CHECK(r3.prec == 5);
  CHECK_THROWS_AS(series_compose(f1, {PSeries(P("1 + u"))}), DomainError);
}

TEST_CASE("vanishing_order examples") {
  CHECK(vanishing_order(P("v^2 - u^3")) == 2);
  CHECK(vanishing_order(P("u^2*v")) == 3);
  CHECK_THROWS_AS(vanishing_order(PSeries(MPoly(kUV), 3)), InconclusiveError);
}

TEST_CASE("ratio_in_positive_rationals examples") {
  CHECK(ratio_in_positive_rationals(0, -1) == RatioVerdict::No);
  CHECK(ratio_in_positive_rationals(3, 2) == RatioVerdict::Yes);
  CHECK(ratio_in_positive_rationals(1, 0) == RatioVerdict::ZeroEigenvalue);
  CHECK(ratio_in_positive_rationals(0, 0) == RatioVerdict::Nilpotent);
  CHECK(ratio_in_positive_rationals(2, 1) == RatioVerdict::Yes);   // eigenvalues 1, 1
  CHECK(ratio_in_positive_rationals(1, 1) == RatioVerdict::No);    // complex pair
  CHECK(ratio_in_positive_rationals(5, 5) == RatioVerdict::No);    // irrational ratio
}

TEST_CASE("ratio verdict is invariant under scaling the linear part") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int k = 0; k < 200; ++k) {
    // Build tr, det from integer eigenvalue pairs and random pairs alike.
    FieldElement tr, det;
    if (k % 2 == 0) {
      int a = d(rng), b = d(rng);
      tr = FieldElement(a + b);
      det = FieldElement(a * b);
    } else {
      tr = FieldElement(d(rng));
      det = FieldElement(d(rng));
    }
    int cn = d(rng);
    if (cn == 0) cn = 3;
    FieldElement c(Rational(cn, 1 + (k % 5)));
    CHECK(ratio_in_positive_rationals(tr, det) == ratio_in_positive_rationals(c * tr, c * c * det));
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-9, 9);
  auto rnd = [&]() {
    return FieldElement(Rational(d(rng), 1 + std::abs(d(rng)))) +
           FieldElement(Rational(d(rng), 1 + std::abs(d(rng)))) * FieldElement::sqrt_of(-7);
  };
  for (int k = 0; k < 200; ++k) {
    FieldElement a = rnd(), b = rnd(), c = rnd();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
  }
}

TEST_CASE("series_compose agrees with polynomial substitution") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<std::string> st = {"s", "t"};
  for (int k = 0; k < 50; ++k) {
    MPoly f(st), g1(kUV), g2(kUV);
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j) f.add_term(Exponent{i, j, 0, 0}, FieldElement(d(rng)));
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j) {
        if (i + j == 0) continue;
        g1.add_term(Exponent{i, j, 0, 0}, FieldElement(d(rng)));
        g2.add_term(Exponent{i, j, 0, 0}, FieldElement(d(rng)));
      }
    auto composed = series_compose(PSeries(f), {PSeries(g1, 20), PSeries(g2, 20)});
    CHECK(composed.poly == f.substitute({g1, g2}));
  }
}

TEST_CASE("multivariate gcd and exact division") {
  MPoly a = P("(u+v)^2*(u - 2*v)");
  MPoly b = P("(u+v)*(u^2 + v)");
  CHECK(MPoly::gcd(a, b) == P("u+v"));
  auto q = MPoly::divide(a, P("u+v"));
  REQUIRE(q);
  CHECK(*q == P("(u+v)*(u - 2*v)"));
  CHECK_FALSE(MPoly::divide(a, P("u + 3")));
  CHECK(MPoly::gcd(P("u^2*v"), P("u*v^3")) == P("u*v"));
}

TEST_CASE("parser reports syntax errors with columns") {
  try {
    parse_differential("du +", kUV);
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 4);
  }
  auto c = parse_differential("(v^2 - u*v) du + u^2 dv", kUV);
  CHECK(c[0] == P("v^2 - u*v"));
  CHECK(c[1] == P("u^2"));
}

TEST_CASE("exact roots inside the tower") {
  auto rt = [](const std::string& s) {
    MPoly p = parse_poly(s, {"t"});
    return distinct_roots(p.as_univariate(0), 2);
  };
  auto r1 = rt("t^3 - 1");
  REQUIRE(r1.size() == 3);
  for (const auto& r : r1) CHECK(r.pow(3).is_one());
  CHECK(r1[0] == FieldElement(1));
  auto r2 = rt("(t^2 - 2)*(t^2 - 8)");
  CHECK(r2.size() == 4);
  for (const auto& r : r2) CHECK(((r * r - FieldElement(2)) * (r * r - FieldElement(8))).is_zero());
  CHECK(rt("(t - 1/2)^3*(t + 3)").size() == 2);
  CHECK_THROWS_AS(rt("t^3 - 2"), FieldExtensionError);
  CHECK_THROWS_AS(rt("(t^2 + t + 1)*(t^2 - 2)"), FieldExtensionError);
  auto r3 = rt("t^2 - (1 + rt(2))*t + rt(2)");
  REQUIRE(r3.size() == 2);
  auto r4 = rt("(t - rt(2))*(t - 1)*(t + 3*rt(2))");
  REQUIRE(r4.size() == 3);
  CHECK_THROWS_AS(distinct_roots(parse_poly("t^2 + 1", {"t"}).as_univariate(0), 1), FieldExtensionError);
}

TEST_CASE("linear algebra over the tower") {
  FieldElement r2 = FieldElement::sqrt_of(2);
  Matrix m = {{1, r2}, {r2, 2}};
  CHECK(rank(m, 2) == 1);
  auto ns = nullspace(m, 2);
  REQUIRE(ns.size() == 1);
  CHECK((ns[0][0] + r2 * ns[0][1]).is_zero());
  auto x = solve({{1, 1}, {1, -1}}, {3, 1}, 2);
  REQUIRE(x);
  CHECK((*x)[0] == FieldElement(2));
  CHECK_FALSE(solve({{1, 1}, {2, 2}}, {1, 3}, 2));
}
