#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "corpus.hpp"
#include "folab/blowup.hpp"
#include "folab/errors.hpp"

using namespace folab;
using corpus::form2;
using corpus::xyz;

namespace {

MPoly in(const std::vector<std::string>& vars, const std::string& s) { return parse_poly(s, vars); }

LocalDivisor divisor_of(const std::vector<MPoly>& eqs) {
  LocalDivisor d;
  for (const auto& e : eqs) d.branches.push_back({e, true, -1, ""});
  return d;
}

}  // namespace

TEST_CASE("dicritical_test2 examples") {
  CHECK(dicritical_test2(form2("v", "-u")));
  CHECK_FALSE(dicritical_test2(form2("u", "v")));
  CHECK_FALSE(dicritical_test2(form2("-3*u^2", "2*v")));
}

TEST_CASE("blowup_point2 examples") {
  const std::vector<std::string> ut = {"u", "t"};
  auto cusp = blowup_point2(form2("-3*u^2", "2*v"), {});
  REQUIRE(cusp.size() == 2);
  CHECK(cusp[0].vars == ut);
  CHECK(cusp[0].form == OneForm2(in(ut, "2*t^2 - 3*u"), in(ut, "2*u*t")));
  CHECK(cusp[0].multiplicity == 1);
  REQUIRE(cusp[0].divisor.e0() == 1);
  CHECK(cusp[0].divisor.branches[0].eq == in(ut, "u"));
  CHECK(cusp[0].divisor.branches[0].invariant);

  auto tangent = blowup_point2(form2("v*(v - u)", "u^2"), {});
  CHECK(tangent[0].form == OneForm2(in(ut, "t^2"), in(ut, "u")));
  CHECK(tangent[0].divisor.branches[0].invariant);

  auto radial = blowup_point2(form2("v", "-u"), {});
  for (const auto& c : radial) {
    CHECK(c.multiplicity == 2);
    CHECK(c.dicritical);
    CHECK_FALSE(c.divisor.branches.back().invariant);
    CHECK((!c.form.A.constant_term().is_zero() || !c.form.B.constant_term().is_zero()));
  }
  CHECK_THROWS_AS(blowup_point2(form2("1", "u"), {}), DomainError);
}

TEST_CASE("blowup_point2 carries strict transforms of branches") {
  auto charts = blowup_point2(form2("v", "u"), divisor_of({corpus::uv("u"), corpus::uv("v")}));
  // chart (u, t): {v = 0} becomes {t = 0}, {u = 0} leaves the chart
  const auto& d0 = charts[0].divisor;
  REQUIRE(d0.e0() == 3);
  CHECK(d0.branches[0].eq.is_constant());
  CHECK(d0.branches[1].eq == in({"u", "t"}, "t"));
  CHECK(branches_at_origin(d0).e0() == 2);
  CHECK(branches_at_origin(charts[1].divisor).e0() == 2);
}

TEST_CASE("property: exceptional multiplicity is nu0 or nu0 + 1") {
  for (const auto& item : corpus::plane_items()) {
    OneForm2 w = item.form();
    CAPTURE(item.name);
    for (const auto& c : blowup_point2(w, {})) CHECK(c.multiplicity == nu0(w) + (dicritical_test2(w) ? 1 : 0));
  }
}

TEST_CASE("property: the two charts agree on the overlap") {
  // Chart u in (u, t), chart v in (s, v); on the overlap u = s v, t = 1/s, so
  // u^m * (pullback of the u-chart form) = v^m * (v-chart form).
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(1, 9);
  for (const auto& item : corpus::plane_items()) {
    auto charts = blowup_point2(item.form(), {});
    const auto& fu = charts[0].form;
    const auto& fv = charts[1].form;
    const int m = charts[0].multiplicity;
    CAPTURE(item.name);
    for (int trial = 0; trial < 3; ++trial) {
      FieldElement s(Rational(pick(rng), pick(rng))), v(Rational(pick(rng), pick(rng)));
      FieldElement u = s * v, t = s.inverse();
      FieldElement a = fu.A.evaluate({u, t}), b = fu.B.evaluate({u, t});
      FieldElement sm(1);
      for (int k = 0; k < m; ++k) sm *= s;
      // pullback: du = v ds + s dv, dt = -ds / s^2
      FieldElement ds = sm * (a * v - b / (s * s));
      FieldElement dv = sm * (a * s);
      CHECK(ds == fv.A.evaluate({s, v}));
      CHECK(dv == fv.B.evaluate({s, v}));
    }
  }
}

TEST_CASE("blowup_point3 examples") {
  auto w = exact_form3(xyz("x*y*z"));
  auto charts = blowup_point3(w, {});
  REQUIRE(charts.size() == 3);
  const std::vector<std::string> xst = {"x", "s", "t"};
  CHECK(charts[0].vars == xst);
  CHECK_FALSE(charts[0].dicritical);
  CHECK(charts[0].multiplicity == 2);
  CHECK(invariant_surface3(charts[0].form, in(xst, "x")));
  CHECK_THROWS_AS(blowup_point3(corpus::form3("1", "0", "0"), {}), DomainError);

  for (const auto& c : blowup_point3(corpus::model_a(FieldElement(1), FieldElement(1), FieldElement(1)), {})) {
    CHECK_FALSE(c.dicritical);
    MPoly e = c.exceptional_eq();
    CHECK(invariant_surface3(c.form, e));
    CHECK(integrable3(c.form));
    // logarithmic again: the new coordinate planes stay invariant
    for (int i = 0; i < 3; ++i) CHECK(invariant_surface3(c.form, MPoly::variable(c.vars, i)));
  }
}

TEST_CASE("blowup_curve3 examples") {
  auto charts = blowup_curve3(exact_form3(xyz("x*y")), 2, {});
  REQUIRE(charts.size() == 2);
  CHECK(charts[0].vars == std::vector<std::string>{"x", "s", "z"});
  CHECK(charts[1].vars == std::vector<std::string>{"t", "y", "z"});
  CHECK(charts[0].substitution[1] == in(charts[0].vars, "x*s"));
  CHECK(charts[1].substitution[0] == in(charts[1].vars, "y*t"));
  for (const auto& c : charts) {
    CHECK_FALSE(c.dicritical);
    CHECK(invariant_surface3(c.form, c.exceptional_eq()));
  }
  CHECK_THROWS_WITH_AS(blowup_curve3(corpus::form3("y", "x", "1"), 2, {}), "center-not-in-singular-set", DomainError);
  CHECK_THROWS_WITH_AS(blowup_curve3(exact_form3(xyz("x*y")), 2, divisor_of({xyz("x - z^2")})),
                       doctest::Contains("normal-crossings"), DomainError);
  for (const auto& c : blowup_curve3(corpus::model_b2(1, 2, 1, 3), 2, {})) {
    CHECK_FALSE(c.dicritical);
    CHECK(invariant_surface3(c.form, c.exceptional_eq()));
  }
}

TEST_CASE("property: divisor branch count stays within the dimension") {
  LocalDivisor d = divisor_of({corpus::uv("u"), corpus::uv("v")});
  for (const auto& c : blowup_point2(form2("v", "u"), d)) CHECK(branches_at_origin(c.divisor).e0() <= 2);
  LocalDivisor d3 = divisor_of({xyz("x"), xyz("y"), xyz("z")});
  for (const auto& c : blowup_point3(exact_form3(xyz("x*y*z")), d3)) CHECK(branches_at_origin(c.divisor).e0() <= 3);
}
