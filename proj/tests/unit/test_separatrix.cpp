#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "corpus.hpp"
#include "random_instances.hpp"
#include "folab/errors.hpp"
#include "folab/separatrix.hpp"

using namespace folab;
using corpus::form2;
using corpus::uv;

namespace {

std::vector<MPoly> equations(const SeparatrixSet& s) {
  std::vector<MPoly> out;
  for (const auto& b : s.branches) out.push_back(b.equation);
  return out;
}

bool contains(const std::vector<MPoly>& v, const MPoly& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

bool dicritical(const ReductionTree& t) {
  for (const auto& c : t.components)
    if (c.dicritical) return true;
  return false;
}

}  // namespace

TEST_CASE("separatrices2 examples") {
  auto node = separatrices2(form2("v", "u"));
  CHECK(node.s0() == 2);
  CHECK(contains(equations(node), uv("u")));
  CHECK(contains(equations(node), uv("v")));
  CHECK(node.g == uv("u*v"));

  auto cusp = separatrices2(exact_form2(uv("v^2 - u^3")));
  REQUIRE(cusp.s0() == 1);
  CHECK(cusp.g == uv("v^2 - u^3"));
  CHECK(cusp.branches[0].analytic);

  auto tangent = separatrices2(form2("v*(v - u)", "u^2"));
  CHECK(tangent.s0() == 2);
  CHECK(tangent.g == uv("u*v"));

  CHECK_THROWS_AS(separatrices2(form2("v", "-u")), DomainError);
}

TEST_CASE("weak_separatrix_jet examples") {
  auto euler = weak_separatrix_jet(form2("v - u", "-u^2"), 8);
  CHECK_FALSE(euler.analytic);
  CHECK(euler.role == BranchRole::Weak);
  const MPoly& h = euler.jet.gamma[1];
  const std::vector<int> factorial = {1, 1, 2, 6, 24, 120};
  for (int k = 1; k <= 6; ++k) CHECK(h.coeff(Exponent{k, 0, 0, 0}) == FieldElement(factorial[static_cast<size_t>(k - 1)]));

  auto sn = weak_separatrix_jet(form2("v", "u^2"));
  CHECK(sn.jet.gamma[1].is_zero());
  CHECK(sn.equation == uv("v"));

  const std::vector<std::string> ut = {"u", "t"};
  auto leaf = weak_separatrix_jet(OneForm2(parse_poly("t^2", ut), parse_poly("u", ut)));
  CHECK(leaf.jet.gamma[0].is_zero());
  CHECK(leaf.equation == uv("u"));

  CHECK_THROWS_AS(weak_separatrix_jet(form2("v", "u")), DomainError);
}

TEST_CASE("multiplicity_identity_check examples") {
  auto sn = multiplicity_identity_check(form2("v", "u^2"));
  CHECK(sn.nu_form == 1);
  CHECK(sn.nu_dg == 1);
  CHECK(sn.equal);
  auto tangent = multiplicity_identity_check(form2("v*(v - u)", "u^2"));
  CHECK(tangent.nu_form == 2);
  CHECK(tangent.nu_dg == 1);
  CHECK_FALSE(tangent.equal);
  auto cusp = multiplicity_identity_check(form2("-3*u^2", "2*v"));
  CHECK(cusp.nu_form == 1);
  CHECK(cusp.nu_dg == 1);
  CHECK(cusp.equal);
}

TEST_CASE("property: separatrix branches on the corpus") {
  for (const auto& item : corpus::plane_items()) {
    CAPTURE(item.name);
    OneForm2 w = item.form();
    auto tree = seidenberg_reduce(w);
    if (dicritical(tree)) continue;
    auto sep = separatrices2(w, tree);
    const bool gc = is_generalized_curve2(w);
    bool has_sn_leaf = false;
    for (const auto& leaf : tree.leaves) has_sn_leaf |= leaf.code.kind == PointClass::SaddleNode;
    for (const auto& b : sep.branches) {
      auto inv = invariant_curve(w, b.jet);
      CHECK(inv.value);
      CHECK(inv.certified_order >= sep.order);
      if (gc) CHECK(b.analytic);
      if (!b.analytic) CHECK(has_sn_leaf);
    }
    // multiplicity identity agrees with second type
    const bool second = is_second_type2(w).value;
    CHECK(multiplicity_identity_check(w).equal == second);
    CHECK(nu0(w) >= nu0(exact_form2(sep.g)));
    if (gc) CHECK(mu0(w) == mu0(exact_form2(sep.g)));
    if (second) CHECK(trees_equivalent(tree, seidenberg_reduce(exact_form2(sep.g))));
    // Two transversal smooth separatrices and second type: already simple
    if (second && sep.s0() == 2) {
      const auto& a = sep.branches[0].equation;
      const auto& b = sep.branches[1].equation;
      const bool smooth = a.order() == 1 && b.order() == 1;
      if (smooth && !same_direction(tangent_direction(a), tangent_direction(b)))
        CHECK(classify_point2(w, {}).code.adapted == Adapted::ESimple);
    }
  }
}

TEST_CASE("property: second type with two transversal smooth separatrices is simple (200 seeded germs)") {
  const auto r = instances::plane_simple_suite();
  for (const auto& f : r.failures) FAIL_CHECK(f);
  MESSAGE("applicable germs: " << r.applicable << ", skipped: " << r.skipped);
  CHECK(r.instances == 200);
  CHECK(r.applicable >= 50);
}
