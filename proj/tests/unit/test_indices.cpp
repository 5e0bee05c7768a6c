#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "corpus.hpp"
#include "folab/errors.hpp"
#include "folab/indices.hpp"
#include "gsv_oracle.hpp"

using namespace folab;
using corpus::form2;
using corpus::uv;

namespace {

MPoly P(const std::string& s) { return parse_poly(s, kVarsP2); }
MPoly Q(const std::string& s) { return parse_poly(s, kVarsP3); }
FieldElement fe(long v) { return FieldElement(v); }

const FieldElement& r2() {
  static const FieldElement r = FieldElement::sqrt_of(2);
  return r;
}

/// The degree-1 logarithmic foliation XYZ (dX/X + rt2 dY/Y - (1 + rt2) dZ/Z).
ProjFoliation log_triangle() { return logarithmic_build({{P("X"), P("Y"), P("Z")}, {fe(1), r2(), fe(-1) - r2()}}); }

/// Degree-1 foliation i_R i_V (dX ^ dY ^ dZ) of the linear field V = M (X, Y, Z).
ProjFoliation linear_foliation(const Matrix& M) {
  std::vector<MPoly> x, v;
  for (int k = 0; k < 3; ++k) x.push_back(MPoly::variable(kVarsP2, k));
  for (int i = 0; i < 3; ++i) {
    MPoly s(kVarsP2);
    for (int k = 0; k < 3; ++k) s += x[static_cast<size_t>(k)].scaled(M[static_cast<size_t>(i)][static_cast<size_t>(k)]);
    v.push_back(s);
  }
  return ProjFoliation::make({x[1] * v[2] - x[2] * v[1], x[2] * v[0] - x[0] * v[2], x[0] * v[1] - x[1] * v[0]});
}

const BranchJet& branch_with(const std::vector<BranchJet>& bs, const MPoly& eq) {
  for (const auto& b : bs)
    if (b.equation == eq) return b;
  FAIL("no branch with equation " << eq.to_string());
  return bs.front();
}

const BranchJet& branch_with(const std::vector<BranchJet>& bs, BranchRole role) {
  for (const auto& b : bs)
    if (b.role == role) return b;
  FAIL("no branch with role " << to_string(role));
  return bs.front();
}

FieldElement sum_bb(const std::vector<PlanePoint>& pts) {
  FieldElement s;
  for (const auto& p : pts) s += bb_index_resolved(p.local).value;
  return s;
}

}  // namespace

TEST_CASE("logarithmic_build examples") {
  const ProjFoliation F = log_triangle();
  CHECK(F.degree == 1);
  CHECK(euler_condition(F.coeffs));
  for (const auto& f : {P("X"), P("Y"), P("Z")}) CHECK(invariant_hypersurface(F, f));

  CHECK_THROWS_AS(logarithmic_build({{P("X"), P("Y"), P("Z")}, {fe(1), fe(1), fe(1)}}), DomainError);

  const ProjFoliation G = logarithmic_build({{Q("X"), Q("Y"), Q("Z"), Q("W")}, {fe(1), fe(1), fe(-1), fe(-1)}});
  CHECK(G.dimension() == 3);
  CHECK(G.degree == 2);
  CHECK(integrable(G.coeffs));
  CHECK(euler_condition(G.coeffs));

  const ProjFoliation conic = logarithmic_build({{P("X*Y - Z^2"), P("X")}, {fe(1), fe(-2)}});
  CHECK(conic.degree == 1);
  CHECK(invariant_hypersurface(conic, P("X*Y - Z^2")));
}

TEST_CASE("logarithmic_build errors") {
  CHECK_THROWS_AS(logarithmic_build({{P("X^2"), P("Y")}, {fe(1), fe(-2)}}), DomainError);
  CHECK_THROWS_AS(logarithmic_build({{P("X*Y"), P("X*Z")}, {fe(1), fe(-1)}}), DomainError);
  CHECK_THROWS_AS(logarithmic_build({{P("X"), P("Y + 1")}, {fe(1), fe(-1)}}), DomainError);
  CHECK_THROWS_AS(logarithmic_build({{P("X"), P("Y")}, {fe(0), fe(0)}}), DomainError);
}

TEST_CASE("ProjFoliation::make validation") {
  CHECK_THROWS_AS(ProjFoliation::make({P("Y"), P("Y"), P("0")}), DomainError);
  CHECK_THROWS_AS(ProjFoliation::make({P("Y^2"), P("-X"), P("0")}), DomainError);
  CHECK_THROWS_AS(ProjFoliation::make({Q("Y"), Q("-X"), Q("W"), Q("-Z")}), DomainError);

  const ProjFoliation F = ProjFoliation::make({P("Z*Y"), P("-Z*X"), P("0")});
  CHECK(F.degree == 0);
  CHECK(F.coeffs[0] == P("Y"));

  const ProjFoliation pencil = ProjFoliation::make({Q("-Y"), Q("X"), Q("0"), Q("0")});
  CHECK(pencil.degree == 0);
  CHECK(integrable(pencil.coeffs));
}

TEST_CASE("from_affine closes a plane form") {
  const ProjFoliation F = from_affine(form2("v", "-u^2"));
  CHECK(F.degree == 2);
  CHECK(euler_condition(F.coeffs));
  CHECK(invariant_hypersurface(F, P("Z")));
  CHECK(from_affine(form2("v", "u")).degree == 1);
}

TEST_CASE("plane_singularities examples") {
  const auto pts = plane_singularities(log_triangle());
  REQUIRE(pts.size() == 3);
  for (const auto& p : pts) {
    CHECK(p.multiplicity == 1);
    CHECK(p.nondegenerate());
    int zeros = 0;
    for (const auto& c : p.coords) zeros += c.is_zero() ? 1 : 0;
    CHECK(zeros == 2);
  }
  CHECK(sum_bb(pts) == fe(9));

  const auto res = plane_singularities(ProjFoliation::make({P("Z*Y"), P("Z*X"), P("-2*X*Y")}));
  int non_simple = 0;
  for (const auto& p : res) non_simple += p.record.code.kind == PointClass::NonSimple ? 1 : 0;
  CHECK(non_simple == 2);
  CHECK(sum_bb(res) == fe(9));

  const FieldElement one(1), zero(0);
  const Matrix M = {{zero, one, -one}, {zero, one, r2() - one}, {zero, zero, r2()}};
  const auto generic = plane_singularities(linear_foliation(M));
  REQUIRE(generic.size() == 3);
  int mu = 0;
  for (const auto& p : generic) mu += p.multiplicity;
  CHECK(mu == 3);
  CHECK(sum_bb(generic) == fe(9));

  const auto sn = plane_singularities(from_affine(form2("v", "-u^2")));
  int total = 0;
  for (const auto& p : sn) total += p.multiplicity;
  CHECK(total == 7);
  CHECK(sum_bb(sn) == fe(16));

  const Matrix companion = {{zero, zero, fe(2)}, {one, zero, zero}, {zero, one, zero}};
  CHECK_THROWS_AS(plane_singularities(linear_foliation(companion)), FieldExtensionError);
}

TEST_CASE("bb_index examples") {
  CHECK(bb_index(classify_point2(form2("v", "u"), {})).value == fe(0));
  CHECK(bb_index(classify_point2(form2("v", "-u"), {})).value == fe(4));
  CHECK(bb_index(classify_point2(form2("v", "-2*u"), {})).value == FieldElement(Rational(9, 2)));
  CHECK_THROWS_AS(bb_index(classify_point2(form2("-3*u^2", "2*v"), {})), DomainError);
  CHECK_THROWS_AS(bb_index(classify_point2(form2("v", "u^2"), {})), DomainError);

  CHECK(bb_index_resolved(form2("v", "u^2")).value == fe(4));
  CHECK(bb_index_resolved(form2("-3*u^2", "2*v")).value == fe(0));
  CHECK_THROWS_AS(bb_index_resolved(form2("1", "0")), DomainError);
}

TEST_CASE("cs_index examples") {
  const SingularityRecord node = classify_point2(form2("v", "u"), {});
  const auto nb = simple_separatrices(node);
  REQUIRE(nb.size() == 2);
  CHECK(cs_index(node, branch_with(nb, uv("v"))).value == fe(-1));
  CHECK(cs_index(node, branch_with(nb, uv("u"))).value == fe(-1));

  const SingularityRecord sn = classify_point2(form2("v", "u^2"), {});
  const auto sb = simple_separatrices(sn);
  CHECK(cs_index(sn, branch_with(sb, BranchRole::Strong)).value == fe(0));

  const SingularityRecord weak = classify_point2(form2("-v - 3*u*v", "u^2"), {});
  const auto wb = simple_separatrices(weak);
  CHECK(cs_index(weak, branch_with(wb, BranchRole::Weak)).value == fe(3));
  CHECK(bb_index_resolved(weak.form).value == fe(7));

  CHECK_THROWS_AS(cs_index(node, curve_branches(uv("u - v")).front()), DomainError);
}

TEST_CASE("gsv_index examples") {
  const SingularityRecord node = classify_point2(form2("v", "2*u"), {});
  const auto nb = simple_separatrices(node);
  CHECK(gsv_index(node, nb).value == fe(0));
  CHECK(cs_index(node, nb).value == FieldElement(Rational(-1, 2)));
  CHECK(bb_index(node).value == FieldElement(Rational(-1, 2)));
  CHECK(gsv_index(node, {branch_with(nb, uv("v"))}).value == fe(1));
  CHECK(boost::multiprecision::abs(oracle::gsv(node.form, {branch_with(nb, uv("v"))}) - 1) < oracle::Real("1e-6"));

  const SingularityRecord regular = classify_point2(form2("1", "0"), {});
  CHECK(gsv_index(regular, curve_branches(uv("u"))).value == fe(0));

  const SingularityRecord cusp = classify_point2(form2("-3*u^2", "2*v"), {});
  CHECK_THROWS_AS(simple_separatrices(cusp), DomainError);
}

TEST_CASE("curve_branches and intersection numbers") {
  const auto bs = curve_branches(uv("u*v*(u - v)"));
  REQUIRE(bs.size() == 3);
  CHECK(intersection_number(bs[0], bs[1]) == 1);
  const auto conic = curve_branches(uv("v - u^2"));
  const auto axis = curve_branches(uv("v"));
  CHECK(intersection_number(conic.front(), axis.front()) == 2);
  CHECK_THROWS_AS(curve_branches(uv("v^2 - u^3")), DomainError);
}

TEST_CASE("sum_theorem_check on the logarithmic triangle") {
  const ProjFoliation F = log_triangle();
  for (const auto& line : {P("X"), P("Y"), P("Z")}) {
    const SumReport rep = sum_theorem_check(F, line);
    CHECK(rep.sum_bb == fe(9));
    CHECK(rep.sum_cs == fe(1));
    CHECK(rep.sum_gsv == fe(2));
    CHECK(rep.ok());
  }
  const SumReport tri = sum_theorem_check(F, P("X*Y*Z"));
  CHECK(tri.d0 == 3);
  CHECK(tri.sum_cs == fe(9));
  CHECK(tri.sum_gsv == fe(0));
  CHECK(tri.sum_bb == fe(9));
  CHECK(tri.ok());
  for (const auto& p : tri.points) {
    REQUIRE(p.relation.has_value());
    CHECK(*p.relation);
    CHECK(p.bb == *p.cs_curve + *p.gsv_curve * fe(2));
  }
}

TEST_CASE("sum_theorem_check on Hamiltonian and saddle-node closures") {
  const ProjFoliation cubic = from_affine(exact_form2(uv("u*v*(u + v - 1)")));
  CHECK(cubic.degree == 2);
  for (const auto& C : {P("X*Y*(X + Y - Z)"), P("Z"), P("X")}) {
    const SumReport rep = sum_theorem_check(cubic, C);
    CHECK(rep.sum_bb == fe(16));
    CHECK(rep.ok());
  }
  const SumReport c3 = sum_theorem_check(cubic, P("X*Y*(X + Y - Z)"));
  CHECK(c3.sum_cs == fe(9));
  CHECK(c3.sum_gsv == fe(3));

  const ProjFoliation quartic = from_affine(exact_form2(uv("u*v*(u - 1)*(v - 1)")));
  CHECK(quartic.degree == 3);
  for (const auto& C : {P("X"), P("X - Z"), P("Z")}) CHECK(sum_theorem_check(quartic, C).ok());

  const ProjFoliation sn = from_affine(form2("v", "-u^2"));
  for (const auto& C : {P("Y"), P("Z")}) CHECK(sum_theorem_check(sn, C).ok());
}

TEST_CASE("sum_theorem_check errors") {
  const ProjFoliation F = log_triangle();
  CHECK_THROWS_AS(sum_theorem_check(F, P("X + Y")), DomainError);
  CHECK_THROWS_AS(sum_theorem_check(F, P("X^2")), DomainError);
  CHECK_THROWS_AS(sum_theorem_check(F, P("X + 1")), DomainError);
  CHECK_THROWS_AS(sum_theorem_check(ProjFoliation::make({Q("-Y"), Q("X"), Q("0"), Q("0")}), Q("X")), DomainError);
}

TEST_CASE("logarithmic_criterion verdicts") {
  const ProjFoliation G = logarithmic_build({{Q("X"), Q("Y"), Q("Z"), Q("W")}, {fe(1), fe(1), fe(-1), fe(-1)}});
  const Matrix H = {{fe(1), fe(0), fe(0)}, {fe(0), fe(1), fe(0)}, {fe(0), fe(0), fe(1)}, {fe(2), fe(-3), fe(5)}};
  const CriterionHypotheses declared{true, true};

  const CriterionReport log = logarithmic_criterion(G, Q("X*Y*Z*W"), H, declared);
  CHECK(log.verdict == LogVerdict::Logarithmic);
  CHECK(log.d == 2);
  CHECK(log.d0 == 4);
  CHECK(log.slack == 0);
  CHECK(log.bb_on_S == log.expected_bb_on_S);
  CHECK(log.bb_on_S == fe(16));
  REQUIRE(log.bb_off_S_nonpositive.has_value());
  CHECK(*log.bb_off_S_nonpositive);

  const CriterionReport partial = logarithmic_criterion(G, Q("X*Y"), H, declared);
  CHECK(partial.verdict == LogVerdict::NotLogarithmic);
  CHECK(partial.slack == 4);

  CHECK(logarithmic_criterion(G, Q("X*Y*Z*W"), H, {}).verdict == LogVerdict::Undetermined);

  const ProjFoliation pencil = ProjFoliation::make({Q("-Y"), Q("X"), Q("0"), Q("0")});
  const CriterionReport deg0 = logarithmic_criterion(pencil, Q("X*Y"), H, declared);
  CHECK(deg0.verdict == LogVerdict::Logarithmic);
  CHECK(deg0.d0 == deg0.d + 2);

  CHECK_THROWS_AS(logarithmic_criterion(G, Q("X + W"), H, declared), DomainError);
  CHECK_THROWS_AS(logarithmic_criterion(G, Q("W"), {{fe(1), fe(0), fe(0)}, {fe(0), fe(1), fe(0)}, {fe(0), fe(0), fe(1)}, {fe(0), fe(0), fe(0)}}, declared),
                  DomainError);
}

namespace {

/// BB at the origin summed over a reduction tree with the l^2 corrections.
FieldElement bb_over_tree(const ReductionTree& tree, int id) {
  const TreeNode& n = tree.nodes[static_cast<size_t>(id)];
  if (n.blown_up) {
    const int l = nu0(n.form) + (n.dicritical ? 1 : 0);
    FieldElement s(l * l);
    for (int c : n.children) s += bb_over_tree(tree, c);
    return s;
  }
  if (n.record < 0) return FieldElement(0);
  return bb_index_resolved(tree.leaves[static_cast<size_t>(n.record)].form).value;
}

MPoly linear_form(const std::array<long, 3>& c) {
  return P("X").scaled(fe(c[0])) + P("Y").scaled(fe(c[1])) + P("Z").scaled(fe(c[2]));
}

long det3(const std::array<long, 3>& a, const std::array<long, 3>& b, const std::array<long, 3>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

}  // namespace

TEST_CASE("property: random degree-1 foliations satisfy the sum formulas") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> small(-3, 3);
  int checked = 0;
  while (checked < 12) {
    std::array<std::array<long, 3>, 3> p;
    for (auto& row : p)
      for (auto& x : row) x = small(rng);
    if (det3(p[0], p[1], p[2]) != 1 && det3(p[0], p[1], p[2]) != -1) continue;
    std::array<long, 3> ev = {small(rng), small(rng), small(rng)};
    if (ev[0] == ev[1] || ev[1] == ev[2] || ev[0] == ev[2]) continue;
    // M = P diag(ev) P^{-1}, with P^{-1} from the adjugate.
    const long det = det3(p[0], p[1], p[2]);
    Matrix M(3, Vector(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        long s = 0;
        for (int k = 0; k < 3; ++k) {
          const int a = (j + 1) % 3, b = (j + 2) % 3, r = (k + 1) % 3, q = (k + 2) % 3;
          const long cof = p[a][r] * p[b][q] - p[a][q] * p[b][r];  // adj(P)[k][j]
          s += p[i][k] * ev[k] * cof;
        }
        M[i][j] = FieldElement(Rational(s, det));
      }
    const ProjFoliation F = linear_foliation(M);
    CAPTURE(F.to_string());
    REQUIRE(F.degree == 1);
    // Invariant lines join two eigenvectors (columns of P).
    for (int k = 0; k < 3; ++k) {
      const int a = (k + 1) % 3, b = (k + 2) % 3;
      const std::array<long, 3> line = {p[1][a] * p[2][b] - p[2][a] * p[1][b], p[2][a] * p[0][b] - p[0][a] * p[2][b],
                                        p[0][a] * p[1][b] - p[1][a] * p[0][b]};
      const SumReport rep = sum_theorem_check(F, linear_form(line));
      CHECK(rep.sum_bb == fe(9));
      CHECK(rep.sum_cs == fe(1));
      CHECK(rep.sum_gsv == fe(2));
      CHECK(rep.relation_ok);
    }
    ++checked;
  }
}

TEST_CASE("property: random line arrangements give logarithmic foliations with the expected sums") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> small(-2, 2), residue(-4, 4);
  int checked = 0;
  while (checked < 12) {
    const int l = 3 + checked % 2;
    std::vector<std::array<long, 3>> lines;
    for (int i = 0; i < l; ++i) lines.push_back({small(rng), small(rng), small(rng)});
    bool general = true;
    for (int i = 0; i < l && general; ++i)
      for (int j = i + 1; j < l && general; ++j)
        for (int k = j + 1; k < l && general; ++k) general = det3(lines[i], lines[j], lines[k]) != 0;
    if (!general) continue;
    std::vector<FieldElement> res;
    long total = 0;
    for (int i = 0; i + 1 < l; ++i) {
      long r = residue(rng);
      res.push_back(fe(r));
      total += r;
    }
    res.push_back(fe(-total));
    bool nonzero = true;
    for (const auto& r : res) nonzero = nonzero && !r.is_zero();
    if (!nonzero) continue;
    std::vector<MPoly> factors;
    for (const auto& c : lines) factors.push_back(linear_form(c));
    const ProjFoliation F = logarithmic_build({factors, res});
    CAPTURE(F.to_string());
    const int d = l - 2;
    REQUIRE(F.degree == d);
    for (const auto& f : factors) {
      const SumReport rep = sum_theorem_check(F, f);
      CHECK(rep.sum_bb == fe((d + 2) * (d + 2)));
      CHECK(rep.sum_cs == fe(1));
      CHECK(rep.sum_gsv == fe(d + 1));
      CHECK(rep.relation_ok);
    }
    ++checked;
  }
}

TEST_CASE("property: BB is additive over one blow-up") {
  for (const auto& item : corpus::plane_items()) {
    CAPTURE(item.name);
    const OneForm2 w = item.form();
    const SingularityRecord rec = classify_point2(w, {});
    if (rec.code.kind == PointClass::Regular) continue;
    ReduceOptions opts;
    opts.force_root_blowup = true;
    const ReductionTree tree = seidenberg_reduce(w, {}, opts);
    REQUIRE(tree.nodes[0].blown_up);
    const FieldElement whole = bb_index_resolved(w).value;
    FieldElement parts(0);
    {
      const TreeNode& root = tree.nodes[0];
      const int l = nu0(root.form) + (root.dicritical ? 1 : 0);
      parts = FieldElement(l * l);
      for (int c : root.children) parts += bb_over_tree(tree, c);
    }
    CHECK(whole == parts);
  }
}

TEST_CASE("property: gsv_index agrees with the contour oracle") {
  const auto near_integer = [](const oracle::Real& x, const FieldElement& exact) {
    const oracle::Real r = boost::multiprecision::round(x);
    return boost::multiprecision::abs(x - r) < oracle::Real("1e-6") && exact == fe(r.convert_to<long>());
  };
  int compared = 0;
  for (const auto& item : corpus::plane_items()) {
    CAPTURE(item.name);
    const OneForm2 w = item.form();
    const SingularityRecord rec = classify_point2(w, {});
    if (rec.code.kind == PointClass::SimpleNonDegenerate || rec.code.kind == PointClass::SaddleNode) {
      const auto S = simple_separatrices(rec);
      CHECK(near_integer(oracle::gsv(w, S), gsv_index(rec, S).value));
      ++compared;
    }
    const ReductionTree tree = seidenberg_reduce(w);
    bool dicritical = false;
    for (const auto& c : tree.components) dicritical = dicritical || c.dicritical;
    if (dicritical) continue;
    const auto S = separatrices2(w, tree).branches;
    CHECK(near_integer(oracle::gsv(w, S), gsv_index(rec, S).value));
    ++compared;
  }
  for (const auto& p : plane_singularities(log_triangle())) {
    const auto S = simple_separatrices(p.record);
    CHECK(near_integer(oracle::gsv(p.local, S), gsv_index(p.record, S).value));
    ++compared;
  }
  CHECK(compared >= 12);
}
