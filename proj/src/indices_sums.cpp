#include <future>

#include "folab/errors.hpp"
#include "folab/indices.hpp"

namespace folab {

namespace {

bool squarefree(const MPoly& f) {
  MPoly g = f;
  for (int k = 0; k < f.nvars() && !g.is_constant(); ++k) g = MPoly::gcd(g, f.derivative(k));
  return g.is_constant();
}

bool homogeneous_nonconstant(const MPoly& f) {
  const int e = f.total_degree();
  if (e <= 0) return false;
  for (const auto& [x, c] : f.terms())
    if (total_degree(x) != e) return false;
  return true;
}

template <class F>
auto with_growing_order(F f) {
  for (int N : {12, 24, 48}) {
    try {
      return f(N);
    } catch (const InconclusiveError&) {
      if (N == 48) throw;
    }
  }
  throw InconclusiveError("unreachable");
}

/// Sign of a real element a + b rt(m) (m > 0); nullopt when not real or
/// when a parameter is present.
std::optional<int> real_sign(const FieldElement& x) {
  if (x.descriptor().has_param() || !x.is_constant()) return std::nullopt;
  const Rational a = x.rational_part().constant_value();
  const Rational b = x.irrational_part().constant_value();
  if (b == 0) return sgn(a);
  const long m = x.descriptor().sqrt_of;
  if (m < 0) return std::nullopt;
  const int sa = sgn(a), sb = sgn(b);
  if (sa == 0 || sa == sb) return sb;
  // a and b rt(m) have opposite signs: compare a^2 with m b^2.
  const Rational diff = a * a - Rational(m) * b * b;
  return sgn(diff) > 0 ? sa : sb;
}

PointIndices point_indices(const PlanePoint& p, const MPoly& C) {
  PointIndices out;
  out.point = p.label();
  out.kind = p.record.code.kind;
  out.multiplicity = p.multiplicity;
  const IndexValue bb = bb_index_resolved(p.local);
  out.bb = bb.value;
  out.bb_route = bb.anchor.substr(bb.anchor.find(", ") + 2);
  const MPoly f = localize(C, p);
  out.on_curve = f.constant_term().is_zero();
  if (out.on_curve) {
    with_growing_order([&](int N) {
      const auto branches = curve_branches(f, N);
      out.cs_curve = cs_index(p.record, branches).value;
      out.gsv_curve = gsv_index(p.record, branches).value;
      return 0;
    });
  }
  if (p.simple()) {
    try {
      with_growing_order([&](int N) {
        const auto S = simple_separatrices(p.record, N);
        out.cs_total = cs_index(p.record, S).value;
        out.gsv_total = gsv_index(p.record, S).value;
        return 0;
      });
      out.relation = out.bb == *out.cs_total + *out.gsv_total * FieldElement(2);
    } catch (const FieldExtensionError&) {
      // Separatrix directions outside the tower: the relation is not evaluated.
      out.cs_total.reset();
      out.gsv_total.reset();
    }
  }
  return out;
}

}  // namespace

const char* to_string(LogVerdict v) {
  switch (v) {
    case LogVerdict::Logarithmic: return "logarithmic";
    case LogVerdict::NotLogarithmic: return "not-logarithmic";
    case LogVerdict::Undetermined: return "undetermined";
  }
  return "?";
}

SumReport sum_theorem_check(const ProjFoliation& F, const MPoly& C, int max_field_degree) {
  if (F.dimension() != 2) throw DomainError("plane foliation expected");
  if (C.vars() != F.vars() || !homogeneous_nonconstant(C)) throw DomainError("curve must be homogeneous in X, Y, Z");
  if (!squarefree(C)) throw DomainError("curve equation is not reduced");
  if (!invariant_hypersurface(F, C)) throw DomainError("curve is not invariant");

  SumReport rep;
  rep.d = F.degree;
  rep.d0 = C.total_degree();
  const auto points = plane_singularities(F, max_field_degree);
  std::vector<std::future<PointIndices>> jobs;
  for (const auto& p : points) jobs.push_back(std::async(std::launch::async, [&p, &C] { return point_indices(p, C); }));
  for (auto& j : jobs) rep.points.push_back(j.get());

  for (const auto& p : rep.points) {
    rep.sum_bb += p.bb;
    if (p.cs_curve) rep.sum_cs += *p.cs_curve;
    if (p.gsv_curve) rep.sum_gsv += *p.gsv_curve;
    if (p.relation && !*p.relation) rep.relation_ok = false;
  }
  const int d = rep.d, d0 = rep.d0;
  rep.cs_ok = rep.sum_cs == FieldElement(d0 * d0);
  rep.gsv_ok = rep.sum_gsv == FieldElement((d + 2) * d0 - d0 * d0);
  rep.bb_ok = rep.sum_bb == FieldElement((d + 2) * (d + 2));
  return rep;
}

CriterionReport logarithmic_criterion(const ProjFoliation& F, const MPoly& S, const Matrix& H,
                                      const CriterionHypotheses& hyp, int max_field_degree) {
  if (F.dimension() != 3) throw DomainError("foliation of P^3 expected");
  if (S.vars() != F.vars() || !homogeneous_nonconstant(S)) throw DomainError("S must be homogeneous in X, Y, Z, W");
  if (!squarefree(S)) throw DomainError("S is not reduced");
  if (!invariant_hypersurface(F, S)) throw DomainError("S is not invariant");

  const ProjFoliation G = restrict_to_plane(F, H);
  if (G.degree != F.degree) throw DomainError("plane section is not generically transversal (degree drops)");
  std::vector<MPoly> images;
  for (const auto& row : H) {
    MPoly l(kVarsP2);
    for (int k = 0; k < 3; ++k) l += MPoly::variable(kVarsP2, k).scaled(row[static_cast<size_t>(k)]);
    images.push_back(l);
  }
  const MPoly C = S.substitute(images);
  if (C.is_zero()) throw DomainError("plane section lies in S");
  if (C.total_degree() != S.total_degree() || !squarefree(C))
    throw DomainError("plane section is not transversal to S");

  CriterionReport rep;
  rep.hypotheses = hyp;
  rep.d = F.degree;
  rep.d0 = S.total_degree();
  const int gap = rep.d0 - (rep.d + 2);
  rep.slack = Integer(gap) * gap;
  rep.section = sum_theorem_check(G, C, max_field_degree);
  bool all_real = true, nonpositive = true;
  for (const auto& p : rep.section.points) {
    if (p.on_curve) {
      rep.bb_on_S += p.bb;
      continue;
    }
    rep.bb_off_S += p.bb;
    const auto s = real_sign(p.bb);
    if (!s) all_real = false;
    else if (*s > 0) nonpositive = false;
  }
  if (all_real) rep.bb_off_S_nonpositive = nonpositive;
  rep.expected_bb_on_S = FieldElement(2 * (rep.d + 2) * rep.d0 - rep.d0 * rep.d0);
  rep.sums_consistent = rep.section.cs_ok && rep.section.gsv_ok && rep.section.bb_ok;

  if (!rep.sums_consistent) {
    rep.verdict = LogVerdict::Undetermined;
    rep.note = "index sums of the section disagree with the sum formulas";
  } else if (gap != 0) {
    rep.verdict = LogVerdict::NotLogarithmic;
    rep.note = "d0 != d + 2, slack (d0 - (d + 2))^2 = " + rep.slack.get_str();
  } else if (!hyp.separatrices_in_S || !hyp.first_integrals_off_S) {
    rep.verdict = LogVerdict::Undetermined;
    rep.note = "d0 = d + 2, but hypotheses (i)/(ii) were not declared";
  } else if (rep.bb_on_S != rep.expected_bb_on_S) {
    rep.verdict = LogVerdict::Undetermined;
    rep.note = "BB over S is " + rep.bb_on_S.to_string() + ", expected " + rep.expected_bb_on_S.to_string() +
               " under hypothesis (i)";
  } else {
    rep.verdict = LogVerdict::Logarithmic;
    rep.note = "d0 = d + 2 and the index sums are consistent";
  }
  return rep;
}

}  // namespace folab
