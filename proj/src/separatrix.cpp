#include "folab/separatrix.hpp"

#include <algorithm>

#include "folab/linalg.hpp"
#include "folab/roots.hpp"

namespace folab {

namespace {

constexpr int kInfinite = PSeries::kExact;

int jet_order(const MPoly& p, int prec) {
  for (const auto& [e, c] : p.terms())
    if (e[0] < prec) return e[0];  // terms are ordered by exponent
  return kInfinite;
}

std::vector<Direction> eigen_directions(const SingularityRecord& rec) {
  if (rec.code.kind == PointClass::SaddleNode) return {rec.code.strong, rec.code.weak};
  const Mat2& m = rec.linear;
  const FieldElement tr = m[0][0] + m[1][1];
  const FieldElement det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  auto lambdas = quadratic_roots(-tr, det, 2);
  if (!lambdas || lambdas->size() != 2) throw FieldExtensionError("eigenvalues outside the coefficient tower");
  std::vector<Direction> out;
  for (const auto& l : *lambdas) {
    Mat2 shifted = m;
    shifted[0][0] -= l;
    shifted[1][1] -= l;
    out.push_back(kernel_direction(shifted));
  }
  return out;
}

CurveJet blow_down(const ReductionTree& tree, int node, CurveJet jet) {
  while (node > 0) {
    const TreeNode& n = tree.nodes[static_cast<size_t>(node)];
    std::vector<MPoly> up;
    for (const auto& p : n.to_parent) up.push_back(p.substitute(jet.gamma, jet.prec));
    jet.gamma = std::move(up);
    node = n.parent;
  }
  return jet;
}

std::optional<CurveJet> trace(const ReductionTree& tree, const SingularityRecord& rec, const Direction& d, int prec) {
  auto local = invariant_graph(rec.form, d, prec - 1);
  if (!local) return std::nullopt;
  return blow_down(tree, rec.node, *local);
}

}  // namespace

const char* to_string(BranchRole r) {
  switch (r) {
    case BranchRole::Ordinary: return "ordinary";
    case BranchRole::Strong: return "strong";
    case BranchRole::Weak: return "weak";
  }
  return "?";
}

int implicit_precision(int o1, int o2, int N) {
  if (o1 >= kInfinite && o2 >= kInfinite) throw DomainError("branch parametrization vanishes to its precision");
  if (o1 >= kInfinite || o2 >= kInfinite) return N + 2;
  return (N + 1) * std::max(o1, o2) + o1 + o2;
}

MPoly implicit_equation(const CurveJet& gamma, int N) {
  const int K = gamma.prec;
  if (K >= kInfinite) throw DomainError("implicit_equation needs a finite precision");
  const int a = jet_order(gamma.gamma[0], K), b = jet_order(gamma.gamma[1], K);
  if (a >= kInfinite && b >= kInfinite) throw DomainError("branch parametrization vanishes to its precision");
  // Monic in the variable whose axis meets the branch with the smaller order.
  const int mv = a <= b ? 1 : 0;  // monic variable
  const int ov = 1 - mv;
  const int d = std::min(a, b);
  const MPoly& gm = gamma.gamma[static_cast<size_t>(mv)];
  const MPoly& go = gamma.gamma[static_cast<size_t>(ov)];
  const int jmax = (K - 1) / d;

  std::vector<MPoly> pm(static_cast<size_t>(d + 1)), po(static_cast<size_t>(jmax + 1));
  pm[0] = po[0] = MPoly::constant(kVarT, FieldElement(1));
  for (int i = 1; i <= d; ++i) pm[static_cast<size_t>(i)] = MPoly::mul_truncated(pm[static_cast<size_t>(i - 1)], gm, K);
  for (int j = 1; j <= jmax; ++j) po[static_cast<size_t>(j)] = MPoly::mul_truncated(po[static_cast<size_t>(j - 1)], go, K);

  std::vector<std::pair<int, int>> unknowns;  // (power of monic var i < d, power of other var j)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= jmax; ++j) unknowns.emplace_back(i, j);
  Matrix rows(static_cast<size_t>(K), Vector(unknowns.size()));
  Vector rhs(static_cast<size_t>(K));
  for (size_t col = 0; col < unknowns.size(); ++col) {
    auto [i, j] = unknowns[col];
    MPoly prod = MPoly::mul_truncated(pm[static_cast<size_t>(i)], po[static_cast<size_t>(j)], K);
    for (const auto& [e, c] : prod.terms()) rows[static_cast<size_t>(e[0])][col] = c;
  }
  for (const auto& [e, c] : pm[static_cast<size_t>(d)].terms()) rhs[static_cast<size_t>(e[0])] = -c;
  auto sol = solve(rows, rhs, static_cast<int>(unknowns.size()));
  if (!sol) throw InconclusiveError("implicit equation not determined at precision " + std::to_string(K));

  auto mono = [&](int i, int j) {
    Exponent e{};
    e[static_cast<size_t>(mv)] = i;
    e[static_cast<size_t>(ov)] = j;
    return e;
  };
  MPoly f = MPoly::monomial(kVarsUV, mono(d, 0), FieldElement(1));
  for (size_t col = 0; col < unknowns.size(); ++col)
    if (!(*sol)[col].is_zero()) f.add_term(mono(unknowns[col].first, unknowns[col].second), (*sol)[col]);
  return f.truncated(N);
}

SeparatrixSet separatrices2(const OneForm2& w, const ReductionTree& tree, int N) {
  std::string dicritical;
  for (const auto& c : tree.components)
    if (c.dicritical) dicritical += (dicritical.empty() ? "E" : ", E") + std::to_string(c.id);
  if (!dicritical.empty()) throw DomainError("dicritical reduction, components: " + dicritical);
  (void)w;

  SeparatrixSet out;
  out.order = N;
  for (const auto& rec : tree.leaves) {
    std::vector<Direction> dirs = eigen_directions(rec);
    for (size_t k = 0; k < dirs.size(); ++k) {
      bool in_divisor = false;
      for (const auto& b : rec.divisor.branches)
        if (b.component >= 0 && same_direction(tangent_direction(b.eq), dirs[k])) in_divisor = true;
      if (in_divisor) continue;

      auto first = trace(tree, rec, dirs[k], N + 2);
      if (!first) throw InconclusiveError("separatrix direction is not invariant at " + rec.path.to_string());
      const int need = implicit_precision(jet_order(first->gamma[0], first->prec),
                                          jet_order(first->gamma[1], first->prec), N);
      CurveJet jet = need > first->prec ? *trace(tree, rec, dirs[k], need) : *first;

      BranchJet b;
      b.jet = jet;
      b.leaf = rec.path;
      if (rec.code.kind == PointClass::SaddleNode) {
        b.role = k == 0 ? BranchRole::Strong : BranchRole::Weak;
        b.analytic = k == 0;
      }
      b.equation = implicit_equation(jet, N);
      b.equation_order = N;
      out.branches.push_back(std::move(b));
    }
  }
  for (size_t i = 0; i < out.branches.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (out.branches[i].equation == out.branches[j].equation)
        throw InconclusiveError("order " + std::to_string(N) + " too small to separate branches");
  out.g = MPoly::constant(kVarsUV, FieldElement(1));
  for (const auto& b : out.branches) out.g = MPoly::mul_truncated(out.g, b.equation, N);
  return out;
}

SeparatrixSet separatrices2(const OneForm2& w, int N) { return separatrices2(w, seidenberg_reduce(w), N); }

BranchJet weak_separatrix_jet(const OneForm2& w, int N) {
  SingularityRecord rec = classify_point2(w, {}, N);
  if (rec.code.kind != PointClass::SaddleNode) throw DomainError("not a saddle-node");
  auto jet = invariant_graph(w, rec.code.weak, N);
  if (!jet) throw InconclusiveError("weak separatrix not found");
  BranchJet b;
  b.jet = *jet;
  b.analytic = false;
  b.role = BranchRole::Weak;
  b.equation = implicit_equation(*jet, N);
  b.equation_order = N;
  return b;
}

MultiplicityReport multiplicity_identity_check(const OneForm2& w, const LocalDivisor& E, int N) {
  MultiplicityReport r;
  SeparatrixSet sep = separatrices2(w, seidenberg_reduce(w, E), N);
  r.nu_form = nu0(w);
  r.nu_dg = nu0(exact_form2(sep.g));
  r.equal = r.nu_form == r.nu_dg;
  return r;
}

}  // namespace folab
