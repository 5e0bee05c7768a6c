#include <algorithm>
#include <functional>

#include "folab/errors.hpp"
#include "folab/indices.hpp"
#include "folab/roots.hpp"

namespace folab {

namespace {

const MPoly& tvar() {
  static const MPoly t = MPoly::variable(kVarT, 0);
  return t;
}

/// Series in t truncated to prec terms.
UPoly series(const MPoly& p, int prec) {
  UPoly s = p.as_univariate(0);
  if (static_cast<int>(s.size()) > prec) s.resize(static_cast<size_t>(prec));
  return upoly_trim(std::move(s));
}

int ord(const UPoly& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (!s[i].is_zero()) return static_cast<int>(i);
  return -1;
}

UPoly mul_trunc(const UPoly& a, const UPoly& b, int prec) {
  UPoly out = upoly_mul(a, b);
  if (static_cast<int>(out.size()) > prec) out.resize(static_cast<size_t>(prec));
  return upoly_trim(std::move(out));
}

/// f(g(t)) mod t^prec for g(0) = 0.
UPoly compose(const UPoly& f, const UPoly& g, int prec) {
  UPoly out;
  for (size_t i = f.size(); i-- > 0;) {
    out = mul_trunc(out, g, prec);
    if (out.empty()) out.resize(1);
    out[0] += f[i];
    out = upoly_trim(std::move(out));
  }
  return out;
}

/// Inverse series of s(t) = a1 t + ... mod t^prec.
UPoly revert(const UPoly& s, int prec) {
  const FieldElement a1 = s.size() > 1 ? s[1] : FieldElement(0);
  if (a1.is_zero() || (!s.empty() && !s[0].is_zero())) throw DomainError("series is not invertible");
  UPoly tau = {FieldElement(0), a1.inverse()};
  for (int k = 2; k < prec; ++k) {
    const UPoly c = compose(s, tau, k + 1);
    if (static_cast<int>(c.size()) <= k || c[static_cast<size_t>(k)].is_zero()) continue;
    tau.resize(static_cast<size_t>(k) + 1);
    tau[static_cast<size_t>(k)] -= c[static_cast<size_t>(k)] / a1;
  }
  return upoly_trim(std::move(tau));
}

UPoly add_trunc(const UPoly& a, const UPoly& b, int prec) {
  UPoly out(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  if (static_cast<int>(out.size()) > prec) out.resize(static_cast<size_t>(std::max(prec, 0)));
  return upoly_trim(std::move(out));
}

UPoly inverse_series(const UPoly& b, int prec) {
  UPoly inv(static_cast<size_t>(prec));
  const FieldElement b0inv = b[0].inverse();
  for (int k = 0; k < prec; ++k) {
    FieldElement acc = k == 0 ? FieldElement(1) : FieldElement(0);
    for (int j = 1; j <= k && j < static_cast<int>(b.size()); ++j) acc -= b[static_cast<size_t>(j)] * inv[static_cast<size_t>(k - j)];
    inv[static_cast<size_t>(k)] = acc * b0inv;
  }
  return upoly_trim(std::move(inv));
}

MPoly poly_in_t(const UPoly& s) {
  MPoly p(kVarT);
  for (size_t i = 0; i < s.size(); ++i)
    if (!s[i].is_zero()) p.add_term(Exponent{static_cast<int>(i), 0, 0, 0}, s[i]);
  return p;
}

/// v = phi(u) when over_u, else u = phi(v); phi trusted mod t^prec.
struct Graph {
  bool over_u = true;
  UPoly phi;
  int prec = 0;
};

Graph to_graph(const CurveJet& jet) {
  const int prec = std::min(jet.prec, 64);
  const UPoly g0 = series(jet.gamma[0], prec), g1 = series(jet.gamma[1], prec);
  const UPoly id = {FieldElement(0), FieldElement(1)};
  if (g0 == id) return {true, g1, prec};
  if (g1 == id) return {false, g0, prec};
  if (ord(g0) == 1) return {true, compose(g1, revert(g0, prec), prec), prec};
  if (ord(g1) == 1) return {false, compose(g0, revert(g1, prec), prec), prec};
  throw DomainError("branch is not smooth");
}

MPoly graph_equation(const Graph& g) {
  const int dep = g.over_u ? 1 : 0, free = 1 - dep;
  MPoly f = MPoly::variable(kVarsUV, dep);
  for (size_t i = 0; i < g.phi.size(); ++i) {
    Exponent e{0, 0, 0, 0};
    e[static_cast<size_t>(free)] = static_cast<int>(i);
    f.add_term(e, -g.phi[i]);
  }
  return f;
}

BranchJet graph_branch(const Graph& g, BranchRole role) {
  BranchJet b;
  const MPoly h = poly_in_t(g.phi);
  b.jet.gamma = g.over_u ? std::vector<MPoly>{tvar(), h} : std::vector<MPoly>{h, tvar()};
  b.jet.prec = g.prec;
  b.role = role;
  b.analytic = role != BranchRole::Weak;
  b.equation = graph_equation(g);
  return b;
}

struct BranchIndices {
  FieldElement cs;
  int gsv = 0;
};

/// CS = -Res a/b and GSV = ord b after straightening the branch to w = 0.
BranchIndices graph_indices(const OneForm2& w, const Graph& g) {
  OneForm2 f = g.over_u ? w : OneForm2(w.B.swapped(0, 1), w.A.swapped(0, 1), w.prec);
  const int prec = std::min(g.prec, f.prec);
  const std::vector<MPoly> gamma = {tvar(), poly_in_t(g.phi)};
  const UPoly dphi = upoly_derivative(g.phi);
  const UPoly A = series(f.A.substitute(gamma, prec), prec), B = series(f.B.substitute(gamma, prec), prec);
  if (!upoly_trim(add_trunc(A, mul_trunc(B, dphi, prec - 1), prec - 1)).empty())
    throw DomainError("branch is not invariant");
  const int m = ord(B);
  if (m < 0) throw InconclusiveError("branch lies in the singular set to order " + std::to_string(prec));
  if (2 * m > prec - 1) throw InconclusiveError("graph order " + std::to_string(prec) + " too small for the residue");
  BranchIndices out;
  out.gsv = m;
  if (m == 0) return out;
  const UPoly Av = series(f.A.derivative(1).substitute(gamma, prec), prec);
  const UPoly Bv = series(f.B.derivative(1).substitute(gamma, prec), prec);
  const UPoly a = add_trunc(Av, mul_trunc(Bv, dphi, prec - 1), prec - 1);
  const UPoly b0(B.begin() + m, B.end());
  const UPoly q = mul_trunc(a, inverse_series(b0, m), m);
  out.cs = static_cast<int>(q.size()) >= m ? -q[static_cast<size_t>(m - 1)] : FieldElement(0);
  return out;
}

int sat_mul(int a, int b) {
  const long long p = static_cast<long long>(a) * b;
  return p >= PSeries::kExact ? PSeries::kExact : static_cast<int>(p);
}

int min_order(const CurveJet& jet) {
  int o = PSeries::kExact;
  for (const auto& g : jet.gamma)
    if (!g.is_zero()) o = std::min(o, g.order());
  return o;
}

MPoly equation_of(const BranchJet& b) {
  return b.equation.is_zero() ? graph_equation(to_graph(b.jet)) : b.equation;
}

int equation_order(const BranchJet& b) {
  return b.equation.is_zero() ? to_graph(b.jet).prec : b.equation_order;
}

/// Order of p o gamma, certified below bound.
int order_along(const MPoly& p, const CurveJet& jet, int bound, const std::string& what) {
  bound = std::min(bound, jet.prec);
  const int o = ord(series(p.substitute(jet.gamma, bound), bound));
  if (o < 0) throw InconclusiveError(what + " vanishes to order " + std::to_string(bound) + " along the branch");
  return o;
}

std::optional<Graph> smooth_graph(const BranchJet& b) {
  try {
    return to_graph(b.jet);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

int graph_intersection(Graph x, Graph y) {
  if (x.over_u != y.over_u) {
    const FieldElement sx = x.phi.size() > 1 ? x.phi[1] : FieldElement(0);
    const FieldElement sy = y.phi.size() > 1 ? y.phi[1] : FieldElement(0);
    if (!(sx * sy).is_one()) return 1;
    y = {x.over_u, revert(y.phi, y.prec), y.prec};
  }
  const int prec = std::min(x.prec, y.prec);
  const int o = ord(add_trunc(x.phi, upoly_sub({}, y.phi), prec));
  if (o < 0) throw InconclusiveError("branches agree to order " + std::to_string(prec));
  return o;
}

std::string anchor_of(const SingularityRecord& p, const std::string& what) {
  const std::string at = p.path.steps.empty() ? "origin" : p.path.to_string();
  return what.empty() ? at : at + ", " + what;
}

FieldElement trace2(const Mat2& m) { return m[0][0] + m[1][1]; }
FieldElement det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

std::vector<Direction> eigen_directions(const SingularityRecord& rec) {
  if (rec.code.kind == PointClass::SaddleNode) return {rec.code.strong, rec.code.weak};
  const Mat2& m = rec.linear;
  auto lambdas = quadratic_roots(-trace2(m), det2(m), 2);
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

/// Runs f with growing graph orders until the residues are certified.
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

}  // namespace

const char* to_string(IndexKind k) {
  switch (k) {
    case IndexKind::CS: return "CS";
    case IndexKind::GSV: return "GSV";
    case IndexKind::BB: return "BB";
  }
  return "?";
}

std::string IndexValue::to_string() const {
  return std::string(folab::to_string(kind)) + "[" + anchor + "] = " + value.to_string();
}

std::vector<BranchJet> simple_separatrices(const SingularityRecord& p, int N) {
  if (p.code.kind != PointClass::SimpleNonDegenerate && p.code.kind != PointClass::SaddleNode)
    throw DomainError("simple singularity expected, got " + std::string(to_string(p.code.kind)));
  const bool sn = p.code.kind == PointClass::SaddleNode;
  std::vector<BranchJet> out;
  const auto dirs = eigen_directions(p);
  for (size_t k = 0; k < dirs.size(); ++k) {
    auto jet = invariant_graph(p.form, dirs[k], N);
    if (!jet) throw InconclusiveError("no invariant graph along " + direction_string(dirs[k]));
    const BranchRole role = !sn ? BranchRole::Ordinary : (k == 0 ? BranchRole::Strong : BranchRole::Weak);
    out.push_back(graph_branch(to_graph(*jet), role));
    out.back().leaf = p.path;
  }
  return out;
}

std::vector<BranchJet> curve_branches(const MPoly& f, int N) {
  if (f.is_zero()) throw DomainError("zero curve");
  if (!f.constant_term().is_zero()) return {};
  const int m = f.order();
  const MPoly fm = f.homogeneous_part(m);
  UPoly q(static_cast<size_t>(m) + 1);
  for (const auto& [e, c] : fm.terms()) q[static_cast<size_t>(e[1])] = c;
  q = upoly_trim(std::move(q));
  const int k = upoly_degree(q);
  if (m - k > 1 || upoly_degree(upoly_gcd(q, upoly_derivative(q))) > 0)
    throw DomainError("curve has a non-ordinary singular point (repeated tangent)");
  std::vector<std::pair<bool, FieldElement>> dirs;
  if (k > 0)
    for (const auto& c : distinct_roots(q, 2)) dirs.emplace_back(true, c);
  if (m - k == 1) dirs.emplace_back(false, FieldElement(0));

  std::vector<BranchJet> out;
  for (const auto& [over_u, slope] : dirs) {
    auto residual = [&](const MPoly& h, int n) {
      const std::vector<MPoly> gamma = over_u ? std::vector<MPoly>{tvar(), h} : std::vector<MPoly>{h, tvar()};
      return f.substitute(gamma, n + 1).coeff(Exponent{n, 0, 0, 0});
    };
    MPoly h = tvar().scaled(slope);
    for (int j = 2; j <= N; ++j) {
      const MPoly tj = MPoly::monomial(kVarT, Exponent{j, 0, 0, 0}, FieldElement(1));
      const FieldElement r0 = residual(h, m + j - 1), r1 = residual(h + tj, m + j - 1);
      if (r1 == r0) throw Error("curve branch: tangent is not simple");
      h += tj.scaled(-r0 / (r1 - r0));
    }
    Graph g{over_u, series(h, N + 1), N + 1};
    out.push_back(graph_branch(g, BranchRole::Ordinary));
  }
  return out;
}

IndexValue bb_index(const SingularityRecord& p) {
  const FieldElement det = det2(p.linear);
  if (det.is_zero()) throw DomainError("degenerate linear part: BB needs the resolved route");
  const FieldElement tr = trace2(p.linear);
  return {IndexKind::BB, tr * tr / det, anchor_of(p, "")};
}

IndexValue cs_index(const SingularityRecord& p, const BranchJet& branch) {
  const BranchIndices r = graph_indices(p.form, to_graph(branch.jet));
  return {IndexKind::CS, r.cs, anchor_of(p, "branch " + std::string(to_string(branch.role)))};
}

IndexValue cs_index(const SingularityRecord& p, const std::vector<BranchJet>& branches) {
  FieldElement total;
  std::vector<Graph> graphs;
  for (const auto& b : branches) graphs.push_back(to_graph(b.jet));
  for (size_t i = 0; i < graphs.size(); ++i) {
    total += graph_indices(p.form, graphs[i]).cs;
    for (size_t j = 0; j < i; ++j) total += FieldElement(2 * graph_intersection(graphs[i], graphs[j]));
  }
  return {IndexKind::CS, total, anchor_of(p, std::to_string(branches.size()) + " branches")};
}

int intersection_number(const BranchJet& a, const BranchJet& b) {
  auto ga = smooth_graph(a), gb = smooth_graph(b);
  if (ga && gb) return graph_intersection(*ga, *gb);
  const MPoly f = equation_of(b);
  return order_along(f, a.jet, sat_mul(equation_order(b), min_order(a.jet)), "branch equation");
}

IndexValue gsv_index(const SingularityRecord& p, const std::vector<BranchJet>& branches) {
  const OneForm2& w = p.form;
  int total = 0;
  for (size_t i = 0; i < branches.size(); ++i) {
    const BranchJet& b = branches[i];
    const MPoly f = equation_of(b);
    const int om = min_order(b.jet);
    const int wbound = sat_mul(w.prec, om);
    const int fbound = sat_mul(equation_order(b) - 1, om);
    const MPoly flow = MPoly::mul_truncated(w.A.substitute(b.jet.gamma, wbound), b.jet.gamma[0].derivative(0), wbound) +
                       MPoly::mul_truncated(w.B.substitute(b.jet.gamma, wbound), b.jet.gamma[1].derivative(0), wbound);
    if (ord(series(flow, std::min(b.jet.prec - 1, wbound))) >= 0) throw DomainError("branch is not invariant");
    int best = -1, gsv = 0;
    for (int coord : {1, 0}) {
      const int fo = ord(series(f.derivative(coord).substitute(b.jet.gamma, fbound), std::min(fbound, b.jet.prec)));
      if (fo < 0 || (best >= 0 && fo >= best)) continue;
      best = fo;
      gsv = order_along(coord == 1 ? w.B : w.A, b.jet, wbound, "form coefficient") - fo;
    }
    if (best < 0) throw InconclusiveError("branch equation is degenerate along its branch");
    total += gsv;
    for (size_t j = 0; j < i; ++j) total -= 2 * intersection_number(b, branches[j]);
  }
  return {IndexKind::GSV, FieldElement(total), anchor_of(p, std::to_string(branches.size()) + " branches")};
}

IndexValue bb_index_resolved(const OneForm2& w, const ReduceOptions& opts) {
  const SingularityRecord rec = classify_point2(w, {}, opts.jet_order);
  if (rec.code.kind == PointClass::Regular) throw DomainError("regular point has no Baum-Bott index");

  std::function<FieldElement(const SingularityRecord&)> leaf_bb = [&](const SingularityRecord& r) -> FieldElement {
    if (!det2(r.linear).is_zero()) return bb_index(r).value;
    if (r.code.kind != PointClass::SaddleNode) throw DomainError("degenerate leaf is not a saddle-node");
    return with_growing_order([&](int N) {
      const auto S = simple_separatrices(r, N);
      return cs_index(r, S).value + gsv_index(r, S).value * FieldElement(2);
    });
  };
  if (!det2(rec.linear).is_zero()) return {IndexKind::BB, leaf_bb(rec), "origin, tr^2/det"};
  if (rec.code.kind == PointClass::SaddleNode) return {IndexKind::BB, leaf_bb(rec), "origin, CS + 2 GSV"};

  const ReductionTree tree = seidenberg_reduce(w, {}, opts);
  std::function<FieldElement(int)> node_bb = [&](int id) -> FieldElement {
    const TreeNode& n = tree.nodes[static_cast<size_t>(id)];
    if (n.blown_up) {
      const int l = nu0(n.form) + (n.dicritical ? 1 : 0);
      FieldElement sum(l * l);
      for (int c : n.children) sum += node_bb(c);
      return sum;
    }
    if (n.record >= 0) return leaf_bb(tree.leaves[static_cast<size_t>(n.record)]);
    return FieldElement(0);
  };
  return {IndexKind::BB, node_bb(0), "origin, resolution with " + std::to_string(tree.blowups) + " blow-ups"};
}

}  // namespace folab
