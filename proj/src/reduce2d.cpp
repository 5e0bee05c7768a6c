#include "folab/reduce2d.hpp"

#include <algorithm>
#include <functional>

#include "folab/roots.hpp"

namespace folab {

namespace {

Direction normalized(Direction d) {
  if (!d[0].is_zero()) {
    FieldElement inv = d[0].inverse();
    return {FieldElement(1), d[1] * inv};
  }
  return {FieldElement(0), FieldElement(1)};
}

FieldElement grad_at_origin(const MPoly& f, int var) { return f.coeff(Exponent{var == 0, var == 1, 0, 0}); }

int exceptional_count(const LocalDivisor& d) {
  int n = 0;
  for (const auto& b : d.branches)
    if (b.component >= 0) ++n;
  return n;
}

MPoly relabel(const MPoly& p) { return p.with_vars(kVarsUV); }

LocalDivisor relabel(LocalDivisor d, bool swap) {
  for (auto& b : d.branches) b.eq = relabel(swap ? b.eq.swapped(0, 1) : b.eq);
  return d;
}

UPoly restrict_to_exceptional(const MPoly& p) {
  return upoly_trim(p.evaluate_var(0, FieldElement(0)).as_univariate(1));
}

}  // namespace

const char* to_string(LinearCode c) {
  switch (c) {
    case LinearCode::SimpleNonDegenerate: return "SimpleNonDegenerate";
    case LinearCode::SaddleNodeCandidate: return "SaddleNodeCandidate";
    case LinearCode::NonSimple: return "NonSimple";
  }
  return "?";
}

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::Regular: return "Regular";
    case PointClass::SimpleNonDegenerate: return "SimpleNonDegenerate";
    case PointClass::SaddleNode: return "SaddleNode";
    case PointClass::NonSimple: return "NonSimple";
  }
  return "?";
}

const char* to_string(Adapted a) {
  switch (a) {
    case Adapted::ERegular: return "E-regular";
    case Adapted::ESimple: return "E-simple";
    case Adapted::Unadapted: return "unadapted";
  }
  return "?";
}

std::string direction_string(const Direction& d) { return "[" + d[0].to_string() + ":" + d[1].to_string() + "]"; }

bool same_direction(const Direction& a, const Direction& b) { return (a[0] * b[1] - a[1] * b[0]).is_zero(); }

Direction tangent_direction(const MPoly& f) { return normalized({grad_at_origin(f, 1), -grad_at_origin(f, 0)}); }

Direction kernel_direction(const Mat2& n) {
  for (const auto& row : n)
    if (!row[0].is_zero() || !row[1].is_zero()) return normalized({-row[1], row[0]});
  return {FieldElement(1), FieldElement(0)};
}

std::string ClassCode::to_string() const {
  std::string s = folab::to_string(kind);
  if (kind == PointClass::SaddleNode) s += "(strong=" + direction_string(strong) + ", weak=" + direction_string(weak) + ")";
  return s + "/" + folab::to_string(adapted);
}

LinearCode classify_linear2(const Mat2& m) {
  const FieldElement tr = m[0][0] + m[1][1];
  const FieldElement det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  switch (ratio_in_positive_rationals(tr, det)) {
    case RatioVerdict::Yes:
    case RatioVerdict::Nilpotent: return LinearCode::NonSimple;
    case RatioVerdict::ZeroEigenvalue: return LinearCode::SaddleNodeCandidate;
    case RatioVerdict::No: break;
  }
  return LinearCode::SimpleNonDegenerate;
}

std::optional<CurveJet> invariant_graph(const OneForm2& w, const Direction& dir, int order) {
  const bool over_u = !dir[0].is_zero();
  const FieldElement slope = over_u ? dir[1] / dir[0] : dir[0] / dir[1];
  order = std::min(order, w.prec - 1);
  const MPoly t = MPoly::variable(kVarT, 0);
  MPoly h = t.scaled(slope);
  auto residual_coeff = [&](const MPoly& graph, int k) {
    std::vector<MPoly> gamma = over_u ? std::vector<MPoly>{t, graph} : std::vector<MPoly>{graph, t};
    MPoly r = MPoly::mul_truncated(w.A.substitute(gamma, k + 1), gamma[0].derivative(0), k + 1) +
              MPoly::mul_truncated(w.B.substitute(gamma, k + 1), gamma[1].derivative(0), k + 1);
    return r.coeff(Exponent{k, 0, 0, 0});
  };
  if (!residual_coeff(h, 0).is_zero() || !residual_coeff(h, 1).is_zero()) return std::nullopt;
  for (int k = 2; k <= order; ++k) {
    MPoly tk = MPoly::monomial(kVarT, Exponent{k, 0, 0, 0}, FieldElement(1));
    const FieldElement r0 = residual_coeff(h, k);
    const FieldElement r1 = residual_coeff(h + tk, k);
    if (r1 == r0) {
      if (!r0.is_zero()) return std::nullopt;
      continue;
    }
    h += tk.scaled(-r0 / (r1 - r0));
  }
  CurveJet jet;
  jet.gamma = over_u ? std::vector<MPoly>{t, h} : std::vector<MPoly>{h, t};
  jet.prec = order + 1;
  return jet;
}

SingularityRecord classify_point2(const OneForm2& w, const LocalDivisor& E, int jet_order) {
  SingularityRecord rec;
  rec.form = w;
  rec.divisor = branches_at_origin(E);
  rec.linear = linear_part(w);
  const auto& branches = rec.divisor.branches;
  const FieldElement a0 = w.A.constant_term(), b0 = w.B.constant_term();

  if (!a0.is_zero() || !b0.is_zero()) {
    rec.code.kind = PointClass::Regular;
    int invariant = 0, transversal = 0;
    bool tangent = false;
    for (const auto& b : branches) {
      if (invariant_curve_implicit(w, b.eq))
        ++invariant;
      else if (!(grad_at_origin(b.eq, 0) * b0 - grad_at_origin(b.eq, 1) * a0).is_zero())
        ++transversal;
      else
        tangent = true;
    }
    rec.code.adapted = (!tangent && invariant <= 1 && transversal <= 1) ? Adapted::ERegular : Adapted::Unadapted;
    return rec;
  }

  bool all_invariant = branches.size() <= 2;
  for (const auto& b : branches)
    if (!invariant_curve_implicit(w, b.eq)) all_invariant = false;

  switch (classify_linear2(rec.linear)) {
    case LinearCode::NonSimple:
      rec.code.kind = PointClass::NonSimple;
      rec.code.adapted = Adapted::Unadapted;
      return rec;
    case LinearCode::SimpleNonDegenerate:
      rec.code.kind = PointClass::SimpleNonDegenerate;
      break;
    case LinearCode::SaddleNodeCandidate: {
      rec.code.kind = PointClass::SaddleNode;
      const Mat2& m = rec.linear;
      const FieldElement tr = m[0][0] + m[1][1];
      rec.code.weak = kernel_direction(m);
      Mat2 shifted = m;
      shifted[0][0] -= tr;
      shifted[1][1] -= tr;
      rec.code.strong = kernel_direction(shifted);
      if (!invariant_graph(w, rec.code.weak, jet_order))
        throw InconclusiveError("saddle-node weak separatrix not confirmed at jet order " + std::to_string(jet_order));
      for (const auto& b : branches)
        if (same_direction(tangent_direction(b.eq), rec.code.weak) && invariant_curve_implicit(w, b.eq))
          rec.well_oriented = false;
      break;
    }
  }
  rec.code.adapted = all_invariant ? Adapted::ESimple : Adapted::Unadapted;
  return rec;
}

ReductionTree seidenberg_reduce(const OneForm2& w, const LocalDivisor& E, const ReduceOptions& opts) {
  ReductionTree tree;
  {
    TreeNode root;
    root.form = OneForm2(relabel(w.A), relabel(w.B), w.prec);
    root.divisor = relabel(branches_at_origin(E), false);
    for (auto& b : root.divisor.branches) b.component = -1;  // ids of another tree are meaningless here
    root.to_parent = {MPoly::variable(kVarsUV, 0), MPoly::variable(kVarsUV, 1)};
    tree.nodes.push_back(std::move(root));
  }
  const MPoly u = MPoly::variable(kVarsUV, 0), v = MPoly::variable(kVarsUV, 1);

  for (size_t id = 0; id < tree.nodes.size(); ++id) {
    const TreeNode node = tree.nodes[id];
    const bool force = opts.force_root_blowup && id == 0;
    SingularityRecord rec = classify_point2(node.form, node.divisor, opts.jet_order);
    if (!force && rec.code.adapted != Adapted::Unadapted) {
      if (rec.code.kind != PointClass::Regular) {
        rec.path = node.path;
        rec.node = static_cast<int>(id);
        tree.nodes[id].record = static_cast<int>(tree.leaves.size());
        tree.leaves.push_back(std::move(rec));
      }
      continue;
    }
    if (node.depth >= opts.max_depth)
      throw ReductionDepthError("reduction depth " + std::to_string(opts.max_depth) + " exhausted at " +
                                    node.path.to_string(),
                                tree);

    auto charts = blowup_point2(node.form, node.divisor, true);
    const int comp = static_cast<int>(tree.components.size());
    const bool dic = charts[0].dicritical;
    tree.components.push_back({comp, static_cast<int>(id), dic, -1});
    std::vector<int> through;
    for (const auto& b : node.divisor.branches)
      if (b.component >= 0) through.push_back(b.component);
    for (int s : through) tree.components[static_cast<size_t>(s)].self_intersection -= 1;
    if (through.size() == 2) {
      auto edge = std::minmax(through[0], through[1]);
      std::erase(tree.edges, std::pair<int, int>(edge.first, edge.second));
    }
    for (int s : through) tree.edges.emplace_back(std::min(s, comp), std::max(s, comp));
    for (auto& c : charts) c.divisor.branches.back().component = comp;
    tree.blowups++;
    {
      TreeNode& n = tree.nodes[id];
      n.blown_up = true;
      n.component = comp;
      n.dicritical = dic;
    }

    auto add_child = [&](OneForm2 f, LocalDivisor d, std::array<MPoly, 2> to_parent, ChartStep step) {
      TreeNode child;
      child.id = static_cast<int>(tree.nodes.size());
      child.parent = static_cast<int>(id);
      child.depth = node.depth + 1;
      child.path = node.path;
      child.path.steps.push_back(std::move(step));
      child.form = std::move(f);
      child.divisor = std::move(d);
      child.to_parent = std::move(to_parent);
      tree.nodes[id].children.push_back(child.id);
      tree.nodes.push_back(std::move(child));
    };

    // Chart (u, t): singular or tangency points on {u = 0}, plus the traces of
    // the other divisor branches.
    const BlowupChart2& cu = charts[0];
    std::vector<FieldElement> pts;
    UPoly q = restrict_to_exceptional(dic ? cu.form.B : cu.form.A);
    if (q.empty()) throw Error("reduction: exceptional line is not isolated in the chart");
    pts = distinct_roots(q, opts.max_field_degree);
    for (size_t i = 0; i + 1 < cu.divisor.branches.size(); ++i) {
      UPoly r = restrict_to_exceptional(cu.divisor.branches[i].eq);
      if (upoly_degree(r) <= 0) continue;
      for (const auto& c : distinct_roots(r, opts.max_field_degree)) pts.push_back(c);
    }
    std::sort(pts.begin(), pts.end(), [](const FieldElement& a, const FieldElement& b) { return a.compare(b) < 0; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (const auto& c : pts) {
      OneForm2 f = translate2(cu.form, 1, c);
      LocalDivisor d = branches_at_origin(translate_divisor(cu.divisor, 1, c));
      add_child(OneForm2(relabel(f.A), relabel(f.B), f.prec), relabel(d, false),
                {u, u * (v + MPoly::constant(kVarsUV, c))}, {"u", {FieldElement(0), c}});
    }

    // Chart (s, v) at its origin, with the exceptional coordinate moved first.
    const BlowupChart2& cv = charts[1];
    add_child(OneForm2(relabel(cv.form.B.swapped(0, 1)), relabel(cv.form.A.swapped(0, 1)), cv.form.prec),
              relabel(branches_at_origin(cv.divisor), true), {u * v, u}, {"v", {FieldElement(0), FieldElement(0)}});
  }
  return tree;
}

SecondTypeResult is_second_type2(const OneForm2& w, const LocalDivisor& E, const ReduceOptions& opts) {
  SecondTypeResult out;
  for (const auto& rec : seidenberg_reduce(w, E, opts).leaves)
    if (!rec.well_oriented) out.witnesses.push_back(rec);
  out.value = out.witnesses.empty();
  return out;
}

bool is_generalized_curve2(const OneForm2& w, const ReduceOptions& opts) {
  for (const auto& rec : seidenberg_reduce(w, {}, opts).leaves)
    if (rec.code.kind == PointClass::SaddleNode) return false;
  return true;
}

DualGraph dual_graph(const ReductionTree& tree) {
  DualGraph g;
  for (const auto& c : tree.components) g.vertices.push_back({c.id, c.self_intersection, c.dicritical});
  g.edges = tree.edges;
  std::sort(g.edges.begin(), g.edges.end());
  for (const auto& rec : tree.leaves) {
    bool attached = false;
    for (const auto& b : rec.divisor.branches)
      if (b.component >= 0) {
        g.half_edges.push_back({b.component, rec.code.to_string()});
        attached = true;
      }
    if (!attached) g.half_edges.push_back({-1, rec.code.to_string()});
  }
  return g;
}

std::string DualGraph::to_dot() const {
  std::string out = "graph dual {\n";
  for (const auto& v : vertices)
    out += "  E" + std::to_string(v.component) + " [label=\"E" + std::to_string(v.component) + " (" +
           std::to_string(v.self_intersection) + ")" + (v.dicritical ? " dicritical" : "") + "\"];\n";
  for (const auto& [a, b] : edges) out += "  E" + std::to_string(a) + " -- E" + std::to_string(b) + ";\n";
  for (size_t i = 0; i < half_edges.size(); ++i) {
    const std::string leaf = "p" + std::to_string(i);
    out += "  " + leaf + " [shape=point];\n";
    if (half_edges[i].component >= 0)
      out += "  E" + std::to_string(half_edges[i].component) + " -- " + leaf + " [label=\"" + half_edges[i].decoration +
             "\"];\n";
  }
  return out + "}\n";
}

std::string canonical_tree(const ReductionTree& tree) {
  std::function<std::string(int)> rec = [&](int id) -> std::string {
    const TreeNode& n = tree.nodes[static_cast<size_t>(id)];
    if (n.blown_up) {
      std::vector<std::string> kids;
      for (int c : n.children) {
        std::string s = rec(c);
        if (!s.empty()) kids.push_back(std::move(s));
      }
      std::sort(kids.begin(), kids.end());
      std::string out = n.dicritical ? "B*(" : "B(";
      for (size_t i = 0; i < kids.size(); ++i) out += (i ? "," : "") + kids[i];
      return out + ")";
    }
    if (n.record < 0) return "";
    return "L" + std::to_string(exceptional_count(tree.leaves[static_cast<size_t>(n.record)].divisor));
  };
  return tree.nodes.empty() ? "" : rec(0);
}

bool trees_equivalent(const ReductionTree& a, const ReductionTree& b) { return canonical_tree(a) == canonical_tree(b); }

}  // namespace folab
