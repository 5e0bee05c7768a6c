#include <algorithm>
#include <map>
#include <optional>

#include "folab/errors.hpp"
#include "folab/roots.hpp"
#include "folab/threefold.hpp"

namespace folab {

std::string ScriptCenter::to_string() const {
  std::string path;
  for (const auto& c : chart) path += (path.empty() ? "" : ">") + c;
  if (path.empty()) path = "origin";
  return path + ":" + (axis < 0 ? std::string("point") : std::string("axis:") + "xyz"[axis]);
}

namespace {

struct Chart {
  std::vector<std::string> path;
  OneForm3 form;
  LocalDivisor divisor;      // exceptional components
  std::vector<MPoly> sep;    // strict transforms of the separatrix components
  std::vector<MPoly> to_root;
};

std::string path_string(const std::vector<std::string>& p) {
  if (p.empty()) return "origin";
  std::string s;
  for (const auto& c : p) s += (s.empty() ? "" : ">") + c;
  return s;
}

MPoly relabel(const MPoly& p) { return p.with_vars(kVarsXYZ); }

OneForm3 relabel(const OneForm3& w) { return OneForm3(relabel(w.A), relabel(w.B), relabel(w.C), w.prec); }

bool vanishes_on_axis(const MPoly& f, int axis) {
  for (const auto& [e, c] : f.terms()) {
    bool pure = true;
    for (int j = 0; j < 3; ++j)
      if (j != axis && e[static_cast<size_t>(j)] != 0) pure = false;
    if (pure) return false;
  }
  return true;
}

bool coordinate_plane(const MPoly& f, int& index) {
  if (f.size() != 1 || f.total_degree() != 1) return false;
  const Exponent& e = f.terms().begin()->first;
  for (int i = 0; i < 3; ++i)
    if (e[static_cast<size_t>(i)] == 1) index = i;
  return true;
}

// Every total divisor component visible in the chart, exceptional ones first.
struct Component {
  MPoly eq;
  std::string label;
  bool exceptional = false;
};

std::vector<Component> components_of(const Chart& c) {
  std::vector<Component> out;
  for (const auto& b : c.divisor.branches) out.push_back({b.eq, b.label, true});
  for (size_t i = 0; i < c.sep.size(); ++i)
    if (!c.sep[i].is_constant()) out.push_back({c.sep[i], "S" + std::to_string(i + 1), false});
  return out;
}

std::string point_string(const std::vector<FieldElement>& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].to_string();
  return s + ")";
}

OneForm3 translated(OneForm3 w, const std::vector<FieldElement>& p) {
  for (int i = 0; i < 3; ++i)
    if (!p[static_cast<size_t>(i)].is_zero()) w = translate3(w, i, p[static_cast<size_t>(i)]);
  return w;
}

MPoly translated(MPoly f, const std::vector<FieldElement>& p) {
  for (int i = 0; i < 3; ++i)
    if (!p[static_cast<size_t>(i)].is_zero()) f = f.translated(i, p[static_cast<size_t>(i)]);
  return f;
}

// Components through p, moved to the origin; checks smoothness and normal crossings.
LocalDivisor local_divisor(const std::vector<Component>& comps, const std::vector<FieldElement>& p,
                           const std::string& where) {
  LocalDivisor D;
  Matrix grads;
  for (const auto& c : comps) {
    MPoly f = translated(c.eq, p);
    if (!f.constant_term().is_zero()) continue;
    Vector g;
    for (int i = 0; i < 3; ++i) g.push_back(f.coeff(Exponent{i == 0, i == 1, i == 2, 0}));
    if (std::all_of(g.begin(), g.end(), [](const FieldElement& x) { return x.is_zero(); }))
      throw DomainError("script leaves component " + c.label + " singular at " + where);
    grads.push_back(g);
    D.branches.push_back({f, true, -1, c.label});
  }
  if (D.e0() > 3 || rank(grads, 3) < D.e0())
    throw DomainError("script leaves the total divisor without normal crossings at " + where);
  return D;
}

bool over_origin(const Chart& c, const std::vector<FieldElement>& p) {
  for (const auto& f : c.to_root)
    if (!f.evaluate(p).is_zero()) return false;
  return true;
}

// Some s0 with curve(s0) over the origin: the images share a root in s.
bool curve_meets_origin(const Chart& c, const std::vector<MPoly>& curve) {
  UPoly g;
  for (const auto& f : c.to_root) {
    MPoly h = f.substitute(curve);
    g = upoly_gcd(g, h.as_univariate(0));
  }
  return g.empty() || upoly_degree(g) > 0;
}

// Whether {x_plane = 0, h = 0} meets the preimage of the origin; nullopt when undecided.
std::optional<bool> meets_origin_preimage(const Chart& c, int plane, const MPoly& h) {
  if (h.is_zero()) return true;
  if (h.is_constant()) return false;
  std::vector<MPoly> R;
  for (const auto& f : c.to_root) R.push_back(f.evaluate_var(plane, 0));
  if (std::all_of(R.begin(), R.end(), [](const MPoly& f) { return f.is_zero(); })) return true;
  for (const auto& f : R) {
    if (f.size() != 1 || f.is_constant()) continue;
    const Exponent& e = f.terms().begin()->first;
    int j = -1, used = 0;
    for (int v = 0; v < 3; ++v)
      if (e[static_cast<size_t>(v)] > 0) {
        j = v;
        ++used;
      }
    if (used != 1) continue;
    const int k = 3 - plane - j;
    MPoly line = h.evaluate_var(j, 0);
    if (line.is_zero()) return true;
    for (const auto& root : distinct_roots(line.as_univariate(k), 2)) {
      std::vector<FieldElement> p(3);
      p[static_cast<size_t>(k)] = root;
      if (std::all_of(R.begin(), R.end(), [&](const MPoly& g) { return g.evaluate(p).is_zero(); })) return true;
    }
    return false;
  }
  return std::nullopt;
}

std::string section_code(const SingularityRecord& rec) {
  switch (rec.code.kind) {
    case PointClass::Regular: return "Regular";
    case PointClass::SaddleNode: return "b1";
    case PointClass::NonSimple: return "NotSimple";
    case PointClass::SimpleNonDegenerate: {
      const Mat2& m = rec.linear;
      FieldElement tr = m[0][0] + m[1][1], det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
      FieldElement q = tr * tr / det;
      if (q.is_rational() && q.to_rational() <= 0 && is_rational_square(q.to_rational() * (q.to_rational() - 4)))
        return "b2";
      return "a";
    }
  }
  return "?";
}

void check_point(const Chart& c, const std::vector<FieldElement>& p, int jet_order, HarnessReport& report) {
  HarnessRecord r;
  r.chart = path_string(c.path);
  r.location = point_string(p);
  r.kind = "point";
  const auto comps = components_of(c);
  LocalDivisor D = local_divisor(comps, p, r.chart + " " + r.location);
  OneForm3 w = translated(c.form, p);
  try {
    Model3Match m = match_simple_model3(w, D, jet_order);
    r.code = to_string(m.code);
    r.simple = m.code != ModelCode::NotSimple;
    r.well_oriented = r.simple && well_oriented3(m, D);
    if (!m.note.empty() && !r.simple) r.code += " (" + m.note + ")";
  } catch (const DomainError& e) {
    r.code = std::string("NotSimple (") + e.what() + ")";
    r.simple = false;
    r.well_oriented = false;
  }
  report.records.push_back(r);
}

void check_curve(const Chart& c, const std::vector<MPoly>& curve, int free_var, int jet_order, HarnessReport& report) {
  HarnessRecord r;
  r.chart = path_string(c.path);
  r.kind = "curve";
  const FieldElement s = FieldElement::parameter("s");
  std::vector<FieldElement> p;
  for (const auto& f : curve) p.push_back(f.evaluate({s}));
  r.location = "generic point " + point_string(p);
  try {
    const auto comps = components_of(c);
    LocalDivisor D = local_divisor(comps, p, r.chart + " " + r.location);
    OneForm3 w = normalize3(translated(c.form, p));
    std::array<MPoly, 3> images;
    int slot = 0;
    for (int i = 0; i < 3; ++i)
      images[static_cast<size_t>(i)] = i == free_var ? MPoly(kVarsUV) : MPoly::variable(kVarsUV, slot++);
    SectionMap phi(images);
    OneForm2 g = pullback_section(w, phi);
    LocalDivisor E = pullback_divisor(D, phi);
    SingularityRecord rec = classify_point2(g, E, jet_order);
    r.code = section_code(rec);
    r.simple = rec.code.kind != PointClass::NonSimple;
    r.well_oriented = r.simple && rec.well_oriented;
  } catch (const InconclusiveError& e) {
    r.code = std::string("Unchecked (") + e.what() + ")";
  } catch (const FieldExtensionError& e) {
    r.code = std::string("Unchecked (") + e.what() + ")";
  }
  report.records.push_back(r);
}

// Sing inside an exceptional plane must lie on the other components.
void check_exceptional_plane(const Chart& c, int plane, const std::string& label, HarnessReport& report) {
  MPoly g(kVarsXYZ);
  for (int i = 0; i < 3; ++i) g = MPoly::gcd(g, c.form.coeff(i).evaluate_var(plane, 0));
  if (g.is_zero()) return;
  for (const auto& comp : components_of(c)) {
    MPoly h = comp.eq.evaluate_var(plane, 0);
    if (h.is_zero() || h.is_constant()) continue;
    while (!g.is_constant()) {
      auto q = MPoly::divide(g, h);
      if (!q) break;
      g = *q;
    }
  }
  if (g.is_constant()) return;
  HarnessRecord r;
  r.chart = path_string(c.path);
  r.location = label + " along " + g.to_string() + " = 0";
  r.kind = "curve";
  r.code = "NotSimple (singular curve in the divisor outside the separatrices)";
  report.records.push_back(r);
}

}  // namespace

HarnessReport theorem_main_harness(const OneForm3& w, const std::vector<MPoly>& separatrix_components,
                                   const std::vector<ScriptCenter>& script, int jet_order) {
  HarnessReport report;
  std::vector<Chart> charts(1);
  charts[0].form = relabel(w);
  for (const auto& f : separatrix_components) {
    if (!invariant_surface3(charts[0].form, relabel(f)))
      throw DomainError("declared separatrix component " + f.to_string() + " = 0 is not invariant");
    charts[0].sep.push_back(relabel(f));
  }
  for (int i = 0; i < 3; ++i) charts[0].to_root.push_back(MPoly::variable(kVarsXYZ, i));
  std::map<int, int> created_by;  // component id -> axis (-1: point)
  int next_component = 0;

  for (const auto& center : script) {
    auto it = std::find_if(charts.begin(), charts.end(), [&](const Chart& c) { return c.path == center.chart; });
    if (it == charts.end()) throw DomainError("script: no chart " + path_string(center.chart));
    Chart parent = *it;
    charts.erase(it);
    if (center.axis >= 0)
      for (const auto& b : parent.divisor.branches)
        if (vanishes_on_axis(b.eq, center.axis) && created_by[b.component] != center.axis)
          throw DomainError("script: center " + center.to_string() + " is not contained in a single chart");
    std::vector<BlowupChart3> kids = center.axis < 0 ? blowup_point3(parent.form, parent.divisor)
                                                     : blowup_curve3(parent.form, center.axis, parent.divisor);
    const int id = next_component++;
    created_by[id] = center.axis;
    ++report.blowups;
    for (auto& k : kids) {
      if (k.dicritical) throw DomainError("script: dicritical blow-up at " + center.to_string());
      Chart c;
      c.path = parent.path;
      c.path.push_back(k.label);
      c.form = relabel(k.form);
      for (auto b : k.divisor.branches) {
        b.eq = relabel(b.eq);
        if (b.component < 0) {
          b.component = id;
          b.label = "E" + std::to_string(id + 1);
        }
        if (!b.eq.is_constant()) c.divisor.branches.push_back(std::move(b));
      }
      std::vector<MPoly> images;
      for (const auto& s : k.substitution) images.push_back(relabel(s));
      for (const auto& f : parent.sep) c.sep.push_back(relabel(strict_transform(f.with_vars(parent.form.vars()), k)));
      for (const auto& f : parent.to_root) c.to_root.push_back(f.substitute(images));
      charts.push_back(std::move(c));
    }
  }
  std::sort(charts.begin(), charts.end(), [](const Chart& a, const Chart& b) { return a.path < b.path; });
  report.charts = static_cast<int>(charts.size());

  for (const auto& c : charts) {
    const auto comps = components_of(c);
    for (const auto& f : c.sep)
      for (int k = 0; k < 3; ++k)
        if (!f.is_constant() && vanishes_on_axis(f, k) && vanishes_on_axis(f.derivative(0), k) &&
            vanishes_on_axis(f.derivative(1), k) && vanishes_on_axis(f.derivative(2), k))
          throw DomainError("script leaves a separatrix component singular along an axis in chart " +
                            path_string(c.path));
    std::vector<int> plane_of(comps.size(), -1);
    for (size_t i = 0; i < comps.size(); ++i) coordinate_plane(comps[i].eq, plane_of[i]);

    // Triple points on two coordinate-plane components.
    std::vector<std::vector<FieldElement>> points;
    auto add_point = [&](std::vector<FieldElement> p) {
      if (!over_origin(c, p)) return;
      if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(std::move(p));
    };
    for (size_t a = 0; a < comps.size(); ++a)
      for (size_t b = a + 1; b < comps.size(); ++b) {
        if (plane_of[a] < 0 || plane_of[b] < 0 || plane_of[a] == plane_of[b]) continue;
        const int k = 3 - plane_of[a] - plane_of[b];
        for (size_t d = 0; d < comps.size(); ++d) {
          if (d == a || d == b) continue;
          MPoly h = comps[d].eq.evaluate_var(plane_of[a], 0).evaluate_var(plane_of[b], 0);
          if (h.is_zero()) continue;
          for (const auto& root : distinct_roots(h.as_univariate(k), 2)) {
            std::vector<FieldElement> p(3);
            p[static_cast<size_t>(k)] = root;
            add_point(std::move(p));
          }
        }
      }
    std::sort(points.begin(), points.end(), [](const auto& x, const auto& y) {
      for (size_t i = 0; i < 3; ++i) {
        auto o = x[i].compare(y[i]);
        if (o != 0) return o < 0;
      }
      return false;
    });
    for (const auto& p : points) check_point(c, p, jet_order, report);

    // Double curves: a coordinate plane meeting a component that is a graph over it.
    const MPoly t = MPoly::variable(kVarT, 0);
    for (size_t a = 0; a < comps.size(); ++a) {
      if (plane_of[a] < 0) continue;
      const int i = plane_of[a];
      for (size_t b = 0; b < comps.size(); ++b) {
        if (b == a) continue;
        std::vector<MPoly> curve(3, MPoly(kVarT));
        int free_var = -1;
        if (plane_of[b] >= 0) {
          if (plane_of[b] == i || b < a) continue;
          free_var = 3 - i - plane_of[b];
          curve[static_cast<size_t>(free_var)] = t;
        } else {
          MPoly h = comps[b].eq.evaluate_var(i, 0);
          auto meets = meets_origin_preimage(c, i, h);
          if (meets && !*meets) continue;
          for (int j = 0; j < 3 && free_var < 0; ++j) {
            if (j == i || h.degree_in(j) != 1) continue;
            auto parts = h.coefficients_in(j);
            if (!parts[1].is_constant()) continue;
            const int k = 3 - i - j;
            MPoly rest = parts.count(0) ? parts[0] : MPoly(kVarsXYZ);
            if (rest.degree_in(i) > 0) continue;
            std::vector<MPoly> img(3, MPoly(kVarT));
            img[static_cast<size_t>(k)] = t;
            curve[static_cast<size_t>(k)] = t;
            curve[static_cast<size_t>(j)] = rest.substitute(img).scaled(-parts[1].constant_term().inverse());
            free_var = k;
          }
          if (free_var < 0) {
            HarnessRecord r{path_string(c.path), comps[a].label + " meets " + comps[b].label, "curve",
                            "Unchecked (double curve is not a graph)", false, false};
            report.records.push_back(r);
            continue;
          }
        }
        if (!curve_meets_origin(c, curve)) continue;
        check_curve(c, curve, free_var, jet_order, report);
      }
    }
    for (size_t a = 0; a < comps.size(); ++a)
      if (comps[a].exceptional && plane_of[a] >= 0) check_exceptional_plane(c, plane_of[a], comps[a].label, report);
  }
  for (const auto& r : report.records)
    if (!r.simple) report.all_simple = false;
  return report;
}

}  // namespace folab
