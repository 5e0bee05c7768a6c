#include "folab/blowup.hpp"

#include "folab/errors.hpp"
#include "folab/linalg.hpp"

namespace folab {

namespace {

bool vanishes_at_origin(const MPoly& p) { return p.constant_term().is_zero(); }

// Minimal exponent sum over the given variables among all terms.
int order_along(const MPoly& p, const std::vector<int>& center_vars) {
  int best = PSeries::kExact;
  for (const auto& [e, c] : p.terms()) {
    int s = 0;
    for (int v : center_vars) s += e[static_cast<size_t>(v)];
    best = std::min(best, s);
  }
  return best;
}

bool divisible_by_var(const MPoly& p, int var, int k) { return p.is_zero() || p.order_in(var) >= k; }

LocalDivisor transform_divisor(const LocalDivisor& d, const ChartMap& chart) {
  LocalDivisor out;
  for (const auto& b : d.branches) {
    DivisorBranch nb = b;
    nb.eq = strict_transform(b.eq, chart);
    out.branches.push_back(std::move(nb));
  }
  DivisorBranch exc;
  exc.eq = chart.exceptional_eq();
  exc.invariant = !chart.dicritical;
  exc.label = "exceptional";
  out.branches.push_back(std::move(exc));
  return out;
}

struct Transformed {
  ChartMap map;
  std::vector<MPoly> coeffs;
  int prec;
};

// Pulls back, then divides by the largest admissible power of the exceptional
// equation: nu along the center, or nu + 1 when everything vanishes once more.
Transformed transform(const std::vector<MPoly>& coeffs, int prec, ChartMap map, int nu) {
  std::vector<MPoly> pulled = pullback_coeffs(coeffs, map.substitution, prec);
  const int e = map.exceptional_index;
  bool extra = true;
  for (const auto& c : pulled)
    if (!divisible_by_var(c, e, nu + 1)) extra = false;
  map.multiplicity = nu + (extra ? 1 : 0);
  for (auto& c : pulled) c = c.is_zero() ? c : c.divided_by_var(e, map.multiplicity);
  bool invariant = true;
  for (size_t i = 0; i < pulled.size(); ++i)
    if (static_cast<int>(i) != e && !divisible_by_var(pulled[i], e, 1)) invariant = false;
  map.dicritical = !invariant;
  const int new_prec = prec >= PSeries::kExact ? PSeries::kExact : prec - map.multiplicity;
  return {std::move(map), std::move(pulled), new_prec};
}

ChartMap make_chart(const std::string& label, const std::vector<std::string>& vars, int exc,
                    const std::vector<MPoly>& images) {
  ChartMap m;
  m.label = label;
  m.vars = vars;
  m.exceptional_index = exc;
  m.substitution = images;
  return m;
}

std::vector<ChartMap> point_charts(const std::vector<std::string>& old_vars, const std::vector<std::string>& fresh) {
  const int n = static_cast<int>(old_vars.size());
  std::vector<ChartMap> charts;
  for (int e = 0; e < n; ++e) {
    std::vector<std::string> vars;
    int k = 0;
    for (int i = 0; i < n; ++i) vars.push_back(i == e ? old_vars[static_cast<size_t>(i)] : fresh[static_cast<size_t>(k++)]);
    MPoly ev = MPoly::variable(vars, e);
    std::vector<MPoly> images;
    for (int i = 0; i < n; ++i) images.push_back(i == e ? ev : ev * MPoly::variable(vars, i));
    charts.push_back(make_chart(old_vars[static_cast<size_t>(e)], vars, e, images));
  }
  return charts;
}

}  // namespace

std::string ChartPath::to_string() const {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += " > ";
    out += s.chart + "(";
    for (size_t i = 0; i < s.point.size(); ++i) out += (i ? ", " : "") + s.point[i].to_string();
    out += ")";
  }
  return out.empty() ? "origin" : out;
}

std::vector<MPoly> pullback_coeffs(const std::vector<MPoly>& coeffs, const std::vector<MPoly>& images, int prec) {
  const int bound = prec >= PSeries::kExact ? -1 : prec;
  const int n = images.front().nvars();
  std::vector<MPoly> out(static_cast<size_t>(n), MPoly(images.front().vars()));
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    MPoly composed = coeffs[i].substitute(images, bound);
    for (int j = 0; j < n; ++j) {
      MPoly dj = images[i].derivative(j);
      if (dj.is_zero()) continue;
      out[static_cast<size_t>(j)] += bound < 0 ? composed * dj : MPoly::mul_truncated(composed, dj, bound);
    }
  }
  return out;
}

MPoly strict_transform(const MPoly& f, const ChartMap& chart) {
  MPoly g = f.substitute(chart.substitution);
  if (g.is_zero()) throw DomainError("strict transform of the zero function");
  return g.divided_by_var(chart.exceptional_index, g.order_in(chart.exceptional_index));
}

bool dicritical_test2(const OneForm2& w) {
  const int nu = nu0(w);
  MPoly lhs = MPoly::variable(w.vars(), 0) * w.A.homogeneous_part(nu) +
              MPoly::variable(w.vars(), 1) * w.B.homogeneous_part(nu);
  return lhs.is_zero();
}

std::vector<BlowupChart2> blowup_point2(const OneForm2& w, const LocalDivisor& divisor, bool allow_regular) {
  if (!allow_regular && (!vanishes_at_origin(w.A) || !vanishes_at_origin(w.B))) throw DomainError("smooth point: blow-up refused");
  const int nu = nu0(w);
  const bool dic = dicritical_test2(w);
  std::vector<ChartMap> maps = {
      make_chart("u", {w.vars()[0], "t"}, 0,
                 {MPoly::variable({w.vars()[0], "t"}, 0),
                  MPoly::variable({w.vars()[0], "t"}, 0) * MPoly::variable({w.vars()[0], "t"}, 1)}),
      make_chart("v", {"s", w.vars()[1]}, 1,
                 {MPoly::variable({"s", w.vars()[1]}, 0) * MPoly::variable({"s", w.vars()[1]}, 1),
                  MPoly::variable({"s", w.vars()[1]}, 1)}),
  };
  std::vector<BlowupChart2> out;
  for (auto& m : maps) {
    Transformed t = transform({w.A, w.B}, w.prec, m, nu);
    if (t.map.multiplicity != nu + (dic ? 1 : 0) || t.map.dicritical != dic)
      throw Error("blow-up: exceptional multiplicity disagrees with the dicritical test");
    BlowupChart2 c;
    static_cast<ChartMap&>(c) = t.map;
    c.form = OneForm2(t.coeffs[0], t.coeffs[1], t.prec);
    c.divisor = transform_divisor(divisor, c);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<BlowupChart3> blowup_point3(const OneForm3& w, const LocalDivisor& divisor) {
  for (int i = 0; i < 3; ++i)
    if (!vanishes_at_origin(w.coeff(i))) throw DomainError("smooth point: blow-up refused");
  const int nu = nu0(w);
  std::vector<BlowupChart3> out;
  for (auto& m : point_charts(w.vars(), {"s", "t"})) {
    Transformed t = transform({w.A, w.B, w.C}, w.prec, m, nu);
    BlowupChart3 c;
    static_cast<ChartMap&>(c) = t.map;
    c.form = OneForm3(t.coeffs[0], t.coeffs[1], t.coeffs[2], t.prec);
    c.divisor = transform_divisor(divisor, c);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<BlowupChart3> blowup_curve3(const OneForm3& w, int axis, const LocalDivisor& divisor) {
  if (axis < 0 || axis > 2) throw DomainError("blow-up center must be a coordinate axis");
  std::vector<int> center;
  for (int i = 0; i < 3; ++i)
    if (i != axis) center.push_back(i);
  int nu = PSeries::kExact;
  for (int i = 0; i < 3; ++i) nu = std::min(nu, order_along(w.coeff(i), center));
  if (nu < 1) throw DomainError("center-not-in-singular-set");

  int containing = 0;
  Matrix lin;
  for (const auto& b : branches_at_origin(divisor).branches) {
    const MPoly& f = b.eq;
    Vector grad;
    for (int i = 0; i < 3; ++i) grad.push_back(f.coeff(Exponent{i == 0, i == 1, i == 2, 0}));
    const bool contains = order_along(f, center) >= 1;
    if (contains) {
      if (!grad[static_cast<size_t>(axis)].is_zero() ||
          (grad[static_cast<size_t>(center[0])].is_zero() && grad[static_cast<size_t>(center[1])].is_zero()))
        throw DomainError("center-not-normal-crossings");
      ++containing;
      lin.push_back(grad);
    } else if (grad[static_cast<size_t>(axis)].is_zero()) {
      throw DomainError("center-not-normal-crossings");
    }
  }
  if (containing > 2 || [&] {
        Matrix m = lin;
        return static_cast<int>(row_reduce(m, 3).size()) < containing;
      }())
    throw DomainError("center-not-normal-crossings");

  const std::vector<std::string>& old = w.vars();
  std::vector<BlowupChart3> out;
  const std::vector<std::string> fresh = {"s", "t"};
  for (size_t k = 0; k < 2; ++k) {
    const int e = center[k];
    const int other = center[1 - k];
    std::vector<std::string> vars = old;
    vars[static_cast<size_t>(other)] = fresh[k];
    std::vector<MPoly> images(3);
    images[static_cast<size_t>(axis)] = MPoly::variable(vars, axis);
    images[static_cast<size_t>(e)] = MPoly::variable(vars, e);
    images[static_cast<size_t>(other)] = MPoly::variable(vars, e) * MPoly::variable(vars, other);
    ChartMap m = make_chart(old[static_cast<size_t>(e)], vars, e, images);
    Transformed t = transform({w.A, w.B, w.C}, w.prec, m, nu);
    BlowupChart3 c;
    static_cast<ChartMap&>(c) = t.map;
    c.form = OneForm3(t.coeffs[0], t.coeffs[1], t.coeffs[2], t.prec);
    c.divisor = transform_divisor(divisor, c);
    out.push_back(std::move(c));
  }
  return out;
}

OneForm2 translate2(const OneForm2& w, int var, const FieldElement& c) {
  if (c.is_zero()) return w;
  if (!w.is_exact()) throw InconclusiveError("cannot move a truncated series to another point");
  return OneForm2(w.A.translated(var, c), w.B.translated(var, c));
}

OneForm3 translate3(const OneForm3& w, int var, const FieldElement& c) {
  if (c.is_zero()) return w;
  if (!w.is_exact()) throw InconclusiveError("cannot move a truncated series to another point");
  return OneForm3(w.A.translated(var, c), w.B.translated(var, c), w.C.translated(var, c));
}

LocalDivisor translate_divisor(const LocalDivisor& d, int var, const FieldElement& c) {
  LocalDivisor out = d;
  for (auto& b : out.branches) b.eq = b.eq.translated(var, c);
  return out;
}

LocalDivisor branches_at_origin(const LocalDivisor& d) {
  LocalDivisor out;
  for (const auto& b : d.branches)
    if (vanishes_at_origin(b.eq)) out.branches.push_back(b);
  return out;
}

}  // namespace folab
