#include "folab/forms.hpp"

#include <algorithm>

#include "folab/errors.hpp"
#include "folab/linalg.hpp"

namespace folab {

const std::vector<std::string> kVarsUV = {"u", "v"};
const std::vector<std::string> kVarsXYZ = {"x", "y", "z"};
const std::vector<std::string> kVarT = {"t"};

namespace {

std::string wrap(const MPoly& p) {
  std::string s = p.to_string();
  return p.size() > 1 ? "(" + s + ")" : s;
}

}  // namespace

OneForm2::OneForm2(MPoly a, MPoly b, int p) : A(std::move(a)), B(std::move(b)), prec(p) {
  if (A.vars().empty()) A = MPoly(B.vars());
  if (B.vars().empty()) B = MPoly(A.vars());
  if (A.vars() != B.vars()) throw DomainError("form coefficients over different variables");
  if (A.nvars() != 2) throw DomainError("a plane form needs two variables");
  if (prec < PSeries::kExact) {
    A = A.truncated(prec);
    B = B.truncated(prec);
  }
}

FieldDescriptor OneForm2::descriptor() const { return FieldDescriptor::join(A.descriptor(), B.descriptor()); }

std::string OneForm2::to_string() const {
  const auto& v = vars();
  std::string s;
  if (!A.is_zero()) s += wrap(A) + " d" + v[0];
  if (!B.is_zero()) s += (s.empty() ? "" : " + ") + wrap(B) + " d" + v[1];
  if (s.empty()) s = "0";
  if (!is_exact()) s += " + O(" + std::to_string(prec) + ")";
  return s;
}

OneForm3::OneForm3(MPoly a, MPoly b, MPoly c, int p) : A(std::move(a)), B(std::move(b)), C(std::move(c)), prec(p) {
  std::vector<std::string> v = !A.vars().empty() ? A.vars() : (!B.vars().empty() ? B.vars() : C.vars());
  for (MPoly* m : {&A, &B, &C}) {
    if (m->vars().empty()) *m = MPoly(v);
    if (m->vars() != v) throw DomainError("form coefficients over different variables");
    if (prec < PSeries::kExact) *m = m->truncated(prec);
  }
  if (v.size() != 3) throw DomainError("a 3-D form needs three variables");
}

FieldDescriptor OneForm3::descriptor() const {
  return FieldDescriptor::join(FieldDescriptor::join(A.descriptor(), B.descriptor()), C.descriptor());
}

std::string OneForm3::to_string() const {
  const auto& v = vars();
  std::string s;
  for (int i = 0; i < 3; ++i) {
    if (coeff(i).is_zero()) continue;
    s += (s.empty() ? "" : " + ") + wrap(coeff(i)) + " d" + v[static_cast<size_t>(i)];
  }
  if (s.empty()) s = "0";
  if (!is_exact()) s += " + O(" + std::to_string(prec) + ")";
  return s;
}

int LocalDivisor::invariant_count() const {
  return static_cast<int>(std::count_if(branches.begin(), branches.end(), [](const auto& b) { return b.invariant; }));
}

int LocalDivisor::dicritical_count() const { return e0() - invariant_count(); }

OneForm2 exact_form2(const MPoly& g) { return OneForm2(g.derivative(0), g.derivative(1)); }

OneForm3 exact_form3(const MPoly& f) { return OneForm3(f.derivative(0), f.derivative(1), f.derivative(2)); }

// ---------------------------------------------------------------- normalization

namespace {

// Common monomial factor exponents of a list of polynomials.
Exponent common_monomial(const std::vector<const MPoly*>& ps, int nv) {
  Exponent e{};
  bool first = true;
  for (const MPoly* p : ps) {
    if (p->is_zero()) continue;
    for (int i = 0; i < nv; ++i) {
      int k = p->order_in(i);
      e[static_cast<size_t>(i)] = first ? k : std::min(e[static_cast<size_t>(i)], k);
    }
    first = false;
  }
  return e;
}

MPoly strip_monomial(const MPoly& p, const Exponent& e, int nv) {
  MPoly r = p;
  for (int i = 0; i < nv; ++i)
    if (e[static_cast<size_t>(i)] > 0) r = r.divided_by_var(i, e[static_cast<size_t>(i)]);
  return r;
}

}  // namespace

OneForm2 normalize2(const OneForm2& w) {
  if (w.is_zero()) throw DomainError("zero form cannot be normalized");
  if (w.is_exact()) {
    MPoly g = MPoly::gcd(w.A, w.B);
    if (g.is_constant()) return w;
    return OneForm2(*MPoly::divide(w.A, g), *MPoly::divide(w.B, g));
  }
  Exponent e = common_monomial({&w.A, &w.B}, 2);
  int drop = e[0] + e[1];
  if (drop == 0) return w;
  return OneForm2(strip_monomial(w.A, e, 2), strip_monomial(w.B, e, 2), w.prec - drop);
}

OneForm3 normalize3(const OneForm3& w) {
  if (w.A.is_zero() && w.B.is_zero() && w.C.is_zero()) throw DomainError("zero form cannot be normalized");
  if (w.is_exact()) {
    MPoly g = MPoly::gcd(MPoly::gcd(w.A, w.B), w.C);
    if (g.is_constant()) return w;
    return OneForm3(*MPoly::divide(w.A, g), *MPoly::divide(w.B, g), *MPoly::divide(w.C, g));
  }
  Exponent e = common_monomial({&w.A, &w.B, &w.C}, 3);
  int drop = e[0] + e[1] + e[2];
  if (drop == 0) return w;
  return OneForm3(strip_monomial(w.A, e, 3), strip_monomial(w.B, e, 3), strip_monomial(w.C, e, 3), w.prec - drop);
}

int nu0(const OneForm2& w) {
  if (w.is_zero()) throw InconclusiveError("order-indeterminate: form vanishes to its precision");
  int a = w.A.is_zero() ? PSeries::kExact : w.A.order();
  int b = w.B.is_zero() ? PSeries::kExact : w.B.order();
  return std::min(a, b);
}

int nu0(const OneForm3& w) {
  int best = PSeries::kExact;
  for (int i = 0; i < 3; ++i)
    if (!w.coeff(i).is_zero()) best = std::min(best, w.coeff(i).order());
  if (best == PSeries::kExact) throw InconclusiveError("order-indeterminate: form vanishes to its precision");
  return best;
}

// ---------------------------------------------------------------- Milnor number

namespace {

// dim O/(I + m^d) for I = (f, g) in two variables.
int quotient_dimension(const MPoly& f, const MPoly& g, int d) {
  std::vector<Exponent> monos;
  std::map<Exponent, int> index;
  for (int deg = 0; deg < d; ++deg)
    for (int i = deg; i >= 0; --i) {
      Exponent e{i, deg - i, 0, 0};
      index[e] = static_cast<int>(monos.size());
      monos.push_back(e);
    }
  const int n = static_cast<int>(monos.size());
  Matrix rows;
  for (const MPoly* gen : {&f, &g}) {
    if (gen->is_zero()) continue;
    int ord = gen->order();
    for (const auto& a : monos) {
      if (total_degree(a) + ord >= d) continue;
      Vector row(static_cast<size_t>(n));
      for (const auto& [e, c] : gen->terms()) {
        Exponent s{e[0] + a[0], e[1] + a[1], 0, 0};
        if (total_degree(s) >= d) continue;
        row[static_cast<size_t>(index[s])] += c;
      }
      rows.push_back(std::move(row));
    }
  }
  return n - rank(std::move(rows), n);
}

}  // namespace

int local_intersection_dimension(const MPoly& f, const MPoly& g, int prec) {
  if (f.nvars() != 2 || g.nvars() != 2) throw DomainError("local algebra dimension needs two variables");
  if (!f.constant_term().is_zero() || !g.constant_term().is_zero()) return 0;
  if (prec >= PSeries::kExact) {
    MPoly h = MPoly::gcd(f, g);
    if (!h.is_constant() && h.constant_term().is_zero())
      throw DomainError("non-isolated singularity: common factor " + h.to_string());
  }
  int bound = PSeries::kExact;
  if (prec >= PSeries::kExact) bound = std::max(1, f.total_degree()) * std::max(1, g.total_degree()) + 2;
  int prev = quotient_dimension(f, g, 1);
  for (int d = 2;; ++d) {
    if (d > bound) throw DomainError("non-isolated singularity: local algebra does not stabilize");
    if (d > prec) throw InconclusiveError("Milnor number not determined at precision " + std::to_string(prec));
    int cur = quotient_dimension(f, g, d);
    if (cur == prev) return cur;
    prev = cur;
  }
}

int mu0(const OneForm2& w) { return local_intersection_dimension(w.A, w.B, w.prec); }

// ---------------------------------------------------------------- integrability and invariance

MPoly integrability_defect(const OneForm3& w) {
  const MPoly &A = w.A, &B = w.B, &C = w.C;
  return A * (B.derivative(2) - C.derivative(1)) + B * (C.derivative(0) - A.derivative(2)) +
         C * (A.derivative(1) - B.derivative(0));
}

bool integrable3(const OneForm3& w) {
  MPoly d = integrability_defect(w);
  if (w.is_exact()) return d.is_zero();
  return d.truncated(w.prec - 1).is_zero();
}

namespace {

CertifiedBool pullback_vanishes(const std::vector<const MPoly*>& coeffs, int form_prec, const CurveJet& gamma) {
  std::vector<MPoly> images;
  int curve_prec = gamma.prec;
  int min_ord = PSeries::kExact;
  for (const auto& g : gamma.gamma) {
    if (!g.constant_term().is_zero()) throw DomainError("curve jet does not pass through the origin");
    images.push_back(g.with_vars(kVarT));
    if (!g.is_zero()) min_ord = std::min(min_ord, g.order());
  }
  if (min_ord >= PSeries::kExact) throw DomainError("curve jet is identically zero");
  // Pull-back coefficient of dt is trusted below this order.
  long p = curve_prec >= PSeries::kExact ? PSeries::kExact : curve_prec - 1;
  if (form_prec < PSeries::kExact) p = std::min<long>(p, static_cast<long>(form_prec) * min_ord - 1);
  int bound = p >= PSeries::kExact ? -1 : static_cast<int>(p) + 1;
  MPoly total(kVarT);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    MPoly c = coeffs[i]->substitute(images, bound);
    total += MPoly::mul_truncated(c, images[i].derivative(0), bound);
  }
  if (bound >= 0) total = total.truncated(static_cast<int>(p));
  CertifiedBool out;
  out.certified_order = static_cast<int>(std::min<long>(p, PSeries::kExact));
  out.value = total.is_zero();
  if (out.value && out.certified_order < 1) throw InconclusiveError("curve jet too short to certify invariance");
  return out;
}

}  // namespace

CertifiedBool invariant_curve(const OneForm2& w, const CurveJet& gamma) {
  if (gamma.gamma.size() != 2) throw DomainError("plane form needs a plane curve");
  return pullback_vanishes({&w.A, &w.B}, w.prec, gamma);
}

CertifiedBool invariant_curve(const OneForm3& w, const CurveJet& gamma) {
  if (gamma.gamma.size() != 3) throw DomainError("3-D form needs a space curve");
  return pullback_vanishes({&w.A, &w.B, &w.C}, w.prec, gamma);
}

namespace {

// Whether f divides c in the power series ring, looking only below `bound`.
bool jet_divisible(const MPoly& c, const MPoly& f, int bound) {
  MPoly rem = c.truncated(bound);
  if (rem.is_zero()) return true;
  MPoly lf = f.homogeneous_part(f.order());
  while (!rem.is_zero()) {
    MPoly h = rem.homogeneous_part(rem.order());
    auto q = MPoly::divide(h, lf);
    if (!q) return false;
    rem = (rem - MPoly::mul_truncated(*q, f, bound)).truncated(bound);
  }
  return true;
}

bool divisible(const MPoly& c, const MPoly& f, int form_prec) {
  if (c.is_zero()) return true;
  if (form_prec >= PSeries::kExact) return MPoly::divide(c, f).has_value();
  return jet_divisible(c, f, form_prec - 1);
}

}  // namespace

bool invariant_surface3(const OneForm3& w, const MPoly& f) {
  if (!f.constant_term().is_zero()) throw DomainError("surface does not pass through the origin");
  MPoly fx = f.derivative(0), fy = f.derivative(1), fz = f.derivative(2);
  for (const auto& c : {w.A * fy - w.B * fx, w.A * fz - w.C * fx, w.B * fz - w.C * fy})
    if (!divisible(c, f, w.prec)) return false;
  return true;
}

bool invariant_curve_implicit(const OneForm2& w, const MPoly& f) {
  return divisible(w.A * f.derivative(1) - w.B * f.derivative(0), f, w.prec);
}

Mat2 linear_part(const OneForm2& w) {
  auto c = [](const MPoly& p, int var) {
    Exponent e{};
    e[static_cast<size_t>(var)] = 1;
    return p.coeff(e);
  };
  return Mat2{{{c(w.B, 0), c(w.B, 1)}, {-c(w.A, 0), -c(w.A, 1)}}};
}

}  // namespace folab
