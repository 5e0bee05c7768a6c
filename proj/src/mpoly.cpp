#include "folab/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "folab/errors.hpp"

namespace folab {

int total_degree(const Exponent& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

namespace {

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = a[i] + b[i];
  return r;
}

void require_same_vars(const MPoly& a, const MPoly& b) {
  if (a.vars() != b.vars()) throw DomainError("polynomials over different variable lists");
}

}  // namespace

// ---------------------------------------------------------------- construction

MPoly::MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (vars_.size() > static_cast<size_t>(kMaxVars)) throw DomainError("at most four variables are supported");
}

MPoly MPoly::constant(const std::vector<std::string>& vars, const FieldElement& c) {
  MPoly p(vars);
  p.add_term(Exponent{}, c);
  return p;
}

MPoly MPoly::variable(const std::vector<std::string>& vars, int index) {
  Exponent e{};
  e[static_cast<size_t>(index)] = 1;
  return monomial(vars, e, FieldElement(1));
}

MPoly MPoly::monomial(const std::vector<std::string>& vars, const Exponent& e, const FieldElement& c) {
  MPoly p(vars);
  p.add_term(e, c);
  return p;
}

int MPoly::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && folab::total_degree(terms_.begin()->first) == 0);
}

FieldElement MPoly::constant_term() const { return coeff(Exponent{}); }

FieldElement MPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElement() : it->second;
}

void MPoly::add_term(const Exponent& e, const FieldElement& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

// ---------------------------------------------------------------- arithmetic

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  if (a.is_zero() && a.vars_.empty()) return b;
  if (b.is_zero() && b.vars_.empty()) return a;
  require_same_vars(a, b);
  MPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) { return MPoly::mul_truncated(a, b, -1); }

MPoly MPoly::mul_truncated(const MPoly& a, const MPoly& b, int bound) {
  if (a.is_zero() && a.vars_.empty()) return MPoly(b.vars_);
  if (b.is_zero() && b.vars_.empty()) return MPoly(a.vars_);
  require_same_vars(a, b);
  MPoly r(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    int da = folab::total_degree(ea);
    if (bound >= 0 && da >= bound) continue;
    for (const auto& [eb, cb] : b.terms_) {
      if (bound >= 0 && da + folab::total_degree(eb) >= bound) continue;
      r.add_term(add_exp(ea, eb), ca * cb);
    }
  }
  return r;
}

MPoly MPoly::scaled(const FieldElement& c) const {
  if (c.is_zero()) return MPoly(vars_);
  MPoly r = *this;
  for (auto& [e, x] : r.terms_) x *= c;
  return r;
}

MPoly MPoly::pow(int e) const {
  if (e < 0) throw DomainError("negative polynomial power");
  MPoly result = constant(vars_, FieldElement(1));
  MPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

MPoly MPoly::derivative(int var) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<size_t>(var)] == 0) continue;
    Exponent f = e;
    f[static_cast<size_t>(var)] -= 1;
    r.add_term(f, c * FieldElement(static_cast<long>(e[static_cast<size_t>(var)])));
  }
  return r;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, folab::total_degree(e));
  return d;
}

int MPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
  return d;
}

int MPoly::order() const {
  if (is_zero()) throw InconclusiveError("order-indeterminate: polynomial is zero");
  int d = folab::total_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_) d = std::min(d, folab::total_degree(e));
  return d;
}

int MPoly::order_in(int var) const {
  if (is_zero()) return PSeries::kExact;
  int d = terms_.begin()->first[static_cast<size_t>(var)];
  for (const auto& [e, c] : terms_) d = std::min(d, e[static_cast<size_t>(var)]);
  return d;
}

MPoly MPoly::homogeneous_part(int d) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (folab::total_degree(e) == d) r.terms_.emplace(e, c);
  return r;
}

MPoly MPoly::truncated(int bound) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (folab::total_degree(e) < bound) r.terms_.emplace(e, c);
  return r;
}

MPoly MPoly::shifted(int var, int k) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[static_cast<size_t>(var)] += k;
    r.terms_.emplace(f, c);
  }
  return r;
}

MPoly MPoly::divided_by_var(int var, int k) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<size_t>(var)] < k)
      throw DomainError("polynomial not divisible by " + vars_[static_cast<size_t>(var)] + "^" + std::to_string(k));
    Exponent f = e;
    f[static_cast<size_t>(var)] -= k;
    r.terms_.emplace(f, c);
  }
  return r;
}

MPoly MPoly::substitute(const std::vector<MPoly>& images, int bound) const {
  if (static_cast<int>(images.size()) != nvars()) throw DomainError("substitution arity mismatch");
  std::vector<std::string> target;
  for (const auto& im : images)
    if (!im.vars_.empty()) {
      target = im.vars_;
      break;
    }
  MPoly result(target);
  if (is_zero()) return result;
  std::vector<std::vector<MPoly>> powers(images.size());
  auto power = [&](size_t i, int k) -> const MPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MPoly::constant(target, FieldElement(1)));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(mul_truncated(cache.back(), images[i].with_vars(target), bound));
    return cache[static_cast<size_t>(k)];
  };
  for (const auto& [e, c] : terms_) {
    MPoly term = MPoly::constant(target, c);
    for (size_t i = 0; i < images.size(); ++i) {
      if (e[i] == 0) continue;
      term = mul_truncated(term, power(i, e[i]), bound);
      if (term.is_zero()) break;
    }
    result += term;
  }
  return result;
}

MPoly MPoly::translated(int var, const FieldElement& c) const {
  std::vector<MPoly> images;
  for (int i = 0; i < nvars(); ++i) {
    MPoly x = variable(vars_, i);
    if (i == var) x += constant(vars_, c);
    images.push_back(std::move(x));
  }
  return substitute(images);
}

FieldElement MPoly::evaluate(const std::vector<FieldElement>& point) const {
  FieldElement acc;
  for (const auto& [e, c] : terms_) {
    FieldElement t = c;
    for (int i = 0; i < nvars(); ++i)
      if (e[static_cast<size_t>(i)] > 0) t *= point[static_cast<size_t>(i)].pow(e[static_cast<size_t>(i)]);
    acc += t;
  }
  return acc;
}

MPoly MPoly::evaluate_var(int var, const FieldElement& value) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    int k = f[static_cast<size_t>(var)];
    f[static_cast<size_t>(var)] = 0;
    r.add_term(f, k == 0 ? c : c * value.pow(k));
  }
  return r;
}

MPoly MPoly::with_vars(std::vector<std::string> vars) const {
  if (vars == vars_) return *this;
  if (vars.size() < vars_.size()) {
    for (const auto& [e, c] : terms_)
      for (size_t i = vars.size(); i < vars_.size(); ++i)
        if (e[i] != 0) throw DomainError("relabel would drop a variable in use");
  }
  MPoly r(std::move(vars));
  r.terms_ = terms_;
  return r;
}

MPoly MPoly::swapped(int i, int j) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    std::swap(f[static_cast<size_t>(i)], f[static_cast<size_t>(j)]);
    r.terms_.emplace(f, c);
  }
  return r;
}

std::map<int, MPoly> MPoly::coefficients_in(int var) const {
  std::map<int, MPoly> out;
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    int k = f[static_cast<size_t>(var)];
    f[static_cast<size_t>(var)] = 0;
    auto [it, ins] = out.try_emplace(k, vars_);
    it->second.add_term(f, c);
  }
  return out;
}

std::vector<FieldElement> MPoly::as_univariate(int var) const {
  std::vector<FieldElement> v(static_cast<size_t>(std::max(0, degree_in(var) + 1)));
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars(); ++i)
      if (i != var && e[static_cast<size_t>(i)] != 0)
        throw DomainError("polynomial is not univariate in " + vars_[static_cast<size_t>(var)]);
    v[static_cast<size_t>(e[static_cast<size_t>(var)])] += c;
  }
  return v;
}

const std::pair<const Exponent, FieldElement>& MPoly::leading_term() const {
  if (is_zero()) throw DomainError("leading term of zero polynomial");
  return *terms_.rbegin();
}

FieldDescriptor MPoly::descriptor() const {
  FieldDescriptor d;
  for (const auto& [e, c] : terms_)
    if (!(c.descriptor() == d)) d = FieldDescriptor::join(d, c.descriptor());
  return d;
}

bool MPoly::is_rational() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_rational(); });
}

bool MPoly::has_param() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return !t.second.is_constant(); });
}

// ---------------------------------------------------------------- division and gcd

std::optional<MPoly> MPoly::divide(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.is_zero()) return MPoly(a.vars_.empty() ? b.vars_ : a.vars_);
  require_same_vars(a, b);
  MPoly q(a.vars_), r = a;
  const auto& [lb_exp, lb_coeff] = b.leading_term();
  const FieldElement inv = lb_coeff.inverse();
  while (!r.is_zero()) {
    const auto [lr_exp, lr_coeff] = r.leading_term();
    Exponent d{};
    for (int i = 0; i < kMaxVars; ++i) {
      d[static_cast<size_t>(i)] = lr_exp[static_cast<size_t>(i)] - lb_exp[static_cast<size_t>(i)];
      if (d[static_cast<size_t>(i)] < 0) return std::nullopt;
    }
    MPoly t = monomial(a.vars_, d, lr_coeff * inv);
    q += t;
    r -= t * b;
  }
  return q;
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading_term().second.inverse());
}

namespace {

int main_variable(const MPoly& a, const MPoly& b) {
  int best = -1;
  for (const MPoly* p : {&a, &b})
    for (const auto& [e, c] : p->terms())
      for (int i = kMaxVars - 1; i > best; --i)
        if (e[static_cast<size_t>(i)] != 0) {
          best = i;
          break;
        }
  return best;
}

MPoly content_in(const MPoly& p, int var) {
  MPoly g(p.vars());
  for (const auto& [k, c] : p.coefficients_in(var)) {
    g = MPoly::gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

MPoly primitive_in(const MPoly& p, int var) {
  if (p.is_zero()) return p;
  MPoly c = content_in(p, var);
  return *MPoly::divide(p, c);
}

MPoly pseudo_remainder(const MPoly& p, const MPoly& q, int var) {
  const int dq = q.degree_in(var);
  auto qc = q.coefficients_in(var);
  const MPoly lq = qc.rbegin()->second;
  MPoly r = p;
  while (!r.is_zero() && r.degree_in(var) >= dq) {
    const int dr = r.degree_in(var);
    MPoly lr = r.coefficients_in(var).rbegin()->second;
    r = lq * r - (lr * q).shifted(var, dr - dq);
  }
  return r;
}

// Specializes every variable except `var`; a point keeping both leading
// coefficients whose images are coprime proves p, q (primitive in var) coprime.
bool coprime_by_specialization(const MPoly& p, const MPoly& q, int var) {
  bool multivariate = false;
  for (int j = 0; j < p.nvars(); ++j)
    if (j != var && (p.degree_in(j) > 0 || q.degree_in(j) > 0)) multivariate = true;
  if (!multivariate) return false;
  const long values[] = {3, -2, 5, 7, -11};
  const MPoly lp = p.coefficients_in(var).rbegin()->second, lq = q.coefficients_in(var).rbegin()->second;
  for (long v : values) {
    MPoly a = p, b = q, la = lp, lb = lq;
    for (int j = 0; j < p.nvars(); ++j) {
      if (j == var) continue;
      const FieldElement c(v + 2 * j);
      a = a.evaluate_var(j, c);
      b = b.evaluate_var(j, c);
      la = la.evaluate_var(j, c);
      lb = lb.evaluate_var(j, c);
    }
    if (la.is_zero() || lb.is_zero()) continue;
    return MPoly::gcd(a, b).is_constant();
  }
  return false;
}

}  // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  require_same_vars(a, b);
  // Monomial contents are split off first; the PRS below only sees the rest.
  Exponent ea = a.terms_.begin()->first, eb = b.terms_.begin()->first;
  for (const auto& t : a.terms_)
    for (size_t i = 0; i < ea.size(); ++i) ea[i] = std::min(ea[i], t.first[i]);
  for (const auto& t : b.terms_)
    for (size_t i = 0; i < eb.size(); ++i) eb[i] = std::min(eb[i], t.first[i]);
  if (folab::total_degree(ea) + folab::total_degree(eb) > 0) {
    MPoly sa = a, sb = b;
    Exponent common{};
    for (int i = 0; i < a.nvars(); ++i) {
      const size_t k = static_cast<size_t>(i);
      sa = sa.divided_by_var(i, ea[k]);
      sb = sb.divided_by_var(i, eb[k]);
      common[k] = std::min(ea[k], eb[k]);
    }
    return (monomial(a.vars_, common, FieldElement(1)) * gcd(sa, sb)).monic();
  }
  const int var = main_variable(a, b);
  if (var < 0) return constant(a.vars_, FieldElement(1));
  MPoly ca = content_in(a, var), cb = content_in(b, var);
  MPoly c = gcd(ca, cb);
  MPoly p = *divide(a, ca), q = *divide(b, cb);
  if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
  if (q.degree_in(var) > 0 && coprime_by_specialization(p, q, var)) return c.monic();
  bool multivariate = false;
  for (int j = 0; j < p.nvars(); ++j)
    if (j != var && (p.degree_in(j) > 0 || q.degree_in(j) > 0)) multivariate = true;
  if (!multivariate) {
    while (q.degree_in(var) > 0) {
      MPoly r = pseudo_remainder(p, q, var);
      p = std::move(q);
      q = r.is_zero() ? r : r.monic();
      if (q.is_zero()) break;
    }
    MPoly g = q.is_zero() ? p : constant(a.vars_, FieldElement(1));
    return (c * g).monic();
  }
  // Subresultant PRS: exact divisions keep the coefficients small.
  MPoly g = constant(a.vars_, FieldElement(1)), h = g;
  while (true) {
    const int delta = p.degree_in(var) - q.degree_in(var);
    const int dq = q.degree_in(var);
    const MPoly lq = q.coefficients_in(var).rbegin()->second;
    // Pseudo-remainder with the full factor lq^(delta + 1).
    MPoly r = p;
    int steps = 0;
    for (; !r.is_zero() && r.degree_in(var) >= dq; ++steps) {
      MPoly lr = r.coefficients_in(var).rbegin()->second;
      r = lq * r - (lr * q).shifted(var, r.degree_in(var) - dq);
    }
    if (delta + 1 > steps) r *= lq.pow(delta + 1 - steps);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      q = constant(a.vars_, FieldElement(1));
      break;
    }
    p = std::move(q);
    q = *divide(r, g * h.pow(delta));
    g = p.coefficients_in(var).rbegin()->second;
    h = delta == 0 ? h : *divide(g.pow(delta), h.pow(delta - 1));
  }
  MPoly res = q.degree_in(var) == 0 ? constant(a.vars_, FieldElement(1)) : primitive_in(q, var);
  return (c * res).monic();
}

// ---------------------------------------------------------------- printing

namespace {

std::string coeff_string(const FieldElement& c) {
  std::string s = c.to_string();
  bool compound = false;
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-' || s[i] == '/') compound = true;
  if (compound && !(c.is_rational())) return "(" + s + ")";
  return s;
}

}  // namespace

std::string MPoly::to_string() const {
  if (is_zero()) return "0";
  std::vector<std::pair<Exponent, FieldElement>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    int dx = folab::total_degree(x.first), dy = folab::total_degree(y.first);
    if (dx != dy) return dx < dy;
    return x.first > y.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    std::string cs = coeff_string(c);
    bool negative = c.is_rational() && c.to_rational() < 0;
    if (negative) cs = coeff_string(-c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (int i = 0; i < nvars(); ++i) {
      int k = e[static_cast<size_t>(i)];
      if (k == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[static_cast<size_t>(i)];
      if (k > 1) mono += "^" + std::to_string(k);
    }
    if (mono.empty()) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << mono;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- series

PSeries::PSeries(MPoly p, int pr) : poly(pr >= kExact ? std::move(p) : p.truncated(pr)), prec(pr) {}

PSeries operator+(const PSeries& a, const PSeries& b) {
  return PSeries(a.poly + b.poly, std::min(a.prec, b.prec));
}

PSeries operator-(const PSeries& a, const PSeries& b) {
  return PSeries(a.poly - b.poly, std::min(a.prec, b.prec));
}

PSeries operator*(const PSeries& a, const PSeries& b) {
  int pr = std::min(a.prec, b.prec);
  return PSeries(MPoly::mul_truncated(a.poly, b.poly, pr >= PSeries::kExact ? -1 : pr), pr);
}

PSeries PSeries::derivative(int var) const {
  return PSeries(poly.derivative(var), is_exact() ? prec : prec - 1);
}

std::string PSeries::to_string() const {
  if (is_exact()) return poly.to_string();
  return poly.to_string() + " + O(" + std::to_string(prec) + ")";
}

int vanishing_order(const MPoly& p) { return p.order(); }

int vanishing_order(const PSeries& s) {
  if (s.poly.is_zero())
    throw InconclusiveError("order-indeterminate: series vanishes to its precision " + std::to_string(s.prec));
  return s.poly.order();
}

PSeries series_compose(const PSeries& f, const std::vector<PSeries>& g) {
  if (static_cast<int>(g.size()) != f.poly.nvars()) throw DomainError("series_compose arity mismatch");
  int prec = PSeries::kExact;
  int min_order = PSeries::kExact;
  std::vector<MPoly> images;
  for (const auto& gi : g) {
    if (!gi.poly.constant_term().is_zero()) throw DomainError("series_compose: inner series has nonzero constant term");
    prec = std::min(prec, gi.prec);
    if (!gi.poly.is_zero()) min_order = std::min(min_order, gi.poly.order());
    images.push_back(gi.poly);
  }
  if (!f.is_exact()) {
    long bound = static_cast<long>(f.prec) * std::max(1, min_order);
    if (min_order >= PSeries::kExact) bound = PSeries::kExact;
    prec = static_cast<int>(std::min<long>(prec, bound));
  }
  MPoly out = f.poly.substitute(images, prec >= PSeries::kExact ? -1 : prec);
  return PSeries(std::move(out), prec);
}

// ---------------------------------------------------------------- eigenvalue ratio

const char* to_string(RatioVerdict v) {
  switch (v) {
    case RatioVerdict::Yes: return "yes";
    case RatioVerdict::No: return "no";
    case RatioVerdict::ZeroEigenvalue: return "zero-eigenvalue";
    case RatioVerdict::Nilpotent: return "nilpotent";
  }
  return "?";
}

RatioVerdict ratio_in_positive_rationals(const FieldElement& tr, const FieldElement& det) {
  if (det.is_zero()) return tr.is_zero() ? RatioVerdict::Nilpotent : RatioVerdict::ZeroEigenvalue;
  FieldElement t = tr * tr / det;
  if (!t.is_rational()) return RatioVerdict::No;
  Rational tq = t.to_rational();
  if (tq < 4) return RatioVerdict::No;
  Rational disc = (tq - 2) * (tq - 2) - 4;
  return is_rational_square(disc) ? RatioVerdict::Yes : RatioVerdict::No;
}

}  // namespace folab
