#include "folab/field.hpp"

#include <cmath>
#include <sstream>

#include "folab/errors.hpp"

namespace folab {

// ---------------------------------------------------------------- UPolyQ

UPolyQ::UPolyQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

UPolyQ UPolyQ::constant(const Rational& c) { return UPolyQ(std::vector<Rational>{c}); }

UPolyQ UPolyQ::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return UPolyQ(std::move(v));
}

void UPolyQ::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UPolyQ::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<size_t>(k)];
}

UPolyQ UPolyQ::operator-() const {
  UPolyQ r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UPolyQ operator+(const UPolyQ& a, const UPolyQ& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return UPolyQ(std::move(v));
}

UPolyQ operator-(const UPolyQ& a, const UPolyQ& b) { return a + (-b); }

UPolyQ operator*(const UPolyQ& a, const UPolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UPolyQ(std::move(v));
}

UPolyQ UPolyQ::scaled(const Rational& c) const {
  if (c == 0) return {};
  UPolyQ r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

UPolyQ UPolyQ::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / leading());
}

UPolyQ UPolyQ::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UPolyQ(std::move(v));
}

Rational UPolyQ::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void UPolyQ::divmod(const UPolyQ& a, const UPolyQ& b, UPolyQ& q, UPolyQ& r) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  const int db = b.degree();
  std::vector<Rational> quo(rem.size() >= b.coeffs_.size() ? rem.size() - b.coeffs_.size() + 1 : 0);
  const Rational inv_lead = Rational(1) / b.leading();
  for (int k = static_cast<int>(rem.size()) - 1; k >= db; --k) {
    if (rem[static_cast<size_t>(k)] == 0) continue;
    Rational f = rem[static_cast<size_t>(k)] * inv_lead;
    quo[static_cast<size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k - db + j)] -= f * b.coeffs_[static_cast<size_t>(j)];
  }
  q = UPolyQ(std::move(quo));
  r = UPolyQ(std::move(rem));
}

UPolyQ UPolyQ::gcd(const UPolyQ& a, const UPolyQ& b) {
  UPolyQ x = a, y = b;
  while (!y.is_zero()) {
    UPolyQ q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::strong_ordering UPolyQ::compare(const UPolyQ& other) const {
  if (coeffs_.size() != other.coeffs_.size()) return coeffs_.size() <=> other.coeffs_.size();
  for (size_t i = coeffs_.size(); i-- > 0;) {
    int c = cmp(coeffs_[i], other.coeffs_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string UPolyQ::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Rational& c) : num_(UPolyQ::constant(c)), den_(UPolyQ::constant(1)) {}

RatFunc::RatFunc(UPolyQ num, UPolyQ den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::variable() { return RatFunc(UPolyQ(std::vector<Rational>{0, 1}), UPolyQ::constant(1)); }

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UPolyQ::constant(1);
    return;
  }
  if (!den_.is_constant()) {
    UPolyQ g = UPolyQ::gcd(num_, den_);
    if (!g.is_constant()) {
      UPolyQ q, r;
      UPolyQ::divmod(num_, g, q, r);
      num_ = q;
      UPolyQ::divmod(den_, g, q, r);
      den_ = q;
    }
  }
  if (den_.leading() != 1) {
    Rational inv = Rational(1) / den_.leading();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Rational RatFunc::constant_value() const { return num_.is_zero() ? Rational(0) : num_.coeff(0); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_constant() && b.is_constant()) return RatFunc(a.constant_value() + b.constant_value());
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_constant() && b.is_constant()) return RatFunc(a.constant_value() * b.constant_value());
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (a.is_constant() && b.is_constant()) {
    if (b.is_zero()) throw DomainError("division by zero");
    return RatFunc(a.constant_value() / b.constant_value());
  }
  return a * b.inverse();
}

std::strong_ordering RatFunc::compare(const RatFunc& other) const {
  if (auto c = num_.compare(other.num_); c != 0) return c;
  return den_.compare(other.den_);
}

std::string RatFunc::to_string(const std::string& var) const {
  if (den_.is_constant()) return num_.to_string(var);
  std::string n = num_.to_string(var);
  if (!num_.is_constant() && num_.coeffs().size() > 1) n = "(" + n + ")";
  return n + "/(" + den_.to_string(var) + ")";
}

// ---------------------------------------------------------------- descriptors

std::string FieldDescriptor::to_string() const {
  std::string s = "Q";
  if (has_extension()) s += sqrt_of == -1 ? "(i)" : "(rt(" + std::to_string(sqrt_of) + "))";
  if (has_param()) s += "(" + param + ")";
  return s;
}

FieldDescriptor FieldDescriptor::join(const FieldDescriptor& a, const FieldDescriptor& b) {
  FieldDescriptor r = a;
  if (b.sqrt_of != 0) {
    if (r.sqrt_of != 0 && r.sqrt_of != b.sqrt_of)
      throw FieldExtensionError("field tower would need both rt(" + std::to_string(r.sqrt_of) + ") and rt(" +
                                std::to_string(b.sqrt_of) + "); only one quadratic extension is supported");
    r.sqrt_of = b.sqrt_of;
  }
  if (b.has_param()) {
    if (r.has_param() && r.param != b.param)
      throw FieldExtensionError("two transcendental parameters (" + r.param + ", " + b.param + ") are not supported");
    r.param = b.param;
  }
  return r;
}

FieldDescriptor FieldDescriptor::with_sqrt(long m) {
  Integer sf = squarefree_part(Integer(m));
  if (m == 0 || m == 1 || sf != m) throw DomainError("rt(m) needs a square-free m different from 0 and 1");
  return FieldDescriptor{m, {}};
}

FieldDescriptor FieldDescriptor::with_param(std::string name) { return FieldDescriptor{0, std::move(name)}; }

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw DomainError("square-free part of zero");
  Integer sign = n < 0 ? -1 : 1;
  Integer rest = abs(n);
  Integer out = 1;
  for (Integer p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e % 2 == 1) out *= p;
  }
  out *= rest;
  return sign * out;
}

bool is_rational_square(const Rational& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

Rational rational_sqrt(const Rational& q) {
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- FieldElement

FieldElement::FieldElement(FieldDescriptor desc, RatFunc a, RatFunc b)
    : desc_(std::move(desc)), a_(std::move(a)), b_(std::move(b)) {
  if (!desc_.has_extension() && !b_.is_zero()) throw DomainError("irrational part without an extension");
  if (!desc_.has_param() && (!a_.is_constant() || !b_.is_constant()))
    throw DomainError("parameter dependence without a parameter");
}

FieldElement FieldElement::sqrt_of(long m) {
  return FieldElement(FieldDescriptor::with_sqrt(m), RatFunc(Rational(0)), RatFunc(Rational(1)));
}

FieldElement FieldElement::parameter(const std::string& name) {
  return FieldElement(FieldDescriptor::with_param(name), RatFunc::variable(), RatFunc(Rational(0)));
}

FieldElement FieldElement::from_string_rational(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return FieldElement(q);
}

bool FieldElement::is_one() const {
  return b_.is_zero() && a_.is_constant() && a_.constant_value() == 1;
}

Rational FieldElement::to_rational() const {
  if (!is_rational()) throw DomainError("element is not rational: " + to_string());
  return a_.constant_value();
}

FieldElement FieldElement::operator-() const { return FieldElement(desc_, -a_, -b_); }

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  if (x.desc_ == y.desc_) return FieldElement(x.desc_, x.a_ + y.a_, x.b_ + y.b_);
  return FieldElement(FieldDescriptor::join(x.desc_, y.desc_), x.a_ + y.a_, x.b_ + y.b_);
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) { return x + (-y); }

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  FieldDescriptor d = x.desc_ == y.desc_ ? x.desc_ : FieldDescriptor::join(x.desc_, y.desc_);
  if (x.b_.is_zero() && y.b_.is_zero()) return FieldElement(std::move(d), x.a_ * y.a_, RatFunc(Rational(0)));
  RatFunc m(Rational(d.sqrt_of));
  RatFunc a = x.a_ * y.a_ + m * x.b_ * y.b_;
  RatFunc b = x.a_ * y.b_ + x.b_ * y.a_;
  return FieldElement(std::move(d), std::move(a), std::move(b));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DomainError("division by zero in field");
  if (b_.is_zero()) return FieldElement(desc_, a_.inverse(), RatFunc(Rational(0)));
  RatFunc n = a_ * a_ - RatFunc(Rational(desc_.sqrt_of)) * b_ * b_;
  return FieldElement(desc_, a_ / n, -b_ / n);
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) { return x * y.inverse(); }

FieldElement FieldElement::conjugate() const { return FieldElement(desc_, a_, -b_); }

FieldElement FieldElement::norm() const { return *this * conjugate(); }

FieldElement FieldElement::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

FieldElement FieldElement::lifted(const FieldDescriptor& target) const {
  return FieldElement(FieldDescriptor::join(target, desc_), a_, b_);
}

bool operator==(const FieldElement& x, const FieldElement& y) {
  if (!(x.a_ == y.a_) || !(x.b_ == y.b_)) return false;
  if (x.b_.is_zero()) return true;
  return x.desc_.sqrt_of == y.desc_.sqrt_of;
}

std::strong_ordering FieldElement::compare(const FieldElement& y) const {
  long mx = b_.is_zero() ? 0 : desc_.sqrt_of;
  long my = y.b_.is_zero() ? 0 : y.desc_.sqrt_of;
  if ((mx != 0) != (my != 0)) return (mx != 0) <=> (my != 0);
  if (mx != my) return mx <=> my;
  if (auto c = b_.compare(y.b_); c != 0) return c;
  return a_.compare(y.a_);
}

std::pair<double, double> FieldElement::approx() const {
  if (!is_constant()) throw DomainError("cannot approximate a parameter-dependent element");
  double a = a_.constant_value().get_d();
  double b = b_.constant_value().get_d();
  if (desc_.sqrt_of > 0) return {a + b * std::sqrt(static_cast<double>(desc_.sqrt_of)), 0.0};
  if (desc_.sqrt_of < 0) return {a, b * std::sqrt(static_cast<double>(-desc_.sqrt_of))};
  return {a, 0.0};
}

namespace {

bool needs_parens(const std::string& s) {
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-' || s[i] == '(' || s[i] == ' ') return true;
  return false;
}

}  // namespace

std::string FieldElement::to_string() const {
  const std::string& var = desc_.param;
  if (b_.is_zero()) return a_.to_string(var);
  std::string root = desc_.sqrt_of == -1 ? "i" : "rt(" + std::to_string(desc_.sqrt_of) + ")";
  std::string bs;
  bool negative = false;
  if (b_.is_constant()) {
    Rational bv = b_.constant_value();
    negative = bv < 0;
    Rational mag = abs(bv);
    bs = mag == 1 ? root : mag.get_str() + "*" + root;
  } else {
    bs = "(" + b_.to_string(var) + ")*" + root;
  }
  if (a_.is_zero()) return negative ? "-" + bs : bs;
  std::string as = a_.to_string(var);
  if (needs_parens(as)) as = "(" + as + ")";
  return as + (negative ? " - " : " + ") + bs;
}

// ---------------------------------------------------------------- square roots

namespace {

std::optional<UPolyQ> poly_sqrt(const UPolyQ& p) {
  if (p.is_zero()) return UPolyQ();
  if (p.degree() % 2 != 0) return std::nullopt;
  if (!is_rational_square(p.leading())) return std::nullopt;
  const int n = p.degree() / 2;
  std::vector<Rational> r(static_cast<size_t>(n) + 1);
  r[static_cast<size_t>(n)] = rational_sqrt(p.leading());
  // Solve top-down: coefficient of x^(n+k) in r^2 fixes r[k].
  for (int k = n - 1; k >= 0; --k) {
    Rational acc = p.coeff(n + k);
    for (int i = k + 1; i <= n; ++i) {
      int j = n + k - i;
      if (j > k && j <= n) acc -= r[static_cast<size_t>(i)] * r[static_cast<size_t>(j)];
    }
    r[static_cast<size_t>(k)] = acc / (2 * r[static_cast<size_t>(n)]);
  }
  UPolyQ root(r);
  if (!(root * root == p)) return std::nullopt;
  return root;
}

}  // namespace

std::optional<FieldElement> sqrt_in_tower(const FieldElement& x, int max_degree) {
  if (x.is_zero()) return x;
  const FieldDescriptor& d = x.descriptor();
  const RatFunc& a = x.rational_part();
  const RatFunc& b = x.irrational_part();
  if (b.is_zero() && !a.is_constant()) {
    auto n = poly_sqrt(a.num());
    auto m = poly_sqrt(a.den());
    if (n && m) return FieldElement(d, RatFunc(*n, *m), RatFunc(Rational(0)));
    return std::nullopt;
  }
  if (!x.is_constant()) return std::nullopt;
  if (b.is_zero()) {
    Rational q = a.constant_value();
    if (is_rational_square(q)) return FieldElement(d, RatFunc(rational_sqrt(q)), RatFunc(Rational(0)));
    Integer k = q.get_num() * q.get_den();
    Integer sf = squarefree_part(k);
    Integer c2 = k / sf;
    Integer c;
    mpz_sqrt(c.get_mpz_t(), c2.get_mpz_t());
    long m = sf.get_si();
    if (d.sqrt_of != 0 && d.sqrt_of != m) return std::nullopt;
    if (d.sqrt_of == 0 && max_degree < 2) return std::nullopt;
    FieldDescriptor nd = d;
    nd.sqrt_of = m;
    Rational coeff(c, q.get_den());
    coeff.canonicalize();
    return FieldElement(nd, RatFunc(Rational(0)), RatFunc(coeff));
  }
  // (p + q rt(m))^2 = a + b rt(m) with p, q rational.
  Rational av = a.constant_value(), bv = b.constant_value();
  Rational nrm = av * av - Rational(d.sqrt_of) * bv * bv;
  if (!is_rational_square(nrm)) return std::nullopt;
  Rational n0 = rational_sqrt(nrm);
  for (int sgn : {1, -1}) {
    Rational p2 = (av + sgn * n0) / 2;
    if (p2 == 0 || !is_rational_square(p2)) continue;
    Rational p = rational_sqrt(p2);
    Rational q = bv / (2 * p);
    return FieldElement(d, RatFunc(p), RatFunc(q));
  }
  return std::nullopt;
}

}  // namespace folab
