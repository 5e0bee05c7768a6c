#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace folab {

using Rational = mpq_class;
using Integer = mpz_class;

// Dense univariate polynomial over Q, coefficients low degree first.
// The zero polynomial has no coefficients.
class UPolyQ {
 public:
  UPolyQ() = default;
  explicit UPolyQ(std::vector<Rational> coeffs);
  static UPolyQ constant(const Rational& c);
  static UPolyQ monomial(const Rational& c, int degree);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  const Rational& leading() const { return coeffs_.back(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  UPolyQ operator-() const;
  friend UPolyQ operator+(const UPolyQ& a, const UPolyQ& b);
  friend UPolyQ operator-(const UPolyQ& a, const UPolyQ& b);
  friend UPolyQ operator*(const UPolyQ& a, const UPolyQ& b);
  UPolyQ scaled(const Rational& c) const;
  UPolyQ monic() const;
  UPolyQ derivative() const;
  Rational eval(const Rational& x) const;

  // Euclidean division; divisor must be nonzero.
  static void divmod(const UPolyQ& a, const UPolyQ& b, UPolyQ& q, UPolyQ& r);
  // Monic gcd (zero if both are zero).
  static UPolyQ gcd(const UPolyQ& a, const UPolyQ& b);

  friend bool operator==(const UPolyQ& a, const UPolyQ& b) { return a.coeffs_ == b.coeffs_; }
  std::strong_ordering compare(const UPolyQ& other) const;

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Element of Q(s): reduced fraction with monic denominator.
class RatFunc {
 public:
  RatFunc() : den_(UPolyQ::constant(1)) {}
  RatFunc(const Rational& c);  // NOLINT(google-explicit-constructor)
  RatFunc(UPolyQ num, UPolyQ den);
  static RatFunc variable();

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;  // requires is_constant()
  const UPolyQ& num() const { return num_; }
  const UPolyQ& den() const { return den_; }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc inverse() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  std::strong_ordering compare(const RatFunc& other) const;
  std::string to_string(const std::string& var) const;

 private:
  void normalize();
  UPolyQ num_;
  UPolyQ den_;
};

/// Coefficient universe: Q, optionally with one adjoined square root rt(m)
/// and optionally one transcendental parameter.
struct FieldDescriptor {
  long sqrt_of = 0;   // 0: no quadratic extension; otherwise square-free m != 0, 1
  std::string param;  // empty: no parameter

  bool has_extension() const { return sqrt_of != 0; }
  bool has_param() const { return !param.empty(); }
  int extension_degree() const { return has_extension() ? 2 : 1; }
  std::string to_string() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

  // Smallest descriptor containing both; throws FieldExtensionError when the
  // result would need two different square roots or two parameters.
  static FieldDescriptor join(const FieldDescriptor& a, const FieldDescriptor& b);
  static FieldDescriptor with_sqrt(long m);
  static FieldDescriptor with_param(std::string name);
};

/// Square-free part of a nonzero integer, keeping the sign.
Integer squarefree_part(const Integer& n);

/// a + b*rt(m), with a, b in Q(param).
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long v) : a_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  FieldElement(const Rational& q) : a_(q) {}  // NOLINT(google-explicit-constructor)
  FieldElement(FieldDescriptor desc, RatFunc a, RatFunc b);

  static FieldElement sqrt_of(long m);              // rt(m), m square-free
  static FieldElement parameter(const std::string& name);
  static FieldElement from_string_rational(const std::string& s);

  const FieldDescriptor& descriptor() const { return desc_; }
  const RatFunc& rational_part() const { return a_; }
  const RatFunc& irrational_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return a_.is_constant() && b_.is_constant(); }
  bool is_rational() const { return b_.is_zero() && a_.is_constant(); }
  Rational to_rational() const;  // requires is_rational()

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
  FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
  FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }
  FieldElement& operator/=(const FieldElement& y) { return *this = *this / y; }
  FieldElement inverse() const;
  FieldElement conjugate() const;
  FieldElement norm() const;  // x * conjugate(x), lies in Q(param)
  FieldElement pow(int e) const;

  // Re-expresses the element over a wider descriptor (no-op on value).
  FieldElement lifted(const FieldDescriptor& target) const;

  friend bool operator==(const FieldElement& x, const FieldElement& y);
  // Total order used for deterministic sorting only; not a field order.
  std::strong_ordering compare(const FieldElement& y) const;

  // Approximate complex value (parameter must be absent); test oracles only.
  std::pair<double, double> approx() const;

  std::string to_string() const;

 private:
  FieldDescriptor desc_;
  RatFunc a_;
  RatFunc b_;
};

/// Square root inside the tower, extending by a quadratic root when the
/// descriptor allows it (max_degree >= 2 and no conflicting extension).
/// Returns nullopt when the root is outside every admissible tower.
std::optional<FieldElement> sqrt_in_tower(const FieldElement& x, int max_degree);

bool is_rational_square(const Rational& q);
Rational rational_sqrt(const Rational& q);  // requires is_rational_square

}  // namespace folab
