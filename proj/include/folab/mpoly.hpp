#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folab/field.hpp"

namespace folab {

constexpr int kMaxVars = 4;
using Exponent = std::array<int, kMaxVars>;

int total_degree(const Exponent& e);

/// Sparse polynomial over the coefficient tower in up to four labelled
/// variables. Terms are kept in lexicographic exponent order; no zero
/// coefficient is ever stored.
class MPoly {
 public:
  using TermMap = std::map<Exponent, FieldElement>;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars);
  static MPoly constant(const std::vector<std::string>& vars, const FieldElement& c);
  static MPoly variable(const std::vector<std::string>& vars, int index);
  static MPoly monomial(const std::vector<std::string>& vars, const Exponent& e, const FieldElement& c);

  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  int var_index(const std::string& name) const;  // -1 if absent
  const TermMap& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldElement constant_term() const;
  FieldElement coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const FieldElement& c);

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly& operator+=(const MPoly& b) { return *this = *this + b; }
  MPoly& operator-=(const MPoly& b) { return *this = *this - b; }
  MPoly& operator*=(const MPoly& b) { return *this = *this * b; }
  MPoly scaled(const FieldElement& c) const;
  MPoly pow(int e) const;
  // Product truncated to total degree < bound.
  static MPoly mul_truncated(const MPoly& a, const MPoly& b, int bound);

  MPoly derivative(int var) const;
  int total_degree() const;         // -1 for zero
  int degree_in(int var) const;     // -1 for zero
  int order() const;                // vanishing order; throws InconclusiveError on zero
  int order_in(int var) const;      // largest power of var dividing the polynomial
  MPoly homogeneous_part(int d) const;
  MPoly truncated(int bound) const;  // keeps total degree < bound

  // Exact multiplication / division by a monomial var^k.
  MPoly shifted(int var, int k) const;
  MPoly divided_by_var(int var, int k) const;  // throws DomainError if not divisible

  // Substitutes images[i] (all sharing one target variable list) for variable i.
  // A nonnegative bound truncates every intermediate product to total degree < bound.
  MPoly substitute(const std::vector<MPoly>& images, int bound = -1) const;
  MPoly translated(int var, const FieldElement& c) const;  // var -> var + c
  FieldElement evaluate(const std::vector<FieldElement>& point) const;
  // Sets one variable to a value; the variable list is kept.
  MPoly evaluate_var(int var, const FieldElement& value) const;
  MPoly with_vars(std::vector<std::string> vars) const;  // relabel (same arity or wider)
  MPoly swapped(int i, int j) const;

  // Coefficients of the expansion in powers of var (each without var).
  std::map<int, MPoly> coefficients_in(int var) const;
  // Coefficients as a dense vector when the polynomial only involves var.
  std::vector<FieldElement> as_univariate(int var) const;
  // Leading term in lex order; requires nonzero.
  const std::pair<const Exponent, FieldElement>& leading_term() const;

  FieldDescriptor descriptor() const;
  bool is_rational() const;
  bool has_param() const;

  // Exact quotient a / b when b divides a, else nullopt.
  static std::optional<MPoly> divide(const MPoly& a, const MPoly& b);
  // Monic (lex leading coefficient 1) gcd.
  static MPoly gcd(const MPoly& a, const MPoly& b);
  MPoly monic() const;

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.terms_ == b.terms_;
  }
  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Truncated power series: coefficients trusted for total degree < prec.
struct PSeries {
  static constexpr int kExact = 1 << 29;
  MPoly poly;
  int prec = kExact;

  PSeries() = default;
  PSeries(MPoly p, int pr = kExact);
  bool is_exact() const { return prec >= kExact; }
  bool is_zero_to_precision() const { return poly.is_zero(); }

  friend PSeries operator+(const PSeries& a, const PSeries& b);
  friend PSeries operator-(const PSeries& a, const PSeries& b);
  friend PSeries operator*(const PSeries& a, const PSeries& b);
  PSeries derivative(int var) const;
  std::string to_string() const;
};

int vanishing_order(const MPoly& p);
int vanishing_order(const PSeries& s);

/// f(g_1, ..., g_k) for f in k variables and g_i without constant term.
PSeries series_compose(const PSeries& f, const std::vector<PSeries>& g);

enum class RatioVerdict { Yes, No, ZeroEigenvalue, Nilpotent };
const char* to_string(RatioVerdict v);

/// Decides whether the roots of T^2 - tr T + det have quotient in Q_{>0}.
RatioVerdict ratio_in_positive_rationals(const FieldElement& tr, const FieldElement& det);

}  // namespace folab
