#pragma once

#include <array>
#include <string>
#include <vector>

#include "folab/mpoly.hpp"

namespace folab {

extern const std::vector<std::string> kVarsUV;
extern const std::vector<std::string> kVarsXYZ;
extern const std::vector<std::string> kVarT;

/// A du + B dv. Coefficients are trusted for total degree < prec.
struct OneForm2 {
  MPoly A, B;
  int prec = PSeries::kExact;

  OneForm2() = default;
  OneForm2(MPoly a, MPoly b, int p = PSeries::kExact);
  const std::vector<std::string>& vars() const { return A.vars(); }
  bool is_exact() const { return prec >= PSeries::kExact; }
  bool is_zero() const { return A.is_zero() && B.is_zero(); }
  FieldDescriptor descriptor() const;
  std::string to_string() const;
  friend bool operator==(const OneForm2&, const OneForm2&) = default;
};

/// A dx + B dy + C dz.
struct OneForm3 {
  MPoly A, B, C;
  int prec = PSeries::kExact;

  OneForm3() = default;
  OneForm3(MPoly a, MPoly b, MPoly c, int p = PSeries::kExact);
  const std::vector<std::string>& vars() const { return A.vars(); }
  bool is_exact() const { return prec >= PSeries::kExact; }
  const MPoly& coeff(int i) const { return i == 0 ? A : (i == 1 ? B : C); }
  MPoly& coeff(int i) { return i == 0 ? A : (i == 1 ? B : C); }
  FieldDescriptor descriptor() const;
  std::string to_string() const;
};

/// One smooth branch of a normal-crossings divisor germ.
struct DivisorBranch {
  MPoly eq;
  bool invariant = true;  // false: dicritical
  int component = -1;     // exceptional component id, -1 for declared branches
  std::string label;
};

struct LocalDivisor {
  std::vector<DivisorBranch> branches;
  int e0() const { return static_cast<int>(branches.size()); }
  int invariant_count() const;
  int dicritical_count() const;
};

/// Parametrized curve germ t -> (gamma_1(t), ..., gamma_n(t)), trusted below prec.
struct CurveJet {
  std::vector<MPoly> gamma;  // polynomials in the single variable t
  int prec = PSeries::kExact;
};

struct CertifiedBool {
  bool value = false;
  int certified_order = 0;  // orders below this were checked exactly
};

OneForm2 exact_form2(const MPoly& g);
OneForm3 exact_form3(const MPoly& f);

/// Removes the common factor of A and B (a monomial factor for series input).
OneForm2 normalize2(const OneForm2& w);
OneForm3 normalize3(const OneForm3& w);

int nu0(const OneForm2& w);
int nu0(const OneForm3& w);

/// dim O_2/(f, g) at the origin; throws DomainError when not isolated and
/// InconclusiveError when the precision runs out first.
int local_intersection_dimension(const MPoly& f, const MPoly& g, int prec = PSeries::kExact);
int mu0(const OneForm2& w);

/// Coefficient of omega ^ d omega on dx^dy^dz.
MPoly integrability_defect(const OneForm3& w);
bool integrable3(const OneForm3& w);

CertifiedBool invariant_curve(const OneForm2& w, const CurveJet& gamma);
CertifiedBool invariant_curve(const OneForm3& w, const CurveJet& gamma);

/// f = 0 invariant: every coefficient of omega ^ df divisible by f.
bool invariant_surface3(const OneForm3& w, const MPoly& f);
/// f = 0 invariant for a plane form: f divides A f_v - B f_u.
bool invariant_curve_implicit(const OneForm2& w, const MPoly& f);

/// Linear part of the dual vector field B d/du - A d/dv at the origin.
using Mat2 = std::array<std::array<FieldElement, 2>, 2>;
Mat2 linear_part(const OneForm2& w);

}  // namespace folab
