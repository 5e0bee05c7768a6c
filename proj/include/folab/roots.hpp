#pragma once

#include <optional>
#include <vector>

#include "folab/field.hpp"

namespace folab {

/// Dense univariate polynomial over the tower, low degree first, trimmed.
using UPoly = std::vector<FieldElement>;

UPoly upoly_trim(UPoly p);
int upoly_degree(const UPoly& p);  // -1 for zero
UPoly upoly_mul(const UPoly& a, const UPoly& b);
UPoly upoly_sub(const UPoly& a, const UPoly& b);
void upoly_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly upoly_gcd(const UPoly& a, const UPoly& b);  // monic
UPoly upoly_derivative(const UPoly& p);
UPoly upoly_squarefree(const UPoly& p);  // monic square-free part
FieldElement upoly_eval(const UPoly& p, const FieldElement& x);

/// Distinct roots of p inside the coefficient tower, sorted deterministically.
/// Adjoins one square root when max_field_degree >= 2 and no conflicting
/// extension is active; throws FieldExtensionError when some root lies outside
/// every admissible tower.
std::vector<FieldElement> distinct_roots(const UPoly& p, int max_field_degree);

/// Roots of a monic quadratic t^2 + b t + c (may extend the tower).
std::optional<std::vector<FieldElement>> quadratic_roots(const FieldElement& b, const FieldElement& c,
                                                         int max_field_degree);

}  // namespace folab
