#pragma once

#include <string>
#include <vector>

#include "folab/forms.hpp"

namespace folab {

/// Monomial chart of a blow-up. The new coordinates keep the slots of the old
/// ones; the exceptional coordinate replaces the coordinate it came from.
struct ChartMap {
  std::string label;                // old coordinate that becomes exceptional
  std::vector<std::string> vars;    // new coordinate names
  std::vector<MPoly> substitution;  // images of the old coordinates
  int exceptional_index = 0;
  int multiplicity = 0;  // power of the exceptional equation divided out
  bool dicritical = false;

  MPoly exceptional_eq() const { return MPoly::variable(vars, exceptional_index); }
};

struct BlowupChart2 : ChartMap {
  OneForm2 form;
  LocalDivisor divisor;  // strict transforms of all branches, then the exceptional one
};

struct BlowupChart3 : ChartMap {
  OneForm3 form;
  LocalDivisor divisor;
};

/// Sequence of charts followed from the origin; each step records the chart
/// label and the coordinates of the followed point in that chart.
struct ChartStep {
  std::string chart;
  std::vector<FieldElement> point;
};

struct ChartPath {
  std::vector<ChartStep> steps;
  std::string to_string() const;
  friend bool operator==(const ChartPath&, const ChartPath&) = default;
};

/// Whether the point blow-up of the origin has a non-invariant exceptional line:
/// u A_nu + v B_nu == 0 for the lowest homogeneous part.
bool dicritical_test2(const OneForm2& w);

/// Point blow-up charts: "u" is (u, t) -> (u, u t) and "v" is (s, v) -> (s v, v).
/// Regular points are refused unless allow_regular is set.
std::vector<BlowupChart2> blowup_point2(const OneForm2& w, const LocalDivisor& divisor, bool allow_regular = false);

/// Point blow-up charts "x", "y", "z" of C^3.
std::vector<BlowupChart3> blowup_point3(const OneForm3& w, const LocalDivisor& divisor);

/// Blow-up along the coordinate axis `axis` (0, 1, 2 for the x, y, z axis).
std::vector<BlowupChart3> blowup_curve3(const OneForm3& w, int axis, const LocalDivisor& divisor);

/// Strict transform of a hypersurface under a chart.
MPoly strict_transform(const MPoly& f, const ChartMap& chart);

/// Pullback of a 1-form by a polynomial map; the result lives in the variables
/// of the images. A finite precision truncates the pulled-back coefficients.
std::vector<MPoly> pullback_coeffs(const std::vector<MPoly>& coeffs, const std::vector<MPoly>& images,
                                   int prec = PSeries::kExact);

/// Moves the point (var = c) to the origin. Truncated series are only moved
/// along c = 0 (otherwise InconclusiveError).
OneForm2 translate2(const OneForm2& w, int var, const FieldElement& c);
OneForm3 translate3(const OneForm3& w, int var, const FieldElement& c);
LocalDivisor translate_divisor(const LocalDivisor& d, int var, const FieldElement& c);

/// Branches whose equation vanishes at the origin.
LocalDivisor branches_at_origin(const LocalDivisor& d);

}  // namespace folab
