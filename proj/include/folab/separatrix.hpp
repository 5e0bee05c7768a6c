#pragma once

#include <string>
#include <vector>

#include "folab/reduce2d.hpp"

namespace folab {

enum class BranchRole { Ordinary, Strong, Weak };
const char* to_string(BranchRole r);

struct BranchJet {
  CurveJet jet;  // parametrization at the origin of the input
  bool analytic = true;
  BranchRole role = BranchRole::Ordinary;
  ChartPath leaf;  // point of the reduction where the branch was traced
  MPoly equation;  // implicit equation, jet of total degree < N
  int equation_order = PSeries::kExact;  // the N above; kExact when exact
};

struct SeparatrixSet {
  std::vector<BranchJet> branches;
  int s0() const { return static_cast<int>(branches.size()); }
  MPoly g;  // product of the branch equations, total degree < N
  int order = 12;
};

/// Traces the separatrices not contained in the exceptional divisor back to
/// the origin. Refuses dicritical reductions.
SeparatrixSet separatrices2(const OneForm2& w, const ReductionTree& tree, int N = 12);
SeparatrixSet separatrices2(const OneForm2& w, int N = 12);

/// Weak separatrix of a saddle-node at the origin, as a graph solved term by term.
BranchJet weak_separatrix_jet(const OneForm2& w, int N = 12);

/// Weierstrass implicit equation (total degree < N) of a branch given by a
/// parametrization known modulo t^gamma.prec.
MPoly implicit_equation(const CurveJet& gamma, int N);

/// Orders needed to recover an implicit equation of total degree < N.
int implicit_precision(int o1, int o2, int N);

struct MultiplicityReport {
  int nu_form = 0;
  int nu_dg = 0;
  bool equal = false;
};

MultiplicityReport multiplicity_identity_check(const OneForm2& w, const LocalDivisor& E = {}, int N = 12);

}  // namespace folab
