#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folab/linalg.hpp"
#include "folab/reduce2d.hpp"
#include "folab/separatrix.hpp"

namespace folab {

extern const std::vector<std::string> kVarsP2;  // X, Y, Z
extern const std::vector<std::string> kVarsP3;  // X, Y, Z, W

/// Foliation of P^2 or P^3 given by a homogeneous 1-form sum A_i dX_i whose
/// coefficients have degree d + 1 and satisfy sum X_i A_i = 0.
struct ProjFoliation {
  std::vector<MPoly> coeffs;
  int degree = 0;

  /// Validates homogeneity, the Euler condition and (for four variables)
  /// integrability; a common factor of the coefficients is divided out.
  static ProjFoliation make(std::vector<MPoly> coeffs);
  int dimension() const { return static_cast<int>(coeffs.size()) - 1; }
  const std::vector<std::string>& vars() const { return coeffs.front().vars(); }
  std::string to_string() const;
};

bool euler_condition(const std::vector<MPoly>& coeffs);
/// omega ^ d omega = 0, checked on every dX_i ^ dX_j ^ dX_k.
bool integrable(const std::vector<MPoly>& coeffs);
/// f = 0 invariant: f divides A_i f_j - A_j f_i for all i < j.
bool invariant_hypersurface(const ProjFoliation& F, const MPoly& f);

/// Poles F_1..F_l (homogeneous, reduced, pairwise coprime) with residues.
struct LogarithmicData {
  std::vector<MPoly> factors;
  std::vector<FieldElement> residues;
};

/// F_1...F_l (sum lambda_i dF_i / F_i), of degree deg S - 2.
ProjFoliation logarithmic_build(const LogarithmicData& data);

/// Projective closure of an affine plane form a du + b dv (chart Z = 1).
ProjFoliation from_affine(const OneForm2& w);

/// Singular point of a plane foliation with its affine chart: coordinate
/// `chart` is set to 1 and the other two, in order, become (u, v) centred at
/// the point.
struct PlanePoint {
  std::vector<FieldElement> coords;  // homogeneous, coords[chart] = 1
  int chart = 2;
  OneForm2 local;
  int multiplicity = 0;
  SingularityRecord record;

  std::string label() const;
  bool simple() const;
  bool nondegenerate() const;
};

/// All singular points, sorted by chart (Z = 1, then Y = 1, then X = 1) and
/// coordinates. Throws DomainError for a singular curve and
/// FieldExtensionError when a point lies outside the tower.
std::vector<PlanePoint> plane_singularities(const ProjFoliation& F, int max_field_degree = 2);

/// Homogeneous polynomial in the local coordinates of a point.
MPoly localize(const MPoly& f, const PlanePoint& p);

enum class IndexKind { CS, GSV, BB };
const char* to_string(IndexKind k);

struct IndexValue {
  IndexKind kind = IndexKind::BB;
  FieldElement value;
  std::string anchor;
  std::string to_string() const;
};

/// Smooth separatrices of a simple point as invariant graphs of order N:
/// the two eigen-branches, or the strong and weak branches of a saddle-node.
std::vector<BranchJet> simple_separatrices(const SingularityRecord& p, int N = 12);

/// Smooth local branches of the curve f = 0 at the origin as graphs of
/// order N. Throws DomainError unless the origin is an ordinary point of f
/// (distinct tangents).
std::vector<BranchJet> curve_branches(const MPoly& f, int N = 12);

/// tr^2 / det of the linear part; DomainError when it is degenerate.
IndexValue bb_index(const SingularityRecord& p);

/// Baum-Bott index of any isolated singularity: tr^2 / det when
/// non-degenerate, CS + 2 GSV over the strong and weak branches at a
/// saddle-node, otherwise summed over the reduction with the correction
/// l^2 for every blow-up (l = nu, or nu + 1 when dicritical).
IndexValue bb_index_resolved(const OneForm2& w, const ReduceOptions& opts = {});

/// Camacho-Sad index along a smooth invariant branch (graph or smooth
/// parametrization), or along the union of such branches.
IndexValue cs_index(const SingularityRecord& p, const BranchJet& branch);
IndexValue cs_index(const SingularityRecord& p, const std::vector<BranchJet>& branches);

/// GSV index with respect to the union of the given branches, read from the
/// orders of B o gamma_i against d(f_1...f_k) along each branch.
IndexValue gsv_index(const SingularityRecord& p, const std::vector<BranchJet>& branches);

/// Intersection number of two branches at the origin.
int intersection_number(const BranchJet& a, const BranchJet& b);

struct PointIndices {
  std::string point;
  PointClass kind = PointClass::Regular;
  int multiplicity = 0;
  FieldElement bb;
  std::string bb_route;
  bool on_curve = false;
  std::optional<FieldElement> cs_curve, gsv_curve;  // with respect to the curve
  std::optional<FieldElement> cs_total, gsv_total;  // full separatrix set, simple points
  std::optional<bool> relation;                     // BB = CS + 2 GSV there
};

struct SumReport {
  int d = 0;
  int d0 = 0;
  FieldElement sum_cs, sum_gsv, sum_bb;
  bool cs_ok = false, gsv_ok = false, bb_ok = false;
  bool relation_ok = true;  // at every simple point
  std::vector<PointIndices> points;
  bool ok() const { return cs_ok && gsv_ok && bb_ok && relation_ok; }
};

/// Index sums for a plane foliation and a reduced invariant curve C:
/// sum CS over C = d0^2, sum GSV over C = (d + 2) d0 - d0^2 and
/// sum BB over Sing = (d + 2)^2.
SumReport sum_theorem_check(const ProjFoliation& F, const MPoly& C, int max_field_degree = 2);

/// Hypotheses of the characterization that the caller asserts.
struct CriterionHypotheses {
  bool separatrices_in_S = false;      // (i)
  bool first_integrals_off_S = false;  // (ii)
};

enum class LogVerdict { Logarithmic, NotLogarithmic, Undetermined };
const char* to_string(LogVerdict v);

struct CriterionReport {
  int d = 0;
  int d0 = 0;
  Integer slack;  // (d0 - (d + 2))^2
  SumReport section;
  FieldElement bb_on_S, bb_off_S;
  FieldElement expected_bb_on_S;  // 2 (d + 2) d0 - d0^2
  std::optional<bool> bb_off_S_nonpositive;
  bool sums_consistent = false;
  CriterionHypotheses hypotheses;
  LogVerdict verdict = LogVerdict::Undetermined;
  std::string note;
};

/// Restriction of a foliation of P^3 to the plane X_i = sum_k H[i][k] P_k.
ProjFoliation restrict_to_plane(const ProjFoliation& F, const Matrix& H);

/// Logarithmic test through a generically transversal plane section H
/// (a 4 x 3 matrix of rank 3).
CriterionReport logarithmic_criterion(const ProjFoliation& F, const MPoly& S, const Matrix& H,
                                      const CriterionHypotheses& hyp, int max_field_degree = 2);

}  // namespace folab
