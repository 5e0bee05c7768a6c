#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "folab/blowup.hpp"
#include "folab/linalg.hpp"
#include "folab/reduce2d.hpp"

namespace folab {

/// Dimensional type; nullopt when no certificate is available at this jet order.
std::optional<int> dimensional_type(const OneForm3& w, int jet_order = 8);

/// Constant vector field X with w(X) = 0 and i_X dw ^ w = 0 (cylinder direction).
std::optional<Vector> cylinder_direction(const OneForm3& w, int jet_order = 8);

enum class ModelCode { A, B1, B2, B3, a, b1, b2, Regular, NotSimple };
const char* to_string(ModelCode c);

struct Model3Match {
  ModelCode code = ModelCode::NotSimple;
  int tau = 3;
  std::vector<FieldElement> residues;  // residues of w / (xyz) on the straightened planes
  std::array<int, 3> p{};              // B-models: positive integers
  FieldElement lambda2, lambda3;       // B1/B2 coefficients of the phi part (lambda2 normalized to 1)
  PSeries phi;                         // jet of the phi part restricted to the weak planes
  std::vector<MPoly> separatrices;     // invariant surfaces used as coordinate planes (or the cylinder plane)
  std::vector<Vector> weak_normals;    // normals at 0 of the weak separatrices
  std::string note;

  bool is_saddle_node() const {
    return code == ModelCode::B1 || code == ModelCode::B2 || code == ModelCode::b1;
  }
};

/// Matches the jet of w against the simple models after straightening three
/// invariant smooth surfaces (divisor branches, hints, coordinate planes) into
/// coordinate planes.
Model3Match match_simple_model3(const OneForm3& w, const LocalDivisor& D = {}, int jet_order = 8,
                                int resonance_bound = 25, const std::vector<MPoly>& separatrix_hints = {});

/// Def. of well orientation for D-simple points.
/// Some nonzero m >= 0 with sum m_i x_i = 0, decided exactly.
std::optional<std::vector<Integer>> resonance_witness(const std::vector<FieldElement>& xs);

bool well_oriented3(const Model3Match& m, const LocalDivisor& D);

enum class CornerCode { SimpleCorner, Trace };
const char* to_string(CornerCode c);
CornerCode corner_or_trace(const Model3Match& m, const LocalDivisor& D);

/// Map (u, v) -> (phi_1, phi_2, phi_3) with phi_i = u^r_i v^s_i unit_i.
struct SectionMap {
  std::array<MPoly, 3> phi;
  int prec = PSeries::kExact;
  std::array<int, 3> r{}, s{};
  std::array<MPoly, 3> unit;
  std::array<bool, 3> is_zero{};
  std::array<bool, 3> monomial_type{};  // unit(0) != 0

  SectionMap() = default;
  explicit SectionMap(std::array<MPoly, 3> components, int prec = PSeries::kExact);
  std::string to_string() const;
};

/// Pull-back with the monomial factor removed, normalized.
OneForm2 pullback_section(const OneForm3& w, const SectionMap& phi);

/// Sing(phi^* w) minus the origin is contained in the branches of E.
bool generic_transversality_check(const OneForm3& w, const SectionMap& phi, const LocalDivisor& E = {},
                                  int jet_order = 8);

/// Pre-image of the branches of D through the origin of the section.
LocalDivisor pullback_divisor(const LocalDivisor& D, const SectionMap& phi);

struct SectionWitness {
  SectionMap section;
  int trial = -1;
  SingularityRecord record;
};

struct SecondType3Verdict {
  enum class Kind { SecondType, NotSecondType, Inconclusive };
  Kind kind = Kind::Inconclusive;
  int trials_run = 0;
  int trials_used = 0;  // transversal, nu0-preserving sections
  std::optional<SectionWitness> witness;
  std::string evidence;
};
const char* to_string(SecondType3Verdict::Kind k);

SecondType3Verdict second_type3_via_sections(const OneForm3& w, int trials = 16, std::uint64_t seed = 1,
                                             const LocalDivisor& D = {}, int jet_order = 8);

/// One blow-up of a script: the center sits at the origin of the chart reached
/// by `chart` (labels from the root) and is the point or a coordinate axis.
struct ScriptCenter {
  std::vector<std::string> chart;
  int axis = -1;  // -1: point; 0, 1, 2: x, y, z axis of the chart
  std::string to_string() const;
};

struct HarnessRecord {
  std::string chart;
  std::string location;  // point coordinates or "generic point of ..."
  std::string kind;      // "point" or "curve"
  std::string code;
  bool simple = false;
  bool well_oriented = true;
};

struct HarnessReport {
  bool all_simple = true;
  int blowups = 0;
  int charts = 0;
  std::vector<HarnessRecord> records;
};

/// Runs the script, then checks every triple point of divisor plus separatrix
/// components and the generic point of every double curve.
HarnessReport theorem_main_harness(const OneForm3& w, const std::vector<MPoly>& separatrix_components,
                                   const std::vector<ScriptCenter>& script, int jet_order = 8);

}  // namespace folab
