#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folab/blowup.hpp"
#include "folab/errors.hpp"
#include "folab/forms.hpp"

namespace folab {

enum class LinearCode { SimpleNonDegenerate, SaddleNodeCandidate, NonSimple };
enum class PointClass { Regular, SimpleNonDegenerate, SaddleNode, NonSimple };
enum class Adapted { ERegular, ESimple, Unadapted };

const char* to_string(LinearCode c);
const char* to_string(PointClass c);
const char* to_string(Adapted a);

/// Tangent direction (d1 : d2) at the origin.
using Direction = std::array<FieldElement, 2>;
std::string direction_string(const Direction& d);
bool same_direction(const Direction& a, const Direction& b);
/// Tangent direction of the smooth curve f = 0 at the origin.
Direction tangent_direction(const MPoly& f);
/// Normalized kernel direction of a singular, nonzero 2x2 matrix.
Direction kernel_direction(const Mat2& n);

struct ClassCode {
  PointClass kind = PointClass::Regular;
  Adapted adapted = Adapted::Unadapted;
  Direction strong{}, weak{};  // saddle-nodes only
  std::string to_string() const;
};

struct SingularityRecord {
  ChartPath path;
  OneForm2 form;
  LocalDivisor divisor;
  ClassCode code;
  bool well_oriented = true;
  Mat2 linear{};
  int node = -1;  // tree node holding the point
};

LinearCode classify_linear2(const Mat2& m);

/// Classifies the point at the origin with respect to the divisor branches
/// through it.
SingularityRecord classify_point2(const OneForm2& w, const LocalDivisor& E, int jet_order = 8);

/// Jet of the invariant smooth curve tangent to `dir`, written as a graph over
/// the first coordinate (or the second when d1 = 0), to the given order.
/// nullopt when no formal invariant graph is tangent to the direction.
std::optional<CurveJet> invariant_graph(const OneForm2& w, const Direction& dir, int order);

struct DivisorComponent {
  int id = 0;
  int created_at = -1;  // tree node whose blow-up created it
  bool dicritical = false;
  int self_intersection = -1;
};

struct TreeNode {
  int id = 0;
  int parent = -1;
  int depth = 0;  // blow-ups above this point
  ChartPath path;
  OneForm2 form;          // local form in (u, v), exceptional branches first coordinate
  LocalDivisor divisor;   // branches through the point
  std::array<MPoly, 2> to_parent;  // parent (u, v) in terms of the local (u, v)
  bool blown_up = false;
  int component = -1;  // component created by the blow-up
  bool dicritical = false;
  std::vector<int> children;
  int record = -1;  // index into ReductionTree::leaves
};

struct ReductionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the origin
  std::vector<DivisorComponent> components;
  std::vector<std::pair<int, int>> edges;  // intersecting components (a < b)
  std::vector<SingularityRecord> leaves;   // final singular points
  int blowups = 0;
};

struct ReduceOptions {
  int max_depth = 64;
  int jet_order = 8;
  int max_field_degree = 2;
  bool force_root_blowup = false;
};

class ReductionDepthError : public DepthExhaustedError {
 public:
  ReductionDepthError(const std::string& msg, ReductionTree partial)
      : DepthExhaustedError(msg), partial_(std::move(partial)) {}
  const ReductionTree& partial() const { return partial_; }

 private:
  ReductionTree partial_;
};

ReductionTree seidenberg_reduce(const OneForm2& w, const LocalDivisor& E = {}, const ReduceOptions& opts = {});

struct SecondTypeResult {
  bool value = true;
  std::vector<SingularityRecord> witnesses;
};

SecondTypeResult is_second_type2(const OneForm2& w, const LocalDivisor& E = {}, const ReduceOptions& opts = {});
bool is_generalized_curve2(const OneForm2& w, const ReduceOptions& opts = {});

struct DualGraph {
  struct Vertex {
    int component;
    int self_intersection;
    bool dicritical;
  };
  struct HalfEdge {
    int component;
    std::string decoration;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<HalfEdge> half_edges;
  std::string to_dot() const;
};

DualGraph dual_graph(const ReductionTree& tree);

/// Canonical string of the rooted tree of centers with dicritical tags and
/// leaf decorations; trees are equivalent when the strings agree.
std::string canonical_tree(const ReductionTree& tree);
bool trees_equivalent(const ReductionTree& a, const ReductionTree& b);

}  // namespace folab
