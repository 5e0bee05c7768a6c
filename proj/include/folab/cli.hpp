#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "folab/indices.hpp"
#include "folab/threefold.hpp"

namespace folab {

enum class InputKind { Omega2, Omega3, Proj2, Proj3 };
const char* to_string(InputKind k);

/// One input file: a single form plus the optional declared data blocks.
///
///   # comment
///   omega2: (v^2 - u*v) du + u^2 dv
///   divisor: { u; v }
///   separatrix: { x*y*z }
///   script: [ origin:axis:z; y:axis:z; y>x:point ]
///
/// The header selects the variables: omega2 {u, v}, omega3 {x, y, z},
/// proj2 {X, Y, Z}, proj3 {X, Y, Z, W}. Blocks may span several lines.
struct ParsedInput {
  InputKind kind = InputKind::Omega2;
  std::optional<OneForm2> omega2;
  std::optional<OneForm3> omega3;
  std::optional<ProjFoliation> proj;
  std::vector<MPoly> divisor;
  std::vector<MPoly> separatrix;
  std::vector<ScriptCenter> script;

  FieldDescriptor field() const;
};

/// Throws ParseError with the line and column of the offending character.
ParsedInput parse_form(const std::string& text);

/// Script entry `path:point` or `path:axis:x|y|z`, path `origin` or chart
/// labels joined by `>`.
ScriptCenter parse_script_center(const std::string& text);

enum class Command {
  Analyze2,
  Reduce2,
  Separatrices,
  SecondType2,
  SecondType3,
  ModelMatch3,
  TheoremMain,
  Indices,
  LogCriterion
};
const char* to_string(Command c);
std::optional<Command> command_from_string(const std::string& s);
std::vector<std::string> command_names();

struct JobOptions {
  int jet_order = 8;        // 2..64
  int max_depth = 64;       // 1..256
  int trials = 16;          // 0..10000
  std::optional<std::uint64_t> seed;  // required by second-type3
  int truncation = 12;      // 4..64
  int resonance_bound = 25;  // 1..1000
  int max_field_degree = 2;  // 1 or 2
  bool assume_separatrices_in_S = false;
  bool assume_first_integrals_off_S = false;
};

/// Empty when the options are in range, else the first violation.
std::string validate(const JobOptions& o);

struct JobSpec {
  Command command = Command::Analyze2;
  std::string input_path;
  std::string input_name;  // report label; defaults to the file name
  std::optional<std::string> text;  // used instead of reading input_path
  JobOptions options;
  std::string dot_ref;  // recorded in reduction.dual_graph_ref when set
};

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitInconclusive = 2 };

struct JobResult {
  std::string input_name;
  int exit_code = kExitOk;
  std::string json;  // always a complete report
  std::string dot;   // tree-bearing commands only
};

JobResult run(const JobSpec& job);

/// Runs the jobs concurrently; results are ordered by input name.
std::vector<JobResult> run_all(const std::vector<JobSpec>& jobs);

/// Reads FOLIATION_LAB_MAX_FIELD_DEG (default 2). Throws DomainError on a
/// value that is not a positive integer; values above 2 are capped.
int max_field_degree_from_env();

/// Published JSON schema of the reports.
const std::string& report_schema();

}  // namespace folab
