#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "folab/cli.hpp"

namespace fs = std::filesystem;

namespace {

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  return static_cast<bool>(f);
}

/// Single input: the path itself. Several inputs: a directory, one file per
/// input named after its stem.
fs::path target(const std::string& out, const std::string& input_name, const char* ext, bool many) {
  if (!many) return out;
  return fs::path(out) / (fs::path(input_name).stem().string() + ext);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction of singularities, separatrices, second-type tests and index sums for foliations"};
  std::string command;
  std::vector<std::string> inputs;
  folab::JobOptions opts;
  std::uint64_t seed = 0;
  std::string out, dot;
  bool schema = false;

  app.add_option("command", command, "One of: analyze2 reduce2 separatrices second-type2 second-type3 "
                                      "model-match3 theorem-main indices log-criterion");
  app.add_option("inputs", inputs, "Input files (one form per file)");
  app.add_option("--jet-order", opts.jet_order, "Jet order used by the classifiers (2..64)");
  app.add_option("--max-depth", opts.max_depth, "Maximal reduction depth (1..256)");
  app.add_option("--trials", opts.trials, "Number of random sections for second-type3 (0..10000)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed of the section sampler (required by second-type3)");
  app.add_option("--truncation", opts.truncation, "Truncation order N of separatrix jets (4..64)");
  app.add_option("--resonance-bound", opts.resonance_bound, "Resonance bound annotated on 3-D witnesses (1..1000)");
  app.add_option("--out", out, "Report file (one input) or directory (several inputs); stdout when absent");
  app.add_option("--dot", dot, "Dual graph file (one input) or directory (several inputs)");
  app.add_flag("--assume-separatrices-in-S", opts.assume_separatrices_in_S,
               "log-criterion: declare that the local separatrices lie in S");
  app.add_flag("--assume-first-integrals-off-S", opts.assume_first_integrals_off_S,
               "log-criterion: declare holomorphic first integrals at the points off S");
  app.add_flag("--schema", schema, "Print the JSON schema of the reports and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : folab::kExitUsage;
  }
  if (schema) {
    std::cout << folab::report_schema();
    return 0;
  }
  const auto cmd = folab::command_from_string(command);
  if (!cmd) {
    std::cerr << "unknown command '" << command << "'\n" << app.help();
    return folab::kExitUsage;
  }
  if (inputs.empty()) {
    std::cerr << "no input files\n";
    return folab::kExitUsage;
  }
  try {
    opts.max_field_degree = folab::max_field_degree_from_env();
  } catch (const folab::DomainError& e) {
    std::cerr << e.what() << "\n";
    return folab::kExitUsage;
  }
  if (seed_opt->count() > 0) opts.seed = seed;

  const bool many = inputs.size() > 1;
  for (const auto& dir : {out, dot})
    if (many && !dir.empty()) fs::create_directories(dir);

  std::vector<folab::JobSpec> jobs;
  for (const auto& path : inputs) {
    folab::JobSpec job;
    job.command = *cmd;
    job.input_path = path;
    job.options = opts;
    if (!dot.empty()) job.dot_ref = target(dot, fs::path(path).filename().string(), ".dot", many).string();
    jobs.push_back(job);
  }

  int status = folab::kExitOk;
  for (const auto& r : folab::run_all(jobs)) {
    if (out.empty()) {
      std::cout << r.json;
    } else if (!write_file(target(out, r.input_name, ".json", many), r.json)) {
      std::cerr << "cannot write the report of " << r.input_name << "\n";
      status = folab::kExitUsage;
    }
    if (!dot.empty() && !r.dot.empty() && !write_file(target(dot, r.input_name, ".dot", many), r.dot)) {
      std::cerr << "cannot write the dual graph of " << r.input_name << "\n";
      status = folab::kExitUsage;
    }
    if (r.exit_code == folab::kExitUsage) status = folab::kExitUsage;
    else if (r.exit_code == folab::kExitInconclusive && status == folab::kExitOk) status = folab::kExitInconclusive;
  }
  return status;
}
