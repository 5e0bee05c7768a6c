#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "corpus.hpp"
#include "folab/cli.hpp"
#include "folab/parse.hpp"
#include "schema_check.hpp"

using namespace folab;
using corpus::uv;
using Json = nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(FOLAB_DATA_DIR) + "/" + name; }

JobSpec job(Command c, const std::string& file, JobOptions o = {}) {
  JobSpec j;
  j.command = c;
  j.input_path = data(file);
  j.options = o;
  return j;
}

JobSpec inline_job(Command c, const std::string& text, JobOptions o = {}) {
  JobSpec j;
  j.command = c;
  j.input_name = "inline";
  j.text = text;
  j.options = o;
  return j;
}

Json report(const JobResult& r) { return Json::parse(r.json); }

int parse_error_column(const std::string& text) {
  try {
    parse_form(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return -1;
}

}  // namespace

TEST_CASE("parse_form examples") {
  const ParsedInput t = parse_form("omega2: (v^2 - u*v) du + u^2 dv");
  REQUIRE(t.omega2);
  CHECK(t.kind == InputKind::Omega2);
  CHECK(t.omega2->A == uv("v^2 - u*v"));
  CHECK(t.omega2->B == uv("u^2"));

  const ParsedInput l = parse_form("omega3: y*z dx + x*z dy + rt(2)*x*y dz");
  REQUIRE(l.omega3);
  CHECK(l.field().sqrt_of == 2);
  CHECK(l.omega3->C == corpus::xyz("rt(2)*x*y"));

  CHECK(parse_error_column("omega2: du +") == 12);
}

TEST_CASE("parse_form blocks, comments and several lines") {
  const ParsedInput in = parse_form(
      "# header comment\n"
      "omega3: 2*x*z dx - 3*y^2*z dy\n"
      "        + (x^2 - y^3) dz   # continued\n"
      "divisor: { z }\n"
      "separatrix: {\n"
      "  x^2 - y^3;\n"
      "  z\n"
      "}\n"
      "script: [ origin:axis:z; y:axis:z, y>x:point ]\n");
  REQUIRE(in.omega3);
  CHECK(in.omega3->C == corpus::xyz("x^2 - y^3"));
  CHECK(in.divisor.size() == 1);
  REQUIRE(in.separatrix.size() == 2);
  CHECK(in.separatrix[0] == corpus::xyz("x^2 - y^3"));
  REQUIRE(in.script.size() == 3);
  CHECK(in.script[0].chart.empty());
  CHECK(in.script[0].axis == 2);
  CHECK(in.script[2].chart == std::vector<std::string>{"y", "x"});
  CHECK(in.script[2].axis == -1);

  const ParsedInput p = parse_form("proj2: Y*Z dX + rt(2)*X*Z dY + (-1 - rt(2))*X*Y dZ\nseparatrix: { X*Y*Z }");
  REQUIRE(p.proj);
  CHECK(p.proj->degree == 1);
  CHECK(p.separatrix.front() == parse_poly("X*Y*Z", kVarsP2));
}

TEST_CASE("parse_form errors") {
  CHECK_THROWS_AS(parse_form(""), ParseError);
  CHECK_THROWS_AS(parse_form("u du"), ParseError);
  CHECK_THROWS_AS(parse_form("omega2: v du\nomega2: u dv"), ParseError);
  CHECK_THROWS_AS(parse_form("omega2: v du\ndivisor: { u"), ParseError);
  CHECK_THROWS_AS(parse_form("omega2: v du\nscript: [ origin:cone ]"), ParseError);
  CHECK_THROWS_AS(parse_form("omega2: v dx"), ParseError);
  try {
    parse_form("omega2: v du\n\ndivisor: { u + * v }");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 16);
  }
  CHECK_THROWS_AS(parse_script_center("origin:axis:w"), DomainError);
  CHECK(parse_script_center("x>y:axis:x").to_string() == "x>y:axis:x");
}

TEST_CASE("run examples") {
  const JobResult cusp = run(job(Command::Reduce2, "cusp.form"));
  CHECK(cusp.exit_code == kExitOk);
  CHECK(report(cusp)["reduction"]["blowups"] == 3);
  CHECK(cusp.dot.rfind("graph", 0) == 0);

  const JobResult tangent = run(job(Command::SecondType2, "tangent.form"));
  CHECK(tangent.exit_code == kExitOk);
  const Json t = report(tangent);
  CHECK(t["second_type"]["verdict"] == false);
  REQUIRE(t["second_type"]["witnesses"].size() == 1);
  CHECK(!t["second_type"]["witnesses"][0]["chart"].get<std::string>().empty());
  CHECK(t["identity_check"]["nu_form"] == 2);
  CHECK(t["identity_check"]["nu_dg"] == 1);

  JobOptions few;
  few.trials = 0;
  few.seed = 1;
  const JobResult low = run(job(Command::SecondType3, "log3.form", few));
  CHECK(low.exit_code == kExitInconclusive);
  CHECK(report(low)["verdict3"]["verdict"] == "Inconclusive");
}

TEST_CASE("run exit codes") {
  CHECK(run(job(Command::SecondType3, "log3.form")).exit_code == kExitUsage);  // no seed
  CHECK(run(job(Command::Reduce2, "log3.form")).exit_code == kExitUsage);      // wrong kind
  CHECK(run(job(Command::Reduce2, "missing.form")).exit_code == kExitUsage);
  CHECK(run(inline_job(Command::Reduce2, "omega2: du +")).exit_code == kExitUsage);

  JobOptions bad;
  bad.jet_order = 1;
  CHECK(run(job(Command::Reduce2, "cusp.form", bad)).exit_code == kExitUsage);

  JobOptions rational;
  rational.max_field_degree = 1;
  const JobResult ext = run(job(Command::Analyze2, "node_divisor.form", rational));
  CHECK(ext.exit_code == kExitInconclusive);
  CHECK(report(ext)["status"] == "inconclusive");

  JobOptions shallow;
  shallow.max_depth = 1;
  CHECK(run(job(Command::Reduce2, "cusp.form", shallow)).exit_code == kExitInconclusive);

  const JobResult bad_curve = run(inline_job(Command::Indices, "proj2: Y*Z dX + 2*X*Z dY - 3*X*Y dZ\nseparatrix: { X + Y }"));
  CHECK(bad_curve.exit_code == kExitUsage);
}

TEST_CASE("reports follow the schema") {
  const Json schema_json = Json::parse(report_schema());
  JobOptions seeded;
  seeded.seed = 3;
  seeded.trials = 6;
  const std::vector<std::pair<Command, std::string>> cases = {
      {Command::Analyze2, "cusp.form"},           {Command::Analyze2, "euler.form"},
      {Command::Analyze2, "dicritical.form"},     {Command::Analyze2, "node_divisor.form"},
      {Command::Reduce2, "saddle_node.form"},     {Command::Separatrices, "tangent.form"},
      {Command::SecondType2, "tangent.form"},     {Command::SecondType3, "tangent3.form"},
      {Command::ModelMatch3, "log3.form"},        {Command::TheoremMain, "cusp_line3.form"},
      {Command::TheoremMain, "planes3.form"},     {Command::Indices, "triangle.form"},
      {Command::LogCriterion, "four_planes.form"}, {Command::Reduce2, "log3.form"},
      {Command::Indices, "missing.form"}};
  for (const auto& [c, f] : cases) {
    CAPTURE(f);
    CAPTURE(to_string(c));
    const JobResult r = run(job(c, f, seeded));
    CHECK(schema::check(report(r), schema_json) == "");
  }
  const JobResult bare = run(inline_job(Command::Indices, "proj2: Y*Z dX + 2*X*Z dY - 3*X*Y dZ"));
  CHECK(bare.exit_code == kExitOk);
  CHECK(schema::check(report(bare), schema_json) == "");
  CHECK(report(bare)["indices"]["sum_bb"] == "9");
}

TEST_CASE("run_all orders by input name and is deterministic") {
  JobOptions seeded;
  seeded.seed = 5;
  seeded.trials = 4;
  std::vector<JobSpec> jobs = {job(Command::Analyze2, "tangent.form"), job(Command::Analyze2, "euler.form"),
                               job(Command::Analyze2, "cusp.form")};
  const auto a = run_all(jobs);
  REQUIRE(a.size() == 3);
  CHECK(a[0].input_name == "cusp.form");
  CHECK(a[1].input_name == "euler.form");
  CHECK(a[2].input_name == "tangent.form");
  std::reverse(jobs.begin(), jobs.end());
  const auto b = run_all(jobs);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].json == b[i].json);
    CHECK(a[i].dot == b[i].dot);
  }
  const JobResult s1 = run(job(Command::SecondType3, "tangent3.form", seeded));
  const JobResult s2 = run(job(Command::SecondType3, "tangent3.form", seeded));
  CHECK(s1.json == s2.json);
}

TEST_CASE("option validation") {
  CHECK(validate(JobOptions{}).empty());
  JobOptions o;
  o.truncation = 100;
  CHECK_FALSE(validate(o).empty());
  o = {};
  o.max_field_degree = 3;
  CHECK_FALSE(validate(o).empty());
  CHECK(command_from_string("log-criterion") == Command::LogCriterion);
  CHECK_FALSE(command_from_string("reduce3"));
  CHECK(command_names().size() == 9);
}
