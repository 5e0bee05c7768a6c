#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "folab/cli.hpp"
#include "folab/parse.hpp"
#include "json.hpp"

namespace folab {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : Error {
  using Error::Error;
};

std::string fe(const FieldElement& x) { return x.to_string(); }

Json leaf_json(const SingularityRecord& r) {
  return Json{{"chart", r.path.to_string()},
              {"class", to_string(r.code.kind)},
              {"code", r.code.to_string()},
              {"well_oriented", r.well_oriented}};
}

Json jet_json(const CurveJet& j) {
  Json g = Json::array();
  for (const auto& c : j.gamma) g.push_back(c.to_string());
  Json out{{"gamma", g}};
  if (j.prec < PSeries::kExact) out["prec"] = j.prec;
  return out;
}

LocalDivisor divisor2(const OneForm2& w, const std::vector<MPoly>& eqs) {
  LocalDivisor d;
  for (size_t i = 0; i < eqs.size(); ++i) {
    if (!eqs[i].constant_term().is_zero()) throw UsageError("divisor branch " + eqs[i].to_string() + " misses the origin");
    d.branches.push_back({eqs[i], invariant_curve_implicit(w, eqs[i]), -1, "D" + std::to_string(i + 1)});
  }
  return d;
}

LocalDivisor divisor3(const OneForm3& w, const std::vector<MPoly>& eqs) {
  LocalDivisor d;
  for (size_t i = 0; i < eqs.size(); ++i) {
    if (!eqs[i].constant_term().is_zero()) throw UsageError("divisor branch " + eqs[i].to_string() + " misses the origin");
    d.branches.push_back({eqs[i], invariant_surface3(w, eqs[i]), -1, "D" + std::to_string(i + 1)});
  }
  return d;
}

const OneForm2& need2(const ParsedInput& in, Command c) {
  if (!in.omega2) throw UsageError(std::string(to_string(c)) + " needs an omega2 input");
  return *in.omega2;
}

const OneForm3& need3(const ParsedInput& in, Command c) {
  if (!in.omega3) throw UsageError(std::string(to_string(c)) + " needs an omega3 input");
  return *in.omega3;
}

const ProjFoliation& need_proj(const ParsedInput& in, Command c, int dim) {
  if (!in.proj || in.proj->dimension() != dim)
    throw UsageError(std::string(to_string(c)) + " needs a proj" + std::to_string(dim) + " input");
  return *in.proj;
}

MPoly product(const std::vector<MPoly>& fs) {
  MPoly p = fs.front();
  for (size_t i = 1; i < fs.size(); ++i) p *= fs[i];
  return p;
}

struct Report {
  Json json;
  std::string dot;
  bool inconclusive = false;
  void note(const std::string& severity, const std::string& msg) {
    json["diagnostics"].push_back(Json{{"severity", severity}, {"message", msg}});
  }
};

/// Plane pipeline: the reduction plus whatever the command asks for.
void plane_report(Report& rep, const JobSpec& job, const OneForm2& w, const LocalDivisor& E) {
  const JobOptions& o = job.options;
  ReduceOptions ro;
  ro.max_depth = o.max_depth;
  ro.jet_order = o.jet_order;
  ro.max_field_degree = o.max_field_degree;
  const Command c = job.command;
  Json& j = rep.json;

  j["nu0"] = nu0(w);
  if (c == Command::Analyze2 || c == Command::Reduce2) {
    try {
      j["mu0"] = mu0(w);
    } catch (const DomainError& e) {
      rep.note("info", std::string("mu0 not finite: ") + e.what());
    }
  }
  const ReductionTree tree = seidenberg_reduce(w, E, ro);
  bool dicritical = false;
  for (const auto& comp : tree.components) dicritical = dicritical || comp.dicritical;
  j["dicritical"] = dicritical;

  Json red{{"blowups", tree.blowups}, {"leaves", Json::array()}, {"tree", canonical_tree(tree)}};
  for (const auto& l : tree.leaves) red["leaves"].push_back(leaf_json(l));
  if (!job.dot_ref.empty()) red["dual_graph_ref"] = job.dot_ref;
  j["reduction"] = red;
  rep.dot = dual_graph(tree).to_dot();

  if (c == Command::Analyze2 || c == Command::SecondType2) {
    const SecondTypeResult st = is_second_type2(w, E, ro);
    Json wit = Json::array();
    for (const auto& r : st.witnesses) wit.push_back(leaf_json(r));
    j["second_type"] = Json{{"verdict", st.value}, {"witnesses", wit}};
  }
  if (c == Command::Analyze2 && E.branches.empty()) j["generalized_curve"] = is_generalized_curve2(w, ro);
  if (c == Command::Analyze2 || c == Command::Separatrices) {
    if (dicritical) {
      rep.note("info", "dicritical reduction: infinitely many separatrices, none listed");
    } else {
      const SeparatrixSet s = separatrices2(w, tree, o.truncation);
      Json arr = Json::array();
      for (const auto& b : s.branches) {
        Json tags = Json::array({to_string(b.role), b.analytic ? "analytic" : "formal"});
        arr.push_back(Json{{"equation", b.equation.to_string()},
                           {"jet", jet_json(b.jet)},
                           {"leaf", b.leaf.to_string()},
                           {"tags", tags}});
      }
      j["separatrices"] = arr;
      j["separatrix_equation"] = s.g.to_string();
    }
  }
  if (c == Command::Analyze2 || c == Command::SecondType2) {
    if (dicritical) {
      rep.note("info", "dicritical reduction: multiplicity identity not evaluated");
    } else {
      const MultiplicityReport m = multiplicity_identity_check(w, E, o.truncation);
      j["identity_check"] = Json{{"nu_form", m.nu_form}, {"nu_dg", m.nu_dg}, {"equal", m.equal}};
    }
  }
}

Json model_json(const Model3Match& m, const LocalDivisor& D) {
  Json res = Json::array(), seps = Json::array();
  for (const auto& r : m.residues) res.push_back(fe(r));
  for (const auto& s : m.separatrices) seps.push_back(s.to_string());
  Json out{{"test", "model-match3"}, {"model", to_string(m.code)}, {"tau", m.tau}, {"residues", res}};
  if (m.code == ModelCode::B1 || m.code == ModelCode::B2 || m.code == ModelCode::B3 || m.code == ModelCode::b1 ||
      m.code == ModelCode::b2) {
    out["p"] = Json::array({m.p[0], m.p[1], m.p[2]});
    out["lambda2"] = fe(m.lambda2);
    out["lambda3"] = fe(m.lambda3);
  }
  out["separatrices"] = seps;
  if (m.code != ModelCode::NotSimple && m.code != ModelCode::Regular) {
    out["well_oriented"] = well_oriented3(m, D);
    if (!D.branches.empty()) out["corner"] = to_string(corner_or_trace(m, D));
  }
  if (!m.note.empty()) out["note"] = m.note;
  return out;
}

void indices_report(Report& rep, const JobSpec& job, const ParsedInput& in) {
  const ProjFoliation& F = need_proj(in, job.command, 2);
  Json& j = rep.json;
  Json ix{{"degree", F.degree}, {"expected_bb", (F.degree + 2) * (F.degree + 2)}};
  Json pts = Json::array();
  if (in.separatrix.empty()) {
    FieldElement sum;
    for (const auto& p : plane_singularities(F, job.options.max_field_degree)) {
      const IndexValue bb = bb_index_resolved(p.local);
      sum += bb.value;
      pts.push_back(Json{{"point", p.label()},
                         {"class", to_string(p.record.code.kind)},
                         {"multiplicity", p.multiplicity},
                         {"bb", fe(bb.value)}});
    }
    ix["points"] = pts;
    ix["sum_bb"] = fe(sum);
    ix["bb_ok"] = sum == FieldElement((F.degree + 2) * (F.degree + 2));
    j["indices"] = ix;
    return;
  }
  const MPoly C = product(in.separatrix);
  const SumReport s = sum_theorem_check(F, C, job.options.max_field_degree);
  for (const auto& p : s.points) {
    Json q{{"point", p.point}, {"class", to_string(p.kind)}, {"multiplicity", p.multiplicity}, {"bb", fe(p.bb)},
           {"bb_route", p.bb_route}, {"on_curve", p.on_curve}};
    if (p.cs_curve) q["cs"] = fe(*p.cs_curve);
    if (p.gsv_curve) q["gsv"] = fe(*p.gsv_curve);
    if (p.cs_total) q["cs_total"] = fe(*p.cs_total);
    if (p.gsv_total) q["gsv_total"] = fe(*p.gsv_total);
    if (p.relation) q["relation"] = *p.relation;
    pts.push_back(q);
  }
  ix["curve"] = C.to_string();
  ix["d0"] = s.d0;
  ix["points"] = pts;
  ix["sum_cs"] = fe(s.sum_cs);
  ix["sum_gsv"] = fe(s.sum_gsv);
  ix["sum_bb"] = fe(s.sum_bb);
  ix["expected_cs"] = s.d0 * s.d0;
  ix["expected_gsv"] = (s.d + 2) * s.d0 - s.d0 * s.d0;
  ix["cs_ok"] = s.cs_ok;
  ix["gsv_ok"] = s.gsv_ok;
  ix["bb_ok"] = s.bb_ok;
  ix["relation_ok"] = s.relation_ok;
  j["indices"] = ix;
}

/// Plane sections tried in order; the first transversal one is used.
std::vector<Matrix> candidate_sections() {
  const auto M = [](std::initializer_list<std::initializer_list<long>> rows) {
    Matrix m;
    for (const auto& r : rows) {
      Vector v;
      for (long x : r) v.push_back(FieldElement(x));
      m.push_back(v);
    }
    return m;
  };
  return {M({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, -3, 5}}), M({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {3, 7, -4}}),
          M({{1, 2, 0}, {0, 1, -1}, {3, 0, 1}, {-2, 5, 7}}), M({{2, 1, 1}, {1, -3, 2}, {5, 1, -1}, {1, 4, 3}})};
}

void criterion_report(Report& rep, const JobSpec& job, const ParsedInput& in) {
  const ProjFoliation& F = need_proj(in, job.command, 3);
  if (in.separatrix.empty()) throw UsageError("log-criterion needs the surface S in a separatrix block");
  const MPoly S = product(in.separatrix);
  if (!invariant_hypersurface(F, S)) throw DomainError("S is not invariant");
  const CriterionHypotheses hyp{job.options.assume_separatrices_in_S, job.options.assume_first_integrals_off_S};
  std::optional<CriterionReport> r;
  Matrix used;
  std::string last;
  for (const auto& H : candidate_sections()) {
    try {
      r = logarithmic_criterion(F, S, H, hyp, job.options.max_field_degree);
      used = H;
      break;
    } catch (const DomainError& e) {
      last = e.what();
      rep.note("info", "section skipped: " + last);
    }
  }
  if (!r) throw DomainError("no transversal plane section among the candidates: " + last);

  Json h = Json::array();
  for (const auto& row : used) {
    Json jr = Json::array();
    for (const auto& x : row) jr.push_back(fe(x));
    h.push_back(jr);
  }
  const SumReport& s = r->section;
  rep.json["indices"] = Json{{"degree", s.d},       {"d0", s.d0},         {"sum_cs", fe(s.sum_cs)},
                             {"sum_gsv", fe(s.sum_gsv)}, {"sum_bb", fe(s.sum_bb)}, {"cs_ok", s.cs_ok},
                             {"gsv_ok", s.gsv_ok},  {"bb_ok", s.bb_ok}, {"relation_ok", s.relation_ok}};
  Json v{{"test", "log-criterion"},
         {"verdict", to_string(r->verdict)},
         {"d", r->d},
         {"d0", r->d0},
         {"slack", r->slack.get_str()},
         {"section", h},
         {"bb_on_S", fe(r->bb_on_S)},
         {"expected_bb_on_S", fe(r->expected_bb_on_S)},
         {"bb_off_S", fe(r->bb_off_S)}};
  if (r->bb_off_S_nonpositive) v["bb_off_S_nonpositive"] = *r->bb_off_S_nonpositive;
  v["sums_consistent"] = r->sums_consistent;
  v["hypotheses"] = Json{{"separatrices_in_S", hyp.separatrices_in_S}, {"first_integrals_off_S", hyp.first_integrals_off_S}};
  v["note"] = r->note;
  rep.json["verdict3"] = v;
}

void dispatch(Report& rep, const JobSpec& job, const ParsedInput& in) {
  const JobOptions& o = job.options;
  switch (job.command) {
    case Command::Analyze2:
    case Command::Reduce2:
    case Command::Separatrices:
    case Command::SecondType2: {
      const OneForm2& w = need2(in, job.command);
      plane_report(rep, job, w, divisor2(w, in.divisor));
      return;
    }
    case Command::SecondType3: {
      const OneForm3& w = need3(in, job.command);
      if (!o.seed) throw UsageError("second-type3 samples sections and needs --seed");
      const LocalDivisor D = divisor3(w, in.divisor);
      rep.json["nu0"] = nu0(w);
      const SecondType3Verdict v = second_type3_via_sections(w, o.trials, *o.seed, D, o.jet_order);
      Json out{{"test", "second-type3"},
               {"verdict", to_string(v.kind)},
               {"trials_run", v.trials_run},
               {"trials_used", v.trials_used},
               {"evidence", v.evidence}};
      if (v.witness) {
        out["witness"] = Json{{"section", v.witness->section.to_string()},
                              {"trial", v.witness->trial},
                              {"record", leaf_json(v.witness->record)}};
      }
      rep.json["verdict3"] = out;
      rep.inconclusive = v.kind == SecondType3Verdict::Kind::Inconclusive;
      return;
    }
    case Command::ModelMatch3: {
      const OneForm3& w = need3(in, job.command);
      const LocalDivisor D = divisor3(w, in.divisor);
      rep.json["nu0"] = nu0(w);
      rep.json["verdict3"] = model_json(match_simple_model3(w, D, o.jet_order, o.resonance_bound, in.separatrix), D);
      return;
    }
    case Command::TheoremMain: {
      const OneForm3& w = need3(in, job.command);
      if (in.separatrix.empty()) throw UsageError("theorem-main needs the separatrix components of S");
      const HarnessReport h = theorem_main_harness(w, in.separatrix, in.script, o.jet_order);
      Json script = Json::array(), recs = Json::array();
      for (const auto& c : in.script) script.push_back(c.to_string());
      for (const auto& r : h.records)
        recs.push_back(Json{{"chart", r.chart},
                            {"location", r.location},
                            {"kind", r.kind},
                            {"code", r.code},
                            {"simple", r.simple},
                            {"well_oriented", r.well_oriented}});
      rep.json["nu0"] = nu0(w);
      rep.json["verdict3"] = Json{{"test", "theorem-main"},
                                  {"all_simple", h.all_simple},
                                  {"script", script},
                                  {"blowups", h.blowups},
                                  {"charts", h.charts},
                                  {"records", recs}};
      return;
    }
    case Command::Indices: indices_report(rep, job, in); return;
    case Command::LogCriterion: criterion_report(rep, job, in); return;
  }
}

bool tree_bearing(Command c) {
  return c == Command::Analyze2 || c == Command::Reduce2 || c == Command::Separatrices || c == Command::SecondType2;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Analyze2: return "analyze2";
    case Command::Reduce2: return "reduce2";
    case Command::Separatrices: return "separatrices";
    case Command::SecondType2: return "second-type2";
    case Command::SecondType3: return "second-type3";
    case Command::ModelMatch3: return "model-match3";
    case Command::TheoremMain: return "theorem-main";
    case Command::Indices: return "indices";
    case Command::LogCriterion: return "log-criterion";
  }
  return "?";
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (int k = 0; k <= static_cast<int>(Command::LogCriterion); ++k) out.push_back(to_string(static_cast<Command>(k)));
  return out;
}

std::optional<Command> command_from_string(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(Command::LogCriterion); ++k)
    if (s == to_string(static_cast<Command>(k))) return static_cast<Command>(k);
  return std::nullopt;
}

std::string validate(const JobOptions& o) {
  const auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  if (!in(o.jet_order, 2, 64)) return "--jet-order must lie in [2, 64]";
  if (!in(o.max_depth, 1, 256)) return "--max-depth must lie in [1, 256]";
  if (!in(o.trials, 0, 10000)) return "--trials must lie in [0, 10000]";
  if (!in(o.truncation, 4, 64)) return "--truncation must lie in [4, 64]";
  if (!in(o.resonance_bound, 1, 1000)) return "--resonance-bound must lie in [1, 1000]";
  if (!in(o.max_field_degree, 1, 2)) return "maximal field degree must be 1 or 2";
  return {};
}

JobResult run(const JobSpec& job) {
  JobResult res;
  res.input_name = job.input_name.empty() ? std::filesystem::path(job.input_path).filename().string() : job.input_name;
  Report rep;
  Json& j = rep.json;
  j["input"] = res.input_name;
  j["command"] = to_string(job.command);
  const JobOptions& o = job.options;
  Json opts{{"jet_order", o.jet_order}, {"max_depth", o.max_depth}, {"trials", o.trials}, {"truncation", o.truncation},
            {"resonance_bound", o.resonance_bound}, {"max_field_degree", o.max_field_degree}};
  if (o.seed) opts["seed"] = *o.seed;
  j["options"] = opts;
  j["diagnostics"] = Json::array();

  int code = kExitOk;
  try {
    if (const std::string bad = validate(o); !bad.empty()) throw UsageError(bad);
    const ParsedInput in = parse_form(job.text ? *job.text : read_file(job.input_path));
    j["kind"] = to_string(in.kind);
    j["field"] = in.field().to_string();
    if (in.field().extension_degree() > o.max_field_degree)
      throw FieldExtensionError("input needs " + in.field().to_string() + ", above the maximal field degree");
    dispatch(rep, job, in);
    if (rep.inconclusive) code = kExitInconclusive;
  } catch (const UsageError& e) {
    code = kExitUsage;
    rep.note("error", e.what());
  } catch (const ParseError& e) {
    code = kExitUsage;
    rep.note("error", e.what());
  } catch (const DomainError& e) {
    code = kExitUsage;
    rep.note("error", e.what());
  } catch (const InconclusiveError& e) {
    code = kExitInconclusive;
    rep.note("error", std::string("inconclusive: ") + e.what());
  } catch (const FieldExtensionError& e) {
    code = kExitInconclusive;
    rep.note("error", std::string("field extension: ") + e.what());
  } catch (const DepthExhaustedError& e) {
    code = kExitInconclusive;
    rep.note("error", std::string("depth exhausted: ") + e.what());
  } catch (const std::exception& e) {
    code = kExitUsage;
    rep.note("error", e.what());
  }
  Json diagnostics = j["diagnostics"];
  j.erase("diagnostics");
  j["diagnostics"] = diagnostics;
  j["status"] = code == kExitOk ? "ok" : (code == kExitUsage ? "usage-error" : "inconclusive");
  res.exit_code = code;
  res.json = j.dump(2) + "\n";
  if (tree_bearing(job.command)) res.dot = rep.dot;
  return res;
}

std::vector<JobResult> run_all(const std::vector<JobSpec>& jobs) {
  std::vector<std::future<JobResult>> futures;
  for (const auto& job : jobs) futures.push_back(std::async(std::launch::async, [&job] { return run(job); }));
  std::vector<JobResult> out;
  for (auto& f : futures) out.push_back(f.get());
  std::stable_sort(out.begin(), out.end(),
                   [](const JobResult& a, const JobResult& b) { return a.input_name < b.input_name; });
  return out;
}

int max_field_degree_from_env() {
  const char* v = std::getenv("FOLIATION_LAB_MAX_FIELD_DEG");
  if (!v || !*v) return 2;
  const std::string s(v);
  if (!std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 6 || std::stoi(s) < 1)
    throw DomainError("FOLIATION_LAB_MAX_FIELD_DEG must be a positive integer, got '" + s + "'");
  return std::min(std::stoi(s), 2);
}

}  // namespace folab
