#include <future>
#include <random>

#include "folab/errors.hpp"
#include "folab/threefold.hpp"

namespace folab {

const char* to_string(SecondType3Verdict::Kind k) {
  switch (k) {
    case SecondType3Verdict::Kind::SecondType: return "SecondType";
    case SecondType3Verdict::Kind::NotSecondType: return "NotSecondType";
    case SecondType3Verdict::Kind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

SectionMap::SectionMap(std::array<MPoly, 3> components, int p) : phi(std::move(components)), prec(p) {
  for (size_t i = 0; i < 3; ++i) {
    const MPoly& f = phi[i];
    is_zero[i] = f.is_zero();
    if (is_zero[i]) {
      unit[i] = f;
      continue;
    }
    r[i] = f.order_in(0);
    s[i] = f.order_in(1);
    unit[i] = f.divided_by_var(0, r[i]).divided_by_var(1, s[i]);
    monomial_type[i] = !unit[i].constant_term().is_zero();
  }
}

std::string SectionMap::to_string() const {
  return "(" + phi[0].to_string() + ", " + phi[1].to_string() + ", " + phi[2].to_string() + ")";
}

namespace {

bool maps_origin_to_origin(const SectionMap& phi) {
  for (const auto& f : phi.phi)
    if (!f.constant_term().is_zero()) return false;
  return true;
}

std::vector<MPoly> raw_pullback(const OneForm3& w, const SectionMap& phi) {
  if (!w.is_exact() && !maps_origin_to_origin(phi))
    throw InconclusiveError("series form cannot be sectioned away from the origin");
  std::vector<MPoly> images(phi.phi.begin(), phi.phi.end());
  return pullback_coeffs({w.A, w.B, w.C}, images, std::min(w.prec, phi.prec));
}

int section_prec(const OneForm3& w, const SectionMap& phi) {
  int p = std::min(w.prec, phi.prec);
  return p >= PSeries::kExact ? PSeries::kExact : p - 1;
}

}  // namespace

OneForm2 pullback_section(const OneForm3& w, const SectionMap& phi) {
  auto pulled = raw_pullback(w, phi);
  const int prec = section_prec(w, phi);
  OneForm2 g(pulled[0], pulled[1], prec);
  if (prec < PSeries::kExact) g = OneForm2(g.A.truncated(prec), g.B.truncated(prec), prec);
  if (g.is_zero()) throw DomainError("section pull-back vanishes: non-transversal section");
  return normalize2(g);
}

LocalDivisor pullback_divisor(const LocalDivisor& D, const SectionMap& phi) {
  std::vector<MPoly> images(phi.phi.begin(), phi.phi.end());
  LocalDivisor out;
  auto add = [&](const DivisorBranch& src, MPoly eq) {
    for (const auto& b : out.branches)
      if (MPoly::divide(b.eq, eq) && MPoly::divide(eq, b.eq)) return;
    DivisorBranch t = src;
    t.eq = std::move(eq);
    out.branches.push_back(std::move(t));
  };
  for (const auto& b : D.branches) {
    MPoly f = b.eq.substitute(images);
    if (f.is_zero() || !f.constant_term().is_zero()) continue;
    int r = f.order_in(0), s = f.order_in(1);
    MPoly rest = f.divided_by_var(0, r).divided_by_var(1, s);
    if (!rest.constant_term().is_zero()) {
      if (r > 0) add(b, MPoly::variable(kVarsUV, 0));
      if (s > 0) add(b, MPoly::variable(kVarsUV, 1));
      continue;
    }
    if (r + s > 0 || rest.order() != 1) throw DomainError("divisor pull-back is not normal crossings");
    add(b, rest);
  }
  if (out.e0() > 2) throw DomainError("divisor pull-back is not normal crossings");
  return out;
}

bool generic_transversality_check(const OneForm3& w, const SectionMap& phi, const LocalDivisor& E, int jet_order) {
  auto pulled = raw_pullback(w, phi);
  MPoly P = pulled[0], Q = pulled[1];
  if (P.is_zero() && Q.is_zero()) throw DomainError("section pull-back vanishes: non-transversal section");
  const int prec = section_prec(w, phi);
  if (prec < PSeries::kExact) {
    P = P.truncated(prec);
    Q = Q.truncated(prec);
  }
  // Common factors along E are allowed; the rest must meet only at the origin.
  int dropped = 0;
  for (const auto& b : E.branches) {
    while (!P.is_zero() || !Q.is_zero()) {
      auto p = P.is_zero() ? std::optional<MPoly>(P) : MPoly::divide(P, b.eq);
      auto q = Q.is_zero() ? std::optional<MPoly>(Q) : MPoly::divide(Q, b.eq);
      if (!p || !q) break;
      P = *p;
      Q = *q;
      ++dropped;
    }
  }
  if (!P.constant_term().is_zero() || !Q.constant_term().is_zero()) return true;
  const int bound = prec >= PSeries::kExact ? PSeries::kExact : std::min(prec - dropped, jet_order + 1);
  try {
    local_intersection_dimension(P, Q, bound);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

namespace {

struct TrialResult {
  bool used = false;
  bool witness = false;
  SingularityRecord record;
  std::string skipped;
};

bool axis_singular(const OneForm3& w, int axis) {
  for (int i = 0; i < 3; ++i)
    for (const auto& [e, c] : w.coeff(i).terms()) {
      bool pure = true;
      for (int j = 0; j < 3; ++j)
        if (j != axis && e[static_cast<size_t>(j)] != 0) pure = false;
      if (pure) return false;
    }
  return true;
}

OneForm3 moved_to(const OneForm3& w, int axis, const FieldElement& c) { return translate3(w, axis, c); }

TrialResult run_trial(const OneForm3& w, const LocalDivisor& D, const SectionMap& phi, int target_nu, int jet_order) {
  TrialResult out;
  try {
    OneForm2 g = pullback_section(w, phi);
    if (nu0(g) != target_nu) {
      out.skipped = "nu0 changed";
      return out;
    }
    LocalDivisor E = pullback_divisor(D, phi);
    if (!generic_transversality_check(w, phi, E, jet_order)) {
      out.skipped = "not generically transversal";
      return out;
    }
    auto st = is_second_type2(g, E);
    out.used = true;
    if (!st.value) {
      out.witness = true;
      out.record = st.witnesses.front();
    }
  } catch (const FieldExtensionError& e) {
    out.skipped = e.what();
  } catch (const DepthExhaustedError& e) {
    out.skipped = e.what();
  } catch (const InconclusiveError& e) {
    out.skipped = e.what();
  } catch (const DomainError& e) {
    out.skipped = e.what();
  }
  return out;
}

}  // namespace

SecondType3Verdict second_type3_via_sections(const OneForm3& w_in, int trials, std::uint64_t seed,
                                             const LocalDivisor& D, int jet_order) {
  SecondType3Verdict verdict;
  OneForm3 w = normalize3(w_in);
  for (int i = 0; i < 3; ++i)
    if (!w.coeff(i).constant_term().is_zero()) {
      verdict.kind = SecondType3Verdict::Kind::SecondType;
      verdict.evidence = "regular point";
      return verdict;
    }
  const int nu = nu0(w);
  std::vector<int> sing_axes;
  for (int k = 0; k < 3; ++k)
    if (axis_singular(w, k)) sing_axes.push_back(k);

  // Sections are drawn up front so the outcome does not depend on scheduling.
  std::mt19937_64 rng(seed);
  auto small = [&]() { return static_cast<long>(rng() % 7) - 3; };
  const MPoly u = MPoly::variable(kVarsUV, 0), v = MPoly::variable(kVarsUV, 1);
  struct Planned {
    SectionMap phi;
    OneForm3 form;
    LocalDivisor divisor;
    int nu = 0;
  };
  std::vector<Planned> plan;
  for (int t = 0; t < trials; ++t) {
    const bool through_origin = t % 2 == 0 || sing_axes.empty() || !w.is_exact();
    std::array<MPoly, 3> comps;
    for (auto& c : comps) c = u.scaled(FieldElement(small())) + v.scaled(FieldElement(small()));
    // Unit perturbation keeps the section off special linear configurations.
    comps[static_cast<size_t>(t % 3)] += (u * v).scaled(FieldElement(small()));
    if (through_origin) {
      plan.push_back({SectionMap(comps), w, D, nu});
      continue;
    }
    const int k = sing_axes[static_cast<size_t>(t / 2) % sing_axes.size()];
    long c = small();
    if (c == 0) c = 1;
    // Transversal to the axis at c e_k: the other two coordinates follow (u, v).
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    comps[static_cast<size_t>(i)] = u + v.scaled(FieldElement(small()));
    comps[static_cast<size_t>(j)] = v + u.scaled(FieldElement(small()));
    OneForm3 moved = moved_to(w, k, FieldElement(c));
    LocalDivisor dm = branches_at_origin(translate_divisor(D, k, FieldElement(c)));
    plan.push_back({SectionMap(comps), moved, dm, nu0(normalize3(moved))});
  }

  std::vector<std::future<TrialResult>> futures;
  for (const auto& p : plan)
    futures.push_back(std::async(std::launch::async, run_trial, std::cref(p.form), std::cref(p.divisor),
                                 std::cref(p.phi), p.nu, jet_order));
  std::vector<TrialResult> results;
  for (auto& f : futures) results.push_back(f.get());

  verdict.trials_run = trials;
  for (size_t t = 0; t < results.size(); ++t) {
    if (results[t].used) ++verdict.trials_used;
    if (results[t].witness && !verdict.witness) {
      verdict.witness = SectionWitness{plan[t].phi, static_cast<int>(t), results[t].record};
    }
  }
  if (verdict.witness) {
    verdict.kind = SecondType3Verdict::Kind::NotSecondType;
    verdict.evidence = "tangent saddle-node in section " + verdict.witness->section.to_string() + " at " +
                       verdict.witness->record.path.to_string();
    return verdict;
  }
  if (verdict.trials_used == 0) {
    verdict.evidence = "no usable section";
    return verdict;
  }
  // Generic points of the singular axes, over the parameter field.
  if (!w.is_exact() && !sing_axes.empty()) {
    verdict.evidence = "singular curves of a series form cannot be sectioned at their generic point";
    return verdict;
  }
  const FieldElement s = FieldElement::parameter("s");
  for (int k : sing_axes) {
    OneForm3 moved = normalize3(translate3(w, k, s));
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    std::array<MPoly, 3> comps;
    comps[static_cast<size_t>(k)] = MPoly(kVarsUV);
    comps[static_cast<size_t>(std::min(i, j))] = u;
    comps[static_cast<size_t>(std::max(i, j))] = v;
    SectionMap phi(comps);
    try {
      OneForm2 g = pullback_section(moved, phi);
      LocalDivisor E = pullback_divisor(branches_at_origin(translate_divisor(D, k, s)), phi);
      SingularityRecord rec = classify_point2(g, E, jet_order);
      bool ok = rec.code.kind != PointClass::NonSimple && rec.well_oriented;
      if (!ok) {
        verdict.evidence = std::string("generic point of the ") + "xyz"[k] + "-axis: " + rec.code.to_string();
        return verdict;
      }
    } catch (const Error& e) {
      verdict.evidence = std::string("generic point of the ") + "xyz"[k] + "-axis: " + e.what();
      return verdict;
    }
  }
  verdict.kind = SecondType3Verdict::Kind::SecondType;
  verdict.evidence = std::to_string(verdict.trials_used) + " clean sections; " + std::to_string(sing_axes.size()) +
                     " singular axes simple at their generic point";
  return verdict;
}

}  // namespace folab
