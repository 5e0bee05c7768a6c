#include <algorithm>
#include <numeric>

#include "folab/errors.hpp"
#include "folab/linalg.hpp"
#include "folab/threefold.hpp"

namespace folab {

const char* to_string(ModelCode c) {
  switch (c) {
    case ModelCode::A: return "A";
    case ModelCode::B1: return "B1";
    case ModelCode::B2: return "B2";
    case ModelCode::B3: return "B3";
    case ModelCode::a: return "a";
    case ModelCode::b1: return "b1";
    case ModelCode::b2: return "b2";
    case ModelCode::Regular: return "Regular";
    case ModelCode::NotSimple: return "NotSimple";
  }
  return "?";
}

const char* to_string(CornerCode c) { return c == CornerCode::SimpleCorner ? "SimpleCorner" : "Trace"; }

namespace {

Exponent exp3(int a, int b, int c) { return Exponent{a, b, c, 0}; }

MPoly var3(int i) { return MPoly::variable(kVarsXYZ, i); }

// Terms of total degree < bound (everything for exact input).
MPoly jet_of(const MPoly& p, int bound) { return bound >= PSeries::kExact ? p : p.truncated(bound); }

FieldElement linear_coeff(const MPoly& f, int var) {
  Exponent e{};
  e[static_cast<size_t>(var)] = 1;
  return f.coeff(e);
}

Vector gradient0(const MPoly& f) { return {linear_coeff(f, 0), linear_coeff(f, 1), linear_coeff(f, 2)}; }

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const FieldElement& x) { return x.is_zero(); });
}

bool parallel(const Vector& a, const Vector& b) {
  return (a[0] * b[1] - a[1] * b[0]).is_zero() && (a[0] * b[2] - a[2] * b[0]).is_zero() &&
         (a[1] * b[2] - a[2] * b[1]).is_zero();
}

Vector cross(const Vector& a, const Vector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Coefficient vector of a RatFunc combination over Q: rows of the relation system.
void append_ratfunc_rows(const std::vector<RatFunc>& xs, Matrix& rows) {
  UPolyQ common = UPolyQ::constant(1);
  for (const auto& x : xs) common = common * x.den();
  std::vector<UPolyQ> scaled;
  int top = 0;
  for (const auto& x : xs) {
    UPolyQ q, r;
    UPolyQ::divmod(common, x.den(), q, r);
    scaled.push_back(x.num() * q);
    top = std::max(top, scaled.back().degree());
  }
  for (int d = 0; d <= top; ++d) {
    Vector row;
    for (const auto& p : scaled) row.emplace_back(p.coeff(d));
    rows.push_back(std::move(row));
  }
}

}  // namespace

// Some m in Z>=0^n, m != 0, with sum m_i x_i = 0. Decided exactly over the tower.
std::optional<std::vector<Integer>> resonance_witness(const std::vector<FieldElement>& xs) {
  const int n = static_cast<int>(xs.size());
  std::vector<RatFunc> ra, rb;
  for (const auto& x : xs) {
    ra.push_back(x.rational_part());
    rb.push_back(x.irrational_part());
  }
  Matrix rows;
  append_ratfunc_rows(ra, rows);
  append_ratfunc_rows(rb, rows);
  auto basis = nullspace(rows, n);
  auto integral = [](Vector v) {
    Integer den = 1;
    for (auto& c : v) den = lcm(den, c.to_rational().get_den());
    std::vector<Integer> out;
    Integer g = 0;
    for (auto& c : v) {
      Rational q = c.to_rational() * Rational(den);
      out.push_back(q.get_num());
      g = gcd(g, q.get_num());
    }
    if (g != 0)
      for (auto& o : out) o /= abs(g);
    return out;
  };
  if (basis.empty()) return std::nullopt;
  if (basis.size() == 1) {
    auto m = integral(basis[0]);
    bool nonneg = std::all_of(m.begin(), m.end(), [](const Integer& k) { return k >= 0; });
    bool nonpos = std::all_of(m.begin(), m.end(), [](const Integer& k) { return k <= 0; });
    if (nonpos)
      for (auto& k : m) k = -k;
    if (nonneg || nonpos) return m;
    return std::nullopt;
  }
  // Relation space of dimension >= 2: intersect with each coordinate 2-plane
  // spanned by pairs and look for a nonnegative combination.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<FieldElement> pair{xs[static_cast<size_t>(i)], xs[static_cast<size_t>(j)]};
      if (xs[static_cast<size_t>(i)].is_zero() || xs[static_cast<size_t>(j)].is_zero()) {
        std::vector<Integer> m(static_cast<size_t>(n), 0);
        m[static_cast<size_t>(xs[static_cast<size_t>(i)].is_zero() ? i : j)] = 1;
        return m;
      }
      auto sub = resonance_witness(pair);
      if (sub) {
        std::vector<Integer> m(static_cast<size_t>(n), 0);
        m[static_cast<size_t>(i)] = (*sub)[0];
        m[static_cast<size_t>(j)] = (*sub)[1];
        return m;
      }
    }
  // All pairwise ratios positive: a nonnegative relation would need a sign change.
  return std::nullopt;
}

namespace {

bool positive_rational(const FieldElement& x) { return x.is_rational() && x.to_rational() > 0; }

// Negative rational eigenvalue ratio of a 2x2 linear part.
bool eigen_ratio_negative_rational(const Mat2& m) {
  FieldElement tr = m[0][0] + m[1][1];
  FieldElement det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det.is_zero()) return false;
  FieldElement q = tr * tr / det;
  if (!q.is_rational()) return false;
  Rational qq = q.to_rational();
  if (qq > 0) return false;
  return is_rational_square(qq * (qq - 4));
}

// Primitive positive integer vector proportional to xs (all ratios positive rational).
std::array<int, 3> primitive(const std::vector<FieldElement>& xs) {
  std::vector<Rational> r;
  for (const auto& x : xs) r.push_back((x / xs.front()).to_rational());
  Integer den = 1;
  for (const auto& q : r) den = lcm(den, q.get_den());
  Integer g = 0;
  std::vector<Integer> v;
  for (const auto& q : r) {
    v.push_back(Rational(q * Rational(den)).get_num());
    g = gcd(g, v.back());
  }
  std::array<int, 3> out{};
  for (size_t i = 0; i < v.size() && i < 3; ++i) out[i] = static_cast<int>(Integer(v[i] / g).get_si());
  return out;
}

// Inverse of the map X = F(x) (F(0) = 0, invertible linear part) to total degree < bound.
std::vector<MPoly> formal_inverse(const std::vector<MPoly>& F, int bound) {
  Matrix J(3, Vector(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) J[static_cast<size_t>(i)][static_cast<size_t>(j)] = linear_coeff(F[static_cast<size_t>(i)], j);
  Matrix Jinv(3, Vector(3));
  for (int c = 0; c < 3; ++c) {
    Vector e(3);
    e[static_cast<size_t>(c)] = FieldElement(1);
    auto col = solve(J, e, 3);
    if (!col) throw DomainError("straightening: surfaces are not transversal");
    for (int r = 0; r < 3; ++r) Jinv[static_cast<size_t>(r)][static_cast<size_t>(c)] = (*col)[static_cast<size_t>(r)];
  }
  auto apply = [&](const std::vector<MPoly>& v) {
    std::vector<MPoly> out(3, MPoly(kVarsXYZ));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (!Jinv[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero())
          out[static_cast<size_t>(r)] += v[static_cast<size_t>(c)].scaled(Jinv[static_cast<size_t>(r)][static_cast<size_t>(c)]);
    return out;
  };
  std::vector<MPoly> X{var3(0), var3(1), var3(2)};
  std::vector<MPoly> G = apply(X);
  bool linear = std::all_of(F.begin(), F.end(), [](const MPoly& f) { return f.total_degree() <= 1; });
  if (linear) return G;
  for (int it = 0; it < bound; ++it) {
    std::vector<MPoly> rhs(3);
    for (int i = 0; i < 3; ++i) {
      MPoly lin(kVarsXYZ);
      for (int j = 0; j < 3; ++j)
        if (!J[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero())
          lin += G[static_cast<size_t>(j)].scaled(J[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      MPoly nonlinear = F[static_cast<size_t>(i)].substitute(G, bound) - lin;
      rhs[static_cast<size_t>(i)] = X[static_cast<size_t>(i)] - nonlinear.truncated(bound);
    }
    std::vector<MPoly> next = apply(rhs);
    if (next == G) break;
    G = std::move(next);
  }
  return G;
}

bool coordinate_plane(const MPoly& f, int& index) {
  if (f.size() != 1 || f.total_degree() != 1) return false;
  const Exponent& e = f.terms().begin()->first;
  for (int i = 0; i < 3; ++i)
    if (e[static_cast<size_t>(i)] == 1) index = i;
  return true;
}

// Monomials of p that are powers of the monomial x^w (w != 0), i.e. resonant terms.
MPoly resonant_part(const MPoly& p, const std::array<int, 3>& w) {
  MPoly out(p.vars());
  for (const auto& [e, c] : p.terms()) {
    int k = -1;
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      if (w[static_cast<size_t>(i)] == 0) {
        ok = e[static_cast<size_t>(i)] == 0;
        continue;
      }
      if (e[static_cast<size_t>(i)] % w[static_cast<size_t>(i)] != 0) ok = false;
      int ki = e[static_cast<size_t>(i)] / w[static_cast<size_t>(i)];
      if (k < 0) k = ki;
      else if (k != ki) ok = false;
    }
    if (ok && k > 0) out.add_term(e, c);
  }
  return out;
}

// Lowest term (by total degree, then lex) of a nonzero polynomial.
std::pair<Exponent, FieldElement> lowest_term(const MPoly& p) {
  const std::pair<const Exponent, FieldElement>* best = nullptr;
  for (const auto& t : p.terms())
    if (!best || total_degree(t.first) < total_degree(best->first)) best = &t;
  return {best->first, best->second};
}

LocalDivisor invariant_branches_at_origin(const LocalDivisor& D) {
  LocalDivisor out;
  for (const auto& b : branches_at_origin(D).branches)
    if (b.invariant) out.branches.push_back(b);
  return out;
}

}  // namespace

std::optional<Vector> cylinder_direction(const OneForm3& w, int jet_order) {
  const int bound = std::min(w.prec, jet_order + 1);
  std::array<MPoly, 3> c{jet_of(w.A, bound), jet_of(w.B, bound), jet_of(w.C, bound)};
  std::map<Exponent, Vector> rows;
  for (int i = 0; i < 3; ++i)
    for (const auto& [e, coeff] : c[static_cast<size_t>(i)].terms()) {
      auto& row = rows.try_emplace(e, Vector(3)).first->second;
      row[static_cast<size_t>(i)] = coeff;
    }
  Matrix m;
  for (auto& [e, row] : rows) m.push_back(row);
  auto basis = nullspace(m, 3);
  for (const auto& X : basis) {
    std::array<MPoly, 3> lx;
    for (int j = 0; j < 3; ++j) {
      MPoly d(kVarsXYZ);
      for (int i = 0; i < 3; ++i)
        if (!X[static_cast<size_t>(i)].is_zero()) d += c[static_cast<size_t>(j)].derivative(i).scaled(X[static_cast<size_t>(i)]);
      lx[static_cast<size_t>(j)] = d;
    }
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i)
      for (int j = i + 1; j < 3 && ok; ++j) {
        MPoly minor = lx[static_cast<size_t>(i)] * c[static_cast<size_t>(j)] - lx[static_cast<size_t>(j)] * c[static_cast<size_t>(i)];
        ok = jet_of(minor, bound - 1).is_zero();
      }
    if (ok) return X;
  }
  return std::nullopt;
}

namespace {

bool axis_in_sing(const OneForm3& w, int axis) {
  for (int i = 0; i < 3; ++i)
    for (const auto& [e, c] : w.coeff(i).terms()) {
      bool pure = true;
      for (int j = 0; j < 3; ++j)
        if (j != axis && e[static_cast<size_t>(j)] != 0) pure = false;
      if (pure && total_degree(e) < w.prec) return false;
    }
  return true;
}

}  // namespace

std::optional<int> dimensional_type(const OneForm3& w, int jet_order) {
  for (int i = 0; i < 3; ++i)
    if (!w.coeff(i).constant_term().is_zero()) return 1;
  if (cylinder_direction(w, jet_order)) return 2;
  int axes = 0;
  for (int k = 0; k < 3; ++k)
    if (axis_in_sing(w, k)) ++axes;
  // A cylinder over a plane singularity has a single smooth singular curve.
  if (axes >= 2) return 3;
  return std::nullopt;
}

namespace {

void check_adapted(int tau, const LocalDivisor& D) {
  if (D.branches.empty()) return;
  LocalDivisor at0 = branches_at_origin(D);
  int inv = at0.invariant_count(), dic = at0.dicritical_count();
  if (inv < tau - 1 || inv > tau || dic > 3 - tau)
    throw DomainError("unadapted divisor: e0(D') = " + std::to_string(inv) + ", e0(D*) = " + std::to_string(dic) +
                      ", tau = " + std::to_string(tau));
}

Model3Match match_cylinder(const OneForm3& w, const LocalDivisor& D, int jet_order, const Vector& X) {
  Model3Match m;
  m.tau = 2;
  int k = 0;
  while (X[static_cast<size_t>(k)].is_zero()) ++k;
  int i = (k + 1) % 3, j = (k + 2) % 3;
  if (i > j) std::swap(i, j);
  std::vector<MPoly> images(3, MPoly(kVarsUV));
  images[static_cast<size_t>(i)] = MPoly::variable(kVarsUV, 0);
  images[static_cast<size_t>(j)] = MPoly::variable(kVarsUV, 1);
  auto pulled = pullback_coeffs({w.A, w.B, w.C}, images, w.prec);
  OneForm2 w2 = normalize2(OneForm2(pulled[0], pulled[1], w.prec));
  LocalDivisor E;
  for (const auto& b : branches_at_origin(D).branches) {
    DivisorBranch t = b;
    t.eq = b.eq.substitute(images);
    if (t.eq.is_zero()) continue;
    E.branches.push_back(std::move(t));
  }
  SingularityRecord rec = classify_point2(w2, E, jet_order);
  switch (rec.code.kind) {
    case PointClass::Regular: m.code = ModelCode::Regular; break;
    case PointClass::SaddleNode: {
      m.code = ModelCode::b1;
      Vector w3(3);
      w3[static_cast<size_t>(i)] = rec.code.weak[0];
      w3[static_cast<size_t>(j)] = rec.code.weak[1];
      m.weak_normals.push_back(cross(X, w3));
      break;
    }
    case PointClass::SimpleNonDegenerate:
      m.code = eigen_ratio_negative_rational(rec.linear) ? ModelCode::b2 : ModelCode::a;
      break;
    case PointClass::NonSimple: m.code = ModelCode::NotSimple; break;
  }
  m.note = "section " + w2.to_string() + ": " + rec.code.to_string();
  return m;
}

}  // namespace

Model3Match match_simple_model3(const OneForm3& w_in, const LocalDivisor& D, int jet_order, int resonance_bound,
                                const std::vector<MPoly>& separatrix_hints) {
  OneForm3 w = normalize3(w_in);
  Model3Match m;
  auto tau = dimensional_type(w, jet_order);
  if (tau && *tau == 1) {
    m.tau = 1;
    m.code = ModelCode::Regular;
    check_adapted(1, D);
    return m;
  }
  if (tau && *tau == 2) {
    check_adapted(2, D);
    return match_cylinder(w, D, jet_order, *cylinder_direction(w, jet_order));
  }
  m.tau = 3;
  check_adapted(3, D);

  // Three invariant smooth transversal surfaces, divisor branches first.
  std::vector<MPoly> candidates;
  for (const auto& b : invariant_branches_at_origin(D).branches) candidates.push_back(b.eq);
  for (const auto& h : separatrix_hints)
    if (h.constant_term().is_zero()) candidates.push_back(h);
  for (int i = 0; i < 3; ++i) candidates.push_back(var3(i));
  std::vector<MPoly> chosen;
  Matrix grads;
  for (const auto& f : candidates) {
    if (chosen.size() == 3) break;
    Vector g = gradient0(f);
    if (is_zero_vector(g)) continue;
    Matrix trial = grads;
    trial.push_back(g);
    if (rank(trial, 3) != static_cast<int>(trial.size())) continue;
    if (!invariant_surface3(w, f)) continue;
    chosen.push_back(f);
    grads = std::move(trial);
  }
  if (chosen.size() < 3) {
    m.code = ModelCode::NotSimple;
    m.note = "fewer than three invariant smooth transversal surfaces through the origin";
    return m;
  }
  m.separatrices = chosen;

  // Straighten: new coordinates X_i = chosen_i.
  OneForm3 s = w;
  std::array<int, 3> perm{};
  bool coordinate = true;
  for (int i = 0; i < 3; ++i) {
    int idx = -1;
    if (!coordinate_plane(chosen[static_cast<size_t>(i)], idx)) coordinate = false;
    perm[static_cast<size_t>(i)] = idx;
  }
  if (!coordinate) {
    const int bound = std::min(w.prec, jet_order + 2);
    auto G = formal_inverse(chosen, bound);
    bool linear = std::all_of(chosen.begin(), chosen.end(), [](const MPoly& f) { return f.total_degree() <= 1; });
    int prec = linear ? w.prec : bound - 1;
    auto pulled = pullback_coeffs({w.A, w.B, w.C}, G, linear ? w.prec : bound);
    if (!linear)
      for (auto& p : pulled) p = p.truncated(prec);
    s = normalize3(OneForm3(pulled[0], pulled[1], pulled[2], prec));
  } else {
    // Coordinate planes, possibly scaled and permuted.
    std::vector<MPoly> images(3);
    for (int i = 0; i < 3; ++i) {
      const FieldElement c = chosen[static_cast<size_t>(i)].terms().begin()->second;
      images[static_cast<size_t>(perm[static_cast<size_t>(i)])] = var3(i).scaled(c.inverse());
    }
    auto pulled = pullback_coeffs({w.A, w.B, w.C}, images, w.prec);
    s = OneForm3(pulled[0], pulled[1], pulled[2], w.prec);
  }

  // Residues of s / (xyz) on the coordinate planes.
  std::vector<FieldElement> lambda{s.A.coeff(exp3(0, 1, 1)), s.B.coeff(exp3(1, 0, 1)), s.C.coeff(exp3(1, 1, 0))};
  m.residues = lambda;
  std::vector<int> nonzero, zero;
  for (int i = 0; i < 3; ++i) (lambda[static_cast<size_t>(i)].is_zero() ? zero : nonzero).push_back(i);
  auto normal_of = [&](int plane) { return gradient0(chosen[static_cast<size_t>(plane)]); };
  // Reduced coefficient a_i = s_i / (product of the other two coordinates).
  auto reduced = [&](int i) {
    MPoly p = s.coeff(i);
    for (int j = 0; j < 3; ++j)
      if (j != i) p = p.divided_by_var(j, 1);
    return p;
  };

  if (nonzero.size() == 3) {
    if (auto res = resonance_witness(lambda)) {
      m.code = ModelCode::NotSimple;
      Integer total = 0;
      std::string txt;
      for (const auto& k : *res) {
        total += k;
        txt += (txt.empty() ? "" : ",") + k.get_str();
      }
      m.note = "resonant residues, m = (" + txt + ")" + (total > resonance_bound ? " beyond the search bound" : "");
      return m;
    }
    bool positive = positive_rational(lambda[1] / lambda[0]) && positive_rational(lambda[2] / lambda[0]);
    if (!positive) {
      m.code = ModelCode::A;
      return m;
    }
    m.code = ModelCode::B3;
    m.p = primitive(lambda);
    const FieldElement a0 = lambda[0];
    MPoly a = reduced(0), hb = reduced(1).scaled(m.p[0]) - a.scaled(m.p[1]),
          hc = reduced(2).scaled(m.p[0]) - a.scaled(m.p[2]);
    hb = resonant_part(jet_of(hb, s.prec - 2), m.p);
    hc = resonant_part(jet_of(hc, s.prec - 2), m.p);
    if (!hb.is_zero() || !hc.is_zero()) {
      if (hb.is_zero() || hc.is_zero() || total_degree(lowest_term(hb).first) != total_degree(lowest_term(hc).first)) {
        m.code = ModelCode::NotSimple;
        m.note = "phi part with a vanishing coefficient";
        return m;
      }
      m.lambda2 = FieldElement(1);
      m.lambda3 = lowest_term(hc).second / lowest_term(hb).second;
      m.phi = PSeries(hb.scaled(a0.inverse()), s.prec - 2);
      if (resonance_witness({m.lambda2, m.lambda3})) {
        m.code = ModelCode::NotSimple;
        m.note = "resonant phi coefficients";
        return m;
      }
    }
    return m;
  }
  if (nonzero.size() == 2) {
    const int i1 = nonzero[0], i2 = nonzero[1], k = zero[0];
    if (!positive_rational(lambda[static_cast<size_t>(i2)] / lambda[static_cast<size_t>(i1)])) {
      m.code = ModelCode::NotSimple;
      m.note = "two residues with ratio outside Q>0";
      return m;
    }
    m.code = ModelCode::B2;
    auto p = primitive({lambda[static_cast<size_t>(i1)], lambda[static_cast<size_t>(i2)]});
    m.p = {p[0], p[1], 0};
    std::array<int, 3> weights{};
    weights[static_cast<size_t>(i1)] = p[0];
    weights[static_cast<size_t>(i2)] = p[1];
    const int top = s.prec - 2;
    MPoly h1 = (reduced(i2).scaled(p[0]) - reduced(i1).scaled(p[1])).evaluate_var(k, 0);
    MPoly h2 = reduced(k).evaluate_var(k, 0);
    h1 = resonant_part(jet_of(h1, top), weights);
    h2 = resonant_part(jet_of(h2, top), weights);
    if (h1.is_zero() || h2.is_zero() || total_degree(lowest_term(h1).first) != total_degree(lowest_term(h2).first)) {
      m.code = ModelCode::NotSimple;
      m.note = "phi part not detected on the zero-residue plane within the jet";
      return m;
    }
    m.lambda2 = FieldElement(1);
    m.lambda3 = lowest_term(h2).second * FieldElement(p[0]) / lowest_term(h1).second;
    m.phi = PSeries(h1.scaled(lambda[static_cast<size_t>(i1)].inverse()), top);
    if (resonance_witness({m.lambda2, m.lambda3})) {
      m.code = ModelCode::NotSimple;
      m.note = "resonant phi coefficients";
      return m;
    }
    m.weak_normals.push_back(normal_of(k));
    return m;
  }
  if (nonzero.size() == 1) {
    const int k = nonzero[0], j1 = zero[0], j2 = zero[1];
    const int top = s.prec - 2;
    MPoly b = jet_of(reduced(j1), top), c = jet_of(reduced(j2), top);
    for (int v : {j1, j2}) {
      b = b.evaluate_var(v, 0);
      c = c.evaluate_var(v, 0);
    }
    if (b.is_zero() || c.is_zero() || lowest_term(b).first != lowest_term(c).first) {
      m.code = ModelCode::NotSimple;
      m.note = "phi part not detected on the nonzero-residue axis within the jet";
      return m;
    }
    m.code = ModelCode::B1;
    m.p = {1, 0, 0};
    m.lambda2 = FieldElement(1);
    m.lambda3 = lowest_term(c).second / lowest_term(b).second;
    m.phi = PSeries(b.scaled(lambda[static_cast<size_t>(k)].inverse()), top);
    if (resonance_witness({m.lambda2, m.lambda3})) {
      m.code = ModelCode::NotSimple;
      m.note = "resonant phi coefficients";
      return m;
    }
    m.weak_normals.push_back(normal_of(j1));
    m.weak_normals.push_back(normal_of(j2));
    return m;
  }
  m.code = ModelCode::NotSimple;
  m.note = "all residues vanish";
  return m;
}

bool well_oriented3(const Model3Match& m, const LocalDivisor& D) {
  if (m.code == ModelCode::NotSimple) throw DomainError("well orientation needs a simple point");
  if (!m.is_saddle_node()) return true;
  for (const auto& b : invariant_branches_at_origin(D).branches) {
    Vector g = gradient0(b.eq);
    for (const auto& n : m.weak_normals)
      if (parallel(g, n)) return false;
  }
  return true;
}

CornerCode corner_or_trace(const Model3Match& m, const LocalDivisor& D) {
  if (m.code == ModelCode::NotSimple) throw DomainError("corner or trace needs a simple point");
  int e = invariant_branches_at_origin(D).e0();
  if (e == m.tau) return CornerCode::SimpleCorner;
  if (e == m.tau - 1) return CornerCode::Trace;
  throw DomainError("unadapted divisor for corner or trace: e0(D') = " + std::to_string(e));
}

}  // namespace folab
