#include <algorithm>

#include "folab/errors.hpp"
#include "folab/indices.hpp"
#include "folab/roots.hpp"

namespace folab {

const std::vector<std::string> kVarsP2 = {"X", "Y", "Z"};
const std::vector<std::string> kVarsP3 = {"X", "Y", "Z", "W"};

namespace {

bool homogeneous(const MPoly& p, int degree) {
  for (const auto& [e, c] : p.terms())
    if (total_degree(e) != degree) return false;
  return true;
}

MPoly gcd_all(const std::vector<MPoly>& ps) {
  MPoly g;
  bool first = true;
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = first ? p.monic() : MPoly::gcd(g, p);
    first = false;
    if (g.is_constant()) break;
  }
  return g;
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  upoly_divmod(a, b, q, r);
  if (!upoly_trim(r).empty()) throw Error("resultant: inexact division");
  return q;
}

/// Coefficients of p in powers of v, each a polynomial in u.
std::vector<UPoly> coefficients_in_v(const MPoly& p) {
  std::vector<UPoly> out(static_cast<size_t>(std::max(p.degree_in(1), 0)) + 1);
  for (const auto& [k, c] : p.coefficients_in(1)) out[static_cast<size_t>(k)] = upoly_trim(c.as_univariate(0));
  return out;
}

/// Res_v(a, b) as a polynomial in u, by fraction-free elimination of the
/// Sylvester matrix.
UPoly resultant_v(const MPoly& a, const MPoly& b) {
  const auto ca = coefficients_in_v(a), cb = coefficients_in_v(b);
  const size_t m = ca.size() - 1, n = cb.size() - 1, size = m + n;
  if (size == 0) return UPoly{FieldElement(1)};
  std::vector<std::vector<UPoly>> s(size, std::vector<UPoly>(size));
  for (size_t r = 0; r < n; ++r)
    for (size_t k = 0; k <= m; ++k) s[r][r + k] = ca[m - k];
  for (size_t r = 0; r < m; ++r)
    for (size_t k = 0; k <= n; ++k) s[n + r][r + k] = cb[n - k];
  bool negate = false;
  UPoly prev{FieldElement(1)};
  for (size_t k = 0; k + 1 < size; ++k) {
    if (s[k][k].empty()) {
      size_t sel = k + 1;
      while (sel < size && s[sel][k].empty()) ++sel;
      if (sel == size) return {};
      std::swap(s[k], s[sel]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < size; ++i) {
      for (size_t j = k + 1; j < size; ++j)
        s[i][j] = exact_quotient(upoly_sub(upoly_mul(s[i][j], s[k][k]), upoly_mul(s[i][k], s[k][j])), prev);
      s[i][k].clear();
    }
    prev = s[k][k];
  }
  UPoly det = s[size - 1][size - 1];
  if (negate) det = upoly_sub({}, det);
  return det;
}

UPoly univariate_after(const MPoly& p, int var, const FieldElement& value, int keep) {
  return upoly_trim(p.evaluate_var(var, value).as_univariate(keep));
}

std::vector<MPoly> chart_images(int chart, const std::vector<FieldElement>& point) {
  const MPoly u = MPoly::variable(kVarsUV, 0), v = MPoly::variable(kVarsUV, 1);
  std::vector<MPoly> images;
  int slot = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == chart) {
      images.push_back(MPoly::constant(kVarsUV, FieldElement(1)));
      continue;
    }
    images.push_back((slot == 0 ? u : v) + MPoly::constant(kVarsUV, point[static_cast<size_t>(i)]));
    ++slot;
  }
  return images;
}

}  // namespace

bool euler_condition(const std::vector<MPoly>& coeffs) {
  MPoly sum(coeffs.front().vars());
  for (size_t i = 0; i < coeffs.size(); ++i) sum += MPoly::variable(coeffs[i].vars(), static_cast<int>(i)) * coeffs[i];
  return sum.is_zero();
}

bool integrable(const std::vector<MPoly>& a) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const auto I = static_cast<size_t>(i), J = static_cast<size_t>(j), K = static_cast<size_t>(k);
        MPoly c = a[I] * (a[K].derivative(j) - a[J].derivative(k)) + a[J] * (a[I].derivative(k) - a[K].derivative(i)) +
                  a[K] * (a[J].derivative(i) - a[I].derivative(j));
        if (!c.is_zero()) return false;
      }
  return true;
}

ProjFoliation ProjFoliation::make(std::vector<MPoly> coeffs) {
  const size_t n = coeffs.size();
  if (n != 3 && n != 4) throw DomainError("projective foliation needs 3 or 4 coefficients");
  int deg = -1;
  for (const auto& c : coeffs) {
    if (c.nvars() != static_cast<int>(n) || c.vars() != coeffs.front().vars())
      throw DomainError("coefficients must share " + std::to_string(n) + " variables");
    if (c.is_zero()) continue;
    if (deg < 0) deg = c.total_degree();
    if (!homogeneous(c, deg)) throw DomainError("coefficients are not homogeneous of one degree");
  }
  if (deg < 0) throw DomainError("zero form");
  if (deg == 0) throw DomainError("constant coefficients cannot satisfy the Euler condition");
  if (!euler_condition(coeffs)) throw DomainError("Euler condition fails: sum X_i A_i != 0");
  const MPoly g = gcd_all(coeffs);
  if (!g.is_constant()) {
    for (auto& c : coeffs)
      if (!c.is_zero()) c = *MPoly::divide(c, g);
    deg -= g.total_degree();
  }
  if (n == 4 && !integrable(coeffs)) throw DomainError("form is not integrable");
  ProjFoliation F;
  F.coeffs = std::move(coeffs);
  F.degree = deg - 1;
  return F;
}

std::string ProjFoliation::to_string() const {
  std::string s;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeffs[i].to_string() + ") d" + vars()[i];
  }
  return s + "  [degree " + std::to_string(degree) + "]";
}

bool invariant_hypersurface(const ProjFoliation& F, const MPoly& f) {
  const int n = static_cast<int>(F.coeffs.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MPoly c = F.coeffs[static_cast<size_t>(i)] * f.derivative(j) - F.coeffs[static_cast<size_t>(j)] * f.derivative(i);
      if (!c.is_zero() && !MPoly::divide(c, f)) return false;
    }
  return true;
}

ProjFoliation logarithmic_build(const LogarithmicData& data) {
  const auto& F = data.factors;
  const auto& lambda = data.residues;
  if (F.size() != lambda.size()) throw DomainError("one residue per factor is required");
  if (F.size() < 2) throw DomainError("a logarithmic form needs at least two poles");
  const int n = F.front().nvars();
  FieldElement residue_sum;
  int deg_s = 0;
  for (size_t i = 0; i < F.size(); ++i) {
    if (F[i].vars() != F.front().vars() || (n != 3 && n != 4)) throw DomainError("factors must share 3 or 4 variables");
    const int e = F[i].total_degree();
    if (e <= 0 || !homogeneous(F[i], e)) throw DomainError("factor " + F[i].to_string() + " is not homogeneous");
    if (lambda[i].is_zero()) throw DomainError("residues must be nonzero");
    residue_sum += lambda[i] * FieldElement(e);
    deg_s += e;
    MPoly g = F[i];
    for (int k = 0; k < n && !g.is_constant(); ++k) g = MPoly::gcd(g, F[i].derivative(k));
    if (!g.is_constant()) throw DomainError("non-reduced pole " + F[i].to_string());
    for (size_t j = 0; j < i; ++j)
      if (!MPoly::gcd(F[i], F[j]).is_constant())
        throw DomainError("poles " + F[j].to_string() + " and " + F[i].to_string() + " share a factor");
  }
  if (!residue_sum.is_zero())
    throw DomainError("residue condition violated: sum lambda_i deg F_i = " + residue_sum.to_string());

  std::vector<MPoly> coeffs(static_cast<size_t>(n), MPoly(F.front().vars()));
  for (size_t i = 0; i < F.size(); ++i) {
    MPoly others = MPoly::constant(F.front().vars(), lambda[i]);
    for (size_t j = 0; j < F.size(); ++j)
      if (j != i) others *= F[j];
    for (int k = 0; k < n; ++k) coeffs[static_cast<size_t>(k)] += others * F[i].derivative(k);
  }
  ProjFoliation out = ProjFoliation::make(std::move(coeffs));
  if (out.degree != deg_s - 2) throw Error("logarithmic form lost degree after saturation");
  return out;
}

ProjFoliation from_affine(const OneForm2& w) {
  if (!w.is_exact()) throw DomainError("affine form must be polynomial");
  if (w.is_zero()) throw DomainError("zero form");
  const int m = std::max(w.A.total_degree(), w.B.total_degree());
  auto homogenize = [&](const MPoly& p) {
    MPoly h(kVarsP2);
    for (const auto& [e, c] : p.terms()) h.add_term(Exponent{e[0], e[1], m - e[0] - e[1], 0}, c);
    return h;
  };
  const MPoly X = MPoly::variable(kVarsP2, 0), Y = MPoly::variable(kVarsP2, 1), Z = MPoly::variable(kVarsP2, 2);
  const MPoly a = homogenize(w.A), b = homogenize(w.B);
  return ProjFoliation::make({Z * a, Z * b, -(X * a + Y * b)});
}

std::string PlanePoint::label() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); ++i) s += (i ? ":" : "") + coords[i].to_string();
  return s + ")";
}

bool PlanePoint::simple() const {
  return record.code.kind == PointClass::SimpleNonDegenerate || record.code.kind == PointClass::SaddleNode;
}

bool PlanePoint::nondegenerate() const {
  const Mat2& m = record.linear;
  return !(m[0][0] * m[1][1] - m[0][1] * m[1][0]).is_zero();
}

MPoly localize(const MPoly& f, const PlanePoint& p) { return f.substitute(chart_images(p.chart, p.coords)); }

std::vector<PlanePoint> plane_singularities(const ProjFoliation& F, int max_field_degree) {
  if (F.dimension() != 2) throw DomainError("plane foliation expected");
  const auto& A = F.coeffs;
  const MPoly u = MPoly::variable(kVarsUV, 0), v = MPoly::variable(kVarsUV, 1);
  const MPoly one = MPoly::constant(kVarsUV, FieldElement(1)), zero(kVarsUV);
  std::vector<std::vector<FieldElement>> found;

  // Chart Z = 1.
  const MPoly a = A[0].substitute({u, v, one}), b = A[1].substitute({u, v, one});
  if (a.is_zero() || b.is_zero()) {
    if (!(a.is_zero() ? b : a).is_constant()) throw DomainError("singular set contains a curve");
  } else if (!MPoly::gcd(a, b).is_constant()) {
    throw DomainError("singular set contains a curve");
  }
  const UPoly res = a.is_zero() || b.is_zero() ? UPoly{FieldElement(1)} : resultant_v(a, b);
  if (upoly_degree(res) > 0)
    for (const auto& x0 : distinct_roots(res, max_field_degree)) {
      const UPoly g = upoly_gcd(univariate_after(a, 0, x0, 1), univariate_after(b, 0, x0, 1));
      if (upoly_degree(g) <= 0) continue;
      for (const auto& y0 : distinct_roots(g, max_field_degree)) found.push_back({x0, y0, FieldElement(1)});
    }

  // Line Z = 0, chart Y = 1.
  const UPoly ai = upoly_trim(A[0].substitute({u, one, zero}).as_univariate(0));
  const UPoly ci = upoly_trim(A[2].substitute({u, one, zero}).as_univariate(0));
  if (ai.empty() && ci.empty()) throw DomainError("singular set contains the line Z = 0");
  const UPoly gi = upoly_gcd(ai, ci);
  if (upoly_degree(gi) > 0)
    for (const auto& x0 : distinct_roots(gi, max_field_degree)) found.push_back({x0, FieldElement(1), FieldElement(0)});

  // The point (1:0:0).
  const std::vector<FieldElement> e0 = {FieldElement(1), FieldElement(0), FieldElement(0)};
  if (A[1].evaluate(e0).is_zero() && A[2].evaluate(e0).is_zero()) found.push_back(e0);

  std::vector<PlanePoint> out;
  int total = 0;
  for (auto& c : found) {
    PlanePoint p;
    p.chart = !c[2].is_zero() ? 2 : (!c[1].is_zero() ? 1 : 0);
    p.coords = std::move(c);
    const auto images = chart_images(p.chart, p.coords);
    std::vector<MPoly> local;
    for (int i = 0; i < 3; ++i)
      if (i != p.chart) local.push_back(A[static_cast<size_t>(i)].substitute(images));
    p.local = OneForm2(local[0], local[1]);
    p.multiplicity = mu0(p.local);
    p.record = classify_point2(p.local, {});
    total += p.multiplicity;
    out.push_back(std::move(p));
  }
  const int d = F.degree;
  if (total != d * d + d + 1)
    throw Error("singular points account for multiplicity " + std::to_string(total) + ", expected " +
                std::to_string(d * d + d + 1));
  return out;
}

ProjFoliation restrict_to_plane(const ProjFoliation& F, const Matrix& H) {
  if (F.dimension() != 3) throw DomainError("foliation of P^3 expected");
  if (H.size() != 4 || H.front().size() != 3 || rank(H, 3) != 3) throw DomainError("plane section must be a rank-3 4x3 matrix");
  std::vector<MPoly> images;
  for (const auto& row : H) {
    MPoly l(kVarsP2);
    for (int k = 0; k < 3; ++k) l += MPoly::variable(kVarsP2, k).scaled(row[static_cast<size_t>(k)]);
    images.push_back(l);
  }
  std::vector<MPoly> G(3, MPoly(kVarsP2));
  for (size_t i = 0; i < 4; ++i) {
    const MPoly a = F.coeffs[i].substitute(images);
    for (size_t k = 0; k < 3; ++k) G[k] += a.scaled(H[i][k]);
  }
  if (std::all_of(G.begin(), G.end(), [](const MPoly& g) { return g.is_zero(); }))
    throw DomainError("plane section is invariant");
  if (!gcd_all(G).is_constant()) throw DomainError("plane section is not generically transversal");
  return ProjFoliation::make(std::move(G));
}

}  // namespace folab
