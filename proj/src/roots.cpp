#include "folab/roots.hpp"

#include <algorithm>

#include "folab/errors.hpp"

namespace folab {

UPoly upoly_trim(UPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int upoly_degree(const UPoly& p) { return static_cast<int>(upoly_trim(p).size()) - 1; }

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return upoly_trim(std::move(r));
}

UPoly upoly_sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return upoly_trim(std::move(r));
}

void upoly_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  UPoly bt = upoly_trim(b);
  if (bt.empty()) throw DomainError("polynomial division by zero");
  r = upoly_trim(a);
  q.assign(r.size() >= bt.size() ? r.size() - bt.size() + 1 : 0, FieldElement());
  const FieldElement inv = bt.back().inverse();
  const size_t db = bt.size() - 1;
  for (size_t k = r.size(); k-- > db;) {
    if (r[k].is_zero()) continue;
    FieldElement f = r[k] * inv;
    q[k - db] = f;
    for (size_t j = 0; j <= db; ++j) r[k - db + j] -= f * bt[j];
  }
  q = upoly_trim(std::move(q));
  r = upoly_trim(std::move(r));
}

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
  UPoly x = upoly_trim(a), y = upoly_trim(b);
  while (!y.empty()) {
    UPoly q, r;
    upoly_divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return x;
  FieldElement inv = x.back().inverse();
  for (auto& c : x) c *= inv;
  return x;
}

UPoly upoly_derivative(const UPoly& p) {
  UPoly r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * FieldElement(static_cast<long>(i)));
  return upoly_trim(std::move(r));
}

UPoly upoly_squarefree(const UPoly& p) {
  UPoly pt = upoly_trim(p);
  if (pt.size() <= 1) return pt;
  UPoly g = upoly_gcd(pt, upoly_derivative(pt));
  UPoly q, r;
  upoly_divmod(pt, g, q, r);
  FieldElement inv = q.back().inverse();
  for (auto& c : q) c *= inv;
  return q;
}

FieldElement upoly_eval(const UPoly& p, const FieldElement& x) {
  FieldElement acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::optional<std::vector<FieldElement>> quadratic_roots(const FieldElement& b, const FieldElement& c,
                                                         int max_field_degree) {
  FieldElement disc = b * b - FieldElement(4) * c;
  auto s = sqrt_in_tower(disc, max_field_degree);
  if (!s) return std::nullopt;
  FieldElement half(Rational(1, 2));
  std::vector<FieldElement> out{(-b + *s) * half, (-b - *s) * half};
  if (out[0] == out[1]) out.pop_back();
  return out;
}

namespace {

constexpr long kDivisorBudget = 4000000;

std::vector<Integer> positive_divisors(const Integer& n0) {
  Integer n = abs(n0);
  std::vector<std::pair<Integer, int>> f;
  for (Integer p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) f.emplace_back(p, e);
    if (p > 2000000) throw FieldExtensionError("root isolation budget exceeded (coefficient too large to factor)");
  }
  if (n > 1) f.emplace_back(n, 1);
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : f) {
    size_t base = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Primitive integer polynomial proportional to a rational one.
std::vector<Integer> integer_form(const std::vector<Rational>& p) {
  Integer l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : p) {
    Rational s = c * l;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g != 0 && g != 1)
    for (auto& c : out) c /= g;
  return out;
}

Integer eval_int(const std::vector<Integer>& p, long x) {
  Integer acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Rational> to_rational(const UPoly& p) {
  std::vector<Rational> r;
  for (const auto& c : p) r.push_back(c.to_rational());
  return r;
}

UPoly from_rational(const std::vector<Rational>& p) {
  UPoly r;
  for (const auto& c : p) r.emplace_back(c);
  return upoly_trim(std::move(r));
}

std::vector<Rational> rational_roots(const std::vector<Rational>& p) {
  std::vector<Integer> z = integer_form(p);
  std::vector<Rational> roots;
  size_t lo = 0;
  while (lo < z.size() && z[lo] == 0) ++lo;
  if (lo > 0) roots.emplace_back(0);
  std::vector<Integer> q(z.begin() + static_cast<long>(lo), z.end());
  if (q.size() <= 1) return roots;
  auto num = positive_divisors(q.front());
  auto den = positive_divisors(q.back());
  if (static_cast<long>(num.size()) * static_cast<long>(den.size()) > kDivisorBudget)
    throw FieldExtensionError("root isolation budget exceeded");
  std::vector<Rational> cand;
  for (const auto& a : num)
    for (const auto& b : den) {
      Rational r(a, b);
      r.canonicalize();
      cand.push_back(r);
      cand.push_back(-r);
    }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  UPolyQ poly(std::vector<Rational>(p.begin(), p.end()));
  for (const auto& r : cand)
    if (poly.eval(r) == 0) roots.push_back(r);
  return roots;
}

// Monic quadratic rational factors of a square-free rational polynomial with
// no rational roots (Kronecker's method on values at 0, 1, -1).
std::vector<std::vector<Rational>> quadratic_factors(std::vector<Rational> p) {
  std::vector<std::vector<Rational>> found;
  while (UPolyQ(p).degree() >= 4) {
    std::vector<Integer> z = integer_form(p);
    Integer v0 = eval_int(z, 0), v1 = eval_int(z, 1), vm = eval_int(z, -1);
    auto d0 = positive_divisors(v0), d1 = positive_divisors(v1), dm = positive_divisors(vm);
    Integer lead = z.back();
    if (static_cast<long>(d0.size()) * static_cast<long>(d1.size()) * static_cast<long>(dm.size()) > kDivisorBudget)
      throw FieldExtensionError("root isolation budget exceeded");
    bool hit = false;
    UPolyQ P(p);
    for (const auto& c0 : d0) {
      for (int s0 : {1, -1}) {
        Integer c = c0 * s0;
        for (const auto& e1 : d1) {
          for (int s1 : {1, -1}) {
            Integer g1 = e1 * s1;
            for (const auto& em : dm) {
              for (int sm : {1, -1}) {
                Integer gm = em * sm;
                Integer two_a = g1 + gm - 2 * c;
                if (two_a <= 0 || two_a % 2 != 0) continue;
                Integer a = two_a / 2;
                if (lead % a != 0) continue;
                Integer two_b = g1 - gm;
                if (two_b % 2 != 0) continue;
                Integer b = two_b / 2;
                UPolyQ g(std::vector<Rational>{Rational(c), Rational(b), Rational(a)});
                UPolyQ q, r;
                UPolyQ::divmod(P, g, q, r);
                if (!r.is_zero()) continue;
                found.push_back(g.monic().coeffs());
                p = q.coeffs();
                hit = true;
                break;
              }
              if (hit) break;
            }
            if (hit) break;
          }
          if (hit) break;
        }
        if (hit) break;
      }
      if (hit) break;
    }
    if (!hit) throw FieldExtensionError("polynomial has an irreducible factor of degree > 2: " + P.to_string("t"));
  }
  int d = UPolyQ(p).degree();
  if (d == 3) throw FieldExtensionError("polynomial has an irreducible cubic factor: " + UPolyQ(p).to_string("t"));
  if (d == 2) found.push_back(UPolyQ(p).monic().coeffs());
  return found;
}

void sort_roots(std::vector<FieldElement>& roots) {
  std::sort(roots.begin(), roots.end(), [](const FieldElement& a, const FieldElement& b) { return a.compare(b) < 0; });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
}

std::vector<FieldElement> rational_poly_roots(const UPoly& p, int max_field_degree) {
  std::vector<Rational> pr = to_rational(p);
  std::vector<FieldElement> out;
  UPolyQ rest(pr);
  for (const auto& r : rational_roots(pr)) {
    out.emplace_back(r);
    UPolyQ q, rem;
    UPolyQ::divmod(rest, UPolyQ(std::vector<Rational>{-r, 1}), q, rem);
    rest = q;
  }
  if (rest.degree() >= 2) {
    for (const auto& g : quadratic_factors(rest.coeffs())) {
      auto qr = quadratic_roots(FieldElement(g[1]), FieldElement(g[0]), max_field_degree);
      if (!qr)
        throw FieldExtensionError("roots of " + UPolyQ(g).to_string("t") + " lie outside the admissible field tower");
      for (auto& r : *qr) out.push_back(r);
    }
  }
  // All roots must share one quadratic extension.
  FieldDescriptor d;
  for (const auto& r : out) d = FieldDescriptor::join(d, r.descriptor());
  return out;
}

}  // namespace

std::vector<FieldElement> distinct_roots(const UPoly& p0, int max_field_degree) {
  UPoly p = upoly_squarefree(p0);
  int deg = upoly_degree(p);
  if (deg < 0) throw DomainError("roots of the zero polynomial");
  std::vector<FieldElement> out;
  if (deg == 0) return out;
  FieldDescriptor desc;
  for (const auto& c : p) desc = FieldDescriptor::join(desc, c.descriptor());
  if (deg == 1) {
    out.push_back(-p[0] / p[1]);
    return out;
  }
  if (deg == 2) {
    auto qr = quadratic_roots(p[1] / p[2], p[0] / p[2], max_field_degree);
    if (!qr) throw FieldExtensionError("quadratic roots outside the admissible field tower");
    out = *qr;
    sort_roots(out);
    return out;
  }
  if (desc.has_param()) {
    // Peel off the root 0 and retry at low degree; general parametric roots are unsupported.
    if (p[0].is_zero()) {
      UPoly rest(p.begin() + 1, p.end());
      out = distinct_roots(rest, max_field_degree);
      out.emplace_back(0);
      sort_roots(out);
      return out;
    }
    throw FieldExtensionError("roots of a parameter-dependent polynomial of degree > 2 are unsupported");
  }
  if (!desc.has_extension()) {
    out = rational_poly_roots(p, max_field_degree);
    sort_roots(out);
    return out;
  }
  // Coefficients in Q(rt(m)): roots of p are among the roots of its norm.
  UPoly conj;
  for (const auto& c : p) conj.push_back(c.conjugate());
  UPoly norm = upoly_mul(p, conj);
  UPoly norm_sf = upoly_squarefree(norm);
  for (const auto& r : rational_poly_roots(norm_sf, max_field_degree)) {
    FieldDescriptor::join(desc, r.descriptor());
    if (upoly_eval(p, r).is_zero()) out.push_back(r);
  }
  if (static_cast<int>(out.size()) != deg) throw FieldExtensionError("some roots lie outside the admissible field tower");
  sort_roots(out);
  return out;
}

}  // namespace folab
