#pragma once

#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <vector>

#include "folab/forms.hpp"
#include "folab/separatrix.hpp"

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

inline Real to_real(const folab::Rational& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

inline Complex to_complex(const folab::FieldElement& x) {
  const Complex a(to_real(x.rational_part().constant_value()));
  const folab::Rational b = x.irrational_part().constant_value();
  if (b == 0) return a;
  const long m = x.descriptor().sqrt_of;
  const Real r = boost::multiprecision::sqrt(Real(m < 0 ? -m : m));
  return m < 0 ? a + Complex(0, to_real(b) * r) : a + Complex(to_real(b) * r);
}

/// Values of the variables at which a polynomial is evaluated.
inline Complex eval(const folab::MPoly& f, const std::vector<Complex>& at) {
  Complex s = 0;
  for (const auto& [e, c] : f.terms()) {
    Complex t = to_complex(c);
    for (size_t k = 0; k < at.size(); ++k)
      for (int j = 0; j < e[k]; ++j) t *= at[k];
    s += t;
  }
  return s;
}

/// Winding number of h around 0 along t = eps e^{i theta}, theta in [0, 2 pi].
template <class H>
Real winding(H h, Real eps = Real("1e-4"), int samples = 512) {
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  Real total = 0;
  Complex prev = h(Complex(eps));
  for (int k = 1; k <= samples; ++k) {
    const Real th = two_pi * k / samples;
    const Complex cur = h(Complex(eps * boost::multiprecision::cos(th), eps * boost::multiprecision::sin(th)));
    total += boost::multiprecision::arg(cur / prev);
    prev = cur;
  }
  return total / two_pi;
}

/// GSV of A du + B dv with respect to the union of the branches, as the sum
/// over the branches of the winding number of B / g_v (or A / g_u when the
/// branch is u = 0) along a small loop, g the product of the branch equations.
inline Real gsv(const folab::OneForm2& w, const std::vector<folab::BranchJet>& branches) {
  folab::MPoly g = folab::MPoly::constant(folab::kVarsUV, folab::FieldElement(1));
  for (const auto& b : branches) g *= b.equation;
  const folab::MPoly gu = g.derivative(0), gv = g.derivative(1);
  Real total = 0;
  for (const auto& b : branches) {
    const bool u_fixed = b.jet.gamma[0].is_constant();
    const folab::MPoly& num = u_fixed ? w.A : w.B;
    const folab::MPoly& den = u_fixed ? gu : gv;
    total += winding([&](const Complex& t) {
      const std::vector<Complex> pt = {eval(b.jet.gamma[0], {t}), eval(b.jet.gamma[1], {t})};
      return eval(num, pt) / eval(den, pt);
    });
  }
  return total;
}

}  // namespace oracle
