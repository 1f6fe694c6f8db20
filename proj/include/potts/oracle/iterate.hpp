#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/arith/poly_parse.hpp"
#include "potts/arith/series.hpp"

namespace potts {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric values for some of the parameters q, b, w.
using ParamPoint = std::map<std::size_t, Rational>;

inline Poly at_point(Poly p, const ParamPoint& at) {
  for (const auto& [v, val] : at) p = p.evaluate(v, val);
  return p;
}

// (f(v) - f(1)) / (v - 1) by synthetic division in v. If `clean` is set,
// f(1) must vanish and a nonzero remainder is an error.
inline Poly divided_difference_at_one(const Poly& f, std::size_t v, bool clean = true) {
  std::vector<Poly> a = f.coefficients_in(v);
  if (a.size() <= 1) {
    if (clean && !f.is_zero()) throw OracleError("divided difference at 1 is not clean");
    return Poly();
  }
  std::vector<Poly> b(a.size() - 1);
  b.back() = a.back();
  for (std::size_t k = b.size() - 1; k > 0; --k) b[k - 1] = a[k] + b[k];
  if (clean && !(a[0] + b[0]).is_zero()) throw OracleError("divided difference at 1 is not clean");
  return Poly::from_coefficients_in(v, b);
}

// (f(v) - f(0)) / v.
inline Poly divided_difference_at_zero(const Poly& f, std::size_t v) {
  std::vector<Poly> a = f.coefficients_in(v);
  if (a.size() <= 1) return Poly();
  return Poly::from_coefficients_in(v, std::vector<Poly>(a.begin() + 1, a.end()));
}

// Series in t whose coefficients are polynomials in x, y and the parameters.
using BiSeries = PolySeries;

// Mbar(x,y) = 1 + xywt((nu-1)(y-1) + qy) Mbar(x,y) Mbar(1,y) + xyt(x nu - 1) Mbar(x,y) Mbar(x,1)
//   + xywt(nu-1) (x Mbar(x,y) - Mbar(1,y))/(x-1) + xyt (y Mbar(x,y) - Mbar(x,1))/(y-1).
inline BiSeries iterate_two_catalytic(int n_max, const ParamPoint& at = {}) {
  if (n_max < 0) throw std::invalid_argument("iterate_two_catalytic needs N >= 0");
  auto parser = make_potts_parser<PottsVars>();
  auto c = [&](const char* s) { return at_point(parser.parse(s), at); };
  const Poly k1 = c("x*y*w*(beta*(y - 1) + q*y)");
  const Poly k2 = c("x*y*(x*nu - 1)");
  const Poly k3 = c("x*y*w*beta");
  const Poly k4 = c("x*y");
  const Poly x = Poly::variable(sym::x), y = Poly::variable(sym::y);
  std::vector<Poly> a{Poly(1)}, a_x1{Poly(1)}, a_y1{Poly(1)};
  for (int n = 1; n <= n_max; ++n) {
    Poly s1, s2;
    for (int k = 0; k < n; ++k) {
      s1 += a[k] * a_x1[n - 1 - k];
      s2 += a[k] * a_y1[n - 1 - k];
    }
    const Poly& prev = a[n - 1];
    Poly next = k1 * s1 + k2 * s2 + k3 * divided_difference_at_one(x * prev - a_x1[n - 1], sym::x) +
                k4 * divided_difference_at_one(y * prev - a_y1[n - 1], sym::y);
    const unsigned bound = static_cast<unsigned>(2 * n + 2);
    if (next.degree(sym::x) > bound || next.degree(sym::y) > bound)
      throw OracleError("x,y-degree bound exceeded at order " + std::to_string(n));
    a_x1.push_back(next.evaluate(sym::x, Rational(1)));
    a_y1.push_back(next.evaluate(sym::y, Rational(1)));
    a.push_back(std::move(next));
  }
  return BiSeries(SizeVar::t, std::move(a));
}

// M(y) = w Mbar(1, y).
inline PolySeries potts_m_of_y(const BiSeries& mbar, const ParamPoint& at = {}) {
  const Poly w = at_point(Poly::variable(sym::w), at);
  return mbar.map([&](const Poly& c) { return c.evaluate(sym::x, Rational(1)) * w; });
}

// M_1 = M(1).
inline PolySeries potts_m1(const BiSeries& mbar, const ParamPoint& at = {}) {
  return potts_m_of_y(mbar, at).map([](const Poly& c) { return c.evaluate(sym::y, Rational(1)); });
}

// Tutte's equation for properly q-coloured triangulations, series in w:
// G(x,y) = xq(q-1)w^2 + xy/(qw) G(1,y) G(x,y) - x^2yw (G(x,y) - G(1,y))/(x-1) + x (G(x,y) - G(x,0))/y.
// The last term involves the unknown coefficient itself; writing
// g = sum_j y^j g_j(x), the coefficient of y^j gives g_j = k_j + x g_{j+1}.
inline BiSeries iterate_tutte_G(int n_max, const ParamPoint& at = {}) {
  if (n_max < 2) throw std::invalid_argument("iterate_tutte_G needs N >= 2");
  auto parser = make_potts_parser<PottsVars>();
  const Poly q = at_point(Poly::variable(sym::q), at);
  const Poly x = Poly::variable(sym::x);
  const Poly lead = at_point(parser.parse("x*q*(q - 1)"), at);
  const Poly xy = parser.parse("x*y");
  const Poly x2y = parser.parse("x^2*y");
  std::vector<Poly> g(static_cast<std::size_t>(n_max + 1)), g_x1(g.size());
  for (int n = 2; n <= n_max; ++n) {
    Poly known = n == 2 ? lead : Poly();
    Poly prod;
    for (int a = 2; a <= n - 1; ++a) {
      int b = n + 1 - a;
      if (b < 2 || b > n - 1) continue;
      prod += g_x1[a] * g[b];
    }
    if (!prod.is_zero()) {
      auto quotient = (xy * prod).try_divide(q);
      if (!quotient) throw OracleError("G(1,y)G(x,y) is not divisible by q at order " + std::to_string(n));
      known += *quotient;
    }
    known -= x2y * divided_difference_at_one(g[n - 1] - g_x1[n - 1], sym::x);
    std::vector<Poly> k = known.coefficients_in(sym::y);
    std::vector<Poly> sol(k.size());
    for (std::size_t j = k.size(); j-- > 0;) sol[j] = j + 1 < k.size() ? k[j] + x * sol[j + 1] : k[j];
    g[n] = Poly::from_coefficients_in(sym::y, sol);
    g_x1[n] = g[n].evaluate(sym::x, Rational(1));
  }
  return BiSeries(SizeVar::w, std::move(g));
}

// H(w) = G(1, 0).
inline PolySeries tutte_h(const BiSeries& g) {
  return g.map([](const Poly& c) { return c.evaluate(sym::x, Rational(1)).evaluate(sym::y, Rational(0)); });
}

// Uncoloured maps by edges and outer degree:
// M(y) = 1 + t y^2 M(y)^2 + t y (y M(y) - M(1))/(y - 1).
struct UncolouredResult {
  PolySeries m;          // M(t; y)
  PolySeries m1;         // M(t; 1)
  PolySeries quadratic;  // 27 t^2 M1^2 + (1 - 18 t) M1 + 16 t - 1
};

inline UncolouredResult iterate_uncoloured(int n_max) {
  if (n_max < 0) throw std::invalid_argument("iterate_uncoloured needs N >= 0");
  const Poly y = Poly::variable(sym::y);
  const Poly y2 = y * y;
  std::vector<Poly> m{Poly(1)}, m1{Poly(1)};
  for (int n = 1; n <= n_max; ++n) {
    Poly sq;
    for (int a = 0; a < n; ++a) sq += m[a] * m[n - 1 - a];
    Poly next = y2 * sq + y * divided_difference_at_one(y * m[n - 1] - m1[n - 1], sym::y);
    m1.push_back(next.evaluate(sym::y, Rational(1)));
    m.push_back(std::move(next));
  }
  UncolouredResult r{PolySeries(SizeVar::t, m), PolySeries(SizeVar::t, m1), PolySeries(SizeVar::t, n_max)};
  const PolySeries& f = r.m1;
  PolySeries t(SizeVar::t, n_max);
  if (n_max >= 1) t[1] = Poly(1);
  PolySeries one(SizeVar::t, n_max);
  one[0] = Poly(1);
  r.quadratic = t * t * f * f * Poly(27) + (one - t * Poly(18)) * f + t * Poly(16) - one;
  return r;
}

}  // namespace potts
