#pragma once

#include <array>
#include <string>
#include <vector>

#include "potts/oracle/iterate.hpp"
#include "potts/solver/identities.hpp"

namespace potts {

// The m = 4 invariant equation at q = 2, nu = 0, w = 1 (bipartite maps):
//   D(I)^2 - 8 ybar^2 D(I) + 8 ybar^4 = sum_r C_r I^r,
// with I = 2tyM(y) + (y-1)/y + ty/(y-1) and D(x) = x^2 - 2x + 2t + 2.
// Multiplying by y^4 (y-1)^4 and writing A = y(y-1) I gives the polynomial form
//   E^2 - 8 (y-1)^2 E + 8 (y-1)^4 = sum_r C_r A^r (y(y-1))^{4-r},
// E = A^2 - 2 A y(y-1) + (2t+2) y^2 (y-1)^2.
struct BipartiteInvariant {
  std::array<PolySeries, 5> c;        // C_0..C_4 solved from the expansion at y = 1
  std::array<PolySeries, 5> closed;  // closed forms
  PolySeries residual;                // full identity with the closed forms substituted
};

namespace detail {

struct InvariantTerms {
  PolySeries lhs;
  std::array<PolySeries, 5> g;  // A^r (y(y-1))^{4-r}
};

inline InvariantTerms invariant_terms(const PolySeries& m_of_y, int order) {
  const Poly y = Poly::variable(sym::y);
  const Poly ym1 = y - Poly(1);
  auto constant = [&](const Poly& c) { return constant_series(c, SizeVar::t, order); };
  const PolySeries t = size_series(SizeVar::t, order);
  PolySeries m = m_of_y.truncated(order);
  PolySeries a = t * m * (Poly(2) * y * y * ym1) + constant(ym1 * ym1) + t * (y * y);
  PolySeries yy = constant(y * ym1);
  PolySeries e = a * a - a * yy * Poly(2) + (t * Poly(2) + constant(Poly(2))) * yy * yy;
  InvariantTerms out;
  out.lhs = e * e - e * constant(Poly(8) * ym1 * ym1) + constant(Poly(8) * ym1.pow(4));
  for (unsigned r = 0; r <= 4; ++r) out.g[r] = a.pow(r) * yy.pow(4 - r);
  return out;
}

// Coefficient of u^k after y = 1 + u, as a series in t.
inline PolySeries at_u(const PolySeries& s, unsigned k) {
  const Poly shift = Poly::variable(sym::y) + Poly(1);
  return s.map([&](const Poly& c) { return c.substitute(sym::y, shift).coefficient_in(sym::y, k); });
}

}  // namespace detail

inline BipartiteInvariant bipartite_invariant(int n) {
  if (n < 0) throw std::invalid_argument("bipartite_invariant needs N >= 0");
  const ParamPoint at{{sym::q, Rational(2)}, {sym::b, Rational(-1)}, {sym::w, Rational(1)}};
  // Solving for C_{4-k} divides by t^{4-k}; the extra orders absorb that loss.
  const int work = n + 10;
  PolySeries m = potts_m_of_y(iterate_two_catalytic(work, at), at);
  detail::InvariantTerms terms = detail::invariant_terms(m, work);

  BipartiteInvariant out;
  for (unsigned k = 0; k <= 4; ++k) {
    const unsigned r = 4 - k;
    PolySeries rhs = detail::at_u(terms.lhs, k);
    for (unsigned s = r + 1; s <= 4; ++s) rhs -= out.c[s] * detail::at_u(terms.g[s], k);
    // [u^k] of A^r (y(y-1))^{k} is A(y=1)^r = t^r.
    try {
      out.c[r] = rhs.divided_by_var(static_cast<int>(r));
    } catch (const SeriesError&) {
      throw OracleError("coefficient C_" + std::to_string(r) + " is not determined by the expansion at y = 1");
    }
  }
  for (auto& c : out.c) c = c.truncated(n);

  auto parser = make_potts_parser<PottsVars>();
  auto fixed = [&](const char* s, int order) {
    return constant_series(parser.parse(s), SizeVar::t, order);
  };
  PolySeries m1 = m.map([](const Poly& c) { return c.evaluate(sym::y, Rational(1)); });
  out.closed[4] = fixed("1", work);
  out.closed[3] = fixed("-4", work);
  out.closed[2] = size_series(SizeVar::t, work) * Poly(4);
  out.closed[1] = (fixed("1", work) + size_series(SizeVar::t, work)) * Poly(8);
  PolySeries t = size_series(SizeVar::t, work);
  out.closed[0] = fixed("-4", work) - t * Poly(40) - t * t * Poly(4) + t * t * m1 * Poly(32);
  PolySeries res = terms.lhs;
  for (unsigned r = 0; r <= 4; ++r) res -= out.closed[r] * terms.g[r];
  out.residual = res.truncated(n);
  for (auto& c : out.closed) c = c.truncated(n);
  return out;
}

inline std::vector<ResidualReport> bipartite_invariant_check(int n) {
  BipartiteInvariant inv = bipartite_invariant(n);
  std::vector<ResidualReport> out;
  for (int r = 4; r >= 0; --r)
    out.push_back(make_report("C" + std::to_string(r), inv.c[r] - inv.closed[r]));
  out.push_back(make_report("invariant", inv.residual));
  return out;
}

}  // namespace potts
