#pragma once

#include "potts/solver/specialize.hpp"

namespace potts {

// Map duality on M_1: M(q,nu,w,t;1) = w^2 q M(q,mu,1/(wq),tw(nu-1);1) with
// (mu-1)(nu-1) = q. Given M_1 as a series in t, returns the difference of the
// two sides, coefficient by coefficient in Q(q,beta,w).
inline FracSeries potts_duality_residual(const PolySeries& m1) {
  Bindings swap{{sym::b, RatFrac(Poly::variable(sym::q), Poly::variable(sym::b))},
                {sym::w, RatFrac(Poly(1), Poly::variable(sym::w) * Poly::variable(sym::q))}};
  detail::Substituter sub(swap);
  const Poly wb = Poly::variable(sym::w) * Poly::variable(sym::b);
  const Poly lead = Poly::variable(sym::w).pow(2) * Poly::variable(sym::q);
  FracSeries out(m1.var(), m1.order());
  Poly scale = lead;
  for (int n = 0; n <= m1.order(); ++n) {
    out[n] = (RatFrac(m1[n]) - sub(m1[n]) * RatFrac(scale)).reduce();
    scale *= wb;
  }
  return out;
}

}  // namespace potts
