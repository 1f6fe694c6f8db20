#pragma once

#include <string>
#include <vector>

#include "potts/solver/solver.hpp"

namespace potts {

struct ResidualReport {
  std::string name;
  PolySeries residual;
  bool pass = false;
};

inline ResidualReport make_report(std::string name, PolySeries residual) {
  bool pass = residual.is_zero();
  return {std::move(name), std::move(residual), pass};
}

// Coefficients of s^0..s^{up_to-1} of the system numerator, each a
// polynomial in x. Zero iff the differential system holds to that order.
inline PolySeries system_residual(const SolverState& st, int up_to) {
  if (up_to < 1 || up_to > st.order_done) throw std::invalid_argument("residual order outside the solved range");
  Table2 p(st.p.begin(), st.p.begin() + up_to + 1);
  Table2 q(st.q.begin(), st.q.begin() + up_to + 1);
  Table2 r(st.r.begin(), st.r.begin() + up_to);
  detail::Numerator num(st.spec, detail::to_x(p), detail::to_x(q), detail::to_x(r));
  PolySeries out(st.spec.size_var, up_to - 1);
  for (int n = 1; n <= up_to; ++n) out[n - 1] = num.coefficient(n);
  return out;
}

// Formal antiderivative with zero constant term; gains one order.
inline PolySeries integrate(const PolySeries& s) {
  PolySeries out(s.var(), s.order() + 1);
  for (int k = 0; k <= s.order(); ++k) out[k + 1] = s[k].scaled(Rational(1, k + 1));
  return out;
}

namespace detail {

struct IdentityContext {
  const SolverState& st;
  PolyParser<PottsVars> parser = make_potts_parser<PottsVars>();
  int n;
  int nr;

  explicit IdentityContext(const SolverState& s) : st(s), n(s.order_done), nr(s.order_done - 1) {}

  PolySeries c(const char* text, int order) { return constant_series(parser.parse(text), st.spec.size_var, order); }
  PolySeries s(int order) const { return size_series(st.spec.size_var, order); }
  PolySeries col(Table t, unsigned j, int order) const { return column(st, t, j, order); }
  Poly poly(const char* text) { return parser.parse(text); }
};

// The main series reconstructed from its derivative characterization
// alone (independent of Q_0, P_2 resp. P_1), to order n, times the factor
// 2(beta^2 + q nu) for maps and 2 nu q for triangulations.
inline PolySeries scaled_main_from_derivative(IdentityContext& cx) {
  if (cx.st.spec.model == Model::maps) {
    PolySeries rhs = cx.col(Table::R, 1, cx.nr) + cx.c("2 + 2*beta*w", cx.nr) -
                     cx.c("(1 + nu - w*(2*beta + q))/2", cx.nr) * cx.col(Table::P, 3, cx.nr);
    return integrate(rhs);
  }
  return integrate(cx.col(Table::R, 1, cx.nr) - cx.c("q*(beta - 1) - 8*beta", cx.nr));
}

}  // namespace detail

inline ResidualReport derivative_identity_residual(const SolverState& st) {
  detail::IdentityContext cx(st);
  const int nr = cx.nr;
  if (nr < 0) throw std::invalid_argument("derivative identity needs order at least 1");
  PolySeries d = st.main.derivative().truncated(nr);
  if (st.spec.model == Model::maps) {
    PolySeries res = d * cx.poly("2*(beta^2 + q*nu)") +
                     cx.c("(1 + nu - w*(2*beta + q))/2", nr) * cx.col(Table::P, 3, nr) - cx.col(Table::R, 1, nr) -
                     cx.c("2 + 2*beta*w", nr);
    return make_report("Mt1-expr", std::move(res));
  }
  PolySeries res = d * cx.poly("2*nu*q") - cx.col(Table::R, 1, nr) + cx.c("q*(beta - 1) - 8*beta", nr);
  return make_report("Tp1-T", std::move(res));
}

// The five non-differential identities of each model (plus the T_1'/Q_0/P_2
// connection for triangulations). Identities that define the main series
// are evaluated on the series rebuilt from the derivative characterization,
// so none of them holds by construction.
inline std::vector<ResidualReport> nondifferential_residuals(const SolverState& st) {
  detail::IdentityContext cx(st);
  const int n = cx.n;
  const int nr = cx.nr;
  std::vector<ResidualReport> out;
  PolySeries alt = detail::scaled_main_from_derivative(cx);
  if (st.spec.model == Model::maps) {
    out.push_back(make_report("P3Q1", cx.col(Table::P, 3, n) - cx.col(Table::Q, 1, n) * Poly(2) -
                                          cx.s(n) * cx.c("4*(1 + nu) - 4*w*(2*beta + q)", n)));
    out.push_back(make_report(
        "Q0R-M", cx.c("beta*(w*q + beta)*(q - 4)", nr) * cx.col(Table::Q, 0, nr) +
                     cx.c("q*(beta + 2)", nr) * cx.col(Table::R, 0, nr) +
                     (cx.s(nr) * cx.c("2*beta*(q - 4)*(w*q + beta)", nr) + cx.c("2*q", nr)) * cx.col(Table::R, 1, nr) -
                     cx.s(nr) * cx.c("2*beta*(q - 4)*(w*q - 2)*(w*q + beta)", nr) - cx.c("2*q*(w*q - 2)", nr)));
    out.push_back(make_report(
        "Q1R-M", cx.c("beta*(w*q + beta)*(q - 4)", nr) * cx.col(Table::Q, 1, nr) -
                     cx.c("2*(beta^2 + q*beta + q)", nr) * cx.col(Table::R, 0, nr) -
                     cx.c("q*(beta + 2)", nr) * cx.col(Table::R, 1, nr) -
                     cx.s(nr) * cx.c("2*beta*(q - 4)*(2*beta*w + w*q - beta - 2)*(w*q + beta)", nr) +
                     cx.c("2*q*(beta*q*w - 2*beta*w + w*q - beta - 2)", nr)));
    PolySeries p3 = cx.col(Table::P, 3, n);
    out.push_back(make_report(
        "M11-PQ-encore", alt * Poly(6) + p3 * p3 * Poly(Rational(1, 4)) +
                             cx.s(n) * cx.c("2*(1 + nu - w*(2*beta + q))", n) * p3 - cx.col(Table::P, 2, n) +
                             cx.col(Table::Q, 0, n) * Poly(2) - cx.s(n) * cx.c("4*(1 + w*(3*beta + q))", n)));
    out.push_back(derivative_identity_residual(st));
    return out;
  }
  out.push_back(make_report("P2Q1-T", cx.col(Table::P, 2, n) * cx.poly("nu") - cx.col(Table::Q, 1, n) -
                                          cx.c("nu/4 - 1", n)));
  out.push_back(make_report(
      "Q0R-T", cx.c("nu*q*(q - 4)", nr) * cx.col(Table::Q, 0, nr) - cx.c("4*beta + q", nr) * cx.col(Table::R, 0, nr) +
                   (cx.s(nr) * cx.c("2*nu*q*(q - 4)", nr) + cx.c("2*beta", nr)) * cx.col(Table::R, 1, nr) -
                   cx.s(nr) * cx.c("2*beta*(q - 4)*nu*q*(q - 4)", nr) - cx.c("2*beta*(q - 4)*beta", nr)));
  out.push_back(make_report(
      "Q1R-T", cx.c("nu*beta*q*(q - 4)", nr) * cx.col(Table::Q, 1, nr) - cx.c("2*nu^2*q", nr) * cx.col(Table::R, 0, nr) +
                   cx.c("beta*(4*beta + q)", nr) * cx.col(Table::R, 1, nr) - cx.c("2*(q - 4)*beta^2*(4*beta + q)", nr)));
  PolySeries q1 = cx.col(Table::Q, 1, n);
  out.push_back(make_report(
      "Q1-PQt-bis", alt * cx.poly("10*nu") - cx.c("4*nu^2", n) * cx.col(Table::P, 1, n) +
                        cx.c("4*nu", n) * cx.col(Table::Q, 0, n) + (q1 - cx.c("1", n)) * (q1 + cx.c("nu - 3", n)) +
                        cx.s(n) * cx.c("2*nu*(q*nu - 24*beta - 6*q)", n)));
  out.push_back(derivative_identity_residual(st));
  PolySeries d = divide_exact(st.main.derivative(), cx.poly("nu"));
  const int m = n - 1;
  out.push_back(make_report(
      "T2prime", (cx.s(m) * cx.c("8*nu^3*q^2", m) + cx.c("2*beta*(4*beta^2 - q)", m)) * d +
                     cx.c("2*q*nu", m) * cx.col(Table::Q, 0, m) - cx.c("beta*(q + 4*beta)", m) * cx.col(Table::P, 2, m) -
                     (cx.s(m) * cx.c("4*q*nu*(4*beta + q)", m) - cx.c("(4*beta + q)*beta/4", m))));
  return out;
}

}  // namespace potts
