#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "potts/arith/linsolve.hpp"
#include "potts/solver/model.hpp"

namespace potts {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficient tables indexed [size order][x-power].
using Table2 = std::vector<std::vector<Poly>>;

struct SolverState {
  ModelSpec spec;
  int order_done = 0;
  // p and q hold orders 0..order_done. r holds orders 0..order_done as well,
  // but its last row carries only the fixed entries: the free entries of
  // R at order i are solved together with P and Q at order i+1.
  Table2 p, q, r;
  // determinants[i] is det S_i (the Jacobian at the solution for i = 1).
  std::vector<RatFrac> determinants;
  PolySeries main;

  const Table2& table(Table t) const { return t == Table::P ? p : t == Table::Q ? q : r; }
  int r_order() const { return order_done - 1; }
};

inline SolverState initial_state(Model model) {
  SolverState st;
  st.spec = make_spec(model);
  st.p = {st.spec.p0};
  st.q = {st.spec.q0};
  st.r = {st.spec.r0};
  st.determinants = {RatFrac(1)};
  st.main = PolySeries(st.spec.size_var, 0);
  return st;
}

namespace detail {

// Series in the size variable whose coefficients are polynomials in x.
using XSeries = std::vector<Poly>;

inline Poly x_power(unsigned j) { return Poly::variable(sym::x, j); }

inline XSeries to_x(const Table2& t) {
  XSeries out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<Poly> row = t[i];
    out[i] = Poly::from_coefficients_in(sym::x, row);
  }
  return out;
}

// Coefficients of s^{n-1} of the system numerator
//   2 Q_s P D - Q P_s D - 2 Q P D_s - (2 R_x P D - R P_x D - 2 R P D_x),
// assembled from the convolutions C_m = sum Q_a P_b, A_m = sum a Q_a P_b,
// sum (2 R'_a P_b - R_a P'_b) and sum R_a P_b over a + b = m.
class Numerator {
 public:
  Numerator(const ModelSpec& spec, XSeries p, XSeries q, XSeries r)
      : spec_(spec), p_(std::move(p)), q_(std::move(q)), r_(std::move(r)) {
    for (const auto& s : p_) dp_.push_back(s.derivative(sym::x));
    for (const auto& s : r_) dr_.push_back(s.derivative(sym::x));
    for (int k = 0; k < 2; ++k) dx_[k] = spec.d[k].derivative(sym::x);
  }

  Poly coefficient(int n) {
    Poly out;
    for (int i3 = 0; i3 < 2; ++i3) {
      int m = n - i3;
      if (m >= 0) {
        const auto& c = conv(m);
        Poly inner = c[1].scaled(Rational(3)) - c[0].scaled(Rational(n + i3));
        if (!inner.is_zero()) out += inner * spec_.d[i3];
      }
      if (m - 1 >= 0) {
        const auto& c = conv(m - 1);
        if (!c[2].is_zero()) out -= c[2] * spec_.d[i3];
        if (!c[3].is_zero() && !dx_[i3].is_zero()) out += (c[3] * dx_[i3]).scaled(Rational(2));
      }
    }
    return out;
  }

 private:
  static const Poly& at(const XSeries& s, int i) {
    static const Poly zero;
    return i >= 0 && i < static_cast<int>(s.size()) ? s[static_cast<std::size_t>(i)] : zero;
  }

  const std::array<Poly, 4>& conv(int m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    std::array<Poly, 4> c;
    for (int a = 0; a <= m; ++a) {
      const Poly& pb = at(p_, m - a);
      if (pb.is_zero()) continue;
      const Poly& qa = at(q_, a);
      if (!qa.is_zero()) {
        Poly prod = qa * pb;
        c[1] += prod.scaled(Rational(a));
        c[0] += prod;
      }
      const Poly& ra = at(r_, a);
      if (!ra.is_zero()) {
        c[2] += (at(dr_, a) * pb).scaled(Rational(2)) - ra * at(dp_, m - a);
        c[3] += ra * pb;
      }
    }
    return cache_.emplace(m, std::move(c)).first->second;
  }

  const ModelSpec& spec_;
  XSeries p_, q_, r_;
  XSeries dp_, dr_;
  Poly dx_[2];
  std::map<int, std::array<Poly, 4>> cache_;
};

inline std::vector<Poly> row_values(const ModelSpec& spec, const std::vector<RowSpec>& rows, const XSeries& p,
                                    const XSeries& q, const XSeries& r) {
  Numerator num(spec, p, q, r);
  std::map<int, std::vector<Poly>> coeffs;
  std::vector<Poly> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    auto it = coeffs.find(row.n);
    if (it == coeffs.end()) it = coeffs.emplace(row.n, num.coefficient(row.n).coefficients_in(sym::x)).first;
    Poly v;
    for (unsigned j = row.jlo; j <= row.jhi && j < it->second.size(); ++j) v += it->second[j];
    out.push_back(std::move(v));
  }
  return out;
}

inline RatFrac reduced(const RatFrac& f) { return f.reduce(); }

struct BilinearSystem {
  // Row r reads c[r] + sum_k lin[r][k] u_k + sum_{k,l} quad[r][k][l] u_k u_l = 0,
  // where quad couples only P-type k with Q/R-type l.
  std::vector<Poly> c;
  std::vector<std::vector<Poly>> lin;
  std::vector<std::vector<std::vector<Poly>>> quad;
  std::vector<bool> p_type;

  bool is_linear_row(std::size_t r) const {
    for (const auto& row : quad[r])
      for (const auto& e : row)
        if (!e.is_zero()) return false;
    return true;
  }
  bool is_linear() const {
    for (std::size_t r = 0; r < c.size(); ++r)
      if (!is_linear_row(r)) return false;
    return true;
  }

  std::vector<std::vector<Poly>> jacobian(const std::vector<Poly>& u) const {
    const std::size_t m = u.size();
    auto j = lin;
    for (std::size_t r = 0; r < c.size(); ++r)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          if (quad[r][k][l].is_zero()) continue;
          j[r][k] += quad[r][k][l] * u[l];
          j[r][l] += quad[r][k][l] * u[k];
        }
    return j;
  }
};

// Solves a system whose linear rows leave an affine family on which the
// remaining rows become linear. Returns the unique solution.
inline std::vector<RatFrac> solve_bilinear(const BilinearSystem& sys, PivotRule rule) {
  const std::size_t m = sys.p_type.size();
  std::vector<std::size_t> lin_rows, quad_rows;
  for (std::size_t r = 0; r < sys.c.size(); ++r) (sys.is_linear_row(r) ? lin_rows : quad_rows).push_back(r);

  // Parameterize the linear rows: pick the first set of free columns whose
  // complement gives a nonsingular square block, then u = u0 + N z.
  const std::size_t f = m - lin_rows.size();
  if (lin_rows.size() > m || f != quad_rows.size())
    throw SolverError("order-1 system: " + std::to_string(lin_rows.size()) + " linear and " +
                      std::to_string(quad_rows.size()) + " nonlinear rows for " + std::to_string(m) + " unknowns");
  std::vector<bool> is_free(m, false);
  std::vector<std::size_t> free_cols, piv_cols;
  std::vector<RatFrac> u0(m);
  std::vector<std::vector<RatFrac>> nmat(m, std::vector<RatFrac>(f));
  std::fill(is_free.end() - static_cast<std::ptrdiff_t>(f), is_free.end(), true);
  bool found = false;
  do {
    free_cols.clear();
    piv_cols.clear();
    for (std::size_t k = 0; k < m; ++k) (is_free[k] ? free_cols : piv_cols).push_back(k);
    FracMatrix<PottsVars> a;
    for (auto r : lin_rows) {
      std::vector<RatFrac> row;
      for (auto k : piv_cols) row.emplace_back(sys.lin[r][k]);
      a.push_back(std::move(row));
    }
    std::vector<std::vector<RatFrac>> rhs(f + 1);
    for (auto r : lin_rows) {
      rhs[0].emplace_back(-sys.c[r]);
      for (std::size_t b = 0; b < f; ++b) rhs[b + 1].emplace_back(-sys.lin[r][free_cols[b]]);
    }
    try {
      auto s0 = solve_linear_exact(a, rhs[0], rule);
      for (std::size_t t = 0; t < piv_cols.size(); ++t) u0[piv_cols[t]] = s0.x[t];
      for (std::size_t b = 0; b < f; ++b) {
        auto sb = solve_linear_exact(a, rhs[b + 1], rule);
        for (std::size_t t = 0; t < piv_cols.size(); ++t) nmat[piv_cols[t]][b] = sb.x[t];
        nmat[free_cols[b]][b] = RatFrac(1);
      }
      found = true;
    } catch (const SingularSystemError<PottsVars>&) {
    }
  } while (!found && std::next_permutation(is_free.begin(), is_free.end()));
  if (!found) throw SolverError("order-1 system: linear rows are rank deficient");

  FracMatrix<PottsVars> zmat(f, std::vector<RatFrac>(f));
  std::vector<RatFrac> zrhs(f);
  for (std::size_t qi = 0; qi < f; ++qi) {
    std::size_t r = quad_rows[qi];
    RatFrac cst(sys.c[r]);
    std::vector<RatFrac> lz(f);
    std::vector<std::vector<RatFrac>> qz(f, std::vector<RatFrac>(f));
    for (std::size_t k = 0; k < m; ++k) {
      if (sys.lin[r][k].is_zero()) continue;
      RatFrac lk(sys.lin[r][k]);
      cst = reduced(cst + lk * u0[k]);
      for (std::size_t b = 0; b < f; ++b) lz[b] = reduced(lz[b] + lk * nmat[k][b]);
    }
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) {
        if (sys.quad[r][k][l].is_zero()) continue;
        RatFrac bkl(sys.quad[r][k][l]);
        cst = reduced(cst + bkl * u0[k] * u0[l]);
        for (std::size_t b = 0; b < f; ++b)
          lz[b] = reduced(lz[b] + bkl * (u0[k] * nmat[l][b] + nmat[k][b] * u0[l]));
        for (std::size_t b1 = 0; b1 < f; ++b1)
          for (std::size_t b2 = 0; b2 < f; ++b2) qz[b1][b2] = reduced(qz[b1][b2] + bkl * nmat[k][b1] * nmat[l][b2]);
      }
    for (std::size_t b1 = 0; b1 < f; ++b1)
      for (std::size_t b2 = b1; b2 < f; ++b2) {
        RatFrac s = b1 == b2 ? qz[b1][b1] : qz[b1][b2] + qz[b2][b1];
        if (!s.is_zero()) throw SolverError("order-1 system stays nonlinear on the affine family");
      }
    zmat[qi] = lz;
    zrhs[qi] = -cst;
  }
  auto zsol = solve_linear_exact(zmat, zrhs, rule);
  std::vector<RatFrac> u(m);
  for (std::size_t k = 0; k < m; ++k) {
    RatFrac v = u0[k];
    for (std::size_t b = 0; b < f; ++b) v = v + nmat[k][b] * zsol.x[b];
    u[k] = reduced(v);
  }
  return u;
}

}  // namespace detail

// Builds S_i for i = order_done + 1, solves it exactly and appends C_i.
inline void advance_order(SolverState& st, PivotRule rule = PivotRule::first_nonzero) {
  const ModelSpec& spec = st.spec;
  const int i = st.order_done + 1;
  st.p.emplace_back(spec.deg_p + 1);
  st.q.emplace_back(spec.deg_q + 1);
  st.r.emplace_back(spec.deg_r + 1);

  const auto rows = spec.rows(i);
  const std::size_t m = spec.unknowns.size();
  const detail::XSeries pk = detail::to_x(st.p), qk = detail::to_x(st.q), rk = detail::to_x(st.r);

  auto unit = [&](const Slot& s) {
    detail::XSeries e(static_cast<std::size_t>(i - s.lag + 1));
    e.back() = detail::x_power(s.j);
    return e;
  };
  const detail::XSeries none;

  detail::BilinearSystem sys;
  sys.c = detail::row_values(spec, rows, pk, qk, rk);
  sys.lin.assign(rows.size(), std::vector<Poly>(m));
  sys.quad.assign(rows.size(), std::vector<std::vector<Poly>>(m, std::vector<Poly>(m)));
  for (std::size_t k = 0; k < m; ++k) {
    const Slot& s = spec.unknowns[k];
    sys.p_type.push_back(s.table == Table::P);
    auto e = unit(s);
    std::vector<Poly> col;
    if (s.table == Table::P) {
      col = detail::row_values(spec, rows, e, qk, rk);
    } else if (s.table == Table::Q) {
      col = detail::row_values(spec, rows, pk, e, none);
    } else {
      col = detail::row_values(spec, rows, pk, none, e);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) sys.lin[r][k] = std::move(col[r]);
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!sys.p_type[k]) continue;
    auto ek = unit(spec.unknowns[k]);
    for (std::size_t l = 0; l < m; ++l) {
      const Slot& s = spec.unknowns[l];
      if (s.table == Table::P) continue;
      auto el = unit(s);
      auto v = s.table == Table::Q ? detail::row_values(spec, rows, ek, el, none)
                                   : detail::row_values(spec, rows, ek, none, el);
      for (std::size_t r = 0; r < rows.size(); ++r) sys.quad[r][k][l] = std::move(v[r]);
    }
  }

  std::vector<RatFrac> sol;
  RatFrac det;
  if (sys.is_linear()) {
    FracMatrix<PottsVars> a(rows.size(), std::vector<RatFrac>(m));
    std::vector<RatFrac> rhs;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t k = 0; k < m; ++k) a[r][k] = RatFrac(sys.lin[r][k]);
      rhs.emplace_back(-sys.c[r]);
    }
    try {
      auto ls = solve_linear_exact(a, rhs, rule);
      sol = std::move(ls.x);
      det = std::move(ls.determinant);
    } catch (const SingularSystemError<PottsVars>& e) {
      throw SolverError("singular system at order " + std::to_string(i) + ": " + e.what());
    }
  } else {
    sol = detail::solve_bilinear(sys, rule);
  }

  std::vector<Poly> values;
  for (std::size_t k = 0; k < m; ++k) {
    auto poly = sol[k].to_poly();
    if (!poly) {
      const Slot& s = spec.unknowns[k];
      const char* t = s.table == Table::P ? "P" : s.table == Table::Q ? "Q" : "R";
      throw SolverError("coefficient " + std::string(t) + "_{" + std::to_string(i - s.lag) + "," +
                        std::to_string(s.j) + "} is not a polynomial: " + to_string(sol[k]));
    }
    values.push_back(std::move(*poly));
  }
  if (!sys.is_linear()) {
    auto jac = sys.jacobian(values);
    FracMatrix<PottsVars> a(rows.size(), std::vector<RatFrac>(m));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t k = 0; k < m; ++k) a[r][k] = RatFrac(jac[r][k]);
    det = solve_linear_exact(a, std::vector<RatFrac>(m), rule).determinant;
  }

  for (std::size_t k = 0; k < m; ++k) {
    const Slot& s = spec.unknowns[k];
    Table2& t = s.table == Table::P ? st.p : s.table == Table::Q ? st.q : st.r;
    t[static_cast<std::size_t>(i - s.lag)][s.j] = std::move(values[k]);
  }
  st.determinants.push_back(std::move(det));
  st.order_done = i;
}

// The coefficients [s^0..s^order] of x^j in one table, as a series.
inline PolySeries column(const SolverState& st, Table t, unsigned j, int order) {
  const Table2& tab = st.table(t);
  if (order < 0 || order >= static_cast<int>(tab.size()) || (t == Table::R && order > st.r_order()))
    throw SeriesError("table column requested beyond the solved order");
  PolySeries s(st.spec.size_var, order);
  for (int i = 0; i <= order; ++i)
    if (j < tab[static_cast<std::size_t>(i)].size()) s[i] = tab[static_cast<std::size_t>(i)][j];
  return s;
}

inline PolySeries constant_series(const Poly& c, SizeVar var, int order) {
  PolySeries s(var, order);
  s[0] = c;
  return s;
}

// The size variable itself, known exactly to any order.
inline PolySeries size_series(SizeVar var, int order) {
  PolySeries s(var, order);
  if (order >= 1) s[1] = Poly(1);
  return s;
}

// Main series from the tables: t^2 M_1 for maps, T_1 for triangulations.
inline PolySeries extract_main(const SolverState& st) {
  const int n = st.order_done;
  const SizeVar v = st.spec.size_var;
  auto parser = make_potts_parser<PottsVars>();
  auto c = [&](const char* text) { return constant_series(parser.parse(text), v, n); };
  const PolySeries s = size_series(v, n);
  if (st.spec.model == Model::maps) {
    PolySeries p3 = column(st, Table::P, 3, n), p2 = column(st, Table::P, 2, n), q0 = column(st, Table::Q, 0, n);
    PolySeries num = s * c("4*(1 + w*(3*beta + q))") - p3 * p3 * Poly(Rational(1, 4)) -
                     s * c("2*(1 + nu - w*(2*beta + q))") * p3 + p2 - q0 * Poly(2);
    return divide_exact(num, parser.parse("12*(beta^2 + q*nu)"));
  }
  PolySeries p1 = column(st, Table::P, 1, n), q0 = column(st, Table::Q, 0, n), q1 = column(st, Table::Q, 1, n);
  PolySeries num = c("4*nu^2") * p1 - c("4*nu") * q0 - (q1 - c("1")) * (q1 + c("nu - 3")) -
                   s * c("2*nu*(q*nu - 24*beta - 6*q)");
  return divide_exact(num, parser.parse("20*nu^2*q"));
}

inline SolverState solve(Model model, int order, PivotRule rule = PivotRule::first_nonzero) {
  if (order < 1) throw std::invalid_argument("solver order must be at least 1");
  SolverState st = initial_state(model);
  while (st.order_done < order) advance_order(st, rule);
  st.main = extract_main(st);
  return st;
}

// M_1 itself (maps), obtained from t^2 M_1 by dropping two orders.
inline PolySeries maps_m1(const SolverState& st) { return st.main.divided_by_var(2); }

// T_2 = T_1 / nu (triangulations).
inline PolySeries triangulations_t2(const SolverState& st) { return divide_exact(st.main, parse_poly("nu")); }

}  // namespace potts
