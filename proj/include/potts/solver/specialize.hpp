#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/solver/solver.hpp"

namespace potts {

class SpecializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simultaneous substitution of parameter symbols by fractions.
using Bindings = std::map<std::size_t, RatFrac>;

using FracTable = std::vector<std::vector<RatFrac>>;
using FracSeries = Series<RatFrac>;

struct SpecializedState {
  Model model;
  Bindings bindings;
  int order_done = 0;
  FracTable p, q, r;
  FracSeries main;

  const FracTable& table(Table t) const { return t == Table::P ? p : t == Table::Q ? q : r; }
};

namespace detail {

class Substituter {
 public:
  explicit Substituter(const Bindings& b) : bindings_(b) {}

  RatFrac operator()(const Poly& p) {
    if (p.is_zero()) return RatFrac();
    auto deg = p.degrees();
    // Common denominator: product of den(v)^deg_v(p) over bound symbols.
    Poly den(1);
    for (const auto& [v, val] : bindings_) den *= power(v, deg[v], false);
    Poly num;
    for (const auto& t : p.terms()) {
      auto e = Poly::unpack(t.mono);
      Poly::Exponents rest = e;
      Poly term(t.coef);
      for (const auto& [v, val] : bindings_) {
        rest[v] = 0;
        if (e[v] > 0) term *= power(v, e[v], true);
        if (deg[v] > e[v]) term *= power(v, deg[v] - e[v], false);
      }
      num += term.times_monomial(rest);
    }
    return RatFrac(std::move(num), std::move(den));
  }

  RatFrac operator()(const RatFrac& f) { return ((*this)(f.num()) / (*this)(f.den())).reduce(); }

 private:
  const Poly& power(std::size_t v, unsigned k, bool numerator) {
    auto& cache = (numerator ? num_pows_ : den_pows_)[v];
    const RatFrac& val = bindings_.at(v);
    const Poly& base = numerator ? val.num() : val.den();
    if (cache.empty()) cache.push_back(Poly(1));
    while (cache.size() <= k) cache.push_back(cache.back() * base);
    return cache[k];
  }

  const Bindings& bindings_;
  std::map<std::size_t, std::vector<Poly>> num_pows_, den_pows_;
};

inline bool binds(const Bindings& b, std::size_t v, const Rational& value) {
  auto it = b.find(v);
  return it != b.end() && it->second == RatFrac(value);
}

}  // namespace detail

// Substitutes into a polynomial or fraction without any licence check.
inline RatFrac substitute(const Poly& p, const Bindings& b) { return detail::Substituter(b)(p); }

// Substitution into already-solved generic tables. A binding that annihilates
// a factor of the recorded determinants is refused unless it is one of the
// licensed specializations: q = 4 (both models), q = 0 and nu = 0
// (triangulations); q = beta^2 with w = 1/beta annihilates nothing.
inline SpecializedState specialize(const SolverState& st, const Bindings& bindings) {
  for (const auto& [v, val] : bindings)
    if (v == sym::x || v == sym::y) throw SpecializationError("only q, b and w may be specialized");
  if (st.spec.model == Model::triangulations && bindings.count(sym::w))
    throw SpecializationError("w is the size variable of triangulations");
  detail::Substituter sub(bindings);
  for (const auto& [fname, factor] : st.spec.determinant_factors) {
    if (!sub(factor).is_zero()) continue;
    bool licensed = false;
    if (fname == "q-4") licensed = detail::binds(bindings, sym::q, Rational(4));
    if (st.spec.model == Model::triangulations) {
      if (fname == "q") licensed = detail::binds(bindings, sym::q, Rational(0));
      if (fname == "beta+1") licensed = detail::binds(bindings, sym::b, Rational(-1));
    }
    if (!licensed) throw SpecializationError("binding annihilates determinant factor " + fname);
  }
  SpecializedState out;
  out.model = st.spec.model;
  out.bindings = bindings;
  out.order_done = st.order_done;
  auto map_table = [&](const Table2& t) {
    FracTable r;
    for (const auto& row : t) {
      std::vector<RatFrac> fr;
      for (const auto& e : row) fr.push_back(sub(e));
      r.push_back(std::move(fr));
    }
    return r;
  };
  out.p = map_table(st.p);
  out.q = map_table(st.q);
  out.r = map_table(st.r);
  out.main = st.main.map([&](const Poly& c) { return sub(c); });
  return out;
}

inline FracSeries column(const SpecializedState& st, Table t, unsigned j, int order) {
  const FracTable& tab = st.table(t);
  if (order < 0 || order >= static_cast<int>(tab.size()) || (t == Table::R && order > st.order_done - 1))
    throw SeriesError("table column requested beyond the solved order");
  FracSeries s(st.main.var(), order);
  for (int i = 0; i <= order; ++i) s[i] = tab[static_cast<std::size_t>(i)][j];
  return s;
}

// Converts a fraction series to polynomial coefficients, if every one clears.
inline std::optional<PolySeries> to_poly_series(const FracSeries& s) {
  std::vector<Poly> cs;
  for (const auto& c : s.coeffs()) {
    auto p = c.to_poly();
    if (!p) return std::nullopt;
    cs.push_back(std::move(*p));
  }
  return PolySeries(s.var(), std::move(cs));
}

inline FracSeries to_frac_series(const PolySeries& s) {
  return s.map([](const Poly& c) { return RatFrac(c); });
}

// Parses "q=4", "b=-1", "q=beta^2", "w=1/beta" style bindings.
inline Bindings parse_bindings(const std::vector<std::string>& items) {
  Bindings out;
  auto parser = make_potts_parser<PottsVars>();
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw SpecializationError("binding '" + item + "' lacks '='");
    std::string lhs = item.substr(0, eq), rhs = item.substr(eq + 1);
    std::size_t v;
    if (lhs == "q") {
      v = sym::q;
    } else if (lhs == "b" || lhs == "beta") {
      v = sym::b;
    } else if (lhs == "w") {
      v = sym::w;
    } else if (lhs == "nu") {
      // nu = value  <=>  b = value - 1
      out[sym::b] = RatFrac(parser.parse(rhs) - Poly(1));
      continue;
    } else {
      throw SpecializationError("cannot bind symbol '" + lhs + "'");
    }
    auto slash = rhs.find('/');
    // A top-level "a/expr" with a non-constant denominator is a fraction.
    if (slash != std::string::npos) {
      try {
        out[v] = RatFrac(parser.parse(rhs));
        continue;
      } catch (const ParseError&) {
        out[v] = RatFrac(parser.parse(rhs.substr(0, slash)), parser.parse(rhs.substr(slash + 1)));
        continue;
      }
    }
    out[v] = RatFrac(parser.parse(rhs));
  }
  return out;
}

}  // namespace potts
