#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "potts/odes/ode.hpp"
#include "potts/solver/specialize.hpp"

namespace potts {

namespace detail {

inline Bindings bind(std::initializer_list<std::pair<const char*, const char*>> items) {
  std::vector<std::string> v;
  for (const auto& [k, val] : items) v.push_back(std::string(k) + "=" + val);
  return parse_bindings(v);
}

inline void require_model(const SolverState& st, Model m, const char* what) {
  if (st.spec.model != m) throw std::invalid_argument(std::string(what) + " needs a " + std::string(name(m)) + " state");
}

}  // namespace detail

// T_2 at nu = 0: the chromatic series of Tutte's equation.
inline FracSeries tutte_series(const SolverState& tri) {
  detail::require_model(tri, Model::triangulations, "tutte_series");
  SpecializedState sp = specialize(tri, detail::bind({{"nu", "0"}}));
  detail::Substituter sub(sp.bindings);
  return triangulations_t2(tri).map([&](const Poly& c) { return sub(c); });
}

// S = 2 T_1 - w at q = 4.
inline FracSeries q4_triangulation_series(const SolverState& tri) {
  detail::require_model(tri, Model::triangulations, "q4_triangulation_series");
  SpecializedState sp = specialize(tri, detail::bind({{"q", "4"}}));
  FracSeries s = sp.main * RatFrac(Poly(2));
  s[1] -= RatFrac(Poly(1));
  return s;
}

// T_1 at q = 0.
inline FracSeries q0_triangulation_series(const SolverState& tri) {
  detail::require_model(tri, Model::triangulations, "q0_triangulation_series");
  return specialize(tri, detail::bind({{"q", "0"}})).main;
}

// Spanning-forest series G(beta, w) = beta * T_1(q = 0, w / beta).
inline PolySeries forest_series(const SolverState& tri) {
  detail::require_model(tri, Model::triangulations, "forest_series");
  Bindings q0 = detail::bind({{"q", "0"}});
  PolySeries g(SizeVar::w, tri.main.order());
  const Poly beta = Poly::variable(sym::b);
  Poly scale = beta;
  for (int n = 0; n <= tri.main.order(); ++n) {
    auto c = substitute(tri.main[n], q0).to_poly();
    if (!c) throw SpecializationError("T1 at q = 0 has a non-polynomial coefficient");
    if (n == 0 || n == 1) {
      if (!c->is_zero()) throw SpecializationError("T1 at q = 0 is not O(w^2)");
      continue;
    }
    if (n > 2) scale *= beta;
    try {
      g[n] = c->divide_exact(scale);
    } catch (const DivisionError&) {
      throw SpecializationError("[w^" + std::to_string(n) + "] of the forest series is not divisible by beta^" +
                                std::to_string(n - 1));
    }
  }
  return g;
}

// W = 2 G - w / beta.
inline FracSeries forest_w_series(const PolySeries& g) {
  FracSeries s = to_frac_series(g) * RatFrac(Poly(2));
  s[1] -= RatFrac(Poly(1), Poly::variable(sym::b));
  return s;
}

// S = beta t^2 M_1 at q = beta^2, nu = beta + 1, w = 1/beta.
inline FracSeries self_dual_series(const SolverState& maps) {
  detail::require_model(maps, Model::maps, "self_dual_series");
  SpecializedState sp = specialize(maps, detail::bind({{"q", "beta^2"}, {"w", "1/beta"}}));
  return (sp.main * RatFrac(Poly::variable(sym::b))).map([](const RatFrac& c) { return c.reduce(); });
}

// P~_3 = P_3 + 8/(nu + 1): the x^3 coefficient of P after re-centering at
// X = x - 2/(nu + 1).
inline FracSeries shifted_p3(const SpecializedState& st) {
  if (st.model != Model::maps) throw std::invalid_argument("shifted_p3 needs a maps state");
  FracSeries p3 = column(st, Table::P, 3, st.order_done);
  Poly lambda = parse_poly("beta + 2");
  RatFrac shift = detail::Substituter(st.bindings)(RatFrac(Poly(8), lambda));
  p3[0] += shift;
  return p3;
}

inline std::pair<FracSeries, FracSeries> q4_maps_pair_residual(const SpecializedState& st, const FracSeries& p3,
                                                                const std::string& dir = default_ode_dir()) {
  if (st.model != Model::maps || !detail::binds(st.bindings, sym::q, Rational(4)))
    throw std::invalid_argument("q4_maps_pair_residual needs a maps state specialized at q = 4");
  return {ode_residual(load_ode("q4-maps-first", dir), st.main, &p3),
          ode_residual(load_ode("q4-maps-second", dir), st.main, &p3)};
}

inline std::pair<FracSeries, FracSeries> q4_maps_pair_residual(const SpecializedState& st) {
  return q4_maps_pair_residual(st, shifted_p3(st));
}

struct OdeCheck {
  std::string name;
  FracSeries residual;
  bool pass = false;
};

inline OdeCheck make_check(std::string name, FracSeries residual) {
  bool pass = residual.is_zero();
  return {std::move(name), std::move(residual), pass};
}

// The special-case equations that a generic state can feed, optionally
// restricted to those whose specialization matches `bindings`.
inline std::vector<std::string> applicable_odes(Model model, const Bindings& bindings = {}) {
  auto same = [&](std::initializer_list<std::pair<const char*, const char*>> items) {
    Bindings b = detail::bind(items);
    if (b.size() != bindings.size()) return false;
    for (const auto& [v, val] : b) {
      auto it = bindings.find(v);
      if (it == bindings.end() || !(it->second == val)) return false;
    }
    return true;
  };
  std::vector<std::string> names;
  if (model == Model::triangulations) {
    if (bindings.empty() || same({{"nu", "0"}})) names.push_back("tutte");
    if (bindings.empty() || same({{"q", "4"}})) names.push_back("q4-triangulations");
    if (bindings.empty() || same({{"q", "0"}})) {
      names.push_back("q0-triangulations");
      names.push_back("forest");
    }
  } else {
    if (bindings.empty() || same({{"q", "beta^2"}, {"w", "1/beta"}})) names.push_back("self-dual");
    if (bindings.empty() || same({{"q", "4"}})) {
      names.push_back("q4-maps-first");
      names.push_back("q4-maps-second");
    }
  }
  return names;
}

inline OdeCheck run_ode(const std::string& ode, const SolverState& st, const std::string& dir = default_ode_dir()) {
  auto spec = load_ode(ode, dir);
  if (ode == "tutte") return make_check(ode, ode_residual(spec, tutte_series(st)));
  if (ode == "q4-triangulations") return make_check(ode, ode_residual(spec, q4_triangulation_series(st)));
  if (ode == "q0-triangulations") return make_check(ode, ode_residual(spec, q0_triangulation_series(st)));
  if (ode == "forest") return make_check(ode, ode_residual(spec, forest_w_series(forest_series(st))));
  if (ode == "self-dual") return make_check(ode, ode_residual(spec, self_dual_series(st)));
  if (ode == "q4-maps-first" || ode == "q4-maps-second") {
    detail::require_model(st, Model::maps, "the q = 4 maps pair");
    SpecializedState q4 = specialize(st, detail::bind({{"q", "4"}}));
    FracSeries p3 = shifted_p3(q4);
    return make_check(ode, ode_residual(spec, q4.main, &p3));
  }
  throw std::invalid_argument("unknown special-case equation '" + ode + "'");
}

inline std::vector<OdeCheck> check_special_odes(const SolverState& st, const Bindings& bindings = {},
                                                const std::string& dir = default_ode_dir()) {
  std::vector<OdeCheck> out;
  for (const auto& ode : applicable_odes(st.spec.model, bindings)) out.push_back(run_ode(ode, st, dir));
  return out;
}

}  // namespace potts
