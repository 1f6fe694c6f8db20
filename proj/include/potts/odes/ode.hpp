#pragma once

#include <array>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "potts/arith/poly_parse.hpp"
#include "potts/arith/ratfrac.hpp"
#include "potts/arith/series.hpp"

#ifndef POTTS_FIXTURE_DIR
#define POTTS_FIXTURE_DIR "fixtures"
#endif

namespace potts {

namespace ode_sym {
inline constexpr std::size_t q = 0;
inline constexpr std::size_t b = 1;
inline constexpr std::size_t w = 2;
inline constexpr std::size_t t = 3;
// S, S', S'', S''' and F, F'.
inline constexpr std::size_t X = 4;
inline constexpr std::size_t Y = 5;
inline constexpr std::size_t Z = 6;
inline constexpr std::size_t T = 7;
inline constexpr std::size_t U = 8;
inline constexpr std::size_t V = 9;
}  // namespace ode_sym

class OdeFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A differential polynomial P(S, S', S'', S''', F, F') with coefficients
// in the parameters and the size variable.
struct OdeSpec {
  std::string name;
  SizeVar size_var = SizeVar::t;
  int order = 0;
  int degree = 0;
  std::size_t terms = 0;
  std::string series;  // what S (and F) stand for
  OdePoly poly;
};

inline int differential_order(const OdePoly& p) {
  int k = -1;
  const std::array<std::pair<std::size_t, int>, 6> weights{
      {{ode_sym::X, 0}, {ode_sym::Y, 1}, {ode_sym::Z, 2}, {ode_sym::T, 3}, {ode_sym::U, 0}, {ode_sym::V, 1}}};
  for (const auto& [v, w] : weights)
    if (p.degree(v) > 0) k = std::max(k, w);
  return k;
}

inline int placeholder_degree(const OdePoly& p) {
  int d = 0;
  for (const auto& t : p.terms()) {
    auto e = OdePoly::unpack(t.mono);
    int s = 0;
    for (std::size_t v = ode_sym::X; v <= ode_sym::V; ++v) s += static_cast<int>(e[v]);
    d = std::max(d, s);
  }
  return d;
}

// Fixture format: "key: value" header lines, optional "let name = expr"
// definitions, then "poly:" followed by the expression (which may span
// several lines). Lines starting with '#' are comments.
inline OdeSpec parse_ode(std::string_view text) {
  OdeSpec spec;
  auto parser = make_potts_parser<OdeVars>();
  std::istringstream in{std::string(text)};
  std::string line, body;
  bool in_poly = false;
  bool has_order = false, has_degree = false, has_terms = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (in_poly) {
      if (!line.empty() && line[0] == '#') continue;
      body += line + "\n";
      continue;
    }
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    if (line.rfind("let ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw OdeFormatError("let without '=': " + line);
      std::string nm = line.substr(4, eq - 4);
      nm.erase(nm.find_last_not_of(" \t") + 1);
      parser.define(nm, parser.parse(line.substr(eq + 1)));
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw OdeFormatError("malformed fixture line: " + line);
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    auto vs = value.find_first_not_of(" \t");
    value = vs == std::string::npos ? "" : value.substr(vs);
    if (key == "name") {
      spec.name = value;
    } else if (key == "size_var") {
      if (value == "t") {
        spec.size_var = SizeVar::t;
      } else if (value == "w") {
        spec.size_var = SizeVar::w;
      } else {
        throw OdeFormatError("size_var must be t or w");
      }
    } else if (key == "order") {
      spec.order = std::stoi(value);
      has_order = true;
    } else if (key == "degree") {
      spec.degree = std::stoi(value);
      has_degree = true;
    } else if (key == "terms") {
      spec.terms = std::stoul(value);
      has_terms = true;
    } else if (key == "series") {
      spec.series = value;
    } else if (key == "poly") {
      in_poly = true;
      body = value + "\n";
    } else {
      throw OdeFormatError("unknown fixture key '" + key + "'");
    }
  }
  if (!in_poly) throw OdeFormatError("fixture has no poly section");
  if (spec.name.empty() || !has_order || !has_degree || !has_terms)
    throw OdeFormatError("fixture header needs name, order, degree and terms");
  try {
    spec.poly = parser.parse(body);
  } catch (const ParseError& e) {
    throw OdeFormatError("fixture " + spec.name + ": " + e.what());
  }
  return spec;
}

inline std::string default_ode_dir() { return std::string(POTTS_FIXTURE_DIR) + "/odes"; }

inline std::string ode_fixture_path(const std::string& name, const std::string& dir = default_ode_dir()) {
  return dir + "/" + name + ".ode";
}

inline OdeSpec load_ode(const std::string& name, const std::string& dir = default_ode_dir()) {
  std::ifstream f(ode_fixture_path(name, dir));
  if (!f) throw OdeFormatError("cannot open ODE fixture " + ode_fixture_path(name, dir));
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_ode(ss.str());
}

inline const std::vector<std::string>& ode_fixture_names() {
  static const std::vector<std::string> names{"tutte",         "q4-triangulations", "q0-triangulations",
                                              "forest",        "self-dual",         "q4-maps-first",
                                              "q4-maps-second"};
  return names;
}

namespace detail {

template <class C>
C lift(const Poly& p);
template <>
inline Poly lift<Poly>(const Poly& p) {
  return p;
}
template <>
inline RatFrac lift<RatFrac>(const Poly& p) {
  return RatFrac(p);
}

// Coefficient polynomial of the differential polynomial, read as a series
// in the size variable with coefficients in the parameter ring.
template <class C>
Series<C> coefficient_series(const OdePoly& c, SizeVar var, int order) {
  const std::size_t size_sym = var == SizeVar::t ? ode_sym::t : ode_sym::w;
  const std::size_t other = var == SizeVar::t ? ode_sym::w : ode_sym::t;
  if (c.degree(other) > 0 && other == ode_sym::t)
    throw OdeFormatError("symbol t appears in a differential polynomial in w");
  std::vector<Poly> cs(static_cast<std::size_t>(order + 1));
  for (const auto& t : c.terms()) {
    auto e = OdePoly::unpack(t.mono);
    int k = static_cast<int>(e[size_sym]);
    if (k > order) continue;
    Poly::Exponents pe{};
    pe[sym::q] = e[ode_sym::q];
    pe[sym::b] = e[ode_sym::b];
    if (var == SizeVar::t) pe[sym::w] = e[ode_sym::w];
    cs[static_cast<std::size_t>(k)] += Poly::monomial(pe, t.coef);
  }
  std::vector<C> out;
  out.reserve(cs.size());
  for (const auto& p : cs) out.push_back(lift<C>(p));
  return Series<C>(var, std::move(out));
}

}  // namespace detail

// Substitutes s (and f) with their formal derivatives into the differential
// polynomial. The result is valid through order N - k.
template <class C>
Series<C> ode_residual(const OdeSpec& spec, const Series<C>& s, const Series<C>* f = nullptr) {
  if (s.var() != spec.size_var) throw SeriesError("series variable does not match the ODE");
  const OdePoly& p = spec.poly;
  std::array<Series<C>, 6> base;
  std::array<bool, 6> have{};
  base[0] = s;
  have[0] = true;
  for (int k = 1; k <= 3; ++k) {
    if (p.degree(ode_sym::X + static_cast<std::size_t>(k)) == 0 && k > differential_order(p)) break;
    base[static_cast<std::size_t>(k)] = base[static_cast<std::size_t>(k - 1)].derivative();
    have[static_cast<std::size_t>(k)] = true;
  }
  if (p.degree(ode_sym::U) > 0 || p.degree(ode_sym::V) > 0) {
    if (f == nullptr) throw std::invalid_argument("ODE " + spec.name + " needs a second series");
    base[4] = *f;
    base[5] = f->derivative();
    have[4] = have[5] = true;
  }
  int order = s.order();
  for (std::size_t k = 0; k < 6; ++k)
    if (have[k]) order = std::min(order, base[k].order());

  // Group terms by their placeholder monomial.
  std::map<std::array<unsigned, 6>, std::vector<OdePoly::Term>> groups;
  for (const auto& t : p.terms()) {
    auto e = OdePoly::unpack(t.mono);
    std::array<unsigned, 6> key{};
    for (std::size_t k = 0; k < 6; ++k) {
      key[k] = e[ode_sym::X + k];
      e[ode_sym::X + k] = 0;
    }
    groups[key].push_back({OdePoly::pack(e), t.coef});
  }

  std::array<std::vector<Series<C>>, 6> pows;
  auto power = [&](std::size_t k, unsigned n) -> const Series<C>& {
    auto& cache = pows[k];
    if (cache.empty()) {
      Series<C> one(spec.size_var, order);
      one[0] = C(1);
      cache.push_back(std::move(one));
    }
    while (cache.size() <= n) cache.push_back((cache.back() * base[k].truncated(order)));
    return cache[n];
  };

  Series<C> total(spec.size_var, order);
  for (auto& [key, terms] : groups) {
    OdePoly coef = OdePoly::from_terms(terms);
    Series<C> term = detail::coefficient_series<C>(coef, spec.size_var, order);
    for (std::size_t k = 0; k < 6; ++k) {
      if (key[k] == 0) continue;
      if (!have[k]) throw std::logic_error("placeholder without series");
      term = term * power(k, key[k]);
    }
    total += term;
  }
  return total;
}

// A coefficient recurrence: next(a, n) returns a_n from a_0..a_{n-1}.
struct RecurrenceSpec {
  std::string name;
  SizeVar var;
  std::vector<Poly> initial;
  std::function<Poly(const std::vector<Poly>&, int)> next;
};

inline PolySeries run_recurrence(const RecurrenceSpec& spec, int n) {
  std::vector<Poly> a = spec.initial;
  while (static_cast<int>(a.size()) <= n) a.push_back(spec.next(a, static_cast<int>(a.size())));
  a.resize(static_cast<std::size_t>(n + 1));
  return PolySeries(spec.var, std::move(a));
}

// a_2 = q - 1 and
// (n+1)(n+2) a_{n+2} = (q-4)(3n-1)(3n-2) a_{n+1} + 2 sum_{i=1}^n i(i+1)(3n-3i+1) a_{i+1} a_{n+2-i}.
inline RecurrenceSpec tutte_recurrence_spec() {
  RecurrenceSpec r;
  r.name = "tutte";
  r.var = SizeVar::w;
  r.initial = {Poly(), Poly(), parse_poly("q - 1")};
  r.next = [](const std::vector<Poly>& a, int m) {
    const int n = m - 2;
    Poly acc = (parse_poly("q - 4") * a[static_cast<std::size_t>(n + 1)]).scaled(Rational((3 * n - 1) * (3 * n - 2)));
    for (int i = 1; i <= n; ++i)
      acc += (a[static_cast<std::size_t>(i + 1)] * a[static_cast<std::size_t>(n + 2 - i)])
                 .scaled(Rational(2 * i * (i + 1) * (3 * n - 3 * i + 1)));
    return acc.scaled(Rational(1, (n + 1) * (n + 2)));
  };
  return r;
}

inline PolySeries tutte_recurrence(int n) {
  if (n < 2) throw std::invalid_argument("tutte_recurrence needs N >= 2");
  return run_recurrence(tutte_recurrence_spec(), n);
}

}  // namespace potts
