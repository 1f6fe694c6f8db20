#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "potts/arith/poly_parse.hpp"
#include "potts/arith/series.hpp"

namespace potts {

enum class Model { maps, triangulations };

inline std::string_view name(Model m) { return m == Model::maps ? "maps" : "triangulations"; }

inline Model parse_model(std::string_view s) {
  if (s == "maps") return Model::maps;
  if (s == "triangulations" || s == "triang") return Model::triangulations;
  throw std::invalid_argument("unknown model '" + std::string(s) + "'");
}

enum class Table { P, Q, R };

// One unknown of the order-i block: table, x-power, and the lag of its
// size index (R entries of block i live at order i-1).
struct Slot {
  Table table;
  unsigned j;
  int lag;
};

// A row of the order-i system: the sum over j in [jlo, jhi] of the
// coefficient of s^{n-1} x^j of the system numerator.
struct RowSpec {
  int n;
  unsigned jlo;
  unsigned jhi;
};

struct ModelSpec {
  Model model;
  SizeVar size_var;
  // D = d[0] + s d[1] as polynomials in x and the parameters.
  Poly d[2];
  unsigned deg_p, deg_q, deg_r;
  // Size-0 rows of the tables; entries of the top x-powers listed in
  // `fixed_*` stay at these values and vanish at positive orders.
  std::vector<Poly> p0, q0, r0;
  unsigned fixed_p, fixed_q, fixed_r;  // first fixed x-power of each table
  std::vector<Slot> unknowns;
  // Factors of the order-i determinant (independent of i) that a
  // specialization may not annihilate.
  std::vector<std::pair<std::string, Poly>> determinant_factors;

  std::vector<RowSpec> rows(int i) const {
    std::vector<RowSpec> out;
    if (model == Model::maps) {
      out.push_back({i + 1, 0, 7});
      out.push_back({i + 1, 0, 0});
      for (unsigned j = 2; j <= 7; ++j) out.push_back({i, j, j});
    } else {
      out.push_back({i + 1, 0, 0});
      for (unsigned j = 1; j <= 6; ++j) out.push_back({i, j, j});
    }
    return out;
  }
};

inline ModelSpec make_spec(Model model) {
  auto parser = make_potts_parser<PottsVars>();
  auto p = [&](const char* s) { return parser.parse(s); };
  ModelSpec s;
  s.model = model;
  if (model == Model::maps) {
    s.size_var = SizeVar::t;
    s.d[0] = p("(q*nu + beta^2)*x^2 - q*(nu + 1)*x + q");
    s.d[1] = p("beta*(q - 4)*(w*q + beta)");
    s.deg_p = 4;
    s.deg_q = 2;
    s.deg_r = 2;
    s.p0 = {Poly(), Poly(), Poly(1), Poly(-2), Poly(1)};
    s.q0 = {Poly(), Poly(-1), Poly(1)};
    s.r0 = {Poly(), Poly(), p("nu + 1 - w*(q + 2*beta)")};
    s.fixed_p = 4;
    s.fixed_q = 2;
    s.fixed_r = 2;
    s.determinant_factors = {{"q", p("q")},
                             {"beta", p("beta")},
                             {"w", p("w")},
                             {"q-4", p("q - 4")},
                             {"q*nu+beta^2", p("q*nu + beta^2")}};
  } else {
    s.size_var = SizeVar::w;
    s.d[0] = p("q*nu^2*x^2 + beta*(4*beta + q)*x + beta^2");
    s.d[1] = p("q*beta*nu*(q - 4)");
    s.deg_p = 3;
    s.deg_q = 2;
    s.deg_r = 1;
    s.p0 = {Poly(), Poly(), Poly(Rational(1, 4)), Poly(1)};
    s.q0 = {Poly(), Poly(1), p("2*nu")};
    s.r0 = {Poly(), Poly()};
    s.fixed_p = 3;
    s.fixed_q = 2;
    s.fixed_r = 2;
    s.determinant_factors = {{"q", p("q")},         {"beta", p("beta")},
                             {"q-4", p("q - 4")},   {"beta+1", p("beta + 1")},
                             {"beta-1", p("beta - 1")}, {"4*beta^2-q", p("4*beta^2 - q")}};
  }
  for (unsigned j = 0; j < s.fixed_p; ++j) s.unknowns.push_back({Table::P, j, 0});
  for (unsigned j = 0; j < s.fixed_q; ++j) s.unknowns.push_back({Table::Q, j, 0});
  for (unsigned j = 0; j < std::min(s.fixed_r, s.deg_r + 1); ++j) s.unknowns.push_back({Table::R, j, 1});
  return s;
}

}  // namespace potts
