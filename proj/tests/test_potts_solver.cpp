#include <gtest/gtest.h>

#include "potts/solver/identities.hpp"
#include "potts/solver/specialize.hpp"

using namespace potts;

namespace {

Poly P(const char* s) { return parse_poly(s); }

class Solved : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    maps_ = new SolverState(solve(Model::maps, 8));
    tri_ = new SolverState(solve(Model::triangulations, 8));
  }
  static void TearDownTestSuite() {
    delete maps_;
    delete tri_;
  }
  static SolverState* maps_;
  static SolverState* tri_;
};

SolverState* Solved::maps_ = nullptr;
SolverState* Solved::tri_ = nullptr;

}  // namespace

TEST(ModelSpec, ParseModel) {
  EXPECT_EQ(parse_model("maps"), Model::maps);
  EXPECT_EQ(parse_model("triangulations"), Model::triangulations);
  EXPECT_THROW(parse_model("quadrangulations"), std::invalid_argument);
}

TEST(ModelSpec, InitialConditions) {
  SolverState m = initial_state(Model::maps);
  EXPECT_EQ(m.p[0][4], Poly(1));
  EXPECT_EQ(m.p[0][3], Poly(-2));
  EXPECT_EQ(m.r[0][2], P("nu + 1 - w*(q + 2*beta)"));
  SolverState t = initial_state(Model::triangulations);
  EXPECT_EQ(t.q[0][2], P("2*nu"));
  EXPECT_EQ(t.p[0][2], P("1/4"));
}

TEST(Solver, OrderOneMapsSolution) {
  SolverState st = solve(Model::maps, 1);
  const std::vector<Poly> p{P("-4"), P("8 - 2*w*q"), P("4*w*(q - beta) - 2*beta - 4"), P("2*beta - 2*w*q")};
  for (unsigned j = 0; j < 4; ++j) EXPECT_EQ(st.p[1][j], p[j]) << "P_{1," << j << "}";
  EXPECT_EQ(st.q[1][0], P("w*q + 2*beta + 4"));
  EXPECT_EQ(st.q[1][1], P("4*w*beta - beta + w*q - 4"));
  EXPECT_EQ(st.r[0][0], P("2"));
  EXPECT_EQ(st.r[0][1], P("w*q - beta - 4"));
}

TEST(Solver, RejectsNonPositiveOrder) { EXPECT_THROW(solve(Model::maps, 0), std::invalid_argument); }

TEST_F(Solved, MapsP0Expansion) {
  PolySeries p0 = column(*maps_, Table::P, 0, 3);
  EXPECT_TRUE(p0[0].is_zero());
  EXPECT_EQ(p0[1], P("-4"));
  EXPECT_EQ(p0[2], P("q^2*w^2 + 16*beta*w - 4*q*w + 8*beta"));
  EXPECT_EQ(p0[3], P("2*(-beta*q^2*w^3 + q^3*w^3 + 2*beta*q*w^2 - 4*q^2*w^2 + 16*beta^2*w + 4*beta*q*w + 2*beta^2 - "
                     "6*q*w + 4*beta)"));
}

TEST_F(Solved, MapsQ2IsOne) {
  PolySeries q2 = column(*maps_, Table::Q, 2, maps_->order_done);
  EXPECT_EQ(q2[0], Poly(1));
  for (int n = 1; n <= q2.order(); ++n) EXPECT_TRUE(q2[n].is_zero());
}

TEST_F(Solved, MapsMainSeriesFirstTerms) {
  PolySeries m1 = maps_m1(*maps_);
  EXPECT_EQ(m1[0], P("w"));
  EXPECT_EQ(m1[1], P("w^2*(q - 1 + nu) + w*nu"));
  EXPECT_EQ(m1[2], P("2*w^3*(q - 1 + nu)^2 + w^2*(q - 1 + nu^2) + 4*w^2*nu*(q - 1 + nu) + 2*w*nu^2"));
}

TEST_F(Solved, TriangulationsT1Expansion) {
  const PolySeries& t1 = tri_->main;
  EXPECT_TRUE(t1[0].is_zero());
  EXPECT_TRUE(t1[1].is_zero());
  EXPECT_EQ(t1[2], P("nu*(q - 1 + nu)"));
  EXPECT_EQ(t1[3], P("nu*((q - 1)*(q - 2 + 2*nu) + nu^2*(q - 1 + nu^2) + 2*nu*(q - 1 + nu)*(q - 1 + nu^2) + "
                     "nu^2*(q - 1 + nu)^2)"));
  PolySeries t2 = triangulations_t2(*tri_);
  EXPECT_EQ(t2 * P("nu"), t1);
}

TEST_F(Solved, TriangulationsP0AndQ2) {
  PolySeries p0 = column(*tri_, Table::P, 0, 2);
  EXPECT_EQ(p0[1], P("-beta"));
  EXPECT_EQ(p0[2], P("beta*(8*q + q*(q - 12)*beta/4 - (q + 6)*beta^2 - 3*beta^3)"));
  PolySeries q2 = column(*tri_, Table::Q, 2, tri_->order_done);
  EXPECT_EQ(q2[0], P("2*nu"));
  for (int n = 1; n <= q2.order(); ++n) EXPECT_TRUE(q2[n].is_zero());
}

TEST_F(Solved, DeterminantsMatchFactorizations) {
  for (int i = 1; i <= 5; ++i) {
    Rational i6(i * i * i * i * i * i), i5(i * i * i * i * i);
    RatFrac maps_ratio = (maps_->determinants[i] /
                          RatFrac(P("256*q^3*beta^7*w*(q - 4)*(q*nu + beta^2)^2").scaled(i6)))
                             .reduce();
    EXPECT_EQ(maps_ratio, RatFrac(Poly(1))) << "maps order " << i;
    RatFrac tri_ratio =
        (tri_->determinants[i] /
         RatFrac(P("q^3*beta^7*(q - 4)*(beta + 1)^4*(beta - 1)^3*(4*beta^2 - q)/2").scaled(i5)))
            .reduce();
    EXPECT_EQ(tri_ratio, RatFrac(Poly(1))) << "triangulations order " << i;
  }
}

TEST_F(Solved, SystemResidualVanishes) {
  EXPECT_TRUE(system_residual(*maps_, maps_->order_done).is_zero());
  EXPECT_TRUE(system_residual(*tri_, tri_->order_done).is_zero());
}

TEST_F(Solved, NondifferentialIdentitiesVanish) {
  for (const SolverState* st : {maps_, tri_}) {
    auto reports = nondifferential_residuals(*st);
    EXPECT_EQ(reports.size(), st->spec.model == Model::maps ? 5u : 6u);
    for (const auto& r : reports) {
      EXPECT_TRUE(r.pass) << r.name;
      EXPECT_GE(r.residual.order(), st->order_done - 1) << r.name;
    }
  }
}

TEST_F(Solved, PerturbedTableBreaksSystemAndIdentities) {
  SolverState bad = *maps_;
  bad.p[3][1] += Poly(1);
  EXPECT_FALSE(system_residual(bad, bad.order_done).is_zero());
  bad = *maps_;
  bad.p[3][3] += P("w");
  EXPECT_FALSE(system_residual(bad, bad.order_done).is_zero());
  bool any = false;
  for (const auto& r : nondifferential_residuals(bad)) any = any || !r.pass;
  EXPECT_TRUE(any);

  SolverState bad_t = *tri_;
  bad_t.r[2][0] += P("q");
  EXPECT_FALSE(system_residual(bad_t, bad_t.order_done).is_zero());
}

TEST_F(Solved, PivotRulesAgree) {
  for (PivotRule rule : {PivotRule::last_nonzero, PivotRule::fewest_terms}) {
    SolverState m = solve(Model::maps, 4, rule);
    SolverState t = solve(Model::triangulations, 4, rule);
    for (int i = 0; i <= 4; ++i) {
      EXPECT_EQ(m.p[i], maps_->p[i]);
      EXPECT_EQ(m.q[i], maps_->q[i]);
      EXPECT_EQ(t.p[i], tri_->p[i]);
      EXPECT_EQ(t.q[i], tri_->q[i]);
    }
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(m.r[i], maps_->r[i]);
      EXPECT_EQ(t.r[i], tri_->r[i]);
    }
  }
}

TEST_F(Solved, MainSeriesHasIntegerCoefficients) {
  for (const SolverState* st : {maps_, tri_}) {
    for (int n = 0; n <= st->main.order(); ++n)
      for (const auto& term : st->main[n].terms()) EXPECT_EQ(term.coef.get_den(), 1) << "main coefficient " << n;
  }
}

TEST_F(Solved, ColumnBeyondSolvedOrderThrows) {
  EXPECT_THROW(column(*maps_, Table::P, 0, maps_->order_done + 1), SeriesError);
  EXPECT_THROW(column(*maps_, Table::R, 0, maps_->order_done), SeriesError);
  EXPECT_NO_THROW(column(*maps_, Table::R, 0, maps_->order_done - 1));
}

TEST_F(Solved, IncrementalSolveExtendsPrefix) {
  SolverState st = solve(Model::maps, 3);
  advance_order(st);
  for (int i = 0; i <= 4; ++i) EXPECT_EQ(st.p[i], maps_->p[i]);
}

TEST_F(Solved, SpecializationAtQ4) {
  SpecializedState sp = specialize(*maps_, parse_bindings({"q=4"}));
  EXPECT_EQ(sp.main[2], RatFrac(P("w")));
  EXPECT_EQ(sp.main[3], RatFrac(P("w*(nu + 3*w + nu*w)")));
}

TEST_F(Solved, SpecializationRefusesAnnihilatedFactors) {
  EXPECT_THROW(specialize(*maps_, parse_bindings({"q=0"})), SpecializationError);
  EXPECT_THROW(specialize(*maps_, parse_bindings({"nu=1"})), SpecializationError);
  EXPECT_THROW(specialize(*tri_, parse_bindings({"q=4*beta^2"})), SpecializationError);
  EXPECT_THROW(specialize(*tri_, parse_bindings({"w=1"})), SpecializationError);
  EXPECT_NO_THROW(specialize(*tri_, parse_bindings({"q=0"})));
  EXPECT_NO_THROW(specialize(*tri_, parse_bindings({"nu=0"})));
  EXPECT_NO_THROW(specialize(*maps_, parse_bindings({"q=beta^2", "w=1/beta"})));
}

TEST(Specialize, ParseBindings) {
  Bindings b = parse_bindings({"q=beta^2", "w=1/beta"});
  EXPECT_EQ(b.at(sym::q), RatFrac(P("b^2")));
  EXPECT_EQ(b.at(sym::w), RatFrac(Poly(1), P("b")));
  EXPECT_EQ(parse_bindings({"nu=0"}).at(sym::b), RatFrac(Poly(-1)));
  EXPECT_EQ(parse_bindings({"q=1/2"}).at(sym::q), RatFrac(P("1/2")));
  EXPECT_THROW(parse_bindings({"q"}), SpecializationError);
  EXPECT_THROW(parse_bindings({"x=1"}), SpecializationError);
}

TEST(Specialize, SubstituteCommonDenominator) {
  Bindings b = parse_bindings({"w=1/beta"});
  EXPECT_EQ(substitute(P("w^2*beta + w"), b), RatFrac(P("2"), P("b")));
  EXPECT_TRUE(substitute(P("w*beta - 1"), b).is_zero());
}
