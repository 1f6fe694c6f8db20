#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "potts/odes/special.hpp"

using namespace potts;

namespace {

Poly P(const char* s) { return parse_poly(s); }

class Generic : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    maps_ = new SolverState(solve(Model::maps, 7));
    tri_ = new SolverState(solve(Model::triangulations, 9));
  }
  static void TearDownTestSuite() {
    delete maps_;
    delete tri_;
  }
  static SolverState* maps_;
  static SolverState* tri_;
};

SolverState* Generic::maps_ = nullptr;
SolverState* Generic::tri_ = nullptr;

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(OdeFixtures, MetadataMatchesPolynomial) {
  for (const auto& name : ode_fixture_names()) {
    OdeSpec spec = load_ode(name);
    EXPECT_EQ(spec.name, name);
    EXPECT_EQ(differential_order(spec.poly), spec.order) << name;
    EXPECT_EQ(placeholder_degree(spec.poly), spec.degree) << name;
    EXPECT_EQ(spec.poly.size(), spec.terms) << name;
  }
}

TEST(OdeFixtures, KnownShapes) {
  EXPECT_EQ(load_ode("tutte").terms, 11u);
  EXPECT_EQ(load_ode("q4-triangulations").degree, 6);
  EXPECT_EQ(load_ode("self-dual").order, 3);
  EXPECT_EQ(load_ode("self-dual").size_var, SizeVar::t);
  EXPECT_EQ(load_ode("forest").size_var, SizeVar::w);
}

TEST(OdeFixtures, ParseErrors) {
  EXPECT_THROW(parse_ode("name: a\norder: 1\ndegree: 1\nterms: 1\n"), OdeFormatError);
  EXPECT_THROW(parse_ode("name: a\norder: 1\ndegree: 1\npoly: X\n"), OdeFormatError);
  EXPECT_THROW(parse_ode("name: a\ncolour: red\norder: 1\ndegree: 1\nterms: 1\npoly: X\n"), OdeFormatError);
  EXPECT_THROW(parse_ode("name: a\nsize_var: z\norder: 1\ndegree: 1\nterms: 1\npoly: X\n"), OdeFormatError);
  EXPECT_THROW(parse_ode("name: a\norder: 1\ndegree: 1\nterms: 1\npoly: X +* Y\n"), OdeFormatError);
  EXPECT_THROW(load_ode("no-such-equation"), OdeFormatError);
}

TEST(OdeFixtures, LetDefinitionsAndComments) {
  OdeSpec spec = parse_ode(
      "# comment\nname: toy\nsize_var: w\norder: 1\ndegree: 2\nterms: 2\nlet A = w*Y\npoly:\n  A*X\n# trailing\n  - X^2\n");
  EXPECT_EQ(spec.size_var, SizeVar::w);
  EXPECT_EQ(spec.poly.size(), 2u);
  EXPECT_EQ(differential_order(spec.poly), 1);
  EXPECT_EQ(placeholder_degree(spec.poly), 2);
}

TEST(OdeResidual, ExponentialSatisfiesFirstOrderEquation) {
  OdeSpec spec = parse_ode("name: exp\nsize_var: t\norder: 1\ndegree: 1\nterms: 2\npoly: Y - X\n");
  PolySeries e(SizeVar::t, 8);
  Rational f(1);
  for (int n = 0; n <= 8; ++n) {
    e[n] = Poly(f);
    f /= n + 1;
  }
  PolySeries r = ode_residual(spec, e);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(r.order(), 7);
  e[5] += Poly(1);
  EXPECT_FALSE(ode_residual(spec, e).is_zero());
}

TEST(TutteRecurrence, FirstCoefficients) {
  PolySeries a = tutte_recurrence(5);
  EXPECT_EQ(a[2], P("q - 1"));
  EXPECT_EQ(a[3], P("(q - 1)*(q - 2)"));
  EXPECT_EQ(a[4], P("4*q^3 - 21*q^2 + 35*q - 18"));
  EXPECT_THROW(tutte_recurrence(1), std::invalid_argument);
}

TEST(TutteRecurrence, SatisfiesTutteEquation) {
  PolySeries a = tutte_recurrence(14);
  PolySeries r = ode_residual(load_ode("tutte"), a);
  EXPECT_TRUE(r.is_zero());
  EXPECT_GE(r.order(), 10);
}

TEST(TutteRecurrence, NoColouringsWithOneColour) {
  PolySeries a = tutte_recurrence(8);
  for (int n = 2; n <= 8; ++n) EXPECT_TRUE(a[n].evaluate(sym::q, Rational(1)).is_zero()) << "w^" << n;
}

TEST_F(Generic, NuZeroTrianglesMatchRecurrence) {
  FracSeries s = tutte_series(*tri_);
  PolySeries a = tutte_recurrence(s.order());
  for (int n = 0; n <= s.order(); ++n) EXPECT_EQ(s[n], RatFrac(a[n])) << "w^" << n;
}

TEST_F(Generic, EverySpecialEquationHolds) {
  for (const SolverState* st : {maps_, tri_}) {
    auto checks = check_special_odes(*st);
    EXPECT_EQ(checks.size(), st->spec.model == Model::maps ? 3u : 4u);
    for (const auto& c : checks) {
      EXPECT_TRUE(c.pass) << c.name;
      EXPECT_GE(c.residual.order(), 3) << c.name;
    }
  }
}

TEST_F(Generic, ApplicableEquationsFollowBindings) {
  EXPECT_EQ(applicable_odes(Model::maps, parse_bindings({"q=4"})),
            (std::vector<std::string>{"q4-maps-first", "q4-maps-second"}));
  EXPECT_EQ(applicable_odes(Model::triangulations, parse_bindings({"q=0"})),
            (std::vector<std::string>{"q0-triangulations", "forest"}));
  EXPECT_EQ(applicable_odes(Model::maps, parse_bindings({"q=beta^2", "w=1/beta"})),
            (std::vector<std::string>{"self-dual"}));
  EXPECT_TRUE(applicable_odes(Model::maps, parse_bindings({"q=3"})).empty());
}

TEST_F(Generic, PerturbedShiftedP3BreaksQ4Pair) {
  SpecializedState q4 = specialize(*maps_, parse_bindings({"q=4"}));
  auto good = q4_maps_pair_residual(q4);
  EXPECT_TRUE(good.first.is_zero());
  EXPECT_TRUE(good.second.is_zero());
  FracSeries p3 = shifted_p3(q4);
  p3[2] += RatFrac(P("w"));
  auto bad = q4_maps_pair_residual(q4, p3);
  EXPECT_FALSE(bad.first.is_zero());
  EXPECT_FALSE(bad.second.is_zero());
}

TEST_F(Generic, Q4MapsSeriesStart) {
  SpecializedState q4 = specialize(*maps_, parse_bindings({"q=4"}));
  EXPECT_EQ(q4.main[2], RatFrac(P("w")));
  EXPECT_EQ(q4.main[3], RatFrac(P("w*(nu + 3*w + nu*w)")));
}

TEST_F(Generic, ForestSeries) {
  PolySeries g = forest_series(*tri_);
  EXPECT_TRUE(g[0].is_zero());
  EXPECT_TRUE(g[1].is_zero());
  EXPECT_EQ(g[2], P("beta + 1"));
  for (int n = 2; n <= g.order(); ++n) EXPECT_FALSE(g[n].is_zero());
}

TEST_F(Generic, SelfDualSeriesStart) {
  FracSeries s = self_dual_series(*maps_);
  EXPECT_TRUE(s[0].is_zero());
  EXPECT_TRUE(s[1].is_zero());
  EXPECT_EQ(s[2], RatFrac(Poly(1)));
}

TEST_F(Generic, WrongModelIsRejected) {
  EXPECT_THROW(self_dual_series(*tri_), std::invalid_argument);
  EXPECT_THROW(forest_series(*maps_), std::invalid_argument);
  EXPECT_THROW(run_ode("no-such-equation", *maps_), OdeFormatError);
}

TEST_F(Generic, TamperedFixtureFails) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "potts-tampered-odes";
  fs::create_directories(dir);
  std::string text = read_file(ode_fixture_path("tutte"));
  auto pos = text.find("2*(1 - q)*w");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 1, "3");
  std::ofstream(dir / "tutte.ode") << text;
  OdeCheck c = run_ode("tutte", *tri_, dir.string());
  EXPECT_FALSE(c.pass);
  fs::remove_all(dir);
}
