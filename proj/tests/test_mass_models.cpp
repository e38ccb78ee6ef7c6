#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "pdm/mass_models.hpp"

using namespace pdm;

namespace {

std::vector<double> radii(double lo, double hi, std::size_t n) { return uniform_grid(lo, hi, n); }

// Adaptive Simpson, used as an independent quadrature oracle.
template <class F>
double adaptive(F const& f, double a, double b, double tol, int depth = 40) {
  const double c = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fc = f(c);
  const double whole = (b - a) / 6 * (fa + 4 * fc + fb);
  auto rec = [&](auto&& self, double lo, double hi, double flo, double fhi, double fmid, double s, double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double l = 0.5 * (lo + mid), r = 0.5 * (mid + hi);
    const double fl = f(l), fr = f(r);
    const double left = (mid - lo) / 6 * (flo + 4 * fl + fmid);
    const double right = (hi - mid) / 6 * (fmid + 4 * fr + fhi);
    if (d <= 0 || std::abs(left + right - s) <= 15 * eps) return left + right + (left + right - s) / 15;
    return self(self, lo, mid, flo, fmid, fl, left, eps / 2, d - 1) + self(self, mid, hi, fmid, fhi, fr, right, eps / 2, d - 1);
  };
  return rec(rec, a, b, fa, fb, fc, whole, tol, depth);
}

}  // namespace

TEST(MassProfiles, AnalyticDerivativesMatchFiniteDifferences) {
  for (auto const& m : {lorentzian_squared_mass(1.3), gaussian_mass(10.0), tanh_step_mass(2.0, 1.0, 0.7)}) {
    for (double x : {-2.1, -0.3, 0.0, 0.8, 3.5}) {
      const double h = 1e-4;
      EXPECT_NEAR(m.d_m(x), (m(x + h) - m(x - h)) / (2 * h), 1e-7) << m.tag << " x=" << x;
      EXPECT_NEAR(m.dd_m(x), (m(x + h) - 2 * m(x) + m(x - h)) / (h * h), 1e-5) << m.tag << " x=" << x;
    }
  }
}

TEST(MassProfiles, RejectInvalidParameters) {
  EXPECT_THROW(constant_mass(0.0), ValidationError);
  EXPECT_THROW(lorentzian_squared_mass(-1.0), ValidationError);
  EXPECT_THROW(tanh_step_mass(1.0, 2.0, 1.0), ValidationError);
  EXPECT_THROW(catalog::s_power_b(1.0), ValidationError);
  EXPECT_THROW(catalog::s_power_b(2.0, -1.0), ValidationError);
}

TEST(MassProfiles, CheckedRejectsNonPositiveValues) {
  auto m = make_mass("bad", {}, [](auto x) { return x; });
  EXPECT_THROW(m.checked(-1.0), DomainError);
  EXPECT_DOUBLE_EQ(m.checked(2.0), 2.0);
}

TEST(MassProfiles, ByNameListsValidTagsOnError) {
  try {
    mass_by_name("nope", {});
    FAIL() << "expected ValidationError";
  } catch (ValidationError const& e) {
    EXPECT_NE(std::string(e.what()).find("lorentzian-squared"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("S-unity"), std::string::npos);
  }
  EXPECT_NEAR(mass_by_name("gaussian", {{"width", 4.0}})(2.0), std::exp(-1.0), 1e-15);
}

TEST(TabulatedMass, InterpolatesAndDifferentiatesSmoothData) {
  const auto x = uniform_grid(0.0, 2.0, 401);
  std::vector<double> y;
  for (double t : x) y.push_back(1 + 0.5 * std::sin(t));
  const auto m = tabulated_mass(x, y);
  EXPECT_NEAR(m(1.2345), 1 + 0.5 * std::sin(1.2345), 1e-9);
  EXPECT_NEAR(m.d_m(1.2345), 0.5 * std::cos(1.2345), 1e-4);
  EXPECT_THROW(tabulated_mass({0, 1, 2, 3, 4, 5}, {1, 1, -1, 1, 1, 1}), DomainError);
}

TEST(TabulatedMass, ReadsTwoColumnCsvWithHeader) {
  const std::string path = ::testing::TempDir() + "mass_profile.csv";
  {
    std::ofstream f(path);
    f << "r,m\r\n# comment\n";
    for (int i = 0; i <= 10; ++i) f << 0.1 * i << "," << 1 + 0.01 * i << "\n";
  }
  const auto [x, y] = read_two_column_csv(path);
  ASSERT_EQ(x.size(), 11u);
  EXPECT_DOUBLE_EQ(y.back(), 1.1);
  EXPECT_THROW(read_two_column_csv(path + ".missing"), ValidationError);
}

TEST(ScalarFromMass, ConstantMassGivesUnitScalar) {
  const auto grid = radii(0.1, 10, 2001);
  const auto S = scalar_from_mass(constant_mass(1.0, true), 3, grid, 0.0);
  for (double r : grid) EXPECT_NEAR(S(r), 1.0, 1e-12);
}

TEST(ScalarFromMass, QuadraticMassMatchesClosedForm) {
  const auto grid = radii(0.1, 10, 2001);
  const auto S = scalar_from_mass(catalog::m_quadratic(1.0).mass, 3, grid, 0.0);
  for (double r : {0.1, 0.5, 1.0, 4.2, 10.0}) EXPECT_NEAR(S(r), 0.75 * r * r, 1e-10 * std::max(1.0, r * r));
}

TEST(ScalarFromMass, RationalMassWithFittedConstant) {
  const int N = 3;
  const double alpha = 2.0;
  const auto m = catalog::m_rational(alpha, N).mass;
  const auto grid = radii(0.1, 10, 2001);
  // fit c0 at the first radius from the closed form S = (2/alpha) r^-N
  const double r0 = grid.front();
  const double c0 = (2 / alpha) * std::pow(r0, -N) * std::pow(r0, N) / (N * std::sqrt(m(r0)));
  const auto S = scalar_from_mass(m, N, grid, c0, IntegralOrigin::first_radius);
  for (std::size_t i : {1u, 37u, 250u, 1000u, 1999u, 2000u}) {
    const double r = grid[i];
    const double integral = adaptive([&](double t) { return t * t * std::sqrt(m(t)); }, r0, r, 1e-14);
    const double oracle = N * std::sqrt(m(r)) * std::pow(r, -N) * (integral + c0);
    EXPECT_NEAR(S(r), oracle, 1e-9 * std::abs(oracle));
    EXPECT_NEAR(S(r), std::pow(r, -3.0), 1e-8 * std::pow(r, -3.0));
  }
}

TEST(ScalarFromMass, ConvergesWithRefinement) {
  const auto m = gaussian_mass(2.0);
  auto radial = m;
  radial.radial = true;
  auto err = [&](std::size_t n) {
    const auto grid = radii(0.5, 3.0, n);
    const auto S = scalar_from_mass(radial, 3, grid, 0.0, IntegralOrigin::first_radius);
    double worst = 0;
    for (double r : grid) {
      const double I = adaptive([&](double t) { return t * t * std::sqrt(m(t)); }, 0.5, r, 1e-15);
      worst = std::max(worst, std::abs(S(r) - 3 * std::sqrt(m(r)) * std::pow(r, -3) * I));
    }
    return worst;
  };
  EXPECT_GT(err(41) / err(81), 4.0);
}

TEST(ScalarFromMass, RejectsBadInput) {
  const auto grid = radii(0.1, 1.0, 11);
  EXPECT_THROW(scalar_from_mass(lorentzian_squared_mass(), 3, grid, 0.0), DomainError);
  const auto zero_start = radii(0.0, 1.0, 11);
  EXPECT_THROW(scalar_from_mass(constant_mass(1.0, true), 3, zero_start, 0.0), DomainError);
}

TEST(MassFromScalar, UnitScalarGivesFirstCatalogEntry) {
  const auto grid = radii(0.5, 5.0, 901);
  const double lambda = 1.0;
  const double r0 = 0.5, m0 = 1.0 / (1.0 + lambda * std::pow(r0, -6.0));
  const auto S = make_scalar("one", {}, [](auto) { return Jet{1.0}; });
  const auto m = mass_from_scalar(S, 3, r0, m0, grid);
  for (double r : grid) EXPECT_NEAR(m(r), 1.0 / (1.0 + lambda * std::pow(r, -6.0)), 1e-8);
}

TEST(MassFromScalar, SelfConsistentBranchIsConstant) {
  const auto grid = radii(0.5, 5.0, 201);
  const auto m = mass_from_scalar_power(1.0, 3, 0.5, 2.5, grid);
  for (double r : grid) EXPECT_NEAR(m(r), 2.5, 1e-14);
}

TEST(MassFromScalar, PowerLawScalarMatchesClosedForm) {
  const int N = 3;
  const double lambda = 1.0, nu = 1.0;
  auto closed = [&](double r) {
    const double c = (2 * N + nu) * lambda;
    return c / (c * std::pow(r, -2 * (N + nu)) + 2 * N * std::pow(r, -nu));
  };
  const auto grid = radii(0.5, 5.0, 901);
  const auto S = make_scalar("power", {}, [=](auto r) { return lambda * pow(r, nu); });
  const auto m = mass_from_scalar(S, N, 0.5, closed(0.5), grid);
  for (double r : grid) EXPECT_NEAR(m(r), closed(r), 1e-8 * closed(r));
}

TEST(MassFromScalar, VanishingScalarIsSingular) {
  const auto grid = radii(0.5, 1.5, 11);
  const auto S = make_scalar("linear", {}, [](auto r) { return r - 1.0; });
  EXPECT_THROW(mass_from_scalar(S, 3, 0.5, 1.0, grid), NumericalError);
}

TEST(GeneratingRelation, CatalogResidualsBelowTolerance) {
  const auto grid = radii(0.1, 10, 2001);
  for (auto const& e : catalog::all(3)) {
    const auto rep = verify_pair(e, grid, 1e-8);
    EXPECT_TRUE(rep.passed) << rep.tag << " residual " << rep.max_residual << " at r=" << rep.worst_radius;
  }
  EXPECT_TRUE(verify_pair(catalog::m_quadratic(2.0, 3), grid).passed);
  EXPECT_EQ(verify_pair(catalog::s_equals_m(1.0), grid).max_residual, 0.0);
}

TEST(GeneratingRelation, ResidualDetectsMismatchedPair) {
  auto e = catalog::m_quadratic(1.0);
  e.scalar = make_scalar("one", {}, [](auto) { return Jet{1.0}; });
  EXPECT_FALSE(verify_pair(e, radii(0.5, 5.0, 101)).passed);
}

TEST(GeneratingRelation, SingularRadiusIsSkipped) {
  std::vector<double> grid{0.0, 0.5, 1.0};
  const auto rep = verify_pair(catalog::m_rational(), grid);
  ASSERT_EQ(rep.skipped.size(), 1u);
  EXPECT_EQ(rep.skipped.front(), 0.0);
}

TEST(GeneratingRelation, RoundTripRecoversMass) {
  const auto grid = radii(0.1, 10, 2001);
  for (auto const& e : catalog::all(3)) {
    const double r0 = grid.front();
    const auto S = scalar_from_mass(e.mass, e.N, grid, e.c0_for(r0), IntegralOrigin::first_radius);
    const auto back = mass_from_scalar(S, e.N, r0, e.mass(r0), grid);
    double worst = 0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
      worst = std::max(worst, std::abs(back(grid[i]) - e.mass(grid[i])) / e.mass(grid[i]));
    EXPECT_LE(worst, 1e-6) << to_string(e.tag);
  }
}
