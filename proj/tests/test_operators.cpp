#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pdm/operators.hpp"
#include "pdm/spectral_solver.hpp"

using namespace pdm;

namespace {

std::vector<double> line(std::size_t n, double lo = -10, double hi = 10) { return uniform_grid(lo, hi, n); }

}  // namespace

TEST(Ordering, ConstraintIsEnforced) {
  EXPECT_THROW(OrderingParams(0.0, 0.0, 0.0), ValidationError);
  EXPECT_NO_THROW(OrderingParams(-0.25, -0.5, -0.25));
  const auto mm = OrderingParams::mm_ordering();
  EXPECT_EQ(mm.alpha(), -0.25);
  EXPECT_EQ(mm.beta(), -0.5);
  EXPECT_EQ(mm.gamma(), -0.25);
  const auto bdd = OrderingParams::bendaniel_duke();
  EXPECT_EQ(bdd.beta(), -1.0);
}

TEST(Ordering, ReducedCoefficients) {
  const auto mm = OrderingParams::mm_ordering();
  EXPECT_DOUBLE_EQ(mm.gradient_squared_coefficient(), 7.0 / 16.0);
  EXPECT_DOUBLE_EQ(mm.curvature_coefficient(), 0.25);
  const auto bdd = OrderingParams::bendaniel_duke();
  EXPECT_DOUBLE_EQ(bdd.gradient_squared_coefficient(), 0.0);
  EXPECT_DOUBLE_EQ(bdd.curvature_coefficient(), 0.0);
  // alpha(alpha+beta+1) + beta + 1 with (-1, 0, 0)
  EXPECT_DOUBLE_EQ(OrderingParams::gora_williams().gradient_squared_coefficient(), 1.0);
}

TEST(Ordering, LookupByName) {
  EXPECT_TRUE(ordering_by_name("mm").has_value());
  EXPECT_EQ(ordering_by_name("bdd")->beta(), -1.0);
  EXPECT_EQ(ordering_by_name("zhu-kroemer")->alpha(), -0.5);
  EXPECT_FALSE(ordering_by_name("weyl").has_value());
}

TEST(VonRoos, ConstantMassIsStandardLaplacian) {
  const auto grid = line(21, 0, 1);
  const double h = 0.05;
  for (auto const& ord : standard_orderings()) {
    const auto op = build_von_roos(constant_mass(), PotentialSpec::none(), ord.params, grid);
    ASSERT_EQ(op.matrix.size(), 19u);
    for (std::size_t i = 0; i < 19; ++i) {
      EXPECT_NEAR(op.matrix(i, i), 2 / (h * h), 1e-9);
      if (i + 1 < 19) {
        EXPECT_NEAR(op.matrix(i, i + 1), -1 / (h * h), 1e-9);
        EXPECT_NEAR(op.matrix(i + 1, i), -1 / (h * h), 1e-9);
      }
    }
    EXPECT_EQ(op.hermitian_under, HermitianUnder::dx);
  }
}

TEST(VonRoos, FirstDerivativeTermIsOrderingIndependent) {
  const auto grid = line(101);
  const auto m = gaussian_mass(10.0);
  const auto a = build_von_roos(m, PotentialSpec::none(), OrderingParams::mm_ordering(), grid);
  const auto b = build_von_roos(m, PotentialSpec::none(), OrderingParams::bendaniel_duke(), grid);
  for (std::size_t i = 0; i + 1 < a.matrix.size(); ++i) {
    EXPECT_DOUBLE_EQ(a.matrix(i, i + 1), b.matrix(i, i + 1));
    EXPECT_DOUBLE_EQ(a.matrix(i + 1, i), b.matrix(i + 1, i));
  }
}

TEST(VonRoos, AppliesContinuumOperatorToSecondOrder) {
  // Apply to f = exp(-x^2) and compare with the analytic expression.
  const auto m = lorentzian_squared_mass();
  const auto ord = OrderingParams::zhu_kroemer();
  auto err = [&](std::size_t n) {
    const auto grid = line(n, -3, 3);
    const auto op = build_von_roos(m, PotentialSpec::harmonic(), ord, grid);
    const auto nodes = op.interior();
    std::vector<double> f(nodes.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-nodes[i] * nodes[i]);
    const auto y = op.matrix.apply(f);
    double worst = 0;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
      const double x = nodes[i], fx = f[i], d1 = -2 * x * fx, d2 = (4 * x * x - 2) * fx;
      const double mx = m(x), dm = m.d_m(x), ddm = m.dd_m(x);
      const double expect = -d2 / mx + dm / (mx * mx) * d1 - ord.gradient_squared_coefficient() * dm * dm / (mx * mx * mx) * fx +
                            ord.curvature_coefficient() * ddm / (mx * mx) * fx + x * x * fx;
      worst = std::max(worst, std::abs(y[i] - expect));
    }
    return worst;
  };
  const double ratio = err(301) / err(601);
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
}

TEST(VonRoos, RejectsBadGrids) {
  std::vector<double> uneven{0, 0.1, 0.3, 0.4, 0.5, 0.6};
  EXPECT_THROW(build_von_roos(constant_mass(), PotentialSpec::none(), OrderingParams::mm_ordering(), uneven), ValidationError);
  auto bad = make_mass("neg", {}, [](auto x) { return x; });
  EXPECT_THROW(build_von_roos(bad, PotentialSpec::none(), OrderingParams::mm_ordering(), line(11)), DomainError);
}

TEST(ReducedPdm, EqualsMmOrderedVonRoos) {
  const auto grid = line(201);
  const auto m = tanh_step_mass();
  const auto V = PotentialSpec::harmonic(0.7);
  const auto a = build_reduced_pdm(m, V, grid);
  const auto b = build_von_roos(m, V, OrderingParams::mm_ordering(), grid);
  EXPECT_EQ(max_abs_difference(a.matrix, b.matrix), 0.0);
}

TEST(Symmetrize, ConstantMassIsUnchanged) {
  const auto op = build_reduced_pdm(constant_mass(), PotentialSpec::harmonic(), line(51));
  const auto s = symmetrize(op);
  EXPECT_EQ(max_abs_difference(s.matrix, op.matrix), 0.0);
  for (double v : s.similarity) EXPECT_EQ(v, 1.0);
}

TEST(Symmetrize, SymmetricAndIsospectral) {
  const auto m = lorentzian_squared_mass();
  const auto grid = line(201);
  const auto map = build_map(m, line(4001), 0.0);
  const auto op = build_reduced_pdm(m, compose_with_map(PotentialSpec::harmonic(), map), grid);
  const auto s = symmetrize(op);
  EXPECT_LE(hermiticity_defect(s.matrix), 1e-12);
  EXPECT_EQ(s.hermitian_under, HermitianUnder::dx);
  const auto sym = solve_symmetric(s, 5);
  const auto gen = solve_general(op, 5);
  EXPECT_LE(max_relative_difference(sym.eigenvalues, gen.eigenvalues), 1e-8);
}

TEST(PseudoMomentum, ConstantMassIsCentralDifference) {
  const auto grid = line(11, 0, 1);
  const auto pi = build_pseudo_momentum(constant_mass(), grid);
  EXPECT_NEAR(std::abs(pi.matrix(2, 3) - complex{0, -5.0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(pi.matrix(3, 2) - complex{0, 5.0}), 0.0, 1e-12);
  EXPECT_EQ(pi.matrix(3, 3), complex{});
}

TEST(PseudoMomentum, HermitianUnderPlainMeasure) {
  const auto grid = line(2001);
  for (auto const& m : {lorentzian_squared_mass(), gaussian_mass(10.0), tanh_step_mass()})
    EXPECT_LE(hermiticity_defect(build_pseudo_momentum(m, grid).matrix), 1e-10) << m.tag;
}

TEST(PseudoMomentum, InnerProductSymmetryOnSmoothFunctions) {
  const auto grid = line(2001);
  const auto pi = build_pseudo_momentum(lorentzian_squared_mass(), grid);
  const auto nodes = pi.interior();
  std::vector<complex> f(nodes.size()), g(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    f[i] = std::exp(-(nodes[i] - 1) * (nodes[i] - 1)) * complex{1, 0.3};
    g[i] = std::exp(-0.5 * (nodes[i] + 0.5) * (nodes[i] + 0.5)) * complex{0.2, -1};
  }
  const auto pf = pi.matrix.apply(f), pg = pi.matrix.apply(g);
  complex a{}, b{};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    a += std::conj(f[i]) * pg[i];
    b += std::conj(pf[i]) * g[i];
  }
  EXPECT_LE(std::abs(a - b), 1e-10 * std::abs(a));
}

TEST(PseudoMomentum, FactoredAndPointwiseFormsAgreeInContinuum) {
  const auto m = lorentzian_squared_mass();
  auto err = [&](std::size_t n) {
    const auto grid = line(n, -3, 3);
    const auto a = build_pseudo_momentum(m, grid), b = build_pseudo_momentum_pointwise(m, grid);
    const auto nodes = a.interior();
    std::vector<complex> f(nodes.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-nodes[i] * nodes[i]);
    const auto ya = a.matrix.apply(f), yb = b.matrix.apply(f);
    double worst = 0;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) worst = std::max(worst, std::abs(ya[i] - yb[i]));
    return worst;
  };
  EXPECT_GT(err(301) / err(601), 3.5);
  EXPECT_GT(hermiticity_defect(build_pseudo_momentum_pointwise(m, line(201)).matrix), 1e-3);
}

TEST(PdmMomentum, IsRootMassTimesPseudoMomentum) {
  const auto grid = line(2001);
  const auto m = lorentzian_squared_mass();
  const auto P = build_pdm_momentum(m, grid);
  const auto pi = build_pseudo_momentum(m, grid);
  std::vector<complex> root;
  for (double x : pi.interior()) root.push_back(std::sqrt(m(x)));
  EXPECT_LE(max_abs_difference(pi.matrix.left_scaled(root), P.matrix), 1e-12);
}

TEST(PdmMomentum, HermitianOnlyUnderWeightedMeasure) {
  const auto grid = line(2001);
  const auto P = build_pdm_momentum(lorentzian_squared_mass(), grid);
  EXPECT_EQ(P.hermitian_under, HermitianUnder::weighted);
  EXPECT_LE(hermiticity_defect(P.matrix, P.weight), 1e-10);
  EXPECT_GT(hermiticity_defect(P.matrix), 1e-3);
  const auto P1 = build_pdm_momentum(constant_mass(), grid);
  EXPECT_LE(hermiticity_defect(P1.matrix), 1e-12);
  EXPECT_EQ(P1.hermitian_under, HermitianUnder::dx);
}

TEST(KineticIdentity, ConstantMassResidualsVanish) {
  const auto r = kinetic_identity_residual(constant_mass(), PotentialSpec::harmonic(), line(401, -1, 1));
  EXPECT_LE(r.pi_form, 1e-8);
  EXPECT_LE(r.p_over_m_form, 1e-8);
}

TEST(KineticIdentity, PseudoMomentumFormConvergesAtSecondOrder) {
  const auto m = lorentzian_squared_mass();
  const auto coarse = kinetic_identity_residual(m, PotentialSpec::harmonic(), line(2001));
  const auto fine = kinetic_identity_residual(m, PotentialSpec::harmonic(), line(4001));
  const double order = std::log2(coarse.pi_form / fine.pi_form);
  EXPECT_GE(order, 1.8);
  EXPECT_LE(order, 2.2);
  EXPECT_GT(fine.p_over_m_form, 1e-2);
}

TEST(MinimalCoupling, VanishingPotentialReducesToKineticIdentity) {
  const auto m = lorentzian_squared_mass();
  const auto grid = line(1001);
  const double a = minimal_coupling_identity_residual(m, [](double) { return 0.0; }, PotentialSpec::harmonic(), grid);
  EXPECT_NEAR(a, kinetic_identity_residual(m, PotentialSpec::harmonic(), grid).pi_form, 1e-9);
}

TEST(MinimalCoupling, ConstantMassResidualIsSecondOrder) {
  auto A = [](double x) { return x; };
  auto dA = [](double) { return 1.0; };
  const double coarse = minimal_coupling_identity_residual(constant_mass(), A, PotentialSpec::none(), line(2001, -1, 1), 1.0, dA);
  const double fine = minimal_coupling_identity_residual(constant_mass(), A, PotentialSpec::none(), line(4001, -1, 1), 1.0, dA);
  EXPECT_LE(fine, 1e-5);
  EXPECT_NEAR(std::log2(coarse / fine), 2.0, 0.2);
}

TEST(MinimalCoupling, PdmResidualHasMeasuredOrderTwo) {
  const auto m = lorentzian_squared_mass();
  auto A = [](double x) { return x; };
  const double coarse = minimal_coupling_identity_residual(m, A, PotentialSpec::none(), line(2001));
  const double fine = minimal_coupling_identity_residual(m, A, PotentialSpec::none(), line(4001));
  const double order = std::log2(coarse / fine);
  EXPECT_GE(order, 1.8);
  EXPECT_LE(order, 2.2);
}

TEST(Potential, ComposedWithMapEvaluatesInQ) {
  const auto map = build_map(lorentzian_squared_mass(), line(4001), 0.0);
  const auto W = compose_with_map(PotentialSpec::harmonic(2.0), map);
  EXPECT_NEAR(W(1.0), 4 * std::atan(1.0) * std::atan(1.0), 1e-8);
  PotentialSpec p = PotentialSpec::harmonic();
  p.e_phi = [](double x) { return 0.5 * x; };
  EXPECT_DOUBLE_EQ(p.W(2.0), 5.0);
}
