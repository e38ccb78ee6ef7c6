// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "pdm/pdm.hpp"

using namespace pdm;

namespace {

int failures = 0;

SpectralOptions centred() {
  SpectralOptions o;
  o.anchor = 0.0;
  return o;
}

void report(int id, char const* title, bool ok, std::string const& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(char const* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void landau_spectrum() {
  bool ok = true;
  double worst = 0, slowest = 0;
  for (double B0 : {0.5, 1.0, 2.0})
    for (double e : {1.0, -1.0}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = solve_example_numeric(B0, e, 0.0, 0.0, 0.0, 6);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      for (int n = 0; n < 6; ++n) ok = ok && r.analytic[n] == (2 * n + 1) * std::abs(e * B0);
      worst = std::max(worst, r.max_rel_error);
      slowest = std::max(slowest, secs);
    }
  ok = ok && worst <= 1e-6 && slowest < 5.0;
  report(1, "Landau levels", ok, fmt("max rel error %.2e, slowest %.2f s", worst, slowest));
}

void electric_shift() {
  bool ok = true;
  double worst = 0;
  for (double B0 : {0.5, 1.0, 2.0})
    for (double e : {1.0, -1.0})
      for (double E0 : {0.5, 1.0}) {
        const double k1 = 0.7, k3 = 0.3;
        const auto r = solve_example_numeric(B0, e, E0, k1, k3, 6);
        for (int n = 0; n < 6; ++n) {
          const double expect = k3 * k3 + (2 * n + 1) * std::abs(e * B0) + k1 * E0 / B0 - E0 * E0 / (4 * B0 * B0);
          ok = ok && std::abs(r.analytic[n] - expect) <= 1e-12 * std::abs(expect);
        }
        worst = std::max(worst, r.max_rel_error);
      }
  bool limit = true;
  for (double B0 : {0.5, 1.0, 2.0}) {
    const auto a = solve_example_numeric(B0, 1.0, 0.0, 0.7, 0.3, 6);
    for (int n = 0; n < 6; ++n) limit = limit && landau_energy_with_field(B0, 1.0, 0.0, 0.7, 0.3, n) == landau_energy(B0, 1.0, 0.7, 0.3, n) &&
                                         a.analytic[n] == landau_energy(B0, 1.0, 0.7, 0.3, n);
  }
  report(2, "electric-field shift", ok && limit && worst <= 1e-6,
         fmt("max rel error %.2e, zero-field limit %s", worst, limit ? "exact" : "differs"));
}

struct IsoCase {
  MassProfile mass;
  double lo, hi;
};

std::vector<IsoCase> iso_cases() {
  return {{lorentzian_squared_mass(), -20, 20}, {gaussian_mass(10.0), -12, 12}, {tanh_step_mass(), -8, 8}};
}

void isospectrality() {
  bool ok = true;
  std::string detail;
  for (auto const& c : iso_cases()) {
    const auto a = isospectrality_check(c.mass, PotentialSpec::harmonic(), c.lo, c.hi, 4001, 5, centred());
    const auto b = isospectrality_check(c.mass, PotentialSpec::harmonic(), c.lo, c.hi, 8001, 5, centred());
    const double ratio = a.max_rel_diff / b.max_rel_diff;
    ok = ok && a.max_rel_diff <= 1e-3 && ratio >= 3.5;
    detail += fmt("%s %.2e x%.2f; ", c.mass.tag.c_str(), a.max_rel_diff, ratio);
  }
  detail.resize(detail.size() - 2);
  report(3, "isospectrality", ok, detail);
}

void ordering_ambiguity() {
  bool ok = true;
  std::string detail;
  for (auto const& c : iso_cases()) {
    const auto rep = ordering_sweep(c.mass, PotentialSpec::harmonic(), c.lo, c.hi, 4001, standard_orderings(), 3, centred());
    const OrderingRow* mm = nullptr;
    const OrderingRow* bdd = nullptr;
    for (auto const& row : rep.rows) {
      if (row.name == "mm") mm = &row;
      if (row.name == "bendaniel-duke") bdd = &row;
    }
    double best = 0;
    for (std::size_t n = 0; n < 3; ++n) best = std::max(best, bdd->abs_deviation[n] / mm->abs_deviation[n]);
    ok = ok && best > 10.0;
    detail += fmt("%s bdd/mm %.0f; ", c.mass.tag.c_str(), best);
  }
  const auto flat = ordering_sweep(constant_mass(), PotentialSpec::harmonic(), -10, 10, 2001, standard_orderings(), 3, centred());
  double spread = 0;
  for (auto const& row : flat.rows) spread = std::max(spread, row.max_rel_deviation);
  ok = ok && spread <= 1e-10;
  detail += fmt("constant mass spread %.1e", spread);
  report(4, "ordering ambiguity", ok, detail);
}

void momentum_operators() {
  const auto grid = uniform_grid(-10, 10, 2001);
  double pi_defect = 0, P_weighted = 0, P_plain = 1e300;
  for (auto const& m : {lorentzian_squared_mass(), gaussian_mass(10.0), tanh_step_mass()}) {
    pi_defect = std::max(pi_defect, hermiticity_defect(build_pseudo_momentum(m, grid).matrix));
    const auto P = build_pdm_momentum(m, grid);
    P_weighted = std::max(P_weighted, hermiticity_defect(P.matrix, P.weight));
    P_plain = std::min(P_plain, hermiticity_defect(P.matrix));
  }
  const auto m = lorentzian_squared_mass();
  const auto coarse = kinetic_identity_residual(m, PotentialSpec::harmonic(), uniform_grid(-10, 10, 2001));
  const auto fine = kinetic_identity_residual(m, PotentialSpec::harmonic(), uniform_grid(-10, 10, 4001));
  const double order = std::log2(coarse.pi_form / fine.pi_form);
  const bool ok = pi_defect <= 1e-10 && P_weighted <= 1e-10 && P_plain > 1e-3 && order >= 1.8 && order <= 2.2 && fine.p_over_m_form > 1e-2;
  report(5, "momentum operators", ok,
         fmt("pi defect %.1e, P weighted %.1e, P plain %.1e, order %.2f, P^2/m residual %.2e", pi_defect, P_weighted, P_plain, order,
             fine.p_over_m_form));
}

void generating_pairs() {
  const auto grid = uniform_grid(0.1, 10, 2001);
  double residual = 0, roundtrip = 0;
  bool ok = true;
  for (auto const& e : catalog::all(3)) {
    const auto rep = verify_pair(e, grid, 1e-8);
    ok = ok && rep.passed;
    residual = std::max(residual, rep.max_residual);
    const double r0 = grid.front();
    const auto S = scalar_from_mass(e.mass, e.N, grid, e.c0_for(r0), IntegralOrigin::first_radius);
    const auto back = mass_from_scalar(S, e.N, r0, e.mass(r0), grid);
    for (double r : grid) roundtrip = std::max(roundtrip, std::abs(back(r) - e.mass(r)) / e.mass(r));
  }
  ok = ok && residual <= 1e-8 && roundtrip <= 1e-6;
  report(6, "generating pairs", ok, fmt("max residual %.1e, round trip %.1e", residual, roundtrip));
}

void gauge_dichotomy() {
  const auto pts = sample_shell(100, 0.5, 5.0);
  double symmetric = 0, landau_min = 1e300, landau_const = 0;
  for (auto const& pair : catalog::all(3)) {
    symmetric = std::max(symmetric, gauge_divergence_residual(make_vector_potential(GaugeFamily::symmetric, 1.0, pair), pts).max_residual);
    const double l = gauge_divergence_residual(make_vector_potential(GaugeFamily::landau, 1.0, pair), pts).max_residual;
    if (pair.constant_mass()) landau_const = std::max(landau_const, l);
    else landau_min = std::min(landau_min, l);
  }
  const double flat = gauge_divergence_residual(make_vector_potential(GaugeFamily::landau, 1.0, catalog::s_equals_m(2.0)), pts).max_residual;
  landau_const = std::max(landau_const, flat);
  const bool ok = symmetric <= 1e-10 && landau_min > 1e-3 && landau_const <= 1e-14;
  report(7, "gauge eligibility", ok,
         fmt("symmetric max %.1e, landau min %.2e, landau constant mass %.1e", symmetric, landau_min, landau_const));
}

void classical() {
  auto ho = fields_1d(constant_mass(), PotentialSpec::harmonic());
  ho.grad_W = [](Point const& x) { return Point{2 * x[0]}; };
  const std::size_t steps = 15708;
  const double drift_flat = integrate({{1.0}, {0.0}, 0}, ho, 10 * std::numbers::pi / steps, steps, Scheme::rk4, 1000).drift;

  auto pdm_line = fields_1d(catalog::s_unity(1.0).mass, PotentialSpec::harmonic(1.0, 2.0));
  pdm_line.grad_W = [](Point const& x) { return Point{2 * (x[0] - 2.0)}; };
  const double drift_pdm = integrate({{2.5}, {0.0}, 0}, pdm_line, 2e-3, 20000, Scheme::rk4, 1000).drift;

  const auto eq = transform_equivalence_check(lorentzian_squared_mass(), PotentialSpec::harmonic(), 0.5, 0.0, 1e-4, 31416);

  auto f = fields_1d(lorentzian_squared_mass(), PotentialSpec::harmonic(), [](double x) { return std::sin(x); },
                     [](double x) { return std::cos(x); });
  f.grad_W = [](Point const& x) { return Point{2 * x[0]}; };
  const ClassicalState s{{0.6}, {0.9}, 0};
  const double g4 = gradient_check(s, f, 1e-4), g5 = gradient_check(s, f, 1e-5);

  const bool ok = drift_flat <= 1e-8 && drift_pdm <= 1e-8 && eq.max_discrepancy <= 1e-6 && g5 <= 1e-8 && g4 / g5 > 50;
  report(8, "classical dynamics", ok,
         fmt("drift %.1e / %.1e, equivalence %.1e, gradient %.1e (x%.0f per decade)", drift_flat, drift_pdm, eq.max_discrepancy, g5,
             g4 / g5));
}

}  // namespace

int main() {
  const std::vector<void (*)()> checks{landau_spectrum, electric_shift,  isospectrality,  ordering_ambiguity,
                                       momentum_operators, generating_pairs, gauge_dichotomy, classical};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (std::exception const& e) {
      std::printf("FAIL criterion %zu: %s\n", i + 1, e.what());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
