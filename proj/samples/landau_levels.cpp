// Landau levels with and without a crossed electric field, numeric against
// closed form, plus the gauge eligibility of both vector potential families.

#include <cstdio>

#include "pdm/pdm.hpp"

int main() {
  for (double E0 : {0.0, 1.0}) {
    const auto res = pdm::solve_example_numeric(1.0, 1.0, E0, 1.0, 0.0, 6);
    std::printf("E0 = %.1f\n", E0);
    for (std::size_t n = 0; n < res.analytic.size(); ++n)
      std::printf("  n=%zu analytic %.10f numeric %.10f overlap %.12f\n", n, res.analytic[n], res.spectrum.eigenvalues[n], res.overlaps[n]);
  }
  const auto pair = pdm::catalog::s_unity();
  for (auto family : {pdm::GaugeFamily::symmetric, pdm::GaugeFamily::landau}) {
    const auto el = pdm::eligibility(pdm::make_vector_potential(family, 1.0, pair));
    std::printf("%-9s eligible=%d residual=%.3e\n", pdm::to_string(family), el.eligible, el.max_residual);
  }
}
