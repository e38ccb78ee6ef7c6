// Solves the same confined problem twice: as a constant-mass problem in q and
// as the PDM problem in x, then prints both spectra side by side.

#include <cstdio>

#include "pdm/pdm.hpp"

int main() {
  const auto mass = pdm::lorentzian_squared_mass();
  const auto V = pdm::PotentialSpec::harmonic();
  pdm::SpectralOptions opt;
  opt.anchor = 0.0;
  const auto rep = pdm::isospectrality_check(mass, V, -20.0, 20.0, 4001, 5, opt);
  std::printf("q-domain [%.6f, %.6f]\n", rep.q_lo, rep.q_hi);
  std::printf("%3s %18s %18s\n", "n", "E (q space)", "E (x space)");
  for (std::size_t i = 0; i < rep.E_q.size(); ++i) std::printf("%3zu %18.10f %18.10f\n", i, rep.E_q[i], rep.E_x[i]);
  std::printf("max relative difference %.3e\n", rep.max_rel_diff);

  const auto sweep = pdm::ordering_sweep(mass, V, -20.0, 20.0, 4001, pdm::standard_orderings(), 3, opt);
  for (auto const& row : sweep.rows) std::printf("%-16s E0 = %.8f (reference %.8f)\n", row.name.c_str(), row.eigenvalues[0], sweep.reference[0]);
}
