// The order-two double on a two-by-two torus: the vacuum model, its
// half-spin (Pauli) rescaling, and the refined model that reproduces the
// same groundspace once its trivial-charge coupling absorbs the projector
// normalization.

#include <qd/group.hpp>
#include <qd/hamiltonians.hpp>
#include <qd/hilbert.hpp>
#include <qd/lattice.hpp>
#include <qd/rep_theory.hpp>

#include <cmath>
#include <cstdio>

namespace {
double shown(double e) { return std::abs(e) < 1e-9 ? 0.0 : e; }
}  // namespace

int main() {
  using namespace qd;
  const FiniteGroup g = cyclic_group(2);
  const CharacterTable table = character_table(g);
  const TorusLattice lat = build_torus(2, 2);

  const auto vacuum = build_kitaev(g, table, lat);
  const auto rep = spectrum(vacuum);
  std::printf("Vacuum model on the 2x2 torus (dim %ld):\n", rep.total_dim);
  for (const auto& level : rep.levels)
    std::printf("  E = %4g  (x%ld)\n", shown(level.value), level.multiplicity);
  std::printf("Ground degeneracy %ld (the four torus sectors).\n\n",
              rep.ground_degeneracy());

  const auto pauli = spectrum(build_toric_code(lat));
  std::printf("Half-spin form, an affine rescaling 2H + 8I:\n");
  for (const auto& level : pauli.levels)
    std::printf("  E = %4g  (x%ld)\n", shown(level.value), level.multiplicity);

  CouplingConfig c;
  c.alpha = {{"Gamma_1", -2.0}, {"Gamma_-1", 0.0}};
  c.beta = {{"C_0", -1.0}, {"C_1", 0.0}};
  const auto refined = build_refined(g, table, lat, c);
  const double diff =
      max_abs(ground_projector(refined) - ground_projector(vacuum));
  std::printf("\nRefined model with couplings -|G| (trivial charge) and -1 "
              "(trivial flux):\n  groundspace projector difference %.2e\n",
              diff);
  return 0;
}
