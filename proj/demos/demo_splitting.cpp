// Walkthrough of the central result: on a single site of the order-six
// double, excitation projectors are not energy eigenprojectors once charge
// and flux couplings differ — three of the eight excitations split across
// two energy sectors each, giving nine sectors in total.

#include <qd/anyon_model.hpp>
#include <qd/group.hpp>
#include <qd/hamiltonians.hpp>
#include <qd/lattice.hpp>
#include <qd/sectors.hpp>

#include <cstdio>

int main() {
  using namespace qd;
  const FiniteGroup g = s3_presented();
  const QuantumDouble qdd = quantum_double(g);

  std::printf("Excitations of the order-six double (label, flux, charge, "
              "quantum dim):\n");
  for (const auto& a : qdd.anyons)
    std::printf("  %-2s  flux %-3s  charge %-9s  d = %d\n", a.name.c_str(),
                qdd.group.label(a.flux_representative).c_str(),
                a.charge_label.c_str(), a.qdim);

  CouplingConfig c;
  c.alpha = {{"Gamma_1", 0.0}, {"Gamma_-1", 1.0}, {"Gamma_2", 2.0}};
  c.beta = {{"C_e", 0.0}, {"C_x", 3.0}, {"C_y", 5.0}};
  std::printf("\nCharge couplings 0/1/2, flux couplings 0/3/5.\n\n");

  const auto diagram = splitting_diagram(qdd, c);
  std::printf("%s\n", render_text(diagram).c_str());

  std::printf("D, E and F each span two sectors; every other excitation has "
              "a single energy.\n\n");

  const TorusLattice lat = build_torus(2, 2);
  const auto rep = site_spectrum(qdd, lat, 0, c);
  std::printf("Exact one-site spectrum on the %ld-dimensional site space:\n",
              rep.total_dim);
  for (const auto& level : rep.levels) {
    std::printf("  E = %g  (x%ld) ", level.value, level.multiplicity);
    for (const auto& t : level.tags) std::printf(" %s", t.c_str());
    std::printf("\n");
  }
  return 0;
}
