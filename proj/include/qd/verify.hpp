#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qd/anyon_model.hpp"
#include "qd/group.hpp"
#include "qd/hilbert.hpp"
#include "qd/lattice.hpp"
#include "qd/operators.hpp"
#include "qd/rep_theory.hpp"
#include "qd/sectors.hpp"

namespace qd {

/// Runs the named invariant suite for one group and returns every check
/// whose name starts with `filter` (all checks when the filter is empty).
///
/// The suite covers: character orthogonality and completeness; explicit
/// irrep homomorphisms and the group-orthogonality swap identity (when
/// explicit matrices are available); charge-projector orthogonality,
/// resolution, and traces on the 4-edge star space; flux-projector
/// resolution and traces on the 4-edge loop space; charge/flux commutation
/// on the 6-edge site space; the flux-permutation identities at one site
/// and across adjacent sites; quantum-dimension totals; the
/// induction/restriction duality of sector content; and the excitation
/// projector identities (completeness, per-class resolutions, sector
/// closures and flavor-resolved traces).
///
/// Throws CapacityError when the site space |G|^6 exceeds 2^26.
inline std::vector<CheckResult> run_verification(const FiniteGroup& g,
                                                 double tol = kOpTolerance,
                                                 const std::string& filter =
                                                     "") {
  double site_dim = 1.0;
  for (int i = 0; i < 6; ++i) site_dim *= g.order();
  if (site_dim > static_cast<double>(1L << 26))
    throw CapacityError(
        "verification needs the 6-edge site space; the group order is too "
        "large (|G|^6 exceeds 2^26)");

  std::vector<CheckResult> out;
  auto push = [&](const std::string& name, double residual, double t) {
    if (!filter.empty() && name.rfind(filter, 0) != 0) return;
    out.push_back({name, residual, t, residual <= t});
  };
  // Evaluate a block when the filter could match names under its prefix.
  auto wants = [&](const std::string& prefix) {
    if (filter.empty()) return true;
    return prefix.rfind(filter, 0) == 0 || filter.rfind(prefix, 0) == 0;
  };

  const auto table = character_table(g);
  const auto qdd = quantum_double(g);

  if (wants("character-orthogonality")) {
    double worst = 0.0;
    for (int i = 0; i < table.num_irreps(); ++i)
      for (int j = 0; j < table.num_irreps(); ++j) {
        const cplx ip = inner_product(g, table.chi[i], table.chi[j]);
        worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
      }
    push("character-orthogonality", worst, tol);
  }
  if (wants("character-completeness")) {
    long total = 0;
    for (int d : table.dims) total += static_cast<long>(d) * d;
    push("character-completeness",
         std::abs(static_cast<double>(total - g.order())), 0.5);
  }
  if (wants("quantum-dimension")) {
    long total = 0;
    for (const auto& a : qdd.anyons)
      total += static_cast<long>(a.qdim) * a.qdim;
    const long n = g.order();
    push("quantum-dimension", std::abs(static_cast<double>(total - n * n)),
         0.5);
  }

  const auto irreps = builtin_irreps(g);
  if (!irreps.empty() && wants("irrep-homomorphism")) {
    for (const auto& rep : irreps)
      push("irrep-homomorphism " + rep.label,
           irrep_deviation(g, rep, table.chi[table.index_of(rep.label)]),
           tol);
  }
  if (!irreps.empty() && wants("got-swap")) {
    for (const auto& a : irreps)
      for (const auto& b : irreps)
        push("got-swap " + a.label + "/" + b.label, verify_got_swap(g, a, b),
             1e-12);
  }

  if (wants("induction-restriction")) {
    const auto sectors = energy_sectors(qdd, zero_couplings(table));
    const auto induced = anyon_sector_multiplicities(qdd);
    for (size_t a = 0; a < qdd.anyons.size(); ++a) {
      std::vector<std::pair<int, int>> restricted;
      for (const auto& s : sectors)
        for (const auto& item : s.content)
          if (item.anyon_index == static_cast<int>(a))
            restricted.push_back({s.irrep_index, item.multiplicity});
      double worst = restricted == induced[a] ? 0.0 : 1.0;
      push("induction-restriction " + qdd.anyons[a].name, worst, 0.5);
    }
  }

  const auto lat = build_torus(2, 2);
  const int v = 0;
  const int p_site = lat.site_of(v).plaquette;

  if (wants("charge-orthogonality") || wants("charge-resolution") ||
      wants("charge-trace")) {
    const Region star = star_region(lat, v);
    HilbertSpace star_space(g.order(), star.size());
    std::vector<SparseOperator> charge_ops;
    for (int i = 0; i < table.num_irreps(); ++i)
      charge_ops.push_back(charge_projector(g, table, lat, star, v, i));
    if (wants("charge-orthogonality")) {
      double worst = 0.0;
      for (size_t i = 0; i < charge_ops.size(); ++i)
        for (size_t j = 0; j < charge_ops.size(); ++j) {
          const auto prod = charge_ops[i] * charge_ops[j];
          worst = std::max(worst, i == j ? max_abs(prod - charge_ops[i])
                                         : max_abs(prod));
        }
      push("charge-orthogonality", worst, tol);
    }
    if (wants("charge-resolution")) {
      auto acc = zero_op(star_space);
      for (const auto& op : charge_ops) acc = acc + op;
      push("charge-resolution", max_abs(acc - identity_op(star_space)), tol);
    }
    if (wants("charge-trace")) {
      const double cube = std::pow(static_cast<double>(g.order()), 3);
      double worst = 0.0;
      for (int i = 0; i < table.num_irreps(); ++i) {
        const double expected =
            static_cast<double>(table.dims[i]) * table.dims[i] * cube;
        worst = std::max(worst,
                         std::abs(trace(charge_ops[i]) - cplx(expected, 0)));
      }
      push("charge-trace", worst, 1e-8);
    }
  }

  if (wants("flux-resolution") || wants("flux-trace")) {
    const Region loop = loop_region(lat, p_site);
    HilbertSpace loop_space(g.order(), loop.size());
    std::vector<SparseOperator> flux_ops;
    for (int ci = 0; ci < table.num_classes(); ++ci)
      flux_ops.push_back(flux_projector(g, lat, loop, p_site, ci));
    if (wants("flux-resolution")) {
      auto acc = zero_op(loop_space);
      for (const auto& op : flux_ops) acc = acc + op;
      push("flux-resolution", max_abs(acc - identity_op(loop_space)), tol);
    }
    if (wants("flux-trace")) {
      const double cube = std::pow(static_cast<double>(g.order()), 3);
      double worst = 0.0;
      for (int ci = 0; ci < table.num_classes(); ++ci) {
        const double expected = table.class_sizes[ci] * cube;
        worst = std::max(worst,
                         std::abs(trace(flux_ops[ci]) - cplx(expected, 0)));
      }
      push("flux-trace", worst, 1e-8);
    }
  }

  if (wants("commutation")) {
    const Region site = site_region(lat, v);
    double worst = 0.0;
    for (int i = 0; i < table.num_irreps(); ++i) {
      const auto a_op = charge_projector(g, table, lat, site, v, i);
      for (int ci = 0; ci < table.num_classes(); ++ci)
        worst = std::max(
            worst, commutator_norm(
                       a_op, flux_projector(g, lat, site, p_site, ci)));
    }
    push("commutation", worst, tol);
  }

  if (wants("flux-permutation")) {
    push("flux-permutation same-site",
         verify_flux_permutation(g, lat, p_site, v), 1e-12);
    // The plaquette diagonally opposite shares two edges with the star of
    // v=(1,1) but is not its site partner.
    push("flux-permutation adjacent",
         verify_flux_permutation(g, lat, 0, lat.num_vertices() - 1), 1e-12);
  }

  if (wants("excitation-completeness") || wants("class-resolution") ||
      wants("sector-closure") || wants("sector-trace")) {
    for (auto& check : verify_sector_identities(qdd, lat, v, tol)) {
      if (!filter.empty() && check.name.rfind(filter, 0) != 0) continue;
      out.push_back(std::move(check));
    }
  }

  return out;
}

}  // namespace qd
