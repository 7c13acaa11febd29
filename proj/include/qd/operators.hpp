#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qd/anyon_model.hpp"
#include "qd/common.hpp"
#include "qd/errors.hpp"
#include "qd/group.hpp"
#include "qd/hilbert.hpp"
#include "qd/lattice.hpp"
#include "qd/rep_theory.hpp"

namespace qd {

enum class Sign { plus, minus };

/// Single-qudit left/right multiplication operator:
/// plus:  |z> -> |g z>;  minus: |z> -> |z g^-1>.  Both are permutations.
inline SparseOperator left_mult(const FiniteGroup& g, int elem, Sign sign) {
  if (elem < 0 || elem >= g.order())
    throw ArgumentError("group element out of range");
  HilbertSpace space(g.order(), 1);
  SparseOperator op(space);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int z = 0; z < g.order(); ++z) {
    const int out = (sign == Sign::plus) ? g.multiply(elem, z)
                                         : g.multiply(z, g.inverse(elem));
    trips.emplace_back(out, z, 1.0);
  }
  op.mat.setFromTriplets(trips.begin(), trips.end());
  return op;
}

/// Single-qudit flux detector: rank-1 diagonal projector at |h> (plus) or
/// |h^-1> (minus).
inline SparseOperator diag_flux(const FiniteGroup& g, int elem, Sign sign) {
  if (elem < 0 || elem >= g.order())
    throw ArgumentError("group element out of range");
  HilbertSpace space(g.order(), 1);
  SparseOperator op(space);
  const int target = (sign == Sign::plus) ? elem : g.inverse(elem);
  op.mat.insert(target, target) = 1.0;
  op.mat.makeCompressed();
  return op;
}

namespace detail {

/// Local positions (and along flags) of the 4 star edges of v inside region.
inline std::array<std::pair<int, bool>, 4> star_positions(
    const TorusLattice& lat, const Region& region, int v) {
  std::array<std::pair<int, bool>, 4> out;
  const auto& star = lat.star(v);
  for (int i = 0; i < 4; ++i) {
    const int pos = region.position_of(star.edges[i].edge);
    if (pos < 0)
      throw ArgumentError("region does not contain all star edges of the vertex");
    out[i] = {pos, star.edges[i].along};
  }
  return out;
}

/// Local positions (and along flags) of the 4 loop edges of p inside region.
inline std::array<std::pair<int, bool>, 4> loop_positions(
    const TorusLattice& lat, const Region& region, int p) {
  std::array<std::pair<int, bool>, 4> out;
  const auto& loop = lat.loop(p);
  for (int i = 0; i < 4; ++i) {
    const int pos = region.position_of(loop.edges[i].edge);
    if (pos < 0)
      throw ArgumentError("region does not contain all loop edges of the plaquette");
    out[i] = {pos, loop.edges[i].along};
  }
  return out;
}

/// Basis index reached from b by the vertex action of `elem` at the star
/// positions: outgoing edges map z -> elem*z, incoming map z -> z*elem^-1.
inline long vertex_image(const FiniteGroup& g, const HilbertSpace& space,
                         const std::array<std::pair<int, bool>, 4>& pos,
                         int elem, int elem_inv, long b) {
  long nb = b;
  for (const auto& [p, along] : pos) {
    const int z = space.digit(b, p);
    const int out = along ? g.multiply(elem, z) : g.multiply(z, elem_inv);
    nb = space.with_digit(nb, p, out);
  }
  return nb;
}

/// Oriented loop product at p for basis index b: edges along the traversal
/// contribute z, edges against it contribute z^-1, multiplied in slot order.
inline int loop_product(const FiniteGroup& g, const HilbertSpace& space,
                        const std::array<std::pair<int, bool>, 4>& pos,
                        long b) {
  int prod = 0;
  for (const auto& [p, along] : pos) {
    const int z = space.digit(b, p);
    prod = g.multiply(prod, along ? z : g.inverse(z));
  }
  return prod;
}

}  // namespace detail

/// Vertex operator: left/right group multiplication on the 4 star edges of
/// v, identity on the rest of the region.  A permutation matrix.
inline SparseOperator vertex_operator(const FiniteGroup& g,
                                      const TorusLattice& lat,
                                      const Region& region, int v, int elem) {
  if (elem < 0 || elem >= g.order())
    throw ArgumentError("group element out of range");
  HilbertSpace space(g.order(), region.size());
  const auto pos = detail::star_positions(lat, region, v);
  const int inv = g.inverse(elem);
  SparseOperator op(space);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(space.dim());
  for (long b = 0; b < space.dim(); ++b)
    trips.emplace_back(detail::vertex_image(g, space, pos, elem, inv, b), b,
                       1.0);
  op.mat.setFromTriplets(trips.begin(), trips.end());
  return op;
}

/// Plaquette operator: diagonal projector onto basis states whose oriented
/// loop product around p equals h.
inline SparseOperator plaquette_operator(const FiniteGroup& g,
                                         const TorusLattice& lat,
                                         const Region& region, int p,
                                         int h) {
  if (h < 0 || h >= g.order())
    throw ArgumentError("group element out of range");
  HilbertSpace space(g.order(), region.size());
  const auto pos = detail::loop_positions(lat, region, p);
  SparseOperator op(space);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (long b = 0; b < space.dim(); ++b)
    if (detail::loop_product(g, space, pos, b) == h)
      trips.emplace_back(b, b, 1.0);
  op.mat.setFromTriplets(trips.begin(), trips.end());
  return op;
}

/// Flux projector: sum of plaquette operators over one conjugacy class.
inline SparseOperator flux_projector(const FiniteGroup& g,
                                     const TorusLattice& lat,
                                     const Region& region, int p,
                                     int class_index) {
  if (class_index < 0 || class_index >= g.num_classes())
    throw ArgumentError("class index out of range");
  HilbertSpace space(g.order(), region.size());
  const auto pos = detail::loop_positions(lat, region, p);
  SparseOperator op(space);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (long b = 0; b < space.dim(); ++b)
    if (g.class_of(detail::loop_product(g, space, pos, b)) == class_index)
      trips.emplace_back(b, b, 1.0);
  op.mat.setFromTriplets(trips.begin(), trips.end());
  return op;
}

/// Charge projector: (d_G / |G|) sum_g chi_G(g) A_g at vertex v.
inline SparseOperator charge_projector(const FiniteGroup& g,
                                       const CharacterTable& table,
                                       const TorusLattice& lat,
                                       const Region& region, int v,
                                       int irrep) {
  if (irrep < 0 || irrep >= table.num_irreps())
    throw ArgumentError("irrep index out of range");
  HilbertSpace space(g.order(), region.size());
  const auto pos = detail::star_positions(lat, region, v);
  const double norm = static_cast<double>(table.dims[irrep]) / g.order();
  SparseOperator op(space);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(space.dim() * g.order());
  for (int elem = 0; elem < g.order(); ++elem) {
    const cplx coeff = norm * table.chi[irrep][g.class_of(elem)];
    if (std::abs(coeff) < kSparseDropTolerance) continue;
    const int inv = g.inverse(elem);
    for (long b = 0; b < space.dim(); ++b)
      trips.emplace_back(detail::vertex_image(g, space, pos, elem, inv, b), b,
                         coeff);
  }
  op.mat.setFromTriplets(trips.begin(), trips.end());
  op.prune();
  return op;
}

/// Unnormalized star symmetrizer sum_g A_g = |G| * (trivial charge
/// projector).
inline SparseOperator vertex_symmetrizer(const FiniteGroup& g,
                                         const TorusLattice& lat,
                                         const Region& region, int v) {
  HilbertSpace space(g.order(), region.size());
  const auto pos = detail::star_positions(lat, region, v);
  SparseOperator op(space);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(space.dim() * g.order());
  for (int elem = 0; elem < g.order(); ++elem) {
    const int inv = g.inverse(elem);
    for (long b = 0; b < space.dim(); ++b)
      trips.emplace_back(detail::vertex_image(g, space, pos, elem, inv, b), b,
                         1.0);
  }
  op.mat.setFromTriplets(trips.begin(), trips.end());
  return op;
}

/// Six-body excitation projector at the site of vertex v:
///   P_(C, G) = sum_{m in C} (d_G / |N|) sum_{x in N_m} chi^(m)(x) A_x B_m,
/// where chi^(m) is the centralizer character transported from the class
/// representative to member m along a fixed conjugator.
inline SparseOperator anyon_projector_6body(const QuantumDouble& qdd,
                                            const TorusLattice& lat,
                                            const Region& region, int v,
                                            const AnyonLabel& a) {
  const FiniteGroup& g = qdd.group;
  const ClassTheory& ct = qdd.class_theories[a.class_index];
  const auto& members = g.conjugacy_classes()[a.class_index].members;
  const int p = lat.site_of(v).plaquette;

  HilbertSpace space(g.order(), region.size());
  const auto star_pos = detail::star_positions(lat, region, v);
  const auto loop_pos = detail::loop_positions(lat, region, p);

  std::vector<int> flux(space.dim());
  for (long b = 0; b < space.dim(); ++b)
    flux[b] = detail::loop_product(g, space, loop_pos, b);

  const double norm =
      static_cast<double>(ct.table.dims[a.charge_index]) /
      ct.centralizer.order();

  SparseOperator op(space);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (size_t mp = 0; mp < members.size(); ++mp) {
    const int m = members[mp];
    const Subgroup nm = g.normalizer(m);
    for (int x : nm.elements) {
      const cplx coeff =
          norm * transported_chi(g, ct, a.charge_index,
                                 static_cast<int>(mp), x);
      if (std::abs(coeff) < kSparseDropTolerance) continue;
      const int xinv = g.inverse(x);
      for (long b = 0; b < space.dim(); ++b) {
        if (flux[b] != m) continue;
        trips.emplace_back(
            detail::vertex_image(g, space, star_pos, x, xinv, b), b, coeff);
      }
    }
  }
  op.mat.setFromTriplets(trips.begin(), trips.end());
  op.prune();
  return op;
}

/// Convenience overload building the projector on the site's own 6-edge
/// region.
inline SparseOperator anyon_projector_6body(const QuantumDouble& qdd,
                                            const TorusLattice& lat, int v,
                                            const AnyonLabel& a) {
  return anyon_projector_6body(qdd, lat, site_region(lat, v), v, a);
}

/// Checks how vertex operators transport plaquette flux.  For the (p, v)
/// forming a site, verifies B_g = A_{h^-1} B_{h g h^-1} A_h for all pairs
/// (g, h); for any other (p, v) the conjugation drops out and it verifies
/// B_g = A_{h^-1} B_g A_h.  Returns the worst entrywise deviation.
inline double verify_flux_permutation(const FiniteGroup& g,
                                      const TorusLattice& lat, int p, int v) {
  const Region region =
      union_region(loop_region(lat, p), star_region(lat, v));
  const bool same_site = (lat.site_of(v).plaquette == p);

  std::vector<SparseOperator> b_ops;
  b_ops.reserve(g.order());
  for (int x = 0; x < g.order(); ++x)
    b_ops.push_back(plaquette_operator(g, lat, region, p, x));

  double worst = 0.0;
  for (int h = 0; h < g.order(); ++h) {
    const auto a_h = vertex_operator(g, lat, region, v, h);
    const auto a_hinv = vertex_operator(g, lat, region, v, g.inverse(h));
    for (int x = 0; x < g.order(); ++x) {
      const int target = same_site ? g.conjugate(h, x) : x;
      worst = std::max(
          worst, max_abs(b_ops[x] - a_hinv * b_ops[target] * a_h));
    }
  }
  return worst;
}

/// Real coefficients for the commuting-projector Hamiltonian: one per irrep
/// of G (alpha) and one per conjugacy class (beta), keyed by display label.
struct CouplingConfig {
  std::map<std::string, double> alpha;
  std::map<std::string, double> beta;
};

/// Requires the coupling keys to cover the irreps and classes of the table
/// exactly; throws ConfigError otherwise.
inline void validate_couplings(const CouplingConfig& c,
                               const CharacterTable& table) {
  auto check = [](const std::map<std::string, double>& have,
                  const std::vector<std::string>& want, const char* kind) {
    for (const auto& label : want)
      if (!have.count(label))
        throw ConfigError(std::string("missing ") + kind + " coupling for '" +
                          label + "'");
    if (have.size() != want.size())
      for (const auto& [label, _] : have)
        if (std::find(want.begin(), want.end(), label) == want.end())
          throw ConfigError(std::string("unknown ") + kind +
                            " coupling key '" + label + "'");
  };
  check(c.alpha, table.labels, "charge");
  check(c.beta, table.class_labels, "flux");
}

}  // namespace qd
