#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <string>
#include <vector>

#include "qd/common.hpp"
#include "qd/errors.hpp"
#include "qd/group.hpp"
#include "qd/rep_theory.hpp"

namespace qd {

/// One excitation type of the double of a finite group: a conjugacy class
/// (the flux) together with an irreducible representation of the
/// centralizer of the class representative (the charge).
struct AnyonLabel {
  std::string name;            ///< display name ("A".."H", or "1"/"e"/"m"/"eps")
  int class_index = -1;        ///< conjugacy class, in the group's class order
  int flux_representative = -1;
  std::string charge_label;    ///< irrep label in the centralizer's table
  int charge_index = -1;       ///< row in the centralizer's character table
  int charge_dim = 0;
  int qdim = 0;                ///< |class| * charge_dim
  std::string type;            ///< "vacuum", "chargeon", "fluxon", or "dyon"
};

/// Display order of conjugacy classes for excitation listings: the identity
/// class first, then descending class size, ties broken by smallest member.
inline std::vector<int> anyon_class_order(const FiniteGroup& g) {
  const auto& classes = g.conjugacy_classes();
  std::vector<int> order;
  for (int c = 0; c < static_cast<int>(classes.size()); ++c)
    if (c != g.class_of(0)) order.push_back(c);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (classes[a].members.size() != classes[b].members.size())
      return classes[a].members.size() > classes[b].members.size();
    return classes[a].members[0] < classes[b].members[0];
  });
  order.insert(order.begin(), g.class_of(0));
  return order;
}

/// Enumerates all excitation labels of the double of g, in display class
/// order and centralizer-table row order within each class.
inline std::vector<AnyonLabel> enumerate_anyons(const FiniteGroup& g) {
  const auto& classes = g.conjugacy_classes();
  const auto order = anyon_class_order(g);
  std::vector<AnyonLabel> out;
  for (int ci : order) {
    const ClassTheory ct = class_theory(g, ci);
    const int trivial_row = ct.table.trivial_index();
    for (int r = 0; r < ct.table.num_irreps(); ++r) {
      AnyonLabel a;
      a.class_index = ci;
      a.flux_representative = classes[ci].representative;
      a.charge_label = ct.table.labels[r];
      a.charge_index = r;
      a.charge_dim = ct.table.dims[r];
      a.qdim = static_cast<int>(classes[ci].members.size()) * a.charge_dim;
      const bool trivial_flux = (ci == g.class_of(0));
      const bool trivial_charge = (r == trivial_row);
      if (trivial_flux && trivial_charge)
        a.type = "vacuum";
      else if (trivial_flux)
        a.type = "chargeon";
      else if (trivial_charge)
        a.type = "fluxon";
      else
        a.type = "dyon";
      out.push_back(std::move(a));
    }
  }
  // Display names: the order-2 group uses the traditional toric names;
  // otherwise letters in enumeration order while they last.
  if (g.order() == 2) {
    const char* names[] = {"1", "e", "m", "eps"};
    for (size_t i = 0; i < out.size(); ++i) out[i].name = names[i];
  } else {
    for (size_t i = 0; i < out.size(); ++i)
      out[i].name = (i < 26) ? std::string(1, static_cast<char>('A' + i))
                             : "a" + std::to_string(i);
  }
  return out;
}

/// Sum of squared quantum dimensions; checked against |G|^2.
inline long total_quantum_dimension_sq(const FiniteGroup& g) {
  const auto anyons = enumerate_anyons(g);
  long sum = 0;
  for (const auto& a : anyons) sum += static_cast<long>(a.qdim) * a.qdim;
  const long expected = static_cast<long>(g.order()) * g.order();
  if (sum != expected)
    throw InvariantViolation(
        "sum of squared quantum dimensions is " + std::to_string(sum) +
        ", expected |G|^2 = " + std::to_string(expected));
  return sum;
}

/// Everything downstream modules need about the double of one group.
struct QuantumDouble {
  FiniteGroup group;
  CharacterTable table;                     ///< of the full group
  std::vector<ClassTheory> class_theories;  ///< by group class index
  std::vector<int> class_order;             ///< display order of classes
  std::vector<AnyonLabel> anyons;           ///< in display order
};

inline QuantumDouble quantum_double(const FiniteGroup& g) {
  QuantumDouble qd;
  qd.group = g;
  qd.table = character_table(g);
  for (int c = 0; c < g.num_classes(); ++c)
    qd.class_theories.push_back(class_theory(g, c));
  qd.class_order = anyon_class_order(g);
  qd.anyons = enumerate_anyons(g);
  return qd;
}

/// A (possibly superposed) state of two adjacent fluxes: one amplitude per
/// ordered pair (a, b) of group elements, indexed a * |G| + b.
struct FluxPairState {
  int group_order = 0;
  Eigen::VectorXcd amplitudes;

  static FluxPairState basis(const FiniteGroup& g, int a, int b) {
    if (a < 0 || a >= g.order() || b < 0 || b >= g.order())
      throw ArgumentError("flux element index out of range");
    FluxPairState s;
    s.group_order = g.order();
    s.amplitudes = Eigen::VectorXcd::Zero(g.order() * g.order());
    s.amplitudes(a * g.order() + b) = 1.0;
    return s;
  }
};

namespace detail {

inline void require_normalized(const FluxPairState& s) {
  if (std::abs(s.amplitudes.norm() - 1.0) > 1e-10)
    throw ArgumentError("flux pair state must be normalized");
}

}  // namespace detail

/// Counterclockwise exchange of two fluxes: |a,b> -> |a b a^-1, a>.
inline FluxPairState braid(const FiniteGroup& g, const FluxPairState& s) {
  if (s.group_order != g.order())
    throw ArgumentError("state and group sizes disagree");
  detail::require_normalized(s);
  const int n = g.order();
  FluxPairState out;
  out.group_order = n;
  out.amplitudes = Eigen::VectorXcd::Zero(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const cplx amp = s.amplitudes(a * n + b);
      if (amp == cplx(0.0)) continue;
      out.amplitudes(g.conjugate(a, b) * n + a) += amp;
    }
  return out;
}

/// Full monodromy (one flux encircling the other):
/// |a,b> -> |(ab) a (ab)^-1, (ab) b (ab)^-1>.  Equals braid applied twice.
inline FluxPairState monodromy(const FiniteGroup& g, const FluxPairState& s) {
  if (s.group_order != g.order())
    throw ArgumentError("state and group sizes disagree");
  detail::require_normalized(s);
  const int n = g.order();
  FluxPairState out;
  out.group_order = n;
  out.amplitudes = Eigen::VectorXcd::Zero(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const cplx amp = s.amplitudes(a * n + b);
      if (amp == cplx(0.0)) continue;
      const int ab = g.multiply(a, b);
      out.amplitudes(g.conjugate(ab, a) * n + g.conjugate(ab, b)) += amp;
    }
  return out;
}

}  // namespace qd
