#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qd/anyon_model.hpp"
#include "qd/common.hpp"
#include "qd/errors.hpp"
#include "qd/group.hpp"
#include "qd/hilbert.hpp"
#include "qd/lattice.hpp"
#include "qd/operators.hpp"
#include "qd/rep_theory.hpp"

namespace qd {

/// A coupling configuration with every charge and flux coupling set to zero.
inline CouplingConfig zero_couplings(const CharacterTable& table) {
  CouplingConfig c;
  for (const auto& l : table.labels) c.alpha[l] = 0.0;
  for (const auto& l : table.class_labels) c.beta[l] = 0.0;
  return c;
}

/// One excitation type inside an energy sector.
struct SectorContent {
  int anyon_index = -1;
  std::string anyon_name;
  /// The excitation name, subscripted when the excitation spans several
  /// sectors (e.g. "D_2" for the copy of D inside the two-dimensional
  /// charge sector).
  std::string flavor;
  int multiplicity = 0;
  int charge_dim = 0;  ///< dimension of the centralizer charge
};

/// A joint eigenspace of one charge projector and one flux projector.  Its
/// energy under the refined Hamiltonian is alpha_G + beta_C; its cell in the
/// |G| x |G| site diagram has |C| d^2 boxes.
struct EnergySector {
  int class_index = -1;  ///< group conjugacy-class index
  int irrep_index = -1;
  std::string class_label;
  std::string irrep_label;
  double energy = 0.0;
  long cell_dim = 0;
  std::vector<SectorContent> content;
  std::string display;  ///< e.g. "D_2+E_2" or "C_1+C_2"
};

/// All energy sectors of the refined model, row-major over flux classes (in
/// excitation display order) and charge irreps (in table order).  Sector
/// content is computed by restricting each group irrep to the flux
/// centralizer and decomposing there.
inline std::vector<EnergySector> energy_sectors(const QuantumDouble& qdd,
                                                const CouplingConfig& c) {
  const FiniteGroup& g = qdd.group;
  const CharacterTable& table = qdd.table;
  validate_couplings(c, table);

  // anyon lookup by (group class index, centralizer charge index)
  std::map<std::pair<int, int>, int> anyon_at;
  for (size_t i = 0; i < qdd.anyons.size(); ++i)
    anyon_at[{qdd.anyons[i].class_index, qdd.anyons[i].charge_index}] =
        static_cast<int>(i);

  struct RawCell {
    int class_index, irrep_index;
    std::vector<std::pair<int, int>> items;  // (anyon index, multiplicity)
  };
  std::vector<RawCell> raw;
  std::vector<std::vector<int>> anyon_cells(qdd.anyons.size());
  for (int ci : qdd.class_order) {
    const ClassTheory& ct = qdd.class_theories[ci];
    for (int i = 0; i < table.num_irreps(); ++i) {
      const auto restricted =
          restrict_character(g, table.chi[i], ct.centralizer, ct.group);
      const auto mult = decompose(ct.group, ct.table, restricted);
      RawCell cell{ci, i, {}};
      for (int j = 0; j < static_cast<int>(mult.size()); ++j)
        if (mult[j] > 0) cell.items.push_back({anyon_at.at({ci, j}), mult[j]});
      std::sort(cell.items.begin(), cell.items.end());
      for (const auto& [a, m] : cell.items)
        anyon_cells[a].push_back(static_cast<int>(raw.size()));
      raw.push_back(std::move(cell));
    }
  }

  // Flavor ordinals: an excitation spanning several sectors numbers them in
  // ascending (charge dimension, irrep index) order.
  std::map<std::pair<int, int>, std::string> flavor_of;  // (cell, anyon)
  for (size_t a = 0; a < qdd.anyons.size(); ++a) {
    auto cells = anyon_cells[a];
    std::sort(cells.begin(), cells.end(), [&](int x, int y) {
      const auto kx = std::make_pair(table.dims[raw[x].irrep_index],
                                     raw[x].irrep_index);
      const auto ky = std::make_pair(table.dims[raw[y].irrep_index],
                                     raw[y].irrep_index);
      return kx < ky;
    });
    for (size_t k = 0; k < cells.size(); ++k)
      flavor_of[{cells[k], static_cast<int>(a)}] =
          cells.size() >= 2
              ? qdd.anyons[a].name + "_" + std::to_string(k + 1)
              : qdd.anyons[a].name;
  }

  const int identity_class = g.class_of(0);
  std::vector<EnergySector> out;
  for (size_t cell = 0; cell < raw.size(); ++cell) {
    const RawCell& rc = raw[cell];
    EnergySector s;
    s.class_index = rc.class_index;
    s.irrep_index = rc.irrep_index;
    s.class_label = table.class_labels[rc.class_index];
    s.irrep_label = table.labels[rc.irrep_index];
    s.energy = c.alpha.at(s.irrep_label) + c.beta.at(s.class_label);
    const long csize =
        static_cast<long>(g.conjugacy_classes()[rc.class_index].members.size());
    const long d = table.dims[rc.irrep_index];
    s.cell_dim = csize * d * d;

    long charge_total = 0;
    std::ostringstream disp;
    bool first = true;
    for (const auto& [a, m] : rc.items) {
      const AnyonLabel& lab = qdd.anyons[a];
      SectorContent item;
      item.anyon_index = a;
      item.anyon_name = lab.name;
      item.flavor = flavor_of.at({static_cast<int>(cell), a});
      item.multiplicity = m;
      item.charge_dim = lab.charge_dim;
      charge_total += static_cast<long>(m) * lab.charge_dim;
      s.content.push_back(item);
      // Display: vacuum-flux cells show a higher-dimensional charge as its
      // internal copies; elsewhere each unit of multiplicity is one term.
      if (rc.class_index == identity_class && lab.charge_dim >= 2 &&
          anyon_cells[a].size() < 2) {
        for (int k = 1; k <= m * lab.charge_dim; ++k) {
          if (!first) disp << "+";
          disp << lab.name << "_" << k;
          first = false;
        }
      } else {
        for (int k = 0; k < m; ++k) {
          if (!first) disp << "+";
          disp << item.flavor;
          first = false;
        }
      }
    }
    if (charge_total != d)
      throw InvariantViolation(
          "sector charge content does not sum to the irrep dimension");
    s.display = disp.str();
    out.push_back(std::move(s));
  }
  return out;
}

/// For each excitation, the (irrep index, multiplicity) pairs of the sectors
/// that contain it, computed by the dual route: inducing the centralizer
/// charge up to the full group and decomposing there.
inline std::vector<std::vector<std::pair<int, int>>> anyon_sector_multiplicities(
    const QuantumDouble& qdd) {
  std::vector<std::vector<std::pair<int, int>>> out;
  for (const auto& a : qdd.anyons) {
    const ClassTheory& ct = qdd.class_theories[a.class_index];
    const auto induced = induce_character(qdd.group, ct.centralizer, ct.group,
                                          ct.table.chi[a.charge_index]);
    const auto mult = decompose(qdd.group, qdd.table, induced);
    std::vector<std::pair<int, int>> rows;
    for (int i = 0; i < static_cast<int>(mult.size()); ++i)
      if (mult[i] > 0) rows.push_back({i, mult[i]});
    out.push_back(std::move(rows));
  }
  return out;
}

/// The diagram footprint of each excitation: sum over sectors of
/// multiplicity * charge_dim * |C| * d_irrep.  Equals the squared quantum
/// dimension.
inline std::vector<long> anyon_areas(const QuantumDouble& qdd,
                                     const std::vector<EnergySector>& sectors) {
  std::vector<long> areas(qdd.anyons.size(), 0);
  for (const auto& s : sectors) {
    const long csize = static_cast<long>(
        qdd.group.conjugacy_classes()[s.class_index].members.size());
    const long d = qdd.table.dims[s.irrep_index];
    for (const auto& item : s.content)
      areas[item.anyon_index] +=
          static_cast<long>(item.multiplicity) * item.charge_dim * csize * d;
  }
  return areas;
}

/// The |G| x |G| site diagram: flux-class bands as rows (height |C|),
/// charge-irrep bands as columns (width d^2), one energy sector per cell.
struct SplittingDiagram {
  std::string group_name;
  struct Band {
    int index = -1;  ///< class index (rows) or irrep index (columns)
    std::string label;
    int width = 0;
  };
  std::vector<Band> rows;
  std::vector<Band> cols;
  std::vector<EnergySector> cells;  ///< row-major
  long total_area = 0;
};

inline SplittingDiagram splitting_diagram(const QuantumDouble& qdd,
                                          const CouplingConfig& c) {
  SplittingDiagram d;
  d.group_name = qdd.group.name();
  for (int ci : qdd.class_order) {
    const int width = static_cast<int>(
        qdd.group.conjugacy_classes()[ci].members.size());
    d.rows.push_back({ci, qdd.table.class_labels[ci], width});
  }
  for (int i = 0; i < qdd.table.num_irreps(); ++i)
    d.cols.push_back(
        {i, qdd.table.labels[i], qdd.table.dims[i] * qdd.table.dims[i]});
  d.cells = energy_sectors(qdd, c);
  for (const auto& s : d.cells) d.total_area += s.cell_dim;
  const long n = qdd.group.order();
  if (d.total_area != n * n)
    throw InvariantViolation("diagram area does not equal the group order squared");
  return d;
}

inline SplittingDiagram splitting_diagram(const QuantumDouble& qdd) {
  return splitting_diagram(qdd, zero_couplings(qdd.table));
}

namespace detail {

inline std::string format_energy(double e) {
  std::ostringstream os;
  os << e;
  return os.str();
}

}  // namespace detail

/// Fixed-width text rendering of the diagram, one sector per cell with its
/// box count and energy.
inline std::string render_text(const SplittingDiagram& d) {
  const size_t nc = d.cols.size();
  auto cell_text = [&](const EnergySector& s) {
    return s.display + " [" + std::to_string(s.cell_dim) +
           "] E=" + detail::format_energy(s.energy);
  };
  std::vector<std::string> row_heads;
  size_t head_w = 0;
  for (const auto& r : d.rows) {
    row_heads.push_back(r.label + " (" + std::to_string(r.width) + ")");
    head_w = std::max(head_w, row_heads.back().size());
  }
  std::vector<std::string> col_heads;
  std::vector<size_t> col_w(nc, 0);
  for (size_t j = 0; j < nc; ++j) {
    col_heads.push_back(d.cols[j].label + " (" +
                        std::to_string(d.cols[j].width) + ")");
    col_w[j] = col_heads.back().size();
  }
  for (size_t i = 0; i < d.rows.size(); ++i)
    for (size_t j = 0; j < nc; ++j)
      col_w[j] = std::max(col_w[j], cell_text(d.cells[i * nc + j]).size());

  std::ostringstream os;
  os << d.group_name << " energy sectors\n";
  os << std::string(head_w, ' ');
  for (size_t j = 0; j < nc; ++j) {
    std::string h = col_heads[j];
    h.resize(col_w[j], ' ');
    os << " | " << h;
  }
  os << "\n" << std::string(head_w, '-');
  for (size_t j = 0; j < nc; ++j) os << "-+-" << std::string(col_w[j], '-');
  os << "\n";
  for (size_t i = 0; i < d.rows.size(); ++i) {
    std::string h = row_heads[i];
    h.resize(head_w, ' ');
    os << h;
    for (size_t j = 0; j < nc; ++j) {
      std::string t = cell_text(d.cells[i * nc + j]);
      t.resize(col_w[j], ' ');
      os << " | " << t;
    }
    os << "\n";
  }
  return os.str();
}

/// Graphviz rendering: one box per sector grouped by flux row, with edges
/// joining the sectors an excitation is split across.
inline std::string render_dot(const SplittingDiagram& d) {
  const size_t nc = d.cols.size();
  std::ostringstream os;
  os << "graph splitting {\n";
  os << "  label=\"" << d.group_name << " energy sectors\";\n";
  os << "  node [shape=box];\n";
  for (size_t i = 0; i < d.rows.size(); ++i) {
    os << "  subgraph cluster_row" << i << " {\n";
    os << "    label=\"" << d.rows[i].label << "\";\n";
    for (size_t j = 0; j < nc; ++j) {
      const auto& s = d.cells[i * nc + j];
      os << "    s" << (i * nc + j) << " [label=\"" << s.display << "\\n"
         << s.irrep_label << "\\ndim " << s.cell_dim << "\\nE="
         << detail::format_energy(s.energy) << "\"];\n";
    }
    os << "  }\n";
  }
  // connect the cells each excitation spans
  std::map<std::string, std::vector<size_t>> spans;
  for (size_t k = 0; k < d.cells.size(); ++k)
    for (const auto& item : d.cells[k].content)
      spans[item.anyon_name].push_back(k);
  for (const auto& [name, cells] : spans)
    for (size_t k = 0; k + 1 < cells.size(); ++k)
      os << "  s" << cells[k] << " -- s" << cells[k + 1] << " [label=\""
         << name << "\"];\n";
  os << "}\n";
  return os.str();
}

/// One named numerical check with its outcome.
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Operator-level certification that the six-body excitation projectors are
/// compatible with the charge/flux sector structure on one site:
///  - the excitation projectors resolve the identity;
///  - per flux class, the excitations of that class sum to the flux
///    projector;
///  - each sector is fixed by the sum of the projectors of its content;
///  - each flavor occupies exactly multiplicity * d_charge * |C| * d_irrep
///    * |G|^4 dimensions of the sector.
inline std::vector<CheckResult> verify_sector_identities(
    const QuantumDouble& qdd, const TorusLattice& lat, int v,
    double tol = kOpTolerance) {
  const FiniteGroup& g = qdd.group;
  const CharacterTable& table = qdd.table;
  const Region region = site_region(lat, v);
  const int p = lat.site_of(v).plaquette;
  HilbertSpace space(g.order(), region.size());

  std::vector<SparseOperator> proj;
  for (const auto& a : qdd.anyons)
    proj.push_back(anyon_projector_6body(qdd, lat, region, v, a));
  std::vector<SparseOperator> charge_ops, flux_ops;
  for (int i = 0; i < table.num_irreps(); ++i)
    charge_ops.push_back(charge_projector(g, table, lat, region, v, i));
  for (int ci = 0; ci < table.num_classes(); ++ci)
    flux_ops.push_back(flux_projector(g, lat, region, p, ci));

  std::vector<CheckResult> out;
  auto push = [&](const std::string& name, double residual, double t) {
    out.push_back({name, residual, t, residual <= t});
  };

  auto total = zero_op(space);
  for (const auto& pr : proj) total = total + pr;
  push("excitation-completeness", max_abs(total - identity_op(space)), tol);

  for (int ci = 0; ci < table.num_classes(); ++ci) {
    auto acc = zero_op(space);
    for (size_t a = 0; a < proj.size(); ++a)
      if (qdd.anyons[a].class_index == ci) acc = acc + proj[a];
    push("class-resolution " + table.class_labels[ci],
         max_abs(acc - flux_ops[ci]), tol);
  }

  const auto sectors = energy_sectors(qdd, zero_couplings(table));
  const double scale = std::pow(static_cast<double>(g.order()), 4);
  for (const auto& s : sectors) {
    const auto pi = charge_ops[s.irrep_index] * flux_ops[s.class_index];
    auto acc = zero_op(space);
    for (const auto& item : s.content) acc = acc + proj[item.anyon_index];
    const std::string tag = s.irrep_label + ":" + s.class_label;
    push("sector-closure " + tag, max_abs(acc * pi - pi), tol);

    const long csize = static_cast<long>(
        g.conjugacy_classes()[s.class_index].members.size());
    for (const auto& item : s.content) {
      const double expected = static_cast<double>(item.multiplicity) *
                              item.charge_dim * csize *
                              table.dims[s.irrep_index] * scale;
      const cplx tr = trace(proj[item.anyon_index] * pi);
      const double resid = std::abs(tr - cplx(expected, 0.0));
      push("sector-trace " + item.anyon_name + "@" + tag, resid, 1e-6);
    }
  }
  return out;
}

inline std::vector<CheckResult> verify_sector_identities(
    const QuantumDouble& qdd, double tol = kOpTolerance) {
  return verify_sector_identities(qdd, build_torus(2, 2), 0, tol);
}

}  // namespace qd
