#pragma once

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qd/anyon_model.hpp"
#include "qd/errors.hpp"
#include "qd/group.hpp"
#include "qd/hamiltonians.hpp"
#include "qd/lattice.hpp"
#include "qd/operators.hpp"
#include "qd/rep_theory.hpp"
#include "qd/sectors.hpp"

namespace qd {
namespace io {

using ordered_json = nlohmann::ordered_json;

/// Builds a group from a parsed description: {"cayley": [[...]]} or
/// {"generators": [[permutation], ...]}, with optional "name" and (for
/// Cayley input) optional element "labels".
inline FiniteGroup group_from_json(const ordered_json& doc) {
  if (!doc.is_object())
    throw ConfigError("group description must be a JSON object");
  const std::string name = doc.value("name", std::string("group"));
  const bool has_cayley = doc.contains("cayley");
  const bool has_generators = doc.contains("generators");
  if (has_cayley == has_generators)
    throw ConfigError(
        "group description needs exactly one of 'cayley' or 'generators'");
  try {
    if (has_cayley) {
      const auto& rows = doc.at("cayley");
      if (!rows.is_array() || rows.empty())
        throw ConfigError("'cayley' must be a non-empty array of rows");
      const size_t n = rows.size();
      std::vector<int> flat;
      flat.reserve(n * n);
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n)
          throw ConfigError("'cayley' must be a square matrix");
        for (const auto& v : row) flat.push_back(v.get<int>());
      }
      std::vector<std::string> labels;
      if (doc.contains("labels"))
        labels = doc.at("labels").get<std::vector<std::string>>();
      return FiniteGroup::from_cayley(std::move(flat), std::move(labels),
                                      name);
    }
    if (doc.contains("labels"))
      throw ConfigError("'labels' is only supported with 'cayley' input");
    const auto perms =
        doc.at("generators").get<std::vector<std::vector<int>>>();
    return group_from_generators(perms, 5040, name);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid group description: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid group description: ") + e.what());
  }
}

inline ordered_json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

inline FiniteGroup load_group_file(const std::string& path) {
  return group_from_json(parse_json_file(path));
}

/// Reads {"alpha": {irrep label: value}, "beta": {class label: value}} and
/// validates it against the character table.
inline CouplingConfig couplings_from_json(const ordered_json& doc,
                                          const CharacterTable& table) {
  if (!doc.is_object() || !doc.contains("alpha") || !doc.contains("beta"))
    throw ConfigError("couplings must be {\"alpha\": {...}, \"beta\": {...}}");
  CouplingConfig c;
  try {
    for (const auto& [key, value] : doc.at("alpha").items())
      c.alpha[key] = value.get<double>();
    for (const auto& [key, value] : doc.at("beta").items())
      c.beta[key] = value.get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid couplings: ") + e.what());
  }
  validate_couplings(c, table);
  return c;
}

inline CouplingConfig load_couplings_file(const std::string& path,
                                          const CharacterTable& table) {
  return couplings_from_json(parse_json_file(path), table);
}

namespace detail {

inline ordered_json complex_pair(const cplx& z) {
  return ordered_json::array({z.real(), z.imag()});
}

inline std::string format_complex(const cplx& z, double tol = 1e-9) {
  std::ostringstream os;
  const bool has_re = std::abs(z.real()) > tol;
  const bool has_im = std::abs(z.imag()) > tol;
  if (!has_im) {
    os << (has_re ? z.real() : 0.0);
  } else {
    if (has_re) os << z.real() << (z.imag() >= 0 ? "+" : "");
    os << z.imag() << "i";
  }
  return os.str();
}

}  // namespace detail

inline ordered_json character_table_json(const FiniteGroup& g,
                                         const CharacterTable& table) {
  ordered_json out;
  out["irreps"] = ordered_json::array();
  for (int i = 0; i < table.num_irreps(); ++i)
    out["irreps"].push_back(
        {{"label", table.labels[i]}, {"dim", table.dims[i]}});
  out["classes"] = ordered_json::array();
  const auto& classes = g.conjugacy_classes();
  for (int c = 0; c < table.num_classes(); ++c)
    out["classes"].push_back(
        {{"label", table.class_labels[c]},
         {"representative", g.label(classes[c].representative)},
         {"size", table.class_sizes[c]}});
  out["entries"] = ordered_json::array();
  for (int i = 0; i < table.num_irreps(); ++i) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < table.num_classes(); ++c)
      row.push_back(detail::complex_pair(table.chi[i][c]));
    out["entries"].push_back(row);
  }
  return out;
}

inline ordered_json group_report_json(const FiniteGroup& g,
                                      const CharacterTable& table) {
  ordered_json out;
  out["name"] = g.name();
  out["order"] = g.order();
  out["elements"] = g.labels();
  out["classes"] = ordered_json::array();
  const auto& classes = g.conjugacy_classes();
  for (size_t c = 0; c < classes.size(); ++c) {
    ordered_json members = ordered_json::array();
    for (int m : classes[c].members) members.push_back(g.label(m));
    out["classes"].push_back(
        {{"label", table.class_labels[c]},
         {"representative", g.label(classes[c].representative)},
         {"size", static_cast<int>(classes[c].members.size())},
         {"members", members},
         {"normalizer_order",
          g.normalizer(classes[c].representative).order()}});
  }
  out["character_table"] = character_table_json(g, table);
  return out;
}

inline std::string group_report_text(const FiniteGroup& g,
                                     const CharacterTable& table) {
  std::ostringstream os;
  os << "group " << g.name() << " (order " << g.order() << ")\n";
  os << "elements:";
  for (const auto& l : g.labels()) os << " " << l;
  os << "\nclasses:\n";
  const auto& classes = g.conjugacy_classes();
  for (size_t c = 0; c < classes.size(); ++c)
    os << "  " << table.class_labels[c] << ": size "
       << classes[c].members.size() << ", representative "
       << g.label(classes[c].representative) << ", normalizer order "
       << g.normalizer(classes[c].representative).order() << "\n";
  os << "character table:\n";
  size_t w = 0;
  for (const auto& l : table.labels) w = std::max(w, l.size());
  os << std::string(w, ' ');
  for (const auto& l : table.class_labels) os << "\t" << l;
  os << "\n";
  for (int i = 0; i < table.num_irreps(); ++i) {
    std::string head = table.labels[i];
    head.resize(w, ' ');
    os << head;
    for (int c = 0; c < table.num_classes(); ++c)
      os << "\t" << detail::format_complex(table.chi[i][c]);
    os << "\n";
  }
  return os.str();
}

/// Excitation table with the standard columns: label, flux-class
/// representative, normalizer order, charge label, quantum dimension, type.
inline ordered_json anyon_table_json(const QuantumDouble& qdd) {
  ordered_json out;
  out["group"] = qdd.group.name();
  out["anyons"] = ordered_json::array();
  for (const auto& a : qdd.anyons)
    out["anyons"].push_back(
        {{"label", a.name},
         {"flux", qdd.group.label(a.flux_representative)},
         {"normalizer_order",
          qdd.class_theories[a.class_index].centralizer.order()},
         {"charge", a.charge_label},
         {"quantum_dim", a.qdim},
         {"type", a.type}});
  out["total_quantum_dim_sq"] = total_quantum_dimension_sq(qdd.group);
  return out;
}

inline std::string anyon_table_text(const QuantumDouble& qdd) {
  std::ostringstream os;
  os << "excitations of the " << qdd.group.name() << " double ("
     << qdd.anyons.size() << " types)\n";
  os << "label\tflux\tnormalizer\tcharge\tq.dim\ttype\n";
  for (const auto& a : qdd.anyons)
    os << a.name << "\t" << qdd.group.label(a.flux_representative) << "\t"
       << qdd.class_theories[a.class_index].centralizer.order() << "\t"
       << a.charge_label << "\t" << a.qdim << "\t" << a.type << "\n";
  return os.str();
}

/// Lattice debug dump: per-edge endpoints and orientation, per-site edge
/// lists with traversal flags.
inline ordered_json lattice_json(const TorusLattice& lat) {
  ordered_json out;
  out["rows"] = lat.rows();
  out["cols"] = lat.cols();
  out["vertices"] = lat.num_vertices();
  out["edges"] = ordered_json::array();
  for (int e = 0; e < lat.num_edges(); ++e) {
    const auto& edge = lat.edge(e);
    out["edges"].push_back({{"index", e},
                            {"orientation", edge.horizontal ? "h" : "v"},
                            {"row", edge.row},
                            {"col", edge.col},
                            {"from", edge.from_vertex},
                            {"to", edge.to_vertex}});
  }
  out["stars"] = ordered_json::array();
  for (int v = 0; v < lat.num_vertices(); ++v) {
    ordered_json slots = ordered_json::array();
    for (const auto& ref : lat.star(v).edges)
      slots.push_back(
          {{"edge", ref.edge}, {"outgoing", ref.along}});
    out["stars"].push_back({{"vertex", v}, {"slots", slots}});
  }
  out["loops"] = ordered_json::array();
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    ordered_json slots = ordered_json::array();
    for (const auto& ref : lat.loop(p).edges)
      slots.push_back({{"edge", ref.edge}, {"along", ref.along}});
    out["loops"].push_back({{"plaquette", p},
                            {"start_vertex", lat.loop(p).start_vertex},
                            {"slots", slots}});
  }
  out["sites"] = ordered_json::array();
  for (int v = 0; v < lat.num_vertices(); ++v) {
    const auto& site = lat.site_of(v);
    ordered_json edges = ordered_json::array();
    for (int e : site.edges) edges.push_back(e);
    out["sites"].push_back({{"vertex", site.vertex},
                            {"plaquette", site.plaquette},
                            {"edges", edges},
                            {"shared", ordered_json::array(
                                           {site.shared_edges[0],
                                            site.shared_edges[1]})}});
  }
  return out;
}

inline ordered_json spectrum_json(const SpectrumReport& report) {
  ordered_json out;
  out["dim"] = report.total_dim;
  out["multiplicities_complete"] = report.multiplicities_complete;
  out["ground_energy"] = report.ground_energy();
  out["ground_degeneracy"] = report.ground_degeneracy();
  out["levels"] = ordered_json::array();
  for (const auto& level : report.levels)
    out["levels"].push_back({{"value", level.value},
                             {"multiplicity", level.multiplicity},
                             {"tags", level.tags}});
  return out;
}

inline std::string spectrum_text(const SpectrumReport& report) {
  std::ostringstream os;
  os << "dim " << report.total_dim << ", ground energy "
     << report.ground_energy() << ", ground degeneracy "
     << report.ground_degeneracy()
     << (report.multiplicities_complete ? ""
                                        : " (multiplicities partial)")
     << "\n";
  for (const auto& level : report.levels) {
    os << "E=" << level.value << "\tmultiplicity " << level.multiplicity;
    if (!level.tags.empty()) {
      os << "\t[";
      for (size_t i = 0; i < level.tags.size(); ++i)
        os << (i ? " " : "") << level.tags[i];
      os << "]";
    }
    os << "\n";
  }
  return os.str();
}

inline ordered_json checks_json(const std::string& group_name,
                                double tolerance,
                                const std::vector<CheckResult>& checks) {
  ordered_json out;
  out["group"] = group_name;
  out["tolerance"] = tolerance;
  out["checks"] = ordered_json::array();
  bool all_pass = true;
  double max_residual = 0.0;
  for (const auto& c : checks) {
    out["checks"].push_back({{"name", c.name},
                             {"residual", c.residual},
                             {"tolerance", c.tolerance},
                             {"pass", c.pass}});
    all_pass = all_pass && c.pass;
    max_residual = std::max(max_residual, c.residual);
  }
  out["all_pass"] = all_pass;
  out["max_residual"] = max_residual;
  return out;
}

inline std::string checks_text(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  for (const auto& c : checks)
    os << (c.pass ? "PASS" : "FAIL") << "\t" << c.name << "\tresidual "
       << c.residual << " (tolerance " << c.tolerance << ")\n";
  return os.str();
}

inline ordered_json diagram_json(const SplittingDiagram& d) {
  ordered_json out;
  out["group"] = d.group_name;
  out["rows"] = ordered_json::array();
  for (const auto& r : d.rows)
    out["rows"].push_back({{"class", r.label}, {"width", r.width}});
  out["cols"] = ordered_json::array();
  for (const auto& c : d.cols)
    out["cols"].push_back({{"irrep", c.label}, {"width", c.width}});
  out["cells"] = ordered_json::array();
  for (const auto& s : d.cells) {
    ordered_json anyons = ordered_json::array();
    for (const auto& item : s.content)
      anyons.push_back({{"label", item.anyon_name},
                        {"flavor", item.flavor},
                        {"mult", item.multiplicity}});
    out["cells"].push_back({{"class", s.class_label},
                            {"irrep", s.irrep_label},
                            {"dim", s.cell_dim},
                            {"energy", s.energy},
                            {"display", s.display},
                            {"anyons", anyons}});
  }
  out["total_area"] = d.total_area;
  return out;
}

}  // namespace io
}  // namespace qd
