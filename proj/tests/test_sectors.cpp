// Tests for the energy-sector structure of the refined model: sector
// content via restriction, the dual induction route, flavor labels, the
// splitting diagram, and operator-level certification of the sector
// identities.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qd/sectors.hpp"

using namespace qd;

namespace {

CouplingConfig paper_style_couplings() {
  CouplingConfig c;
  c.alpha = {{"Gamma_1", 0.0}, {"Gamma_-1", 1.0}, {"Gamma_2", 2.0}};
  c.beta = {{"C_e", 0.0}, {"C_x", 3.0}, {"C_y", 5.0}};
  return c;
}

const EnergySector& sector_at(const std::vector<EnergySector>& sectors,
                              const std::string& irrep,
                              const std::string& cls) {
  for (const auto& s : sectors)
    if (s.irrep_label == irrep && s.class_label == cls) return s;
  throw std::runtime_error("no sector " + irrep + ":" + cls);
}

}  // namespace

TEST_CASE("order-six sector table", "[sectors]") {
  const auto qdd = quantum_double(s3_presented());
  const auto sectors = energy_sectors(qdd, paper_style_couplings());

  REQUIRE(sectors.size() == 9);

  // Frozen row-major layout: flux rows C_e, C_x, C_y; charge columns
  // Gamma_1, Gamma_-1, Gamma_2.
  const std::vector<std::string> classes = {"C_e", "C_e", "C_e", "C_x", "C_x",
                                            "C_x", "C_y", "C_y", "C_y"};
  const std::vector<std::string> irreps = {
      "Gamma_1", "Gamma_-1", "Gamma_2", "Gamma_1", "Gamma_-1",
      "Gamma_2", "Gamma_1", "Gamma_-1", "Gamma_2"};
  const std::vector<double> energies = {0, 1, 2, 3, 4, 5, 5, 6, 7};
  const std::vector<long> dims = {1, 1, 4, 3, 3, 12, 2, 2, 8};
  const std::vector<std::string> displays = {"A",   "B",   "C_1+C_2",
                                             "D_1", "E_1", "D_2+E_2",
                                             "F_1", "F_2", "G+H"};
  long total = 0;
  for (size_t i = 0; i < sectors.size(); ++i) {
    REQUIRE(sectors[i].class_label == classes[i]);
    REQUIRE(sectors[i].irrep_label == irreps[i]);
    REQUIRE(sectors[i].energy == energies[i]);
    REQUIRE(sectors[i].cell_dim == dims[i]);
    REQUIRE(sectors[i].display == displays[i]);
    total += sectors[i].cell_dim;
  }
  REQUIRE(total == 36);

  SECTION("sector charge content sums to the irrep dimension") {
    for (const auto& s : sectors) {
      long acc = 0;
      for (const auto& item : s.content)
        acc += static_cast<long>(item.multiplicity) * item.charge_dim;
      REQUIRE(acc == qdd.table.dims[s.irrep_index]);
    }
  }

  SECTION("two-dimensional flux sectors hold the split excitations") {
    const auto& dd = sector_at(sectors, "Gamma_2", "C_x");
    REQUIRE(dd.content.size() == 2);
    REQUIRE(dd.content[0].anyon_name == "D");
    REQUIRE(dd.content[0].flavor == "D_2");
    REQUIRE(dd.content[0].multiplicity == 1);
    REQUIRE(dd.content[1].anyon_name == "E");
    REQUIRE(dd.content[1].flavor == "E_2");

    const auto& gh = sector_at(sectors, "Gamma_2", "C_y");
    REQUIRE(gh.content.size() == 2);
    REQUIRE(gh.content[0].anyon_name == "G");
    REQUIRE(gh.content[0].flavor == "G");  // spans a single sector
    REQUIRE(gh.content[1].anyon_name == "H");
  }
}

TEST_CASE("flavor labels number an excitation's sectors", "[sectors]") {
  const auto qdd = quantum_double(s3_presented());
  const auto sectors = energy_sectors(qdd, zero_couplings(qdd.table));

  std::map<std::string, std::vector<std::string>> flavors;
  for (const auto& s : sectors)
    for (const auto& item : s.content)
      flavors[item.anyon_name].push_back(item.flavor);

  // Row-major traversal meets D's one-dimensional sector before its
  // two-dimensional one, and F's Gamma_1 sector before its Gamma_-1 one.
  REQUIRE(flavors["D"] == std::vector<std::string>{"D_1", "D_2"});
  REQUIRE(flavors["E"] == std::vector<std::string>{"E_1", "E_2"});
  REQUIRE(flavors["F"] == std::vector<std::string>{"F_1", "F_2"});
  // Single-sector excitations keep their bare names.
  for (const auto& name : {"A", "B", "C", "G", "H"})
    REQUIRE(flavors[name] == std::vector<std::string>{name});
}

TEST_CASE("induction and restriction give the same sector content",
          "[sectors]") {
  // The sector table decomposes restricted group irreps; this dual route
  // induces each excitation's centralizer charge up to the group.  The two
  // must agree for every excitation of every tested group.
  for (const auto& name : {"z2", "z3", "z4", "s3", "d4"}) {
    const auto qdd = quantum_double(builtin_group(name));
    const auto sectors = energy_sectors(qdd, zero_couplings(qdd.table));
    const auto induced = anyon_sector_multiplicities(qdd);

    for (size_t a = 0; a < qdd.anyons.size(); ++a) {
      std::vector<std::pair<int, int>> restricted;
      for (const auto& s : sectors)
        for (const auto& item : s.content)
          if (item.anyon_index == static_cast<int>(a))
            restricted.push_back({s.irrep_index, item.multiplicity});
      std::sort(restricted.begin(), restricted.end());
      auto dual = induced[a];
      std::sort(dual.begin(), dual.end());
      REQUIRE(restricted == dual);
    }
  }
}

TEST_CASE("diagram areas equal squared quantum dimensions", "[sectors]") {
  for (const auto& name : {"z2", "s3", "d4", "z6"}) {
    const auto qdd = quantum_double(builtin_group(name));
    const auto sectors = energy_sectors(qdd, zero_couplings(qdd.table));
    const auto areas = anyon_areas(qdd, sectors);
    long total = 0;
    for (size_t a = 0; a < areas.size(); ++a) {
      REQUIRE(areas[a] ==
              static_cast<long>(qdd.anyons[a].qdim) * qdd.anyons[a].qdim);
      total += areas[a];
    }
    const long n = qdd.group.order();
    REQUIRE(total == n * n);
  }

  SECTION("frozen order-six areas") {
    const auto qdd = quantum_double(s3_presented());
    const auto areas =
        anyon_areas(qdd, energy_sectors(qdd, zero_couplings(qdd.table)));
    REQUIRE(areas == std::vector<long>{1, 1, 4, 9, 9, 4, 4, 4});
  }
}

TEST_CASE("order-six splitting diagram", "[sectors][diagram]") {
  const auto qdd = quantum_double(s3_presented());
  const auto d = splitting_diagram(qdd, paper_style_couplings());

  REQUIRE(d.group_name == "s3");
  REQUIRE(d.rows.size() == 3);
  REQUIRE(d.rows[0].label == "C_e");
  REQUIRE(d.rows[0].width == 1);
  REQUIRE(d.rows[1].label == "C_x");
  REQUIRE(d.rows[1].width == 3);
  REQUIRE(d.rows[2].label == "C_y");
  REQUIRE(d.rows[2].width == 2);
  REQUIRE(d.cols.size() == 3);
  REQUIRE(d.cols[0].label == "Gamma_1");
  REQUIRE(d.cols[0].width == 1);
  REQUIRE(d.cols[1].label == "Gamma_-1");
  REQUIRE(d.cols[1].width == 1);
  REQUIRE(d.cols[2].label == "Gamma_2");
  REQUIRE(d.cols[2].width == 4);
  REQUIRE(d.cells.size() == 9);
  REQUIRE(d.total_area == 36);

  SECTION("text rendering is deterministic and complete") {
    const auto text = render_text(d);
    REQUIRE(text == render_text(d));
    for (const auto& needle :
         {"C_1+C_2", "D_2+E_2", "G+H", "Gamma_2 (4)", "C_x (3)", "E=7"})
      REQUIRE(text.find(needle) != std::string::npos);
  }

  SECTION("dot rendering links an excitation's sectors") {
    const auto dot = render_dot(d);
    REQUIRE(dot == render_dot(d));
    REQUIRE(dot.find("graph splitting {") != std::string::npos);
    // D spans cells 3 and 5 (row-major), F spans 6 and 7.
    REQUIRE(dot.find("s3 -- s5 [label=\"D\"]") != std::string::npos);
    REQUIRE(dot.find("s6 -- s7 [label=\"F\"]") != std::string::npos);
    REQUIRE(dot.find("subgraph cluster_row0") != std::string::npos);
  }
}

TEST_CASE("order-two sectors are in bijection with excitations",
          "[sectors]") {
  const auto qdd = quantum_double(cyclic_group(2));
  CouplingConfig c;
  c.alpha = {{"Gamma_1", 0.3}, {"Gamma_-1", 1.7}};
  c.beta = {{"C_0", -0.2}, {"C_1", 0.9}};
  const auto sectors = energy_sectors(qdd, c);

  REQUIRE(sectors.size() == 4);
  const std::vector<std::string> displays = {"1", "e", "m", "eps"};
  const std::vector<double> energies = {0.1, 1.5, 1.2, 2.6};
  for (size_t i = 0; i < sectors.size(); ++i) {
    REQUIRE(sectors[i].cell_dim == 1);
    REQUIRE(sectors[i].display == displays[i]);
    REQUIRE(std::abs(sectors[i].energy - energies[i]) < 1e-12);
    REQUIRE(sectors[i].content.size() == 1);
    REQUIRE(sectors[i].content[0].multiplicity == 1);
    REQUIRE(sectors[i].content[0].flavor == sectors[i].content[0].anyon_name);
  }
}

TEST_CASE("mass relations among sector energies", "[sectors]") {
  const auto qdd = quantum_double(s3_presented());
  const auto sectors = energy_sectors(qdd, paper_style_couplings());
  auto energy = [&](const std::string& irrep, const std::string& cls) {
    return sector_at(sectors, irrep, cls).energy;
  };

  const double j_a = energy("Gamma_1", "C_e");   // 0
  const double j_b = energy("Gamma_-1", "C_e");  // 1
  const double j_c = energy("Gamma_2", "C_e");   // 2

  // Splitting between an excitation's flavors equals the splitting between
  // the corresponding pure charges.
  REQUIRE(energy("Gamma_-1", "C_y") - energy("Gamma_1", "C_y") ==
          j_b - j_a);  // F_2 - F_1 = B - A
  REQUIRE(energy("Gamma_2", "C_x") - energy("Gamma_1", "C_x") ==
          j_c - j_a);  // D_2 - D_1 = C - A
  REQUIRE(energy("Gamma_2", "C_x") - energy("Gamma_-1", "C_x") ==
          j_c - j_b);  // E_2 - E_1 = C - B
  // With the trivial-charge coupling normalized to zero these collapse to
  // sums of excitation energies.
  REQUIRE(j_a == 0.0);
  REQUIRE(energy("Gamma_-1", "C_y") == energy("Gamma_1", "C_y") + j_b);
  // G and H always sit in the same sector.
  REQUIRE(energy("Gamma_2", "C_y") == 7.0);
}

TEST_CASE("operator-level sector identities", "[sectors][operators]") {
  const auto qdd = quantum_double(s3_presented());
  const auto lat = build_torus(2, 2);
  const int v = 0;
  const Region region = site_region(lat, v);
  const int p = lat.site_of(v).plaquette;
  const auto& g = qdd.group;
  const auto& table = qdd.table;

  SECTION("named certification suite passes") {
    const auto results = verify_sector_identities(qdd, lat, v);
    REQUIRE_FALSE(results.empty());
    std::set<std::string> names;
    for (const auto& r : results) {
      INFO(r.name << " residual " << r.residual);
      REQUIRE(r.pass);
      names.insert(r.name);
    }
    REQUIRE(names.count("excitation-completeness") == 1);
    REQUIRE(names.count("class-resolution C_x") == 1);
    REQUIRE(names.count("sector-closure Gamma_2:C_y") == 1);
    REQUIRE(names.count("sector-trace D@Gamma_2:C_x") == 1);
  }

  SECTION("direct identities between projector families") {
    auto proj = [&](const std::string& name) {
      for (const auto& a : qdd.anyons)
        if (a.name == name)
          return anyon_projector_6body(qdd, lat, region, v, a);
      throw std::runtime_error("unknown excitation");
    };
    auto charge = [&](const std::string& label) {
      return charge_projector(g, table, lat, region, v,
                              table.index_of(label));
    };
    auto flux = [&](int class_index) {
      return flux_projector(g, lat, region, p, class_index);
    };
    const int c_x = g.class_of(3);
    const int c_y = g.class_of(1);

    // The two flux-x excitations exhaust the flux-x subspace.
    REQUIRE(max_abs(proj("D") + proj("E") - flux(c_x)) < 1e-10);
    // The two charged flux-y dyons exhaust the charged flux-y subspace.
    REQUIRE(max_abs(proj("G") + proj("H") - charge("Gamma_2") * flux(c_y)) <
            1e-10);
    // The neutral flux-y excitation carries both one-dimensional charges.
    REQUIRE(max_abs((charge("Gamma_1") + charge("Gamma_-1")) * flux(c_y) -
                    proj("F")) < 1e-10);
  }
}

TEST_CASE("order-two sector identities are exact products", "[sectors]") {
  const auto qdd = quantum_double(cyclic_group(2));
  const auto results = verify_sector_identities(qdd);
  for (const auto& r : results) {
    INFO(r.name << " residual " << r.residual);
    REQUIRE(r.pass);
  }
}

TEST_CASE("zero couplings give a flat sector table", "[sectors]") {
  const auto qdd = quantum_double(builtin_group("z3"));
  const auto c = zero_couplings(qdd.table);
  REQUIRE(c.alpha.size() == 3);
  REQUIRE(c.beta.size() == 3);
  for (const auto& s : energy_sectors(qdd, c)) REQUIRE(s.energy == 0.0);
}
