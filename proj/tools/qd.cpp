// Command-line front end: group inspection, excitation tables, invariant
// verification, spectra, and splitting-diagram export.
//
// Exit codes: 0 success, 1 check/numeric failure, 2 usage or configuration
// error, 3 capacity limit.  QD_TOLERANCE overrides the default operator
// tolerance of 1e-10 (valid range (0, 1e-3]).  Structured output goes to
// stdout, diagnostics to stderr.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>

#include "qd/hamiltonians.hpp"
#include "qd/io.hpp"
#include "qd/sectors.hpp"
#include "qd/verify.hpp"

using namespace qd;

namespace {

struct GroupOpts {
  std::string builtin;
  std::string file;
  std::string format = "text";
};

void add_group_source(CLI::App* cmd, GroupOpts& o) {
  auto* b = cmd->add_option("--builtin", o.builtin,
                            "built-in group name (z<n>, d<n>, s<n>)");
  auto* f =
      cmd->add_option("--file", o.file, "group description JSON file");
  b->excludes(f);
  f->excludes(b);
}

FiniteGroup resolve_group(const GroupOpts& o) {
  if (o.builtin.empty() == o.file.empty())
    throw ConfigError("exactly one of --builtin or --file is required");
  if (!o.builtin.empty()) {
    try {
      return builtin_group(o.builtin);
    } catch (const ArgumentError& e) {
      throw ConfigError(e.what());
    }
  }
  return io::load_group_file(o.file);
}

double tolerance_from_env() {
  const char* s = std::getenv("QD_TOLERANCE");
  if (!s || !*s) return 1e-10;
  char* end = nullptr;
  const double t = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(t > 0.0) || t > 1e-3)
    throw ConfigError("QD_TOLERANCE must be a number in (0, 1e-3]");
  return t;
}

std::pair<int, int> parse_torus(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos || x == 0 || x + 1 == s.size())
    throw ConfigError("torus size must look like ROWSxCOLS, e.g. 2x2");
  try {
    const int rows = std::stoi(s.substr(0, x));
    const int cols = std::stoi(s.substr(x + 1));
    return {rows, cols};
  } catch (const std::exception&) {
    throw ConfigError("torus size must look like ROWSxCOLS, e.g. 2x2");
  }
}

void emit_json(const io::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum double models for finite groups"};
  app.require_subcommand(1);
  const std::string formats_com = "output format";

  GroupOpts group_opts;
  auto* cmd_group = app.add_subcommand(
      "group", "inspect a group: order, classes, character table");
  add_group_source(cmd_group, group_opts);
  cmd_group->add_option("--format", group_opts.format, formats_com)
      ->check(CLI::IsMember({"json", "text"}));

  GroupOpts anyon_opts;
  auto* cmd_anyons =
      app.add_subcommand("anyons", "list the excitations of the double");
  add_group_source(cmd_anyons, anyon_opts);
  cmd_anyons->add_option("--format", anyon_opts.format, formats_com)
      ->check(CLI::IsMember({"json", "text"}));

  GroupOpts verify_opts;
  std::string check_filter;
  auto* cmd_verify =
      app.add_subcommand("verify", "run the named invariant suite");
  add_group_source(cmd_verify, verify_opts);
  cmd_verify->add_option("--check", check_filter,
                         "only run checks whose name starts with this");
  cmd_verify->add_option("--format", verify_opts.format, formats_com)
      ->check(CLI::IsMember({"json", "text"}));

  GroupOpts spectrum_opts;
  std::string torus_spec, couplings_path;
  bool site_mode = false, kitaev_model = false;
  int lowk = 0;
  auto* cmd_spectrum =
      app.add_subcommand("spectrum", "diagonalize a model Hamiltonian");
  add_group_source(cmd_spectrum, spectrum_opts);
  cmd_spectrum->add_option("--torus", torus_spec,
                           "torus size ROWSxCOLS for a full lattice model");
  cmd_spectrum->add_flag("--site", site_mode,
                         "exact single-site spectrum of the refined model");
  cmd_spectrum->add_flag("--kitaev", kitaev_model,
                         "the vacuum (charge- and flux-free) model");
  cmd_spectrum->add_option("--couplings", couplings_path,
                           "couplings JSON file for the refined model");
  cmd_spectrum->add_option(
      "--lowk", lowk, "compute only the k lowest eigenvalues iteratively");
  cmd_spectrum->add_option("--format", spectrum_opts.format, formats_com)
      ->check(CLI::IsMember({"json", "text"}));

  GroupOpts diagram_opts;
  std::string diagram_couplings;
  auto* cmd_diagram = app.add_subcommand(
      "diagram", "export the energy-sector splitting diagram");
  add_group_source(cmd_diagram, diagram_opts);
  cmd_diagram->add_option("--couplings", diagram_couplings,
                          "couplings JSON file (default: all zero)");
  cmd_diagram->add_option("--format", diagram_opts.format, formats_com)
      ->check(CLI::IsMember({"json", "text", "dot"}));

  std::string lattice_spec = "2x2";
  auto* cmd_lattice =
      app.add_subcommand("lattice", "debug dump of a torus lattice");
  cmd_lattice->add_option("--torus", lattice_spec, "torus size ROWSxCOLS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const double tol = tolerance_from_env();

    if (*cmd_group) {
      const auto g = resolve_group(group_opts);
      const auto table = character_table(g);
      if (group_opts.format == "json")
        emit_json(io::group_report_json(g, table));
      else
        std::cout << io::group_report_text(g, table);
      return 0;
    }

    if (*cmd_anyons) {
      const auto qdd = quantum_double(resolve_group(anyon_opts));
      if (anyon_opts.format == "json")
        emit_json(io::anyon_table_json(qdd));
      else
        std::cout << io::anyon_table_text(qdd);
      return 0;
    }

    if (*cmd_verify) {
      const auto g = resolve_group(verify_opts);
      const auto checks = run_verification(g, tol, check_filter);
      if (checks.empty())
        throw ConfigError("no check matches '" + check_filter + "'");
      bool all_pass = true;
      for (const auto& c : checks) all_pass = all_pass && c.pass;
      if (verify_opts.format == "json")
        emit_json(io::checks_json(g.name(), tol, checks));
      else
        std::cout << io::checks_text(checks);
      if (!all_pass) {
        std::cerr << "verification failed\n";
        return 1;
      }
      return 0;
    }

    if (*cmd_spectrum) {
      const auto g = resolve_group(spectrum_opts);
      if (site_mode == !torus_spec.empty())
        throw ConfigError("choose exactly one of --site or --torus");

      SpectrumReport report;
      std::string model, mode;
      io::ordered_json context;
      context["group"] = g.name();
      if (site_mode) {
        if (kitaev_model)
          throw ConfigError("--kitaev applies to --torus spectra");
        if (couplings_path.empty())
          throw ConfigError("--site requires --couplings");
        const auto qdd = quantum_double(g);
        const auto c = io::load_couplings_file(couplings_path, qdd.table);
        report = site_spectrum(qdd, build_torus(2, 2), 0, c);
        model = "refined";
        mode = "site";
      } else {
        const auto [rows, cols] = parse_torus(torus_spec);
        const auto lat = build_torus(rows, cols);
        const auto table = character_table(g);
        SparseOperator h = [&] {
          if (kitaev_model && !couplings_path.empty())
            throw ConfigError("choose one of --kitaev or --couplings");
          if (kitaev_model) {
            model = "kitaev";
            return build_kitaev(g, table, lat);
          }
          if (couplings_path.empty())
            throw ConfigError(
                "--torus spectra need --kitaev or --couplings");
          model = "refined";
          return build_refined(
              g, table, lat, io::load_couplings_file(couplings_path, table));
        }();
        context["rows"] = rows;
        context["cols"] = cols;
        if (lowk > 0) {
          report = spectrum(h, SpectrumMode::lowk, lowk);
          mode = "lowk";
        } else if (h.dim() <= 4096) {
          report = spectrum(h, SpectrumMode::full);
          mode = "full";
        } else {
          std::cerr << "dimension " << h.dim()
                    << " exceeds the dense limit; using the iterative "
                       "low-end solver (k=8)\n";
          report = spectrum(h, SpectrumMode::lowk, 8);
          mode = "lowk";
        }
      }

      if (spectrum_opts.format == "json") {
        io::ordered_json out;
        out["model"] = model;
        out["mode"] = mode;
        out.update(context);
        out.update(io::spectrum_json(report));
        emit_json(out);
      } else {
        std::cout << model << " model (" << mode << ") for " << g.name()
                  << "\n"
                  << io::spectrum_text(report);
      }
      return 0;
    }

    if (*cmd_diagram) {
      const auto qdd = quantum_double(resolve_group(diagram_opts));
      const auto c = diagram_couplings.empty()
                         ? zero_couplings(qdd.table)
                         : io::load_couplings_file(diagram_couplings,
                                                   qdd.table);
      const auto d = splitting_diagram(qdd, c);
      if (diagram_opts.format == "json")
        emit_json(io::diagram_json(d));
      else if (diagram_opts.format == "dot")
        std::cout << render_dot(d);
      else
        std::cout << render_text(d);
      return 0;
    }

    if (*cmd_lattice) {
      const auto [rows, cols] = parse_torus(lattice_spec);
      emit_json(io::lattice_json(build_torus(rows, cols)));
      return 0;
    }

    throw ConfigError("no subcommand selected");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
