#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
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

/// H = - sum_v A_(trivial irrep) - sum_p B_e on the full lattice space, with
/// projector-normalized terms.  Ground energy is -2 * (#sites).
inline SparseOperator build_kitaev(const FiniteGroup& g,
                                   const CharacterTable& table,
                                   const TorusLattice& lat) {
  const Region region = full_region(lat);
  HilbertSpace space(g.order(), region.size());
  auto acc = zero_op(space);
  const int triv = table.trivial_index();
  const int identity_class = g.class_of(0);
  for (int v = 0; v < lat.num_vertices(); ++v)
    acc = acc - charge_projector(g, table, lat, region, v, triv);
  for (int p = 0; p < lat.num_plaquettes(); ++p)
    acc = acc - flux_projector(g, lat, region, p, identity_class);
  return acc;
}

/// The order-two model in spin-1/2 form: H = - sum_v XXXX - sum_p ZZZZ.
/// Affinely related to build_kitaev by H = 2 H_kitaev + 2 (#sites) I.
inline SparseOperator build_toric_code(const TorusLattice& lat) {
  const FiniteGroup z2 = cyclic_group(2);
  const Region region = full_region(lat);
  HilbertSpace space(2, region.size());
  auto acc = zero_op(space);
  for (int v = 0; v < lat.num_vertices(); ++v)
    acc = acc - vertex_operator(z2, lat, region, v, 1);  // X on 4 star edges
  const auto eye = identity_op(space);
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    const auto ze =
        2.0 * plaquette_operator(z2, lat, region, p, 0) - eye;  // Z loop
    acc = acc - ze;
  }
  return acc;
}

/// Refined commuting-projector Hamiltonian on one site's 6-edge space:
/// sum_G alpha_G A_G + sum_C beta_C B_C at the site of vertex v.
inline SparseOperator build_refined_site(const FiniteGroup& g,
                                         const CharacterTable& table,
                                         const TorusLattice& lat, int v,
                                         const CouplingConfig& c) {
  validate_couplings(c, table);
  const Region region = site_region(lat, v);
  const int p = lat.site_of(v).plaquette;
  HilbertSpace space(g.order(), region.size());
  auto acc = zero_op(space);
  for (int i = 0; i < table.num_irreps(); ++i) {
    const double a = c.alpha.at(table.labels[i]);
    if (a != 0.0)
      acc = acc + a * charge_projector(g, table, lat, region, v, i);
  }
  for (int ci = 0; ci < table.num_classes(); ++ci) {
    const double b = c.beta.at(table.class_labels[ci]);
    if (b != 0.0) acc = acc + b * flux_projector(g, lat, region, p, ci);
  }
  return acc;
}

/// Refined commuting-projector Hamiltonian on the full lattice:
/// sum_v sum_G alpha_G A_G^v + sum_p sum_C beta_C B_C^p.
inline SparseOperator build_refined(const FiniteGroup& g,
                                    const CharacterTable& table,
                                    const TorusLattice& lat,
                                    const CouplingConfig& c) {
  validate_couplings(c, table);
  const Region region = full_region(lat);
  HilbertSpace space(g.order(), region.size());
  auto acc = zero_op(space);
  for (int v = 0; v < lat.num_vertices(); ++v)
    for (int i = 0; i < table.num_irreps(); ++i) {
      const double a = c.alpha.at(table.labels[i]);
      if (a != 0.0)
        acc = acc + a * charge_projector(g, table, lat, region, v, i);
    }
  for (int p = 0; p < lat.num_plaquettes(); ++p)
    for (int ci = 0; ci < table.num_classes(); ++ci) {
      const double b = c.beta.at(table.class_labels[ci]);
      if (b != 0.0) acc = acc + b * flux_projector(g, lat, region, p, ci);
    }
  return acc;
}

/// Per-excitation masses for the 6-body Hamiltonian, keyed by anyon name.
using MassConfig = std::map<std::string, double>;

inline void validate_masses(const MassConfig& m, const QuantumDouble& qdd) {
  for (const auto& a : qdd.anyons)
    if (!m.count(a.name))
      throw ConfigError("missing mass for excitation '" + a.name + "'");
  if (m.size() != qdd.anyons.size())
    for (const auto& [name, _] : m) {
      bool known = false;
      for (const auto& a : qdd.anyons) known = known || (a.name == name);
      if (!known)
        throw ConfigError("unknown excitation name '" + name +
                          "' in mass configuration");
    }
}

/// Six-body mass Hamiltonian on one site: sum_a m_a P_a at the site of v.
inline SparseOperator build_massive6_site(const QuantumDouble& qdd,
                                          const TorusLattice& lat, int v,
                                          const MassConfig& masses) {
  validate_masses(masses, qdd);
  const Region region = site_region(lat, v);
  HilbertSpace space(qdd.group.order(), region.size());
  auto acc = zero_op(space);
  for (const auto& a : qdd.anyons) {
    const double m = masses.at(a.name);
    if (m != 0.0)
      acc = acc + m * anyon_projector_6body(qdd, lat, region, v, a);
  }
  return acc;
}

/// Six-body mass Hamiltonian summed over all sites of the lattice.
inline SparseOperator build_massive6(const QuantumDouble& qdd,
                                     const TorusLattice& lat,
                                     const MassConfig& masses) {
  validate_masses(masses, qdd);
  const Region region = full_region(lat);
  HilbertSpace space(qdd.group.order(), region.size());
  auto acc = zero_op(space);
  for (int v = 0; v < lat.num_vertices(); ++v)
    for (const auto& a : qdd.anyons) {
      const double m = masses.at(a.name);
      if (m != 0.0)
        acc = acc + m * anyon_projector_6body(qdd, lat, region, v, a);
    }
  return acc;
}

/// One energy level: eigenvalue, multiplicity, and any sector tags.
struct EnergyLevel {
  double value = 0.0;
  long multiplicity = 0;
  std::vector<std::string> tags;
};

struct SpectrumReport {
  std::vector<EnergyLevel> levels;  ///< ascending by value
  long total_dim = 0;
  /// True when multiplicities are exact and sum to total_dim (full and site
  /// modes); false for iterative low-end spectra.
  bool multiplicities_complete = true;

  double ground_energy() const { return levels.front().value; }
  long ground_degeneracy() const { return levels.front().multiplicity; }
};

enum class SpectrumMode { full, lowk };

/// A labeled projector used to tag energy levels.
struct TaggedProjector {
  std::string label;
  SparseOperator op;
};

inline constexpr double kClusterTolerance = 1e-8;

namespace detail {

inline std::vector<EnergyLevel> cluster_values(
    const std::vector<double>& sorted_vals,
    const std::vector<long>* mults = nullptr) {
  std::vector<EnergyLevel> levels;
  for (size_t i = 0; i < sorted_vals.size(); ++i) {
    const long m = mults ? (*mults)[i] : 1;
    if (!levels.empty() &&
        sorted_vals[i] - levels.back().value <= kClusterTolerance)
      levels.back().multiplicity += m;
    else
      levels.push_back({sorted_vals[i], m, {}});
  }
  return levels;
}

/// Low-end eigenvalues of a Hermitian sparse matrix via the symmetric
/// tridiagonalization iteration with full reorthogonalization.  Returns the
/// k lowest converged Ritz values; throws NumericError when the iteration
/// budget is exhausted before convergence.
inline std::vector<double> lowest_eigenvalues(
    const Eigen::SparseMatrix<cplx>& h, int k, double tol = 1e-9) {
  const long dim = h.rows();
  const int kk = static_cast<int>(std::min<long>(k, dim));
  int budget = static_cast<int>(std::min<long>(dim, 240));
  // Keep the stored basis under ~2 GB.
  const long bytes_per_vec = dim * static_cast<long>(sizeof(cplx));
  if (bytes_per_vec > 0 && budget > (2L << 30) / bytes_per_vec)
    budget = static_cast<int>((2L << 30) / bytes_per_vec);
  if (budget < std::min<long>(dim, 2L * kk + 2))
    throw CapacityError(
        "iteration space for the low-end eigensolver does not fit in memory");

  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (long i = 0; i < dim; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  v /= v.norm();

  std::vector<Eigen::VectorXcd> basis{v};
  std::vector<double> alpha, beta;
  auto ritz_if_converged = [&](bool force) -> std::vector<double> {
    const int j = static_cast<int>(alpha.size());
    if (j == 0 || (!force && j < kk)) return {};
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(j, j);
    for (int i = 0; i < j; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < j) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const double beta_last = beta.empty() ? 0.0 : beta.back();
    // When the iteration exhausts an invariant subspace before k steps, the
    // subspace holds every eigenvalue the start vector touches; a random
    // start touches all of them, so the Ritz values are the complete set of
    // distinct eigenvalues and are returned as-is.
    const int take = std::min(kk, j);
    std::vector<double> out;
    for (int i = 0; i < take; ++i) {
      const double theta = es.eigenvalues()(i);
      const double resid =
          std::abs(beta_last * es.eigenvectors()(j - 1, i));
      if (!force && resid > tol * std::max(1.0, std::abs(theta))) return {};
      out.push_back(theta);
    }
    return out;
  };

  for (int j = 0; j < budget; ++j) {
    Eigen::VectorXcd w = h * basis.back();
    if (j > 0) w -= beta.back() * basis[j - 1];
    const double a = basis.back().dot(w).real();
    alpha.push_back(a);
    w -= a * basis.back();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    const double nb = w.norm();
    if (nb < 1e-13 || j + 1 == dim) {
      // Exhausted an invariant subspace: the Ritz values are exact.
      auto out = ritz_if_converged(true);
      if (!out.empty()) return out;
      throw NumericError(
          "invariant subspace smaller than the requested eigenvalue count",
          j + 1);
    }
    beta.push_back(nb);
    basis.push_back(w / nb);
    if ((j + 1) % 10 == 0 && j + 1 >= 2 * kk + 2) {
      auto out = ritz_if_converged(false);
      if (!out.empty()) return out;
    }
  }
  auto out = ritz_if_converged(false);
  if (!out.empty()) return out;
  throw NumericError("low-end eigensolver did not converge", budget);
}

}  // namespace detail

/// Diagonalizes a Hermitian operator.  `full` mode (dim <= 4096) returns the
/// complete spectrum with exact multiplicities and optional sector tags;
/// `lowk` returns the k lowest eigenvalues of spaces up to 2^26 with
/// partial multiplicities.
inline SpectrumReport spectrum(
    const SparseOperator& h, SpectrumMode mode = SpectrumMode::full,
    int k = 16, const std::vector<TaggedProjector>* tags = nullptr) {
  if (hermiticity_residue(h) > 1e-9)
    throw ArgumentError("spectrum requires a Hermitian operator");

  SpectrumReport report;
  report.total_dim = h.dim();

  if (mode == SpectrumMode::full) {
    if (h.dim() > 4096)
      throw CapacityError("full spectrum mode is limited to dimension 4096");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense(h));
    if (es.info() != Eigen::Success)
      throw NumericError("dense eigensolver failed", -1);
    std::vector<double> vals(es.eigenvalues().data(),
                             es.eigenvalues().data() + h.dim());
    report.levels = detail::cluster_values(vals);
    if (tags) {
      long offset = 0;
      for (auto& level : report.levels) {
        for (const auto& tag : *tags) {
          double overlap = 0.0;
          for (long i = 0; i < level.multiplicity; ++i) {
            const Eigen::VectorXcd vec = es.eigenvectors().col(offset + i);
            overlap += (vec.dot(tag.op.mat * vec)).real();
          }
          overlap /= static_cast<double>(level.multiplicity);
          if (overlap >= 1.0 - 1e-8) level.tags.push_back(tag.label);
        }
        offset += level.multiplicity;
      }
    }
    return report;
  }

  if (h.dim() > (1L << 26))
    throw CapacityError("low-end spectrum mode is limited to dimension 2^26");
  if (k < 1 || k > 64)
    throw ArgumentError("low-end spectrum supports 1 <= k <= 64");
  const auto vals = detail::lowest_eigenvalues(h.mat, k);
  report.levels = detail::cluster_values(vals);
  report.multiplicities_complete = false;
  return report;
}

/// Exact single-site spectrum of the refined Hamiltonian, computed from its
/// commuting-projector decomposition rather than by diagonalization.  Each
/// energy is alpha_G + beta_C; each multiplicity is the trace of A_G B_C.
/// The decomposition is certified against the assembled operator before the
/// report is returned.
inline SpectrumReport site_spectrum(const QuantumDouble& qdd,
                                    const TorusLattice& lat, int v,
                                    const CouplingConfig& c,
                                    double certify_tol = 1e-10) {
  const FiniteGroup& g = qdd.group;
  const CharacterTable& table = qdd.table;
  validate_couplings(c, table);
  const Region region = site_region(lat, v);
  const int p = lat.site_of(v).plaquette;
  HilbertSpace space(g.order(), region.size());

  struct Cell {
    double energy;
    long dim;
    std::string tag;
  };
  std::vector<Cell> cells;
  auto residual = build_refined_site(g, table, lat, v, c);
  for (int i = 0; i < table.num_irreps(); ++i) {
    const auto a_op = charge_projector(g, table, lat, region, v, i);
    for (int ci = 0; ci < table.num_classes(); ++ci) {
      const auto pi = a_op * flux_projector(g, lat, region, p, ci);
      const double j =
          c.alpha.at(table.labels[i]) + c.beta.at(table.class_labels[ci]);
      const cplx tr = trace(pi);
      if (std::abs(tr.imag()) > certify_tol)
        throw InvariantViolation("sector projector trace is not real");
      const long d = std::lround(tr.real());
      if (std::abs(tr.real() - d) > 1e-6)
        throw InvariantViolation("sector projector trace is not integral");
      cells.push_back(
          {j, d, table.labels[i] + ":" + table.class_labels[ci]});
      residual = residual - j * pi;
    }
  }
  if (max_abs(residual) > certify_tol)
    throw InvariantViolation(
        "refined site Hamiltonian does not match its projector decomposition");

  std::stable_sort(
      cells.begin(), cells.end(),
      [](const Cell& a, const Cell& b) { return a.energy < b.energy; });
  SpectrumReport report;
  report.total_dim = space.dim();
  for (const auto& cell : cells) {
    if (!report.levels.empty() &&
        cell.energy - report.levels.back().value <= kClusterTolerance) {
      report.levels.back().multiplicity += cell.dim;
      report.levels.back().tags.push_back(cell.tag);
    } else {
      report.levels.push_back({cell.energy, cell.dim, {cell.tag}});
    }
  }
  return report;
}

/// Orthogonal projector onto the lowest eigenspace (dense route, dim <=
/// 4096), with eigenvalues clustered at the standard tolerance.
inline SparseOperator ground_projector(const SparseOperator& h) {
  if (h.dim() > 4096)
    throw CapacityError("ground projector is limited to dimension 4096");
  if (hermiticity_residue(h) > 1e-9)
    throw ArgumentError("ground projector requires a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense(h));
  if (es.info() != Eigen::Success)
    throw NumericError("dense eigensolver failed", -1);
  const double ground = es.eigenvalues()(0);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(h.dim(), h.dim());
  for (long i = 0; i < h.dim(); ++i) {
    if (es.eigenvalues()(i) - ground > kClusterTolerance) break;
    acc += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  SparseOperator out(h.space);
  out.mat = acc.sparseView(1.0, kSparseDropTolerance);
  return out;
}

}  // namespace qd
