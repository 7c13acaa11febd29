#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "qd/common.hpp"
#include "qd/errors.hpp"
#include "qd/group.hpp"

namespace qd {

/// A class function: one complex value per conjugacy class of the group it
/// belongs to, in that group's canonical class order.
using ClassFunction = std::vector<cplx>;

/// Display label for a conjugacy class: "C_" + label of its representative.
inline std::string class_label(const FiniteGroup& g, int class_index) {
  const auto& classes = g.conjugacy_classes();
  if (class_index < 0 || class_index >= static_cast<int>(classes.size()))
    throw ArgumentError("class index out of range");
  return "C_" + g.label(classes[class_index].representative);
}

/// Character table of a finite group.  Rows are irreducible characters in
/// canonical order (ascending dimension, then descending lexicographic by
/// class value); columns are conjugacy classes in the group's class order.
struct CharacterTable {
  int group_order = 0;
  std::vector<int> class_sizes;
  std::vector<std::string> class_labels;
  std::vector<std::string> labels;  ///< one label per irrep row
  std::vector<int> dims;            ///< irrep dimensions
  std::vector<ClassFunction> chi;   ///< chi[irrep][class]

  int num_irreps() const { return static_cast<int>(chi.size()); }
  int num_classes() const { return static_cast<int>(class_sizes.size()); }

  int index_of(const std::string& label) const {
    for (int i = 0; i < num_irreps(); ++i)
      if (labels[i] == label) return i;
    throw ArgumentError("no irreducible representation labeled '" + label +
                        "'");
  }

  /// Row index of the trivial character (all values 1).
  int trivial_index() const {
    for (int i = 0; i < num_irreps(); ++i) {
      bool all_one = true;
      for (const cplx& v : chi[i])
        if (std::abs(v - 1.0) > 1e-6) all_one = false;
      if (all_one) return i;
    }
    throw InvariantViolation("character table has no trivial row");
  }
};

/// Hermitian inner product of two class functions on g:
/// (1/|G|) sum_g a(g) conj(b(g)).
inline cplx inner_product(const FiniteGroup& g, const ClassFunction& a,
                          const ClassFunction& b) {
  const auto& classes = g.conjugacy_classes();
  if (a.size() != classes.size() || b.size() != classes.size())
    throw ArgumentError("class function size does not match class count");
  cplx acc = 0.0;
  for (size_t l = 0; l < classes.size(); ++l)
    acc += static_cast<double>(classes[l].members.size()) * a[l] *
           std::conj(b[l]);
  return acc / static_cast<double>(g.order());
}

/// Character of the regular representation: |G| on the identity class, 0
/// elsewhere.
inline ClassFunction regular_character(const FiniteGroup& g) {
  ClassFunction f(g.num_classes(), 0.0);
  f[g.class_of(0)] = static_cast<double>(g.order());
  return f;
}

namespace detail {

/// Smallest element whose powers exhaust the group, or -1 if none exists.
inline int find_cyclic_generator(const FiniteGroup& g) {
  const int n = g.order();
  for (int a = (n == 1 ? 0 : 1); a < n; ++a) {
    int pow = a, steps = 1;
    while (pow != 0) {
      pow = g.multiply(pow, a);
      ++steps;
    }
    if (steps == n) return a;
  }
  return n == 1 ? 0 : -1;
}

/// Exponent of each element with respect to a fixed generator.
inline std::vector<int> cyclic_exponents(const FiniteGroup& g, int gen) {
  std::vector<int> expo(g.order(), -1);
  int pow = 0;
  for (int t = 0; t < g.order(); ++t) {
    expo[pow] = t;
    pow = g.multiply(pow, gen);
  }
  return expo;
}

inline double snap_coordinate(double x) {
  return std::round(x * 1e7) / 1e7;
}

/// Canonical row comparator: ascending dimension, then descending
/// lexicographic over class values (real part before imaginary part),
/// with coordinates snapped to suppress numerical noise.
inline bool canonical_row_less(int da, const ClassFunction& a, int db,
                               const ClassFunction& b) {
  if (da != db) return da < db;
  for (size_t l = 0; l < a.size(); ++l) {
    double ra = snap_coordinate(a[l].real()), rb = snap_coordinate(b[l].real());
    if (ra != rb) return ra > rb;
    double ia = snap_coordinate(a[l].imag()), ib = snap_coordinate(b[l].imag());
    if (ia != ib) return ia > ib;
  }
  return false;
}

/// One attempt at the class-algebra eigenvector method.  Builds a random
/// real combination of the class multiplication matrices, reads simultaneous
/// eigenvectors off a dense eigensolve, and converts them to characters.
/// Returns false if the results fail validation (e.g. the random combination
/// had degenerate eigenvalues).
inline bool class_algebra_attempt(const FiniteGroup& g, unsigned seed,
                                  std::vector<int>* dims_out,
                                  std::vector<ClassFunction>* chi_out) {
  const int n = g.order();
  const auto& classes = g.conjugacy_classes();
  const int k = static_cast<int>(classes.size());

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  std::vector<double> coeff(k);
  for (double& c : coeff) c = unif(rng);

  // M[j][l] = sum_i coeff[i] * a_{ijl}, where a_{ijl} is the structure
  // constant of the class algebra: the number of ways a fixed element of
  // class l factors as (element of class i) * (element of class j).
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (int x = 0; x < n; ++x) {
    const double cx = coeff[g.class_of(x)];
    for (int y = 0; y < n; ++y)
      m(g.class_of(y), g.class_of(g.multiply(x, y))) += cx;
  }
  for (int l = 0; l < k; ++l)
    m.col(l) /= static_cast<double>(classes[l].members.size());

  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) return false;
  Eigen::MatrixXcd vecs = solver.eigenvectors();

  const int identity_class = g.class_of(0);
  std::vector<int> dims(k);
  std::vector<ClassFunction> chi(k, ClassFunction(k));
  for (int r = 0; r < k; ++r) {
    Eigen::VectorXcd v = vecs.col(r);
    if (std::abs(v(identity_class)) < 1e-12) return false;
    v /= v(identity_class);  // v(l) = |C_l| chi(l) / d
    double inv_sq = 0.0;
    for (int l = 0; l < k; ++l)
      inv_sq += std::norm(v(l)) /
                static_cast<double>(classes[l].members.size());
    const double d = std::sqrt(static_cast<double>(n) / inv_sq);
    const double d_rounded = std::round(d);
    if (d_rounded < 1.0 || std::abs(d - d_rounded) > 1e-6) return false;
    dims[r] = static_cast<int>(d_rounded);
    for (int l = 0; l < k; ++l)
      chi[r][l] = d_rounded * v(l) /
                  static_cast<double>(classes[l].members.size());
  }

  // First orthogonality relation; equal rows fail it, so this also
  // guarantees the k characters are pairwise distinct.
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      cplx ip = 0.0;
      for (int l = 0; l < k; ++l)
        ip += static_cast<double>(classes[l].members.size()) * chi[i][l] *
              std::conj(chi[j][l]);
      ip /= static_cast<double>(n);
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - target) > kRepTolerance) return false;
    }
  }

  long sum_sq = 0;
  for (int d : dims) sum_sq += static_cast<long>(d) * d;
  if (sum_sq != n) return false;

  *dims_out = std::move(dims);
  *chi_out = std::move(chi);
  return true;
}

/// Assigns display labels to canonically ordered irrep rows.
inline std::vector<std::string> irrep_labels(const FiniteGroup& g,
                                             const std::vector<int>& dims,
                                             const std::vector<ClassFunction>& chi,
                                             int cyclic_generator) {
  const int k = static_cast<int>(dims.size());
  const int n = g.order();
  std::vector<std::string> labels(k);

  auto is_trivial = [&](int r) {
    for (const cplx& v : chi[r])
      if (std::abs(v - 1.0) > 1e-6) return false;
    return true;
  };

  if (cyclic_generator >= 0 && n > 1) {
    // Label by the exponent of the value taken on the generator.
    const int gen_class = g.class_of(cyclic_generator);
    const double step = 2.0 * M_PI / n;
    for (int r = 0; r < k; ++r) {
      double ang = std::arg(chi[r][gen_class]);
      int e = static_cast<int>(std::lround(ang / step));
      e = ((e % n) + n) % n;
      if (e == 0)
        labels[r] = "Gamma_1";
      else if (n == 2)
        labels[r] = "Gamma_-1";
      else if (n == 3)
        labels[r] = (e == 1) ? "Gamma_w" : "Gamma_wb";
      else
        labels[r] = "Gamma_w" + std::to_string(e);
    }
    return labels;
  }

  if (g.name() == "s3" && n == 6 && k == 3) {
    labels = {"Gamma_1", "Gamma_-1", "Gamma_2"};
    return labels;
  }

  // Generic scheme: the trivial row is Gamma_1; a unique nontrivial
  // one-dimensional row with values in {+1,-1} is Gamma_-1; everything else
  // is R<row index>.
  int sign_row = -1, sign_count = 0;
  for (int r = 0; r < k; ++r) {
    if (dims[r] != 1 || is_trivial(r)) continue;
    bool pm_one = true;
    for (const cplx& v : chi[r])
      if (std::abs(v.imag()) > 1e-6 || std::abs(std::abs(v.real()) - 1.0) > 1e-6)
        pm_one = false;
    if (pm_one) {
      sign_row = r;
      ++sign_count;
    }
  }
  for (int r = 0; r < k; ++r) {
    if (is_trivial(r))
      labels[r] = "Gamma_1";
    else if (sign_count == 1 && r == sign_row)
      labels[r] = "Gamma_-1";
    else
      labels[r] = "R" + std::to_string(r);
  }
  return labels;
}

}  // namespace detail

/// Computes the character table of g.  Cyclic groups use the exact closed
/// form; other groups use the class-algebra eigenvector method with seeded
/// retries.  Throws NumericDegeneracyError if no attempt validates and
/// CapacityError if the group order exceeds max_order.
inline CharacterTable character_table(const FiniteGroup& g,
                                      int max_order = 5040) {
  const int n = g.order();
  if (n > max_order)
    throw CapacityError("group order " + std::to_string(n) +
                        " exceeds character-table limit " +
                        std::to_string(max_order));
  const auto& classes = g.conjugacy_classes();
  const int k = static_cast<int>(classes.size());

  std::vector<int> dims;
  std::vector<ClassFunction> chi;
  const int gen = detail::find_cyclic_generator(g);

  if (gen >= 0) {
    // chi_e(g^t) = exp(2 pi i e t / n), exact.
    const auto expo = detail::cyclic_exponents(g, gen);
    dims.assign(n, 1);
    chi.assign(n, ClassFunction(n));
    for (int e = 0; e < n; ++e)
      for (int l = 0; l < k; ++l) {
        const int t = expo[classes[l].representative];
        chi[e][l] = std::polar(1.0, 2.0 * M_PI * e * t / n);
      }
  } else {
    bool ok = false;
    for (unsigned attempt = 0; attempt < 10 && !ok; ++attempt)
      ok = detail::class_algebra_attempt(g, 1000u + attempt, &dims, &chi);
    if (!ok)
      throw NumericDegeneracyError(
          "character table eigensolve failed to validate after 10 random "
          "combinations for group '" +
          g.name() + "'; the spectra may be too degenerate at tolerance 1e-9");
  }

  std::vector<int> order(dims.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return detail::canonical_row_less(dims[a], chi[a], dims[b], chi[b]);
  });

  CharacterTable table;
  table.group_order = n;
  table.class_sizes.resize(k);
  table.class_labels.resize(k);
  for (int l = 0; l < k; ++l) {
    table.class_sizes[l] = static_cast<int>(classes[l].members.size());
    table.class_labels[l] = class_label(g, l);
  }
  for (int idx : order) {
    table.dims.push_back(dims[idx]);
    table.chi.push_back(chi[idx]);
  }
  table.labels = detail::irrep_labels(g, table.dims, table.chi, gen);
  return table;
}

/// Restriction of a class function on g to a subgroup, expressed on the
/// subgroup's own conjugacy classes.  `subg` must be the re-indexed group of
/// `sub` (see subgroup_as_group).
inline ClassFunction restrict_character(const FiniteGroup& g,
                                        const ClassFunction& chi,
                                        const Subgroup& sub,
                                        const FiniteGroup& subg) {
  if (chi.size() != static_cast<size_t>(g.num_classes()))
    throw ArgumentError("class function size does not match class count");
  if (subg.order() != sub.order())
    throw ArgumentError("subgroup group does not match subgroup");
  const auto& sub_classes = subg.conjugacy_classes();
  ClassFunction out(sub_classes.size());
  for (size_t c = 0; c < sub_classes.size(); ++c) {
    const int parent = sub.elements[sub_classes[c].representative];
    out[c] = chi[g.class_of(parent)];
  }
  return out;
}

/// Induction of a class function from a subgroup up to g:
/// chi^G(x) = (1/|H|) sum_{t in G, t^-1 x t in H} chi_H(t^-1 x t).
inline ClassFunction induce_character(const FiniteGroup& g, const Subgroup& sub,
                                      const FiniteGroup& subg,
                                      const ClassFunction& chi_h) {
  if (chi_h.size() != static_cast<size_t>(subg.num_classes()))
    throw ArgumentError("class function size does not match class count");
  if (subg.order() != sub.order())
    throw ArgumentError("subgroup group does not match subgroup");
  const auto& classes = g.conjugacy_classes();
  ClassFunction out(classes.size(), 0.0);
  for (size_t c = 0; c < classes.size(); ++c) {
    const int x = classes[c].representative;
    cplx acc = 0.0;
    for (int t = 0; t < g.order(); ++t) {
      const int moved = g.conjugate(g.inverse(t), x);  // t^-1 x t
      const int local = sub.local(moved);
      if (local >= 0) acc += chi_h[subg.class_of(local)];
    }
    out[c] = acc / static_cast<double>(sub.order());
  }
  return out;
}

/// Decomposes a class function into irreducible multiplicities.  Throws
/// NotACharacterError if any multiplicity is not a nonnegative integer
/// within `tolerance`, or if the reconstruction residual exceeds it.
inline std::vector<int> decompose(const FiniteGroup& g,
                                  const CharacterTable& table,
                                  const ClassFunction& f,
                                  double tolerance = 1e-6) {
  const int k = table.num_irreps();
  std::vector<int> mult(k, 0);
  for (int i = 0; i < k; ++i) {
    const cplx m = inner_product(g, f, table.chi[i]);
    const double mr = std::round(m.real());
    if (std::abs(m.imag()) > tolerance || std::abs(m.real() - mr) > tolerance ||
        mr < -0.5)
      throw NotACharacterError(
          "multiplicity of " + table.labels[i] + " is " +
          std::to_string(m.real()) + (m.imag() >= 0 ? "+" : "") +
          std::to_string(m.imag()) + "i, not a nonnegative integer");
    mult[i] = static_cast<int>(mr);
  }
  for (int l = 0; l < table.num_classes(); ++l) {
    cplx rec = 0.0;
    for (int i = 0; i < k; ++i)
      rec += static_cast<double>(mult[i]) * table.chi[i][l];
    if (std::abs(rec - f[l]) > tolerance)
      throw NotACharacterError(
          "reconstruction residual " + std::to_string(std::abs(rec - f[l])) +
          " at class " + table.class_labels[l]);
  }
  return mult;
}

/// An irreducible representation given by explicit matrices, one per group
/// element, aligned with a character table row.
struct ExplicitIrrep {
  std::string label;
  int dim = 0;
  std::vector<Eigen::MatrixXcd> matrices;  ///< indexed by group element
};

/// Maximum deviation of an explicit irrep from being a homomorphism whose
/// traces match the given character row: checks D(e) = I, D(g)D(h) = D(gh)
/// over all pairs, and tr D(g) = chi(class of g).
inline double irrep_deviation(const FiniteGroup& g, const ExplicitIrrep& rep,
                              const ClassFunction& chi_row) {
  const int n = g.order();
  if (static_cast<int>(rep.matrices.size()) != n)
    throw ArgumentError("irrep must supply one matrix per group element");
  double dev = 0.0;
  const Eigen::MatrixXcd eye =
      Eigen::MatrixXcd::Identity(rep.dim, rep.dim);
  dev = std::max(dev, (rep.matrices[0] - eye).cwiseAbs().maxCoeff());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Eigen::MatrixXcd prod = rep.matrices[a] * rep.matrices[b];
      dev = std::max(
          dev,
          (prod - rep.matrices[g.multiply(a, b)]).cwiseAbs().maxCoeff());
    }
  for (int a = 0; a < n; ++a)
    dev = std::max(dev,
                   std::abs(rep.matrices[a].trace() - chi_row[g.class_of(a)]));
  return dev;
}

/// Explicit matrices for groups where a standard presentation is bundled:
/// cyclic groups (roots of unity) and the six-element nonabelian group under
/// its conventional generators.  Rows align with character_table(g).
/// Returns an empty vector for other groups.
inline std::vector<ExplicitIrrep> builtin_irreps(const FiniteGroup& g) {
  const int n = g.order();
  const CharacterTable table = character_table(g);
  std::vector<ExplicitIrrep> out;

  const int gen = detail::find_cyclic_generator(g);
  if (gen >= 0) {
    const auto expo = detail::cyclic_exponents(g, gen);
    for (int r = 0; r < table.num_irreps(); ++r) {
      // Recover the exponent from the value on the generator.
      double ang = std::arg(table.chi[r][g.class_of(gen)]);
      int e = static_cast<int>(std::lround(ang * n / (2.0 * M_PI)));
      e = ((e % n) + n) % n;
      ExplicitIrrep rep;
      rep.label = table.labels[r];
      rep.dim = 1;
      rep.matrices.resize(n, Eigen::MatrixXcd(1, 1));
      for (int x = 0; x < n; ++x)
        rep.matrices[x](0, 0) =
            std::polar(1.0, 2.0 * M_PI * e * expo[x] / n);
      out.push_back(std::move(rep));
    }
    return out;
  }

  if (g.name() == "s3" && n == 6) {
    const cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
    const cplx wb = std::conj(w);
    auto one_dim = [&](const std::string& label,
                       std::vector<cplx> vals) {
      ExplicitIrrep rep;
      rep.label = label;
      rep.dim = 1;
      rep.matrices.resize(6, Eigen::MatrixXcd(1, 1));
      for (int x = 0; x < 6; ++x) rep.matrices[x](0, 0) = vals[x];
      return rep;
    };
    out.push_back(one_dim("Gamma_1", {1, 1, 1, 1, 1, 1}));
    out.push_back(one_dim("Gamma_-1", {1, 1, 1, -1, -1, -1}));
    ExplicitIrrep two;
    two.label = "Gamma_2";
    two.dim = 2;
    two.matrices.resize(6, Eigen::MatrixXcd(2, 2));
    two.matrices[0] << 1, 0, 0, 1;    // identity
    two.matrices[1] << wb, 0, 0, w;   // rotation
    two.matrices[2] << w, 0, 0, wb;   // squared rotation
    two.matrices[3] << 0, 1, 1, 0;    // reflections
    two.matrices[4] << 0, w, wb, 0;
    two.matrices[5] << 0, wb, w, 0;
    out.push_back(std::move(two));
    return out;
  }

  return out;
}

/// Kronecker product helper for small dense matrices.
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Deviation of sum_g A(g) (x) B(g^-1) from its closed form: for identical
/// irreps of dimension d the sum equals (|G|/d) times the swap operator on
/// C^d (x) C^d; for distinct irreps it vanishes.  This is the
/// basis-independent form of the great orthogonality theorem.
inline double verify_got_swap(const FiniteGroup& g, const ExplicitIrrep& a,
                              const ExplicitIrrep& b) {
  const int n = g.order();
  Eigen::MatrixXcd acc =
      Eigen::MatrixXcd::Zero(a.dim * b.dim, a.dim * b.dim);
  for (int x = 0; x < n; ++x)
    acc += kron(a.matrices[x], b.matrices[g.inverse(x)]);
  Eigen::MatrixXcd target =
      Eigen::MatrixXcd::Zero(a.dim * b.dim, a.dim * b.dim);
  if (a.label == b.label && a.dim == b.dim) {
    const int d = a.dim;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        target(i * d + j, j * d + i) = static_cast<double>(n) / d;
  }
  return (acc - target).cwiseAbs().maxCoeff();
}

/// Everything attached to one conjugacy class that the excitation labels
/// need: the centralizer of its representative, that centralizer re-indexed
/// as a group of its own, the centralizer's character table, and a
/// conjugator for each class member.
struct ClassTheory {
  int class_index = -1;
  Subgroup centralizer;       ///< in parent-group element indices
  FiniteGroup group;          ///< the centralizer as a standalone group
  CharacterTable table;       ///< its character table
  std::vector<int> conjugators;  ///< per member m: k with k rep k^-1 = m
};

inline ClassTheory class_theory(const FiniteGroup& g, int class_index) {
  const auto& classes = g.conjugacy_classes();
  if (class_index < 0 || class_index >= static_cast<int>(classes.size()))
    throw ArgumentError("class index out of range");
  const ConjugacyClass& cls = classes[class_index];
  ClassTheory ct;
  ct.class_index = class_index;
  ct.centralizer = g.normalizer(cls.representative);
  // A central element's centralizer is the whole group; keep the parent name
  // so curated irrep labels carry over.
  const std::string sub_name = (ct.centralizer.order() == g.order())
                                   ? g.name()
                                   : "N_" + g.label(cls.representative);
  ct.group = subgroup_as_group(g, ct.centralizer, sub_name);
  ct.table = character_table(ct.group);
  ct.conjugators.reserve(cls.members.size());
  for (int m : cls.members) ct.conjugators.push_back(g.conjugator(m));
  return ct;
}

/// Character value of centralizer irrep `irrep` transported to the member at
/// `member_pos` in the class: for member m = k rep k^-1, an element
/// x in N_m maps to chi(k^-1 x k), evaluated in the representative's
/// centralizer.  Independent of the choice of k because characters are class
/// functions on the centralizer.
inline cplx transported_chi(const FiniteGroup& g, const ClassTheory& ct,
                            int irrep, int member_pos, int x_parent) {
  const int k = ct.conjugators[member_pos];
  const int moved = g.conjugate(g.inverse(k), x_parent);
  const int local = ct.centralizer.local(moved);
  if (local < 0)
    throw ArgumentError(
        "element does not centralize the requested class member");
  return ct.table.chi[irrep][ct.group.class_of(local)];
}

}  // namespace qd
