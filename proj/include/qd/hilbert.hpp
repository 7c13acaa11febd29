#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <ostream>
#include <vector>

#include "qd/common.hpp"
#include "qd/errors.hpp"
#include "qd/lattice.hpp"

namespace qd {

/// Tensor product of `num_edges` qudits of dimension `qudit_dim` (= |G|).
/// Basis index b encodes one group element per edge, edge 0 varying fastest:
/// b = sum_i z_i * qudit_dim^i.
class HilbertSpace {
 public:
  HilbertSpace(int qudit_dim, int num_edges)
      : qudit_dim_(qudit_dim), num_edges_(num_edges) {
    if (qudit_dim < 1 || num_edges < 1)
      throw ArgumentError("Hilbert space needs positive qudit dimension and edge count");
    constexpr long kMaxDim = 1L << 31;
    strides_.resize(num_edges + 1);
    strides_[0] = 1;
    for (int i = 0; i < num_edges; ++i) {
      if (strides_[i] > kMaxDim / qudit_dim)
        throw CapacityError("Hilbert space dimension exceeds the 2^31 addressing guard");
      strides_[i + 1] = strides_[i] * qudit_dim;
    }
  }

  int qudit_dim() const { return qudit_dim_; }
  int num_edges() const { return num_edges_; }
  long dim() const { return strides_[num_edges_]; }
  long stride(int edge) const { return strides_[edge]; }

  /// Group element stored on `edge` within basis index b.
  int digit(long b, int edge) const {
    return static_cast<int>((b / strides_[edge]) % qudit_dim_);
  }

  /// Basis index equal to b except that `edge` holds `value`.
  long with_digit(long b, int edge, int value) const {
    return b + (static_cast<long>(value) - digit(b, edge)) * strides_[edge];
  }

  bool operator==(const HilbertSpace& o) const {
    return qudit_dim_ == o.qudit_dim_ && num_edges_ == o.num_edges_;
  }
  bool operator!=(const HilbertSpace& o) const { return !(*this == o); }

 private:
  int qudit_dim_, num_edges_;
  std::vector<long> strides_;
};

/// An ordered list of lattice edges; local qudit i of the operator space is
/// lattice edge edges[i].
struct Region {
  std::vector<int> edges;

  int size() const { return static_cast<int>(edges.size()); }
  int position_of(int lattice_edge) const {
    for (int i = 0; i < size(); ++i)
      if (edges[i] == lattice_edge) return i;
    return -1;
  }
};

inline Region star_region(const TorusLattice& lat, int v) {
  Region r;
  for (const auto& ref : lat.star(v).edges) r.edges.push_back(ref.edge);
  return r;
}

inline Region loop_region(const TorusLattice& lat, int p) {
  Region r;
  for (const auto& ref : lat.loop(p).edges) r.edges.push_back(ref.edge);
  return r;
}

inline Region site_region(const TorusLattice& lat, int v) {
  const auto& site = lat.site_of(v);
  return Region{{site.edges.begin(), site.edges.end()}};
}

inline Region full_region(const TorusLattice& lat) {
  Region r;
  for (int e = 0; e < lat.num_edges(); ++e) r.edges.push_back(e);
  return r;
}

/// Edges of a, followed by the edges of b not already present.
inline Region union_region(const Region& a, const Region& b) {
  Region r = a;
  for (int e : b.edges)
    if (r.position_of(e) < 0) r.edges.push_back(e);
  return r;
}

/// A sparse complex operator bound to its Hilbert space.
struct SparseOperator {
  HilbertSpace space;
  Eigen::SparseMatrix<cplx> mat;

  SparseOperator(const HilbertSpace& s)
      : space(s), mat(static_cast<int>(s.dim()), static_cast<int>(s.dim())) {}
  SparseOperator(const HilbertSpace& s, Eigen::SparseMatrix<cplx> m)
      : space(s), mat(std::move(m)) {}

  long dim() const { return space.dim(); }
  long nnz() const { return mat.nonZeros(); }

  void prune() { mat.prune(1.0, kSparseDropTolerance); }
};

inline SparseOperator identity_op(const HilbertSpace& s) {
  SparseOperator op(s);
  op.mat.setIdentity();
  return op;
}

inline SparseOperator zero_op(const HilbertSpace& s) { return SparseOperator(s); }

namespace detail {
inline void require_same_space(const SparseOperator& a,
                               const SparseOperator& b) {
  if (a.space != b.space)
    throw ArgumentError("operators act on different Hilbert spaces");
}
}  // namespace detail

inline SparseOperator operator+(const SparseOperator& a,
                                const SparseOperator& b) {
  detail::require_same_space(a, b);
  SparseOperator out(a.space, (a.mat + b.mat).eval());
  out.prune();
  return out;
}

inline SparseOperator operator-(const SparseOperator& a,
                                const SparseOperator& b) {
  detail::require_same_space(a, b);
  SparseOperator out(a.space, (a.mat - b.mat).eval());
  out.prune();
  return out;
}

inline SparseOperator operator*(const SparseOperator& a,
                                const SparseOperator& b) {
  detail::require_same_space(a, b);
  SparseOperator out(a.space, (a.mat * b.mat).eval());
  out.prune();
  return out;
}

inline SparseOperator operator*(const cplx& c, const SparseOperator& a) {
  SparseOperator out(a.space, (c * a.mat).eval());
  out.prune();
  return out;
}

inline SparseOperator operator*(double c, const SparseOperator& a) {
  return cplx(c, 0.0) * a;
}

inline SparseOperator adjoint(const SparseOperator& a) {
  return SparseOperator(a.space,
                        Eigen::SparseMatrix<cplx>(a.mat.adjoint()));
}

/// Largest entry magnitude.
inline double max_abs(const SparseOperator& a) {
  double m = 0.0;
  for (int k = 0; k < a.mat.outerSize(); ++k)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(a.mat, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

inline cplx trace(const SparseOperator& a) { return a.mat.diagonal().sum(); }

/// Largest entry of the commutator [a, b].
inline double commutator_norm(const SparseOperator& a,
                              const SparseOperator& b) {
  return max_abs(a * b - b * a);
}

/// Largest entry of a - a^dagger.
inline double hermiticity_residue(const SparseOperator& a) {
  return max_abs(a - adjoint(a));
}

inline Eigen::MatrixXcd dense(const SparseOperator& a) {
  return Eigen::MatrixXcd(a.mat);
}

/// Coordinate-list dump: one-line header "dim nnz", then "row col re im"
/// per stored entry, rows in column-major storage order.
inline void dump_operator(std::ostream& os, const SparseOperator& a) {
  os << a.dim() << ' ' << a.nnz() << '\n';
  for (int k = 0; k < a.mat.outerSize(); ++k)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(a.mat, k); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' '
         << it.value().imag() << '\n';
}

}  // namespace qd
