#pragma once

#include <array>
#include <string>
#include <vector>

#include "qd/errors.hpp"

namespace qd {

/// Reference to one edge from the viewpoint of a vertex star or a plaquette
/// loop.  For stars, `along` means the edge points away from the vertex; for
/// loops, that the edge direction agrees with the traversal direction.
struct EdgeRef {
  int edge = -1;
  bool along = false;
};

/// The four edges meeting at a vertex, ordered as site slots 1, 4, 5, 6:
/// right, up (both outgoing), left, down (both incoming).
struct VertexStar {
  int vertex = -1;
  std::array<EdgeRef, 4> edges;
};

/// The four edges around a plaquette, ordered as site slots 1..4: bottom,
/// right (along the counterclockwise traversal), top, left (against it).
/// The traversal starts at the plaquette's bottom-left vertex.
struct PlaquetteLoop {
  int plaquette = -1;
  int start_vertex = -1;
  std::array<EdgeRef, 4> edges;
};

/// A vertex paired with the plaquette to its upper right.  The six edges are
/// ordered so that slots 0..3 are the plaquette loop and slots 0, 3, 4, 5
/// are the vertex star; slots 0 and 3 (bottom and left of the plaquette) are
/// shared between the two.
struct Site {
  int vertex = -1;
  int plaquette = -1;
  std::array<int, 6> edges;
  std::array<int, 2> shared_edges;
};

/// Square lattice on a torus.  Vertices and plaquettes are indexed by
/// (row, col) with row increasing upward; horizontal edges point right and
/// vertical edges point up.  Plaquette (r, c) has vertex (r, c) as its
/// bottom-left corner.
class TorusLattice {
 public:
  struct Edge {
    bool horizontal = false;
    int row = 0, col = 0;
    int from_vertex = -1, to_vertex = -1;
  };

  TorusLattice(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 2 || cols < 2)
      throw ArgumentError(
          "torus requires at least 2 rows and 2 columns so stars and loops "
          "have four distinct edges");
    const int nv = rows * cols;
    edges_.resize(2 * nv);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        Edge h;
        h.horizontal = true;
        h.row = r;
        h.col = c;
        h.from_vertex = vertex_index(r, c);
        h.to_vertex = vertex_index(r, c + 1);
        edges_[horizontal_edge(r, c)] = h;
        Edge v;
        v.horizontal = false;
        v.row = r;
        v.col = c;
        v.from_vertex = vertex_index(r, c);
        v.to_vertex = vertex_index(r + 1, c);
        edges_[vertical_edge(r, c)] = v;
      }

    stars_.resize(nv);
    loops_.resize(nv);
    sites_.resize(nv);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        const int v = vertex_index(r, c);
        VertexStar star;
        star.vertex = v;
        star.edges = {EdgeRef{horizontal_edge(r, c), true},
                      EdgeRef{vertical_edge(r, c), true},
                      EdgeRef{horizontal_edge(r, c - 1), false},
                      EdgeRef{vertical_edge(r - 1, c), false}};
        stars_[v] = star;

        PlaquetteLoop loop;
        loop.plaquette = v;
        loop.start_vertex = v;
        loop.edges = {EdgeRef{horizontal_edge(r, c), true},
                      EdgeRef{vertical_edge(r, c + 1), true},
                      EdgeRef{horizontal_edge(r + 1, c), false},
                      EdgeRef{vertical_edge(r, c), false}};
        loops_[v] = loop;

        Site site;
        site.vertex = v;
        site.plaquette = v;
        site.edges = {horizontal_edge(r, c),  vertical_edge(r, c + 1),
                      horizontal_edge(r + 1, c), vertical_edge(r, c),
                      horizontal_edge(r, c - 1), vertical_edge(r - 1, c)};
        site.shared_edges = {site.edges[0], site.edges[3]};
        sites_[v] = site;
      }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int num_vertices() const { return rows_ * cols_; }
  int num_plaquettes() const { return rows_ * cols_; }
  int num_edges() const { return 2 * rows_ * cols_; }

  int vertex_index(int r, int c) const { return wrap(r, rows_) * cols_ + wrap(c, cols_); }
  int horizontal_edge(int r, int c) const { return vertex_index(r, c); }
  int vertical_edge(int r, int c) const { return rows_ * cols_ + vertex_index(r, c); }

  const Edge& edge(int e) const {
    check_range(e, num_edges(), "edge");
    return edges_[e];
  }
  const VertexStar& star(int v) const {
    check_range(v, num_vertices(), "vertex");
    return stars_[v];
  }
  const PlaquetteLoop& loop(int p) const {
    check_range(p, num_plaquettes(), "plaquette");
    return loops_[p];
  }
  /// The unique site pairing vertex v with its upper-right plaquette.
  const Site& site_of(int v) const {
    check_range(v, num_vertices(), "vertex");
    return sites_[v];
  }

 private:
  static int wrap(int x, int m) { return ((x % m) + m) % m; }
  static void check_range(int x, int m, const char* what) {
    if (x < 0 || x >= m)
      throw ArgumentError(std::string(what) + " index out of range");
  }

  int rows_, cols_;
  std::vector<Edge> edges_;
  std::vector<VertexStar> stars_;
  std::vector<PlaquetteLoop> loops_;
  std::vector<Site> sites_;
};

inline TorusLattice build_torus(int rows, int cols) {
  return TorusLattice(rows, cols);
}

}  // namespace qd
