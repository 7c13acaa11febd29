#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "qd/lattice.hpp"

namespace {

/// Walks a plaquette loop edge by edge, requiring the edges to chain into a
/// closed cycle starting and ending at the loop's start vertex, honoring the
/// along/against flags.  This is the geometric oracle for the traversal.
void check_loop_is_closed_cycle(const qd::TorusLattice& lat,
                                const qd::PlaquetteLoop& loop) {
  int cur = loop.start_vertex;
  std::set<int> visited;
  for (const auto& ref : loop.edges) {
    visited.insert(cur);
    const auto& e = lat.edge(ref.edge);
    if (ref.along) {
      REQUIRE(e.from_vertex == cur);
      cur = e.to_vertex;
    } else {
      REQUIRE(e.to_vertex == cur);
      cur = e.from_vertex;
    }
  }
  CHECK(cur == loop.start_vertex);
  CHECK(visited.size() == 4);  // four distinct corners
}

void check_all_invariants(int rows, int cols) {
  const auto lat = qd::build_torus(rows, cols);
  const int nv = rows * cols;
  REQUIRE(lat.num_vertices() == nv);
  REQUIRE(lat.num_plaquettes() == nv);
  REQUIRE(lat.num_edges() == 2 * nv);

  std::map<int, int> star_count, loop_count, site_count;

  for (int v = 0; v < nv; ++v) {
    const auto& star = lat.star(v);
    CHECK(star.vertex == v);
    std::set<int> star_edges;
    for (const auto& ref : star.edges) {
      star_edges.insert(ref.edge);
      ++star_count[ref.edge];
      const auto& e = lat.edge(ref.edge);
      // Outgoing flag must match the stored orientation.
      CHECK(ref.along == (e.from_vertex == v));
      CHECK((ref.along ? e.from_vertex : e.to_vertex) == v);
    }
    CHECK(star_edges.size() == 4);
    // Slots are ordered out, out, in, in.
    CHECK(star.edges[0].along);
    CHECK(star.edges[1].along);
    CHECK_FALSE(star.edges[2].along);
    CHECK_FALSE(star.edges[3].along);

    const auto& loop = lat.loop(v);
    CHECK(loop.plaquette == v);
    CHECK(loop.start_vertex == v);
    std::set<int> loop_edges;
    for (const auto& ref : loop.edges) {
      loop_edges.insert(ref.edge);
      ++loop_count[ref.edge];
    }
    CHECK(loop_edges.size() == 4);
    CHECK(loop.edges[0].along);
    CHECK(loop.edges[1].along);
    CHECK_FALSE(loop.edges[2].along);
    CHECK_FALSE(loop.edges[3].along);
    check_loop_is_closed_cycle(lat, loop);

    const auto& site = lat.site_of(v);
    CHECK(site.vertex == v);
    CHECK(site.plaquette == v);
    std::set<int> site_edges(site.edges.begin(), site.edges.end());
    CHECK(site_edges.size() == 6);
    for (int e : site.edges) ++site_count[e];

    // Site slots 0..3 are the loop in order; slots 0,3,4,5 are the star in
    // order; the shared pair is slots 0 and 3.
    for (int i = 0; i < 4; ++i) CHECK(loop.edges[i].edge == site.edges[i]);
    CHECK(star.edges[0].edge == site.edges[0]);
    CHECK(star.edges[1].edge == site.edges[3]);
    CHECK(star.edges[2].edge == site.edges[4]);
    CHECK(star.edges[3].edge == site.edges[5]);
    CHECK(site.shared_edges[0] == site.edges[0]);
    CHECK(site.shared_edges[1] == site.edges[3]);

    std::set<int> intersection;
    for (const auto& ref : star.edges)
      if (loop_edges.count(ref.edge)) intersection.insert(ref.edge);
    CHECK(intersection ==
          std::set<int>(site.shared_edges.begin(), site.shared_edges.end()));
  }

  // Every edge: exactly 2 stars, 2 loops, 3 sites.
  for (int e = 0; e < lat.num_edges(); ++e) {
    INFO("edge " << e << " on " << rows << "x" << cols);
    CHECK(star_count[e] == 2);
    CHECK(loop_count[e] == 2);
    CHECK(site_count[e] == 3);
  }
}

}  // namespace

TEST_CASE("torus lattices satisfy all incidence invariants") {
  for (auto [r, c] : std::vector<std::pair<int, int>>{
           {2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 5}}) {
    INFO("torus " << r << "x" << c);
    check_all_invariants(r, c);
  }
}

TEST_CASE("edge indexing and orientation follow the right/up convention") {
  const auto lat = qd::build_torus(3, 4);

  const auto& h = lat.edge(lat.horizontal_edge(1, 2));
  CHECK(h.horizontal);
  CHECK(h.from_vertex == lat.vertex_index(1, 2));
  CHECK(h.to_vertex == lat.vertex_index(1, 3));

  const auto& v = lat.edge(lat.vertical_edge(1, 2));
  CHECK_FALSE(v.horizontal);
  CHECK(v.from_vertex == lat.vertex_index(1, 2));
  CHECK(v.to_vertex == lat.vertex_index(2, 2));

  // Periodic wrap in both directions.
  CHECK(lat.edge(lat.horizontal_edge(0, 3)).to_vertex == lat.vertex_index(0, 0));
  CHECK(lat.edge(lat.vertical_edge(2, 1)).to_vertex == lat.vertex_index(0, 1));
  CHECK(lat.vertex_index(-1, 0) == lat.vertex_index(2, 0));
  CHECK(lat.vertex_index(0, -1) == lat.vertex_index(0, 3));
}

TEST_CASE("sites biject with vertices and plaquettes") {
  const auto lat = qd::build_torus(3, 3);
  std::set<int> vertices, plaquettes;
  for (int v = 0; v < lat.num_vertices(); ++v) {
    const auto& site = lat.site_of(v);
    vertices.insert(site.vertex);
    plaquettes.insert(site.plaquette);
  }
  CHECK(vertices.size() == 9);
  CHECK(plaquettes.size() == 9);
}

TEST_CASE("degenerate tori are rejected") {
  CHECK_THROWS_AS(qd::build_torus(1, 3), qd::ArgumentError);
  CHECK_THROWS_AS(qd::build_torus(3, 1), qd::ArgumentError);
  CHECK_THROWS_AS(qd::build_torus(0, 0), qd::ArgumentError);
  CHECK_THROWS_AS(qd::build_torus(-2, 2), qd::ArgumentError);
}

TEST_CASE("accessors validate their indices") {
  const auto lat = qd::build_torus(2, 2);
  CHECK_THROWS_AS(lat.star(4), qd::ArgumentError);
  CHECK_THROWS_AS(lat.loop(-1), qd::ArgumentError);
  CHECK_THROWS_AS(lat.site_of(4), qd::ArgumentError);
  CHECK_THROWS_AS(lat.edge(8), qd::ArgumentError);
}
