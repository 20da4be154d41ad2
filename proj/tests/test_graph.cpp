#include <doctest.h>

#include <random>
#include <sstream>
#include <stdexcept>

#include "ng/graph.hpp"
#include "ng/rng.hpp"

using ng::Configuration;
using ng::EdgeTypeCounts;
using ng::Graph;
using ng::VertexState;

TEST_CASE("family builders have the right vertex and edge counts") {
  SUBCASE("complete") {
    const Graph g = Graph::complete(10);
    CHECK(g.n_vertices() == 10);
    CHECK(g.n_edges() == 45);
    for (std::size_t v = 0; v < 10; ++v) CHECK(g.degree(v) == 9);
    CHECK(g.vertex_transitive());
  }
  SUBCASE("cycle") {
    const Graph g = Graph::cycle(6);
    CHECK(g.n_vertices() == 6);
    CHECK(g.n_edges() == 6);
    for (std::size_t v = 0; v < 6; ++v) CHECK(g.degree(v) == 2);
    CHECK(g.vertex_transitive());
  }
  SUBCASE("path") {
    const Graph g = Graph::path(6);
    CHECK(g.n_vertices() == 6);
    CHECK(g.n_edges() == 5);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(5) == 1);
    CHECK(g.degree(2) == 2);
    CHECK_FALSE(g.vertex_transitive());
  }
  SUBCASE("torus") {
    const Graph g = Graph::torus2d(5);
    CHECK(g.n_vertices() == 25);
    CHECK(g.n_edges() == 50);
    for (std::size_t v = 0; v < 25; ++v) CHECK(g.degree(v) == 4);
    CHECK(g.vertex_transitive());
  }
}

TEST_CASE("builders are deterministic: identical edge lists across calls") {
  for (const char* spec : {"complete:8", "cycle:9", "path:7", "torus:4"}) {
    const Graph a = Graph::from_spec(spec);
    const Graph b = Graph::from_spec(spec);
    REQUIRE(a.n_edges() == b.n_edges());
    CHECK(a.edges() == b.edges());
  }
}

TEST_CASE("degenerate sizes are rejected") {
  CHECK_THROWS_AS(Graph::complete(1), std::invalid_argument);
  CHECK_THROWS_AS(Graph::cycle(2), std::invalid_argument);
  CHECK_THROWS_AS(Graph::path(1), std::invalid_argument);
  // A 2x2 torus would need doubled edges; rejected rather than silently
  // collapsed.
  CHECK_THROWS_AS(Graph::torus2d(2), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_spec("torus:0"), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_spec("kite:5"), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_spec("complete"), std::invalid_argument);
}

TEST_CASE("explicit edge lists are validated") {
  using E = Graph::Edge;
  SUBCASE("a valid triangle") {
    const Graph g = Graph::from_edge_list({E{0, 1}, E{1, 2}, E{0, 2}});
    CHECK(g.n_vertices() == 3);
    CHECK(g.n_edges() == 3);
    CHECK_FALSE(g.vertex_transitive());
  }
  SUBCASE("self-loop") {
    CHECK_THROWS_AS(Graph::from_edge_list({E{0, 0}, E{0, 1}}),
                    std::invalid_argument);
  }
  SUBCASE("duplicate edge, either orientation") {
    CHECK_THROWS_AS(Graph::from_edge_list({E{0, 1}, E{1, 0}, E{1, 2}}),
                    std::invalid_argument);
  }
  SUBCASE("disconnected") {
    CHECK_THROWS_AS(Graph::from_edge_list({E{0, 1}, E{2, 3}}),
                    std::invalid_argument);
  }
  SUBCASE("text parsing round trip") {
    std::istringstream in("0 1\n1 2\n2 0\n");
    const Graph g = Graph::from_edge_list_text(in);
    CHECK(g.n_edges() == 3);
  }
  SUBCASE("malformed text") {
    std::istringstream in("0 1\nbogus\n");
    CHECK_THROWS_AS(Graph::from_edge_list_text(in), std::invalid_argument);
  }
}

TEST_CASE("edge type counts on a hand-built configuration") {
  // K_10 with 2 A, 5 B, 3 AB.
  const Graph g = Graph::complete(10);
  std::vector<VertexState> states(10, VertexState::B);
  states[0] = states[1] = VertexState::A;
  states[2] = states[3] = states[4] = VertexState::AB;
  const Configuration cfg(states);
  const EdgeTypeCounts c = ng::edge_type_counts(cfg, g);
  CHECK(c.get(VertexState::A, VertexState::A) == 1);
  CHECK(c.get(VertexState::A, VertexState::B) == 10);
  CHECK(c.get(VertexState::B, VertexState::A) == 10);
  CHECK(c.get(VertexState::A, VertexState::AB) == 6);
  CHECK(c.get(VertexState::AB, VertexState::AB) == 3);
  CHECK(c.get(VertexState::AB, VertexState::B) == 15);
  CHECK(c.get(VertexState::B, VertexState::B) == 10);
  CHECK(c.total() == g.n_edges());
}

TEST_CASE("edge type counts match the complete-graph closed form") {
  // On K_N the counts are pure functions of the population counts:
  // e(X,X) = C(n_X, 2) and e(X,Y) = n_X n_Y.
  const Graph g = Graph::complete(12);
  ng::rng::Stream pick(7, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<VertexState> states(12);
    for (auto& s : states) s = static_cast<VertexState>(pick() % 3);
    const Configuration cfg(states);
    const EdgeTypeCounts c = ng::edge_type_counts(cfg, g);
    const auto na = cfg.n_a(), nb = cfg.n_b(), nab = cfg.n_ab();
    CHECK(c.get(VertexState::A, VertexState::A) == na * (na - 1) / 2);
    CHECK(c.get(VertexState::B, VertexState::B) == nb * (nb - 1) / 2);
    CHECK(c.get(VertexState::AB, VertexState::AB) == nab * (nab - 1) / 2);
    CHECK(c.get(VertexState::A, VertexState::B) == na * nb);
    CHECK(c.get(VertexState::A, VertexState::AB) == na * nab);
    CHECK(c.get(VertexState::B, VertexState::AB) == nb * nab);
    CHECK(c.total() == g.n_edges());
  }
}

TEST_CASE("edge type counts reject a size mismatch") {
  const Graph g = Graph::cycle(5);
  const Configuration cfg(4);
  CHECK_THROWS_AS(ng::edge_type_counts(cfg, g), std::invalid_argument);
}

TEST_CASE("configuration count cache tracks set()") {
  Configuration cfg = Configuration::single_ab(5, 2);
  CHECK(cfg.n_ab() == 1);
  CHECK(cfg.n_b() == 4);
  CHECK(cfg.at(2) == VertexState::AB);
  cfg.set(2, VertexState::A);
  cfg.set(0, VertexState::A);
  CHECK(cfg.n_a() == 2);
  CHECK(cfg.n_ab() == 0);
  CHECK(cfg.n_b() == 3);
}
