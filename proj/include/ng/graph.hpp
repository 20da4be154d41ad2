#ifndef NG_GRAPH_HPP
#define NG_GRAPH_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ng/configuration.hpp"

namespace ng {

// Simple undirected connected graph.  Edges carry a stable index (their
// position in the canonical edge list) because RNG streams are keyed by it.
class Graph {
 public:
  using Edge = std::pair<std::uint32_t, std::uint32_t>;

  // Builders; all throw std::invalid_argument on bad input.
  static Graph complete(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph path(std::size_t n);
  static Graph torus2d(std::size_t side);
  static Graph from_edge_list(const std::vector<Edge>& edges);
  // Text format: one "u v" pair per line, 0-based vertex indices.
  static Graph from_edge_list_text(std::istream& in);
  // "family:size" spec, family in {complete, cycle, path, torus}.
  static Graph from_spec(const std::string& spec);

  std::size_t n_vertices() const { return adjacency_.size(); }
  std::size_t n_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  const std::vector<std::uint32_t>& neighbors(std::size_t v) const {
    return adjacency_[v];
  }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }

  // True for the families whose automorphism group is vertex-transitive,
  // so a single invasion start vertex is representative.
  bool vertex_transitive() const { return vertex_transitive_; }

 private:
  Graph(std::vector<Edge> edges, std::size_t n, bool transitive);

  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  bool vertex_transitive_ = false;
};

// Per-unordered-state-pair edge counts; symmetric, indexed by state rank.
struct EdgeTypeCounts {
  std::array<std::array<std::size_t, 3>, 3> e{};

  std::size_t get(VertexState x, VertexState y) const {
    return e[static_cast<int>(x)][static_cast<int>(y)];
  }
  std::size_t total() const;
};

// Counts every edge of g by the unordered pair of endpoint states.
// Throws std::invalid_argument on a size mismatch.
EdgeTypeCounts edge_type_counts(const Configuration& config, const Graph& g);

}  // namespace ng

#endif  // NG_GRAPH_HPP
