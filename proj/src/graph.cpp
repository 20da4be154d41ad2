#include "ng/graph.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ng {

Configuration::Configuration(std::size_t n, VertexState fill)
    : states_(n, fill) {
  counts_[static_cast<int>(fill)] = n;
}

Configuration::Configuration(std::vector<VertexState> states)
    : states_(std::move(states)) {
  for (VertexState s : states_) ++counts_[static_cast<int>(s)];
}

Configuration Configuration::single_ab(std::size_t n, std::size_t vertex) {
  if (vertex >= n) throw std::invalid_argument("start vertex out of range");
  Configuration c(n, VertexState::B);
  c.set(vertex, VertexState::AB);
  return c;
}

void Configuration::set(std::size_t v, VertexState s) {
  --counts_[static_cast<int>(states_[v])];
  states_[v] = s;
  ++counts_[static_cast<int>(s)];
}

Graph::Graph(std::vector<Edge> edges, std::size_t n, bool transitive)
    : edges_(std::move(edges)), adjacency_(n), vertex_transitive_(transitive) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (auto& [u, v] : edges_) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop not allowed");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      throw std::invalid_argument("duplicate edge");
    }
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  // Connectivity check (the dynamics are only meaningful on one component).
  if (n == 0) throw std::invalid_argument("graph must have vertices");
  std::vector<char> visited(n, 0);
  std::vector<std::uint32_t> stack = {0};
  visited[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t w : adjacency_[v]) {
      if (!visited[w]) {
        visited[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw std::invalid_argument("graph must be connected");
}

Graph Graph::complete(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(std::move(edges), n, true);
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    edges.push_back({u, static_cast<std::uint32_t>((u + 1) % n)});
  }
  return Graph(std::move(edges), n, true);
}

Graph Graph::path(std::size_t n) {
  if (n < 2) throw std::invalid_argument("path needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::uint32_t u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph(std::move(edges), n, false);
}

Graph Graph::torus2d(std::size_t side) {
  if (side < 2) throw std::invalid_argument("torus needs side >= 2");
  // Row-major vertex ids; wrap-around neighbors to the right and below.
  // side = 2 would create duplicate wrap edges, so it is special-cased out.
  if (side == 2) throw std::invalid_argument("torus side 2 collapses to multi-edges; use side >= 3");
  const auto id = [side](std::size_t r, std::size_t c) {
    return static_cast<std::uint32_t>(r * side + c);
  };
  std::vector<Edge> edges;
  edges.reserve(2 * side * side);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      edges.push_back({id(r, c), id(r, (c + 1) % side)});
      edges.push_back({id(r, c), id((r + 1) % side, c)});
    }
  }
  return Graph(std::move(edges), side * side, true);
}

Graph Graph::from_edge_list(const std::vector<Edge>& edges) {
  std::uint32_t n = 0;
  for (const auto& [u, v] : edges) n = std::max({n, u + 1, v + 1});
  return Graph(edges, n, false);
}

Graph Graph::from_edge_list_text(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::uint32_t u, v;
    if (!(row >> u >> v)) throw std::invalid_argument("bad edge line: " + line);
    edges.push_back({u, v});
  }
  return from_edge_list(edges);
}

Graph Graph::from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("graph spec must be family:size");
  }
  const std::string family = spec.substr(0, colon);
  const std::size_t size = std::stoul(spec.substr(colon + 1));
  if (family == "complete") return complete(size);
  if (family == "cycle") return cycle(size);
  if (family == "path") return path(size);
  if (family == "torus") return torus2d(size);
  throw std::invalid_argument("unknown graph family: " + family);
}

std::size_t EdgeTypeCounts::total() const {
  std::size_t sum = 0;
  for (int x = 0; x < 3; ++x) {
    for (int y = x; y < 3; ++y) sum += e[x][y];
  }
  return sum;
}

EdgeTypeCounts edge_type_counts(const Configuration& config, const Graph& g) {
  if (config.size() != g.n_vertices()) {
    throw std::invalid_argument("configuration size does not match graph");
  }
  EdgeTypeCounts counts;
  for (const auto& [u, v] : g.edges()) {
    int x = static_cast<int>(config.at(u));
    int y = static_cast<int>(config.at(v));
    if (x > y) std::swap(x, y);
    ++counts.e[x][y];
  }
  for (int x = 0; x < 3; ++x) {
    for (int y = x + 1; y < 3; ++y) counts.e[y][x] = counts.e[x][y];
  }
  return counts;
}

}  // namespace ng
