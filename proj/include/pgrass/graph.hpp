#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "pgrass/base.hpp"

namespace pgrass {

// Simple undirected graph with adjacency lists and a packed adjacency
// matrix, sized for exhaustive search on a few thousand vertices.
struct Graph {
  int V = 0;
  int W = 0;  // 64-bit words per bitset row
  long long E = 0;
  std::vector<std::vector<int>> adj;
  std::vector<uint64_t> bits;

  Graph() = default;
  explicit Graph(int v) : V(v), W((v + 63) / 64), adj(v), bits(size_t(v) * ((v + 63) / 64), 0) {}

  const uint64_t* row(int u) const { return bits.data() + size_t(u) * W; }
  uint64_t* row(int u) { return bits.data() + size_t(u) * W; }

  bool adjacent(int u, int v) const { return (row(u)[v >> 6] >> (v & 63)) & 1; }

  void add_edge(int u, int v) {
    require(u != v, ErrorCode::BadParameters, "no loops in a simple graph");
    require(0 <= u && u < V && 0 <= v && v < V, ErrorCode::BadParameters, "vertex range");
    if (adjacent(u, v)) return;
    row(u)[v >> 6] |= uint64_t(1) << (v & 63);
    row(v)[u >> 6] |= uint64_t(1) << (u & 63);
    adj[u].push_back(v);
    adj[v].push_back(u);
    ++E;
  }

  void finalize() {
    for (auto& l : adj) std::sort(l.begin(), l.end());
  }

  int degree(int u) const { return int(adj[u].size()); }

  bool is_regular() const {
    for (int u = 1; u < V; ++u)
      if (degree(u) != degree(0)) return false;
    return true;
  }

  // Sorted edge list with u < v.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    e.reserve(size_t(E));
    for (int u = 0; u < V; ++u)
      for (int v : adj[u])
        if (u < v) e.emplace_back(u, v);
    std::sort(e.begin(), e.end());
    return e;
  }
};

}  // namespace pgrass
