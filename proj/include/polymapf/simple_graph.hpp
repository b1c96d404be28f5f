#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace polymapf {

// Minimal undirected simple graph over nodes 0..n-1 with sorted adjacency
// lists. Used for sector skeletons and tree-decomposition inputs.
struct SimpleGraph {
  std::vector<std::vector<int>> adj;

  SimpleGraph() = default;
  explicit SimpleGraph(int n) : adj(static_cast<size_t>(n)) {}

  int node_count() const { return static_cast<int>(adj.size()); }

  void add_edge(int u, int v) {
    if (u == v) return;
    insert_sorted(adj[static_cast<size_t>(u)], v);
    insert_sorted(adj[static_cast<size_t>(v)], u);
  }

  bool has_edge(int u, int v) const {
    const auto& a = adj[static_cast<size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }

  long long edge_count() const {
    long long twice = 0;
    for (const auto& a : adj) twice += static_cast<long long>(a.size());
    return twice / 2;
  }

  const std::vector<int>& neighbors(int u) const {
    return adj[static_cast<size_t>(u)];
  }

 private:
  static void insert_sorted(std::vector<int>& list, int value) {
    auto it = std::lower_bound(list.begin(), list.end(), value);
    if (it == list.end() || *it != value) list.insert(it, value);
  }
};

}  // namespace polymapf
