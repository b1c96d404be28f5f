#pragma once

#include <memory>
#include <vector>

#include "polymapf/grid.hpp"

namespace polymapf {

// A chain of `interior_length` fresh degree-2 vertices joining two surviving
// grid vertices. The chain preserves the endpoints' pre-reduction distance:
// walking a..b through the gadget takes interior_length + 1 steps.
struct WeaveGadget {
  int id = 0;
  GridVertex a;
  GridVertex b;
  int interior_length = 0;
  friend bool operator==(const WeaveGadget&, const WeaveGadget&) = default;
};

// Position in a possibly-reduced graph: either a grid vertex or an interior
// vertex of a weave gadget (index 0 is adjacent to the gadget's `a` end).
struct NodeRef {
  bool is_weave = false;
  GridVertex grid;           // valid when !is_weave
  int gadget_id = 0;         // valid when is_weave
  int weave_index = 0;       // valid when is_weave
  static NodeRef of(GridVertex v) { return {false, v, 0, 0}; }
  static NodeRef of_weave(int gadget_id, int index) {
    return {true, {}, gadget_id, index};
  }
  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

std::string node_ref_str(const NodeRef& ref);

// The working graph for solving and reduction: a base polygon with some grid
// vertices removed and weave gadgets added. A fresh instance uses the "pure"
// form (nothing removed, no gadgets), so every pipeline stage can treat the
// two cases uniformly. Node ids are dense: surviving grid vertices first (in
// the base polygon's index order), then gadget interiors in gadget order.
class ReducedGraph {
 public:
  explicit ReducedGraph(std::shared_ptr<const DiscretizedPolygon> base);

  const DiscretizedPolygon& base() const { return *base_; }
  std::shared_ptr<const DiscretizedPolygon> base_ptr() const { return base_; }

  bool is_pure() const {
    return gadgets_.empty() &&
           alive_count_ == base_->vertex_count();
  }

  // --- mutation (reduction pipeline) ---
  // Removes grid vertices; silently skips ones already removed. Removing a
  // gadget endpoint is an invariant violation.
  int remove_grid_vertices(const std::vector<GridVertex>& vs);
  // Adds a gadget joining two alive grid vertices; interior_length >= 1.
  const WeaveGadget& add_gadget(GridVertex a, GridVertex b,
                                int interior_length);

  // --- node-level view ---
  int node_count() const { return node_count_; }
  bool grid_alive(GridVertex v) const;
  int alive_grid_count() const { return alive_count_; }
  const std::vector<WeaveGadget>& gadgets() const { return gadgets_; }

  // Node id for a position, or -1 when absent/removed.
  int node_of(const NodeRef& ref) const;
  int node_of_grid(GridVertex v) const;
  NodeRef ref_of(int node) const;

  // Neighbors in a fixed deterministic order (grid directions in kDirections
  // order, then gadget attachments in gadget order).
  const std::vector<int>& neighbors(int node) const { return adj_[node]; }

  std::vector<int> bfs_all(int source) const;
  // Distance between nodes, or kUnreachable.
  int distance(int a, int b) const;

  bool connected() const;

  // Alive grid vertices in base index order.
  std::vector<GridVertex> alive_vertices() const;

  friend bool operator==(const ReducedGraph& l, const ReducedGraph& r);

 private:
  void rebuild();

  std::shared_ptr<const DiscretizedPolygon> base_;
  std::vector<uint8_t> alive_;  // per base vertex id
  int alive_count_ = 0;
  std::vector<WeaveGadget> gadgets_;

  // Derived indexing.
  int node_count_ = 0;
  std::vector<int> grid_node_;           // base vertex id -> node id or -1
  std::vector<int> node_grid_;           // node id -> base vertex id or -1
  std::vector<std::pair<int, int>> weave_nodes_;  // node id - grid part -> (gadget idx, index)
  std::vector<int> gadget_first_node_;   // gadget idx -> first interior node id
  std::vector<std::vector<int>> adj_;
};

// Distance between two present vertices of a reduced graph (positions given
// as NodeRefs). Mirrors bfs_distance on plain polygons.
int bfs_distance(const ReducedGraph& graph, const NodeRef& u,
                 const NodeRef& v);

}  // namespace polymapf
