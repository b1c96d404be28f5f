#include "polymapf/reduced_graph.hpp"

#include <algorithm>
#include <deque>

namespace polymapf {

std::string node_ref_str(const NodeRef& ref) {
  if (ref.is_weave) {
    return "w" + std::to_string(ref.gadget_id) + ":" +
           std::to_string(ref.weave_index);
  }
  return "(" + std::to_string(ref.grid.x) + "," + std::to_string(ref.grid.y) +
         ")";
}

ReducedGraph::ReducedGraph(std::shared_ptr<const DiscretizedPolygon> base)
    : base_(std::move(base)),
      alive_(base_->vertex_count(), 1),
      alive_count_(base_->vertex_count()) {
  rebuild();
}

int ReducedGraph::remove_grid_vertices(const std::vector<GridVertex>& vs) {
  int removed = 0;
  for (const GridVertex& v : vs) {
    int id = base_->index_of(v);
    if (id < 0) {
      raise(ErrorKind::InvalidArgument, "VertexAbsent",
            "cannot remove " + node_ref_str(NodeRef::of(v)) +
                ": not a base vertex");
    }
    if (!alive_[id]) continue;
    for (const WeaveGadget& g : gadgets_) {
      if (g.a == v || g.b == v) {
        raise(ErrorKind::InvariantViolation, "GadgetEndpointRemoved",
              "vertex " + node_ref_str(NodeRef::of(v)) +
                  " anchors weave gadget " + std::to_string(g.id));
      }
    }
    alive_[id] = 0;
    --alive_count_;
    ++removed;
  }
  if (removed > 0) rebuild();
  return removed;
}

const WeaveGadget& ReducedGraph::add_gadget(GridVertex a, GridVertex b,
                                            int interior_length) {
  if (interior_length < 1) {
    raise(ErrorKind::InvalidArgument, "BadGadgetLength",
          "weave gadget interior length must be positive, got " +
              std::to_string(interior_length));
  }
  if (!grid_alive(a) || !grid_alive(b)) {
    raise(ErrorKind::InvalidArgument, "VertexAbsent",
          "weave gadget endpoints must be alive grid vertices");
  }
  WeaveGadget g;
  g.id = static_cast<int>(gadgets_.size());
  g.a = a;
  g.b = b;
  g.interior_length = interior_length;
  gadgets_.push_back(g);
  rebuild();
  return gadgets_.back();
}

bool ReducedGraph::grid_alive(GridVertex v) const {
  int id = base_->index_of(v);
  return id >= 0 && alive_[id];
}

int ReducedGraph::node_of(const NodeRef& ref) const {
  if (ref.is_weave) {
    if (ref.gadget_id < 0 || ref.gadget_id >= static_cast<int>(gadgets_.size()))
      return -1;
    const WeaveGadget& g = gadgets_[ref.gadget_id];
    if (ref.weave_index < 0 || ref.weave_index >= g.interior_length) return -1;
    return gadget_first_node_[ref.gadget_id] + ref.weave_index;
  }
  return node_of_grid(ref.grid);
}

int ReducedGraph::node_of_grid(GridVertex v) const {
  int id = base_->index_of(v);
  if (id < 0 || !alive_[id]) return -1;
  return grid_node_[id];
}

NodeRef ReducedGraph::ref_of(int node) const {
  int base_id = node_grid_[node];
  if (base_id >= 0) return NodeRef::of(base_->vertex_at(base_id));
  auto [g_idx, w_idx] = weave_nodes_[node - alive_count_];
  return NodeRef::of_weave(gadgets_[g_idx].id, w_idx);
}

void ReducedGraph::rebuild() {
  const int base_n = base_->vertex_count();
  grid_node_.assign(base_n, -1);
  node_grid_.clear();
  weave_nodes_.clear();
  gadget_first_node_.clear();

  int next = 0;
  for (int id = 0; id < base_n; ++id) {
    if (alive_[id]) {
      grid_node_[id] = next++;
      node_grid_.push_back(id);
    }
  }
  for (size_t gi = 0; gi < gadgets_.size(); ++gi) {
    gadget_first_node_.push_back(next);
    for (int w = 0; w < gadgets_[gi].interior_length; ++w) {
      node_grid_.push_back(-1);
      weave_nodes_.emplace_back(static_cast<int>(gi), w);
      ++next;
    }
  }
  node_count_ = next;

  adj_.assign(node_count_, {});
  for (int id = 0; id < base_n; ++id) {
    if (!alive_[id]) continue;
    GridVertex v = base_->vertex_at(id);
    for (Direction d : kDirections) {
      int w = node_of_grid(step(v, d));
      if (w >= 0) adj_[grid_node_[id]].push_back(w);
    }
  }
  for (size_t gi = 0; gi < gadgets_.size(); ++gi) {
    const WeaveGadget& g = gadgets_[gi];
    int first = gadget_first_node_[gi];
    int na = node_of_grid(g.a);
    int nb = node_of_grid(g.b);
    adj_[na].push_back(first);
    adj_[first].push_back(na);
    for (int w = 0; w + 1 < g.interior_length; ++w) {
      adj_[first + w].push_back(first + w + 1);
      adj_[first + w + 1].push_back(first + w);
    }
    adj_[first + g.interior_length - 1].push_back(nb);
    adj_[nb].push_back(first + g.interior_length - 1);
  }
}

std::vector<int> ReducedGraph::bfs_all(int source) const {
  std::vector<int> dist(node_count_, kUnreachable);
  std::deque<int> queue;
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj_[v]) {
      if (dist[w] != kUnreachable) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

int ReducedGraph::distance(int a, int b) const { return bfs_all(a)[b]; }

bool ReducedGraph::connected() const {
  if (node_count_ == 0) return true;
  std::vector<int> dist = bfs_all(0);
  return std::none_of(dist.begin(), dist.end(),
                      [](int d) { return d == kUnreachable; });
}

std::vector<GridVertex> ReducedGraph::alive_vertices() const {
  std::vector<GridVertex> out;
  out.reserve(alive_count_);
  for (int id = 0; id < base_->vertex_count(); ++id) {
    if (alive_[id]) out.push_back(base_->vertex_at(id));
  }
  return out;
}

bool operator==(const ReducedGraph& l, const ReducedGraph& r) {
  return l.base_->serialize_map() == r.base_->serialize_map() &&
         l.alive_ == r.alive_ && l.gadgets_ == r.gadgets_;
}

int bfs_distance(const ReducedGraph& graph, const NodeRef& u,
                 const NodeRef& v) {
  int a = graph.node_of(u);
  int b = graph.node_of(v);
  if (a < 0 || b < 0) {
    raise(ErrorKind::InvalidArgument, "VertexAbsent",
          "no vertex at " + node_ref_str(a < 0 ? u : v));
  }
  return graph.distance(a, b);
}

}  // namespace polymapf
