#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polymapf/errors.hpp"

namespace polymapf {

// A point of the unit grid. y grows upward; (0,0) is the bottom-left corner
// of a polygon's bounding box.
struct GridVertex {
  int x = 0;
  int y = 0;
  friend bool operator==(const GridVertex&, const GridVertex&) = default;
  friend auto operator<=>(const GridVertex&, const GridVertex&) = default;
};

enum class Direction : uint8_t { Up, Down, Left, Right };
enum class Axis : uint8_t { Vertical, Horizontal };

inline constexpr std::array<Direction, 4> kDirections = {
    Direction::Up, Direction::Down, Direction::Left, Direction::Right};

constexpr Direction opposite(Direction d) {
  switch (d) {
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
    case Direction::Left: return Direction::Right;
    case Direction::Right: return Direction::Left;
  }
  return Direction::Up;  // unreachable
}

constexpr Axis axis_of(Direction d) {
  return (d == Direction::Up || d == Direction::Down) ? Axis::Vertical
                                                      : Axis::Horizontal;
}

// The two directions that run along an axis, in the fixed kDirections order.
constexpr std::array<Direction, 2> directions_of(Axis a) {
  return a == Axis::Vertical
             ? std::array<Direction, 2>{Direction::Up, Direction::Down}
             : std::array<Direction, 2>{Direction::Left, Direction::Right};
}

constexpr GridVertex step(GridVertex v, Direction d) {
  switch (d) {
    case Direction::Up: return {v.x, v.y + 1};
    case Direction::Down: return {v.x, v.y - 1};
    case Direction::Left: return {v.x - 1, v.y};
    case Direction::Right: return {v.x + 1, v.y};
  }
  return v;  // unreachable
}

const char* direction_name(Direction d);
const char* axis_name(Axis a);

// A run of `length + 1` grid vertices starting at `origin` and advancing
// `length` unit steps in `direction`. length == 0 is the single vertex.
struct StraightPath {
  GridVertex origin;
  Direction direction = Direction::Right;
  int length = 0;

  GridVertex endpoint() const;
  std::vector<GridVertex> vertices() const;
  bool contains(GridVertex v) const;
  friend bool operator==(const StraightPath&, const StraightPath&) = default;
};

// Sentinel for bfs_distance when no path exists.
inline constexpr int kUnreachable = -1;

// A hole-free, connected induced subgrid: the discretization of a simple
// polygon. Vertices are the '.' cells of an ASCII map; edges are implied
// between every axis-adjacent pair of present vertices. Immutable after
// construction.
class DiscretizedPolygon {
 public:
  // Parses an ASCII map ('.' = vertex, '#' = absent; first text line is the
  // topmost row) and validates connectivity and hole-freeness. Coordinates
  // are normalized so the vertex set's bounding box has its bottom-left at
  // (0,0). Throws Error(InvalidMap) with codes NonRectangular, BadCharacter,
  // EmptyMap, Disconnected, or HasHole; the message names the first offending
  // coordinate in text order (top row first, left to right).
  static DiscretizedPolygon parse_map(const std::string& text);

  // Builds a polygon directly from a vertex set (same validation, same
  // normalization as parse_map). Used by generators and tests.
  static DiscretizedPolygon from_vertices(std::vector<GridVertex> vertices);

  // Emits the canonical ASCII form: height() lines of width() characters,
  // '\n'-terminated, tight bounding box. parse_map(serialize_map()) yields an
  // identical polygon.
  std::string serialize_map() const;

  int width() const { return width_; }
  int height() const { return height_; }
  int vertex_count() const { return static_cast<int>(verts_.size()); }

  bool contains(GridVertex v) const {
    return v.x >= 0 && v.x < width_ && v.y >= 0 && v.y < height_ &&
           present_[cell(v)];
  }

  // Vertices in index order: y ascending, then x ascending.
  const std::vector<GridVertex>& vertices() const { return verts_; }

  // Dense id of a vertex (index into vertices()), or -1 when absent.
  int index_of(GridVertex v) const {
    if (v.x < 0 || v.x >= width_ || v.y < 0 || v.y >= height_) return -1;
    return vert_index_[cell(v)];
  }

  GridVertex vertex_at(int index) const { return verts_[index]; }

  // Number of present orthogonal neighbors of a present vertex.
  int degree(GridVertex v) const;

  // True iff the vertex has degree at most 3. Throws VertexAbsent.
  bool is_boundary(GridVertex v) const;

  // Longest run of present vertices starting at v in direction d; length 0
  // when the d-neighbor is absent. Throws VertexAbsent.
  StraightPath maximal_straight_path(GridVertex v, Direction d) const;

  // Distances from `source` to every vertex (indexed by dense id);
  // kUnreachable entries cannot occur on a valid (connected) polygon but the
  // routine tolerates them for internal use. Throws VertexAbsent.
  std::vector<int> bfs_all(GridVertex source) const;

  // Multi-source variant: distance to the nearest of `sources`.
  std::vector<int> bfs_all_multi(const std::vector<int>& source_ids) const;

 private:
  DiscretizedPolygon() = default;

  int cell(GridVertex v) const { return v.y * width_ + v.x; }
  static DiscretizedPolygon build(int width, int height,
                                  std::vector<uint8_t> present);
  void validate() const;

  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> present_;  // bounding-box bitmap, row-major by cell()
  std::vector<GridVertex> verts_;
  std::vector<int> vert_index_;  // cell -> dense id or -1
};

// Graph distance between two present vertices, or kUnreachable.
// Throws VertexAbsent when either endpoint is missing.
int bfs_distance(const DiscretizedPolygon& polygon, GridVertex u, GridVertex v);

}  // namespace polymapf
