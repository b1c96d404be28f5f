#include "polymapf/grid.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace polymapf {

namespace {

std::string coord_str(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

std::string coord_str(GridVertex v) { return coord_str(v.x, v.y); }

}  // namespace

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::Left: return "left";
    case Direction::Right: return "right";
  }
  return "?";
}

const char* axis_name(Axis a) {
  return a == Axis::Vertical ? "vertical" : "horizontal";
}

GridVertex StraightPath::endpoint() const {
  GridVertex v = origin;
  switch (direction) {
    case Direction::Up: v.y += length; break;
    case Direction::Down: v.y -= length; break;
    case Direction::Left: v.x -= length; break;
    case Direction::Right: v.x += length; break;
  }
  return v;
}

std::vector<GridVertex> StraightPath::vertices() const {
  std::vector<GridVertex> out;
  out.reserve(length + 1);
  GridVertex v = origin;
  out.push_back(v);
  for (int i = 0; i < length; ++i) {
    v = step(v, direction);
    out.push_back(v);
  }
  return out;
}

bool StraightPath::contains(GridVertex v) const {
  GridVertex e = endpoint();
  int lo_x = std::min(origin.x, e.x), hi_x = std::max(origin.x, e.x);
  int lo_y = std::min(origin.y, e.y), hi_y = std::max(origin.y, e.y);
  return v.x >= lo_x && v.x <= hi_x && v.y >= lo_y && v.y <= hi_y;
}

DiscretizedPolygon DiscretizedPolygon::parse_map(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(current);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines[0].empty()) {
    raise(ErrorKind::InvalidMap, "EmptyMap", "map text contains no cells");
  }

  const int height = static_cast<int>(lines.size());
  const int width = static_cast<int>(lines[0].size());
  for (int row = 0; row < height; ++row) {
    if (static_cast<int>(lines[row].size()) != width) {
      raise(ErrorKind::InvalidMap, "NonRectangular",
            "line " + std::to_string(row) + " has length " +
                std::to_string(lines[row].size()) + ", expected " +
                std::to_string(width));
    }
    for (int col = 0; col < width; ++col) {
      char ch = lines[row][col];
      if (ch != '.' && ch != '#') {
        raise(ErrorKind::InvalidMap, "BadCharacter",
              std::string("unexpected character '") + ch + "' at " +
                  coord_str(col, height - 1 - row));
      }
    }
  }

  // Text row r maps to grid row y = height-1-r (first line is topmost).
  std::vector<uint8_t> present(static_cast<size_t>(width) * height, 0);
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      if (lines[row][col] == '.') {
        present[static_cast<size_t>(height - 1 - row) * width + col] = 1;
      }
    }
  }
  return build(width, height, std::move(present));
}

DiscretizedPolygon DiscretizedPolygon::from_vertices(
    std::vector<GridVertex> vertices) {
  if (vertices.empty()) {
    raise(ErrorKind::InvalidMap, "EmptyMap", "vertex set is empty");
  }
  int min_x = std::numeric_limits<int>::max(), min_y = min_x;
  int max_x = std::numeric_limits<int>::min(), max_y = max_x;
  for (const GridVertex& v : vertices) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  const int width = max_x - min_x + 1;
  const int height = max_y - min_y + 1;
  std::vector<uint8_t> present(static_cast<size_t>(width) * height, 0);
  for (const GridVertex& v : vertices) {
    present[static_cast<size_t>(v.y - min_y) * width + (v.x - min_x)] = 1;
  }
  return build(width, height, std::move(present));
}

DiscretizedPolygon DiscretizedPolygon::build(int width, int height,
                                             std::vector<uint8_t> present) {
  // Normalize: trim empty border rows/columns so (0,0) is the bottom-left of
  // the vertex set's bounding box.
  int min_x = width, max_x = -1, min_y = height, max_y = -1;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (present[static_cast<size_t>(y) * width + x]) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
      }
    }
  }
  if (max_x < 0) {
    raise(ErrorKind::InvalidMap, "EmptyMap", "map has no '.' cells");
  }

  DiscretizedPolygon p;
  p.width_ = max_x - min_x + 1;
  p.height_ = max_y - min_y + 1;
  p.present_.assign(static_cast<size_t>(p.width_) * p.height_, 0);
  for (int y = min_y; y <= max_y; ++y) {
    for (int x = min_x; x <= max_x; ++x) {
      if (present[static_cast<size_t>(y) * width + x]) {
        p.present_[static_cast<size_t>(y - min_y) * p.width_ + (x - min_x)] = 1;
      }
    }
  }

  p.vert_index_.assign(p.present_.size(), -1);
  for (int y = 0; y < p.height_; ++y) {
    for (int x = 0; x < p.width_; ++x) {
      int c = y * p.width_ + x;
      if (p.present_[c]) {
        p.vert_index_[c] = static_cast<int>(p.verts_.size());
        p.verts_.push_back({x, y});
      }
    }
  }

  p.validate();
  return p;
}

void DiscretizedPolygon::validate() const {
  // Scan order for error reporting: text order (top row first, left to
  // right), matching the way a reader sees the map.
  auto text_order_first = [&](const std::vector<uint8_t>& flagged,
                              bool want) -> GridVertex {
    for (int y = height_ - 1; y >= 0; --y) {
      for (int x = 0; x < width_; ++x) {
        int c = y * width_ + x;
        if (present_[c] == want && !flagged[c]) return {x, y};
      }
    }
    return {-1, -1};
  };

  // Connectivity of present vertices (4-neighborhood).
  {
    std::vector<uint8_t> seen(present_.size(), 0);
    std::deque<GridVertex> queue;
    GridVertex first = text_order_first(seen, 1);
    seen[cell(first)] = 1;
    queue.push_back(first);
    size_t reached = 1;
    while (!queue.empty()) {
      GridVertex v = queue.front();
      queue.pop_front();
      for (Direction d : kDirections) {
        GridVertex w = step(v, d);
        if (!contains(w) || seen[cell(w)]) continue;
        seen[cell(w)] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
    if (reached != verts_.size()) {
      GridVertex bad = text_order_first(seen, 1);
      raise(ErrorKind::InvalidMap, "Disconnected",
            "vertex " + coord_str(bad) + " is not connected to " +
                coord_str(first));
    }
  }

  // Hole-freeness: every absent cell of the padded bounding box must reach
  // the outer face. Absent cells are connected with the 8-neighborhood: the
  // complement of a 4-connected region is topologically 8-connected, and this
  // pairing is what makes the check agree with face counting (each bounded
  // face of the induced subgrid is a unit square iff there is no hole).
  {
    const int pw = width_ + 2, ph = height_ + 2;
    auto padded_absent = [&](int px, int py) {
      int x = px - 1, y = py - 1;
      if (x < 0 || x >= width_ || y < 0 || y >= height_) return true;
      return !present_[static_cast<size_t>(y) * width_ + x];
    };
    std::vector<uint8_t> outside(static_cast<size_t>(pw) * ph, 0);
    std::deque<std::pair<int, int>> queue;
    outside[0] = 1;
    queue.emplace_back(0, 0);
    while (!queue.empty()) {
      auto [px, py] = queue.front();
      queue.pop_front();
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          int nx = px + dx, ny = py + dy;
          if (nx < 0 || nx >= pw || ny < 0 || ny >= ph) continue;
          size_t idx = static_cast<size_t>(ny) * pw + nx;
          if (outside[idx] || !padded_absent(nx, ny)) continue;
          outside[idx] = 1;
          queue.emplace_back(nx, ny);
        }
      }
    }
    for (int y = height_ - 1; y >= 0; --y) {
      for (int x = 0; x < width_; ++x) {
        if (present_[static_cast<size_t>(y) * width_ + x]) continue;
        if (!outside[static_cast<size_t>(y + 1) * pw + (x + 1)]) {
          raise(ErrorKind::InvalidMap, "HasHole",
                "absent cell " + coord_str(x, y) +
                    " is enclosed by the polygon");
        }
      }
    }
  }
}

std::string DiscretizedPolygon::serialize_map() const {
  std::string out;
  out.reserve(static_cast<size_t>(height_) * (width_ + 1));
  for (int y = height_ - 1; y >= 0; --y) {
    for (int x = 0; x < width_; ++x) {
      out.push_back(present_[static_cast<size_t>(y) * width_ + x] ? '.' : '#');
    }
    out.push_back('\n');
  }
  return out;
}

int DiscretizedPolygon::degree(GridVertex v) const {
  int deg = 0;
  for (Direction d : kDirections) {
    if (contains(step(v, d))) ++deg;
  }
  return deg;
}

bool DiscretizedPolygon::is_boundary(GridVertex v) const {
  if (!contains(v)) {
    raise(ErrorKind::InvalidArgument, "VertexAbsent",
          "no vertex at " + coord_str(v));
  }
  return degree(v) <= 3;
}

StraightPath DiscretizedPolygon::maximal_straight_path(GridVertex v,
                                                       Direction d) const {
  if (!contains(v)) {
    raise(ErrorKind::InvalidArgument, "VertexAbsent",
          "no vertex at " + coord_str(v));
  }
  StraightPath path{v, d, 0};
  GridVertex cursor = v;
  while (contains(step(cursor, d))) {
    cursor = step(cursor, d);
    ++path.length;
  }
  return path;
}

std::vector<int> DiscretizedPolygon::bfs_all(GridVertex source) const {
  if (!contains(source)) {
    raise(ErrorKind::InvalidArgument, "VertexAbsent",
          "no vertex at " + coord_str(source));
  }
  return bfs_all_multi({index_of(source)});
}

std::vector<int> DiscretizedPolygon::bfs_all_multi(
    const std::vector<int>& source_ids) const {
  std::vector<int> dist(verts_.size(), kUnreachable);
  std::deque<int> queue;
  for (int id : source_ids) {
    if (dist[id] == kUnreachable) {
      dist[id] = 0;
      queue.push_back(id);
    }
  }
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    GridVertex v = verts_[id];
    for (Direction d : kDirections) {
      GridVertex w = step(v, d);
      if (!contains(w)) continue;
      int wid = vert_index_[cell(w)];
      if (dist[wid] != kUnreachable) continue;
      dist[wid] = dist[id] + 1;
      queue.push_back(wid);
    }
  }
  return dist;
}

int bfs_distance(const DiscretizedPolygon& polygon, GridVertex u,
                 GridVertex v) {
  if (!polygon.contains(v)) {
    raise(ErrorKind::InvalidArgument, "VertexAbsent",
          "no vertex at " + coord_str(v));
  }
  std::vector<int> dist = polygon.bfs_all(u);
  return dist[polygon.index_of(v)];
}

}  // namespace polymapf
