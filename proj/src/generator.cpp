#include "polymapf/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polymapf/params.hpp"
#include "polymapf/reduced_graph.hpp"

namespace polymapf {
namespace {

// Hole-freeness of a bounding-box bitmap: every absent cell must reach the
// padded outside ring through 8-connected absent cells.
bool hole_free(int width, int height, const std::vector<uint8_t>& present,
               std::vector<uint8_t>& visited, std::vector<int>& stack) {
  const int pw = width + 2, ph = height + 2;
  visited.assign(static_cast<size_t>(pw * ph), 0);
  stack.assign(1, 0);
  visited[0] = 1;
  while (!stack.empty()) {
    int cell = stack.back();
    stack.pop_back();
    int px = cell % pw, py = cell / pw;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        int nx = px + dx, ny = py + dy;
        if (nx < 0 || nx >= pw || ny < 0 || ny >= ph) continue;
        int ncell = ny * pw + nx;
        if (visited[static_cast<size_t>(ncell)]) continue;
        int gx = nx - 1, gy = ny - 1;
        if (gx >= 0 && gx < width && gy >= 0 && gy < height &&
            present[static_cast<size_t>(gy * width + gx)]) {
          continue;
        }
        visited[static_cast<size_t>(ncell)] = 1;
        stack.push_back(ncell);
      }
    }
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!present[static_cast<size_t>(y * width + x)] &&
          !visited[static_cast<size_t>((y + 1) * (width + 2) + (x + 1))]) {
        return false;
      }
    }
  }
  return true;
}

std::vector<GridVertex> cells_to_vertices(int width, int height,
                                          const std::vector<uint8_t>& present) {
  std::vector<GridVertex> out;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (present[static_cast<size_t>(y * width + x)]) out.push_back({x, y});
    }
  }
  return out;
}

// First `k` entries of a raw-modulo partial shuffle of 0..n-1.
std::vector<int> sample_distinct(std::mt19937_64& rng, int n, int k) {
  std::vector<int> ids(static_cast<size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  for (int j = 0; j < k; ++j) {
    int pick = j + static_cast<int>(rng() % static_cast<uint64_t>(n - j));
    std::swap(ids[static_cast<size_t>(j)], ids[static_cast<size_t>(pick)]);
  }
  ids.resize(static_cast<size_t>(k));
  return ids;
}

}  // namespace

DiscretizedPolygon random_polyomino(std::mt19937_64& rng, int width,
                                    int height, double fill) {
  if (width < 1 || height < 1) {
    raise(ErrorKind::InvalidArgument, "BadSize",
          "polyomino box must be at least 1x1");
  }
  if (!(fill > 0.0) || fill > 1.0) {
    raise(ErrorKind::InvalidArgument, "BadFill",
          "fill must lie in (0, 1]");
  }
  const int cells = width * height;
  const int target = std::clamp(
      static_cast<int>(std::llround(fill * cells)), 1, cells);
  if (target == cells) {
    std::vector<uint8_t> all(static_cast<size_t>(cells), 1);
    return DiscretizedPolygon::from_vertices(
        cells_to_vertices(width, height, all));
  }

  std::vector<uint8_t> present(static_cast<size_t>(cells));
  std::vector<uint8_t> in_pool(static_cast<size_t>(cells));
  std::vector<uint8_t> visited;
  std::vector<int> stack;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::fill(present.begin(), present.end(), 0);
    std::fill(in_pool.begin(), in_pool.end(), 0);
    std::vector<int> pool;
    int count = 0;
    auto add_cell = [&](int cell) {
      present[static_cast<size_t>(cell)] = 1;
      ++count;
      int x = cell % width, y = cell / width;
      const int nbs[4][2] = {{x, y + 1}, {x, y - 1}, {x - 1, y}, {x + 1, y}};
      for (const auto& nb : nbs) {
        if (nb[0] < 0 || nb[0] >= width || nb[1] < 0 || nb[1] >= height) {
          continue;
        }
        int ncell = nb[1] * width + nb[0];
        if (!present[static_cast<size_t>(ncell)] &&
            !in_pool[static_cast<size_t>(ncell)]) {
          in_pool[static_cast<size_t>(ncell)] = 1;
          pool.push_back(ncell);
        }
      }
    };
    add_cell(static_cast<int>(rng() % static_cast<uint64_t>(cells)));
    // Frontier cells whose addition would momentarily pinch off a hole go
    // to `deferred` instead of being dropped: they often become safe once
    // the surrounding area fills in, so every success re-enables them.
    std::vector<int> deferred;
    while (count < target && !pool.empty()) {
      size_t i = static_cast<size_t>(rng() % pool.size());
      int cell = pool[i];
      pool[i] = pool.back();
      pool.pop_back();
      present[static_cast<size_t>(cell)] = 1;
      const bool ok = hole_free(width, height, present, visited, stack);
      present[static_cast<size_t>(cell)] = 0;
      if (ok) {
        add_cell(cell);
        pool.insert(pool.end(), deferred.begin(), deferred.end());
        deferred.clear();
      } else {
        deferred.push_back(cell);
      }
    }
    if (count == target) {
      return DiscretizedPolygon::from_vertices(
          cells_to_vertices(width, height, present));
    }
  }
  raise(ErrorKind::ResourceCap, "GenerationExhausted",
        "polyomino growth stalled in 64 consecutive attempts");
}

Instance generate_random(uint64_t seed, int width, int height, double fill,
                         int k) {
  if (k < 1) {
    raise(ErrorKind::InvalidArgument, "BadRobotCount",
          "generation requires k >= 1");
  }
  std::mt19937_64 rng(seed);
  DiscretizedPolygon poly = random_polyomino(rng, width, height, fill);
  const int n = poly.vertex_count();
  if (k > n) {
    raise(ErrorKind::ResourceCap, "GenerationExhausted",
          "cannot place " + std::to_string(k) + " robots on " +
              std::to_string(n) + " vertices");
  }
  std::vector<int> starts = sample_distinct(rng, n, k);
  std::vector<int> targets = sample_distinct(rng, n, k);

  Instance inst;
  inst.graph = std::make_shared<ReducedGraph>(
      std::make_shared<const DiscretizedPolygon>(std::move(poly)));
  for (int j = 0; j < k; ++j) {
    const DiscretizedPolygon& base = inst.graph->base();
    inst.robots.push_back({j, base.vertex_at(starts[static_cast<size_t>(j)]),
                           base.vertex_at(targets[static_cast<size_t>(j)])});
  }
  inst.params = compute_default_params(k, 1.0);
  return inst;
}

std::pair<DiscretizedPolygon, std::vector<GridVertex>> campaign_fixture(
    uint64_t seed, int max_size, int max_terminals) {
  if (max_size < 1 || max_terminals < 1) {
    raise(ErrorKind::InvalidArgument, "BadSize",
          "campaign fixtures need max_size >= 1 and max_terminals >= 1");
  }
  std::mt19937_64 rng(seed);
  int width = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_size));
  int height = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_size));
  double fill = 0.4 + 0.6 * (static_cast<double>(rng() % 1000) / 999.0);
  DiscretizedPolygon poly = random_polyomino(rng, width, height, fill);
  int want =
      1 + static_cast<int>(rng() % static_cast<uint64_t>(max_terminals));
  want = std::min(want, poly.vertex_count());
  std::vector<GridVertex> terminals;
  for (int id : sample_distinct(rng, poly.vertex_count(), want)) {
    terminals.push_back(poly.vertex_at(id));
  }
  return {std::move(poly), std::move(terminals)};
}

}  // namespace polymapf
