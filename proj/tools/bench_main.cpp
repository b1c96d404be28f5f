#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <memory>

#include "polymapf/generator.hpp"
#include "polymapf/reduction.hpp"
#include "polymapf/sectors.hpp"

namespace {

using namespace polymapf;
using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

// Cheap structural fingerprint for cross-checking the two policies.
std::string fingerprint(const SectorGraph& sg) {
  std::string out;
  for (const Sector& s : sg.sectors()) {
    out += std::to_string(s.id) + ':';
    out += s.kind.has_value() ? sector_kind_name(*s.kind) : "?";
    out += s.clean ? "+c" : "-c";
    out += 'b' + std::to_string(s.baselines.size());
    out += 'v' + std::to_string(s.vertex_ids.size());
    out += ';';
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel timing for the decomposition and "
               "reduction kernels"};
  uint64_t seed = 1;
  int count = 10, max_size = 40, max_terminals = 3;
  app.add_option("--seed", seed, "Base seed");
  app.add_option("--count", count, "Number of fixtures");
  app.add_option("--max-size", max_size, "Max bounding-box side");
  app.add_option("--terminals", max_terminals, "Max terminals per fixture");
  CLI11_PARSE(app, argc, argv);

  std::cout << "workers available: " << worker_count() << "\n";
  double total_serial = 0.0, total_parallel = 0.0;
  double reduce_serial = 0.0, reduce_parallel = 0.0;
  bool all_equal = true;

  for (int i = 0; i < count; ++i) {
    auto [poly, terminals] =
        campaign_fixture(seed + static_cast<uint64_t>(i), max_size,
                         max_terminals);
    auto shared =
        std::make_shared<const DiscretizedPolygon>(std::move(poly));

    auto t0 = clock_type::now();
    SectorGraph serial_graph =
        compute_sectors(shared, terminals, ExecPolicy::Serial);
    double serial_ms = ms_since(t0);

    t0 = clock_type::now();
    SectorGraph parallel_graph =
        compute_sectors(shared, terminals, ExecPolicy::Parallel);
    double parallel_ms = ms_since(t0);

    bool equal = fingerprint(serial_graph) == fingerprint(parallel_graph);
    all_equal = all_equal && equal;
    total_serial += serial_ms;
    total_parallel += parallel_ms;

    double red_serial_ms = 0.0, red_parallel_ms = 0.0;
    if (terminals.size() % 2 == 0) {
      Instance inst;
      inst.graph = std::make_shared<ReducedGraph>(shared);
      for (size_t j = 0; j + 1 < terminals.size(); j += 2) {
        inst.robots.push_back({static_cast<int>(j / 2), terminals[j],
                               terminals[j + 1]});
      }
      inst.params = compute_default_params(inst.k(), 1.0);

      t0 = clock_type::now();
      ReduceResult rs = reduce_all(inst, ExecPolicy::Serial);
      red_serial_ms = ms_since(t0);

      t0 = clock_type::now();
      ReduceResult rp = reduce_all(inst, ExecPolicy::Parallel);
      red_parallel_ms = ms_since(t0);

      bool red_equal = *rs.reduced.graph == *rp.reduced.graph &&
                       rs.trace == rp.trace;
      all_equal = all_equal && red_equal;
      reduce_serial += red_serial_ms;
      reduce_parallel += red_parallel_ms;
    }

    std::cout << "fixture " << i << " (" << shared->vertex_count()
              << " vertices, " << terminals.size()
              << " terminals): sectors " << serial_ms << "ms serial / "
              << parallel_ms << "ms parallel";
    if (terminals.size() % 2 == 0) {
      std::cout << "; reduce " << red_serial_ms << "ms serial / "
                << red_parallel_ms << "ms parallel";
    }
    std::cout << (equal ? "" : "  [MISMATCH]") << "\n";
  }

  std::cout << "totals: sectors " << total_serial << "ms serial / "
            << total_parallel << "ms parallel; reduce " << reduce_serial
            << "ms serial / " << reduce_parallel << "ms parallel\n";
  std::cout << "results identical: " << (all_equal ? "yes" : "NO") << "\n";
  return all_equal ? 0 : 1;
}
