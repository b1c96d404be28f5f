#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "polymapf/checks.hpp"
#include "polymapf/generator.hpp"
#include "polymapf/reduction.hpp"
#include "polymapf/render.hpp"
#include "polymapf/solver.hpp"

namespace {

using namespace polymapf;

int exit_code_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return 1;
    case ErrorKind::InvalidMap: return 2;
    case ErrorKind::InvalidInstance: return 2;
    case ErrorKind::ResourceCap: return 3;
    case ErrorKind::InvariantViolation: return 4;
  }
  return 1;
}

std::string read_input(const std::string& arg) {
  std::ostringstream buf;
  if (arg == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(arg, std::ios::binary);
  if (!in) {
    raise(ErrorKind::InvalidArgument, "FileNotFound",
          "cannot open '" + arg + "'");
  }
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_inline_map(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c != '.' && c != '#' && c != '\n') return false;
  }
  return true;
}

// --map values are inline when they contain only map characters, otherwise
// they are treated as a path ('-' = standard input).
std::string load_map_text(const std::string& arg) {
  return looks_like_inline_map(arg) ? arg : read_input(arg);
}

std::vector<GridVertex> parse_terminal_specs(
    const std::vector<std::string>& specs) {
  std::vector<GridVertex> out;
  for (const std::string& spec : specs) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
      int x = 0, y = 0;
      char comma = 0;
      std::stringstream pair(item);
      if (!(pair >> x >> comma >> y) || comma != ',') {
        raise(ErrorKind::InvalidArgument, "BadTerminal",
              "terminal '" + item + "' is not of the form x,y");
      }
      out.push_back({x, y});
    }
  }
  return out;
}

mpz_class parse_mpz_arg(const std::string& text, const std::string& flag) {
  try {
    mpz_class v(text);
    if (v < 0) {
      raise(ErrorKind::InvalidArgument, "BadNumber",
            flag + " must be non-negative");
    }
    return v;
  } catch (const std::invalid_argument&) {
    raise(ErrorKind::InvalidArgument, "BadNumber",
          "'" + text + "' is not an integer (" + flag + ")");
  }
}

ordered_json sector_graph_to_json(const SectorGraph& sg) {
  const DiscretizedPolygon& poly = sg.polygon();
  ordered_json ports = ordered_json::array();
  for (const Port& p : sg.ports()) {
    ports.push_back(ordered_json{
        {"anchor", ordered_json::array({p.anchor.x, p.anchor.y})},
        {"axis", axis_name(p.axis)}});
  }
  ordered_json sectors = ordered_json::array();
  for (const Sector& s : sg.sectors()) {
    ordered_json bv = ordered_json::array();
    for (int b : s.bend_vector) {
      if (b == kInfiniteBend) {
        bv.push_back("inf");
      } else {
        bv.push_back(b);
      }
    }
    ordered_json vertices = ordered_json::array();
    for (int id : s.vertex_ids) {
      GridVertex v = poly.vertex_at(id);
      vertices.push_back(ordered_json::array({v.x, v.y}));
    }
    ordered_json baselines = ordered_json::array();
    for (const Baseline& b : s.baselines) {
      baselines.push_back(ordered_json{
          {"origin",
           ordered_json::array({b.path.origin.x, b.path.origin.y})},
          {"path_direction", direction_name(b.path.direction)},
          {"length", b.path.length},
          {"covers", direction_name(b.direction)}});
    }
    sectors.push_back(ordered_json{
        {"id", s.id},
        {"kind",
         s.kind.has_value() ? ordered_json(sector_kind_name(*s.kind))
                            : ordered_json(nullptr)},
        {"bend_vector", bv},
        {"clean", s.clean},
        {"vertices", vertices},
        {"baselines", baselines},
        {"neighbors", sg.neighbors(s.id)}});
  }
  return ordered_json{{"ports", ports}, {"sectors", sectors}};
}

void emit(const std::string& text) {
  std::cout << text;
  if (text.empty() || text.back() != '\n') std::cout << '\n';
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sector decomposition, graph reduction, and exact solving "
               "for coordinated motion planning on grid polygons"};
  app.require_subcommand(1);
  std::function<int()> action;

  // --- validate-map ---
  auto* c_validate = app.add_subcommand(
      "validate-map", "Parse and validate an ASCII polygon map");
  std::string vm_map;
  c_validate->add_option("--map", vm_map, "Map text, file path, or '-'")
      ->required();
  c_validate->callback([&]() {
    action = [&]() -> int {
      try {
        DiscretizedPolygon poly =
            DiscretizedPolygon::parse_map(load_map_text(vm_map));
        emit(ordered_json{{"valid", true},
                          {"width", poly.width()},
                          {"height", poly.height()},
                          {"vertices", poly.vertex_count()}});
        return 0;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidMap) throw;
        emit(ordered_json{{"valid", false},
                          {"code", e.code()},
                          {"message", e.what()}});
        return 2;
      }
    };
  });

  // --- decompose ---
  auto* c_decompose = app.add_subcommand(
      "decompose", "Compute the sector decomposition of a polygon");
  std::string dc_map, dc_instance, dc_format = "json";
  std::vector<std::string> dc_terminals;
  bool dc_serial = false;
  c_decompose->add_option("--map", dc_map, "Map text, file path, or '-'");
  c_decompose->add_option("--instance", dc_instance,
                          "Instance JSON path or '-'");
  c_decompose->add_option("--terminals", dc_terminals,
                          "Terminal 'x,y' (repeatable; ';'-separated)");
  c_decompose->add_option("--format", dc_format, "Output format")
      ->check(CLI::IsMember({"json", "ascii", "dot", "svg"}));
  c_decompose->add_flag("--serial", dc_serial, "Disable parallel kernels");
  c_decompose->callback([&]() {
    action = [&]() -> int {
      std::shared_ptr<const DiscretizedPolygon> poly;
      std::vector<GridVertex> terminals;
      if (!dc_map.empty() == !dc_instance.empty()) {
        raise(ErrorKind::InvalidArgument, "BadArguments",
              "decompose needs exactly one of --map / --instance");
      }
      if (!dc_map.empty()) {
        poly = std::make_shared<const DiscretizedPolygon>(
            DiscretizedPolygon::parse_map(load_map_text(dc_map)));
        terminals = parse_terminal_specs(dc_terminals);
        if (terminals.empty()) {
          raise(ErrorKind::InvalidArgument, "BadArguments",
                "decompose --map requires --terminals");
        }
      } else {
        Instance inst = parse_instance(read_input(dc_instance));
        poly = inst.graph->base_ptr();
        terminals = dc_terminals.empty() ? inst.terminals()
                                         : parse_terminal_specs(dc_terminals);
      }
      ExecPolicy policy =
          dc_serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
      SectorGraph sg = compute_sectors(poly, terminals, policy);
      if (dc_format == "ascii") {
        emit(render_sector_overlay_ascii(sg));
      } else if (dc_format == "dot") {
        emit(render_sector_graph_dot(sg));
      } else if (dc_format == "svg") {
        emit(render_sectors_svg(sg));
      } else {
        emit(sector_graph_to_json(sg));
      }
      return 0;
    };
  });

  // --- reduce ---
  auto* c_reduce = app.add_subcommand(
      "reduce", "Apply the reduction rules to an instance");
  std::string rd_instance, rd_lambda, rd_mu;
  bool rd_serial = false;
  c_reduce->add_option("--instance", rd_instance, "Instance JSON path or '-'")
      ->required();
  c_reduce->add_option("--lambda", rd_lambda, "Override lambda");
  c_reduce->add_option("--mu", rd_mu, "Override mu");
  c_reduce->add_flag("--serial", rd_serial, "Disable parallel kernels");
  c_reduce->callback([&]() {
    action = [&]() -> int {
      Instance inst = parse_instance(read_input(rd_instance));
      if (!rd_lambda.empty()) {
        inst.params.override_lambda(parse_mpz_arg(rd_lambda, "--lambda"));
      }
      if (!rd_mu.empty()) {
        inst.params.override_mu(parse_mpz_arg(rd_mu, "--mu"));
      }
      ReduceResult rr = reduce_all(
          inst, rd_serial ? ExecPolicy::Serial : ExecPolicy::Parallel);
      ordered_json skips = ordered_json::array();
      for (const SkipRecord& s : rr.skips) {
        skips.push_back(ordered_json{
            {"rule", s.rule.has_value()
                         ? ordered_json(reduction_rule_name(*s.rule))
                         : ordered_json(nullptr)},
            {"sector", s.sector_id},
            {"reason", s.reason}});
      }
      emit(ordered_json{
          {"instance", ordered_json::parse(serialize_instance(rr.reduced))},
          {"trace", trace_to_json(rr.trace)},
          {"skips", skips}});
      return 0;
    };
  });

  // --- solve ---
  auto* c_solve =
      app.add_subcommand("solve", "Exact sum-of-costs search");
  std::string sv_instance;
  long long sv_budget = -1;
  bool sv_budget_set = false, sv_decide = false;
  long long sv_state_cap = 0;
  double sv_time_cap = 0.0;
  c_solve->add_option("--instance", sv_instance, "Instance JSON path or '-'")
      ->required();
  c_solve->add_option("--budget", sv_budget, "Override the cost budget")
      ->check(CLI::NonNegativeNumber);
  c_solve->add_flag("--decide", sv_decide,
                    "Answer the budget decision question");
  c_solve->add_option("--state-cap", sv_state_cap,
                      "Max stored joint states");
  c_solve->add_option("--time-cap", sv_time_cap, "Wall-clock cap (seconds)");
  c_solve->callback([&]() {
    sv_budget_set = c_solve->count("--budget") > 0;
    action = [&]() -> int {
      Instance inst = parse_instance(read_input(sv_instance));
      if (sv_budget_set) inst.budget = sv_budget;
      SolveLimits limits;
      if (sv_state_cap > 0) limits.state_cap = sv_state_cap;
      if (sv_time_cap > 0) limits.time_cap_seconds = sv_time_cap;
      if (sv_decide) {
        BudgetDecision d = decide_budget(inst, limits);
        emit(ordered_json{
            {"satisfiable", d.satisfiable},
            {"witness", d.witness.has_value()
                            ? ordered_json::parse(
                                  serialize_schedule(*d.witness))
                            : ordered_json(nullptr)}});
        return d.satisfiable ? 0 : 2;
      }
      OptResult r = solve_optimal(inst, limits);
      emit(ordered_json{
          {"status", solve_status_name(r.status)},
          {"cost", r.cost},
          {"expanded", r.expanded},
          {"schedule", r.schedule.has_value()
                           ? ordered_json::parse(
                                 serialize_schedule(*r.schedule))
                           : ordered_json(nullptr)}});
      switch (r.status) {
        case SolveStatus::Optimal: return 0;
        case SolveStatus::Infeasible: return 2;
        case SolveStatus::BudgetExceeded: return 2;
        case SolveStatus::Timeout: return 3;
      }
      return 0;
    };
  });

  // --- verify-schedule ---
  auto* c_verify = app.add_subcommand(
      "verify-schedule", "Check a schedule against an instance");
  std::string vs_instance, vs_schedule;
  c_verify->add_option("--instance", vs_instance, "Instance JSON path or '-'")
      ->required();
  c_verify->add_option("--schedule", vs_schedule, "Schedule JSON path or '-'")
      ->required();
  c_verify->callback([&]() {
    action = [&]() -> int {
      Instance inst = parse_instance(read_input(vs_instance));
      Schedule sched = parse_schedule(read_input(vs_schedule));
      Verdict v = validate_schedule(inst, sched);
      emit(verdict_to_json(v));
      return v.valid ? 0 : 2;
    };
  });

  // --- check-properties ---
  auto* c_check = app.add_subcommand(
      "check-properties", "Run the structural-lemma suite on random fixtures");
  uint64_t cp_seed = 1;
  int cp_count = 20, cp_max_size = 40, cp_terminals = 3;
  bool cp_serial = false;
  c_check->add_option("--seed", cp_seed, "Base seed");
  c_check->add_option("--count", cp_count, "Number of fixtures")
      ->check(CLI::PositiveNumber);
  c_check->add_option("--max-size", cp_max_size, "Max bounding-box side")
      ->check(CLI::PositiveNumber);
  c_check->add_option("--terminals", cp_terminals, "Max terminals per fixture")
      ->check(CLI::PositiveNumber);
  c_check->add_flag("--serial", cp_serial, "Disable parallel kernels");
  c_check->callback([&]() {
    action = [&]() -> int {
      ExecPolicy policy =
          cp_serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
      ordered_json out = ordered_json::array();
      bool any_violation = false;
      for (int i = 0; i < cp_count; ++i) {
        uint64_t seed = cp_seed + static_cast<uint64_t>(i);
        auto [poly, terminals] =
            campaign_fixture(seed, cp_max_size, cp_terminals);
        ParamSet params = compute_default_params(
            std::max<int>(1, static_cast<int>(terminals.size()) / 2), 1.0);
        auto reports = run_lemma_suite(
            std::make_shared<const DiscretizedPolygon>(std::move(poly)),
            terminals, params, policy);
        for (PropertyReport& rep : reports) {
          rep.extra["seed"] = seed;
          any_violation = any_violation || !rep.passed();
          out.push_back(report_to_json(rep));
        }
      }
      emit(out);
      return any_violation ? 4 : 0;
    };
  });

  // --- render ---
  auto* c_render = app.add_subcommand(
      "render", "Render a map or instance as ASCII or SVG");
  std::string rn_map, rn_instance, rn_format = "ascii";
  c_render->add_option("--map", rn_map, "Map text, file path, or '-'");
  c_render->add_option("--instance", rn_instance,
                       "Instance JSON path or '-'");
  c_render->add_option("--format", rn_format, "Output format")
      ->check(CLI::IsMember({"ascii", "svg"}));
  c_render->callback([&]() {
    action = [&]() -> int {
      if (!rn_map.empty() == !rn_instance.empty()) {
        raise(ErrorKind::InvalidArgument, "BadArguments",
              "render needs exactly one of --map / --instance");
      }
      if (!rn_map.empty()) {
        DiscretizedPolygon poly =
            DiscretizedPolygon::parse_map(load_map_text(rn_map));
        emit(rn_format == "svg" ? render_map_svg(poly)
                                : poly.serialize_map());
      } else {
        Instance inst = parse_instance(read_input(rn_instance));
        emit(rn_format == "svg" ? render_instance_svg(inst)
                                : render_instance_ascii(inst));
      }
      return 0;
    };
  });

  // --- replay ---
  auto* c_replay = app.add_subcommand(
      "replay", "Re-apply a reduction trace and verify it");
  std::string rp_instance, rp_trace;
  c_replay->add_option("--instance", rp_instance,
                       "Original instance JSON path or '-'")
      ->required();
  c_replay->add_option("--trace", rp_trace, "Trace JSON path or '-'")
      ->required();
  c_replay->callback([&]() {
    action = [&]() -> int {
      Instance inst = parse_instance(read_input(rp_instance));
      ReductionTrace trace;
      try {
        trace = trace_from_json(ordered_json::parse(read_input(rp_trace)));
      } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorKind::InvalidArgument, "SchemaError",
              std::string("trace JSON: ") + e.what());
      }
      ReduceResult rr = replay_trace(inst, trace);
      emit(ordered_json{
          {"instance", ordered_json::parse(serialize_instance(rr.reduced))},
          {"trace", trace_to_json(rr.trace)}});
      return 0;
    };
  });

  // --- generate ---
  auto* c_generate = app.add_subcommand(
      "generate", "Generate a random instance");
  uint64_t gn_seed = 1;
  int gn_width = 10, gn_height = 10, gn_k = 1;
  double gn_fill = 0.7;
  c_generate->add_option("--seed", gn_seed, "Seed");
  c_generate->add_option("--width", gn_width, "Bounding-box width")
      ->check(CLI::PositiveNumber);
  c_generate->add_option("--height", gn_height, "Bounding-box height")
      ->check(CLI::PositiveNumber);
  c_generate->add_option("--fill", gn_fill, "Fill factor in (0,1]");
  c_generate->add_option("--k", gn_k, "Number of robots")
      ->check(CLI::PositiveNumber);
  c_generate->callback([&]() {
    action = [&]() -> int {
      Instance inst =
          generate_random(gn_seed, gn_width, gn_height, gn_fill, gn_k);
      emit(ordered_json::parse(serialize_instance(inst)));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "json error: " << e.what() << '\n';
    return 1;
  }
}
