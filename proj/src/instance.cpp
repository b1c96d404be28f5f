#include "polymapf/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace polymapf {

namespace {

bool looks_like_inline_map(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return ch == '.' || ch == '#' || ch == '\n';
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorKind::InvalidInstance, "SchemaError",
          "cannot open map file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GridVertex vertex_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    raise(ErrorKind::InvalidInstance, "SchemaError",
          "expected [x,y] coordinate pair, got " + j.dump());
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

ordered_json vertex_to_json(GridVertex v) {
  return ordered_json::array({v.x, v.y});
}

mpz_class mpz_from_json(const ordered_json& j, const char* field) {
  if (j.is_number_integer()) {
    return mpz_class(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    try {
      return mpz_class(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      // fall through to the schema error below
    }
  }
  raise(ErrorKind::InvalidInstance, "SchemaError",
        std::string(field) + " must be an integer (number or decimal string)");
}

}  // namespace

std::vector<GridVertex> Instance::terminals() const {
  std::vector<GridVertex> out;
  auto push_unique = [&out](GridVertex v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const Robot& r : robots) {
    push_unique(r.start);
    push_unique(r.target);
  }
  return out;
}

const std::vector<NodeRef>* Schedule::route_for(int robot_id) const {
  for (const auto& [id, route] : routes) {
    if (id == robot_id) return &route;
  }
  return nullptr;
}

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::BadStart: return "BadStart";
    case ViolationKind::BadEnd: return "BadEnd";
    case ViolationKind::IllegalMove: return "IllegalMove";
    case ViolationKind::VertexConflict: return "VertexConflict";
    case ViolationKind::SwapConflict: return "SwapConflict";
    case ViolationKind::OverBudget: return "OverBudget";
  }
  return "?";
}

Verdict validate_schedule(const Instance& instance, const Schedule& schedule) {
  const ReducedGraph& g = *instance.graph;
  const long long q = schedule.horizon;
  if (q < 0) {
    raise(ErrorKind::InvalidInstance, "ShapeMismatch", "negative horizon");
  }
  if (schedule.routes.size() != instance.robots.size()) {
    raise(ErrorKind::InvalidInstance, "ShapeMismatch",
          "schedule has " + std::to_string(schedule.routes.size()) +
              " routes for " + std::to_string(instance.robots.size()) +
              " robots");
  }

  // Resolve each robot's route to node ids up front.
  std::vector<std::vector<int>> paths(instance.robots.size());
  for (size_t i = 0; i < instance.robots.size(); ++i) {
    const Robot& robot = instance.robots[i];
    const std::vector<NodeRef>* route = schedule.route_for(robot.id);
    if (route == nullptr || static_cast<long long>(route->size()) != q + 1) {
      raise(ErrorKind::InvalidInstance, "ShapeMismatch",
            "robot " + std::to_string(robot.id) +
                " needs a route of length horizon+1");
    }
    paths[i].reserve(route->size());
    for (const NodeRef& ref : *route) {
      paths[i].push_back(g.node_of(ref));  // -1 marks an off-graph position
    }
  }

  auto fail = [](ViolationKind kind, long long time,
                 std::vector<int> robots) -> Verdict {
    Verdict v;
    v.valid = false;
    v.violation = ScheduleViolation{kind, time, std::move(robots)};
    return v;
  };

  for (size_t i = 0; i < instance.robots.size(); ++i) {
    const Robot& robot = instance.robots[i];
    if (paths[i][0] != g.node_of_grid(robot.start) || paths[i][0] < 0) {
      return fail(ViolationKind::BadStart, 0, {robot.id});
    }
  }
  for (size_t i = 0; i < instance.robots.size(); ++i) {
    const Robot& robot = instance.robots[i];
    if (paths[i][q] != g.node_of_grid(robot.target) || paths[i][q] < 0) {
      return fail(ViolationKind::BadEnd, q, {robot.id});
    }
  }

  for (long long t = 0; t < q; ++t) {
    for (size_t i = 0; i < paths.size(); ++i) {
      int from = paths[i][t];
      int to = paths[i][t + 1];
      if (from < 0 || to < 0) {
        return fail(ViolationKind::IllegalMove, t + 1,
                    {instance.robots[i].id});
      }
      if (from == to) continue;
      const std::vector<int>& nb = g.neighbors(from);
      if (std::find(nb.begin(), nb.end(), to) == nb.end()) {
        return fail(ViolationKind::IllegalMove, t + 1,
                    {instance.robots[i].id});
      }
    }
  }

  for (long long t = 0; t <= q; ++t) {
    for (size_t i = 0; i < paths.size(); ++i) {
      for (size_t j = i + 1; j < paths.size(); ++j) {
        if (paths[i][t] == paths[j][t]) {
          return fail(ViolationKind::VertexConflict, t,
                      {instance.robots[i].id, instance.robots[j].id});
        }
      }
    }
    if (t == 0) continue;
    for (size_t i = 0; i < paths.size(); ++i) {
      for (size_t j = i + 1; j < paths.size(); ++j) {
        if (paths[i][t] == paths[j][t - 1] && paths[j][t] == paths[i][t - 1] &&
            paths[i][t] != paths[i][t - 1]) {
          return fail(ViolationKind::SwapConflict, t,
                      {instance.robots[i].id, instance.robots[j].id});
        }
      }
    }
  }

  long long cost = 0;
  for (const std::vector<int>& path : paths) {
    for (long long t = 0; t < q; ++t) {
      if (path[t] != path[t + 1]) ++cost;
    }
  }
  if (instance.budget && cost > *instance.budget) {
    Verdict v = fail(ViolationKind::OverBudget, q, {});
    v.cost = cost;
    return v;
  }

  Verdict v;
  v.valid = true;
  v.cost = cost;
  return v;
}

ordered_json node_ref_to_json(const NodeRef& ref) {
  if (ref.is_weave) {
    return ordered_json::array({"w", ref.gadget_id, ref.weave_index});
  }
  return vertex_to_json(ref.grid);
}

NodeRef node_ref_from_json(const ordered_json& j) {
  if (j.is_array() && j.size() == 3 && j[0].is_string() &&
      j[0].get<std::string>() == "w") {
    return NodeRef::of_weave(j[1].get<int>(), j[2].get<int>());
  }
  return NodeRef::of(vertex_from_json(j));
}

ordered_json mpz_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) {
    return ordered_json(v.get_si());
  }
  return ordered_json(mpz_str(v));
}

Instance parse_instance(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorKind::InvalidInstance, "SchemaError",
          std::string("instance is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("map") || !j.contains("robots")) {
    raise(ErrorKind::InvalidInstance, "SchemaError",
          "instance JSON needs 'map' and 'robots' members");
  }
  if (!j["map"].is_string()) {
    raise(ErrorKind::InvalidInstance, "SchemaError", "'map' must be a string");
  }
  std::string map_text = j["map"].get<std::string>();
  if (!looks_like_inline_map(map_text)) {
    map_text = read_file(map_text);
  }
  auto polygon = std::make_shared<const DiscretizedPolygon>(
      DiscretizedPolygon::parse_map(map_text));
  auto graph = std::make_shared<ReducedGraph>(polygon);

  if (j.contains("removed")) {
    std::vector<GridVertex> removed;
    for (const auto& rj : j["removed"]) {
      removed.push_back(vertex_from_json(rj));
    }
    graph->remove_grid_vertices(removed);
  }
  if (j.contains("gadgets")) {
    for (const auto& gj : j["gadgets"]) {
      if (!gj.contains("a") || !gj.contains("b") ||
          !gj.contains("interior_length")) {
        raise(ErrorKind::InvalidInstance, "SchemaError",
              "gadget needs 'a', 'b', 'interior_length'");
      }
      graph->add_gadget(vertex_from_json(gj["a"]), vertex_from_json(gj["b"]),
                        gj["interior_length"].get<int>());
    }
  }

  Instance inst;
  inst.graph = std::move(graph);

  if (!j["robots"].is_array() || j["robots"].empty()) {
    raise(ErrorKind::InvalidInstance, "SchemaError",
          "'robots' must be a nonempty array");
  }
  for (const auto& rj : j["robots"]) {
    if (!rj.is_object() || !rj.contains("id") || !rj.contains("start") ||
        !rj.contains("target")) {
      raise(ErrorKind::InvalidInstance, "SchemaError",
            "robot needs 'id', 'start', 'target'");
    }
    Robot robot;
    robot.id = rj["id"].get<int>();
    robot.start = vertex_from_json(rj["start"]);
    robot.target = vertex_from_json(rj["target"]);
    for (const Robot& other : inst.robots) {
      if (other.id == robot.id) {
        raise(ErrorKind::InvalidInstance, "SchemaError",
              "duplicate robot id " + std::to_string(robot.id));
      }
      if (other.start == robot.start) {
        raise(ErrorKind::InvalidInstance, "DuplicateStart",
              "robots " + std::to_string(other.id) + " and " +
                  std::to_string(robot.id) + " share a start vertex");
      }
      if (other.target == robot.target) {
        raise(ErrorKind::InvalidInstance, "DuplicateTarget",
              "robots " + std::to_string(other.id) + " and " +
                  std::to_string(robot.id) + " share a target vertex");
      }
    }
    for (GridVertex v : {robot.start, robot.target}) {
      if (inst.graph->node_of_grid(v) < 0) {
        raise(ErrorKind::InvalidInstance, "UnknownVertex",
              "robot " + std::to_string(robot.id) + " references " +
                  node_ref_str(NodeRef::of(v)) +
                  " which is not a graph vertex");
      }
    }
    inst.robots.push_back(robot);
  }

  if (j.contains("budget")) {
    if (!j["budget"].is_number_integer() || j["budget"].get<long long>() < 0) {
      raise(ErrorKind::InvalidInstance, "SchemaError",
            "'budget' must be a non-negative integer");
    }
    inst.budget = j["budget"].get<long long>();
  }

  double c = 1.0;
  std::optional<mpz_class> lambda_override, mu_override;
  if (j.contains("params")) {
    const auto& pj = j["params"];
    if (!pj.is_object()) {
      raise(ErrorKind::InvalidInstance, "SchemaError",
            "'params' must be an object");
    }
    if (pj.contains("c")) {
      if (!pj["c"].is_number() || !(pj["c"].get<double>() > 0)) {
        raise(ErrorKind::InvalidInstance, "SchemaError",
              "'params.c' must be a positive number");
      }
      c = pj["c"].get<double>();
    }
    if (pj.contains("lambda")) {
      lambda_override = mpz_from_json(pj["lambda"], "params.lambda");
    }
    if (pj.contains("mu")) mu_override = mpz_from_json(pj["mu"], "params.mu");
  }
  inst.params = compute_default_params(inst.k(), c);
  if (lambda_override) inst.params.override_lambda(*lambda_override);
  if (mu_override) inst.params.override_mu(*mu_override);
  return inst;
}

std::string serialize_instance(const Instance& instance) {
  ordered_json j;
  j["map"] = instance.graph->base().serialize_map();
  j["robots"] = ordered_json::array();
  for (const Robot& r : instance.robots) {
    ordered_json rj;
    rj["id"] = r.id;
    rj["start"] = vertex_to_json(r.start);
    rj["target"] = vertex_to_json(r.target);
    j["robots"].push_back(std::move(rj));
  }
  if (instance.budget) j["budget"] = *instance.budget;
  if (!instance.graph->is_pure()) {
    ordered_json removed = ordered_json::array();
    const DiscretizedPolygon& base = instance.graph->base();
    for (const GridVertex& v : base.vertices()) {
      if (!instance.graph->grid_alive(v)) removed.push_back(vertex_to_json(v));
    }
    if (!removed.empty()) j["removed"] = std::move(removed);
    if (!instance.graph->gadgets().empty()) {
      ordered_json gadgets = ordered_json::array();
      for (const WeaveGadget& g : instance.graph->gadgets()) {
        ordered_json gj;
        gj["id"] = g.id;
        gj["a"] = vertex_to_json(g.a);
        gj["b"] = vertex_to_json(g.b);
        gj["interior_length"] = g.interior_length;
        gadgets.push_back(std::move(gj));
      }
      j["gadgets"] = std::move(gadgets);
    }
  }
  ordered_json pj;
  pj["c"] = instance.params.c;
  if (instance.params.lambda_overridden) {
    pj["lambda"] = mpz_to_json(instance.params.lambda);
  }
  if (instance.params.mu_overridden) {
    pj["mu"] = mpz_to_json(instance.params.mu);
  }
  j["params"] = std::move(pj);
  return j.dump(2) + "\n";
}

Schedule parse_schedule(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorKind::InvalidInstance, "SchemaError",
          std::string("schedule is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("horizon") || !j.contains("routes") ||
      !j["horizon"].is_number_integer() || !j["routes"].is_object()) {
    raise(ErrorKind::InvalidInstance, "SchemaError",
          "schedule JSON needs integer 'horizon' and object 'routes'");
  }
  Schedule s;
  s.horizon = j["horizon"].get<long long>();
  for (const auto& [key, route_json] : j["routes"].items()) {
    int id;
    try {
      id = std::stoi(key);
    } catch (const std::exception&) {
      raise(ErrorKind::InvalidInstance, "SchemaError",
            "route key '" + key + "' is not a robot id");
    }
    if (!route_json.is_array()) {
      raise(ErrorKind::InvalidInstance, "SchemaError",
            "route for robot " + key + " must be an array");
    }
    std::vector<NodeRef> route;
    route.reserve(route_json.size());
    for (const auto& pos : route_json) {
      route.push_back(node_ref_from_json(pos));
    }
    s.routes.emplace_back(id, std::move(route));
  }
  std::sort(s.routes.begin(), s.routes.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  return s;
}

std::string serialize_schedule(const Schedule& schedule) {
  ordered_json j;
  j["horizon"] = schedule.horizon;
  ordered_json routes;
  for (const auto& [id, route] : schedule.routes) {
    ordered_json rj = ordered_json::array();
    for (const NodeRef& ref : route) rj.push_back(node_ref_to_json(ref));
    routes[std::to_string(id)] = std::move(rj);
  }
  j["routes"] = std::move(routes);
  return j.dump(2) + "\n";
}

ordered_json verdict_to_json(const Verdict& verdict) {
  ordered_json j;
  j["valid"] = verdict.valid;
  j["cost"] = verdict.cost;
  if (verdict.violation) {
    ordered_json vj;
    vj["kind"] = violation_kind_name(verdict.violation->kind);
    vj["time"] = verdict.violation->time;
    vj["robots"] = verdict.violation->robots;
    j["violation"] = std::move(vj);
  }
  return j;
}

}  // namespace polymapf
