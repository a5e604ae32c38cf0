#include "hpfnav/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hpfnav/errors.hpp"
#include "hpfnav/safety_grid.hpp"

namespace hpfnav {

using nlohmann::json;

namespace {

constexpr const char* kSchemaTag = "hpfnav-scenario/1";

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
    throw ScenarioError(origin + ": " + msg);
}

void require_keys(const json& obj, const std::string& origin,
                  const std::string& path,
                  const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            fail(origin, "unknown key '" + path + it.key() + "'");
    }
}

double num(const json& j, const std::string& origin, const std::string& path) {
    if (!j.is_number()) fail(origin, "'" + path + "' must be a number");
    return j.get<double>();
}

Vec2 vec2(const json& j, const std::string& origin, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        fail(origin, "'" + path + "' must be [x, y]");
    return {num(j[0], origin, path), num(j[1], origin, path)};
}

Pose pose3(const json& j, const std::string& origin, const std::string& path) {
    if (!j.is_array() || j.size() != 3)
        fail(origin, "'" + path + "' must be [x, y, theta]");
    return {num(j[0], origin, path), num(j[1], origin, path),
            num(j[2], origin, path)};
}

Circle circle(const json& j, const std::string& origin,
              const std::string& path) {
    if (!j.is_object()) fail(origin, "'" + path + "' must be an object");
    require_keys(j, origin, path + ".", {"center", "radius"});
    if (!j.contains("center") || !j.contains("radius"))
        fail(origin, "'" + path + "' needs center and radius");
    Circle c;
    c.center = vec2(j["center"], origin, path + ".center");
    c.radius = num(j["radius"], origin, path + ".radius");
    if (!(c.radius > 0.0)) fail(origin, "'" + path + ".radius' must be > 0");
    return c;
}

std::vector<Circle> circle_list(const json& j, const std::string& origin,
                                const std::string& path) {
    if (!j.is_array()) fail(origin, "'" + path + "' must be an array");
    std::vector<Circle> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(circle(j[k], origin, path + "[" + std::to_string(k) + "]"));
    return out;
}

void parse_config(const json& j, const std::string& origin, MissionConfig& c) {
    const std::string p = "config.";
    require_keys(j, origin, p,
                 {"grid", "controller", "vehicle", "sensor", "timing",
                  "goal_radius", "stall", "recovery", "registration",
                  "modulation", "sensing", "use_apriori", "odometry",
                  "solver"});
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        require_keys(g, origin, p + "grid.", {"n", "width", "center"});
        if (g.contains("n")) c.grid_n = g["n"].get<int>();
        if (g.contains("width")) c.domain_width = num(g["width"], origin, p + "grid.width");
        if (g.contains("center")) c.map_center = vec2(g["center"], origin, p + "grid.center");
    }
    if (j.contains("controller")) {
        const auto& g = j["controller"];
        require_keys(g, origin, p + "controller.", {"v_d", "omega_d", "r_c"});
        if (g.contains("v_d")) c.controller.v_d = num(g["v_d"], origin, p + "controller.v_d");
        if (g.contains("omega_d")) c.controller.omega_d = num(g["omega_d"], origin, p + "controller.omega_d");
        if (g.contains("r_c")) c.controller.R_c = num(g["r_c"], origin, p + "controller.r_c");
    }
    if (j.contains("vehicle")) {
        const auto& g = j["vehicle"];
        require_keys(g, origin, p + "vehicle.",
                     {"kind", "wheel_radius", "width", "wheelbase",
                      "body_radius", "phi_max"});
        if (g.contains("kind")) {
            std::string kind = g["kind"].get<std::string>();
            if (kind == "diff")
                c.vehicle.kind = VehicleKind::DifferentialDrive;
            else if (kind == "car")
                c.vehicle.kind = VehicleKind::CarLike;
            else
                fail(origin, "'config.vehicle.kind' must be 'diff' or 'car'");
        }
        if (g.contains("wheel_radius")) c.vehicle.wheel_radius = num(g["wheel_radius"], origin, p + "vehicle.wheel_radius");
        if (g.contains("width")) c.vehicle.width = num(g["width"], origin, p + "vehicle.width");
        if (g.contains("wheelbase")) c.vehicle.wheelbase = num(g["wheelbase"], origin, p + "vehicle.wheelbase");
        if (g.contains("body_radius")) c.vehicle.body_radius = num(g["body_radius"], origin, p + "vehicle.body_radius");
        if (g.contains("phi_max")) c.vehicle.phi_max = num(g["phi_max"], origin, p + "vehicle.phi_max");
    }
    if (j.contains("sensor")) {
        const auto& g = j["sensor"];
        require_keys(g, origin, p + "sensor.",
                     {"s_max", "sigma", "p_drop", "p_spur", "omega_spur",
                      "spur_range"});
        if (g.contains("s_max")) c.sensor.s_max = num(g["s_max"], origin, p + "sensor.s_max");
        if (g.contains("sigma")) c.sensor.sigma = num(g["sigma"], origin, p + "sensor.sigma");
        if (g.contains("p_drop")) c.sensor.p_drop = num(g["p_drop"], origin, p + "sensor.p_drop");
        if (g.contains("p_spur")) c.sensor.p_spur = num(g["p_spur"], origin, p + "sensor.p_spur");
        if (g.contains("omega_spur")) c.sensor.omega_spur = num(g["omega_spur"], origin, p + "sensor.omega_spur");
        if (g.contains("spur_range")) {
            Vec2 r = vec2(g["spur_range"], origin, p + "sensor.spur_range");
            c.sensor.spur_min = r.x;
            c.sensor.spur_max = r.y;
        }
    }
    if (j.contains("timing")) {
        const auto& g = j["timing"];
        require_keys(g, origin, p + "timing.", {"dt_phys", "dt_ctrl", "t_max"});
        if (g.contains("dt_phys")) c.dt_phys = num(g["dt_phys"], origin, p + "timing.dt_phys");
        if (g.contains("dt_ctrl")) c.dt_ctrl = num(g["dt_ctrl"], origin, p + "timing.dt_ctrl");
        if (g.contains("t_max")) c.t_max = num(g["t_max"], origin, p + "timing.t_max");
    }
    if (j.contains("goal_radius"))
        c.goal_radius = num(j["goal_radius"], origin, p + "goal_radius");
    if (j.contains("stall")) {
        const auto& g = j["stall"];
        require_keys(g, origin, p + "stall.", {"v_min", "hold_s"});
        if (g.contains("v_min")) c.stall.v_min = num(g["v_min"], origin, p + "stall.v_min");
        if (g.contains("hold_s")) c.stall.hold_s = num(g["hold_s"], origin, p + "stall.hold_s");
    }
    if (j.contains("recovery")) {
        const auto& g = j["recovery"];
        require_keys(g, origin, p + "recovery.",
                     {"max_full_recomputes", "max_resets"});
        if (g.contains("max_full_recomputes")) c.max_full_recomputes = g["max_full_recomputes"].get<int>();
        if (g.contains("max_resets")) c.max_resets = g["max_resets"].get<int>();
    }
    if (j.contains("registration")) {
        const auto& g = j["registration"];
        require_keys(g, origin, p + "registration.",
                     {"inflate_cells", "beam_skew"});
        if (g.contains("inflate_cells")) c.inflate_cells = g["inflate_cells"].get<int>();
        if (g.contains("beam_skew")) c.beam_skew = num(g["beam_skew"], origin, p + "registration.beam_skew");
    }
    if (j.contains("modulation")) c.modulation = j["modulation"].get<bool>();
    if (j.contains("sensing")) c.sensing = j["sensing"].get<bool>();
    if (j.contains("use_apriori")) c.use_apriori = j["use_apriori"].get<bool>();
    if (j.contains("odometry")) {
        const auto& g = j["odometry"];
        require_keys(g, origin, p + "odometry.", {"noise_sigma"});
        if (g.contains("noise_sigma")) c.odom_noise_sigma = num(g["noise_sigma"], origin, p + "odometry.noise_sigma");
    }
    if (j.contains("solver")) {
        const auto& g = j["solver"];
        require_keys(g, origin, p + "solver.",
                     {"tol", "omega", "max_sweeps", "update_margin"});
        if (g.contains("tol")) c.solver.tol = num(g["tol"], origin, p + "solver.tol");
        if (g.contains("omega")) c.solver.omega = num(g["omega"], origin, p + "solver.omega");
        if (g.contains("max_sweeps")) c.solver.max_sweeps = g["max_sweeps"].get<long long>();
        if (g.contains("update_margin")) c.update_margin = g["update_margin"].get<int>();
    }
}

void check_in_bounds(const std::string& origin, const std::string& what,
                     Vec2 p, Vec2 center, double half) {
    if (std::fabs(p.x - center.x) > half || std::fabs(p.y - center.y) > half)
        fail(origin, what + " lies outside the domain square (half-width " +
                         std::to_string(half) + " around the map center)");
}

void validate(const Scenario& s, const std::string& origin) {
    const MissionConfig& c = s.config;
    if (c.grid_n < 8) fail(origin, "config.grid.n must be >= 8");
    if (!(c.domain_width > 0.0)) fail(origin, "config.grid.width must be > 0");
    if (!(c.dt_phys > 0.0 && c.dt_ctrl > 0.0))
        fail(origin, "timing steps must be > 0");
    if (c.dt_phys > c.dt_ctrl)
        fail(origin, "config.timing.dt_phys must not exceed dt_ctrl");
    if (!(c.t_max > 0.0)) fail(origin, "config.timing.t_max must be > 0");
    if (!(c.resolved_goal_radius() > 0.0))
        fail(origin, "config.goal_radius must be > 0");
    for (double prob : {c.sensor.p_drop, c.sensor.p_spur})
        if (prob < 0.0 || prob > 1.0)
            fail(origin, "sensor probabilities must lie in [0, 1]");
    if (c.sensor.sigma < 0.0) fail(origin, "config.sensor.sigma must be >= 0");
    if (!(c.sensor.s_max > 0.0)) fail(origin, "config.sensor.s_max must be > 0");
    if (!(c.controller.v_d > 0.0 && c.controller.omega_d > 0.0 &&
          c.controller.R_c > 0.0))
        fail(origin, "controller parameters must be > 0");
    if (!(c.vehicle.wheel_radius > 0.0 && c.vehicle.width > 0.0 &&
          c.vehicle.wheelbase > 0.0 && c.vehicle.body_radius > 0.0))
        fail(origin, "vehicle lengths must be > 0");
    if (c.inflate_cells < 0) fail(origin, "registration.inflate_cells must be >= 0");
    if (!(c.solver.tol > 0.0)) fail(origin, "solver.tol must be > 0");
    if (!(c.solver.omega >= 1.0 && c.solver.omega < 2.0))
        fail(origin, "solver.omega must lie in [1, 2)");
    if (c.update_margin < 1) fail(origin, "solver.update_margin must be >= 1");

    Vec2 center = s.map_center();
    double half = c.domain_width / 2.0;
    check_in_bounds(origin, "target", s.target, center, half);
    check_in_bounds(origin, "start", s.start.position(), center, half);
    // the target must map to an interior cell of the belief grid
    SafetyGrid probe(c.grid_n, c.domain_width);
    CellIndex tc = probe.world_to_cell(s.target.x - center.x,
                                       s.target.y - center.y);
    if (!probe.interior(tc.i, tc.j))
        fail(origin, "target maps to the perimeter ring of the belief grid");
    for (const auto& circ : s.circles) {
        check_in_bounds(origin, "world circle", circ.center - Vec2{circ.radius, 0}, center, half);
        check_in_bounds(origin, "world circle", circ.center + Vec2{circ.radius, 0}, center, half);
        check_in_bounds(origin, "world circle", circ.center - Vec2{0, circ.radius}, center, half);
        check_in_bounds(origin, "world circle", circ.center + Vec2{0, circ.radius}, center, half);
    }
    for (const auto& seg : s.segments) {
        check_in_bounds(origin, "world segment endpoint", seg.a, center, half);
        check_in_bounds(origin, "world segment endpoint", seg.b, center, half);
    }
}

Scenario parse(const json& doc, const std::string& origin) {
    if (!doc.is_object()) fail(origin, "top level must be an object");
    require_keys(doc, origin, "",
                 {"schema", "name", "seed", "start", "target", "world",
                  "apriori", "config"});
    if (!doc.contains("schema") || doc["schema"] != kSchemaTag)
        fail(origin, std::string("missing or unsupported schema tag; expected \"") +
                         kSchemaTag + "\"");
    Scenario s;
    if (doc.contains("name")) s.name = doc["name"].get<std::string>();
    if (doc.contains("seed")) s.seed = doc["seed"].get<uint64_t>();
    if (doc.contains("start")) s.start = pose3(doc["start"], origin, "start");
    if (!doc.contains("target")) fail(origin, "missing 'target'");
    s.target = vec2(doc["target"], origin, "target");
    if (doc.contains("world")) {
        const auto& w = doc["world"];
        require_keys(w, origin, "world.", {"circles", "segments"});
        if (w.contains("circles"))
            s.circles = circle_list(w["circles"], origin, "world.circles");
        if (w.contains("segments")) {
            if (!w["segments"].is_array())
                fail(origin, "'world.segments' must be an array");
            for (std::size_t k = 0; k < w["segments"].size(); ++k) {
                const auto& e = w["segments"][k];
                std::string path = "world.segments[" + std::to_string(k) + "]";
                if (!e.is_array() || e.size() != 2)
                    fail(origin, "'" + path + "' must be [[x1,y1],[x2,y2]]");
                s.segments.push_back({vec2(e[0], origin, path),
                                      vec2(e[1], origin, path)});
            }
        }
    }
    if (doc.contains("apriori"))
        s.apriori = circle_list(doc["apriori"], origin, "apriori");
    if (doc.contains("config")) parse_config(doc["config"], origin, s.config);
    validate(s, origin);
    return s;
}

json to_json(const Scenario& s) {
    const MissionConfig& c = s.config;
    json w;
    w["circles"] = json::array();
    for (const auto& circ : s.circles)
        w["circles"].push_back(
            {{"center", {circ.center.x, circ.center.y}}, {"radius", circ.radius}});
    w["segments"] = json::array();
    for (const auto& seg : s.segments)
        w["segments"].push_back({{seg.a.x, seg.a.y}, {seg.b.x, seg.b.y}});

    json cfg;
    cfg["grid"] = {{"n", c.grid_n}, {"width", c.domain_width}};
    if (c.map_center)
        cfg["grid"]["center"] = {c.map_center->x, c.map_center->y};
    cfg["controller"] = {{"v_d", c.controller.v_d},
                         {"omega_d", c.controller.omega_d},
                         {"r_c", c.controller.R_c}};
    cfg["vehicle"] = {
        {"kind", c.vehicle.kind == VehicleKind::DifferentialDrive ? "diff" : "car"},
        {"wheel_radius", c.vehicle.wheel_radius},
        {"width", c.vehicle.width},
        {"wheelbase", c.vehicle.wheelbase},
        {"body_radius", c.vehicle.body_radius},
        {"phi_max", c.vehicle.phi_max}};
    cfg["sensor"] = {{"s_max", c.sensor.s_max},
                     {"sigma", c.sensor.sigma},
                     {"p_drop", c.sensor.p_drop},
                     {"p_spur", c.sensor.p_spur},
                     {"omega_spur", c.sensor.omega_spur},
                     {"spur_range", {c.sensor.spur_min, c.sensor.spur_max}}};
    cfg["timing"] = {{"dt_phys", c.dt_phys},
                     {"dt_ctrl", c.dt_ctrl},
                     {"t_max", c.t_max}};
    if (c.goal_radius) cfg["goal_radius"] = *c.goal_radius;
    cfg["stall"] = {{"v_min", c.stall.v_min}, {"hold_s", c.stall.hold_s}};
    cfg["recovery"] = {{"max_full_recomputes", c.max_full_recomputes},
                       {"max_resets", c.max_resets}};
    cfg["registration"] = {{"inflate_cells", c.inflate_cells},
                           {"beam_skew", c.beam_skew}};
    cfg["modulation"] = c.modulation;
    cfg["sensing"] = c.sensing;
    cfg["use_apriori"] = c.use_apriori;
    cfg["odometry"] = {{"noise_sigma", c.odom_noise_sigma}};
    cfg["solver"] = {{"tol", c.solver.tol},
                     {"omega", c.solver.omega},
                     {"max_sweeps", c.solver.max_sweeps},
                     {"update_margin", c.update_margin}};

    json apriori = json::array();
    for (const auto& circ : s.apriori)
        apriori.push_back(
            {{"center", {circ.center.x, circ.center.y}}, {"radius", circ.radius}});

    return json{{"schema", kSchemaTag},
                {"name", s.name},
                {"seed", s.seed},
                {"start", {s.start.x, s.start.y, s.start.theta}},
                {"target", {s.target.x, s.target.y}},
                {"world", w},
                {"apriori", apriori},
                {"config", cfg}};
}

void apply_override(json& doc, const std::string& spec,
                    const std::string& origin) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        fail(origin, "override must look like key=value: '" + spec + "'");
    std::string key = spec.substr(0, eq);
    std::string value = spec.substr(eq + 1);
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;  // bare string
    }
    std::string pointer;
    if (key == "seed" || key == "name") {
        pointer = "/" + key;
    } else {
        if (key.rfind("config.", 0) == 0) key = key.substr(7);
        pointer = "/config";
        std::stringstream ss(key);
        std::string part;
        while (std::getline(ss, part, '.')) pointer += "/" + part;
    }
    doc[json::json_pointer(pointer)] = parsed;
}

}  // namespace

World Scenario::make_world() const {
    World w;
    w.circles = circles;
    w.segments = segments;
    w.bounds_center = map_center();
    w.bounds_width = config.domain_width;
    w.bounds_solid = true;
    return w;
}

Scenario scenario_from_json_text(const std::string& text,
                                 const std::string& origin,
                                 const std::vector<std::string>& overrides) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(origin + ": parse error at byte " +
                            std::to_string(e.byte) + ": " + e.what());
    }
    for (const auto& o : overrides) apply_override(doc, o, origin);
    try {
        return parse(doc, origin);
    } catch (const json::exception& e) {
        throw ScenarioError(origin + ": " + e.what());
    }
}

Scenario load_scenario(const std::string& path,
                       const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str(), path, overrides);
}

std::string scenario_to_json_text(const Scenario& scenario) {
    return to_json(scenario).dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ScenarioError(path + ": cannot open file for writing");
    out << scenario_to_json_text(scenario);
}

}  // namespace hpfnav
