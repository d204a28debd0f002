#include "rolab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rolab/error.hpp"

namespace rolab::sim {

using json = nlohmann::json;

std::string_view to_string(Placement placement) {
  switch (placement) {
    case Placement::grid: return "grid";
    case Placement::uniform_random: return "uniform_random";
    case Placement::explicit_positions: return "explicit";
  }
  return "?";
}

Placement placement_from_string(std::string_view text) {
  if (text == "grid") return Placement::grid;
  if (text == "uniform_random" || text == "uniform") return Placement::uniform_random;
  if (text == "explicit") return Placement::explicit_positions;
  throw ValidationError("placement: unknown value '" + std::string(text) + "'");
}

void RadioModel::validate() const {
  if (!(range > 0.0) || !std::isfinite(range)) throw ValidationError("radio.range must be > 0");
  if (!(per_hop_latency >= 0.0)) throw ValidationError("radio.per_hop_latency must be >= 0");
  if (!(loss_probability >= 0.0 && loss_probability <= 1.0)) {
    throw ValidationError("radio.loss_probability out of [0,1]");
  }
  if (!(bandwidth_bps > 0.0)) throw ValidationError("radio.bandwidth_bps must be > 0");
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

void validate_flow_window(double start, double stop, double rate, const std::string& where) {
  require(start >= 0.0 && std::isfinite(start), where + ".start must be >= 0");
  require(stop >= 0.0 && std::isfinite(stop), where + ".stop must be >= 0");
  require(stop == 0.0 || stop >= start, where + ".stop must be >= start");
  require(rate > 0.0 && std::isfinite(rate), where + ".rate_pps must be > 0");
}

}  // namespace

void ScenarioConfig::validate() const {
  require(area_width > 0.0 && area_height > 0.0, "area dimensions must be > 0");
  require(node_count >= 0, "nodes must be >= 0");
  require(grid_columns >= 0, "grid.columns must be >= 0");
  require(grid_spacing >= 0.0, "grid.spacing must be >= 0");
  if (placement == Placement::explicit_positions) {
    require(positions.size() == static_cast<std::size_t>(node_count), "positions: expected one entry per node");
    for (std::size_t i = 0; i < positions.size(); ++i) {
      const Vec2 p = positions[i];
      require(p.x >= 0.0 && p.x <= area_width && p.y >= 0.0 && p.y <= area_height,
              "positions[" + std::to_string(i) + "] lies outside the area");
    }
  }
  if (placement == Placement::grid && node_count > 0 && grid_spacing > 0.0) {
    const int cols = grid_columns > 0 ? grid_columns : static_cast<int>(std::ceil(std::sqrt(node_count)));
    const int rows = (node_count + cols - 1) / cols;
    require((cols - 1) * grid_spacing <= area_width + 1e-9 && (rows - 1) * grid_spacing <= area_height + 1e-9,
            "grid.spacing places nodes outside the area");
  }
  radio.validate();
  require(speed >= 0.0 && std::isfinite(speed), "mobility.speed must be >= 0");
  require(pause >= 0.0 && std::isfinite(pause), "mobility.pause must be >= 0");
  for (std::size_t i = 0; i < blackouts.size(); ++i) {
    const Blackout& b = blackouts[i];
    const std::string where = "blackouts[" + std::to_string(i) + "]";
    require(b.x0 <= b.x1 && b.y0 <= b.y1, where + ".region must have x0 <= x1 and y0 <= y1");
    require(b.start >= 0.0, where + ".start must be >= 0");
    require(!b.end || *b.end > b.start, where + ".end must be > start");
  }
  for (const auto& [id, life] : lifetimes) {
    require(id < static_cast<NodeId>(node_count), "lifetimes: unknown node " + std::to_string(id));
    require(life >= 0.0, "lifetimes[" + std::to_string(id) + "] must be >= 0");
  }
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const FlowSpec& f = flows[i];
    const std::string where = "flows[" + std::to_string(i) + "]";
    require(f.source < static_cast<NodeId>(node_count), where + ".source out of range");
    require(f.destination < static_cast<NodeId>(node_count), where + ".destination out of range");
    validate_flow_window(f.start, f.stop, f.rate_pps, where);
    require(f.packet_bytes > 0, where + ".packet_bytes must be > 0");
  }
  require(random_traffic.flows >= 0, "traffic.random.flows must be >= 0");
  if (random_traffic.flows > 0) {
    require(node_count >= 2, "traffic.random needs at least 2 nodes");
    validate_flow_window(random_traffic.start, random_traffic.stop, random_traffic.rate_pps, "traffic.random");
    require(random_traffic.packet_bytes > 0, "traffic.random.packet_bytes must be > 0");
  }
  require(duration > 0.0 && std::isfinite(duration), "duration must be > 0");
  params.validate();
}

// ------------------------------------------------------------------ library

namespace {

ScenarioConfig static_line_5() {
  ScenarioConfig c;
  c.id = "static-line-5";
  c.area_width = 1000.0;
  c.area_height = 200.0;
  c.node_count = 5;
  c.placement = Placement::grid;
  c.grid_columns = 5;
  c.grid_spacing = 200.0;
  c.flows.push_back(FlowSpec{0, 4, 1.0, 0.0, 4.0, 512, 1});
  c.duration = 30.0;
  c.params.expanding_ring = false;
  return c;
}

ScenarioConfig static_grid_25() {
  ScenarioConfig c;
  c.id = "static-grid-25";
  c.area_width = 800.0;
  c.area_height = 800.0;
  c.node_count = 25;
  c.placement = Placement::grid;
  c.grid_columns = 5;
  c.grid_spacing = 200.0;
  c.blackouts.push_back(Blackout{300.0, 300.0, 500.0, 500.0, 20.0, 40.0});
  c.flows.push_back(FlowSpec{0, 24, 1.0, 55.0, 4.0, 512, std::nullopt});
  c.flows.push_back(FlowSpec{2, 22, 1.5, 55.0, 4.0, 512, std::nullopt});
  c.flows.push_back(FlowSpec{10, 14, 2.0, 55.0, 4.0, 512, std::nullopt});
  c.flows.push_back(FlowSpec{20, 4, 2.5, 55.0, 4.0, 512, std::nullopt});
  c.duration = 60.0;
  return c;
}

ScenarioConfig mobility_50() {
  ScenarioConfig c;
  c.id = "mobility-50";
  c.node_count = 50;
  c.placement = Placement::uniform_random;
  c.speed = 2.0;
  c.pause = 0.0;
  c.random_traffic = RandomTraffic{10, 4.0, 512, 1.0, 0.0};
  c.duration = 200.0;
  return c;
}

ScenarioConfig scalability_base() {
  ScenarioConfig c = mobility_50();
  c.id = "scalability-sweep";
  c.node_count = 20;
  c.duration = 100.0;
  return c;
}

}  // namespace

std::vector<std::string> bundled_scenario_names() {
  return {"static-line-5", "static-grid-25", "mobility-50", "scalability-sweep"};
}

ScenarioConfig bundled_scenario(std::string_view name) {
  if (name == "static-line-5") return static_line_5();
  if (name == "static-grid-25") return static_grid_25();
  if (name == "mobility-50") return mobility_50();
  if (name == "scalability-sweep") return scalability_base();
  throw ValidationError("unknown bundled scenario '" + std::string(name) + "'");
}

// -------------------------------------------------------------------- codec

namespace {

// Reads obj[key] into out when present, naming the field on type errors.
template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + key + ": wrong type");
  }
}

template <typename T>
void read_optional(const json& obj, const char* key, std::optional<T>& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  T value{};
  read(obj, key, value, where);
  out = value;
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ValidationError((where.empty() ? std::string("document") : where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (known.count(key) == 0) throw ValidationError(where + key + ": unknown field");
  }
}

proto::ProtocolProfile profile_from(const json& j) {
  reject_unknown(j,
                 {"name", "source_routing", "grat_rrep", "route_cache_multi", "hello_monitoring", "ack_monitoring",
                  "promiscuous", "local_repair", "reuse_cached_routes"},
                 "protocol.");
  proto::ProtocolProfile p;
  p.name = "custom";
  read(j, "name", p.name, "protocol.");
  read(j, "source_routing", p.source_routing, "protocol.");
  read(j, "grat_rrep", p.grat_rrep, "protocol.");
  read(j, "route_cache_multi", p.route_cache_multi, "protocol.");
  read(j, "hello_monitoring", p.hello_monitoring, "protocol.");
  read(j, "ack_monitoring", p.ack_monitoring, "protocol.");
  read(j, "promiscuous", p.promiscuous, "protocol.");
  read(j, "local_repair", p.local_repair, "protocol.");
  read(j, "reuse_cached_routes", p.reuse_cached_routes, "protocol.");
  return p;
}

json profile_json(const proto::ProtocolProfile& p) {
  return json{{"name", p.name},
              {"source_routing", p.source_routing},
              {"grat_rrep", p.grat_rrep},
              {"route_cache_multi", p.route_cache_multi},
              {"hello_monitoring", p.hello_monitoring},
              {"ack_monitoring", p.ack_monitoring},
              {"promiscuous", p.promiscuous},
              {"local_repair", p.local_repair},
              {"reuse_cached_routes", p.reuse_cached_routes}};
}

proto::ProtocolParams params_from(const json& j) {
  const std::string w = "params.";
  reject_unknown(j,
                 {"expanding_ring", "ttl_start", "ttl_increment", "ttl_threshold", "net_diameter", "rreq_retries",
                  "net_traversal_time", "node_traversal_time", "backoff_multiplier", "hello_interval",
                  "allowed_hello_loss", "route_lifetime", "duplicate_window", "buffer_capacity", "local_add_ttl",
                  "ack_timeout", "max_cached_routes"},
                 w);
  proto::ProtocolParams p;
  read(j, "expanding_ring", p.expanding_ring, w);
  read(j, "ttl_start", p.ttl_start, w);
  read(j, "ttl_increment", p.ttl_increment, w);
  read(j, "ttl_threshold", p.ttl_threshold, w);
  read(j, "net_diameter", p.net_diameter, w);
  read(j, "rreq_retries", p.rreq_retries, w);
  read(j, "net_traversal_time", p.net_traversal_time, w);
  read(j, "node_traversal_time", p.node_traversal_time, w);
  read(j, "backoff_multiplier", p.backoff_multiplier, w);
  read(j, "hello_interval", p.hello_interval, w);
  read(j, "allowed_hello_loss", p.allowed_hello_loss, w);
  read(j, "route_lifetime", p.route_lifetime, w);
  read(j, "duplicate_window", p.duplicate_window, w);
  read(j, "buffer_capacity", p.buffer_capacity, w);
  read(j, "local_add_ttl", p.local_add_ttl, w);
  read(j, "ack_timeout", p.ack_timeout, w);
  read(j, "max_cached_routes", p.max_cached_routes, w);
  return p;
}

json params_json(const proto::ProtocolParams& p) {
  return json{{"expanding_ring", p.expanding_ring},
              {"ttl_start", p.ttl_start},
              {"ttl_increment", p.ttl_increment},
              {"ttl_threshold", p.ttl_threshold},
              {"net_diameter", p.net_diameter},
              {"rreq_retries", p.rreq_retries},
              {"net_traversal_time", p.net_traversal_time},
              {"node_traversal_time", p.node_traversal_time},
              {"backoff_multiplier", p.backoff_multiplier},
              {"hello_interval", p.hello_interval},
              {"allowed_hello_loss", p.allowed_hello_loss},
              {"route_lifetime", p.route_lifetime},
              {"duplicate_window", p.duplicate_window},
              {"buffer_capacity", p.buffer_capacity},
              {"local_add_ttl", p.local_add_ttl},
              {"ack_timeout", p.ack_timeout},
              {"max_cached_routes", p.max_cached_routes}};
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

ScenarioConfig scenario_from_json(std::string_view text) {
  const json doc = parse_document(text);
  reject_unknown(doc,
                 {"id", "area", "nodes", "placement", "grid", "positions", "radio", "mobility", "failures", "traffic",
                  "duration", "seed", "protocol", "params"},
                 "");
  ScenarioConfig c;
  read(doc, "id", c.id, "");
  if (auto it = doc.find("area"); it != doc.end()) {
    reject_unknown(*it, {"width", "height"}, "area.");
    read(*it, "width", c.area_width, "area.");
    read(*it, "height", c.area_height, "area.");
  }
  read(doc, "nodes", c.node_count, "");
  if (auto it = doc.find("placement"); it != doc.end()) {
    std::string text_value;
    read(doc, "placement", text_value, "");
    c.placement = placement_from_string(text_value);
  }
  if (auto it = doc.find("grid"); it != doc.end()) {
    reject_unknown(*it, {"columns", "spacing"}, "grid.");
    read(*it, "columns", c.grid_columns, "grid.");
    read(*it, "spacing", c.grid_spacing, "grid.");
  }
  if (auto it = doc.find("positions"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("positions must be an array of [x, y]");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& p = (*it)[i];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw ValidationError("positions[" + std::to_string(i) + "] must be [x, y]");
      }
      c.positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }
  if (auto it = doc.find("radio"); it != doc.end()) {
    reject_unknown(*it, {"range", "per_hop_latency", "loss_probability", "bandwidth_bps"}, "radio.");
    read(*it, "range", c.radio.range, "radio.");
    read(*it, "per_hop_latency", c.radio.per_hop_latency, "radio.");
    read(*it, "loss_probability", c.radio.loss_probability, "radio.");
    read(*it, "bandwidth_bps", c.radio.bandwidth_bps, "radio.");
  }
  if (auto it = doc.find("mobility"); it != doc.end()) {
    reject_unknown(*it, {"speed", "pause"}, "mobility.");
    read(*it, "speed", c.speed, "mobility.");
    read(*it, "pause", c.pause, "mobility.");
  }
  if (auto it = doc.find("failures"); it != doc.end()) {
    reject_unknown(*it, {"blackouts", "lifetimes"}, "failures.");
    if (auto b = it->find("blackouts"); b != it->end()) {
      if (!b->is_array()) throw ValidationError("failures.blackouts must be an array");
      for (std::size_t i = 0; i < b->size(); ++i) {
        const json& e = (*b)[i];
        const std::string w = "failures.blackouts[" + std::to_string(i) + "].";
        reject_unknown(e, {"region", "start", "end"}, w);
        Blackout bo;
        std::vector<double> region;
        read(e, "region", region, w);
        if (region.size() != 4) throw ValidationError(w + "region must be [x0, y0, x1, y1]");
        bo.x0 = region[0];
        bo.y0 = region[1];
        bo.x1 = region[2];
        bo.y1 = region[3];
        read(e, "start", bo.start, w);
        read_optional(e, "end", bo.end, w);
        c.blackouts.push_back(bo);
      }
    }
    if (auto l = it->find("lifetimes"); l != it->end()) {
      if (!l->is_object()) throw ValidationError("failures.lifetimes must map node id to seconds");
      for (const auto& [key, value] : l->items()) {
        NodeId id = 0;
        try {
          id = static_cast<NodeId>(std::stoul(key));
        } catch (const std::exception&) {
          throw ValidationError("failures.lifetimes: '" + key + "' is not a node id");
        }
        if (!value.is_number()) throw ValidationError("failures.lifetimes." + key + ": wrong type");
        c.lifetimes[id] = value.get<double>();
      }
    }
  }
  if (auto it = doc.find("traffic"); it != doc.end()) {
    reject_unknown(*it, {"flows", "random"}, "traffic.");
    if (auto f = it->find("flows"); f != it->end()) {
      if (!f->is_array()) throw ValidationError("traffic.flows must be an array");
      for (std::size_t i = 0; i < f->size(); ++i) {
        const json& e = (*f)[i];
        const std::string w = "traffic.flows[" + std::to_string(i) + "].";
        reject_unknown(e, {"source", "destination", "start", "stop", "rate_pps", "packet_bytes", "packets"}, w);
        FlowSpec flow;
        read(e, "source", flow.source, w);
        read(e, "destination", flow.destination, w);
        read(e, "start", flow.start, w);
        read(e, "stop", flow.stop, w);
        read(e, "rate_pps", flow.rate_pps, w);
        read(e, "packet_bytes", flow.packet_bytes, w);
        read_optional(e, "packets", flow.packets, w);
        c.flows.push_back(flow);
      }
    }
    if (auto r = it->find("random"); r != it->end()) {
      const std::string w = "traffic.random.";
      reject_unknown(*r, {"flows", "rate_pps", "packet_bytes", "start", "stop"}, w);
      read(*r, "flows", c.random_traffic.flows, w);
      read(*r, "rate_pps", c.random_traffic.rate_pps, w);
      read(*r, "packet_bytes", c.random_traffic.packet_bytes, w);
      read(*r, "start", c.random_traffic.start, w);
      read(*r, "stop", c.random_traffic.stop, w);
    }
  }
  read(doc, "duration", c.duration, "");
  read(doc, "seed", c.seed, "");
  if (auto it = doc.find("protocol"); it != doc.end()) {
    if (it->is_string()) {
      c.profile = proto::builtin_profile(it->get<std::string>());
    } else {
      c.profile = profile_from(*it);
    }
  }
  if (auto it = doc.find("params"); it != doc.end()) c.params = params_from(*it);
  c.validate();
  return c;
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json doc;
  doc["id"] = c.id;
  doc["area"] = {{"width", c.area_width}, {"height", c.area_height}};
  doc["nodes"] = c.node_count;
  doc["placement"] = std::string(to_string(c.placement));
  if (c.placement == Placement::grid) doc["grid"] = {{"columns", c.grid_columns}, {"spacing", c.grid_spacing}};
  if (c.placement == Placement::explicit_positions) {
    json pos = json::array();
    for (const Vec2& p : c.positions) pos.push_back({p.x, p.y});
    doc["positions"] = pos;
  }
  doc["radio"] = {{"range", c.radio.range},
                  {"per_hop_latency", c.radio.per_hop_latency},
                  {"loss_probability", c.radio.loss_probability},
                  {"bandwidth_bps", c.radio.bandwidth_bps}};
  doc["mobility"] = {{"speed", c.speed}, {"pause", c.pause}};
  if (c.has_failures()) {
    json blackouts = json::array();
    for (const Blackout& b : c.blackouts) {
      json e = {{"region", {b.x0, b.y0, b.x1, b.y1}}, {"start", b.start}};
      if (b.end) e["end"] = *b.end;
      blackouts.push_back(e);
    }
    json lifetimes = json::object();
    for (const auto& [id, life] : c.lifetimes) lifetimes[std::to_string(id)] = life;
    doc["failures"] = {{"blackouts", blackouts}, {"lifetimes", lifetimes}};
  }
  json flows = json::array();
  for (const FlowSpec& f : c.flows) {
    json e = {{"source", f.source},   {"destination", f.destination}, {"start", f.start},
              {"stop", f.stop},       {"rate_pps", f.rate_pps},       {"packet_bytes", f.packet_bytes}};
    if (f.packets) e["packets"] = *f.packets;
    flows.push_back(e);
  }
  doc["traffic"] = {{"flows", flows},
                    {"random",
                     {{"flows", c.random_traffic.flows},
                      {"rate_pps", c.random_traffic.rate_pps},
                      {"packet_bytes", c.random_traffic.packet_bytes},
                      {"start", c.random_traffic.start},
                      {"stop", c.random_traffic.stop}}}};
  doc["duration"] = c.duration;
  doc["seed"] = c.seed;
  doc["protocol"] = profile_json(c.profile);
  doc["params"] = params_json(c.params);
  return doc.dump(2) + "\n";
}

proto::ProtocolProfile profile_from_json(std::string_view text) { return profile_from(parse_document(text)); }

std::string profile_to_json(const proto::ProtocolProfile& profile) { return profile_json(profile).dump(2) + "\n"; }

ScenarioConfig load_scenario(const std::string& spec) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return bundled_scenario(std::string_view(spec).substr(prefix.size()));
  std::ifstream in(spec);
  if (!in) throw ValidationError("cannot open scenario file '" + spec + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_json(buffer.str());
}

}  // namespace rolab::sim
