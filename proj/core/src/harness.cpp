#include "rolab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "rolab/error.hpp"
#include "rolab/simulation.hpp"
#include "rolab/world.hpp"

namespace rolab::harness {

using json = nlohmann::json;
using metrics::format_number;
using proto::PacketKind;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& obj, const char* key, T fallback, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + key + ": wrong type");
  }
}

// Runs a command body, mapping exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double stdev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::filesystem::path output_dir(const Options& options) {
  if (options.out_dir) return *options.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "rolab-out";
}

proto::ProtocolProfile resolve_protocol(const std::string& spec) {
  constexpr std::string_view prefix = "custom:";
  if (spec.rfind(prefix, 0) == 0) return sim::profile_from_json(read_file(spec.substr(prefix.size())));
  return proto::builtin_profile(spec);
}

sim::ScenarioConfig apply_options(sim::ScenarioConfig config, const Options& options) {
  if (options.seed) config.seed = *options.seed;
  if (options.protocol) config.profile = resolve_protocol(*options.protocol);
  config.validate();
  return config;
}

// ------------------------------------------------------------ model rows

std::vector<ModelRow> parse_model_rows(std::string_view text) {
  const json doc = parse_json(text);
  const json* rows = &doc;
  if (doc.is_object()) {
    auto it = doc.find("rows");
    if (it == doc.end()) throw ValidationError("rows: missing");
    rows = &*it;
  }
  if (!rows->is_array()) throw ValidationError("rows must be an array");
  std::vector<ModelRow> out;
  for (std::size_t i = 0; i < rows->size(); ++i) {
    const json& r = (*rows)[i];
    const std::string w = "rows[" + std::to_string(i) + "].";
    if (!r.is_object()) throw ValidationError(w.substr(0, w.size() - 1) + " must be an object");
    ModelRow row;
    row.label = field<std::string>(r, "label", "row" + std::to_string(i), w);
    row.shape.nodes = field<double>(r, "n", row.shape.nodes, w);
    row.shape.hops = field<int>(r, "H", row.shape.hops, w);
    row.shape.forwarding_probability = field<double>(r, "p", 1.0, w);
    if (auto c = r.find("coverage"); c != r.end()) {
      if (c->is_array()) {
        const auto v = field<std::vector<double>>(r, "coverage", {}, w);
        if (v.size() != 3) throw ValidationError(w + "coverage must list C_2, C_3, C_4");
        std::copy(v.begin(), v.end(), row.shape.coverage.begin());
      } else if (c->is_object()) {
        for (int k = 2; k <= 4; ++k) {
          row.shape.coverage[static_cast<std::size_t>(k - 2)] =
              field<double>(*c, std::to_string(k).c_str(), 1.0, w + "coverage.");
        }
      } else {
        throw ValidationError(w + "coverage: wrong type");
      }
    }
    row.shape.tier_neighbors = field<std::vector<double>>(r, "tier_neighbors", {}, w);
    if (auto m = r.find("formula_mode"); m != r.end()) {
      row.shape.mode = model::formula_mode_from_string(field<std::string>(r, "formula_mode", "literal", w));
    }
    if (auto routes = r.find("routes"); routes != r.end()) {
      if (!routes->is_array()) throw ValidationError(w + "routes must be an array");
      for (std::size_t k = 0; k < routes->size(); ++k) {
        const std::string rw = w + "routes[" + std::to_string(k) + "].";
        model::MonitoredRoute route;
        route.links = field<int>((*routes)[k], "links", 1, rw);
        route.lifetime = field<double>((*routes)[k], "lifetime", 0.0, rw);
        route.interval = field<double>((*routes)[k], "interval", 1.0, rw);
        row.routes.push_back(route);
      }
    }
    try {
      row.shape.validate();
      for (std::size_t k = 0; k < row.routes.size(); ++k) {
        try {
          row.routes[k].validate();
        } catch (const ValidationError& e) {
          throw ValidationError("route[" + std::to_string(k) + "]: " + e.what());
        }
      }
    } catch (const ValidationError& e) {
      throw ValidationError(w.substr(0, w.size() - 1) + ": " + e.what());
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<ModelRow> load_model_rows(const std::string& path) { return parse_model_rows(read_file(path)); }

sensitivity::ParamDelta parse_delta(std::string_view text) {
  sensitivity::ParamDelta d;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ValidationError("delta: expected name=value, got '" + std::string(item) + "'");
    const std::string name(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ValidationError("delta: '" + name + "' is not a number");
    }
    if (name == "dn") {
      d.dn = v;
    } else if (name == "dH") {
      d.dH = v;
    } else if (name == "dT") {
      d.dT = v;
    } else if (name == "dt") {
      d.dt = v;
    } else {
      throw ValidationError("delta: unknown component '" + name + "' (expected dn, dH, dT, dt)");
    }
  }
  d.validate();
  return d;
}

model::NetworkShape fit_shape_from_topology(const sim::ScenarioConfig& config, sim::NodeId source,
                                            sim::NodeId destination) {
  config.validate();
  const sim::World world(config);
  const auto n = world.size();
  if (source >= n || destination >= n) throw ValidationError("fit: flow endpoint out of range");
  std::vector<int> dist(n, -1);
  std::queue<sim::NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  std::vector<std::size_t> degree(n, 0);
  for (sim::NodeId v = 0; v < n; ++v) degree[v] = world.neighbors(v, 0.0).size();
  while (!frontier.empty()) {
    const sim::NodeId v = frontier.front();
    frontier.pop();
    for (sim::NodeId w : world.neighbors(v, 0.0)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
    }
  }
  if (dist[destination] < 1) throw ValidationError("fit: destination unreachable from source at t=0");

  model::NetworkShape shape;
  shape.nodes = static_cast<double>(n);
  shape.hops = dist[destination];
  shape.forwarding_probability = 1.0;
  shape.tier_neighbors.assign(static_cast<std::size_t>(shape.hops), 0.0);
  for (int d : dist) {
    if (d >= 1 && d <= shape.hops) shape.tier_neighbors[static_cast<std::size_t>(d - 1)] += 1.0;
  }
  for (int i = 2; i <= 4; ++i) {
    const auto matching = std::count(degree.begin(), degree.end(), static_cast<std::size_t>(i));
    shape.coverage[static_cast<std::size_t>(i - 2)] = static_cast<double>(matching) / static_cast<double>(n);
  }
  return shape;
}

// ----------------------------------------------------------------- sweeps

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::pause: return "pause";
    case SweepAxis::speed: return "speed";
    case SweepAxis::scalability: return "scalability";
    case SweepAxis::traffic: return "traffic";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(std::string_view text) {
  if (text == "pause" || text == "mobility") return SweepAxis::pause;
  if (text == "speed") return SweepAxis::speed;
  if (text == "scalability" || text == "nodes") return SweepAxis::scalability;
  if (text == "traffic" || text == "rate") return SweepAxis::traffic;
  throw ValidationError("axis: unknown value '" + std::string(text) + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ValidationError("values must not be empty");
  if (seeds.empty()) throw ValidationError("seeds must not be empty");
  if (protocols.empty()) throw ValidationError("protocols must not be empty");
  for (const auto& p : protocols) resolve_protocol(p);
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("values must be finite");
    if (axis == SweepAxis::scalability && (v < 2.0 || v != std::floor(v))) {
      throw ValidationError("values: node counts must be integers >= 2");
    }
  }
  base.validate();
}

SweepSpec parse_sweep(std::string_view text, const std::filesystem::path& base_dir) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ValidationError("sweep must be an object");
  for (const auto& [key, value] : doc.items()) {
    static const std::vector<std::string> known{"name", "axis", "values", "seeds", "protocols", "base"};
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ValidationError(key + ": unknown field");
  }
  SweepSpec s;
  s.name = field<std::string>(doc, "name", "sweep", "");
  s.axis = sweep_axis_from_string(field<std::string>(doc, "axis", "scalability", ""));
  s.values = field<std::vector<double>>(doc, "values", {}, "");
  s.seeds = field<std::vector<std::uint64_t>>(doc, "seeds", {}, "");
  s.protocols = field<std::vector<std::string>>(doc, "protocols", {}, "");
  auto base = doc.find("base");
  if (base == doc.end()) throw ValidationError("base: missing");
  if (base->is_string()) {
    std::string where = base->get<std::string>();
    const std::filesystem::path as_path(where);
    if (where.rfind("builtin:", 0) != 0 && as_path.is_relative() && !base_dir.empty()) {
      where = (base_dir / as_path).string();
    }
    s.base = sim::load_scenario(where);
  } else {
    s.base = sim::scenario_from_json(base->dump());
  }
  s.validate();
  return s;
}

SweepSpec bundled_sweep(std::string_view name) {
  SweepSpec s;
  s.name = std::string(name);
  s.seeds = {1, 2, 3, 4, 5};
  s.protocols = proto::builtin_profile_names();
  if (name == "scalability-sweep") {
    s.axis = SweepAxis::scalability;
    s.values = {20, 50, 100};
    s.base = sim::bundled_scenario("scalability-sweep");
  } else if (name == "mobility-50") {
    s.axis = SweepAxis::pause;
    s.values = {0, 50, 100};
    s.base = sim::bundled_scenario("mobility-50");
  } else {
    throw ValidationError("unknown bundled sweep '" + std::string(name) + "'");
  }
  return s;
}

SweepSpec load_sweep(const std::string& spec) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return bundled_sweep(std::string_view(spec).substr(prefix.size()));
  return parse_sweep(read_file(spec), std::filesystem::path(spec).parent_path());
}

sim::ScenarioConfig sweep_point(const SweepSpec& spec, double value, const std::string& protocol,
                                 std::uint64_t seed) {
  sim::ScenarioConfig c = spec.base;
  switch (spec.axis) {
    case SweepAxis::pause: c.pause = value; break;
    case SweepAxis::speed: c.speed = value; break;
    case SweepAxis::scalability: c.node_count = static_cast<int>(value); break;
    case SweepAxis::traffic:
      c.random_traffic.rate_pps = value;
      for (auto& f : c.flows) f.rate_pps = value;
      break;
  }
  c.profile = resolve_protocol(protocol);
  c.seed = seed;
  return c;
}

SweepOutcome run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  std::vector<SweepRow> cells;
  for (double v : spec.values) {
    for (const auto& p : spec.protocols) {
      for (std::uint64_t s : spec.seeds) cells.push_back(SweepRow{v, p, s, {}});
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.value, a.protocol, a.seed) < std::tie(b.value, b.protocol, b.seed);
  });
  std::vector<std::optional<std::string>> errors(cells.size());
  std::vector<char> done(cells.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size() && !abort; i = next++) {
      try {
        cells[i].report = sim::run_scenario(sweep_point(spec, cells[i].value, cells[i].protocol, cells[i].seed)).report;
        done[i] = 1;
      } catch (const std::exception& e) {
        errors[i] = e.what();
        abort = true;
      }
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepOutcome out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (errors[i] && !out.error) {
      out.error = "run (" + format_number(cells[i].value) + ", " + cells[i].protocol + ", seed " +
                  std::to_string(cells[i].seed) + "): " + *errors[i];
    }
    if (done[i]) out.rows.push_back(std::move(cells[i]));
  }
  return out;
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::string out = std::string(metrics::kCsvSchema) + "\n" + metrics::csv_header() + ",axis,axis_value\n";
  for (const auto& r : rows) {
    out += metrics::csv_row(r.report) + "," + std::string(to_string(spec.axis)) + "," + format_number(r.value) + "\n";
  }
  return out;
}

std::string sweep_summary_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  struct Cell {
    std::vector<double> throughput, delay, nrl, control, delivery;
  };
  std::vector<std::pair<std::pair<double, std::string>, Cell>> cells;
  for (const auto& r : rows) {
    auto it = std::find_if(cells.begin(), cells.end(), [&](const auto& c) {
      return c.first.first == r.value && c.first.second == r.protocol;
    });
    if (it == cells.end()) {
      cells.push_back({{r.value, r.protocol}, {}});
      it = std::prev(cells.end());
    }
    Cell& c = it->second;
    c.throughput.push_back(r.report.throughput_bps);
    if (r.report.mean_delay_s) c.delay.push_back(*r.report.mean_delay_s);
    if (r.report.nrl) c.nrl.push_back(*r.report.nrl);
    c.control.push_back(static_cast<double>(r.report.control_total()));
    c.delivery.push_back(r.report.data_sent == 0 ? 0.0
                                                 : static_cast<double>(r.report.data_delivered) /
                                                       static_cast<double>(r.report.data_sent));
  }
  std::string out = std::string("# schema: rolab-sweep-summary v1\n") + std::string(to_string(spec.axis)) +
                    ",protocol,runs,throughput_bps_mean,throughput_bps_stdev,mean_delay_s_mean,mean_delay_s_stdev,"
                    "nrl_mean,nrl_stdev,control_mean,control_stdev,delivery_ratio_mean,delivery_ratio_stdev\n";
  for (const auto& [key, c] : cells) {
    auto pair = [](const std::vector<double>& xs) {
      if (xs.empty()) return std::string(",");
      return format_number(mean_of(xs)) + "," + format_number(stdev_of(xs));
    };
    out += format_number(key.first) + "," + key.second + "," + std::to_string(c.throughput.size()) + "," +
           pair(c.throughput) + "," + pair(c.delay) + "," + pair(c.nrl) + "," + pair(c.control) + "," +
           pair(c.delivery) + "\n";
  }
  return out;
}

// --------------------------------------------------------------- commands

int cmd_model(const std::string& params_file, const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto rows = load_model_rows(params_file);
    std::string table = "label,mode,rreq,rrep,discovery,hello,hello_discrete,total\n";
    for (auto& row : rows) {
      if (options.formula_mode) row.shape.mode = *options.formula_mode;
      const auto b = model::aggregate_overhead(row.shape, row.routes);
      table += row.label + "," + std::string(model::to_string(row.shape.mode)) + "," + format_number(b.rreq) + "," +
               format_number(b.rrep) + "," + format_number(b.discovery) + "," + format_number(b.hello) + "," +
               format_number(model::hello_overhead_total_discrete(row.routes)) + "," + format_number(b.total) +
               "\n";
    }
    out << table;
    if (options.out_dir) write_file(*options.out_dir / "model.csv", table);
    return static_cast<int>(kExitOk);
  });
}

int cmd_sensitivity(const std::string& params_file, const std::string& delta_text, const Options& options,
                    std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto delta = parse_delta(delta_text);
    auto rows = load_model_rows(params_file);
    using sensitivity::Method;
    using sensitivity::Parameter;
    std::string table = "label,method,d_n,d_H,d_T,d_t,total_differential,non_smooth\n";
    for (auto& row : rows) {
      if (options.formula_mode) row.shape.mode = *options.formula_mode;
      for (Method m : {Method::analytic, Method::paper_literal, Method::finite_difference}) {
        const auto report = sensitivity::total_differential(row.shape, row.routes, delta, m);
        auto partial = [&](Parameter p) {
          auto it = report.partials.find(p);
          return it == report.partials.end() ? std::string() : format_number(it->second);
        };
        table += row.label + "," + std::string(sensitivity::to_string(m)) + "," + partial(Parameter::nodes) + "," +
                 partial(Parameter::hops) + "," + partial(Parameter::lifetime) + "," +
                 partial(Parameter::interval) + "," + format_number(report.total_differential) + "," +
                 (report.non_smooth ? "yes" : "no") + "\n";
      }
    }
    out << table;
    if (options.out_dir) write_file(*options.out_dir / "sensitivity.csv", table);
    return static_cast<int>(kExitOk);
  });
}

int cmd_sim(const std::string& scenario, const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = apply_options(sim::load_scenario(scenario), options);
    auto result = sim::run_scenario(config);
    const std::string stem = config.id + "-" + config.profile.name + "-seed" + std::to_string(config.seed);
    const auto dir = output_dir(options);
    const std::string report_json = metrics::to_json(result.report);
    write_file(dir / (stem + ".json"), report_json);
    write_file(dir / (stem + ".csv"), std::string(metrics::kCsvSchema) + "\n" + metrics::csv_header() + "\n" +
                                          metrics::csv_row(result.report) + "\n");
    if (options.trace) write_file(dir / (stem + ".trace.ndjson"), result.trace.to_ndjson());
    out << report_json;
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep(const std::string& sweep, const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SweepSpec spec = load_sweep(sweep);
    if (options.protocol) spec.protocols = {*options.protocol};
    if (options.seed) spec.seeds = {*options.seed};
    spec.validate();
    const auto outcome = run_sweep(spec, options.threads);
    const auto dir = output_dir(options);
    const std::string csv = sweep_csv(spec, outcome.rows);
    write_file(dir / (spec.name + ".csv"), csv);
    write_file(dir / (spec.name + "-summary.csv"), sweep_summary_csv(spec, outcome.rows));
    out << csv;
    if (outcome.error) {
      err << "error: " << *outcome.error << " (" << outcome.rows.size() << " completed rows kept)\n";
      return static_cast<int>(kExitRuntime);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_compare(const std::string& scenario, const std::string& params_file, const Options& options,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = apply_options(sim::load_scenario(scenario), options);
    if (!config.is_static() && !options.allow_mobile) {
      throw ValidationError("scenario '" + config.id + "' is mobile; the model assumes no breaks (use --allow-mobile)");
    }
    std::vector<ModelRow> rows;
    if (!params_file.empty()) rows = load_model_rows(params_file);
    std::optional<std::pair<sim::NodeId, sim::NodeId>> endpoints;
    if (!config.flows.empty()) endpoints = std::make_pair(config.flows.front().source, config.flows.front().destination);
    if (options.fit) {
      if (!endpoints) throw ValidationError("--fit needs an explicit flow in the scenario");
      const auto shape = fit_shape_from_topology(config, endpoints->first, endpoints->second);
      if (rows.empty()) rows.push_back(ModelRow{"fitted", shape, {}});
      for (auto& r : rows) r.shape = shape;
    }
    if (rows.empty()) throw ValidationError("compare needs a params file or --fit");

    const auto result = sim::run_scenario(config);
    const auto& rep = result.report;
    std::optional<int> distance;
    if (endpoints) {
      try {
        distance = fit_shape_from_topology(config, endpoints->first, endpoints->second).hops;
      } catch (const ValidationError&) {
      }
    }

    std::string text;
    for (auto& row : rows) {
      if (options.formula_mode) row.shape.mode = *options.formula_mode;
      if (distance && *distance != row.shape.hops) {
        err << "warning: row '" << row.label << "' has H=" << row.shape.hops << " but the first flow spans "
            << *distance << " hops\n";
      }
      const auto b = model::aggregate_overhead(row.shape, row.routes);
      const double hello_discrete = model::hello_overhead_total_discrete(row.routes);
      text += "# compare scenario=" + config.id + " protocol=" + config.profile.name +
              " seed=" + std::to_string(config.seed) + " row=" + row.label + "\n";
      text += "metric,model,simulated,abs_delta,rel_delta\n";
      auto line = [&](const std::string& name, double model_value, double sim_value) {
        const double delta = sim_value - model_value;
        text += name + "," + format_number(model_value) + "," + format_number(sim_value) + "," +
                format_number(std::abs(delta)) + "," +
                (model_value != 0.0 ? format_number(delta / model_value) : std::string()) + "\n";
      };
      const auto rreq = static_cast<double>(rep.control(PacketKind::rreq));
      const auto rrep = static_cast<double>(rep.control(PacketKind::rrep));
      const auto hello = static_cast<double>(rep.control(PacketKind::hello));
      line("rreq", b.rreq, rreq);
      line("rrep", b.rrep, rrep);
      line("hello", b.hello, hello);
      line("hello_discrete", hello_discrete, hello);
      line("total", b.total, rreq + rrep + hello);
    }
    out << text;
    if (options.out_dir) write_file(*options.out_dir / (config.id + "-compare.csv"), text);
    return static_cast<int>(kExitOk);
  });
}

int cmd_scenario_dump(const std::string& scenario, const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << sim::scenario_to_json(apply_options(sim::load_scenario(scenario), options));
    return static_cast<int>(kExitOk);
  });
}

}  // namespace rolab::harness
