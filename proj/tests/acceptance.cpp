// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rolab/error.hpp"
#include "rolab/harness.hpp"
#include "rolab/metrics.hpp"
#include "rolab/overhead_model.hpp"
#include "rolab/sensitivity.hpp"
#include "rolab/simulation.hpp"
#include "support/oracles.hpp"
#include "support/scenarios.hpp"

using namespace rolab;
using model::FormulaMode;
using model::MonitoredRoute;
using model::NetworkShape;
using proto::PacketKind;
using sim::NodeId;
using sim::TraceEvent;
using Routes = std::vector<MonitoredRoute>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects named mismatches.
struct Checks {
  int total = 0;
  std::vector<std::string> failed;

  void expect(bool ok, const std::string& what) {
    ++total;
    if (!ok) failed.push_back(what);
  }
  void near(double got, double want, double rel, const std::string& what) {
    std::ostringstream s;
    s << what << " got " << got << " want " << want;
    expect(oracle::close(got, want, rel), s.str());
  }
  void throws(const std::function<void()>& fn, const std::string& what) {
    bool threw = false;
    try {
      fn();
    } catch (const ValidationError&) {
      threw = true;
    }
    expect(threw, what);
  }
  Outcome outcome() const {
    Outcome o;
    o.pass = failed.empty();
    o.detail = std::to_string(total - static_cast<int>(failed.size())) + "/" + std::to_string(total) + " checks";
    for (std::size_t i = 0; i < failed.size() && i < 5; ++i) o.detail += "; " + failed[i];
    return o;
  }
};

NetworkShape shape(double n, int H, double p, std::vector<double> tiers = {}, FormulaMode mode = FormulaMode::literal) {
  NetworkShape s;
  s.nodes = n;
  s.hops = H;
  s.forwarding_probability = p;
  s.tier_neighbors = std::move(tiers);
  s.mode = mode;
  return s;
}

std::vector<double> coverage(const NetworkShape& s) { return {s.coverage[0], s.coverage[1], s.coverage[2]}; }

double oracle_total(const NetworkShape& s, const std::vector<MonitoredRoute>& routes) {
  double hello = 0.0;
  for (const auto& r : routes) hello += oracle::hello(r.links, r.lifetime, r.interval);
  return oracle::rreq(s.nodes, s.hops, s.forwarding_probability, coverage(s), s.tier_neighbors,
                      s.mode == FormulaMode::tiered) +
         oracle::rrep(s.nodes, s.hops, s.forwarding_probability) + hello;
}

NetworkShape random_shape(oracle::SplitMix& rng) {
  NetworkShape s;
  s.hops = 1 + static_cast<int>(rng.below(5));
  s.nodes = 2.0 + rng.uniform() * 200.0;
  s.forwarding_probability = rng.uniform();
  for (auto& c : s.coverage) c = rng.uniform() * 3.0;
  for (int j = 0; j < s.hops; ++j) s.tier_neighbors.push_back(rng.uniform() * 8.0);
  s.mode = rng.below(2) == 0 ? FormulaMode::literal : FormulaMode::tiered;
  return s;
}

// At least 0.5 away from every clamp switch in n.
NetworkShape smooth_shape(oracle::SplitMix& rng) {
  for (;;) {
    NetworkShape s;
    s.hops = 1 + static_cast<int>(rng.below(4));
    s.nodes = 5.0 + rng.uniform() * 150.0;
    s.forwarding_probability = 0.05 + 0.95 * rng.uniform();
    for (auto& c : s.coverage) c = 0.1 + rng.uniform() * 2.0;
    for (int j = 0; j < s.hops; ++j) s.tier_neighbors.push_back(rng.uniform() * 6.0);
    s.mode = rng.below(2) == 0 ? FormulaMode::literal : FormulaMode::tiered;
    double tier_sum = 0.0;
    for (int j = 0; j < s.hops - 1; ++j) tier_sum += s.tier_neighbors[static_cast<std::size_t>(j)];
    bool ok = std::abs(s.nodes - s.hops - 2.0) > 0.5;
    for (int i = 2; i <= 4; ++i) ok = ok && std::abs((s.nodes - 1.0 - i) - tier_sum) > 0.5;
    if (ok) return s;
  }
}

std::vector<MonitoredRoute> random_routes(oracle::SplitMix& rng) {
  std::vector<MonitoredRoute> routes;
  for (std::size_t r = 1 + rng.below(3); r > 0; --r) {
    routes.push_back({1 + static_cast<int>(rng.below(5)), 1.0 + rng.uniform() * 60.0, 0.2 + rng.uniform() * 3.0});
  }
  return routes;
}

std::size_t count_tx(const sim::Trace& trace, PacketKind kind) {
  std::size_t n = 0;
  for (const auto& r : trace.records()) n += r.event == TraceEvent::transmit && r.packet == kind;
  return n;
}

// ----------------------------------------------------------- criterion 1

Outcome analytic_fixtures() {
  using namespace model;
  namespace sens = sensitivity;
  constexpr double tol = 1e-12;
  Checks c;

  c.near(rreq_overhead(shape(10, 1, 1)), oracle::rreq(10, 1, 1, {1, 1, 1}, {}, false), tol, "rreq n=10");
  c.near(rreq_overhead(shape(20, 2, 1, {4})), oracle::rreq(20, 2, 1, {1, 1, 1}, {4}, false), tol, "rreq literal");
  c.near(rreq_overhead(shape(20, 2, 1, {4}, FormulaMode::tiered)), oracle::rreq(20, 2, 1, {1, 1, 1}, {4}, true), tol,
         "rreq tiered");
  c.near(rreq_overhead(shape(10, 1, 1)), 72, tol, "rreq hand value");
  c.near(rreq_overhead(shape(20, 2, 1, {4})), 864, tol, "rreq literal hand value");
  c.near(rreq_overhead(shape(20, 2, 1, {4}, FormulaMode::tiered)), 576, tol, "rreq tiered hand value");
  c.expect(rreq_overhead(shape(37, 3, 0, {2, 5})) == 0.0, "rreq p=0");

  c.near(rrep_overhead(shape(20, 3, 1, {1, 1})), oracle::rrep(20, 3, 1), tol, "rrep H=3");
  c.near(rrep_overhead(shape(20, 3, 1, {1, 1})), 25.5, tol, "rrep hand value");
  c.near(rrep_overhead(shape(64, 5, 0, {1, 1, 1, 1})), 5, tol, "rrep p=0");
  c.near(rrep_overhead(shape(3, 1, 1)), oracle::rrep(3, 1, 1), tol, "rrep n=3");

  c.near(discovery_overhead(shape(10, 1, 1)), oracle::rreq(10, 1, 1, {1, 1, 1}, {}, false) + oracle::rrep(10, 1, 1),
         tol, "discovery");
  c.near(discovery_overhead(shape(30, 4, 0, {2, 2, 2})), 4, tol, "discovery p=0");

  oracle::SplitMix rng{1};
  for (int i = 0; i < 100; ++i) {
    const auto s = random_shape(rng);
    c.expect(discovery_overhead(s) == rreq_overhead(s) + rrep_overhead(s), "additivity");
  }

  c.near(hello_overhead_route({4, 2.0, 2.0}), 8, tol, "hello T=t");
  c.near(hello_overhead_route({1, 900, 1}), oracle::hello(1, 900, 1), tol, "hello 900 s");
  c.expect(hello_overhead_route({2, 0, 1}) == 0.0, "hello T=0");
  c.near(hello_overhead_total(Routes{{1, 10, 1}, {1, 10, 1}}), 2 * oracle::hello(1, 10, 1), tol, "hello total two");
  c.expect(hello_overhead_total(Routes{}) == 0.0, "hello total empty");
  c.near(hello_overhead_total(Routes{{4, 3, 3}, {1, 900, 1}}), 8 + oracle::hello(1, 900, 1), tol, "hello total mixed");
  c.throws([] { hello_overhead_route({1, 1, 0}); }, "hello t=0 rejected");

  const std::vector<MonitoredRoute> one_link{{1, 10, 1}};
  c.near(aggregate_overhead(shape(10, 1, 1), one_link).total, oracle_total(shape(10, 1, 1), one_link), tol,
         "aggregate");
  c.near(aggregate_overhead(shape(10, 1, 1), one_link).total, 96.5, tol, "aggregate hand value");
  c.near(aggregate_overhead(shape(30, 2, 0, {3}), {}).total, 2, tol, "aggregate p=0");
  for (int i = 0; i < 100; ++i) {
    const auto s = random_shape(rng);
    const auto routes = random_routes(rng);
    const auto b = aggregate_overhead(s, routes);
    c.expect(b.discovery == b.rreq + b.rrep && b.total == b.discovery + b.hello, "breakdown identity");
    c.near(b.total, oracle_total(s, routes), tol, "breakdown vs oracle");
  }

  // Sensitivity.
  {
    const auto s = shape(10, 1, 1);
    const double h = 1e-4 * 10;
    auto up = s;
    auto down = s;
    up.nodes += h;
    down.nodes -= h;
    const double fd = (oracle_total(up, {}) - oracle_total(down, {})) / (2 * h);
    c.near(sens::partial_wrt_nodes(s, {}).value, fd, 1e-9, "dR/dn vs oracle difference");
    c.near(sens::partial_wrt_nodes(s, {}).value, 12.5, tol, "dR/dn hand value");
  }
  c.expect(sens::partial_wrt_nodes(shape(40, 3, 0, {2, 2}), {}).value == 0.0, "dR/dn p=0");
  for (int i = 0; i < 100; ++i) {
    const auto s = smooth_shape(rng);
    const auto routes = random_routes(rng);
    const double a = sens::partial_wrt_nodes(s, routes, sens::Method::analytic).value;
    const double f = sens::partial_wrt_nodes(s, routes, sens::Method::finite_difference).value;
    c.expect(std::abs(a - f) / std::max(1.0, std::abs(a)) <= 1e-6, "dR/dn analytic vs fd");
  }
  {
    const auto s = shape(20, 1, 1, {4});
    auto next = s;
    next.hops = 2;
    c.near(sens::partial_wrt_hops(s, {}), oracle_total(next, {}) - oracle_total(s, {}), tol, "dR/dH vs oracle");
    c.near(sens::partial_wrt_hops(s, {}), 680.5, tol, "dR/dH hand value");
  }
  c.near(sens::partial_wrt_hops(shape(30, 3, 0, {1, 1, 1}), {}), 1, tol, "dR/dH p=0");
  for (int i = 0; i < 50; ++i) {
    const auto s = smooth_shape(rng);
    const auto routes = random_routes(rng);
    auto next = s;
    next.hops += 1;
    c.near(sens::partial_wrt_hops(s, routes), oracle_total(next, routes) - oracle_total(s, routes), tol,
           "dR/dH re-evaluation");
  }
  c.near(sens::partial_wrt_lifetime(Routes{{2, 0, 1}}), 2.0 * 2 / 1, tol, "dR/dT one route");
  c.near(sens::partial_wrt_lifetime(Routes{{1, 0, 2}, {3, 0, 1}}), 2.0 / 2 + 2.0 * 3, tol, "dR/dT two routes");
  c.expect(sens::partial_wrt_lifetime(Routes{}) == 0.0, "dR/dT empty");
  c.near(sens::partial_wrt_interval(Routes{{1, 10, 2}}), -2.0 * 10 / 4, tol, "dR/dt one route");
  c.near(sens::partial_wrt_interval(Routes{{2, 4, 2}}), -2.0 * 4 / 4 * 2, tol, "dR/dt l=2");
  c.expect(sens::partial_wrt_interval(Routes{{1, 0, 1}, {3, 0, 2}}) == 0.0, "dR/dt T=0");
  c.near(sens::total_differential(shape(10, 1, 1), Routes{{2, 0, 1}}, {0, 0, 1, 0}).total_differential, 4, tol,
         "total dT");
  c.expect(sens::total_differential(shape(10, 1, 1), Routes{{2, 0, 1}}, {}).total_differential == 0.0, "total zero");
  c.near(sens::total_differential(shape(10, 1, 1), Routes{{1, 10, 2}}, {0, 0, 1, 1}).total_differential, 1.0 - 5.0, tol,
         "total dT dt");
  c.near(sens::finite_difference([](double T) { return 2.0 * T; }, 5.0, 0.1), 2.0, tol, "fd linear");
  c.near(sens::finite_difference([](double t) { return 20.0 / t; }, 2.0, 1e-4), -20.0 / 4, 1e-6, "fd reciprocal");
  c.expect(sens::finite_difference([](double) { return 3.0; }, 1.0, 0.5) == 0.0, "fd constant");
  return c.outcome();
}

// ----------------------------------------------------------- criterion 2

Outcome derivative_oracle() {
  namespace sens = sensitivity;
  Checks c;
  oracle::SplitMix rng{2};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto s = smooth_shape(rng);
    const auto routes = random_routes(rng);
    auto rel = [&](double a, double f) {
      const double r = std::abs(a - f) / std::max(1.0, std::abs(a));
      worst = std::max(worst, r);
      return r <= 1e-6;
    };
    c.expect(rel(sens::partial_wrt_nodes(s, routes).value,
                 sens::partial_wrt_nodes(s, routes, sens::Method::finite_difference).value),
             "n");
    c.expect(rel(sens::partial_wrt_lifetime(routes), sens::partial_wrt_lifetime(routes, sens::Method::finite_difference)),
             "T");
    c.expect(rel(sens::partial_wrt_interval(routes), sens::partial_wrt_interval(routes, sens::Method::finite_difference)),
             "t");
    auto next = s;
    next.hops += 1;
    c.expect(sens::partial_wrt_hops(s, routes) ==
                 model::aggregate_overhead(next, routes).total - model::aggregate_overhead(s, routes).total,
             "H exact");
    c.near(sens::partial_wrt_hops(s, routes), oracle_total(next, routes) - oracle_total(s, routes), 1e-12,
           "H vs oracle");
  }
  auto o = c.outcome();
  char buf[64];
  std::snprintf(buf, sizeof buf, ", worst relative gap %.2e", worst);
  o.detail += buf;
  return o;
}

// ----------------------------------------------------------- criterion 3

Outcome hello_equivalence() {
  Checks c;
  for (int l = 1; l <= 4; ++l) {
    for (double T : {5.0, 10.0}) {
      for (double t : {0.5, 1.0}) {
        auto cfg = fixture::line(l + 1, 200.0, proto::aodv_profile());
        cfg.params.route_lifetime = T;
        cfg.params.hello_interval = t;
        cfg.flows.push_back(fixture::one_packet(0, static_cast<NodeId>(l)));
        cfg.duration = 1.0 + T + 20.0;
        const auto r = sim::run_scenario(cfg);
        const double got = static_cast<double>(r.report.control(PacketKind::hello));
        std::ostringstream what;
        what << "l=" << l << " T=" << T << " t=" << t << " sim " << got << " oracle "
             << oracle::hello_discrete(l, T, t);
        c.expect(got == oracle::hello_discrete(l, T, t), what.str());
      }
    }
  }
  return c.outcome();
}

// ------------------------------------------------------- criteria 4 and 5

struct GraphCase {
  oracle::Graph g;
  NodeId target = 0;
};

std::vector<GraphCase> graph_cases() {
  oracle::SplitMix rng{4};
  std::vector<GraphCase> cases;
  for (int i = 0; i < 100; ++i) {
    GraphCase k;
    k.g = oracle::random_connected(rng, 2 + rng.below(19));
    k.target = static_cast<NodeId>(1 + rng.below(k.g.size() - 1));
    cases.push_back(std::move(k));
  }
  return cases;
}

sim::RunResult run_discovery(const GraphCase& k, bool rings) {
  auto c = fixture::from_graph(k.g, proto::aodv_profile());
  c.params.expanding_ring = rings;
  c.params.net_diameter = std::max(c.params.net_diameter, static_cast<int>(k.g.size()) + 1);
  c.flows.push_back(fixture::one_packet(0, k.target));
  c.duration = 20.0;
  return sim::run_scenario(c);
}

Outcome flood_oracle(const std::vector<GraphCase>& cases) {
  int literal = 0;
  int matches_flood_model = 0;
  int shielded = 0;
  for (const auto& k : cases) {
    const auto r = run_discovery(k, false);
    const auto dist = oracle::bfs(k.g, 0);
    const auto reach = oracle::flood_reach(k.g, 0, k.target);
    std::map<NodeId, int> first;
    for (const auto& rec : r.trace.records()) {
      if (rec.packet == PacketKind::rreq && rec.event == TraceEvent::receive && !first.count(rec.node)) {
        first[rec.node] = rec.hop_count;
      }
    }
    const auto sent = count_tx(r.trace, PacketKind::rreq);
    bool hops_bfs = true;
    bool hops_reach = true;
    for (NodeId v = 1; v < k.g.size(); ++v) {
      const int seen = first.count(v) ? first[v] : -1;
      hops_bfs = hops_bfs && seen == dist[v];
      hops_reach = hops_reach && seen == reach[v];
    }
    literal += sent == k.g.size() - 1 && hops_bfs;
    matches_flood_model += sent == static_cast<std::size_t>(oracle::flood_cost(reach, k.target)) && hops_reach;
    shielded += reach != dist;
  }
  Outcome o;
  o.pass = literal == static_cast<int>(cases.size());
  o.detail = std::to_string(literal) + "/100 graphs give N-1 requests with BFS first-hop counts; " +
             std::to_string(shielded) + " graphs have nodes whose shortest path runs through the non-forwarding "
             "destination; simulator matches the destination-aware flood oracle on " +
             std::to_string(matches_flood_model) + "/100";
  return o;
}

Outcome ers_dominance(const std::vector<GraphCase>& cases) {
  const proto::ProtocolParams p;
  int dominated = 0;
  int strict_needed = 0;
  int strict_held = 0;
  int oracle_agrees = 0;
  for (const auto& k : cases) {
    const auto ers = count_tx(run_discovery(k, true).trace, PacketKind::rreq);
    const auto flood = count_tx(run_discovery(k, false).trace, PacketKind::rreq);
    const auto dist = oracle::bfs(k.g, 0);
    const auto reach = oracle::flood_reach(k.g, 0, k.target);
    const int ecc = *std::max_element(dist.begin(), dist.end());
    const int net_ttl = std::max(p.net_diameter, static_cast<int>(k.g.size()) + 1);
    oracle_agrees += ers == static_cast<std::size_t>(
                                oracle::ers_cost(reach, k.target, p.ttl_start, p.ttl_increment, p.ttl_threshold, net_ttl)) &&
                     flood == static_cast<std::size_t>(oracle::flood_cost(reach, k.target));
    dominated += ers <= flood;
    // A ring smaller than the source's eccentricity reaches the target.
    int hit = -1;
    for (int ttl = p.ttl_start; ttl <= p.ttl_threshold; ttl += p.ttl_increment) {
      if (dist[k.target] <= ttl) {
        hit = ttl;
        break;
      }
    }
    if (hit > 0 && hit < ecc) {
      ++strict_needed;
      strict_held += ers < flood;
    }
  }
  Outcome o;
  o.pass = dominated == static_cast<int>(cases.size()) && strict_held == strict_needed;
  o.detail = "ERS <= flood on " + std::to_string(dominated) + "/100; strict on " + std::to_string(strict_held) + "/" +
             std::to_string(strict_needed) + " early-hit graphs; simulator matches ring oracle on " +
             std::to_string(oracle_agrees) + "/100";
  return o;
}

// ------------------------------------------------------- criteria 6 and 9

struct LibraryRun {
  std::string scenario;
  std::string protocol;
  std::uint64_t seed = 0;
  bool static_lossless = false;
  std::uint64_t hello = 0;
  std::uint64_t rerr = 0;
  std::uint64_t grat_trace = 0;
  std::uint64_t grat_stats = 0;
  std::size_t deliveries = 0;
  std::size_t looping = 0;
};

std::vector<LibraryRun> library_runs() {
  std::vector<LibraryRun> runs;
  for (const auto& name : sim::bundled_scenario_names()) {
    for (const auto& protocol : proto::builtin_profile_names()) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto c = sim::bundled_scenario(name);
        c.profile = proto::builtin_profile(protocol);
        c.seed = seed;
        const auto r = sim::run_scenario(c);
        LibraryRun run;
        run.scenario = name;
        run.protocol = protocol;
        run.seed = seed;
        run.static_lossless = c.is_static() && c.radio.loss_probability == 0.0;
        run.hello = r.report.control(PacketKind::hello);
        run.rerr = r.report.control(PacketKind::rerr);
        run.grat_trace = r.report.gratuitous_rrep_transmissions;
        run.grat_stats = r.stats.gratuitous_rreps;
        run.deliveries = r.trace.deliveries().size();
        for (const auto& d : r.trace.deliveries()) run.looping += oracle::has_repeats(d.path);
        runs.push_back(run);
      }
    }
  }
  return runs;
}

Outcome profile_counters(const std::vector<LibraryRun>& runs) {
  Checks c;
  for (const auto& r : runs) {
    const std::string id = r.scenario + "/" + r.protocol + "/seed" + std::to_string(r.seed);
    if (r.protocol == "dsr") c.expect(r.hello == 0, id + " HELLO " + std::to_string(r.hello));
    if (r.protocol == "dymo") {
      c.expect(r.grat_trace == 0 && r.grat_stats == 0, id + " gratuitous RREP " + std::to_string(r.grat_stats));
    }
    if (r.protocol == "aodv" && r.static_lossless) c.expect(r.rerr == 0, id + " RERR " + std::to_string(r.rerr));
  }
  // The grid without its blackout, so no node ever fails.
  auto grid = sim::bundled_scenario("static-grid-25");
  grid.blackouts.clear();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    grid.seed = seed;
    const auto rerr = sim::run_scenario(grid).report.control(PacketKind::rerr);
    c.expect(rerr == 0, "static-grid-25 without blackout seed" + std::to_string(seed) + " RERR " + std::to_string(rerr));
  }
  auto o = c.outcome();
  o.detail += " over " + std::to_string(runs.size()) + " library runs";
  return o;
}

Outcome loop_freedom(const std::vector<LibraryRun>& runs) {
  std::size_t delivered = 0;
  std::size_t looping = 0;
  for (const auto& r : runs) {
    delivered += r.deliveries;
    looping += r.looping;
  }
  Outcome o;
  o.pass = looping == 0;
  o.detail = std::to_string(looping) + " of " + std::to_string(delivered) + " delivered packets revisit a node";
  return o;
}

// ----------------------------------------------------------- criterion 7

Outcome determinism(double& slowest) {
  auto c = sim::bundled_scenario("mobility-50");
  c.seed = 42;
  std::string reports[2];
  for (auto& report : reports) {
    const auto start = std::chrono::steady_clock::now();
    report = metrics::to_json(sim::run_scenario(c).report);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  Outcome o;
  o.pass = reports[0] == reports[1] && slowest < 60.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "reports %s, slowest run %.2f s", reports[0] == reports[1] ? "identical" : "differ",
                slowest);
  o.detail = buf;
  return o;
}

// ----------------------------------------------------------- criterion 8

Outcome trends() {
  struct Cell {
    std::string name;
    std::function<sim::ScenarioConfig(const std::string&, std::uint64_t)> make;
  };
  std::vector<Cell> cells;
  cells.push_back({"mobility-50", [](const std::string& p, std::uint64_t seed) {
                     auto c = sim::bundled_scenario("mobility-50");
                     c.profile = proto::builtin_profile(p);
                     c.seed = seed;
                     return c;
                   }});
  const auto sweep = harness::bundled_sweep("scalability-sweep");
  for (double v : sweep.values) {
    cells.push_back({"scalability-" + metrics::format_number(v), [sweep, v](const std::string& p, std::uint64_t seed) {
                       return harness::sweep_point(sweep, v, p, seed);
                     }});
  }

  int cells_a = 0, cells_b = 0, cells_c = 0;
  std::string per_cell;
  for (const auto& cell : cells) {
    int a = 0, b = 0, c = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto aodv = sim::run_scenario(cell.make("aodv", seed)).report;
      const auto dsr = sim::run_scenario(cell.make("dsr", seed)).report;
      const auto dymo = sim::run_scenario(cell.make("dymo", seed)).report;
      a += dymo.control_total() < aodv.control_total();
      b += dsr.throughput_bps >= dymo.throughput_bps;
      c += aodv.mean_delay_s && dsr.mean_delay_s && *aodv.mean_delay_s >= *dsr.mean_delay_s;
    }
    cells_a += a >= 3;
    cells_b += b >= 3;
    cells_c += c >= 3;
    per_cell += " " + cell.name + " a" + std::to_string(a) + " b" + std::to_string(b) + " c" + std::to_string(c);
  }
  const int n = static_cast<int>(cells.size());
  Outcome o;
  o.pass = cells_a == n && cells_b == n && cells_c == n;
  o.detail = "cells holding a " + std::to_string(cells_a) + "/" + std::to_string(n) + ", b " + std::to_string(cells_b) +
             "/" + std::to_string(n) + ", c " + std::to_string(cells_c) + "/" + std::to_string(n) +
             "; seeds per cell:" + per_cell;
  return o;
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int id, double limit, const std::function<Outcome()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = fn();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0 && secs >= limit) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    all = all && o.pass;
    std::printf("criterion %d: %s (%s; %.2f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  report(1, 1.0, analytic_fixtures);
  report(2, 5.0, derivative_oracle);
  report(3, 10.0, hello_equivalence);
  const auto cases = graph_cases();
  report(4, 30.0, [&] { return flood_oracle(cases); });
  report(5, 30.0, [&] { return ers_dominance(cases); });
  std::vector<LibraryRun> runs;
  report(6, 0.0, [&] {
    runs = library_runs();
    return profile_counters(runs);
  });
  double slowest = 0.0;
  report(7, 0.0, [&] { return determinism(slowest); });
  report(8, 0.0, trends);
  report(9, 0.0, [&] { return loop_freedom(runs); });
  return all ? 0 : 1;
}
