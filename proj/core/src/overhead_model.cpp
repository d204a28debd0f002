#include "rolab/overhead_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rolab/error.hpp"

namespace rolab::model {

std::string_view to_string(FormulaMode mode) {
  return mode == FormulaMode::literal ? "literal" : "tiered";
}

FormulaMode formula_mode_from_string(std::string_view text) {
  if (text == "literal") return FormulaMode::literal;
  if (text == "tiered") return FormulaMode::tiered;
  throw ValidationError("formula_mode must be 'literal' or 'tiered', got '" + std::string(text) + "'");
}

void NetworkShape::validate() const {
  if (!std::isfinite(nodes) || nodes < 2.0) throw ValidationError("n must be >= 2");
  if (hops < 1) throw ValidationError("H must be >= 1");
  if (!(forwarding_probability >= 0.0 && forwarding_probability <= 1.0)) {
    throw ValidationError("p out of [0,1]");
  }
  for (std::size_t i = 0; i < coverage.size(); ++i) {
    if (!std::isfinite(coverage[i]) || coverage[i] < 0.0) {
      throw ValidationError("coverage C_" + std::to_string(i + 2) + " must be >= 0");
    }
  }
  if (tier_neighbors.size() + 1 < static_cast<std::size_t>(hops)) {
    throw ValidationError("tier_neighbors has " + std::to_string(tier_neighbors.size()) +
                          " entries, need H-1 = " + std::to_string(hops - 1));
  }
  for (std::size_t j = 0; j < tier_neighbors.size(); ++j) {
    if (!std::isfinite(tier_neighbors[j]) || tier_neighbors[j] < 0.0) {
      throw ValidationError("tier_neighbors N_" + std::to_string(j + 1) + " must be >= 0");
    }
  }
}

void MonitoredRoute::validate() const {
  if (links < 1) throw ValidationError("route links l must be >= 1");
  if (!std::isfinite(lifetime) || lifetime < 0.0) throw ValidationError("route lifetime T must be >= 0");
  if (!std::isfinite(interval) || interval <= 0.0) throw ValidationError("route interval t must be > 0");
}

RreqTerms rreq_terms(const NetworkShape& shape) {
  RreqTerms terms;
  const int H = shape.hops;
  for (int k = 1; k <= H; ++k) {
    const int exponent = shape.mode == FormulaMode::literal ? H - 1 : k - 1;
    terms.tier_weight += 4.0 * std::pow(3.0, exponent);
  }
  terms.tier_sum = std::accumulate(shape.tier_neighbors.begin(), shape.tier_neighbors.begin() + (H - 1), 0.0);
  for (int i = 2; i <= 4; ++i) {
    terms.brackets[static_cast<std::size_t>(i - 2)] = (shape.nodes - 1.0 - i) - terms.tier_sum;
  }
  return terms;
}

double rreq_overhead(const NetworkShape& shape) {
  shape.validate();
  const RreqTerms terms = rreq_terms(shape);
  double inner = 0.0;
  for (int i = 2; i <= 4; ++i) {
    // Expected counts cannot go negative; clamp each bracket.
    const double bracket = std::max(0.0, terms.brackets[static_cast<std::size_t>(i - 2)]);
    inner += bracket * shape.forwarding_probability * shape.coverage_index(i);
  }
  return terms.tier_weight * inner;
}

double rrep_overhead(const NetworkShape& shape) {
  shape.validate();
  const double H = shape.hops;
  const double value = H + (H / 2.0) * (shape.nodes - H - 2.0) * shape.forwarding_probability;
  return std::max(H, value);
}

double discovery_overhead(const NetworkShape& shape) {
  return rreq_overhead(shape) + rrep_overhead(shape);
}

double hello_overhead_route(const MonitoredRoute& route) {
  route.validate();
  return 2.0 * (route.lifetime / route.interval) * route.links;
}

double hello_overhead_route_discrete(const MonitoredRoute& route) {
  route.validate();
  // The 1e-9 nudge absorbs representation error in ratios such as 0.3/0.1.
  const double periods = std::floor(route.lifetime / route.interval + 1e-9);
  return 2.0 * route.links * periods;
}

namespace {

template <typename PerRoute>
double sum_routes(std::span<const MonitoredRoute> routes, PerRoute per_route) {
  double total = 0.0;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    try {
      total += per_route(routes[i]);
    } catch (const ValidationError& e) {
      throw ValidationError("route[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return total;
}

}  // namespace

double hello_overhead_total(std::span<const MonitoredRoute> routes) {
  return sum_routes(routes, hello_overhead_route);
}

double hello_overhead_total_discrete(std::span<const MonitoredRoute> routes) {
  return sum_routes(routes, hello_overhead_route_discrete);
}

OverheadBreakdown aggregate_overhead(const NetworkShape& shape, std::span<const MonitoredRoute> routes) {
  OverheadBreakdown out;
  out.rreq = rreq_overhead(shape);
  out.rrep = rrep_overhead(shape);
  out.discovery = out.rreq + out.rrep;
  out.hello = hello_overhead_total(routes);
  out.total = out.discovery + out.hello;
  return out;
}

}  // namespace rolab::model
