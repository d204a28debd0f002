#include "rolab/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rolab/error.hpp"

namespace rolab::sensitivity {

using model::MonitoredRoute;
using model::NetworkShape;

std::string_view to_string(Method method) {
  switch (method) {
    case Method::analytic: return "analytic";
    case Method::paper_literal: return "paper_literal";
    case Method::finite_difference: return "finite_difference";
  }
  return "?";
}

std::string_view to_string(Parameter parameter) {
  switch (parameter) {
    case Parameter::nodes: return "n";
    case Parameter::hops: return "H";
    case Parameter::lifetime: return "T";
    case Parameter::interval: return "t";
  }
  return "?";
}

Method method_from_string(std::string_view text) {
  if (text == "analytic") return Method::analytic;
  if (text == "paper_literal") return Method::paper_literal;
  if (text == "finite_difference") return Method::finite_difference;
  throw ValidationError("unknown sensitivity method '" + std::string(text) + "'");
}

void ParamDelta::validate() const {
  if (!std::isfinite(dn) || !std::isfinite(dH) || !std::isfinite(dT) || !std::isfinite(dt)) {
    throw ValidationError("delta components must be finite");
  }
}

double default_step(double x) {
  return std::max(1e-4 * std::max(1.0, std::abs(x)), 1e-6);
}

double finite_difference(const std::function<double(double)>& fn, double point, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("finite-difference step must be > 0");
  double upper = 0.0;
  double lower = 0.0;
  try {
    upper = fn(point + step);
    lower = fn(point - step);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("finite-difference point leaves the domain: ") + e.what());
  }
  return (upper - lower) / (2.0 * step);
}

namespace {

double model_total(const NetworkShape& shape, std::span<const MonitoredRoute> routes) {
  return model::aggregate_overhead(shape, routes).total;
}

void validate_routes(std::span<const MonitoredRoute> routes) {
  for (std::size_t i = 0; i < routes.size(); ++i) {
    try {
      routes[i].validate();
    } catch (const ValidationError& e) {
      throw ValidationError("route[" + std::to_string(i) + "]: " + e.what());
    }
  }
}

// Printed closed form of the n-derivative: the tier factor is the literal
// constant, brackets are unclamped, and the reply term keeps its stray H.
double literal_nodes(const NetworkShape& shape) {
  const double H = shape.hops;
  const double p = shape.forwarding_probability;
  const double tier = model::rreq_terms(shape).tier_sum;
  double inner = 0.0;
  for (int i = 2; i <= 4; ++i) inner += ((-i) - tier) * p * shape.coverage_index(i);
  return H * 4.0 * std::pow(3.0, H - 1) * inner + H + (H / 2.0) * (-H - 2.0) * p;
}

// "H - 1(3^{H-1})" is read as (H - 1) * 3^(H-1).
double literal_hops(const NetworkShape& shape) {
  const double H = shape.hops;
  const double p = shape.forwarding_probability;
  const double n = shape.nodes;
  const double tier = model::rreq_terms(shape).tier_sum;
  double inner = 0.0;
  for (int i = 2; i <= 4; ++i) inner += ((n - 1.0 - i) - tier) * p * shape.coverage_index(i);
  return H * 4.0 * std::pow(3.0, H - 1) + (H - 1.0) * std::pow(3.0, H - 1) * inner + 1.0 + 0.5 * (n - 3.0) * p;
}

std::vector<MonitoredRoute> shifted(std::span<const MonitoredRoute> routes, double dT, double dt) {
  std::vector<MonitoredRoute> out(routes.begin(), routes.end());
  for (auto& r : out) {
    r.lifetime += dT;
    r.interval += dt;
  }
  return out;
}

double smallest_interval(std::span<const MonitoredRoute> routes) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : routes) m = std::min(m, r.interval);
  return routes.empty() ? 1.0 : m;
}

double largest_lifetime(std::span<const MonitoredRoute> routes) {
  double m = 0.0;
  for (const auto& r : routes) m = std::max(m, r.lifetime);
  return m;
}

}  // namespace

Partial partial_wrt_nodes(const NetworkShape& shape, std::span<const MonitoredRoute> routes, Method method) {
  shape.validate();
  validate_routes(routes);

  const double step = default_step(shape.nodes);
  const model::RreqTerms terms = model::rreq_terms(shape);
  const double p = shape.forwarding_probability;
  const double H = shape.hops;

  Partial out;
  for (int i = 2; i <= 4; ++i) {
    const double coefficient = terms.tier_weight * p * shape.coverage_index(i);
    if (coefficient > 0.0 && std::abs(terms.brackets[static_cast<std::size_t>(i - 2)]) <= step) {
      out.non_smooth = true;
    }
  }
  if (p > 0.0 && std::abs(shape.nodes - H - 2.0) <= step) out.non_smooth = true;

  switch (method) {
    case Method::analytic: {
      double rreq = 0.0;
      for (int i = 2; i <= 4; ++i) {
        if (terms.brackets[static_cast<std::size_t>(i - 2)] > 0.0) rreq += p * shape.coverage_index(i);
      }
      rreq *= terms.tier_weight;
      const double rrep = (shape.nodes - H - 2.0) * p > 0.0 ? (H / 2.0) * p : 0.0;
      out.value = rreq + rrep;
      break;
    }
    case Method::paper_literal:
      out.value = literal_nodes(shape);
      break;
    case Method::finite_difference: {
      auto fn = [&](double n) {
        NetworkShape moved = shape;
        moved.nodes = n;
        return model_total(moved, routes);
      };
      out.value = finite_difference(fn, shape.nodes, step);
      break;
    }
  }
  return out;
}

double partial_wrt_hops(const NetworkShape& shape, std::span<const MonitoredRoute> routes, Method method) {
  shape.validate();
  validate_routes(routes);
  if (method == Method::paper_literal) return literal_hops(shape);

  if (shape.tier_neighbors.size() < static_cast<std::size_t>(shape.hops)) {
    throw ValidationError("H+1 = " + std::to_string(shape.hops + 1) +
                          " exceeds configured tier data (need tier_neighbors for N_" + std::to_string(shape.hops) +
                          ")");
  }
  NetworkShape next = shape;
  next.hops = shape.hops + 1;
  return model_total(next, routes) - model_total(shape, routes);
}

double partial_wrt_lifetime(std::span<const MonitoredRoute> routes, Method method) {
  validate_routes(routes);
  if (method == Method::finite_difference) {
    auto fn = [&](double dT) {
      const auto moved = shifted(routes, dT, 0.0);
      return model::hello_overhead_total(moved);
    };
    return finite_difference(fn, 0.0, default_step(largest_lifetime(routes)));
  }
  double sum = 0.0;
  for (const auto& r : routes) sum += (2.0 / r.interval) * r.links;
  return sum;
}

double partial_wrt_interval(std::span<const MonitoredRoute> routes, Method method) {
  validate_routes(routes);
  if (method == Method::finite_difference) {
    auto fn = [&](double dt) {
      const auto moved = shifted(routes, 0.0, dt);
      return model::hello_overhead_total(moved);
    };
    return finite_difference(fn, 0.0, default_step(smallest_interval(routes)));
  }
  double sum = 0.0;
  for (const auto& r : routes) sum += -2.0 * (r.lifetime / (r.interval * r.interval)) * r.links;
  return sum;
}

SensitivityReport total_differential(const NetworkShape& shape, std::span<const MonitoredRoute> routes,
                                     const ParamDelta& delta, Method method) {
  delta.validate();
  SensitivityReport report;
  report.method = method;

  const Partial dn = partial_wrt_nodes(shape, routes, method);
  report.partials[Parameter::nodes] = dn.value;
  report.non_smooth = dn.non_smooth;

  const bool have_next_tier = shape.tier_neighbors.size() >= static_cast<std::size_t>(shape.hops);
  if (method == Method::paper_literal || have_next_tier || delta.dH != 0.0) {
    report.partials[Parameter::hops] = partial_wrt_hops(shape, routes, method);
  }
  report.partials[Parameter::lifetime] = partial_wrt_lifetime(routes, method);
  report.partials[Parameter::interval] = partial_wrt_interval(routes, method);

  double total = dn.value * delta.dn;
  if (auto it = report.partials.find(Parameter::hops); it != report.partials.end()) total += it->second * delta.dH;
  total += report.partials[Parameter::lifetime] * delta.dT;
  total += report.partials[Parameter::interval] * delta.dt;
  report.total_differential = total;
  return report;
}

}  // namespace rolab::sensitivity
