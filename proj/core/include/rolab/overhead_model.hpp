#pragma once

// Closed-form control-overhead model of a reactive routing protocol:
// route request flooding, route replies along the reverse path, and
// periodic HELLO link monitoring of established routes.

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace rolab::model {

/// How the outer tier sum of the route-request term is weighted.
///  - literal: every tier carries the constant factor 4 * 3^(H-1), so the
///    outer sum degenerates to a multiplication by H.
///  - tiered: tier k carries 4 * 3^(k-1).
enum class FormulaMode { literal, tiered };

std::string_view to_string(FormulaMode mode);
FormulaMode formula_mode_from_string(std::string_view text);

/// Analytic description of the modeled network.
struct NetworkShape {
  /// Node count n. Kept real-valued so the sensitivity analysis can treat
  /// it as continuous; validation only requires n >= 2.
  double nodes = 2.0;
  /// Expected source-to-destination hop count H.
  int hops = 1;
  /// Forwarding/connectivity probability p in [0, 1].
  double forwarding_probability = 1.0;
  /// Additional coverage indices C_2, C_3, C_4.
  std::array<double, 3> coverage{1.0, 1.0, 1.0};
  /// Expected neighbors per hop tier N_1, N_2, ... At least H - 1 entries;
  /// only the first H - 1 enter the formula. Extra entries let the hop
  /// difference evaluate the network at H + 1.
  std::vector<double> tier_neighbors;
  FormulaMode mode = FormulaMode::literal;

  double coverage_index(int neighbors) const { return coverage.at(static_cast<std::size_t>(neighbors - 2)); }

  /// Throws ValidationError naming the violated invariant.
  void validate() const;
};

/// Maintenance parameters of one established route.
struct MonitoredRoute {
  int links = 1;          ///< l
  double lifetime = 0.0;  ///< T, seconds
  double interval = 1.0;  ///< t, seconds between HELLOs

  void validate() const;
};

struct OverheadBreakdown {
  double rreq = 0.0;
  double rrep = 0.0;
  double discovery = 0.0;
  double hello = 0.0;
  double total = 0.0;
};

double rreq_overhead(const NetworkShape& shape);
double rrep_overhead(const NetworkShape& shape);
double discovery_overhead(const NetworkShape& shape);

/// 2 * (T / t) * l.
double hello_overhead_route(const MonitoredRoute& route);
/// 2 * l * floor(T / t): the count a simulator emitting one HELLO per link
/// endpoint per interval actually produces.
double hello_overhead_route_discrete(const MonitoredRoute& route);
double hello_overhead_total(std::span<const MonitoredRoute> routes);
double hello_overhead_total_discrete(std::span<const MonitoredRoute> routes);

OverheadBreakdown aggregate_overhead(const NetworkShape& shape, std::span<const MonitoredRoute> routes);

/// Per-term pieces of the route-request sum, exposed for the sensitivity
/// analysis. Brackets are the unclamped values (n - 1 - i) - sum(N_j) for
/// i = 2, 3, 4.
struct RreqTerms {
  double tier_weight = 0.0;  ///< sum over tiers of the 4*3^x factor
  double tier_sum = 0.0;     ///< sum of N_1..N_{H-1}
  std::array<double, 3> brackets{};
};
RreqTerms rreq_terms(const NetworkShape& shape);

}  // namespace rolab::model
