#pragma once

// Rates of change of the aggregate overhead with respect to node count,
// hop count, route lifetime and HELLO interval, plus first-order total
// differentials assembled from them.

#include <functional>
#include <map>
#include <span>
#include <string_view>

#include "rolab/overhead_model.hpp"

namespace rolab::sensitivity {

enum class Method {
  analytic,           ///< exact derivative of the implemented model
  paper_literal,      ///< closed forms as originally printed, for side-by-side tables
  finite_difference,  ///< central differences of the implemented model
};

enum class Parameter { nodes, hops, lifetime, interval };

std::string_view to_string(Method method);
std::string_view to_string(Parameter parameter);
Method method_from_string(std::string_view text);

struct ParamDelta {
  double dn = 0.0;
  double dH = 0.0;
  double dT = 0.0;
  double dt = 0.0;

  void validate() const;
};

/// A partial derivative and whether it was taken at a point where one of
/// the per-term clamps switches (the model is not differentiable there).
struct Partial {
  double value = 0.0;
  bool non_smooth = false;
};

struct SensitivityReport {
  std::map<Parameter, double> partials;
  Method method = Method::analytic;
  double total_differential = 0.0;
  bool non_smooth = false;
};

/// (f(x + step) - f(x - step)) / (2 step). A ValidationError thrown by f at
/// a shifted point is rethrown as a domain violation.
double finite_difference(const std::function<double(double)>& fn, double point, double step);

/// Default central-difference step for a parameter value x:
/// 1e-4 relative, 1e-6 absolute floor.
double default_step(double x);

Partial partial_wrt_nodes(const model::NetworkShape& shape, std::span<const model::MonitoredRoute> routes,
                          Method method = Method::analytic);

/// Discrete forward difference R(H + 1) - R(H) for analytic and
/// finite_difference; the printed closed form for paper_literal.
/// Requires tier data for H + 1 (at least H tier entries).
double partial_wrt_hops(const model::NetworkShape& shape, std::span<const model::MonitoredRoute> routes,
                        Method method = Method::analytic);

/// Derivative when every route's lifetime shifts by the same dT.
double partial_wrt_lifetime(std::span<const model::MonitoredRoute> routes, Method method = Method::analytic);

/// Derivative when every route's HELLO interval shifts by the same dt.
/// Never positive.
double partial_wrt_interval(std::span<const model::MonitoredRoute> routes, Method method = Method::analytic);

/// Gathers all four partials and sums partial * delta. The hop partial is
/// omitted (and contributes nothing) when dH == 0 and no tier data for
/// H + 1 is configured.
SensitivityReport total_differential(const model::NetworkShape& shape,
                                     std::span<const model::MonitoredRoute> routes, const ParamDelta& delta,
                                     Method method = Method::analytic);

}  // namespace rolab::sensitivity
