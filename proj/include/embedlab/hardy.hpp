#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "embedlab/grid.hpp"

namespace embedlab {

/// Samples of a nonnegative function on (0, inf) at t_i = t0 * ratio^i.
///
/// Outside [t0, t_last] the function is modelled as a power law fitted to the
/// two end samples on each side; integrals over the ends use that model.
struct GeometricSamples {
  double t0 = 1.0;
  double ratio = 2.0;
  std::vector<double> values;

  double t(std::size_t i) const;
  double t_last() const { return t(values.size() - 1); }

  /// phi sampled on [t_min, t_max] with the given ratio (t_max is rounded up to a grid point).
  static GeometricSamples sample(const std::function<double(double)>& phi, double t_min, double t_max,
                                 double ratio = 0x1.059b0d3158574p+0);  // 2^(1/32)
};

/// integral_0^inf g(t) dt/t for sampled g, log-linear between nodes and
/// power-law extrapolated at both ends (+inf when an end diverges).
double log_measure_integral(const GeometricSamples& g);

/// Phi(t_i) = integral_0^{t_i} phi(u) du at every node.
std::vector<double> cumulative_integral(const GeometricSamples& phi);

struct HardyResult {
  double lhs = 0.0;
  double rhs = 0.0;  // the bound, constant included
};

/// Weighted Hardy inequality for lambda < 1, p >= 1:
/// lhs = (int (t^(lambda-1) int_0^t phi)^p dt/t)^(1/p),
/// rhs = 1/(1-lambda) * (int (t^lambda phi)^p dt/t)^(1/p).
HardyResult hardy_check(const GeometricSamples& phi, double lambda, double p);

struct QuasiDecreasingResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 1.0;        // lhs / rhs, 1 when both vanish
  double quasi_constant = 1.0;  // smallest c with psi(t1) <= c psi(t2) for sampled t2 < t1
};

/// Hardy-type inequality for quasi-decreasing psi, alpha > 0, beta > -1, 0 < p < 1:
/// lhs = int u^(-alpha-1) (int_0^u psi(t) t^beta dt)^p du,
/// rhs = int u^(-alpha-1) (psi(u) u^(beta+1))^p du (constant not included).
/// Throws if psi's quasi-decreasing constant exceeds `cap`.
QuasiDecreasingResult quasi_decreasing_hardy_check(const GeometricSamples& psi, double alpha, double beta, double p,
                                                   double cap = 10.0);

/// Smallest c with psi(t_i) <= c psi(t_j) for all j < i (at least 1; +inf if a zero precedes a positive value).
double quasi_decreasing_constant(const std::vector<double>& psi);

/// ||f**||_p against p/(p-1) ||f||_p for p > 1, computed piecewise over the step profile.
HardyResult doublestar_bound_check(const GridFunction& f, double p);

}  // namespace embedlab
