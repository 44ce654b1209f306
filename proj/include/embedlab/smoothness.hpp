#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "embedlab/grid.hpp"
#include "embedlab/norm_spec.hpp"

namespace embedlab {

/// Number of cells a shift h spans along `axis`; throws unless h is an integer multiple of the spacing.
long shift_cells(const GridSpec& grid, int axis, double h);

/// Delta_k(h) f(x) = f(x + h e_k) - f(x) with f = 0 off the grid.
///
/// The result lives on the grid extended by |m| cells on the side the shifted
/// copy moves to, so nothing is cut off: the output is the exact difference of
/// the step function.
GridFunction difference(const GridFunction& f, int axis, double h);
GridFunction difference_cells(const GridFunction& f, int axis, long m);

/// ||Delta_k(m cells) f||_base. Shifts of at least the axis length make the two
/// copies disjoint; every supported base norm is then independent of the gap, so
/// the padding is capped at the axis length.
double difference_norm(const GridFunction& f, int axis, long m, const NormSpec& base);

/// omega_k(f; t)_base: max of ||Delta_k(h) f|| over grid shifts |h| <= t, both signs.
double modulus(const GridFunction& f, int axis, double t, const NormSpec& base);

/// ||Delta_k(m) f|| for m = 0..m_max (positive shifts). All base norms are
/// translation invariant, so negative shifts give identical values.
std::vector<double> difference_norm_table(const GridFunction& f, int axis, long m_max, const NormSpec& base);

/// Running maximum of a difference-norm table: omega at m = 0..m_max.
std::vector<double> modulus_from_table(const std::vector<double>& table);

/// Besov-type seminorm (integral_0^inf (h^-alpha ||Delta_k(h) f||_base)^theta dh/h)^(1/theta).
struct BesovSpec {
  double alpha = 0.5;
  double theta = 1.0;
  int axis = 0;
  NormSpec base = NormSpec::lebesgue(1.0);
  double ratio = 0x1.306fe0a31b715p+0;  // 2^(1/8)
  double h_min = 0.0;                   // 0: one grid spacing
  double h_max = 0.0;                   // 0: 4 L along the axis
  bool upper_tail = true;               // false: integral stops at h_max

  /// Text form "Besov(alpha=0.5,theta=2,k=1[,rho=..][,hmin=..][,hmax=..][,tail=0];<norm spec>)".
  static BesovSpec parse(std::string_view text);
  std::string to_string() const;
};

struct BesovResult {
  double value = 0.0;        // seminorm (theta-th root of `integral`)
  double integral = 0.0;     // the dh/h integral itself
  double small_tail = 0.0;   // analytic (0, h_min) part of `integral`
  double large_tail = 0.0;   // analytic (h_max, inf) part of `integral`
  std::size_t nodes = 0;
  std::string diagnostic;    // non-empty when the value is +inf

  bool finite() const { return std::isfinite(value); }
};

/// Trapezoid rule in log h over distinct grid multiples from h_min to h_max,
/// with the small-h tail extrapolated linearly from the first node
/// (||Delta(h)|| ~ h ||D_k f||) and the large-h tail using the saturated
/// value ||Delta(h)|| = ||Delta(h_max)||. Divergent tails give +inf.
BesovResult besov_seminorm(const GridFunction& f, const BesovSpec& spec);

/// Same quadrature with omega_k(f; h)_base in place of ||Delta_k(h) f||_base.
BesovResult besov_seminorm_modulus(const GridFunction& f, const BesovSpec& spec);

/// Grid multiples used as quadrature nodes (in cells).
std::vector<long> besov_nodes(const GridSpec& grid, const BesovSpec& spec);

struct SidePair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// phi**(t) - phi*(t) against 2 t^(-1/p) omega(phi; t)_p on a 1-D grid function.
SidePair ulyanov_pointwise(const GridFunction& phi, double p, double t);

/// phi*(t) against 2 integral_t^inf s^(-1/p) omega(phi; s)_p ds/s.
SidePair ulyanov_tail(const GridFunction& phi, double p, double t);

/// Batched forms sharing one modulus table; t values must be positive.
std::vector<SidePair> ulyanov_pointwise(const GridFunction& phi, double p, const std::vector<double>& ts);
std::vector<SidePair> ulyanov_tail(const GridFunction& phi, double p, const std::vector<double>& ts);

/// omega_k(f; delta)_V against (3/delta) integral_0^delta ||Delta_k(h) f||_V dh
/// (trapezoid over grid multiples); delta must be a grid multiple.
SidePair omega_average_check(const GridFunction& f, int axis, double delta, const NormSpec& base);

}  // namespace embedlab
