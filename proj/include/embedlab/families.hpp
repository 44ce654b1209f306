#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "embedlab/grid.hpp"

namespace embedlab {

enum class FamilyId {
  gaussian,
  anisotropic_gaussian,
  tensor_bump,
  windowed_trig,
  mollified_cone,
  mollified_indicator,
};

inline constexpr std::array<FamilyId, 6> kAllFamilies{
    FamilyId::gaussian,      FamilyId::anisotropic_gaussian, FamilyId::tensor_bump,
    FamilyId::windowed_trig, FamilyId::mollified_cone,       FamilyId::mollified_indicator,
};

std::string_view to_string(FamilyId id);
FamilyId family_from_string(std::string_view name);

/// Parameters of one analytic test function. Which fields matter depends on `id`:
///
///   gaussian              A exp(-pi |x-c|^2 / w0^2)
///   anisotropic_gaussian  A exp(-pi sum ((x_i-c_i)/w_i)^2)
///   tensor_bump           A prod b((x_i-c_i)/w_i),      b(u) = exp(1 - 1/(1-u^2)) on |u| < 1
///   windowed_trig         A sin(2 pi nu.(x-c) + phase) prod b((x_i-c_i)/w_i)
///   mollified_cone        A (R - r_e) S((R - r_e)/delta),   r_e = sqrt(|x-c|^2 + (delta/2)^2)
///   mollified_indicator   A prod S((w_i + delta/2 - |x_i-c_i|)/delta)
///
/// S is the C-infinity step exp(-1/u) / (exp(-1/u) + exp(-1/(1-u))) clamped to [0,1].
struct FamilySpec {
  FamilyId id = FamilyId::gaussian;
  int dim = 1;
  std::array<double, kMaxDim> center{0.0, 0.0, 0.0};
  std::array<double, kMaxDim> width{1.0, 1.0, 1.0};
  std::array<double, kMaxDim> frequency{0.0, 0.0, 0.0};
  double amplitude = 1.0;
  double phase = 0.0;
  double radius = 1.0;
  double mollifier = 0.25;
  std::uint64_t seed = 0;

  bool operator==(const FamilySpec&) const = default;
};

double evaluate(const FamilySpec& f, std::span<const double> x);
double evaluate_partial(const FamilySpec& f, int axis, std::span<const double> x);

/// Parameters of x -> f(lambda x).
FamilySpec dilate(const FamilySpec& f, double lambda);

/// Upper bound on the fraction of |f|-mass outside the grid box (0 for compact
/// families fully inside, +inf if a compact support crosses the boundary).
double tail_mass_fraction(const FamilySpec& f, const GridSpec& grid);

inline constexpr double kDefaultTailTolerance = 1e-6;

/// Pointwise samples at grid nodes; throws if the tail estimate exceeds tau_tail.
GridFunction sample(const FamilySpec& f, const GridSpec& grid, double tau_tail = kDefaultTailTolerance);

/// Exact partial derivative D_axis f sampled at grid nodes.
GridFunction derivative(const FamilySpec& f, int axis, const GridSpec& grid);

/// Second-order central differences, one-sided second-order stencils at both ends.
GridFunction finite_difference_derivative(const GridFunction& f, int axis);

// One-dimensional building blocks, exposed for tests.
double smooth_step(double u);
double smooth_step_derivative(double u);
double unit_bump(double u);
double unit_bump_derivative(double u);

}  // namespace embedlab
