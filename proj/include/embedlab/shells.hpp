#pragma once

#include <vector>

#include "embedlab/fourier.hpp"

namespace embedlab {

/// Angular and radial sampling for sphere and dyadic-shell functionals.
/// n = 2: `angular` equispaced angles. n = 3: Gauss-Legendre in cos(theta) with
/// `polar` nodes (one of 10, 15, 20, 25, 30) times `angular` equispaced longitudes.
struct ShellQuadrature {
  int dim = 2;
  std::size_t angular = 256;
  std::size_t polar = 30;
  std::size_t radii = 16;  // geometric radii per shell, endpoints included

  void validate() const;
};

struct SpherePoint {
  Frequency xi{0.0, 0.0, 0.0};
  double weight = 0.0;
};

/// Nodes and surface weights on the sphere of radius r; weights sum to |S_r|.
std::vector<SpherePoint> sphere_nodes(const ShellQuadrature& q, double r);

/// Integral of |F| over S_r with multilinear interpolation; throws if S_r leaves the sampled box.
double sphere_integral(const SpectralFunction& F, double r, const ShellQuadrature& q);

/// Shells [2^k, 2^(k+1)] that lie inside the resolvable band [dual spacing, inscribed radius].
struct ShellRange {
  int k_min = 0;
  int k_max = -1;  // empty when k_max < k_min
  std::size_t partial = 0;  // shells straddling either end of the band (skipped)
};
ShellRange resolvable_shells(const SpectralFunction& F);

struct ShellSum {
  double value = 0.0;          // sum over resolvable shells
  std::vector<int> shells;
  std::vector<double> terms;   // 2^(k w) * max over sampled radii
  std::size_t skipped = 0;
};

/// sum_k 2^(k w) max_{2^k <= r <= 2^(k+1)} integral_{S_r} |F| dsigma over resolvable k.
/// Shells below the band are not extrapolated: the sum starts at the box's lowest octave.
ShellSum dyadic_shell_sum(const SpectralFunction& F, double w, const ShellQuadrature& q);

/// sum_j sum_k 2^(k(2-n)) max over dual nodes 2^k <= |xi_j| <= 2^(k+1) of the
/// rectangle-rule integral of |F| over the face {|xi_m| <= 2^k, m != j}, resolvable k only.
ShellSum cube_shell_sum(const SpectralFunction& F);

/// One shell of the cube-face comparison: lhs = sum_j max over 2^(k-1) <= |xi_j| <= 2^k
/// of the face integral over {|xi_m| <= 2^k}; p_integral = integral of |F| over Q_k \ Q_(k-1).
struct CubeFaceShell {
  int k = 0;
  double lhs = 0.0;
  double p_integral = 0.0;
  double weighted_faces = 0.0;  // sum_j (dual length of the xi_j band) * face max; >= p_integral
  double band_length = 0.0;     // max_j dual length of the xi_j band (2^(k-1) < |xi_j| <= 2^k)
};
std::vector<CubeFaceShell> cube_face_dominance(const SpectralFunction& F);

}  // namespace embedlab
