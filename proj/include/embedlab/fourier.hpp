#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "embedlab/grid.hpp"

namespace embedlab {

using Frequency = std::array<double, kMaxDim>;

/// Frequency grid dual to a spatial grid with N nodes and spacing h per axis:
/// N nodes at (m - N/2) / (N h), so xi = 0 sits on node N/2.
GridSpec dual_grid(const GridSpec& spatial);

/// Samples of a spectrum on a dual grid, approximating
/// F(xi) = integral f(x) exp(-2 pi i x.xi) dx.
class SpectralFunction {
 public:
  SpectralFunction() = default;
  SpectralFunction(GridSpec dual, std::vector<std::complex<double>> values);

  /// Synthetic spectrum from a closed form, e.g. for quadrature oracles.
  static SpectralFunction from_function(const GridSpec& dual, const std::function<std::complex<double>(const Frequency&)>& F);

  const GridSpec& grid() const { return dual_; }
  std::size_t size() const { return values_.size(); }
  std::complex<double> value(std::size_t i) const { return values_[i]; }
  double magnitude(std::size_t i) const { return mags_[i]; }
  const std::vector<double>& magnitudes() const { return mags_; }
  const std::vector<std::complex<double>>& values() const { return values_; }

  /// Frequency of node i.
  Frequency frequency(std::size_t i) const;

  /// Nyquist frequency of the coarsest axis: every |xi_a| <= r lies in the sampled period.
  double inscribed_radius() const;

  /// Multilinear interpolation of |F| at xi, periodic across the Nyquist plane;
  /// throws outside one period.
  double interpolate_magnitude(const Frequency& xi) const;

  SpectralFunction scaled(double factor) const;

 private:
  GridSpec dual_;
  std::vector<std::complex<double>> values_;
  std::vector<double> mags_;
};

/// Discrete transform scaled by the cell volume with the phase of each node's
/// position folded in, so samples approximate the continuous transform on the dual grid.
SpectralFunction transform(const GridFunction& f);

/// Inverse of transform() onto `spatial` (whose dual must match F's grid).
GridFunction inverse_transform(const SpectralFunction& F, const GridSpec& spatial);

/// Applies m(xi) in the discrete periodic sense: FFT, multiply, inverse FFT.
/// `xi` runs over the FFT frequencies k/(N h) for k < N/2 and (k - N)/(N h) otherwise.
/// The result is real when f is real and `real_output` is set (imaginary part dropped).
using Multiplier = std::function<std::complex<double>(const Frequency& xi, const std::array<std::size_t, kMaxDim>& k)>;
GridFunction apply_multiplier(const GridFunction& f, const Multiplier& m, bool real_output = true);

/// Riesz transform R_j: multiplier -i xi_j / |xi|, set to 0 at xi = 0 and on the Nyquist plane of axis j.
GridFunction riesz(const GridFunction& f, int axis);

/// Spectral partial derivative: multiplier 2 pi i xi_j (0 on the Nyquist plane of axis j).
GridFunction spectral_derivative(const GridFunction& f, int axis);

/// Poisson semigroup u(., t) = P_t * f: multiplier exp(-2 pi |xi| t); throws for t <= 0.
GridFunction poisson(const GridFunction& f, double t);

/// d/dt of P_t * f: multiplier -2 pi |xi| exp(-2 pi |xi| t).
GridFunction poisson_t_derivative(const GridFunction& f, double t);

/// f with every mode on a Nyquist plane removed. On these modes the discrete
/// Poisson, Riesz and derivative multipliers cannot satisfy the conjugate-system
/// identities, so checks of those identities run on in_band(f).
GridFunction in_band(const GridFunction& f);

struct H1Norm {
  double value = 0.0;     // ||f||_1 + sum_j ||R_j f||_1
  double l1 = 0.0;
  std::vector<double> riesz_l1;
  double mean_ratio = 0.0;  // |integral f| / ||f||_1
  bool mean_zero_flag = false;  // set when mean_ratio exceeds 1e-6
};

H1Norm h1_norm(const GridFunction& f);

/// Max over the grid of |du_0/dt + sum_j du_j/dx_j| with u_0 = P_t f and u_j = P_t R_j f,
/// all derivatives spectral and f restricted to modes off every Nyquist plane;
/// `scale` is max |du_0/dt|.
struct ConjugacyResidual {
  double residual = 0.0;
  double scale = 0.0;
};
ConjugacyResidual conjugacy_residual(const GridFunction& f, double t);

struct SlabSup {
  GridFunction values;  // on the dual grid of the complementary axes
  bool beyond_extent = false;
};

/// F_{t,j}(xi^) = max of |F| over dual nodes with |xi_j| >= t, for each xi^ off axis j.
SlabSup slab_sup(const SpectralFunction& F, int axis, double t);

/// integral_0^inf F_{t,j}**(t^(n-1)) dt for F = transform(f). F_{t,j} is constant on
/// every t-interval between consecutive dual nodes, and F** is v + c/s on every
/// profile segment, so the integral is evaluated exactly piece by piece.
double sup_integral_functional(const SpectralFunction& F, int axis);
double sup_integral_functional(const GridFunction& f, int axis);

struct WeightedIntegral {
  double value = 0.0;        // sum over xi != 0 of |F| |xi|^gamma times the dual cell volume
  double near_origin = 0.0;  // contribution of nodes with 0 < |xi| <= 2 dual spacings
};

WeightedIntegral weighted_fourier_integral(const SpectralFunction& F, double gamma);

}  // namespace embedlab
