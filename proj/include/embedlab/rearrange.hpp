#pragma once

#include <span>
#include <vector>

#include "embedlab/grid.hpp"
#include "json.hpp"

namespace embedlab {

/// Nonincreasing rearrangement f* of a step function, stored as merged runs.
///
/// f*(t) = values[j] for breakpoints[j-1] <= t < breakpoints[j] (breakpoints[-1] = 0),
/// and 0 for t >= breakpoints.back(). Values are strictly decreasing and positive.
class DecreasingProfile {
 public:
  DecreasingProfile() = default;

  /// Rearranges |samples|, each sample occupying `cell_measure`.
  static DecreasingProfile from_samples(std::span<const double> samples, double cell_measure);

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  bool empty() const { return values_.empty(); }

  /// Measure of the support, i.e. breakpoints.back() (0 if empty).
  double support_measure() const { return breaks_.empty() ? 0.0 : breaks_.back(); }

  /// Integral of f* over (0, infinity).
  double total_mass() const { return prefix_.empty() ? 0.0 : prefix_.back(); }

  /// f*(t) (right-continuous).
  double operator()(double t) const;

  /// Integral of f* over (0, t).
  double integral_to(double t) const;

  /// |{s : f*(s) > y}|.
  double level_measure(double y) const;

  /// Cumulative integrals at each breakpoint.
  const std::vector<double>& prefix_integrals() const { return prefix_; }

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
  std::vector<double> prefix_;
};

DecreasingProfile decreasing_rearrangement(const GridFunction& f);

/// f**(t) = (1/t) * integral_0^t f*. Throws for t <= 0.
double double_star(const DecreasingProfile& p, double t);

/// lambda_f(y) = |{x : |f(x)| > y}| as a count of cells times the cell volume.
double distribution_function(const GridFunction& f, double y);

/// Two-parameter rearrangement R_{1,2}|f|: sorted along `axis` per line, then
/// sorted across lines per row position. Table is nonincreasing in both indices.
struct IteratedProfile {
  std::size_t rows = 0;        // positions s along the distinguished axis
  std::size_t columns = 0;     // positions t over the complementary cells
  double row_measure = 0.0;    // 1-D cell length along the axis
  double column_measure = 0.0; // (n-1)-D cell volume
  std::vector<double> table;   // table[s * columns + t]

  double at(std::size_t s, std::size_t t) const { return table[s * columns + t]; }
};

IteratedProfile iterated_rearrangement(const GridFunction& f, int axis);

nlohmann::json to_json(const DecreasingProfile& p);

}  // namespace embedlab
