#include "embedlab/rearrange.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace embedlab {

DecreasingProfile DecreasingProfile::from_samples(std::span<const double> samples, double cell_measure) {
  if (!(cell_measure > 0.0)) throw std::invalid_argument("cell measure must be positive");
  std::vector<double> v;
  v.reserve(samples.size());
  for (double s : samples) {
    const double a = std::abs(s);
    if (a > 0.0) v.push_back(a);
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  DecreasingProfile p;
  double mass = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    // Breakpoints are formed from the cell count so that equal-count prefixes agree bit-for-bit
    // with distribution_function.
    const double width = static_cast<double>(j - i) * cell_measure;
    mass += v[i] * width;
    p.breaks_.push_back(static_cast<double>(j) * cell_measure);
    p.values_.push_back(v[i]);
    p.prefix_.push_back(mass);
    i = j;
  }
  return p;
}

double DecreasingProfile::operator()(double t) const {
  if (t < 0.0) throw std::invalid_argument("rearrangement argument must be nonnegative");
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  if (it == breaks_.end()) return 0.0;
  return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

double DecreasingProfile::integral_to(double t) const {
  if (t <= 0.0 || breaks_.empty()) return 0.0;
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - breaks_.begin());
  if (j == breaks_.size()) return prefix_.back();
  const double left = j == 0 ? 0.0 : breaks_[j - 1];
  const double before = j == 0 ? 0.0 : prefix_[j - 1];
  return before + values_[j] * (t - left);
}

double DecreasingProfile::level_measure(double y) const {
  // values_ is strictly decreasing: count those above y.
  const auto it = std::lower_bound(values_.begin(), values_.end(), y, std::greater<>());
  const std::size_t k = static_cast<std::size_t>(it - values_.begin());
  return k == 0 ? 0.0 : breaks_[k - 1];
}

DecreasingProfile decreasing_rearrangement(const GridFunction& f) {
  return DecreasingProfile::from_samples(f.magnitudes(), f.spec().cell_volume());
}

double double_star(const DecreasingProfile& p, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("f** needs t > 0");
  return p.integral_to(t) / t;
}

double distribution_function(const GridFunction& f, double y) {
  if (y < 0.0) throw std::invalid_argument("distribution level must be nonnegative");
  std::size_t count = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.magnitude(i) > y) ++count;
  return static_cast<double>(count) * f.spec().cell_volume();
}

IteratedProfile iterated_rearrangement(const GridFunction& f, int axis) {
  const GridSpec& g = f.spec();
  if (g.dim < 2) throw std::invalid_argument("iterated rearrangement needs dim >= 2");
  if (axis < 0 || axis >= g.dim) throw std::out_of_range("axis out of range");
  const std::vector<double> mag = f.magnitudes();
  const auto offsets = line_offsets(g, axis);
  IteratedProfile r;
  r.rows = g.count[axis];
  r.columns = offsets.size();
  r.row_measure = g.spacing[axis];
  r.column_measure = g.cell_volume() / g.spacing[axis];
  r.table.assign(r.rows * r.columns, 0.0);
  // R_1: each line sorted descending, scattered so that row s holds position s of every line.
  for (std::size_t c = 0; c < r.columns; ++c) {
    std::vector<double> line = extract_line(mag, g, axis, offsets[c]);
    std::sort(line.begin(), line.end(), std::greater<>());
    for (std::size_t s = 0; s < r.rows; ++s) r.table[s * r.columns + c] = line[s];
  }
  // R_{1,2}: for each s, sort across lines.
  for (std::size_t s = 0; s < r.rows; ++s) {
    auto first = r.table.begin() + static_cast<std::ptrdiff_t>(s * r.columns);
    std::sort(first, first + static_cast<std::ptrdiff_t>(r.columns), std::greater<>());
  }
  return r;
}

nlohmann::json to_json(const DecreasingProfile& p) {
  return {{"breakpoints", p.breakpoints()}, {"values", p.values()}};
}

}  // namespace embedlab
