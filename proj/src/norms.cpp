#include "embedlab/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace embedlab {

namespace {

// b^e - a^e for 0 <= a < b without cancellation when a is close to b.
double power_gap(double a, double b, double e) {
  if (a <= 0.0) return std::pow(b, e);
  return std::pow(a, e) * std::expm1(e * std::log1p((b - a) / a));
}

double lp_from_samples(std::span<const double> v, double cell, double p) {
  double s = 0.0;
  if (p == 1.0) {
    for (double x : v) s += std::abs(x);
    return s * cell;
  }
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s * cell, 1.0 / p);
}

}  // namespace

double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm needs finite p >= 1");
  if (!f.is_complex()) return lp_from_samples(f.real(), f.spec().cell_volume(), p);
  return lp_from_samples(f.magnitudes(), f.spec().cell_volume(), p);
}

double lorentz_norm(const DecreasingProfile& profile, double p, double r) {
  if (!(p >= 1.0) || !(r >= 1.0) || !std::isfinite(p) || !std::isfinite(r))
    throw std::invalid_argument("lorentz_norm needs finite p, r >= 1");
  const auto& t = profile.breakpoints();
  const auto& v = profile.values();
  const double e = r / p;
  double s = 0.0;
  double left = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    s += std::pow(v[j], r) * power_gap(left, t[j], e);
    left = t[j];
  }
  return std::pow(s / e, 1.0 / r);
}

double lorentz_norm(const GridFunction& f, double p, double r) { return lorentz_norm(decreasing_rearrangement(f), p, r); }

double line_norm(std::span<const double> samples, double cell_length, const NormSpec& spec) {
  switch (spec.kind()) {
    case NormSpec::Kind::lebesgue: return lp_from_samples(samples, cell_length, spec.p());
    case NormSpec::Kind::lorentz:
      if (spec.p() == spec.secondary()) return lp_from_samples(samples, cell_length, spec.p());
      return lorentz_norm(DecreasingProfile::from_samples(samples, cell_length), spec.p(), spec.secondary());
    default: throw std::invalid_argument("line norms must be Leb or Lor");
  }
}

GridFunction line_norms(const GridFunction& f, int axis, const NormSpec& inner) {
  const GridSpec& g = f.spec();
  if (g.dim < 2) throw std::invalid_argument("mixed norms need dim >= 2");
  if (axis < 0 || axis >= g.dim) throw std::out_of_range("mixed-norm axis out of range");
  const std::vector<double> mag = f.magnitudes();
  const auto offsets = line_offsets(g, axis);
  std::vector<double> out(offsets.size());
  for (std::size_t c = 0; c < offsets.size(); ++c)
    out[c] = line_norm(extract_line(mag, g, axis, offsets[c]), g.spacing[axis], inner);
  return GridFunction(g.complement(axis), std::move(out));
}

double mixed_norm(const GridFunction& f, const NormSpec& spec) {
  if (spec.kind() != NormSpec::Kind::mixed) throw std::invalid_argument("mixed_norm needs a Mix spec");
  return norm(line_norms(f, spec.axis(), spec.inner()), spec.outer());
}

double iterated_lorentz_norm(const GridFunction& f, double p, double nu, int axis) {
  if (f.spec().dim != 2) throw std::invalid_argument("iterated Lorentz norm is defined on 2-D grids");
  if (!(p >= 1.0) || !(nu >= 1.0)) throw std::invalid_argument("iterated Lorentz norm needs p, nu >= 1");
  const IteratedProfile r = iterated_rearrangement(f, axis);
  const double e = nu / p;
  // Per-cell weights: integral of s^(e-1) over [i h, (i+1) h], likewise for t.
  std::vector<double> ws(r.rows), wt(r.columns);
  for (std::size_t i = 0; i < r.rows; ++i)
    ws[i] = power_gap(static_cast<double>(i) * r.row_measure, static_cast<double>(i + 1) * r.row_measure, e) / e;
  for (std::size_t j = 0; j < r.columns; ++j)
    wt[j] = power_gap(static_cast<double>(j) * r.column_measure, static_cast<double>(j + 1) * r.column_measure, e) / e;
  double s = 0.0;
  for (std::size_t i = 0; i < r.rows; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < r.columns; ++j) {
      const double v = r.at(i, j);
      if (v == 0.0) break;  // nonincreasing along t
      row += std::pow(v, nu) * wt[j];
    }
    if (row == 0.0) break;
    s += row * ws[i];
  }
  return std::pow(s, 1.0 / nu);
}

double norm(const GridFunction& f, const NormSpec& spec) {
  switch (spec.kind()) {
    case NormSpec::Kind::lebesgue: return lp_norm(f, spec.p());
    case NormSpec::Kind::lorentz:
      if (spec.p() == spec.secondary()) return lp_norm(f, spec.p());
      return lorentz_norm(f, spec.p(), spec.secondary());
    case NormSpec::Kind::mixed: return mixed_norm(f, spec);
    case NormSpec::Kind::iterated_lorentz: return iterated_lorentz_norm(f, spec.p(), spec.secondary(), spec.axis());
  }
  throw std::invalid_argument("unknown norm kind");
}

}  // namespace embedlab
