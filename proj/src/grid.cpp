#include "embedlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace embedlab {

GridSpec GridSpec::symmetric(int dim, double half_extent, std::size_t points) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (!(half_extent > 0.0) || !std::isfinite(half_extent)) throw std::invalid_argument("half extent must be positive");
  if (points < 2 || points % 2 != 0) throw std::invalid_argument("points per axis must be a positive even integer");
  GridSpec g;
  g.dim = dim;
  for (int a = 0; a < dim; ++a) {
    g.count[a] = points;
    g.lower[a] = -half_extent;
    g.spacing[a] = 2.0 * half_extent / static_cast<double>(points);
  }
  return g;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= count[a];
  return n;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= spacing[a];
  return v;
}

std::array<std::size_t, kMaxDim> GridSpec::strides() const {
  std::array<std::size_t, kMaxDim> s{0, 0, 0};
  std::size_t acc = 1;
  for (int a = dim - 1; a >= 0; --a) {
    s[a] = acc;
    acc *= count[a];
  }
  return s;
}

GridSpec GridSpec::complement(int axis) const {
  if (dim < 2) throw std::invalid_argument("complement grid needs dim >= 2");
  if (axis < 0 || axis >= dim) throw std::out_of_range("axis out of range");
  GridSpec c;
  c.dim = dim - 1;
  int j = 0;
  for (int a = 0; a < dim; ++a) {
    if (a == axis) continue;
    c.count[j] = count[a];
    c.lower[j] = lower[a];
    c.spacing[j] = spacing[a];
    ++j;
  }
  return c;
}

GridSpec GridSpec::scaled(double factor) const {
  GridSpec g = *this;
  for (int a = 0; a < dim; ++a) {
    g.lower[a] *= factor;
    g.spacing[a] *= factor;
  }
  return g;
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values) : spec_(spec), re_(std::move(values)) {
  if (re_.size() != spec_.size()) {
    throw std::invalid_argument("sample count " + std::to_string(re_.size()) + " does not match grid size " +
                                std::to_string(spec_.size()));
  }
  for (double v : re_)
    if (!std::isfinite(v)) throw std::invalid_argument("grid samples must be finite");
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> real, std::vector<double> imag)
    : GridFunction(spec, std::move(real)) {
  if (imag.size() != re_.size()) throw std::invalid_argument("imaginary part size mismatch");
  for (double v : imag)
    if (!std::isfinite(v)) throw std::invalid_argument("grid samples must be finite");
  im_ = std::move(imag);
}

GridFunction GridFunction::zeros(const GridSpec& spec) { return GridFunction(spec, std::vector<double>(spec.size(), 0.0)); }

double GridFunction::magnitude(std::size_t i) const { return im_.empty() ? std::abs(re_[i]) : std::hypot(re_[i], im_[i]); }

std::complex<double> GridFunction::value(std::size_t i) const {
  return {re_[i], im_.empty() ? 0.0 : im_[i]};
}

std::vector<double> GridFunction::magnitudes() const {
  std::vector<double> out(re_.size());
  for (std::size_t i = 0; i < re_.size(); ++i) out[i] = magnitude(i);
  return out;
}

GridFunction GridFunction::scaled(double factor) const {
  std::vector<double> r = re_;
  for (double& v : r) v *= factor;
  if (im_.empty()) return GridFunction(spec_, std::move(r));
  std::vector<double> im = im_;
  for (double& v : im) v *= factor;
  return GridFunction(spec_, std::move(r), std::move(im));
}

std::vector<double> extract_line(std::span<const double> values, const GridSpec& spec, int axis, std::size_t offset) {
  const auto st = spec.strides();
  std::vector<double> line(spec.count[axis]);
  for (std::size_t i = 0; i < line.size(); ++i) line[i] = values[offset + i * st[axis]];
  return line;
}

std::vector<std::size_t> line_offsets(const GridSpec& spec, int axis) {
  if (axis < 0 || axis >= spec.dim) throw std::out_of_range("axis out of range");
  const auto st = spec.strides();
  std::vector<std::size_t> offsets;
  offsets.reserve(spec.size() / spec.count[axis]);
  // Walk the complement axes in row-major order.
  std::array<std::size_t, kMaxDim> idx{0, 0, 0};
  std::array<int, kMaxDim> axes{};
  int m = 0;
  for (int a = 0; a < spec.dim; ++a)
    if (a != axis) axes[m++] = a;
  const std::size_t total = spec.size() / spec.count[axis];
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t off = 0;
    for (int j = 0; j < m; ++j) off += idx[j] * st[axes[j]];
    offsets.push_back(off);
    for (int j = m - 1; j >= 0; --j) {
      if (++idx[j] < spec.count[axes[j]]) break;
      idx[j] = 0;
    }
  }
  return offsets;
}

}  // namespace embedlab
