#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace embedlab {

inline constexpr int kMaxDim = 3;

/// Uniform axis-aligned grid. Node i along an axis sits at lower + i * spacing;
/// every node owns one cell of volume prod(spacing).
///
/// Grids built by symmetric() cover [-L, L) per axis with an even node count,
/// which puts x = 0 on node N/2. Difference operators may produce grids that
/// are padded on one side, so lower/count are stored per axis.
struct GridSpec {
  int dim = 1;
  std::array<std::size_t, kMaxDim> count{1, 1, 1};
  std::array<double, kMaxDim> lower{0.0, 0.0, 0.0};
  std::array<double, kMaxDim> spacing{1.0, 1.0, 1.0};

  static GridSpec symmetric(int dim, double half_extent, std::size_t points);

  std::size_t size() const;
  double cell_volume() const;
  double coordinate(int axis, std::size_t i) const { return lower[axis] + static_cast<double>(i) * spacing[axis]; }
  double upper(int axis) const { return lower[axis] + static_cast<double>(count[axis]) * spacing[axis]; }

  /// Row-major strides; the last axis is contiguous.
  std::array<std::size_t, kMaxDim> strides() const;

  /// Grid over the axes other than `axis` (dimension dim - 1).
  GridSpec complement(int axis) const;

  /// Same node counts, every coordinate multiplied by `factor`.
  GridSpec scaled(double factor) const;

  bool operator==(const GridSpec&) const = default;
};

/// Real or complex samples on a GridSpec. Immutable after construction.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridSpec spec, std::vector<double> values);
  GridFunction(GridSpec spec, std::vector<double> real, std::vector<double> imag);

  static GridFunction zeros(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return re_.size(); }
  bool is_complex() const { return !im_.empty(); }

  std::span<const double> real() const { return re_; }
  std::span<const double> imag() const { return im_; }
  double magnitude(std::size_t i) const;
  std::complex<double> value(std::size_t i) const;

  /// |f| at every node.
  std::vector<double> magnitudes() const;

  GridFunction scaled(double factor) const;

 private:
  GridSpec spec_;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// Gathers the 1-D line through `offset` along `axis` (offset has index 0 on that axis).
std::vector<double> extract_line(std::span<const double> values, const GridSpec& spec, int axis, std::size_t offset);

/// Base offsets of all lines along `axis`, ordered by the complement grid's row-major index.
std::vector<std::size_t> line_offsets(const GridSpec& spec, int axis);

}  // namespace embedlab
