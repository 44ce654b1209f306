#include "embedlab/families.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace embedlab {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

double expm1_over(double u) { return std::exp(-1.0 / u); }

// Support half-width box of a compact family along `axis`.
double support_half_width(const FamilySpec& f, int axis) {
  switch (f.id) {
    case FamilyId::tensor_bump:
    case FamilyId::windowed_trig:
      return f.width[axis];
    case FamilyId::mollified_cone:
      return f.radius;
    case FamilyId::mollified_indicator:
      return f.width[axis] + 0.5 * f.mollifier;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

double cone_regularizer(const FamilySpec& f) { return 0.5 * f.mollifier; }

void check_params(const FamilySpec& f) {
  if (f.dim < 1 || f.dim > kMaxDim) throw std::invalid_argument("family dimension must be 1, 2 or 3");
  for (int a = 0; a < f.dim; ++a)
    if (!(f.width[a] > 0.0)) throw std::invalid_argument("family widths must be positive");
  if (f.id == FamilyId::mollified_cone || f.id == FamilyId::mollified_indicator) {
    if (!(f.mollifier > 0.0)) throw std::invalid_argument("mollifier width must be positive");
  }
  if (f.id == FamilyId::mollified_cone && !(f.radius > cone_regularizer(f)))
    throw std::invalid_argument("cone radius must exceed the tip regularizer");
  if (f.id == FamilyId::mollified_indicator) {
    for (int a = 0; a < f.dim; ++a)
      if (!(f.width[a] > 0.5 * f.mollifier))
        throw std::invalid_argument("indicator half-side must exceed half the mollifier width");
  }
}

}  // namespace

std::string_view to_string(FamilyId id) {
  switch (id) {
    case FamilyId::gaussian: return "gaussian";
    case FamilyId::anisotropic_gaussian: return "anisotropic_gaussian";
    case FamilyId::tensor_bump: return "tensor_bump";
    case FamilyId::windowed_trig: return "windowed_trig";
    case FamilyId::mollified_cone: return "mollified_cone";
    case FamilyId::mollified_indicator: return "mollified_indicator";
  }
  return "unknown";
}

FamilyId family_from_string(std::string_view name) {
  for (FamilyId id : kAllFamilies)
    if (to_string(id) == name) return id;
  throw std::invalid_argument("unsupported family id: " + std::string(name));
}

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = expm1_over(u);
  const double b = expm1_over(1.0 - u);
  return a / (a + b);
}

double smooth_step_derivative(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double a = expm1_over(u);
  const double b = expm1_over(1.0 - u);
  const double da = a / sq(u);
  const double db = -b / sq(1.0 - u);
  return (da * b - a * db) / sq(a + b);
}

double unit_bump(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double unit_bump_derivative(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double d = 1.0 - u * u;
  return unit_bump(u) * (-2.0 * u / (d * d));
}

double evaluate(const FamilySpec& f, std::span<const double> x) {
  const int n = f.dim;
  switch (f.id) {
    case FamilyId::gaussian: {
      double r2 = 0.0;
      for (int a = 0; a < n; ++a) r2 += sq(x[a] - f.center[a]);
      return f.amplitude * std::exp(-kPi * r2 / sq(f.width[0]));
    }
    case FamilyId::anisotropic_gaussian: {
      double s = 0.0;
      for (int a = 0; a < n; ++a) s += sq((x[a] - f.center[a]) / f.width[a]);
      return f.amplitude * std::exp(-kPi * s);
    }
    case FamilyId::tensor_bump: {
      double v = f.amplitude;
      for (int a = 0; a < n && v != 0.0; ++a) v *= unit_bump((x[a] - f.center[a]) / f.width[a]);
      return v;
    }
    case FamilyId::windowed_trig: {
      double window = 1.0, arg = f.phase;
      for (int a = 0; a < n; ++a) {
        window *= unit_bump((x[a] - f.center[a]) / f.width[a]);
        arg += 2.0 * kPi * f.frequency[a] * (x[a] - f.center[a]);
      }
      return window == 0.0 ? 0.0 : f.amplitude * std::sin(arg) * window;
    }
    case FamilyId::mollified_cone: {
      double r2 = sq(cone_regularizer(f));
      for (int a = 0; a < n; ++a) r2 += sq(x[a] - f.center[a]);
      const double gap = f.radius - std::sqrt(r2);
      return f.amplitude * gap * smooth_step(gap / f.mollifier);
    }
    case FamilyId::mollified_indicator: {
      double v = f.amplitude;
      for (int a = 0; a < n && v != 0.0; ++a)
        v *= smooth_step((f.width[a] + 0.5 * f.mollifier - std::abs(x[a] - f.center[a])) / f.mollifier);
      return v;
    }
  }
  throw std::invalid_argument("unsupported family id");
}

double evaluate_partial(const FamilySpec& f, int axis, std::span<const double> x) {
  const int n = f.dim;
  if (axis < 0 || axis >= n) throw std::out_of_range("derivative axis out of range");
  switch (f.id) {
    case FamilyId::gaussian:
      return evaluate(f, x) * (-2.0 * kPi * (x[axis] - f.center[axis]) / sq(f.width[0]));
    case FamilyId::anisotropic_gaussian:
      return evaluate(f, x) * (-2.0 * kPi * (x[axis] - f.center[axis]) / sq(f.width[axis]));
    case FamilyId::tensor_bump: {
      double v = f.amplitude;
      for (int a = 0; a < n && v != 0.0; ++a) {
        const double u = (x[a] - f.center[a]) / f.width[a];
        v *= (a == axis) ? unit_bump_derivative(u) / f.width[a] : unit_bump(u);
      }
      return v;
    }
    case FamilyId::windowed_trig: {
      double window = 1.0, dwindow = 1.0, arg = f.phase;
      for (int a = 0; a < n; ++a) {
        const double u = (x[a] - f.center[a]) / f.width[a];
        const double b = unit_bump(u);
        window *= b;
        dwindow *= (a == axis) ? unit_bump_derivative(u) / f.width[a] : b;
        arg += 2.0 * kPi * f.frequency[a] * (x[a] - f.center[a]);
      }
      return f.amplitude * (2.0 * kPi * f.frequency[axis] * std::cos(arg) * window + std::sin(arg) * dwindow);
    }
    case FamilyId::mollified_cone: {
      double r2 = sq(cone_regularizer(f));
      for (int a = 0; a < n; ++a) r2 += sq(x[a] - f.center[a]);
      const double r = std::sqrt(r2);
      const double u = (f.radius - r) / f.mollifier;
      const double dprofile = -smooth_step(u) - u * smooth_step_derivative(u);
      return f.amplitude * dprofile * (x[axis] - f.center[axis]) / r;
    }
    case FamilyId::mollified_indicator: {
      double v = f.amplitude;
      for (int a = 0; a < n && v != 0.0; ++a) {
        const double d = x[a] - f.center[a];
        const double u = (f.width[a] + 0.5 * f.mollifier - std::abs(d)) / f.mollifier;
        if (a == axis) {
          const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
          v *= -sign * smooth_step_derivative(u) / f.mollifier;
        } else {
          v *= smooth_step(u);
        }
      }
      return v;
    }
  }
  throw std::invalid_argument("unsupported family id");
}

FamilySpec dilate(const FamilySpec& f, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  FamilySpec g = f;
  for (int a = 0; a < kMaxDim; ++a) {
    g.center[a] = f.center[a] / lambda;
    g.width[a] = f.width[a] / lambda;
    g.frequency[a] = f.frequency[a] * lambda;
  }
  g.radius = f.radius / lambda;
  g.mollifier = f.mollifier / lambda;
  // (R - r_e(lambda x)) = lambda (R/lambda - r_e'(x)) for the cone.
  if (f.id == FamilyId::mollified_cone) g.amplitude = f.amplitude * lambda;
  return g;
}

double tail_mass_fraction(const FamilySpec& f, const GridSpec& grid) {
  check_params(f);
  if (f.dim != grid.dim) throw std::invalid_argument("family and grid dimensions differ");
  if (f.amplitude == 0.0) return 0.0;
  double fraction = 0.0;
  for (int a = 0; a < f.dim; ++a) {
    const double lo = grid.lower[a];
    const double hi = grid.upper(a) - grid.spacing[a];
    const double c = f.center[a];
    if (f.id == FamilyId::gaussian || f.id == FamilyId::anisotropic_gaussian) {
      const double w = f.id == FamilyId::gaussian ? f.width[0] : f.width[a];
      const double k = std::sqrt(kPi) / w;
      fraction += 0.5 * std::erfc(k * (hi - c)) + 0.5 * std::erfc(k * (c - lo));
    } else {
      const double s = support_half_width(f, a);
      if (c - s < lo || c + s > hi) return std::numeric_limits<double>::infinity();
    }
  }
  return fraction;
}

GridFunction sample(const FamilySpec& f, const GridSpec& grid, double tau_tail) {
  const double tail = tail_mass_fraction(f, grid);
  if (!(tail <= tau_tail)) {
    throw std::invalid_argument("family " + std::string(to_string(f.id)) + " leaks outside the grid (tail estimate " +
                                std::to_string(tail) + ")");
  }
  std::vector<double> v(grid.size());
  const auto st = grid.strides();
  std::array<double, kMaxDim> x{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t rem = i;
    for (int a = 0; a < grid.dim; ++a) {
      x[a] = grid.coordinate(a, rem / st[a]);
      rem %= st[a];
    }
    v[i] = evaluate(f, std::span<const double>(x.data(), grid.dim));
  }
  return GridFunction(grid, std::move(v));
}

GridFunction derivative(const FamilySpec& f, int axis, const GridSpec& grid) {
  check_params(f);
  if (f.dim != grid.dim) throw std::invalid_argument("family and grid dimensions differ");
  std::vector<double> v(grid.size());
  const auto st = grid.strides();
  std::array<double, kMaxDim> x{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t rem = i;
    for (int a = 0; a < grid.dim; ++a) {
      x[a] = grid.coordinate(a, rem / st[a]);
      rem %= st[a];
    }
    v[i] = evaluate_partial(f, axis, std::span<const double>(x.data(), grid.dim));
  }
  return GridFunction(grid, std::move(v));
}

GridFunction finite_difference_derivative(const GridFunction& f, int axis) {
  const GridSpec& g = f.spec();
  if (axis < 0 || axis >= g.dim) throw std::out_of_range("axis out of range");
  const std::size_t n = g.count[axis];
  if (n < 4) throw std::invalid_argument("finite differences need at least 4 points per axis");
  const double h = g.spacing[axis];
  const auto st = g.strides();
  const std::size_t s = st[axis];
  auto in = f.real();
  std::vector<double> out(f.size());
  for (std::size_t off : line_offsets(g, axis)) {
    auto at = [&](std::size_t i) { return in[off + i * s]; };
    out[off] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) out[off + i * s] = (at(i + 1) - at(i - 1)) / (2.0 * h);
    out[off + (n - 1) * s] = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
  }
  return GridFunction(g, std::move(out));
}

}  // namespace embedlab
