#include "embedlab/shells.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace embedlab {

namespace {

template <unsigned N>
std::vector<std::pair<double, double>> legendre_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.emplace_back(x[i], w[i]);
    if (x[i] != 0.0) out.emplace_back(-x[i], w[i]);
  }
  return out;
}

std::vector<std::pair<double, double>> legendre(std::size_t n) {
  switch (n) {
    case 10: return legendre_rule<10>();
    case 15: return legendre_rule<15>();
    case 20: return legendre_rule<20>();
    case 25: return legendre_rule<25>();
    case 30: return legendre_rule<30>();
    default: throw std::invalid_argument("polar node count must be 10, 15, 20, 25 or 30");
  }
}

std::array<std::size_t, kMaxDim> unravel(const GridSpec& g, std::size_t i) {
  std::array<std::size_t, kMaxDim> idx{0, 0, 0};
  for (int a = g.dim - 1; a >= 0; --a) {
    idx[a] = i % g.count[a];
    i /= g.count[a];
  }
  return idx;
}

double max_spacing(const GridSpec& g) {
  double s = 0.0;
  for (int a = 0; a < g.dim; ++a) s = std::max(s, g.spacing[a]);
  return s;
}

bool within(double v, double c) { return std::abs(v) <= c * (1.0 + 1e-12); }

// face[m] = rectangle-rule integral of |F| over {xi_j = node m, |xi_a| <= c for a != j}.
std::vector<double> face_sums(const SpectralFunction& F, int j, double c) {
  const GridSpec& d = F.grid();
  const double cell = d.cell_volume() / d.spacing[j];
  std::vector<double> face(d.count[j], 0.0);
  for (std::size_t i = 0; i < F.size(); ++i) {
    const auto idx = unravel(d, i);
    bool inside = true;
    for (int a = 0; a < d.dim && inside; ++a)
      if (a != j) inside = within(d.coordinate(a, idx[a]), c);
    if (inside) face[idx[j]] += F.magnitude(i) * cell;
  }
  return face;
}

// Max of face[m] over nodes with lo <= |xi_j| <= hi (lo exclusive when `open_low`), and the band's node count.
std::pair<double, std::size_t> band_max(const GridSpec& d, int j, const std::vector<double>& face, double lo, double hi,
                                        bool open_low) {
  double m = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < face.size(); ++i) {
    const double x = std::abs(d.coordinate(j, i));
    const bool above = open_low ? x > lo * (1.0 + 1e-12) : x >= lo * (1.0 - 1e-12);
    if (above && within(x, hi)) {
      m = std::max(m, face[i]);
      ++count;
    }
  }
  return {m, count};
}

}  // namespace

void ShellQuadrature::validate() const {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("shell quadrature dimension must be 1, 2 or 3");
  if (angular < 8 || radii < 8) throw std::invalid_argument("shell quadrature needs at least 8 angles and 8 radii");
  if (dim == 3) legendre(polar);
}

std::vector<SpherePoint> sphere_nodes(const ShellQuadrature& q, double r) {
  q.validate();
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<SpherePoint> pts;
  if (q.dim == 1) {
    pts.push_back({{r, 0.0, 0.0}, 1.0});
    pts.push_back({{-r, 0.0, 0.0}, 1.0});
  } else if (q.dim == 2) {
    const double w = kTwoPi * r / static_cast<double>(q.angular);
    for (std::size_t i = 0; i < q.angular; ++i) {
      const double a = kTwoPi * static_cast<double>(i) / static_cast<double>(q.angular);
      pts.push_back({{r * std::cos(a), r * std::sin(a), 0.0}, w});
    }
  } else {
    const double dphi = kTwoPi / static_cast<double>(q.angular);
    for (const auto& [z, wz] : legendre(q.polar)) {
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (std::size_t i = 0; i < q.angular; ++i) {
        const double a = dphi * static_cast<double>(i);
        pts.push_back({{r * s * std::cos(a), r * s * std::sin(a), r * z}, r * r * wz * dphi});
      }
    }
  }
  return pts;
}

double sphere_integral(const SpectralFunction& F, double r, const ShellQuadrature& q) {
  if (q.dim != F.grid().dim) throw std::invalid_argument("quadrature and spectrum dimensions differ");
  if (r > F.inscribed_radius() * (1.0 + 1e-12)) throw std::out_of_range("sphere leaves the sampled frequency box");
  double s = 0.0;
  for (const auto& p : sphere_nodes(q, r)) s += p.weight * F.interpolate_magnitude(p.xi);
  return s;
}

ShellRange resolvable_shells(const SpectralFunction& F) {
  const double lo = max_spacing(F.grid());
  const double hi = F.inscribed_radius();
  ShellRange s;
  s.k_min = static_cast<int>(std::ceil(std::log2(lo) - 1e-12));
  s.k_max = static_cast<int>(std::floor(std::log2(hi) + 1e-12)) - 1;
  if (std::ldexp(1.0, s.k_min) > lo * (1.0 + 1e-12)) ++s.partial;
  if (std::ldexp(1.0, s.k_max + 1) < hi * (1.0 - 1e-12)) ++s.partial;
  return s;
}

ShellSum dyadic_shell_sum(const SpectralFunction& F, double w, const ShellQuadrature& q) {
  const ShellRange range = resolvable_shells(F);
  ShellSum out;
  out.skipped = range.partial;
  for (int k = range.k_min; k <= range.k_max; ++k) {
    const double r0 = std::ldexp(1.0, k);
    double best = 0.0;
    for (std::size_t i = 0; i < q.radii; ++i) {
      const double r = r0 * std::exp2(static_cast<double>(i) / static_cast<double>(q.radii - 1));
      best = std::max(best, sphere_integral(F, std::min(r, F.inscribed_radius()), q));
    }
    out.shells.push_back(k);
    out.terms.push_back(std::exp2(static_cast<double>(k) * w) * best);
    out.value += out.terms.back();
  }
  return out;
}

ShellSum cube_shell_sum(const SpectralFunction& F) {
  const GridSpec& d = F.grid();
  const ShellRange range = resolvable_shells(F);
  ShellSum out;
  out.skipped = range.partial;
  const double n = static_cast<double>(d.dim);
  for (int k = range.k_min; k <= range.k_max; ++k) {
    const double c = std::ldexp(1.0, k);
    double term = 0.0;
    for (int j = 0; j < d.dim; ++j)
      term += band_max(d, j, face_sums(F, j, c), c, 2.0 * c, false).first;
    out.shells.push_back(k);
    out.terms.push_back(std::exp2(static_cast<double>(k) * (2.0 - n)) * term);
    out.value += out.terms.back();
  }
  return out;
}

std::vector<CubeFaceShell> cube_face_dominance(const SpectralFunction& F) {
  const GridSpec& d = F.grid();
  const ShellRange range = resolvable_shells(F);
  std::vector<CubeFaceShell> out;
  for (int k = range.k_min + 1; k <= range.k_max + 1; ++k) {
    const double c = std::ldexp(1.0, k);
    CubeFaceShell s;
    s.k = k;
    for (int j = 0; j < d.dim; ++j) {
      const auto face = face_sums(F, j, c);
      s.lhs += band_max(d, j, face, 0.5 * c, c, false).first;
      const auto [open_max, count] = band_max(d, j, face, 0.5 * c, c, true);
      const double len = static_cast<double>(count) * d.spacing[j];
      s.weighted_faces += len * open_max;
      s.band_length = std::max(s.band_length, len);
    }
    for (std::size_t i = 0; i < F.size(); ++i) {
      const auto xi = F.frequency(i);
      double m = 0.0;
      for (int a = 0; a < d.dim; ++a) m = std::max(m, std::abs(xi[a]));
      if (within(m, c) && m > 0.5 * c * (1.0 + 1e-12)) s.p_integral += F.magnitude(i) * d.cell_volume();
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace embedlab
