#include "embedlab/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "embedlab/norms.hpp"
#include "embedlab/rearrange.hpp"
#include "fft.hpp"

namespace embedlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::array<std::size_t, kMaxDim> unravel(const GridSpec& g, std::size_t i) {
  std::array<std::size_t, kMaxDim> idx{0, 0, 0};
  for (int a = g.dim - 1; a >= 0; --a) {
    idx[a] = i % g.count[a];
    i /= g.count[a];
  }
  return idx;
}

void check_even(const GridSpec& g) {
  for (int a = 0; a < g.dim; ++a)
    if (g.count[a] % 2 != 0) throw std::invalid_argument("Fourier transforms need an even node count per axis");
}

double norm_of(const Frequency& xi, int dim) {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += xi[a] * xi[a];
  return std::sqrt(s);
}

std::vector<std::complex<double>> to_complex(const GridFunction& f) {
  std::vector<std::complex<double>> d(f.size());
  const auto re = f.real();
  if (f.is_complex()) {
    const auto im = f.imag();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = {re[i], im[i]};
  } else {
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = re[i];
  }
  return d;
}

GridFunction from_complex(const GridSpec& g, const std::vector<std::complex<double>>& d, bool real_only) {
  std::vector<double> re(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) re[i] = d[i].real();
  if (real_only) return GridFunction(g, std::move(re));
  std::vector<double> im(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) im[i] = d[i].imag();
  return GridFunction(g, std::move(re), std::move(im));
}

}  // namespace

namespace detail {

void fft_inplace(std::vector<std::complex<double>>& data, const GridSpec& g, int sign) {
  if (data.size() != g.size()) throw std::invalid_argument("FFT buffer does not match grid");
  int dims[kMaxDim];
  for (int a = 0; a < g.dim; ++a) dims[a] = static_cast<int>(g.count[a]);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(g.dim, dims, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace detail

GridSpec dual_grid(const GridSpec& spatial) {
  check_even(spatial);
  GridSpec d = spatial;
  for (int a = 0; a < spatial.dim; ++a) {
    const double n = static_cast<double>(spatial.count[a]);
    d.spacing[a] = 1.0 / (n * spatial.spacing[a]);
    d.lower[a] = -0.5 * n * d.spacing[a];
  }
  return d;
}

SpectralFunction::SpectralFunction(GridSpec dual, std::vector<std::complex<double>> values)
    : dual_(dual), values_(std::move(values)) {
  if (values_.size() != dual_.size()) throw std::invalid_argument("spectrum size does not match its grid");
  mags_.resize(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag()))
      throw std::invalid_argument("spectral samples must be finite");
    mags_[i] = std::abs(values_[i]);
  }
}

SpectralFunction SpectralFunction::from_function(const GridSpec& dual,
                                                 const std::function<std::complex<double>(const Frequency&)>& F) {
  std::vector<std::complex<double>> v(dual.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto idx = unravel(dual, i);
    Frequency xi{0.0, 0.0, 0.0};
    for (int a = 0; a < dual.dim; ++a) xi[a] = dual.coordinate(a, idx[a]);
    v[i] = F(xi);
  }
  return SpectralFunction(dual, std::move(v));
}

Frequency SpectralFunction::frequency(std::size_t i) const {
  const auto idx = unravel(dual_, i);
  Frequency xi{0.0, 0.0, 0.0};
  for (int a = 0; a < dual_.dim; ++a) xi[a] = dual_.coordinate(a, idx[a]);
  return xi;
}

double SpectralFunction::inscribed_radius() const {
  // The sampled box is one period [-N/2, N/2) of dual cells; +N/2 wraps onto -N/2.
  double r = std::numeric_limits<double>::infinity();
  for (int a = 0; a < dual_.dim; ++a) r = std::min(r, 0.5 * static_cast<double>(dual_.count[a]) * dual_.spacing[a]);
  return r;
}

double SpectralFunction::interpolate_magnitude(const Frequency& xi) const {
  std::array<std::size_t, kMaxDim> i0{0, 0, 0};
  std::array<double, kMaxDim> w{0.0, 0.0, 0.0};
  for (int a = 0; a < dual_.dim; ++a) {
    const double n = static_cast<double>(dual_.count[a]);
    double pos = (xi[a] - dual_.lower[a]) / dual_.spacing[a];
    if (pos < -1e-9 || pos > n + 1e-9) throw std::out_of_range("frequency outside the sampled period");
    pos = std::clamp(pos, 0.0, n);
    const auto base = std::min(static_cast<std::size_t>(pos), dual_.count[a] - 1);
    i0[a] = base;
    w[a] = pos - static_cast<double>(base);
  }
  const auto st = dual_.strides();
  double s = 0.0;
  for (unsigned corner = 0; corner < (1u << dual_.dim); ++corner) {
    double weight = 1.0;
    std::size_t off = 0;
    for (int a = 0; a < dual_.dim; ++a) {
      const bool up = (corner >> a) & 1u;
      weight *= up ? w[a] : 1.0 - w[a];
      off += ((i0[a] + (up ? 1 : 0)) % dual_.count[a]) * st[a];
    }
    if (weight != 0.0) s += weight * mags_[off];
  }
  return s;
}

SpectralFunction SpectralFunction::scaled(double factor) const {
  auto v = values_;
  for (auto& z : v) z *= factor;
  return SpectralFunction(dual_, std::move(v));
}

SpectralFunction transform(const GridFunction& f) {
  const GridSpec& g = f.spec();
  const GridSpec d = dual_grid(g);
  auto data = to_complex(f);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto idx = unravel(g, i);
    std::size_t parity = 0;
    for (int a = 0; a < g.dim; ++a) parity += idx[a];
    if (parity % 2) data[i] = -data[i];
  }
  detail::fft_inplace(data, g, -1);
  std::array<std::vector<std::complex<double>>, kMaxDim> phase;
  for (int a = 0; a < g.dim; ++a) {
    phase[a].resize(g.count[a]);
    for (std::size_t m = 0; m < g.count[a]; ++m) phase[a][m] = std::polar(1.0, -kTwoPi * g.lower[a] * d.coordinate(a, m));
  }
  const double cell = g.cell_volume();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto idx = unravel(g, i);
    std::complex<double> ph = cell;
    for (int a = 0; a < g.dim; ++a) ph *= phase[a][idx[a]];
    data[i] *= ph;
  }
  return SpectralFunction(d, std::move(data));
}

GridFunction inverse_transform(const SpectralFunction& F, const GridSpec& spatial) {
  const GridSpec d = dual_grid(spatial);
  const GridSpec& fd = F.grid();
  for (int a = 0; a < spatial.dim; ++a)
    if (fd.dim != d.dim || fd.count[a] != d.count[a] || std::abs(fd.spacing[a] - d.spacing[a]) > 1e-12 * d.spacing[a])
      throw std::invalid_argument("spectrum is not on the dual of the requested grid");
  std::vector<std::complex<double>> data = F.values();
  double dual_cell = 1.0;
  for (int a = 0; a < d.dim; ++a) dual_cell *= d.spacing[a];
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto idx = unravel(d, i);
    std::complex<double> ph = dual_cell;
    for (int a = 0; a < d.dim; ++a) ph *= std::polar(1.0, kTwoPi * spatial.lower[a] * d.coordinate(a, idx[a]));
    data[i] *= ph;
  }
  detail::fft_inplace(data, spatial, +1);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto idx = unravel(spatial, i);
    std::size_t parity = 0;
    for (int a = 0; a < spatial.dim; ++a) parity += idx[a];
    if (parity % 2) data[i] = -data[i];
  }
  return from_complex(spatial, data, false);
}

GridFunction apply_multiplier(const GridFunction& f, const Multiplier& m, bool real_output) {
  const GridSpec& g = f.spec();
  check_even(g);
  auto data = to_complex(f);
  detail::fft_inplace(data, g, -1);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto k = unravel(g, i);
    Frequency xi{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim; ++a) {
      const auto n = static_cast<long>(g.count[a]);
      const long kk = static_cast<long>(k[a]) < n / 2 ? static_cast<long>(k[a]) : static_cast<long>(k[a]) - n;
      xi[a] = static_cast<double>(kk) / (static_cast<double>(n) * g.spacing[a]);
    }
    data[i] *= m(xi, k);
  }
  detail::fft_inplace(data, g, +1);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& z : data) z *= scale;
  return from_complex(g, data, real_output && !f.is_complex());
}

GridFunction riesz(const GridFunction& f, int axis) {
  const GridSpec& g = f.spec();
  if (axis < 0 || axis >= g.dim) throw std::out_of_range("Riesz axis out of range");
  const std::size_t nyquist = g.count[axis] / 2;
  return apply_multiplier(f, [&](const Frequency& xi, const std::array<std::size_t, kMaxDim>& k) -> std::complex<double> {
    const double r = norm_of(xi, g.dim);
    if (r == 0.0 || k[axis] == nyquist) return 0.0;
    return {0.0, -xi[axis] / r};
  });
}

GridFunction spectral_derivative(const GridFunction& f, int axis) {
  const GridSpec& g = f.spec();
  if (axis < 0 || axis >= g.dim) throw std::out_of_range("derivative axis out of range");
  const std::size_t nyquist = g.count[axis] / 2;
  return apply_multiplier(f, [&](const Frequency& xi, const std::array<std::size_t, kMaxDim>& k) -> std::complex<double> {
    if (k[axis] == nyquist) return 0.0;
    return {0.0, kTwoPi * xi[axis]};
  });
}

GridFunction poisson(const GridFunction& f, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("Poisson extension needs t > 0");
  const int n = f.spec().dim;
  return apply_multiplier(f, [&](const Frequency& xi, const auto&) -> std::complex<double> {
    return std::exp(-kTwoPi * norm_of(xi, n) * t);
  });
}

GridFunction poisson_t_derivative(const GridFunction& f, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("Poisson extension needs t > 0");
  const int n = f.spec().dim;
  return apply_multiplier(f, [&](const Frequency& xi, const auto&) -> std::complex<double> {
    const double r = norm_of(xi, n);
    return -kTwoPi * r * std::exp(-kTwoPi * r * t);
  });
}

H1Norm h1_norm(const GridFunction& f) {
  H1Norm h;
  h.l1 = lp_norm(f, 1.0);
  h.value = h.l1;
  for (int j = 0; j < f.spec().dim; ++j) {
    h.riesz_l1.push_back(lp_norm(riesz(f, j), 1.0));
    h.value += h.riesz_l1.back();
  }
  double mean = 0.0;
  for (double v : f.real()) mean += v;
  mean *= f.spec().cell_volume();
  h.mean_ratio = h.l1 > 0.0 ? std::abs(mean) / h.l1 : 0.0;
  h.mean_zero_flag = h.mean_ratio > 1e-6;
  return h;
}

GridFunction in_band(const GridFunction& f) {
  const GridSpec& g = f.spec();
  return apply_multiplier(f, [&g](const Frequency&, const std::array<std::size_t, kMaxDim>& k) {
    for (int a = 0; a < g.dim; ++a)
      if (k[a] == g.count[a] / 2) return std::complex<double>(0.0);
    return std::complex<double>(1.0);
  });
}

ConjugacyResidual conjugacy_residual(const GridFunction& input, double t) {
  // The Nyquist mode of an axis has no sign, so R_j and D_j vanish there while
  // d/dt does not.
  const GridFunction f = in_band(input);
  const GridFunction d0 = poisson_t_derivative(f, t);
  std::vector<double> sum(d0.real().begin(), d0.real().end());
  ConjugacyResidual r;
  for (double v : sum) r.scale = std::max(r.scale, std::abs(v));
  for (int j = 0; j < f.spec().dim; ++j) {
    const GridFunction dj = spectral_derivative(poisson(riesz(f, j), t), j);
    const auto v = dj.real();
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
  }
  for (double v : sum) r.residual = std::max(r.residual, std::abs(v));
  return r;
}

namespace {

// Per line along `axis`: suffix maxima of |F| by level |m - N/2|, i.e.
// out[line][l] = max over nodes with |xi_axis| >= l * spacing.
std::vector<std::vector<double>> level_suffix_max(const SpectralFunction& F, int axis) {
  const GridSpec& d = F.grid();
  const std::size_t n = d.count[axis];
  const std::size_t half = n / 2;
  const auto offsets = line_offsets(d, axis);
  const std::size_t stride = d.strides()[axis];
  std::vector<std::vector<double>> out(offsets.size(), std::vector<double>(half + 1, 0.0));
  for (std::size_t c = 0; c < offsets.size(); ++c) {
    auto& lv = out[c];
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t level = m >= half ? m - half : half - m;
      lv[level] = std::max(lv[level], F.magnitude(offsets[c] + m * stride));
    }
    for (std::size_t l = half; l-- > 0;) lv[l] = std::max(lv[l], lv[l + 1]);
  }
  return out;
}

// integral_a^b G**(t^e) dt over the exact step profile G.
double composed_doublestar_integral(const DecreasingProfile& G, double a, double b, double e) {
  if (G.empty() || b <= a) return 0.0;
  const auto& s = G.breakpoints();
  const auto& v = G.values();
  const auto& P = G.prefix_integrals();
  auto tint = [e](double lo, double hi) {  // integral of t^(-e)
    if (e == 1.0) return std::log(hi / lo);
    return (std::pow(lo, 1.0 - e) - std::pow(hi, 1.0 - e)) / (e - 1.0);
  };
  double total = 0.0;
  double lo = a;
  std::size_t j = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), std::pow(a, e)) - s.begin());
  while (lo < b) {
    double hi = b;
    double vj = 0.0, cj = 0.0;
    if (j < s.size()) {
      hi = std::min(b, std::pow(s[j], 1.0 / e));
      vj = v[j];
      cj = j == 0 ? 0.0 : P[j - 1] - v[j] * s[j - 1];
    } else {
      cj = P.back();
    }
    if (hi > lo) total += vj * (hi - lo) + (cj != 0.0 ? cj * tint(lo, hi) : 0.0);
    lo = std::max(lo, hi);
    ++j;
  }
  return total;
}

}  // namespace

SlabSup slab_sup(const SpectralFunction& F, int axis, double t) {
  const GridSpec& d = F.grid();
  if (d.dim < 2) throw std::invalid_argument("slab suprema need dim >= 2");
  if (axis < 0 || axis >= d.dim) throw std::out_of_range("slab axis out of range");
  if (!(t >= 0.0)) throw std::invalid_argument("slab threshold must be nonnegative");
  const double step = d.spacing[axis];
  const std::size_t half = d.count[axis] / 2;
  const auto level = static_cast<std::size_t>(std::max(0.0, std::ceil(t / step - 1e-9)));
  SlabSup out;
  const GridSpec comp = d.complement(axis);
  if (level > half) {
    out.values = GridFunction::zeros(comp);
    out.beyond_extent = true;
    return out;
  }
  const auto suffix = level_suffix_max(F, axis);
  std::vector<double> v(suffix.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = suffix[c][level];
  out.values = GridFunction(comp, std::move(v));
  return out;
}

double sup_integral_functional(const SpectralFunction& F, int axis) {
  const GridSpec& d = F.grid();
  if (d.dim < 2) throw std::invalid_argument("the slab functional needs dim >= 2");
  if (axis < 0 || axis >= d.dim) throw std::out_of_range("slab axis out of range");
  const double step = d.spacing[axis];
  const std::size_t half = d.count[axis] / 2;
  const double cell = d.complement(axis).cell_volume();
  const double e = static_cast<double>(d.dim - 1);
  const auto suffix = level_suffix_max(F, axis);
  std::vector<double> g(suffix.size());
  double total = 0.0;
  // On ((m-1) step, m step] the admissible set is |xi_axis| >= m step.
  for (std::size_t m = 1; m <= half; ++m) {
    for (std::size_t c = 0; c < g.size(); ++c) g[c] = suffix[c][m];
    const auto G = DecreasingProfile::from_samples(g, cell);
    total += composed_doublestar_integral(G, static_cast<double>(m - 1) * step, static_cast<double>(m) * step, e);
  }
  return total;
}

double sup_integral_functional(const GridFunction& f, int axis) { return sup_integral_functional(transform(f), axis); }

WeightedIntegral weighted_fourier_integral(const SpectralFunction& F, double gamma) {
  const GridSpec& d = F.grid();
  double max_step = 0.0;
  double min_step = std::numeric_limits<double>::infinity();
  for (int a = 0; a < d.dim; ++a) {
    max_step = std::max(max_step, d.spacing[a]);
    min_step = std::min(min_step, d.spacing[a]);
  }
  const double cell = d.cell_volume();
  WeightedIntegral w;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double r = norm_of(F.frequency(i), d.dim);
    if (r < 0.5 * min_step) continue;
    const double term = F.magnitude(i) * std::pow(r, gamma) * cell;
    w.value += term;
    if (r <= 2.0 * max_step * (1.0 + 1e-12)) w.near_origin += term;
  }
  return w;
}

}  // namespace embedlab
