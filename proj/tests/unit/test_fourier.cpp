#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "embedlab/corpus.hpp"
#include "embedlab/fourier.hpp"
#include "embedlab/norms.hpp"
#include "embedlab/rearrange.hpp"

using namespace embedlab;
constexpr double kPi = std::numbers::pi;

namespace {

GridFunction gaussian(const GridSpec& g, double shift = 0.0) {
  std::vector<double> v(g.size());
  const auto st = g.strides();
  for (std::size_t i = 0; i < g.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double x = g.coordinate(a, (i / st[a]) % g.count[a]) - shift;
      r2 += x * x;
    }
    v[i] = std::exp(-kPi * r2);
  }
  return GridFunction(g, v);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("dual grid places zero frequency on node N/2") {
  const auto d = dual_grid(GridSpec::symmetric(2, 8.0, 256));
  CHECK(d.count[0] == 256);
  CHECK(d.spacing[0] == doctest::Approx(1.0 / 16.0));
  CHECK(d.coordinate(1, 128) == 0.0);
}

TEST_CASE("gaussian is self-dual") {
  for (auto [dim, n, tol] : {std::tuple{1, 512, 1e-8}, std::tuple{2, 256, 1e-6}}) {
    const auto g = GridSpec::symmetric(dim, 8.0, static_cast<std::size_t>(n));
    const auto F = transform(gaussian(g));
    double err = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
      const auto xi = F.frequency(i);
      double r2 = 0.0;
      for (int a = 0; a < dim; ++a) r2 += xi[a] * xi[a];
      err = std::max(err, std::abs(F.value(i) - std::exp(-kPi * r2)));
    }
    CHECK(err <= tol);
  }
}

TEST_CASE("Parseval and inversion") {
  const auto g = GridSpec::symmetric(2, 8.0, 64);
  for (const auto& m : corpus_generate(3, 6, g)) {
    const auto F = transform(m.values);
    double s = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) s += std::norm(F.value(i));
    s *= F.grid().cell_volume();
    CHECK(s == doctest::Approx(std::pow(lp_norm(m.values, 2.0), 2)).epsilon(1e-12));
    const auto back = inverse_transform(F, g);
    CHECK(max_abs_diff(back.real(), m.values.real()) <= 1e-12 * (1 + lp_norm(m.values, 1.0)));
  }
}

TEST_CASE("a shift by whole cells is a phase on the dual grid") {
  // transform of Delta_1(h) f equals f^(xi) (exp(2 pi i h xi_1) - 1) while f stays away from the edges.
  const auto g = GridSpec::symmetric(2, 8.0, 64);
  const auto f = gaussian(g, 0.4);
  const auto F = transform(f);
  for (long m : {1L, 3L, -5L}) {
    std::vector<double> d(g.size(), 0.0);
    for (std::size_t i = 0; i < 64; ++i)
      for (std::size_t j = 0; j < 64; ++j) {
        const long src = static_cast<long>(i) + m;
        const double shifted = src >= 0 && src < 64 ? f.real()[static_cast<std::size_t>(src) * 64 + j] : 0.0;
        d[i * 64 + j] = shifted - f.real()[i * 64 + j];
      }
    const auto D = transform(GridFunction(g, d));
    const double h = m * g.spacing[0];
    double err = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
      const auto expect = F.value(i) * (std::exp(std::complex<double>(0.0, 2 * kPi * h * F.frequency(i)[0])) - 1.0);
      err = std::max(err, std::abs(D.value(i) - expect));
    }
    CHECK(err <= 1e-10);
  }
}

TEST_CASE("Riesz transforms square to minus the identity on mean-zero inputs") {
  for (int dim : {1, 2, 3}) {
    const auto g = GridSpec::symmetric(dim, 8.0, dim == 3 ? 32 : 128);
    const auto f = in_band(spectral_derivative(gaussian(g, 0.3), 0));
    std::vector<double> sum(g.size(), 0.0);
    for (int j = 0; j < dim; ++j) {
      const auto r = riesz(riesz(f, j), j);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r.real()[i];
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += f.real()[i];
    CHECK(*std::max_element(sum.begin(), sum.end()) <= 1e-8);
    CHECK(*std::min_element(sum.begin(), sum.end()) >= -1e-8);
  }
}

TEST_CASE("spectral derivative of a gaussian") {
  const auto g = GridSpec::symmetric(1, 8.0, 512);
  const auto d = spectral_derivative(gaussian(g), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(0, i);
    CHECK(d.real()[i] == doctest::Approx(-2 * kPi * x * std::exp(-kPi * x * x)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("Poisson semigroup") {
  const auto g = GridSpec::symmetric(2, 8.0, 64);
  const auto f = corpus_generate(4, 1, g).front().values;
  const auto a = poisson(poisson(f, 0.3), 0.5);
  const auto b = poisson(f, 0.8);
  CHECK(max_abs_diff(a.real(), b.real()) <= 1e-12);
  double mf = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    mf += f.real()[i];
    mb += b.real()[i];
  }
  CHECK(mb == doctest::Approx(mf).epsilon(1e-12));
  CHECK_THROWS(poisson(f, 0.0));
  // d/dt agrees with a centred difference in t.
  const double t = 0.4, e = 1e-4;
  const auto dt = poisson_t_derivative(f, t);
  const auto up = poisson(f, t + e), dn = poisson(f, t - e);
  for (std::size_t i = 0; i < g.size(); i += 97) CHECK(dt.real()[i] == doctest::Approx((up.real()[i] - dn.real()[i]) / (2 * e)).epsilon(1e-6).scale(1.0));
}

TEST_CASE("conjugate system residual vanishes") {
  for (int dim : {1, 2, 3}) {
    const auto g = GridSpec::symmetric(dim, 8.0, dim == 3 ? 32 : 128);
    for (const auto& m : corpus_generate(6, 6, g))
      for (double t : {g.spacing[0], 1.0}) {
        const auto r = conjugacy_residual(m.values, t);
        CHECK(r.residual <= 1e-10 * r.scale);
      }
  }
}

TEST_CASE("H^1 norm flags inputs with a mean") {
  const auto g = GridSpec::symmetric(2, 8.0, 64);
  const auto f = gaussian(g);
  CHECK(h1_norm(f).mean_zero_flag);
  const auto d = h1_norm(spectral_derivative(f, 1));
  CHECK_FALSE(d.mean_zero_flag);
  CHECK(d.riesz_l1.size() == 2);
  CHECK(d.value == doctest::Approx(d.l1 + d.riesz_l1[0] + d.riesz_l1[1]));
}

TEST_CASE("slab sup of a separable spectrum") {
  // F = a(xi_1) b(xi_2): F_{t,1}(xi_2) = max_{|xi_1| >= t} |a| * |b(xi_2)|.
  const auto d = dual_grid(GridSpec::symmetric(2, 4.0, 32));
  auto a = [](double x) { return 1.0 / (1.0 + 4 * x * x) * (1.0 + 0.3 * std::cos(7 * x)); };
  auto b = [](double y) { return std::exp(-y * y) * (0.5 + std::sin(3 * y) * std::sin(3 * y)); };
  const auto F = SpectralFunction::from_function(d, [&](const Frequency& xi) { return std::complex<double>(a(xi[0]) * b(xi[1])); });
  for (double t : {0.0, 0.3, 1.0, 1.9}) {
    const auto s = slab_sup(F, 0, t);
    double amax = 0.0;
    for (std::size_t i = 0; i < d.count[0]; ++i)
      if (std::abs(d.coordinate(0, i)) >= t) amax = std::max(amax, std::abs(a(d.coordinate(0, i))));
    REQUIRE(s.values.size() == d.count[1]);
    for (std::size_t j = 0; j < d.count[1]; ++j) CHECK(s.values.real()[j] == doctest::Approx(amax * std::abs(b(d.coordinate(1, j)))).epsilon(1e-14));
  }
  CHECK(slab_sup(F, 0, 100.0).beyond_extent);
}

TEST_CASE("slab-sup integral against per-interval Gauss-Kronrod") {
  // Independent route: integrate F_{t,j}**(t^(n-1)) numerically on every t-interval where F_{t,j} is fixed.
  const auto g = GridSpec::symmetric(2, 4.0, 32);
  for (const auto& m : corpus_generate(12, 3, g)) {
    const auto F = transform(m.values);
    for (int axis = 0; axis < 2; ++axis) {
      const double dx = F.grid().spacing[axis];
      const std::size_t levels = F.grid().count[axis] / 2;
      double total = 0.0;
      for (std::size_t l = 0; l <= levels; ++l) {
        const double lo = l == 0 ? 0.0 : (static_cast<double>(l) - 1) * dx;
        const double hi = static_cast<double>(l) * dx;
        if (hi <= lo) continue;
        const auto prof = decreasing_rearrangement(slab_sup(F, axis, hi).values);
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double t) { return prof.empty() ? 0.0 : double_star(prof, t); }, lo, hi, 12, 1e-13);
      }
      CHECK(sup_integral_functional(F, axis) == doctest::Approx(total).epsilon(1e-8));
    }
  }
}

TEST_CASE("weighted Fourier integral of a constant spectrum") {
  const auto d = dual_grid(GridSpec::symmetric(1, 4.0, 64));
  const auto F = SpectralFunction::from_function(d, [](const Frequency&) { return std::complex<double>(1.0); });
  const auto w = weighted_fourier_integral(F, 0.0);
  CHECK(w.value == doctest::Approx(63 * d.spacing[0]));
  CHECK(w.near_origin == doctest::Approx(4 * d.spacing[0]));
}
