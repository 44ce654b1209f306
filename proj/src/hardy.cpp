#include "embedlab/hardy.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

#include "embedlab/norms.hpp"
#include "embedlab/rearrange.hpp"

namespace embedlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Integral over [u0, u1] of the log-linear interpolant through (u0, g0), (u1, g1).
double panel(double du, double g0, double g1) {
  if (g0 <= 0.0 || g1 <= 0.0) return 0.5 * du * (g0 + g1);
  const double c = std::log(g1 / g0);
  if (std::abs(c) < 1e-8) return 0.5 * du * (g0 + g1);
  return du * (g1 - g0) / c;
}

GeometricSamples same_grid(const GeometricSamples& g, std::vector<double> values) {
  GeometricSamples out;
  out.t0 = g.t0;
  out.ratio = g.ratio;
  out.values = std::move(values);
  return out;
}

void check_samples(const GeometricSamples& g) {
  if (g.values.size() < 2) throw std::invalid_argument("need at least two geometric samples");
  if (!(g.t0 > 0.0) || !(g.ratio > 1.0)) throw std::invalid_argument("geometric grid needs t0 > 0 and ratio > 1");
  for (double v : g.values)
    if (!(v >= 0.0)) throw std::invalid_argument("sampled function must be nonnegative");
}

}  // namespace

double GeometricSamples::t(std::size_t i) const { return t0 * std::pow(ratio, static_cast<double>(i)); }

GeometricSamples GeometricSamples::sample(const std::function<double(double)>& phi, double t_min, double t_max,
                                          double ratio) {
  if (!(t_min > 0.0) || !(t_max > t_min) || !(ratio > 1.0)) throw std::invalid_argument("bad geometric sampling range");
  GeometricSamples g;
  g.t0 = t_min;
  g.ratio = ratio;
  const auto n = static_cast<std::size_t>(std::ceil(std::log(t_max / t_min) / std::log(ratio) - 1e-9)) + 1;
  g.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.values[i] = phi(g.t(i));
  return g;
}

double log_measure_integral(const GeometricSamples& g) {
  check_samples(g);
  const auto& v = g.values;
  const std::size_t n = v.size();
  const double du = std::log(g.ratio);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += panel(du, v[i], v[i + 1]);
  if (v[0] > 0.0 && v[1] > 0.0) {
    const double b = std::log(v[1] / v[0]) / du;
    s += b > 0.0 ? v[0] / b : kInf;
  }
  if (v[n - 1] > 0.0 && v[n - 2] > 0.0) {
    const double b = std::log(v[n - 1] / v[n - 2]) / du;
    s += b < 0.0 ? v[n - 1] / -b : kInf;
  }
  return s;
}

std::vector<double> cumulative_integral(const GeometricSamples& phi) {
  check_samples(phi);
  const auto& v = phi.values;
  const double du = std::log(phi.ratio);
  std::vector<double> out(v.size());
  double acc = 0.0;
  if (v[0] > 0.0 && v[1] > 0.0) {
    const double a = std::log(v[1] / v[0]) / du;  // phi ~ t^a near 0
    acc = a > -1.0 ? phi.t0 * v[0] / (a + 1.0) : kInf;
  }
  out[0] = acc;
  double t_prev = phi.t0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double t_i = phi.t(i);
    acc += panel(du, v[i - 1] * t_prev, v[i] * t_i);
    out[i] = acc;
    t_prev = t_i;
  }
  return out;
}

HardyResult hardy_check(const GeometricSamples& phi, double lambda, double p) {
  if (!(lambda < 1.0)) throw std::invalid_argument("Hardy inequality needs lambda < 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("Hardy inequality needs finite p >= 1");
  const auto cum = cumulative_integral(phi);
  std::vector<double> g(cum.size()), h(cum.size());
  for (std::size_t i = 0; i < cum.size(); ++i) {
    const double t = phi.t(i);
    g[i] = std::pow(std::pow(t, lambda - 1.0) * cum[i], p);
    h[i] = std::pow(std::pow(t, lambda) * phi.values[i], p);
  }
  HardyResult r;
  r.lhs = std::pow(log_measure_integral(same_grid(phi, std::move(g))), 1.0 / p);
  r.rhs = std::pow(log_measure_integral(same_grid(phi, std::move(h))), 1.0 / p) / (1.0 - lambda);
  return r;
}

double quasi_decreasing_constant(const std::vector<double>& psi) {
  double c = 1.0;
  double low = kInf;
  for (double v : psi) {
    if (low < kInf) {
      if (low == 0.0) {
        if (v > 0.0) return kInf;
      } else {
        c = std::max(c, v / low);
      }
    }
    low = std::min(low, v);
  }
  return c;
}

QuasiDecreasingResult quasi_decreasing_hardy_check(const GeometricSamples& psi, double alpha, double beta, double p,
                                                   double cap) {
  if (!(alpha > 0.0) || !(beta > -1.0) || !(p > 0.0 && p < 1.0))
    throw std::invalid_argument("quasi-decreasing Hardy check needs alpha > 0, beta > -1, 0 < p < 1");
  check_samples(psi);
  QuasiDecreasingResult r;
  r.quasi_constant = quasi_decreasing_constant(psi.values);
  if (r.quasi_constant > cap) throw std::invalid_argument("function is not quasi-decreasing within the configured cap");

  std::vector<double> inner(psi.values.size());
  for (std::size_t i = 0; i < inner.size(); ++i) inner[i] = psi.values[i] * std::pow(psi.t(i), beta);
  const auto cum = cumulative_integral(same_grid(psi, std::move(inner)));
  std::vector<double> g(cum.size()), h(cum.size());
  for (std::size_t i = 0; i < cum.size(); ++i) {
    const double u = psi.t(i);
    const double w = std::pow(u, -alpha);
    g[i] = w * std::pow(cum[i], p);
    h[i] = w * std::pow(psi.values[i] * std::pow(u, beta + 1.0), p);
  }
  r.lhs = log_measure_integral(same_grid(psi, std::move(g)));
  r.rhs = log_measure_integral(same_grid(psi, std::move(h)));
  r.ratio = (r.lhs == 0.0 && r.rhs == 0.0) ? 1.0 : r.lhs / r.rhs;
  return r;
}

namespace {

// integral_a^b (v + c/t)^p dt with 0 < a < b, c >= 0.
double segment_power_integral(double v, double c, double a, double b, double p) {
  if (c == 0.0) return std::pow(v, p) * (b - a);
  const double rp = std::round(p);
  if (std::abs(p - rp) < 1e-12 && rp <= 8.0) {
    // Binomial expansion; k = 1 carries the logarithm.
    const int ip = static_cast<int>(rp);
    double s = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= ip; ++k) {
      const double coef = binom * std::pow(v, ip - k) * std::pow(c, k);
      double tint = 0.0;
      if (k == 0) tint = b - a;
      else if (k == 1) tint = std::log(b / a);
      else tint = (std::pow(a, 1 - k) - std::pow(b, 1 - k)) / (k - 1);
      s += coef * tint;
      binom = binom * (ip - k) / (k + 1);
    }
    return s;
  }
  using GL = boost::math::quadrature::gauss<double, 20>;
  auto f = [&](double t) { return std::pow(v + c / t, p); };
  double s = 0.0;
  for (double lo = a; lo < b;) {
    const double hi = std::min(b, 2.0 * lo);
    s += GL::integrate(f, lo, hi);
    lo = hi;
  }
  return s;
}

}  // namespace

HardyResult doublestar_bound_check(const GridFunction& f, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("the f** bound needs finite p > 1");
  const DecreasingProfile prof = decreasing_rearrangement(f);
  HardyResult r;
  r.rhs = p / (p - 1.0) * lp_norm(f, p);
  if (prof.empty()) return r;
  const auto& t = prof.breakpoints();
  const auto& v = prof.values();
  const auto& P = prof.prefix_integrals();
  // First segment: f** = v_0 on (0, t_0).
  double s = std::pow(v[0], p) * t[0];
  for (std::size_t j = 1; j < v.size(); ++j) {
    const double c = P[j - 1] - v[j] * t[j - 1];
    s += segment_power_integral(v[j], std::max(0.0, c), t[j - 1], t[j], p);
  }
  s += std::pow(P.back(), p) * std::pow(t.back(), 1.0 - p) / (p - 1.0);
  r.lhs = std::pow(s, 1.0 / p);
  return r;
}

}  // namespace embedlab
