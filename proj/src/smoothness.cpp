#include "embedlab/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "embedlab/norms.hpp"
#include "embedlab/rearrange.hpp"
#include "spec_parser.hpp"

namespace embedlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_axis(const GridSpec& g, int axis) {
  if (axis < 0 || axis >= g.dim) throw std::out_of_range("difference axis out of range");
}

long cells_for(const GridSpec& g, int axis, double h) {
  const double m = h / g.spacing[axis];
  const double r = std::round(m);
  if (std::abs(m - r) > 1e-9 * std::max(1.0, std::abs(r)))
    throw std::invalid_argument("shift must be an integer multiple of the grid spacing");
  return static_cast<long>(r);
}

void shift_line(std::span<const double> in, std::size_t in_stride, std::size_t in_base, std::span<double> out,
                std::size_t out_stride, std::size_t out_base, std::size_t n, long m) {
  const std::size_t a = static_cast<std::size_t>(std::labs(m));
  const std::size_t len = n + a;
  for (std::size_t i = 0; i < len; ++i) {
    double v = 0.0;
    if (m > 0) {
      if (i < n) v += in[in_base + i * in_stride];
      if (i >= a) v -= in[in_base + (i - a) * in_stride];
    } else {
      if (i >= a) v += in[in_base + (i - a) * in_stride];
      if (i < n) v -= in[in_base + i * in_stride];
    }
    out[out_base + i * out_stride] = v;
  }
}

// Integral over [u0, u1] of the log-linear interpolant of g; exact for power laws in h.
double panel(double u0, double u1, double g0, double g1) {
  const double du = u1 - u0;
  if (g0 <= 0.0 || g1 <= 0.0) return 0.5 * du * (g0 + g1);
  const double c = std::log(g1 / g0);
  if (std::abs(c) < 1e-8) return 0.5 * du * (g0 + g1);
  return du * (g1 - g0) / c;
}

BesovResult integrate(const GridSpec& g, const BesovSpec& spec, const std::vector<long>& nodes,
                      const std::vector<double>& norms) {
  BesovResult r;
  r.nodes = nodes.size();
  const double h = g.spacing[spec.axis];
  const double at = spec.alpha * spec.theta;
  std::vector<double> u(nodes.size()), w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double hi = static_cast<double>(nodes[i]) * h;
    u[i] = std::log(hi);
    w[i] = std::pow(hi, -at) * std::pow(norms[i], spec.theta);
  }
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) s += panel(u[i], u[i + 1], w[i], w[i + 1]);

  if (w.front() > 0.0) {
    if (spec.alpha >= 1.0) {
      r.small_tail = kInf;
      r.diagnostic = "alpha >= 1: the small-h end diverges for a nonconstant function";
    } else {
      r.small_tail = w.front() / ((1.0 - spec.alpha) * spec.theta);
    }
  }
  if (spec.upper_tail && w.back() > 0.0) {
    if (spec.alpha <= 0.0) {
      r.large_tail = kInf;
      r.diagnostic = "alpha <= 0: the large-h end diverges for a nonzero function";
    } else {
      r.large_tail = w.back() / at;
    }
  }
  r.integral = s + r.small_tail + r.large_tail;
  r.value = std::isfinite(r.integral) ? std::pow(r.integral, 1.0 / spec.theta) : kInf;
  return r;
}

void check_besov(const GridSpec& g, const BesovSpec& spec) {
  check_axis(g, spec.axis);
  if (!(spec.theta >= 1.0) || !std::isfinite(spec.theta)) throw std::invalid_argument("theta must be finite and >= 1");
  if (!std::isfinite(spec.alpha)) throw std::invalid_argument("alpha must be finite");
  if (!(spec.ratio > 1.0 && spec.ratio <= 2.0)) throw std::invalid_argument("node ratio must lie in (1, 2]");
}

}  // namespace

long shift_cells(const GridSpec& grid, int axis, double h) {
  check_axis(grid, axis);
  return cells_for(grid, axis, h);
}

GridFunction difference_cells(const GridFunction& f, int axis, long m) {
  const GridSpec& g = f.spec();
  check_axis(g, axis);
  GridSpec out = g;
  const std::size_t a = static_cast<std::size_t>(std::labs(m));
  out.count[axis] += a;
  if (m > 0) out.lower[axis] -= static_cast<double>(m) * g.spacing[axis];

  const auto in_off = line_offsets(g, axis);
  const auto out_off = line_offsets(out, axis);
  const std::size_t in_stride = g.strides()[axis];
  const std::size_t out_stride = out.strides()[axis];
  const std::size_t n = g.count[axis];

  std::vector<double> re(out.size());
  for (std::size_t c = 0; c < in_off.size(); ++c)
    shift_line(f.real(), in_stride, in_off[c], re, out_stride, out_off[c], n, m);
  if (!f.is_complex()) return GridFunction(out, std::move(re));
  std::vector<double> im(out.size());
  for (std::size_t c = 0; c < in_off.size(); ++c)
    shift_line(f.imag(), in_stride, in_off[c], im, out_stride, out_off[c], n, m);
  return GridFunction(out, std::move(re), std::move(im));
}

GridFunction difference(const GridFunction& f, int axis, double h) {
  return difference_cells(f, axis, shift_cells(f.spec(), axis, h));
}

double difference_norm(const GridFunction& f, int axis, long m, const NormSpec& base) {
  check_axis(f.spec(), axis);
  if (m == 0) return 0.0;
  const long n = static_cast<long>(f.spec().count[axis]);
  const long capped = m > 0 ? std::min(m, n) : std::max(m, -n);
  return norm(difference_cells(f, axis, capped), base);
}

double modulus(const GridFunction& f, int axis, double t, const NormSpec& base) {
  check_axis(f.spec(), axis);
  if (!(t >= 0.0)) throw std::invalid_argument("modulus needs t >= 0");
  const long n = static_cast<long>(f.spec().count[axis]);
  const long m_max = std::min(n, static_cast<long>(std::floor(t / f.spec().spacing[axis] + 1e-9)));
  double w = 0.0;
  for (long m = 1; m <= m_max; ++m) {
    w = std::max(w, difference_norm(f, axis, m, base));
    w = std::max(w, difference_norm(f, axis, -m, base));
  }
  return w;
}

std::vector<double> difference_norm_table(const GridFunction& f, int axis, long m_max, const NormSpec& base) {
  check_axis(f.spec(), axis);
  if (m_max < 0) throw std::invalid_argument("m_max must be nonnegative");
  const long n = static_cast<long>(f.spec().count[axis]);
  std::vector<double> t(static_cast<std::size_t>(m_max) + 1, 0.0);
  for (long m = 1; m <= m_max; ++m)
    t[static_cast<std::size_t>(m)] = m <= n ? difference_norm(f, axis, m, base) : t[static_cast<std::size_t>(n)];
  return t;
}

std::vector<double> modulus_from_table(const std::vector<double>& table) {
  std::vector<double> w(table.size());
  double run = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) w[i] = run = std::max(run, table[i]);
  return w;
}

std::vector<long> besov_nodes(const GridSpec& grid, const BesovSpec& spec) {
  check_besov(grid, spec);
  const int k = spec.axis;
  const double h = grid.spacing[k];
  const long lo = spec.h_min > 0.0 ? std::max(1L, cells_for(grid, k, spec.h_min)) : 1L;
  const double extent = grid.upper(k) - grid.lower[k];
  const long hi = spec.h_max > 0.0 ? cells_for(grid, k, spec.h_max) : std::lround(2.0 * extent / h);
  if (hi < lo) throw std::invalid_argument("h_max must not be below h_min");
  std::vector<long> nodes{lo};
  for (double x = static_cast<double>(lo) * spec.ratio;; x *= spec.ratio) {
    const long m = std::min(hi, std::lround(x));
    if (m > nodes.back()) nodes.push_back(m);
    if (m >= hi) break;
  }
  if (nodes.back() != hi) nodes.push_back(hi);
  return nodes;
}

BesovResult besov_seminorm(const GridFunction& f, const BesovSpec& spec) {
  const auto nodes = besov_nodes(f.spec(), spec);
  std::vector<double> norms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) norms[i] = difference_norm(f, spec.axis, nodes[i], spec.base);
  return integrate(f.spec(), spec, nodes, norms);
}

BesovResult besov_seminorm_modulus(const GridFunction& f, const BesovSpec& spec) {
  const auto nodes = besov_nodes(f.spec(), spec);
  const auto omega = modulus_from_table(difference_norm_table(f, spec.axis, nodes.back(), spec.base));
  std::vector<double> norms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) norms[i] = omega[static_cast<std::size_t>(nodes[i])];
  return integrate(f.spec(), spec, nodes, norms);
}

BesovSpec BesovSpec::parse(std::string_view text) {
  const auto semi = text.find(';');
  const auto close = text.rfind(')');
  if (semi == std::string_view::npos || close == std::string_view::npos || close < semi)
    throw std::invalid_argument("Besov spec must look like Besov(alpha=..,theta=..,k=..;<norm>)");
  detail::Cursor c(text.substr(0, semi));
  BesovSpec s;
  c.expect("Besov(");
  s.alpha = c.number({"alpha"});
  c.expect(",");
  s.theta = c.number({"theta"});
  c.expect(",");
  s.axis = c.axis();
  while (c.accept(",")) {
    if (c.accept("rho=")) s.ratio = c.number();
    else if (c.accept("hmin=")) s.h_min = c.number();
    else if (c.accept("hmax=")) s.h_max = c.number();
    else if (c.accept("tail=")) s.upper_tail = c.number() != 0.0;
    else c.fail("unknown Besov option");
  }
  if (!c.done()) c.fail("trailing characters before ';'");
  for (char ch : text.substr(close + 1))
    if (!std::isspace(static_cast<unsigned char>(ch))) throw std::invalid_argument("trailing characters after Besov spec");
  s.base = NormSpec::parse(text.substr(semi + 1, close - semi - 1));
  if (!(s.theta >= 1.0)) throw std::invalid_argument("theta must be >= 1");
  if (!(s.ratio > 1.0 && s.ratio <= 2.0)) throw std::invalid_argument("rho must lie in (1, 2]");
  return s;
}

std::string BesovSpec::to_string() const {
  std::string s = "Besov(alpha=" + format_number(alpha) + ",theta=" + format_number(theta) + ",k=" + std::to_string(axis + 1);
  if (ratio != BesovSpec{}.ratio) s += ",rho=" + format_number(ratio);
  if (h_min > 0.0) s += ",hmin=" + format_number(h_min);
  if (h_max > 0.0) s += ",hmax=" + format_number(h_max);
  if (!upper_tail) s += ",tail=0";
  return s + ";" + base.to_string() + ")";
}

namespace {

struct OneDimContext {
  DecreasingProfile star;
  std::vector<double> omega;  // omega at m = 0..N (saturated from N on)
  double h = 0.0;
  long n = 0;

  OneDimContext(const GridFunction& phi, double p) {
    if (phi.spec().dim != 1) throw std::invalid_argument("Ul'yanov checks take a 1-D function");
    if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
    star = decreasing_rearrangement(phi);
    h = phi.spec().spacing[0];
    n = static_cast<long>(phi.spec().count[0]);
    omega = modulus_from_table(difference_norm_table(phi, 0, n, NormSpec::lebesgue(p)));
  }

  long cells(double t) const { return std::min(n, static_cast<long>(std::floor(t / h + 1e-9))); }
};

}  // namespace

std::vector<SidePair> ulyanov_pointwise(const GridFunction& phi, double p, const std::vector<double>& ts) {
  const OneDimContext ctx(phi, p);
  std::vector<SidePair> out;
  out.reserve(ts.size());
  for (double t : ts) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    SidePair s;
    s.lhs = double_star(ctx.star, t) - ctx.star(t);
    s.rhs = 2.0 * std::pow(t, -1.0 / p) * ctx.omega[static_cast<std::size_t>(ctx.cells(t))];
    out.push_back(s);
  }
  return out;
}

std::vector<SidePair> ulyanov_tail(const GridFunction& phi, double p, const std::vector<double>& ts) {
  const OneDimContext ctx(phi, p);
  const double e = 1.0 / p;
  // integral_a^b s^(-1/p - 1) ds
  auto seg = [&](double a, double b) { return p * (std::pow(a, -e) - std::pow(b, -e)); };
  std::vector<SidePair> out;
  out.reserve(ts.size());
  for (double t : ts) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    SidePair s;
    s.lhs = ctx.star(t);
    const long m = ctx.cells(t);
    double acc = 0.0;
    if (m >= ctx.n) {
      acc = ctx.omega.back() * p * std::pow(t, -e);
    } else {
      acc = ctx.omega[static_cast<std::size_t>(m)] * seg(t, static_cast<double>(m + 1) * ctx.h);
      for (long j = m + 1; j < ctx.n; ++j)
        acc += ctx.omega[static_cast<std::size_t>(j)] * seg(static_cast<double>(j) * ctx.h, static_cast<double>(j + 1) * ctx.h);
      acc += ctx.omega.back() * p * std::pow(static_cast<double>(ctx.n) * ctx.h, -e);
    }
    s.rhs = 2.0 * acc;
    out.push_back(s);
  }
  return out;
}

SidePair ulyanov_pointwise(const GridFunction& phi, double p, double t) { return ulyanov_pointwise(phi, p, std::vector{t}).front(); }

SidePair ulyanov_tail(const GridFunction& phi, double p, double t) { return ulyanov_tail(phi, p, std::vector{t}).front(); }

SidePair omega_average_check(const GridFunction& f, int axis, double delta, const NormSpec& base) {
  const long m = shift_cells(f.spec(), axis, delta);
  if (m <= 0) throw std::invalid_argument("delta must be a positive grid multiple");
  const auto table = difference_norm_table(f, axis, m, base);
  SidePair s;
  s.lhs = modulus_from_table(table).back();
  double trap = 0.0;
  for (long j = 0; j < m; ++j) trap += 0.5 * (table[static_cast<std::size_t>(j)] + table[static_cast<std::size_t>(j + 1)]);
  s.rhs = 3.0 / static_cast<double>(m) * trap;
  return s;
}

}  // namespace embedlab
