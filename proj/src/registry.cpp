#include "embedlab/registry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "embedlab/fourier.hpp"
#include "embedlab/hardy.hpp"
#include "embedlab/norms.hpp"
#include "embedlab/rearrange.hpp"
#include "embedlab/smoothness.hpp"
#include "registry_entries.hpp"

namespace embedlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sum over axes of a Besov-type quantity; the first divergent axis is reported.
struct BesovSum {
  double value = 0.0;
  std::string diagnostic;
};

enum class BesovPart { seminorm, integral };

BesovSum besov_sum(const GridFunction& f, const std::vector<int>& axes, double alpha, double theta,
                   const std::function<NormSpec(int)>& base, BesovPart part = BesovPart::seminorm,
                   bool use_modulus = false) {
  BesovSum s;
  for (int k : axes) {
    BesovSpec spec;
    spec.alpha = alpha;
    spec.theta = theta;
    spec.axis = k;
    spec.base = base(k);
    const BesovResult r = use_modulus ? besov_seminorm_modulus(f, spec) : besov_seminorm(f, spec);
    s.value += part == BesovPart::integral ? r.integral : r.value;
    if (!r.finite() && s.diagnostic.empty()) s.diagnostic = "axis " + std::to_string(k + 1) + ": " + r.diagnostic;
  }
  return s;
}

std::vector<int> all_axes(const GridFunction& f) {
  std::vector<int> a(static_cast<std::size_t>(f.spec().dim));
  for (int k = 0; k < f.spec().dim; ++k) a[static_cast<std::size_t>(k)] = k;
  return a;
}

// The Lorentz-over-lines norm L^{q,r}[L^p]_k.
NormSpec mixed_lorentz(int axis, double p, double q, double r) {
  return NormSpec::mixed(axis, NormSpec::lebesgue(p), NormSpec::lorentz(q, r));
}

double dual_exponent(double q) { return q / (q - 1.0); }

// Largest q allowed by 1 < q < (n-1)/(n-2).
double hardy_q_limit(int n) { return n <= 2 ? kInf : (n - 1.0) / (n - 2.0); }

// Piecewise-linear modulus of continuity on a 1-D grid, saturated beyond the axis length.
class ModulusCurve {
 public:
  ModulusCurve(const GridFunction& f, double p) : h_(f.spec().spacing[0]) {
    const long n = static_cast<long>(f.spec().count[0]);
    omega_ = modulus_from_table(difference_norm_table(f, 0, n, NormSpec::lebesgue(p)));
  }
  double operator()(double t) const {
    const double x = t / h_;
    const double last = static_cast<double>(omega_.size() - 1);
    if (x >= last) return omega_.back();
    const auto i = static_cast<std::size_t>(std::floor(x));
    const double w = x - static_cast<double>(i);
    return (1.0 - w) * omega_[i] + w * omega_[i + 1];
  }

 private:
  double h_;
  std::vector<double> omega_;
};

// Grid multiples m h with m = round(2^(j/4)), up to twice the axis length.
std::vector<double> geometric_multiples(const GridSpec& g) {
  std::set<long> ms;
  const double cap = 2.0 * static_cast<double>(g.count[0]);
  for (int j = 0; std::exp2(j / 4.0) <= cap; ++j) ms.insert(std::lround(std::exp2(j / 4.0)));
  std::vector<double> ts;
  for (long m : ms) ts.push_back(static_cast<double>(m) * g.spacing[0]);
  return ts;
}

Sides from_pair(const SidePair& p) { return {p.lhs, p.rhs, {}}; }

Sides worst_pair(const std::vector<SidePair>& pairs) {
  std::vector<Sides> s;
  s.reserve(pairs.size());
  for (const auto& p : pairs) s.push_back(from_pair(p));
  return detail::worst_of(s);
}

InequalitySpec base_entry(std::string id, std::string summary, EntryKind kind, std::vector<int> dims, Params params) {
  InequalitySpec e;
  e.id = std::move(id);
  e.summary = std::move(summary);
  e.kind = kind;
  e.dims = std::move(dims);
  e.params = std::move(params);
  return e;
}

// ---- Sobolev baselines and the Besov-type embeddings --------------------------------

void add_sobolev(std::vector<InequalitySpec>& out) {
  auto sob_valid = [](int n, const Params& P) { return n >= 2 && P["p"] >= 1.0 && P["p"] < n; };
  auto critical = [](int n, double p) { return n * p / (n - p); };

  auto sob = base_entry("sob1", "||f||_{p*} <= c ||grad f||_p", EntryKind::report, {2, 3}, {{"p", 1.0}});
  sob.valid = sob_valid;
  sob.evaluate = [critical](const CorpusMember& m, const Params& P) {
    const int n = m.values.spec().dim;
    return Sides{lp_norm(m.values, critical(n, P["p"])), lp_norm(detail::gradient_magnitude(m), P["p"]), {}};
  };
  out.push_back(sob);

  auto e0 = base_entry("embed0", "||f||_{p*,p} <= c ||grad f||_p", EntryKind::report, {2, 3}, {{"p", 1.0}});
  e0.valid = sob_valid;
  e0.dilation = true;
  e0.evaluate = [critical](const CorpusMember& m, const Params& P) {
    const int n = m.values.spec().dim;
    const double p = P["p"];
    return Sides{lorentz_norm(m.values, critical(n, p), p), lp_norm(detail::gradient_magnitude(m), p), {}};
  };
  out.push_back(e0);

  auto e1 = base_entry("embed1", "sum_k Besov(s, p; L^{q,p}) of f <= c sum_k ||D_k f||_p, s = 1 - n(1/p - 1/q)",
                       EntryKind::report, {2, 3}, {{"p", 1.0}});
  e1.dim_params = {{2, {{"q", 1.5}}}, {3, {{"q", 1.2}}}};
  e1.dilation = true;
  e1.valid = [](int n, const Params& P) {
    const double p = P["p"], q = P["q"];
    const bool base_ok = (p > 1.0 && n >= 1) || (p == 1.0 && n >= 2);
    return base_ok && p < q && 1.0 - n * (1.0 / p - 1.0 / q) > 0.0;
  };
  e1.evaluate = [](const CorpusMember& m, const Params& P) {
    const int n = m.values.spec().dim;
    const double p = P["p"], q = P["q"];
    const double s = 1.0 - n * (1.0 / p - 1.0 / q);
    const auto b = besov_sum(m.values, all_axes(m.values), s, p, [&](int) { return NormSpec::lorentz(q, p); });
    return Sides{b.value, detail::derivative_norm_sum(m, p), b.diagnostic};
  };
  out.push_back(e1);

  auto embed32_eval = [](const CorpusMember& m, const Params& P) {
    const int n = m.values.spec().dim;
    const double p = P["p"], q = P["q"];
    const double a = 1.0 - (n - 1) * (1.0 / p - 1.0 / q);
    const auto b = besov_sum(m.values, all_axes(m.values), a, p, [&](int k) { return mixed_lorentz(k, p, q, p); });
    return Sides{b.value, detail::derivative_norm_sum(m, p), b.diagnostic};
  };
  auto e32 = base_entry("embed32",
                        "sum_k Besov(alpha, p; L^{q,p}[L^p]_k) of f <= c sum_k ||D_k f||_p, alpha = 1 - (n-1)(1/p - 1/q)",
                        EntryKind::report, {3}, {{"p", 1.0}, {"q", 1.5}});
  e32.dilation = true;
  e32.valid = [](int n, const Params& P) {
    const double p = P["p"], q = P["q"];
    const bool base_ok = (p > 1.0 && n >= 2) || (p == 1.0 && n >= 3);
    return base_ok && p < q && 1.0 - (n - 1) * (1.0 / p - 1.0 / q) > 0.0;
  };
  e32.evaluate = embed32_eval;
  out.push_back(e32);

  // Same functional at the excluded corner n = 2, p = 1.
  auto probe = base_entry("embed32_n2_p1", "OPEN QUESTION: embed32 at n = 2, p = 1", EntryKind::probe, {2},
                          {{"p", 1.0}, {"q", 1.5}});
  probe.valid = [](int n, const Params& P) {
    return n == 2 && P["p"] == 1.0 && P["q"] > 1.0 && 1.0 - (1.0 / P["p"] - 1.0 / P["q"]) > 0.0;
  };
  probe.evaluate = embed32_eval;
  out.push_back(probe);

  // Both take the L^{q,1}[L^1]_k base against H^1 norms of the derivatives.
  auto h1_form = [](const CorpusMember& m, const Params& P) {
    const int n = m.values.spec().dim;
    const double q = P["q"];
    const double a = 1.0 - (n - 1) / dual_exponent(q);
    const auto b = besov_sum(m.values, all_axes(m.values), a, 1.0, [&](int k) { return mixed_lorentz(k, 1.0, q, 1.0); });
    Sides s{b.value, 0.0, b.diagnostic};
    for (const auto& d : m.derivatives) {
      const H1Norm h = h1_norm(d);
      s.rhs += h.value;
      if (h.mean_zero_flag && s.diagnostic.empty()) s.diagnostic = "derivative not mean-zero";
    }
    return s;
  };
  auto h1_valid = [](int n, const Params& P) {
    const double q = P["q"];
    return n >= 2 && q > 1.0 && q < hardy_q_limit(n);
  };
  auto e321 = base_entry("embed321",
                         "sum_k int h^{(n-1)/q'-1} ||Delta_k(h) f||_{L^{q,1}[L^1]_k} dh/h <= c sum_k ||D_k f||_{H^1}",
                         EntryKind::report, {2}, {{"q", 2.0}});
  e321.valid = h1_valid;
  e321.evaluate = h1_form;
  out.push_back(e321);

  auto h1 = base_entry("hardy1", "sum_k Besov(alpha, 1; L^{q,1}[L^1]_k) <= c sum_k ||D_k f||_{H^1}, alpha = 1 - (n-1)/q'",
                       EntryKind::report, {2}, {{"q", 3.0}});
  h1.valid = h1_valid;
  h1.evaluate = h1_form;
  out.push_back(h1);

  // With p = nu = r = 1 the mixed-norm Besov bound turns the embed32 left side into a bound for the embed1 left side.
  auto cmp = base_entry("embed1_vs_embed32", "left side of embed1 <= c left side of embed32 (same p, q)",
                        EntryKind::report, {3}, {{"p", 1.0}, {"q", 1.2}});
  cmp.valid = [](int n, const Params& P) {
    const double p = P["p"], q = P["q"];
    const double a = 1.0 - (n - 1) * (1.0 / p - 1.0 / q);
    return n >= 2 && p >= 1.0 && p < q && 1.0 / p - 1.0 / q < a && a < 1.0;
  };
  cmp.evaluate = [](const CorpusMember& m, const Params& P) {
    const int n = m.values.spec().dim;
    const double p = P["p"], q = P["q"];
    const double s = 1.0 - n * (1.0 / p - 1.0 / q);
    const double a = 1.0 - (n - 1) * (1.0 / p - 1.0 / q);
    const auto axes = all_axes(m.values);
    const auto l = besov_sum(m.values, axes, s, p, [&](int) { return NormSpec::lorentz(q, p); });
    const auto r = besov_sum(m.values, axes, a, p, [&](int k) { return mixed_lorentz(k, p, q, p); });
    return Sides{l.value, r.value, l.diagnostic.empty() ? r.diagnostic : l.diagnostic};
  };
  out.push_back(cmp);
}

// ---- One-dimensional rearrangement and modulus inequalities ---------------------------

void add_one_dimensional(std::vector<InequalitySpec>& out) {
  auto hardy = base_entry("hardy", "Hardy's inequality with constant 1/(1-lambda), lambda in {-1, 0, 1/2}, p in {1, 2}",
                          EntryKind::assert_kind, {1}, {});
  hardy.constant = 1.0;  // the constant 1/(1-lambda) is folded into each right side
  hardy.valid = [](int n, const Params&) { return n == 1; };
  hardy.evaluate = [](const CorpusMember& m, const Params&) {
    const DecreasingProfile star = decreasing_rearrangement(m.values);
    const double h = m.values.spec().spacing[0];
    const double L = m.values.spec().upper(0) - m.values.spec().lower[0];
    const ModulusCurve omega(m.values, 1.0);
    std::vector<Sides> cases;
    if (star.empty()) return Sides{};
    for (double lambda : {-1.0, 0.0, 0.5})
      for (double p : {1.0, 2.0}) {
        const auto a = GeometricSamples::sample(
            [&](double t) { return std::pow(t, 0.5 - lambda) * star(t); }, 1e-3 * h, 2.0 * star.support_measure());
        const auto ra = hardy_check(a, lambda, p);
        cases.push_back({ra.lhs, ra.rhs, {}});
        const auto b = GeometricSamples::sample(
            [&](double t) { return std::pow(t, -0.5 - lambda) * omega(t); }, 1e-3 * h, 1e3 * L);
        const auto rb = hardy_check(b, lambda, p);
        cases.push_back({rb.lhs, rb.rhs, {}});
      }
    return detail::worst_of(cases);
  };
  out.push_back(hardy);

  auto bound = base_entry("bound", "||f**||_p <= p/(p-1) ||f||_p, p in {1.5, 2, 3}", EntryKind::assert_kind, {1, 2}, {});
  bound.constant = 1.0;
  bound.tolerance = 1e-4;
  bound.valid = [](int, const Params&) { return true; };
  bound.evaluate = [](const CorpusMember& m, const Params&) {
    std::vector<Sides> cases;
    for (double p : {1.5, 2.0, 3.0}) {
      const auto r = doublestar_bound_check(m.values, p);
      cases.push_back({r.lhs, r.rhs, {}});
    }
    return detail::worst_of(cases);
  };
  out.push_back(bound);

  auto point = base_entry("ulyanov_pointwise", "phi**(t) - phi*(t) <= 2 t^{-1/p} omega(phi; t)_p, p in {1, 2}",
                          EntryKind::assert_kind, {1}, {});
  point.constant = 2.0;
  point.tolerance = 1e-4;
  point.valid = [](int n, const Params&) { return n == 1; };
  point.evaluate = [](const CorpusMember& m, const Params&) {
    const auto ts = geometric_multiples(m.values.spec());
    auto a = ulyanov_pointwise(m.values, 1.0, ts);
    const auto b = ulyanov_pointwise(m.values, 2.0, ts);
    a.insert(a.end(), b.begin(), b.end());
    return worst_pair(a);
  };
  out.push_back(point);

  auto tail = base_entry("Ulyanov1", "phi*(t) <= 2 int_t^inf s^{-1/p} omega(phi; s)_p ds/s, p in {1, 2}",
                         EntryKind::assert_kind, {1}, {});
  tail.constant = 2.0;
  tail.tolerance = 1e-4;
  tail.valid = point.valid;
  tail.evaluate = [](const CorpusMember& m, const Params&) {
    const auto ts = geometric_multiples(m.values.spec());
    auto a = ulyanov_tail(m.values, 1.0, ts);
    const auto b = ulyanov_tail(m.values, 2.0, ts);
    a.insert(a.end(), b.begin(), b.end());
    return worst_pair(a);
  };
  out.push_back(tail);

  auto omega = base_entry("omega1", "omega_1(f; delta)_V <= 3/delta int_0^delta ||Delta_1(h) f||_V dh, V in {L^1, L^2}",
                          EntryKind::assert_kind, {1}, {});
  omega.constant = 3.0;
  omega.valid = [](int n, const Params&) { return n == 1; };
  omega.evaluate = [](const CorpusMember& m, const Params&) {
    const GridSpec& g = m.values.spec();
    const long n = static_cast<long>(g.count[0]);
    std::vector<SidePair> pairs;
    for (double p : {1.0, 2.0})
      for (long cells : {1L, 2L, 5L, n / 16, n / 4, n, 2 * n})
        pairs.push_back(omega_average_check(m.values, 0, static_cast<double>(cells) * g.spacing[0], NormSpec::lebesgue(p)));
    return worst_pair(pairs);
  };
  out.push_back(omega);

  auto quasi = base_entry("hardy-type",
                          "int u^{-a-1} (int_0^u psi t^b dt)^p du <= c int u^{-a-1} (psi(u) u^{b+1})^p du, psi = omega(t)/t",
                          EntryKind::report, {1}, {{"alpha", 0.25}, {"beta", 0.0}, {"p", 0.5}});
  quasi.valid = [](int n, const Params& P) { return n == 1 && P["alpha"] > 0.0 && P["beta"] > -1.0 && P["p"] > 0.0 && P["p"] < 1.0; };
  quasi.evaluate = [](const CorpusMember& m, const Params& P) {
    const double h = m.values.spec().spacing[0];
    const double L = 0.5 * (m.values.spec().upper(0) - m.values.spec().lower[0]);
    const ModulusCurve omega(m.values, 1.0);
    const auto psi = GeometricSamples::sample([&](double t) { return omega(t) / t; }, h / 16.0, 1e3 * L);
    const auto r = quasi_decreasing_hardy_check(psi, P["alpha"], P["beta"], P["p"]);
    return Sides{r.lhs, r.rhs, "quasi-decreasing constant " + format_number(r.quasi_constant)};
  };
  out.push_back(quasi);

  auto ul2 = base_entry("Ulyanov2", "||phi||_q <= c (int t^{-q/p} ||Delta(t) phi||_p^q dt)^{1/q}", EntryKind::report, {1},
                        {{"p", 1.0}, {"q", 2.0}});
  auto ul_valid = [](int n, const Params& P) { return n == 1 && P["p"] >= 1.0 && P["p"] < P["q"]; };
  ul2.valid = ul_valid;
  ul2.evaluate = [](const CorpusMember& m, const Params& P) {
    const double p = P["p"], q = P["q"];
    const auto b = besov_sum(m.values, {0}, 1.0 / p - 1.0 / q, q, [&](int) { return NormSpec::lebesgue(p); });
    return Sides{lp_norm(m.values, q), b.value, b.diagnostic};
  };
  out.push_back(ul2);

  auto ul3 = base_entry("Ulyanov3", "omega(phi; delta)_q <= c (int_0^delta t^{-q/p} ||Delta(t) phi||_p^q dt)^{1/q}",
                        EntryKind::report, {1}, {{"p", 1.0}, {"q", 2.0}, {"delta_over_L", 0.125}});
  ul3.valid = [ul_valid](int n, const Params& P) { return ul_valid(n, P) && P["delta_over_L"] > 0.0; };
  ul3.evaluate = [](const CorpusMember& m, const Params& P) {
    const double p = P["p"], q = P["q"];
    const GridSpec& g = m.values.spec();
    const double L = 0.5 * (g.upper(0) - g.lower[0]);
    const double delta = P["delta_over_L"] * L;
    BesovSpec spec;
    spec.alpha = 1.0 / p - 1.0 / q;
    spec.theta = q;
    spec.base = NormSpec::lebesgue(p);
    spec.h_max = delta;
    spec.upper_tail = false;
    const BesovResult r = besov_seminorm(m.values, spec);
    return Sides{modulus(m.values, 0, delta, NormSpec::lebesgue(q)), r.value, r.diagnostic};
  };
  out.push_back(ul3);

  auto diff = base_entry("diff", "||f||_{B^beta_{q,theta}} <= c ||f||_{B^alpha_{p,theta}}, beta = alpha - n(1/p - 1/q)",
                         EntryKind::report, {1}, {{"p", 1.0}, {"q", 2.0}, {"alpha", 0.75}, {"theta", 2.0}});
  diff.valid = [](int n, const Params& P) {
    const double p = P["p"], q = P["q"], a = P["alpha"], t = P["theta"];
    const double beta = a - n * (1.0 / p - 1.0 / q);
    return p >= 1.0 && p < q && a < 1.0 && beta > 0.0 && t >= 1.0;
  };
  diff.evaluate = [](const CorpusMember& m, const Params& P) {
    const double p = P["p"], q = P["q"], a = P["alpha"], t = P["theta"];
    const int n = m.values.spec().dim;
    const double beta = a - n * (1.0 / p - 1.0 / q);
    const auto axes = all_axes(m.values);
    const auto l = besov_sum(m.values, axes, beta, t, [&](int) { return NormSpec::lebesgue(q); });
    const auto r = besov_sum(m.values, axes, a, t, [&](int) { return NormSpec::lebesgue(p); });
    return Sides{lp_norm(m.values, q) + l.value, lp_norm(m.values, p) + r.value,
                 l.diagnostic.empty() ? r.diagnostic : l.diagnostic};
  };
  out.push_back(diff);
}

// ---- Mixed-norm Besov classes -------------------------------------------------------

void add_mixed(std::vector<InequalitySpec>& out) {
  auto simple_valid = [](int n, const Params& P) {
    const double p = P["p"], r = P["r"], a = P["alpha"];
    return n >= 2 && P["theta"] >= 1.0 && r >= 1.0 && r < p && 1.0 / r - 1.0 / p < a && a < 1.0;
  };
  auto strong_valid = [simple_valid](int n, const Params& P) {
    return simple_valid(n, P) && P["nu"] >= 1.0 && P["nu"] <= P["p"];
  };
  auto beta_of = [](const Params& P) { return P["alpha"] - 1.0 / P["r"] + 1.0 / P["p"]; };
  const Params simple_params{{"p", 2.0}, {"r", 1.0}, {"alpha", 0.75}, {"theta", 1.0}};
  const Params strong_params{{"p", 3.0}, {"nu", 1.0}, {"r", 1.0}, {"alpha", 0.8}, {"theta", 1.0}};

  // V = L^p[L^r] (or L^{p,nu}[L^r]) with the inner norm along the first axis.
  auto simple_V = [](const Params& P) { return NormSpec::mixed(0, NormSpec::lebesgue(P["r"]), NormSpec::lebesgue(P["p"])); };
  auto strong_V = [](const Params& P) {
    return NormSpec::mixed(0, NormSpec::lebesgue(P["r"]), NormSpec::lorentz(P["p"], P["nu"]));
  };

  auto s1 = base_entry("simple1", "||f||_p <= c ||f||_{B^alpha_{theta;1}(L^p[L^r])}", EntryKind::report, {2}, simple_params);
  s1.valid = simple_valid;
  s1.evaluate = [simple_V](const CorpusMember& m, const Params& P) {
    const NormSpec V = simple_V(P);
    const auto b = besov_sum(m.values, {0}, P["alpha"], P["theta"], [&](int) { return V; }, BesovPart::seminorm, true);
    return Sides{lp_norm(m.values, P["p"]), norm(m.values, V) + b.value, b.diagnostic};
  };
  out.push_back(s1);

  auto s2 = base_entry("simple2", "int h^{-theta beta} ||Delta_1 f||_p^theta dh/h <= c int h^{-theta alpha} ||Delta_1 f||_{L^p[L^r]}^theta dh/h",
                       EntryKind::report, {2}, simple_params);
  s2.valid = simple_valid;
  s2.evaluate = [simple_V, beta_of](const CorpusMember& m, const Params& P) {
    const NormSpec V = simple_V(P);
    const auto l = besov_sum(m.values, {0}, beta_of(P), P["theta"], [&](int) { return NormSpec::lebesgue(P["p"]); },
                             BesovPart::integral);
    const auto r = besov_sum(m.values, {0}, P["alpha"], P["theta"], [&](int) { return V; }, BesovPart::integral);
    return Sides{l.value, r.value, l.diagnostic.empty() ? r.diagnostic : l.diagnostic};
  };
  out.push_back(s2);

  auto t1 = base_entry("strong1", "||f||_{L^{p,nu}} <= c ||f||_{B^alpha_{theta;1}(L^{p,nu}[L^r])}", EntryKind::report, {2},
                       strong_params);
  t1.valid = strong_valid;
  t1.evaluate = [strong_V](const CorpusMember& m, const Params& P) {
    const NormSpec V = strong_V(P);
    const auto b = besov_sum(m.values, {0}, P["alpha"], P["theta"], [&](int) { return V; }, BesovPart::seminorm, true);
    return Sides{lorentz_norm(m.values, P["p"], P["nu"]), norm(m.values, V) + b.value, b.diagnostic};
  };
  out.push_back(t1);

  auto t10 = base_entry("strong10",
                        "int h^{-theta beta} ||Delta_1 f||_{L^{p,nu}}^theta dh/h <= c int h^{-theta alpha} ||Delta_1 f||_{L^{p,nu}[L^r]}^theta dh/h",
                        EntryKind::report, {2}, strong_params);
  t10.valid = strong_valid;
  t10.evaluate = [strong_V, beta_of](const CorpusMember& m, const Params& P) {
    const NormSpec V = strong_V(P);
    const auto l = besov_sum(m.values, {0}, beta_of(P), P["theta"],
                             [&](int) { return NormSpec::lorentz(P["p"], P["nu"]); }, BesovPart::integral);
    const auto r = besov_sum(m.values, {0}, P["alpha"], P["theta"], [&](int) { return V; }, BesovPart::integral);
    return Sides{l.value, r.value, l.diagnostic.empty() ? r.diagnostic : l.diagnostic};
  };
  out.push_back(t10);

  auto c1 = base_entry("const1", "||g||_{p,nu} <= c ||g||_{ILor(p,nu)} for nu <= p", EntryKind::report, {2},
                       {{"p", 2.0}, {"nu", 1.0}});
  c1.valid = [](int n, const Params& P) { return n == 2 && P["nu"] > 0.0 && P["nu"] <= P["p"]; };
  c1.evaluate = [](const CorpusMember& m, const Params& P) {
    return Sides{lorentz_norm(m.values, P["p"], P["nu"]), iterated_lorentz_norm(m.values, P["p"], P["nu"], 0), {}};
  };
  out.push_back(c1);

  auto c2 = base_entry("const2", "||g||_{ILor(p,nu)} <= c ||g||_{p,nu} for p <= nu", EntryKind::report, {2},
                       {{"p", 2.0}, {"nu", 4.0}});
  c2.valid = [](int n, const Params& P) { return n == 2 && P["p"] > 0.0 && P["p"] <= P["nu"]; };
  c2.evaluate = [](const CorpusMember& m, const Params& P) {
    return Sides{iterated_lorentz_norm(m.values, P["p"], P["nu"], 0), lorentz_norm(m.values, P["p"], P["nu"]), {}};
  };
  out.push_back(c2);

  // The modulus-built seminorm dominates the difference-built one termwise, so every ratio is at least 1.
  auto eq = base_entry("equivalence", "int [h^{-alpha} omega_1(f; h)_V]^theta dh/h <= c int [h^{-alpha} ||Delta_1(h) f||_V]^theta dh/h",
                       EntryKind::report, {2}, {{"alpha", 0.5}, {"theta", 1.0}, {"p", 2.0}, {"r", 1.0}});
  eq.min_ratio = 1.0;
  eq.valid = [](int n, const Params& P) { return n >= 2 && P["alpha"] > 0.0 && P["alpha"] < 1.0 && P["theta"] >= 1.0; };
  eq.evaluate = [simple_V](const CorpusMember& m, const Params& P) {
    const NormSpec V = simple_V(P);
    const auto l = besov_sum(m.values, {0}, P["alpha"], P["theta"], [&](int) { return V; }, BesovPart::integral, true);
    const auto r = besov_sum(m.values, {0}, P["alpha"], P["theta"], [&](int) { return V; }, BesovPart::integral);
    return Sides{l.value, r.value, l.diagnostic.empty() ? r.diagnostic : l.diagnostic};
  };
  out.push_back(eq);
}

// ---- Pointwise facts used inside the proofs -----------------------------------------

// max over x of a(x) / (b(x) + floor), the form used for pointwise dominations.
double pointwise_ratio(std::span<const double> a, std::span<const double> b, double floor) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, a[i] / (b[i] + floor));
  return r;
}

void add_pointwise(std::vector<InequalitySpec>& out) {
  auto abs = base_entry("absolute", "|Delta(h)|phi|| <= |Delta(h) phi| pointwise", EntryKind::assert_kind, {1, 2, 3}, {});
  abs.constant = 1.0;
  abs.tolerance = 0.0;
  abs.valid = [](int, const Params&) { return true; };
  abs.evaluate = [](const CorpusMember& m, const Params&) {
    const GridFunction mod(m.values.spec(), m.values.magnitudes());
    double scale = 0.0;
    for (double v : mod.real()) scale = std::max(scale, v);
    double worst = 0.0;
    for (long cells : {1L, 3L, 17L}) {
      const GridFunction a = difference_cells(mod, 0, cells);
      const GridFunction b = difference_cells(m.values, 0, cells);
      worst = std::max(worst, pointwise_ratio(a.magnitudes(), b.magnitudes(), 1e-14 * scale));
    }
    return Sides{worst, 1.0, {}};
  };
  out.push_back(abs);

  auto e101 = base_entry("embed101", "phi_h*(t) <= h psi_n*(t), phi_h and psi_n the L^p line norms along the last axis",
                         EntryKind::assert_kind, {2, 3}, {});
  e101.constant = 1.0;
  e101.valid = [](int n, const Params&) { return n >= 2; };
  e101.evaluate = [](const CorpusMember& m, const Params&) {
    const int last = m.values.spec().dim - 1;
    const double h = m.values.spec().spacing[last];
    // D_n f is taken spectrally so both sides see the same sampled function.
    const GridFunction dn = spectral_derivative(m.values, last);
    double worst = 0.0;
    for (double p : {1.0, 2.0}) {
      auto psi = line_norms(dn, last, NormSpec::lebesgue(p)).magnitudes();
      std::sort(psi.rbegin(), psi.rend());
      for (long cells : {1L, 2L, 4L, 8L, 16L}) {
        auto phi = line_norms(difference_cells(m.values, last, cells), last, NormSpec::lebesgue(p)).magnitudes();
        std::sort(phi.rbegin(), phi.rend());
        std::vector<double> bound(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) bound[i] = static_cast<double>(cells) * h * psi[i];
        const double floor = 1e-9 * (bound.empty() ? 0.0 : bound.front());
        worst = std::max(worst, pointwise_ratio(phi, bound, floor));
      }
    }
    return Sides{worst, 1.0, {}};
  };
  out.push_back(e101);
}

}  // namespace

namespace detail {

Sides worst_of(const std::vector<Sides>& cases) {
  Sides best;
  double r = -1.0;
  for (const auto& s : cases) {
    double q = side_ratio(s);
    if (std::isnan(q)) q = kInf;
    if (q > r) {
      r = q;
      best = s;
    }
  }
  return best;
}

GridFunction gradient_magnitude(const CorpusMember& m) {
  std::vector<double> g(m.values.size(), 0.0);
  for (const auto& d : m.derivatives)
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += d.real()[i] * d.real()[i];
  for (auto& v : g) v = std::sqrt(v);
  return GridFunction(m.values.spec(), std::move(g));
}

double derivative_norm_sum(const CorpusMember& m, double p) {
  double s = 0.0;
  for (const auto& d : m.derivatives) s += lp_norm(d, p);
  return s;
}

}  // namespace detail

std::string_view to_string(EntryKind k) {
  switch (k) {
    case EntryKind::assert_kind: return "assert";
    case EntryKind::report: return "report";
    case EntryKind::probe: return "probe";
  }
  return "report";
}

double Params::operator[](const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw std::out_of_range("missing parameter '" + name + "'");
  return it->second;
}

double side_ratio(const Sides& s) {
  if (s.lhs == 0.0 && s.rhs == 0.0) return 0.0;
  if (s.rhs == 0.0) return kInf;
  return s.lhs / s.rhs;
}

Params InequalitySpec::params_for(int dim) const {
  Params p = params;
  if (const auto it = dim_params.find(dim); it != dim_params.end())
    for (const auto& [k, v] : it->second.values()) p.set(k, v);
  return p;
}

bool InequalitySpec::applies_to(int dim) const {
  return std::find(dims.begin(), dims.end(), dim) != dims.end() && valid && valid(dim, params_for(dim));
}

const std::vector<InequalitySpec>& registry() {
  static const std::vector<InequalitySpec> entries = [] {
    std::vector<InequalitySpec> out;
    add_sobolev(out);
    add_one_dimensional(out);
    add_mixed(out);
    add_pointwise(out);
    detail::add_fourier_entries(out);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < out.size(); ++i)
      if (out[i].id == out[i - 1].id) throw std::logic_error("duplicate registry id " + out[i].id);
    return out;
  }();
  return entries;
}

const InequalitySpec& find_entry(std::string_view id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  throw std::out_of_range("unknown registry id '" + std::string(id) + "'");
}

}  // namespace embedlab
