#include <algorithm>
#include <cmath>

#include "embedlab/fourier.hpp"
#include "embedlab/maximal.hpp"
#include "embedlab/norms.hpp"
#include "embedlab/shells.hpp"
#include "registry_entries.hpp"

namespace embedlab::detail {

namespace {

InequalitySpec entry(std::string id, std::string summary, EntryKind kind, std::vector<int> dims,
                     std::function<bool(int)> valid_dim) {
  InequalitySpec e;
  e.id = std::move(id);
  e.summary = std::move(summary);
  e.kind = kind;
  e.dims = std::move(dims);
  e.valid = [valid_dim = std::move(valid_dim)](int n, const Params&) { return valid_dim(n); };
  return e;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double pointwise_ratio(std::span<const double> a, std::span<const double> b, double floor) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i]) / (std::abs(b[i]) + floor));
  return r;
}

double half_extent(const GridSpec& g) {
  double L = 0.0;
  for (int a = 0; a < g.dim; ++a) L = std::max(L, 0.5 * (g.upper(a) - g.lower[a]));
  return L;
}

struct H1Sum {
  double value = 0.0;
  std::string diagnostic;
};

H1Sum h1_sum(const std::vector<GridFunction>& fs) {
  H1Sum s;
  for (const auto& f : fs) {
    const H1Norm h = h1_norm(f);
    s.value += h.value;
    if (h.mean_zero_flag && s.diagnostic.empty()) s.diagnostic = "input not mean-zero";
  }
  return s;
}

ShellQuadrature quadrature_for(int n) {
  ShellQuadrature q;
  q.dim = n;
  return q;
}

std::string near_origin_note(const WeightedIntegral& w) {
  if (w.value <= 0.0) return {};
  return "near-origin share " + format_number(w.near_origin / w.value);
}

// ---- Harmonic extension, conjugacy and maximal functions ---------------------------

void add_harmonic(std::vector<InequalitySpec>& out) {
  auto conj = entry("conj", "du_0/dt + sum_j du_j/dx_j = 0 for the Poisson extensions of f and R_j f",
                    EntryKind::assert_kind, {1, 2, 3}, [](int) { return true; });
  conj.constant = 1.0;
  conj.tolerance = 0.0;
  conj.evaluate = [](const CorpusMember& m, const Params&) {
    const GridSpec& g = m.values.spec();
    const double L = half_extent(g);
    std::vector<Sides> cases;
    for (double t : {g.spacing[0], L / 8.0, L}) {
      const auto r = conjugacy_residual(m.values, t);
      cases.push_back({r.residual, 1e-8 * r.scale, {}});
    }
    return worst_of(cases);
  };
  out.push_back(conj);

  auto sup0 = entry("sup0", "sup over the cone of |du/dt| <= sum_j N(R_j D_j f), pointwise", EntryKind::assert_kind, {2},
                    [](int n) { return n >= 1; });
  sup0.constant = 1.0;
  sup0.tolerance = 0.0;
  sup0.evaluate = [](const CorpusMember& m, const Params&) {
    // Spectral derivatives of the in-band part satisfy du/dt = -sum_j P_t R_j D_j f exactly;
    // sampled exact derivatives alias on coarse grids.
    const GridFunction f = in_band(m.values);
    std::vector<GridFunction> d;
    for (int j = 0; j < f.spec().dim; ++j) d.push_back(spectral_derivative(f, j));
    const auto c = cone_derivative_check(f, d, maximal_t_grid(f.spec()));
    return Sides{pointwise_ratio(c.lhs.real(), c.rhs.real(), 1e-6 * c.scale), 1.0, {}};
  };
  out.push_back(sup0);

  auto vert = entry("vert", "N_v g <= N g pointwise, g = D_1 f", EntryKind::assert_kind, {2}, [](int n) { return n >= 1; });
  vert.constant = 1.0;
  vert.tolerance = 0.0;
  vert.evaluate = [](const CorpusMember& m, const Params&) {
    const GridFunction& g = m.derivatives[0];
    const auto ts = maximal_t_grid(g.spec());
    const GridFunction nv = vertical_maximal(g, ts);
    const GridFunction nt = nontangential_maximal(g, ts);
    return Sides{pointwise_ratio(nv.real(), nt.real(), 1e-12 * max_abs(nt.real())), 1.0, {}};
  };
  out.push_back(vert);

  auto max = entry("max", "||N g||_1 <= c ||g||_{H^1}, g = D_1 f", EntryKind::report, {2}, [](int n) { return n >= 1; });
  max.evaluate = [](const CorpusMember& m, const Params&) {
    const GridFunction& g = m.derivatives[0];
    const auto h = h1_sum({g});
    return Sides{lp_norm(nontangential_maximal(g, maximal_t_grid(g.spec())), 1.0), h.value, h.diagnostic};
  };
  out.push_back(max);

  auto vert2 = entry("vert2", "sum_{j=0}^n ||N_v g_j||_1 <= c ||g||_{H^1}, g_0 = g = D_1 f, g_j = R_j g",
                     EntryKind::report, {2}, [](int n) { return n >= 1; });
  vert2.evaluate = [](const CorpusMember& m, const Params&) {
    const GridFunction& g = m.derivatives[0];
    const auto ts = maximal_t_grid(g.spec());
    double lhs = lp_norm(vertical_maximal(g, ts), 1.0);
    for (int j = 0; j < g.spec().dim; ++j) lhs += lp_norm(vertical_maximal(riesz(g, j), ts), 1.0);
    const auto h = h1_sum({g});
    return Sides{lhs, h.value, h.diagnostic};
  };
  out.push_back(vert2);

  auto rz = entry("riesz", "max_j ||R_j g||_{H^1} <= c ||g||_{H^1}, g = D_1 f", EntryKind::report, {1, 2},
                  [](int n) { return n >= 1; });
  rz.evaluate = [](const CorpusMember& m, const Params&) {
    const GridFunction& g = m.derivatives[0];
    double lhs = 0.0;
    for (int j = 0; j < g.spec().dim; ++j) lhs = std::max(lhs, h1_norm(riesz(g, j)).value);
    const auto h = h1_sum({g});
    return Sides{lhs, h.value, h.diagnostic};
  };
  out.push_back(rz);

  auto sup2 = entry("sup2", "||sup over the cone of |du/dt| ||_1 <= c sum_j ||D_j f||_{H^1}", EntryKind::report, {2},
                    [](int n) { return n >= 1; });
  sup2.evaluate = [](const CorpusMember& m, const Params&) {
    const GridFunction& f = m.values;
    const GridFunction nt =
        cone_envelope(f.spec(), maximal_t_grid(f.spec()), [&](double t) { return poisson_t_derivative(f, t).magnitudes(); });
    const auto h = h1_sum(m.derivatives);
    return Sides{lp_norm(nt, 1.0), h.value, h.diagnostic};
  };
  out.push_back(sup2);
}

// ---- Fourier-side inequalities ----------------------------------------------------------

void add_spectral(std::vector<InequalitySpec>& out) {
  auto hin = entry("H_ineq", "int |g^(xi)| / |xi|^n dxi <= c ||g||_{H^1}, g = D_1 f", EntryKind::report, {1, 2},
                   [](int n) { return n >= 1; });
  hin.evaluate = [](const CorpusMember& m, const Params&) {
    const GridFunction& g = m.derivatives[0];
    const auto w = weighted_fourier_integral(transform(g), -static_cast<double>(g.spec().dim));
    const auto h = h1_sum({g});
    return Sides{w.value, h.value, h.diagnostic.empty() ? near_origin_note(w) : h.diagnostic};
  };
  out.push_back(hin);

  auto pel = entry("pelcz", "int |f^(xi)| |xi|^{1-n} dxi <= c ||grad f||_1", EntryKind::report, {2, 3},
                   [](int n) { return n >= 2; });
  pel.evaluate = [](const CorpusMember& m, const Params&) {
    const int n = m.values.spec().dim;
    const auto w = weighted_fourier_integral(transform(m.values), 1.0 - n);
    return Sides{w.value, lp_norm(gradient_magnitude(m), 1.0), near_origin_note(w)};
  };
  out.push_back(pel);

  auto pel1 = entry("pelcz1", "sum_k int |(D_k f)^(xi)| / |xi|^n dxi <= c sum_k ||D_k f||_1", EntryKind::report, {2, 3},
                    [](int n) { return n >= 2; });
  pel1.evaluate = [](const CorpusMember& m, const Params&) {
    const int n = m.values.spec().dim;
    double lhs = 0.0;
    for (const auto& d : m.derivatives) lhs += weighted_fourier_integral(transform(d), -static_cast<double>(n)).value;
    return Sides{lhs, derivative_norm_sum(m, 1.0), {}};
  };
  out.push_back(pel1);

  auto ober = entry("oberlin", "sum_k 2^{k(1-n)} sup_{2^k <= r <= 2^{k+1}} int_{S_r} |g^| dsigma <= c ||g||_{H^1}, g = D_1 f",
                    EntryKind::report, {2, 3}, [](int n) { return n >= 2; });
  ober.evaluate = [](const CorpusMember& m, const Params&) {
    const GridFunction& g = m.derivatives[0];
    const int n = g.spec().dim;
    const auto s = dyadic_shell_sum(transform(g), 1.0 - n, quadrature_for(n));
    const auto h = h1_sum({g});
    return Sides{s.value, h.value, h.diagnostic};
  };
  out.push_back(ober);

  auto sup = entry("sup111", "sum_j int_0^inf F_{t,j}**(t^{n-1}) dt <= c ||grad f||_1", EntryKind::report, {3},
                   [](int n) { return n >= 3; });
  sup.evaluate = [](const CorpusMember& m, const Params&) {
    const SpectralFunction F = transform(m.values);
    double lhs = 0.0;
    for (int j = 0; j < F.grid().dim; ++j) lhs += sup_integral_functional(F, j);
    return Sides{lhs, lp_norm(gradient_magnitude(m), 1.0), {}};
  };
  out.push_back(sup);

  auto suph = entry("SupH", "int_0^inf [F_{t,1}**(t) + F_{t,2}**(t)] dt <= c (||D_1 f||_{H^1} + ||D_2 f||_{H^1})",
                    EntryKind::report, {2}, [](int n) { return n == 2; });
  suph.evaluate = [](const CorpusMember& m, const Params&) {
    const SpectralFunction F = transform(m.values);
    const double lhs = sup_integral_functional(F, 0) + sup_integral_functional(F, 1);
    const auto h = h1_sum(m.derivatives);
    return Sides{lhs, h.value, h.diagnostic};
  };
  out.push_back(suph);

  auto shell_form = [](const CorpusMember& m, const Params&) {
    const int n = m.values.spec().dim;
    const auto s = dyadic_shell_sum(transform(m.values), 2.0 - n, quadrature_for(n));
    return Sides{s.value, lp_norm(gradient_magnitude(m), 1.0), {}};
  };
  auto ot1 = entry("obertype1", "sum_k 2^{k(2-n)} sup_{2^k <= r <= 2^{k+1}} int_{S_r} |f^| dsigma <= c ||grad f||_1",
                   EntryKind::report, {3}, [](int n) { return n >= 3; });
  ot1.evaluate = shell_form;
  out.push_back(ot1);

  auto otn2 = entry("obertype_n2", "OPEN QUESTION: the obertype1 sum at n = 2 (weight 2^0)", EntryKind::probe, {2},
                    [](int n) { return n == 2; });
  otn2.evaluate = shell_form;
  out.push_back(otn2);

  auto ot33 = entry("obertype33", "sum_j sum_k 2^{k(2-n)} sup_{2^k <= |xi_j| <= 2^{k+1}} int_{Q_k^(j)} |f^| <= c ||grad f||_1",
                    EntryKind::report, {3}, [](int n) { return n >= 3; });
  ot33.evaluate = [](const CorpusMember& m, const Params&) {
    const auto s = cube_shell_sum(transform(m.values));
    return Sides{s.value, lp_norm(gradient_magnitude(m), 1.0), {}};
  };
  out.push_back(ot33);

  // Per shell: the integral over Q_k \ Q_{k-1} is at most sum_j (band length) * (face sup).
  auto cfb = entry("closing_display_bound", "int_{P_k} |f^| <= sum_j |band_j| sup_{band_j} int_{Q_k^(j)} |f^| per shell",
                   EntryKind::assert_kind, {2, 3}, [](int n) { return n >= 2; });
  cfb.constant = 1.0;
  cfb.tolerance = 1e-12;
  cfb.evaluate = [](const CorpusMember& m, const Params&) {
    std::vector<Sides> cases;
    for (const auto& s : cube_face_dominance(transform(m.values))) cases.push_back({s.p_integral, s.weighted_faces, {}});
    return worst_of(cases);
  };
  out.push_back(cfb);

  // Largest 2^{1-k} int_{P_k} / (face sup sum) over shells: above 1 means the sharper factor fails on that input.
  auto cfd = entry("closing_display", "max_k 2^{1-k} int_{P_k} |f^| / sum_j sup int_{Q_k^(j)} |f^|", EntryKind::report,
                   {2, 3}, [](int n) { return n >= 2; });
  cfd.evaluate = [](const CorpusMember& m, const Params&) {
    std::vector<Sides> cases;
    for (const auto& s : cube_face_dominance(transform(m.values)))
      cases.push_back({std::ldexp(s.p_integral, 1 - s.k), s.lhs, {}});
    Sides w = worst_of(cases);
    return Sides{side_ratio(w), 1.0, {}};
  };
  out.push_back(cfd);
}

}  // namespace

void add_fourier_entries(std::vector<InequalitySpec>& out) {
  add_harmonic(out);
  add_spectral(out);
}

}  // namespace embedlab::detail
