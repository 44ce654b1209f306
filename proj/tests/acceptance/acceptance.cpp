// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "embedlab/corpus.hpp"
#include "embedlab/fourier.hpp"
#include "embedlab/norms.hpp"
#include "embedlab/probe.hpp"
#include "embedlab/rearrange.hpp"
#include "embedlab/registry.hpp"
#include "embedlab/runner.hpp"
#include "embedlab/shells.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace embedlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

CorpusFile default_corpus() {
  std::ifstream in(fs::path(EMBEDLAB_DATA_DIR) / "default_corpus.json");
  return corpus_from_json(json::parse(in));
}

// The groups of the shipped corpus with the given dimensions.
CorpusFile restrict(const CorpusFile& c, std::initializer_list<int> dims) {
  CorpusFile out;
  out.seed = c.seed;
  for (const auto& g : c.groups)
    for (int d : dims)
      if (g.dim == d) out.groups.push_back(g);
  return out;
}

// ---- 1 ----------------------------------------------------------------------------

Outcome rearrangement_exactness() {
  const auto t0 = Clock::now();
  Outcome o;
  std::size_t members = 0, levels = 0;
  double worst_mass = 0.0;
  for (int dim : {1, 2}) {
    // Every level is checked against a full count over the grid, so n = 2 uses 64^2 nodes.
    const auto g = GridSpec::symmetric(dim, 8.0, dim == 1 ? 512 : 64);
    for (const auto& m : corpus_generate(2024 + static_cast<std::uint64_t>(dim), 50, g)) {
      ++members;
      const auto p = decreasing_rearrangement(m.values);
      for (double y : p.values()) {
        ++levels;
        if (p.level_measure(y) != distribution_function(m.values, y)) o.pass = false;
      }
      double l1 = 0.0;
      for (double v : m.values.real()) l1 += std::abs(v);
      l1 *= g.cell_volume();
      worst_mass = std::max(worst_mass, std::abs(p.total_mass() - l1) / l1);
    }
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && worst_mass <= 1e-12 && secs < 10.0;
  o.detail = std::to_string(members) + " members, " + std::to_string(levels) + " levels exact, mass error " + fmt(worst_mass) +
             ", " + fmt(secs) + " s";
  return o;
}

// ---- 2 ----------------------------------------------------------------------------

Outcome explicit_constants(const CorpusFile& corpus) {
  const auto t0 = Clock::now();
  const auto prepared = prepare_corpus(restrict(corpus, {1}), true);
  Outcome o;
  std::ostringstream d;
  for (const char* id : {"hardy", "bound", "ulyanov_pointwise", "Ulyanov1", "omega1"}) {
    const auto r = run(find_entry(id), prepared, {.dilation_members = 0});
    o.pass = o.pass && r.pass && !r.groups.empty();
    d << id << " " << fmt(r.max_ratio()) << (r.pass ? "" : " (fail)") << "; ";
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 30.0;
  d << fmt(secs) << " s";
  o.detail = d.str();
  return o;
}

// ---- 3 ----------------------------------------------------------------------------

double gaussian_duality_error(int dim, std::size_t n) {
  const auto g = GridSpec::symmetric(dim, 8.0, n);
  std::vector<double> v(g.size());
  const auto st = g.strides();
  for (std::size_t i = 0; i < g.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) r2 += std::pow(g.coordinate(a, (i / st[a]) % g.count[a]), 2);
    v[i] = std::exp(-kPi * r2);
  }
  const auto F = transform(GridFunction(g, v));
  double err = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const auto xi = F.frequency(i);
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) r2 += xi[a] * xi[a];
    err = std::max(err, std::abs(F.value(i) - std::exp(-kPi * r2)));
  }
  return err;
}

Outcome fourier_identities(const CorpusFile& corpus) {
  Outcome o;
  const double e1 = gaussian_duality_error(1, 512);
  const double e2 = gaussian_duality_error(2, 256);
  // Sum_j R_j^2 g = -g on mean-zero, in-band inputs: spectral derivatives of the 2-D corpus.
  double riesz_err = 0.0;
  for (const auto& g : restrict(corpus, {2}).groups)
    for (const auto& f : g.families) {
      const auto m = make_member(f, g.grid());
      for (int j = 0; j < 2; ++j) {
        const auto in = in_band(spectral_derivative(m.values, j));
        double scale = 0.0;
        for (double x : in.real()) scale = std::max(scale, std::abs(x));
        std::vector<double> s(in.real().begin(), in.real().end());
        for (int k = 0; k < 2; ++k) {
          const auto r = riesz(riesz(in, k), k);
          for (std::size_t i = 0; i < s.size(); ++i) s[i] += r.real()[i];
        }
        for (double x : s) riesz_err = std::max(riesz_err, std::abs(x) / scale);
      }
    }
  o.pass = e1 <= 1e-8 && e2 <= 1e-6 && riesz_err <= 1e-8;
  o.detail = "n=1 error " + fmt(e1) + ", n=2 error " + fmt(e2) + ", sum R_j^2 + I residual " + fmt(riesz_err);
  return o;
}

// ---- 4 ----------------------------------------------------------------------------

Outcome cone_pointwise(const CorpusFile& corpus) {
  const auto c = restrict(corpus, {2});
  const auto prepared = prepare_corpus(c, false);
  const auto& e = find_entry("sup0");
  const auto& members = prepared.groups.at(0).coarse;
  const auto r = evaluate_members(e, members, e.params_for(2));
  bool pass = members.size() >= 20;
  for (const auto& m : r.members) pass = pass && m.pass;
  return {pass, std::to_string(members.size()) + " members, worst lhs/(rhs + 1e-6 scale) " + fmt(r.max_ratio)};
}

// ---- 5 ----------------------------------------------------------------------------

Outcome dilation(const CorpusFile& corpus) {
  Outcome o;
  std::ostringstream d;
  for (const char* id : {"embed0", "embed1", "embed32"}) {
    const auto& e = find_entry(id);
    for (const auto& g : corpus.groups) {
      if (!e.applies_to(g.dim) || !e.valid(g.dim, e.params_for(g.dim))) continue;
      std::vector<CorpusMember> members;
      for (std::size_t i = 0; i < 10 && i < g.families.size(); ++i) members.push_back(make_member(g.families[i], g.grid()));
      double worst = 0.0;
      bool ok = members.size() == 10;
      for (const auto& r : dilation_sweep(e, members, e.params_for(g.dim))) {
        worst = std::max(worst, r.max_mismatch);
        ok = ok && r.pass;
      }
      o.pass = o.pass && ok;
      d << id << " n=" << g.dim << " " << fmt(worst) << "; ";
    }
  }
  o.detail = "max exponent mismatch: " + d.str();
  return o;
}

// ---- 6 ----------------------------------------------------------------------------

Outcome drift(const CorpusFile& corpus) {
  struct Case {
    const char* id;
    std::vector<int> dims;
  };
  const std::vector<Case> cases{{"embed32", {3}}, {"sup111", {3}},   {"obertype1", {3}}, {"pelcz", {2, 3}},
                                {"oberlin", {2, 3}}, {"const1", {2}}, {"const2", {2}},    {"strong10", {2}},
                                {"simple2", {2}}, {"Ulyanov2", {1}}, {"Ulyanov3", {1}},  {"diff", {1}}};
  const auto prepared = prepare_corpus(corpus, true);
  Outcome o;
  std::ostringstream d;
  double n3_seconds = 0.0;
  for (const auto& c : cases) {
    const auto& e = find_entry(c.id);
    const auto t0 = Clock::now();
    const auto r = run(e, prepared, {.dilation_members = 0});
    const double secs = seconds_since(t0);
    for (int dim : c.dims) {
      const GroupReport* g = nullptr;
      for (const auto& x : r.groups)
        if (x.dim == dim) g = &x;
      const bool ok = g && g->fine && g->coarse.members.size() >= 20 && g->stable && std::isfinite(g->coarse.max_ratio);
      o.pass = o.pass && ok;
      d << c.id << " n=" << dim << " " << (g ? fmt(g->drift) : "missing") << (ok ? "" : " (fail)") << "; ";
    }
    if (c.dims == std::vector<int>{3}) n3_seconds += secs;
  }
  o.pass = o.pass && n3_seconds < 600.0;
  o.detail = "drift: " + d.str() + "n=3-only entries " + fmt(n3_seconds) + " s";
  return o;
}

// ---- 7 ----------------------------------------------------------------------------

double slice_oracle(const GridFunction& f, int axis, double p_in, double p_out) {
  const GridSpec& g = f.spec();
  const auto st = g.strides();
  double outer = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if ((i / st[axis]) % g.count[axis] != 0) continue;
    double s = 0.0;
    for (std::size_t k = 0; k < g.count[axis]; ++k) s += std::pow(std::abs(f.real()[i + k * st[axis]]), p_in);
    outer += std::pow(s * g.spacing[axis], p_out / p_in) * g.cell_volume() / g.spacing[axis];
  }
  return std::pow(outer, 1.0 / p_out);
}

Outcome oracles(const CorpusFile& corpus) {
  Outcome o;
  // Mixed norms.
  double mixed_err = 0.0;
  for (const auto& g : restrict(corpus, {2, 3}).groups)
    for (const auto& f : g.families) {
      const auto m = make_member(f, g.grid());
      for (int axis = 0; axis < g.dim; ++axis)
        for (auto [pi, po] : {std::pair{1.0, 2.0}, std::pair{2.0, 1.0}, std::pair{1.5, 3.0}}) {
          const double a = mixed_norm(m.values, NormSpec::mixed(axis, NormSpec::lebesgue(pi), NormSpec::lebesgue(po)));
          const double b = slice_oracle(m.values, axis, pi, po);
          mixed_err = std::max(mixed_err, std::abs(a - b) / b);
        }
    }
  // Dyadic shells on radial spectra against a dense (k, r) sweep.
  double shell_err = 0.0;
  for (int dim : {2, 3})
    for (double s : {0.6, 1.0, 2.5}) {
      auto prof = [s](double r) { return r * r * std::exp(-s * r * r) + 0.1 * std::exp(-r); };
      const auto d = dual_grid(GridSpec::symmetric(dim, 4.0, dim == 2 ? 256 : 64));
      const auto F = SpectralFunction::from_function(d, [&](const Frequency& xi) {
        return std::complex<double>(prof(std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2])));
      });
      ShellQuadrature q;
      q.dim = dim;
      for (double w : {1.0 - dim, 2.0 - dim}) {
        const auto got = dyadic_shell_sum(F, w, q);
        const auto range = resolvable_shells(F);
        double dense = 0.0;
        for (int k = range.k_min; k <= range.k_max; ++k) {
          double best = 0.0;
          for (int i = 0; i <= 4000; ++i) {
            const double r = std::ldexp(1.0, k) * std::exp2(i / 4000.0);
            best = std::max(best, (dim == 2 ? 2 * kPi * r : 4 * kPi * r * r) * prof(r));
          }
          dense += std::exp2(k * w) * best;
        }
        shell_err = std::max(shell_err, std::abs(got.value - dense) / dense);
      }
    }
  // Iterated rearrangement of products of sampled 1-D members.
  double sep_err = 0.0;
  const auto g1 = GridSpec::symmetric(1, 8.0, 64);
  const auto g2 = GridSpec::symmetric(2, 8.0, 64);
  const auto fam = generate_families(77, 12, 1, 8.0);
  for (std::size_t a = 0; a + 1 < fam.size(); a += 2) {
    const auto u = sample(fam[a], g1).magnitudes();
    const auto v = sample(fam[a + 1], g1).magnitudes();
    std::vector<double> prod(g2.size());
    for (std::size_t i = 0; i < 64; ++i)
      for (std::size_t j = 0; j < 64; ++j) prod[i * 64 + j] = u[i] * v[j];
    auto us = u, vs = v;
    std::sort(us.rbegin(), us.rend());
    std::sort(vs.rbegin(), vs.rend());
    const auto ip = iterated_rearrangement(GridFunction(g2, prod), 0);
    double scale = us[0] * vs[0];
    for (std::size_t s = 0; s < ip.rows; ++s)
      for (std::size_t t = 0; t < ip.columns; ++t) sep_err = std::max(sep_err, std::abs(ip.at(s, t) - us[s] * vs[t]) / scale);
  }
  o.pass = mixed_err <= 1e-12 && shell_err <= 0.02 && sep_err <= 1e-10;
  o.detail = "mixed norm " + fmt(mixed_err) + ", shell sum " + fmt(shell_err) + ", separability " + fmt(sep_err);
  return o;
}

// ---- 8 ----------------------------------------------------------------------------

Outcome probes() {
  Outcome o;
  std::ostringstream d;
  for (const auto& q : probe_questions()) {
    const auto r = probe(q, 3, default_probe_grid());
    bool ok = r.label.rfind("OPEN QUESTION", 0) == 0 && r.levels.size() == 3;
    bool monotone = true;
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
      const auto& l = r.levels[i];
      ok = ok && std::isfinite(l.max_ratio) && !l.samples.empty();
      if (i > 0) {
        ok = ok && l.running_max >= r.levels[i - 1].running_max;
        monotone = monotone && l.max_ratio >= r.levels[i - 1].max_ratio;
      }
    }
    ok = ok && monotone == r.monotone;
    o.pass = o.pass && ok;
    d << q << " [";
    for (const auto& l : r.levels) d << fmt(l.max_ratio) << (l.resolution_limited ? "*" : "") << " ";
    d << (r.monotone ? "monotone" : "flagged") << "]; ";
  }
  o.detail = d.str() + "evidence only";
  return o;
}

// ---- 9 ----------------------------------------------------------------------------

int run_cli(const std::string& args) {
  const int status = std::system((std::string(EMBEDLAB_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "embedlab_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto corpus = (dir / "corpus.json").string();
  if (run_cli("corpus gen --seed 11 --count 2 --dim 1,2,3 --grid 8,256 --grid 8,64 --grid 4,16 --out " + corpus) != 0)
    return {false, "corpus generation failed"};
  const int a = run_cli("verify all --corpus " + corpus + " --out " + (dir / "a").string() + " --jobs 1 --probe-depth 1");
  const int b = run_cli("verify all --corpus " + corpus + " --out " + (dir / "b").string() + " --jobs 4 --probe-depth 1");
  auto body = [](const fs::path& p) {
    std::ifstream in(p);
    auto j = json::parse(in);
    j.erase("metadata");
    return j.dump(2);
  };
  const auto ja = body(dir / "a" / "report.json");
  const auto jb = body(dir / "b" / "report.json");
  const bool same = ja == jb;
  return {same && a == b && a != 2,
          "exit codes " + std::to_string(a) + "/" + std::to_string(b) + ", " + std::to_string(ja.size()) + " bytes, " +
              (same ? "identical" : "different") + " outside metadata (1 vs 4 workers)"};
}

}  // namespace

int main() {
  const CorpusFile corpus = default_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 rearrangement exactness", [] { return rearrangement_exactness(); }},
      {"2 explicit-constant suite", [&] { return explicit_constants(corpus); }},
      {"3 Fourier self-duality and Riesz identity", [&] { return fourier_identities(corpus); }},
      {"4 pointwise cone derivative bound", [&] { return cone_pointwise(corpus); }},
      {"5 dilation homogeneity", [&] { return dilation(corpus); }},
      {"6 empirical-constant stability", [&] { return drift(corpus); }},
      {"7 oracle equivalences", [&] { return oracles(corpus); }},
      {"8 open-question probes", [] { return probes(); }},
      {"9 report determinism", [] { return determinism(); }},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << fmt(seconds_since(t0)) << " s]" << std::endl;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
