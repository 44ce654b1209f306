#include "embedlab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "embedlab/report.hpp"

namespace embedlab {

std::size_t resolve_jobs(std::size_t jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min(resolve_jobs(jobs), count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

PreparedCorpus prepare_corpus(const CorpusFile& corpus, bool with_fine, std::size_t jobs) {
  PreparedCorpus out;
  out.seed = corpus.seed;
  for (const auto& g : corpus.groups) {
    PreparedGroup pg;
    pg.group = g;
    const std::size_t n = g.families.size();
    pg.coarse.resize(n);
    if (with_fine) pg.fine.resize(n);
    const GridSpec coarse = g.grid(), fine = g.fine_grid();
    parallel_for(with_fine ? 2 * n : n, jobs, [&](std::size_t i) {
      if (i < n)
        pg.coarse[i] = make_member(g.families[i], coarse);
      else
        pg.fine[i - n] = make_member(g.families[i - n], fine);
    });
    out.groups.push_back(std::move(pg));
  }
  return out;
}

double InequalityReport::max_ratio() const {
  double m = 0.0;
  for (const auto& g : groups) {
    m = std::max(m, g.coarse.max_ratio);
    if (g.fine) m = std::max(m, g.fine->max_ratio);
  }
  return m;
}

namespace {

// Assert entries fold their constant into rhs, so every assert checks ratio <= 1 + tolerance.
bool member_passes(const InequalitySpec& spec, const MemberResult& m) {
  if (std::isnan(m.ratio)) return false;
  if (spec.kind == EntryKind::assert_kind) return m.ratio <= 1.0 + spec.tolerance;
  if (std::isinf(m.sides.lhs)) return false;  // divergence inside the validity window
  if (spec.min_ratio > 0.0 && m.ratio < spec.min_ratio * (1.0 - 1e-12)) return false;
  return true;
}

double exponent(double scaled, double base, double lambda) {
  if (!(scaled > 0.0) || !(base > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(scaled / base) / std::log(lambda);
}

}  // namespace

ResolutionResult evaluate_members(const InequalitySpec& spec, const std::vector<CorpusMember>& members, const Params& params,
                                  std::size_t jobs) {
  ResolutionResult r;
  if (!members.empty()) r.grid = members.front().values.spec();
  r.members.resize(members.size());
  parallel_for(members.size(), jobs, [&](std::size_t i) {
    MemberResult& m = r.members[i];
    m.index = i;
    m.family = std::string(to_string(members[i].family.id));
    try {
      m.sides = spec.evaluate(members[i], params);
      m.ratio = side_ratio(m.sides);
    } catch (const std::exception& e) {
      m.sides.diagnostic = std::string("evaluation error: ") + e.what();
      m.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    m.pass = member_passes(spec, m);
  });
  r.min_ratio = r.members.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& m : r.members) {
    if (std::isnan(m.ratio)) continue;
    r.max_ratio = std::max(r.max_ratio, m.ratio);
    r.min_ratio = std::min(r.min_ratio, m.ratio);
  }
  return r;
}

std::vector<DilationResult> dilation_sweep(const InequalitySpec& spec, const std::vector<CorpusMember>& members,
                                           const Params& params, std::size_t jobs) {
  std::vector<DilationResult> out;
  for (double lambda : {0.5, 2.0}) {
    std::vector<DilationResult> per(members.size());
    parallel_for(members.size(), jobs, [&](std::size_t i) {
      const CorpusMember& m = members[i];
      DilationResult& d = per[i];
      d.lambda = lambda;
      Sides base, scaled;
      try {
        base = spec.evaluate(m, params);
        scaled = spec.evaluate(make_member(dilate(m.family, lambda), m.values.spec().scaled(1.0 / lambda)), params);
      } catch (const std::exception&) {
        d.max_mismatch = std::numeric_limits<double>::infinity();
        return;
      }
      d.lhs_exponent = exponent(scaled.lhs, base.lhs, lambda);
      d.rhs_exponent = exponent(scaled.rhs, base.rhs, lambda);
      const double den = std::max(std::abs(d.lhs_exponent), std::abs(d.rhs_exponent));
      d.max_mismatch = den > 0.0 ? std::abs(d.lhs_exponent - d.rhs_exponent) / den : 0.0;
      if (std::isnan(d.max_mismatch)) d.max_mismatch = std::numeric_limits<double>::infinity();
    });
    DilationResult worst;
    worst.lambda = lambda;
    worst.max_mismatch = -1.0;
    for (const auto& d : per)
      if (d.max_mismatch > worst.max_mismatch) worst = d;
    if (per.empty()) worst.max_mismatch = 0.0;
    worst.pass = worst.max_mismatch <= kDilationLimit;
    out.push_back(worst);
  }
  return out;
}

InequalityReport run(const InequalitySpec& spec, const PreparedCorpus& corpus, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  InequalityReport rep;
  rep.id = spec.id;
  rep.summary = spec.summary;
  rep.kind = spec.kind;
  rep.constant = spec.constant;
  rep.tolerance = spec.tolerance;
  auto take = [&](const std::vector<CorpusMember>& v) {
    if (options.max_members == 0 || v.size() <= options.max_members) return v;
    return std::vector<CorpusMember>(v.begin(), v.begin() + static_cast<long>(options.max_members));
  };
  for (const auto& pg : corpus.groups) {
    const int dim = pg.group.dim;
    if (!spec.applies_to(dim)) {
      if (std::find(rep.skipped_dims.begin(), rep.skipped_dims.end(), dim) == rep.skipped_dims.end())
        rep.skipped_dims.push_back(dim);
      continue;
    }
    GroupReport g;
    g.dim = dim;
    g.params = spec.params_for(dim);
    const auto coarse = take(pg.coarse);
    g.coarse = evaluate_members(spec, coarse, g.params, options.jobs);
    g.coarse.grid = pg.group.grid();
    if (!pg.fine.empty()) {
      g.fine = evaluate_members(spec, take(pg.fine), g.params, options.jobs);
      g.fine->grid = pg.group.fine_grid();
      const double a = g.coarse.max_ratio, b = g.fine->max_ratio;
      g.drift = (a == 0.0 && b == 0.0) ? 0.0 : (a > 0.0 ? std::abs(b / a - 1.0) : std::numeric_limits<double>::infinity());
      if (std::isnan(g.drift)) g.drift = std::numeric_limits<double>::infinity();
      g.stable = g.drift <= kDriftLimit;
    }
    if (spec.dilation && options.dilation_members > 0) {
      const std::vector<CorpusMember> sub(coarse.begin(),
                                          coarse.begin() + static_cast<long>(std::min(options.dilation_members, coarse.size())));
      g.dilation = dilation_sweep(spec, sub, g.params, options.jobs);
    }
    if (spec.kind == EntryKind::probe && options.probe_depth > 0 && dim == 2)
      g.probe = probe(spec.id, options.probe_depth, pg.group.grid(), options.jobs);
    auto below_floor = [&](const ResolutionResult& res) {
      return spec.min_ratio > 0.0 && std::any_of(res.members.begin(), res.members.end(), [&](const MemberResult& m) {
               return m.ratio < spec.min_ratio * (1.0 - 1e-12);
             });
    };
    g.floor_violation = below_floor(g.coarse) || (g.fine && below_floor(*g.fine));
    for (const auto& m : g.coarse.members) g.pass = g.pass && m.pass;
    if (g.fine)
      for (const auto& m : g.fine->members) g.pass = g.pass && m.pass;
    // Open questions record evidence only.
    if (spec.kind == EntryKind::probe) g.pass = true;
    rep.pass = rep.pass && g.pass;
    rep.groups.push_back(std::move(g));
  }
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

bool is_failure(const InequalityReport& r) {
  if (r.kind == EntryKind::assert_kind && !r.pass) return true;
  for (const auto& g : r.groups)
    if (g.floor_violation) return true;
  return false;
}

namespace {

nlohmann::json to_json(const ResolutionResult& r) {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : r.members)
    members.push_back({{"index", m.index},
                       {"family", m.family},
                       {"lhs", json_number(m.sides.lhs)},
                       {"rhs", json_number(m.sides.rhs)},
                       {"ratio", json_number(m.ratio)},
                       {"pass", m.pass},
                       {"diagnostic", m.sides.diagnostic}});
  return {{"grid", embedlab::to_json(r.grid)},
          {"max_ratio", json_number(r.max_ratio)},
          {"min_ratio", json_number(r.min_ratio)},
          {"members", members}};
}

}  // namespace

nlohmann::json to_json(const InequalityReport& r) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : r.groups) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : g.params.values()) params[k] = json_number(v);
    nlohmann::json j = {{"dim", g.dim}, {"params", params}, {"coarse", to_json(g.coarse)}, {"pass", g.pass}};
    if (g.floor_violation) j["floor_violation"] = true;
    j["empirical_constant"] = json_number(g.fine ? std::max(g.coarse.max_ratio, g.fine->max_ratio) : g.coarse.max_ratio);
    if (g.fine) {
      j["fine"] = to_json(*g.fine);
      j["drift"] = json_number(g.drift);
      j["stable"] = g.stable;
      // Per-member refinement ratios: value on the fine grid over value on the coarse grid, per side.
      nlohmann::json refine = nlohmann::json::array();
      for (std::size_t i = 0; i < g.coarse.members.size() && i < g.fine->members.size(); ++i) {
        const auto& c = g.coarse.members[i].sides;
        const auto& f = g.fine->members[i].sides;
        auto rr = [](double fine, double coarse) {
          return coarse == 0.0 ? (fine == 0.0 ? 1.0 : std::numeric_limits<double>::infinity()) : fine / coarse;
        };
        refine.push_back({{"lhs", json_number(rr(f.lhs, c.lhs))}, {"rhs", json_number(rr(f.rhs, c.rhs))}});
      }
      j["refinement"] = refine;
    }
    if (!g.dilation.empty()) {
      nlohmann::json dil = nlohmann::json::array();
      for (const auto& d : g.dilation)
        dil.push_back({{"lambda", d.lambda},
                       {"lhs_exponent", json_number(d.lhs_exponent)},
                       {"rhs_exponent", json_number(d.rhs_exponent)},
                       {"max_mismatch", json_number(d.max_mismatch)},
                       {"pass", d.pass}});
      j["dilation"] = dil;
    }
    if (g.probe) j["probe"] = to_json(*g.probe);
    groups.push_back(j);
  }
  nlohmann::json out = {{"id", r.id},
                        {"summary", r.summary},
                        {"kind", std::string(to_string(r.kind))},
                        {"constant", std::isnan(r.constant) ? nlohmann::json("empirical") : json_number(r.constant)},
                        {"tolerance", json_number(r.tolerance)},
                        {"skipped_dims", r.skipped_dims},
                        {"groups", groups},
                        {"pass", r.pass}};
  if (r.kind == EntryKind::probe) out["label"] = std::string(kOpenQuestionLabel);
  return out;
}

}  // namespace embedlab
