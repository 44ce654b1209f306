#include "embedlab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "embedlab/corpus.hpp"
#include "embedlab/registry.hpp"
#include "embedlab/report.hpp"
#include "embedlab/runner.hpp"

namespace embedlab {

const std::vector<std::string>& probe_questions() {
  static const std::vector<std::string> ids{"embed32_n2_p1", "obertype_n2"};
  return ids;
}

GridSpec default_probe_grid() { return GridSpec::symmetric(2, 8.0, 256); }

std::vector<FamilySpec> escalation_families(std::size_t d, const GridSpec& grid) {
  const double L = 0.5 * (grid.upper(0) - grid.lower[0]);
  const double scale = std::ldexp(1.0, -static_cast<int>(d));
  std::vector<FamilySpec> out;

  FamilySpec g;
  g.id = FamilyId::gaussian;
  g.dim = grid.dim;
  g.width[0] = 0.19 * L;
  out.push_back(g);

  FamilySpec t;
  t.id = FamilyId::windowed_trig;
  t.dim = grid.dim;
  for (int a = 0; a < grid.dim; ++a) t.width[a] = 0.3 * L;
  t.frequency[0] = 0.25 / scale;
  t.phase = 0.3;
  out.push_back(t);

  FamilySpec ind;
  ind.id = FamilyId::mollified_indicator;
  ind.dim = grid.dim;
  for (int a = 0; a < grid.dim; ++a) ind.width[a] = 0.15 * L;
  ind.mollifier = scale;
  out.push_back(ind);

  FamilySpec cone;
  cone.id = FamilyId::mollified_cone;
  cone.dim = grid.dim;
  cone.radius = 0.25 * L;
  cone.mollifier = 0.8 * scale;
  out.push_back(cone);
  return out;
}

namespace {

bool resolution_limited(const FamilySpec& f, const GridSpec& grid) {
  const double h = grid.spacing[0];
  switch (f.id) {
    case FamilyId::windowed_trig: return std::abs(f.frequency[0]) * h > 0.125;
    case FamilyId::mollified_indicator:
    case FamilyId::mollified_cone: return f.mollifier < 4.0 * h;
    default: return false;
  }
}

}  // namespace

ProbeReport probe(std::string_view question, std::size_t depth, const GridSpec& grid, std::size_t jobs) {
  const auto& qs = probe_questions();
  if (std::find(qs.begin(), qs.end(), question) == qs.end())
    throw std::invalid_argument("unknown probe question '" + std::string(question) + "'");
  if (depth < 1) throw std::invalid_argument("probe depth must be at least 1");
  if (grid.dim != 2) throw std::invalid_argument("probe questions are posed for n = 2");
  const InequalitySpec& spec = find_entry(question);
  const Params params = spec.params_for(grid.dim);

  ProbeReport rep;
  rep.question = std::string(question);
  rep.grid = grid;
  for (std::size_t d = 0; d < depth; ++d) {
    const auto fams = escalation_families(d, grid);
    ProbeLevel level;
    level.depth = d;
    level.trig_frequency = fams[1].frequency[0];
    level.mollifier = fams[2].mollifier;
    level.samples.resize(fams.size());
    parallel_for(fams.size(), jobs, [&](std::size_t i) {
      ProbeSample& s = level.samples[i];
      s.family = std::string(to_string(fams[i].id));
      s.resolution_limited = resolution_limited(fams[i], grid);
      try {
        const Sides sides = spec.evaluate(make_member(fams[i], grid), params);
        s.lhs = sides.lhs;
        s.rhs = sides.rhs;
        s.ratio = side_ratio(sides);
        s.diagnostic = sides.diagnostic;
      } catch (const std::exception& e) {
        s.ratio = std::numeric_limits<double>::quiet_NaN();
        s.diagnostic = e.what();
      }
    });
    for (const auto& s : level.samples) {
      if (std::isfinite(s.ratio)) level.max_ratio = std::max(level.max_ratio, s.ratio);
      level.resolution_limited = level.resolution_limited || s.resolution_limited;
    }
    const double prev = rep.levels.empty() ? 0.0 : rep.levels.back().max_ratio;
    level.running_max = std::max(level.max_ratio, rep.levels.empty() ? 0.0 : rep.levels.back().running_max);
    level.growth = prev > 0.0 ? level.max_ratio / prev : 0.0;
    if (!rep.levels.empty() && level.max_ratio < prev) rep.monotone = false;
    rep.levels.push_back(std::move(level));
  }
  return rep;
}

nlohmann::json to_json(const ProbeReport& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : l.samples)
      samples.push_back({{"family", s.family},
                         {"lhs", json_number(s.lhs)},
                         {"rhs", json_number(s.rhs)},
                         {"ratio", json_number(s.ratio)},
                         {"resolution_limited", s.resolution_limited},
                         {"diagnostic", s.diagnostic}});
    levels.push_back({{"depth", l.depth},
                      {"trig_frequency", json_number(l.trig_frequency)},
                      {"mollifier", json_number(l.mollifier)},
                      {"max_ratio", json_number(l.max_ratio)},
                      {"running_max", json_number(l.running_max)},
                      {"growth", json_number(l.growth)},
                      {"resolution_limited", l.resolution_limited},
                      {"samples", samples}});
  }
  return {{"question", r.question}, {"label", r.label}, {"grid", to_json(r.grid)},
          {"monotone", r.monotone}, {"levels", levels}};
}

}  // namespace embedlab
