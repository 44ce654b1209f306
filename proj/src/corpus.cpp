#include "embedlab/corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace embedlab {

namespace {

// Bit-reproducible uniform draw; std::uniform_real_distribution is not pinned
// down by the standard.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<FamilySpec> generate_families(std::uint64_t seed, std::size_t count, int dim, double half_extent) {
  if (count < 1) throw std::invalid_argument("corpus count must be at least 1");
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("corpus dimension must be 1, 2 or 3");
  const double L = half_extent;
  Stream s(seed);
  std::vector<FamilySpec> out;
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    FamilySpec f;
    f.id = kAllFamilies[m % kAllFamilies.size()];
    f.dim = dim;
    f.seed = s.next();
    for (int a = 0; a < dim; ++a) f.center[a] = s.uniform(-0.08 * L, 0.08 * L);
    f.amplitude = s.uniform(0.5, 2.0) * (s.uniform() < 0.5 ? -1.0 : 1.0);
    switch (f.id) {
      case FamilyId::gaussian:
        f.width[0] = s.uniform(0.15 * L, 0.22 * L);
        break;
      case FamilyId::anisotropic_gaussian:
        for (int a = 0; a < dim; ++a) f.width[a] = s.uniform(0.12 * L, 0.22 * L);
        break;
      case FamilyId::tensor_bump:
        for (int a = 0; a < dim; ++a) f.width[a] = s.uniform(0.25 * L, 0.32 * L);
        break;
      case FamilyId::windowed_trig:
        for (int a = 0; a < dim; ++a) f.width[a] = s.uniform(0.28 * L, 0.32 * L);
        f.frequency[0] = s.uniform(0.6, 1.6) / L;
        for (int a = 1; a < dim; ++a) f.frequency[a] = s.uniform(-0.6, 0.6) / L;
        f.phase = s.uniform(0.0, 2.0 * std::numbers::pi);
        break;
      case FamilyId::mollified_cone:
        f.radius = s.uniform(0.24 * L, 0.3 * L);
        f.mollifier = s.uniform(0.35, 0.5) * f.radius;
        break;
      case FamilyId::mollified_indicator:
        f.mollifier = s.uniform(0.12 * L, 0.16 * L);
        for (int a = 0; a < dim; ++a) f.width[a] = s.uniform(0.14 * L, 0.2 * L);
        break;
    }
    out.push_back(f);
  }
  return out;
}

CorpusMember make_member(const FamilySpec& family, const GridSpec& grid) {
  CorpusMember m{family, sample(family, grid), {}};
  for (int a = 0; a < grid.dim; ++a) m.derivatives.push_back(derivative(family, a, grid));
  return m;
}

std::vector<CorpusMember> corpus_generate(std::uint64_t seed, std::size_t count, const GridSpec& grid) {
  const double L = 0.5 * (grid.upper(0) - grid.lower[0]);
  std::vector<CorpusMember> out;
  for (const FamilySpec& f : generate_families(seed, count, grid.dim, L)) out.push_back(make_member(f, grid));
  return out;
}

nlohmann::json to_json(const FamilySpec& f) {
  auto head = [&](const std::array<double, kMaxDim>& a) { return std::vector<double>(a.begin(), a.begin() + f.dim); };
  return {
      {"family", std::string(to_string(f.id))},
      {"dim", f.dim},
      {"center", head(f.center)},
      {"width", head(f.width)},
      {"frequency", head(f.frequency)},
      {"amplitude", f.amplitude},
      {"phase", f.phase},
      {"radius", f.radius},
      {"mollifier", f.mollifier},
      {"seed", f.seed},
  };
}

FamilySpec family_from_json(const nlohmann::json& j) {
  FamilySpec f;
  f.id = family_from_string(j.at("family").get<std::string>());
  f.dim = j.at("dim").get<int>();
  if (f.dim < 1 || f.dim > kMaxDim) throw std::invalid_argument("family dim out of range");
  auto fill = [&](const char* key, std::array<double, kMaxDim>& dst) {
    if (!j.contains(key)) return;
    const auto v = j.at(key).get<std::vector<double>>();
    if (static_cast<int>(v.size()) != f.dim) throw std::invalid_argument(std::string(key) + " has wrong length");
    for (int a = 0; a < f.dim; ++a) dst[a] = v[a];
  };
  fill("center", f.center);
  fill("width", f.width);
  fill("frequency", f.frequency);
  f.amplitude = j.value("amplitude", 1.0);
  f.phase = j.value("phase", 0.0);
  f.radius = j.value("radius", 1.0);
  f.mollifier = j.value("mollifier", 0.25);
  f.seed = j.value("seed", std::uint64_t{0});
  return f;
}

nlohmann::json to_json(const CorpusFile& c) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : c.groups) {
    nlohmann::json fams = nlohmann::json::array();
    for (const auto& f : g.families) fams.push_back(to_json(f));
    groups.push_back({{"dim", g.dim}, {"grid", {{"half_extent", g.half_extent}, {"points", g.points}}}, {"members", fams}});
  }
  return {{"format_version", kFormatVersion}, {"kind", "corpus"}, {"seed", c.seed}, {"groups", groups}};
}

CorpusFile corpus_from_json(const nlohmann::json& j) {
  if (j.value("format_version", 0) != kFormatVersion) throw std::invalid_argument("unsupported corpus format_version");
  CorpusFile c;
  c.seed = j.value("seed", std::uint64_t{0});
  for (const auto& g : j.at("groups")) {
    CorpusGroup grp;
    grp.dim = g.at("dim").get<int>();
    grp.half_extent = g.at("grid").at("half_extent").get<double>();
    grp.points = g.at("grid").at("points").get<std::size_t>();
    (void)grp.grid();  // validates
    for (const auto& m : g.at("members")) {
      FamilySpec f = family_from_json(m);
      if (f.dim != grp.dim) throw std::invalid_argument("member dimension differs from its group");
      grp.families.push_back(f);
    }
    if (grp.families.empty()) throw std::invalid_argument("corpus group has no members");
    c.groups.push_back(std::move(grp));
  }
  return c;
}

nlohmann::json to_json(const GridSpec& g) {
  nlohmann::json axes = nlohmann::json::array();
  for (int a = 0; a < g.dim; ++a)
    axes.push_back({{"count", g.count[a]}, {"lower", g.lower[a]}, {"spacing", g.spacing[a]}});
  return {{"dim", g.dim}, {"axes", axes}};
}

nlohmann::json dump_samples(const CorpusGroup& group, std::uint64_t seed) {
  const GridSpec grid = group.grid();
  nlohmann::json members = nlohmann::json::array();
  for (const auto& f : group.families) {
    const GridFunction v = sample(f, grid);
    members.push_back({{"family", to_json(f)}, {"values", std::vector<double>(v.real().begin(), v.real().end())}});
  }
  return {{"format_version", kFormatVersion}, {"kind", "corpus_dump"}, {"seed", seed}, {"grid", to_json(grid)},
          {"members", members}};
}

}  // namespace embedlab
