#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "embedlab/families.hpp"
#include "embedlab/grid.hpp"
#include "json.hpp"

namespace embedlab {

inline constexpr int kFormatVersion = 1;

struct CorpusMember {
  FamilySpec family;
  GridFunction values;
  std::vector<GridFunction> derivatives;  // one per axis
};

/// Deterministic family parameters for `count` members on [-L, L]^dim.
/// Family ids cycle through all six families; parameters come from a
/// mt19937_64 stream seeded with `seed`.
std::vector<FamilySpec> generate_families(std::uint64_t seed, std::size_t count, int dim, double half_extent);

/// Samples and exact derivatives of generate_families(...) on `grid`.
std::vector<CorpusMember> corpus_generate(std::uint64_t seed, std::size_t count, const GridSpec& grid);

CorpusMember make_member(const FamilySpec& family, const GridSpec& grid);

/// One block of a corpus file: all members share a dimension and a grid.
struct CorpusGroup {
  int dim = 1;
  double half_extent = 8.0;
  std::size_t points = 512;
  std::vector<FamilySpec> families;

  GridSpec grid() const { return GridSpec::symmetric(dim, half_extent, points); }
  /// The refinement partner: same extent, twice the points.
  GridSpec fine_grid() const { return GridSpec::symmetric(dim, half_extent, 2 * points); }
};

struct CorpusFile {
  std::uint64_t seed = 0;
  std::vector<CorpusGroup> groups;
};

nlohmann::json to_json(const FamilySpec& f);
FamilySpec family_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CorpusFile& c);
CorpusFile corpus_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GridSpec& g);

/// Sample dump: header (grid, family, seed, format_version) plus values.
nlohmann::json dump_samples(const CorpusGroup& group, std::uint64_t seed);

}  // namespace embedlab
