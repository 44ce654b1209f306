#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "embedlab/families.hpp"
#include "embedlab/grid.hpp"
#include "json.hpp"

namespace embedlab {

inline constexpr std::string_view kOpenQuestionLabel = "OPEN QUESTION — no asserted direction";

/// Question ids accepted by probe().
const std::vector<std::string>& probe_questions();

struct ProbeSample {
  std::string family;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool resolution_limited = false;  // oscillation or transition width below a few grid cells
  std::string diagnostic;
};

struct ProbeLevel {
  std::size_t depth = 0;
  double trig_frequency = 0.0;
  double mollifier = 0.0;
  std::vector<ProbeSample> samples;
  double max_ratio = 0.0;
  double running_max = 0.0;  // nondecreasing by construction
  double growth = 0.0;       // max_ratio / previous level's max_ratio (0 at depth 0)
  bool resolution_limited = false;
};

struct ProbeReport {
  std::string question;
  std::string label{kOpenQuestionLabel};
  GridSpec grid;
  std::vector<ProbeLevel> levels;
  bool monotone = true;  // max_ratio nondecreasing across levels; false flags a dip
};

/// n = 2, L = 8, N = 256.
GridSpec default_probe_grid();

/// Test functions at escalation level d: a fixed gaussian, windowed_trig with
/// frequency 0.25 * 2^d, mollified_indicator with transition width 2^-d, and a
/// mollified_cone with transition width 0.8 * 2^-d.
std::vector<FamilySpec> escalation_families(std::size_t d, const GridSpec& grid);

/// Ratio sequence for levels 0 .. depth-1. Evidence only; nothing is asserted.
/// Throws std::invalid_argument for unknown questions, depth 0, or a non-2-D grid.
ProbeReport probe(std::string_view question, std::size_t depth, const GridSpec& grid = default_probe_grid(),
                  std::size_t jobs = 0);

nlohmann::json to_json(const ProbeReport& r);

}  // namespace embedlab
