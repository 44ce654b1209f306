#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "embedlab/corpus.hpp"
#include "embedlab/probe.hpp"
#include "embedlab/registry.hpp"
#include "json.hpp"

namespace embedlab {

/// Corpus members sampled on the coarse and fine grid of every group.
struct PreparedGroup {
  CorpusGroup group;
  std::vector<CorpusMember> coarse;
  std::vector<CorpusMember> fine;
};

struct PreparedCorpus {
  std::uint64_t seed = 0;
  std::vector<PreparedGroup> groups;
};

/// Samples every family on both grids; `with_fine = false` skips the fine grids.
PreparedCorpus prepare_corpus(const CorpusFile& corpus, bool with_fine = true, std::size_t jobs = 0);

struct RunOptions {
  std::size_t jobs = 0;              // worker threads; 0 = hardware concurrency
  std::size_t dilation_members = 10; // members per group in the dilation sweep
  std::size_t probe_depth = 2;       // escalation depth attached to probe entries
  std::size_t max_members = 0;       // 0 = all members of each group
};

struct MemberResult {
  std::size_t index = 0;
  std::string family;
  Sides sides;
  double ratio = 0.0;
  bool pass = true;
};

struct ResolutionResult {
  GridSpec grid;
  std::vector<MemberResult> members;
  double max_ratio = 0.0;  // the empirical constant at this resolution
  double min_ratio = 0.0;
};

struct DilationResult {
  double lambda = 1.0;
  double lhs_exponent = 0.0;   // worst member: log(lhs_lambda / lhs) / log(lambda)
  double rhs_exponent = 0.0;
  double max_mismatch = 0.0;   // max over members of |e_lhs - e_rhs| / max(|e_lhs|, |e_rhs|)
  bool pass = true;            // max_mismatch <= 5%
};

struct GroupReport {
  int dim = 1;
  Params params;
  ResolutionResult coarse;
  std::optional<ResolutionResult> fine;
  double drift = 0.0;     // |C_fine / C_coarse - 1|
  bool stable = true;     // drift <= 10%
  std::vector<DilationResult> dilation;
  std::optional<ProbeReport> probe;
  bool floor_violation = false;  // some ratio fell below the entry's exact lower bound
  bool pass = true;
};

struct InequalityReport {
  std::string id;
  std::string summary;
  EntryKind kind = EntryKind::report;
  double constant = 0.0;
  double tolerance = 0.0;
  std::vector<GroupReport> groups;
  std::vector<int> skipped_dims;  // corpus dimensions outside the entry's list or validity window
  bool pass = true;
  double runtime_seconds = 0.0;   // kept out of the deterministic JSON body

  /// Largest empirical constant over groups and resolutions.
  double max_ratio() const;
};

inline constexpr double kDriftLimit = 0.10;
inline constexpr double kDilationLimit = 0.05;

/// Evaluates one entry on every applicable group at both resolutions.
InequalityReport run(const InequalitySpec& spec, const PreparedCorpus& corpus, const RunOptions& options = {});

/// Evaluates one entry on a list of members at one resolution.
ResolutionResult evaluate_members(const InequalitySpec& spec, const std::vector<CorpusMember>& members, const Params& params,
                                  std::size_t jobs = 0);

/// Dilation sweep f -> f(lambda x), lambda in {1/2, 2}, resampled on the grid scaled by 1/lambda.
std::vector<DilationResult> dilation_sweep(const InequalitySpec& spec, const std::vector<CorpusMember>& members,
                                           const Params& params, std::size_t jobs = 0);

/// True when the report should make the run exit nonzero: a failed assert entry,
/// or a violated exact ratio floor.
bool is_failure(const InequalityReport& r);

/// JSON for one report without timing fields; non-finite numbers become strings.
nlohmann::json to_json(const InequalityReport& r);

/// Worker pool: calls task(i) for i in [0, count) on up to `jobs` threads.
/// Exceptions are rethrown after all workers stop (the first by index wins).
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& task);

std::size_t resolve_jobs(std::size_t jobs);

}  // namespace embedlab
