#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "embedlab/corpus.hpp"

namespace embedlab {

enum class EntryKind { assert_kind, report, probe };

std::string_view to_string(EntryKind k);

/// Named numeric parameters of an entry (p, q, alpha, ...).
class Params {
 public:
  Params() = default;
  Params(std::initializer_list<std::pair<const std::string, double>> init) : values_(init) {}

  double operator[](const std::string& name) const;
  bool has(const std::string& name) const { return values_.count(name) != 0; }
  void set(const std::string& name, double v) { values_[name] = v; }
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

/// Both sides of an inequality for one function. For assert entries `rhs`
/// already includes the explicit constant.
struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
  std::string diagnostic;
};

/// lhs / rhs with 0/0 = 0 and x/0 = inf for x > 0.
double side_ratio(const Sides& s);

struct InequalitySpec {
  std::string id;
  std::string summary;
  EntryKind kind = EntryKind::report;
  std::vector<int> dims;  // corpus dimensions the entry applies to
  Params params;          // defaults; per-dimension overrides below
  std::map<int, Params> dim_params;

  /// Explicit constant folded into rhs (assert entries); NaN means empirical.
  double constant = std::numeric_limits<double>::quiet_NaN();
  /// Relative slack for asserts: lhs <= rhs (1 + tolerance).
  double tolerance = 0.05;
  /// Optional exact lower bound on every ratio (e.g. termwise domination).
  double min_ratio = 0.0;
  /// Dilation sweep f(lambda x), lambda in {1/2, 2}, both sides with equal exponents.
  bool dilation = false;

  std::function<bool(int dim, const Params&)> valid;
  std::function<Sides(const CorpusMember&, const Params&)> evaluate;

  /// Defaults merged with the overrides for `dim`.
  Params params_for(int dim) const;
  bool applies_to(int dim) const;
};

/// All registry entries, sorted by id.
const std::vector<InequalitySpec>& registry();

/// Throws std::out_of_range for unknown ids.
const InequalitySpec& find_entry(std::string_view id);

}  // namespace embedlab
