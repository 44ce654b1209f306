#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace embedlab {

struct InequalityReport;

/// Finite values as numbers; inf, -inf and nan as the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);
double number_from_json(const nlohmann::json& j);

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Deterministic report document: format_version, kind, corpus seed, entries, summary.
nlohmann::json verify_document(const std::vector<InequalityReport>& reports, std::uint64_t corpus_seed);

/// Adds the "metadata" key (UTC timestamp and per-entry runtimes); the only
/// part of a report that changes between identical runs.
void attach_metadata(nlohmann::json& doc, const std::map<std::string, double>& runtimes);

/// One row per (entry, group, resolution, member).
std::string render_csv(const nlohmann::json& verify_doc);

/// SVG plots keyed by file name: "<id>_members.svg" per entry plus "resolution.svg".
std::map<std::string, std::string> render_svg(const nlohmann::json& verify_doc);

/// Dumps with two-space indent and a trailing newline.
std::string dump_document(const nlohmann::json& doc);

}  // namespace embedlab
