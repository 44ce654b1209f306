#include "embedlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "embedlab/corpus.hpp"
#include "embedlab/runner.hpp"

namespace embedlab {

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a number");
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dump_document(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

nlohmann::json verify_document(const std::vector<InequalityReport>& reports, std::uint64_t corpus_seed) {
  nlohmann::json entries = nlohmann::json::array();
  std::size_t asserts = 0, assert_failures = 0, failures = 0, unstable = 0, dilation_failures = 0;
  for (const auto& r : reports) {
    entries.push_back(to_json(r));
    if (r.kind == EntryKind::assert_kind) {
      ++asserts;
      if (!r.pass) ++assert_failures;
    }
    if (is_failure(r)) ++failures;
    for (const auto& g : r.groups) {
      if (r.kind == EntryKind::report && !g.stable) ++unstable;
      for (const auto& d : g.dilation)
        if (!d.pass) ++dilation_failures;
    }
  }
  nlohmann::json summary = {{"entries", reports.size()},
                            {"assert_entries", asserts},
                            {"assert_failures", assert_failures},
                            {"failures", failures},
                            {"unstable_report_groups", unstable},
                            {"dilation_failures", dilation_failures}};
  return {{"format_version", kFormatVersion},
          {"kind", "verify"},
          {"corpus_seed", corpus_seed},
          {"entries", entries},
          {"summary", summary}};
}

void attach_metadata(nlohmann::json& doc, const std::map<std::string, double>& runtimes) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  nlohmann::json rt = nlohmann::json::object();
  for (const auto& [id, s] : runtimes) rt[id] = s;
  doc["metadata"] = {{"timestamp", ts.str()}, {"runtime_seconds", rt}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string number_text(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  std::ostringstream o;
  o << std::setprecision(17) << j.get<double>();
  return o.str();
}

// Calls fn(entry, group, resolution name, resolution) for every resolution block.
template <class Fn>
void for_each_resolution(const nlohmann::json& doc, Fn fn) {
  for (const auto& e : doc.at("entries"))
    for (const auto& g : e.at("groups"))
      for (const char* res : {"coarse", "fine"})
        if (g.contains(res) && !g.at(res).is_null()) fn(e, g, std::string(res), g.at(res));
}

double log10_ratio(const nlohmann::json& j) {
  const double v = number_from_json(j);
  if (!(v > 0.0) || !std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
  return std::log10(v);
}

std::string svg_open(double w, double h) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' '
    << h << "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return o.str();
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Log-scale y axis with gridlines at integer decades between lo and hi.
struct LogAxis {
  double lo, hi, top, bottom;
  double y(double log_v) const { return bottom - (log_v - lo) / (hi - lo) * (bottom - top); }
  std::string draw(double left, double right) const {
    std::ostringstream o;
    for (int d = static_cast<int>(std::floor(lo)); d <= static_cast<int>(std::ceil(hi)); ++d) {
      if (d < lo || d > hi) continue;
      o << "<line x1=\"" << left << "\" x2=\"" << right << "\" y1=\"" << y(d) << "\" y2=\"" << y(d)
        << "\" stroke=\"#ddd\"/>\n<text x=\"" << left - 4 << "\" y=\"" << y(d) + 4 << "\" text-anchor=\"end\">1e" << d
        << "</text>\n";
    }
    return o.str();
  }
};

LogAxis make_axis(const std::vector<double>& logs, double top, double bottom) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (double v : logs)
    if (std::isfinite(v)) {
      lo = any ? std::min(lo, v) : v;
      hi = any ? std::max(hi, v) : v;
      any = true;
    }
  if (!any) lo = -1.0, hi = 1.0;
  lo = std::floor(lo - 0.05);
  hi = std::ceil(hi + 0.05);
  if (hi <= lo) hi = lo + 1.0;
  return {lo, hi, top, bottom};
}

}  // namespace

std::string render_csv(const nlohmann::json& doc) {
  std::ostringstream o;
  o << "id,kind,dim,resolution,member,family,lhs,rhs,ratio,pass,diagnostic\n";
  for_each_resolution(doc, [&](const nlohmann::json& e, const nlohmann::json& g, const std::string& res,
                               const nlohmann::json& r) {
    for (const auto& m : r.at("members"))
      o << csv_field(e.at("id").get<std::string>()) << ',' << e.at("kind").get<std::string>() << ',' << g.at("dim").get<int>()
        << ',' << res << ',' << m.at("index").get<std::size_t>() << ',' << m.at("family").get<std::string>() << ','
        << number_text(m.at("lhs")) << ',' << number_text(m.at("rhs")) << ',' << number_text(m.at("ratio")) << ','
        << (m.at("pass").get<bool>() ? "true" : "false") << ',' << csv_field(m.at("diagnostic").get<std::string>()) << '\n';
  });
  return o.str();
}

std::map<std::string, std::string> render_svg(const nlohmann::json& doc) {
  std::map<std::string, std::string> files;
  const double W = 640, H = 320, left = 60, right = 620, top = 30, bottom = 290;

  // Ratio against member index, one file per entry; coarse as circles, fine as squares.
  for (const auto& e : doc.at("entries")) {
    const std::string id = e.at("id").get<std::string>();
    std::vector<double> logs;
    std::size_t count = 0;
    for (const auto& g : e.at("groups"))
      for (const char* res : {"coarse", "fine"})
        if (g.contains(res) && !g.at(res).is_null())
          for (const auto& m : g.at(res).at("members")) {
            logs.push_back(log10_ratio(m.at("ratio")));
            count = std::max(count, m.at("index").get<std::size_t>() + 1);
          }
    const LogAxis axis = make_axis(logs, top, bottom);
    std::ostringstream o;
    o << svg_open(W, H) << "<text x=\"" << left << "\" y=\"18\">" << escape_xml(id) << ": lhs/rhs by member</text>\n"
      << axis.draw(left, right);
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
    std::size_t gi = 0;
    for (const auto& g : e.at("groups")) {
      const char* color = colors[gi++ % 3];
      for (const char* res : {"coarse", "fine"}) {
        if (!g.contains(res) || g.at(res).is_null()) continue;
        for (const auto& m : g.at(res).at("members")) {
          const double lv = log10_ratio(m.at("ratio"));
          if (!std::isfinite(lv)) continue;
          const double x = left + (static_cast<double>(m.at("index").get<std::size_t>()) + 0.5) /
                                      static_cast<double>(std::max<std::size_t>(count, 1)) * (right - left);
          if (std::string(res) == "coarse")
            o << "<circle cx=\"" << x << "\" cy=\"" << axis.y(lv) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
          else
            o << "<rect x=\"" << x - 3 << "\" y=\"" << axis.y(lv) - 3 << "\" width=\"6\" height=\"6\" fill=\"none\" stroke=\""
              << color << "\"/>\n";
        }
      }
      o << "<text x=\"" << right - 90 << "\" y=\"" << 18 + 12 * static_cast<double>(gi) << "\" fill=\"" << color
        << "\">n = " << g.at("dim").get<int>() << "</text>\n";
    }
    o << "</svg>\n";
    files[id + "_members.svg"] = o.str();
  }

  // Empirical constant at both resolutions for every (entry, dim).
  struct Pair {
    std::string label;
    double coarse, fine;
  };
  std::vector<Pair> pairs;
  for (const auto& e : doc.at("entries"))
    for (const auto& g : e.at("groups")) {
      Pair p{e.at("id").get<std::string>() + " n=" + std::to_string(g.at("dim").get<int>()),
             log10_ratio(g.at("coarse").at("max_ratio")), std::numeric_limits<double>::quiet_NaN()};
      if (g.contains("fine") && !g.at("fine").is_null()) p.fine = log10_ratio(g.at("fine").at("max_ratio"));
      pairs.push_back(p);
    }
  std::vector<double> logs;
  for (const auto& p : pairs) logs.insert(logs.end(), {p.coarse, p.fine});
  const double row = 16, height = std::max(120.0, 60 + row * static_cast<double>(pairs.size()));
  const double x0 = 200, x1 = 620;
  const LogAxis xaxis = make_axis(logs, x0, x1);  // only the decade range is used here
  auto xpos = [&](double lv) { return x0 + (lv - xaxis.lo) / (xaxis.hi - xaxis.lo) * (x1 - x0); };
  std::ostringstream o;
  o << svg_open(W, height) << "<text x=\"10\" y=\"18\">Empirical constant, coarse (circle) and fine (square)</text>\n";
  for (int d = static_cast<int>(xaxis.lo); d <= static_cast<int>(xaxis.hi); ++d)
    o << "<line x1=\"" << xpos(d) << "\" x2=\"" << xpos(d) << "\" y1=\"30\" y2=\"" << height - 20
      << "\" stroke=\"#ddd\"/>\n<text x=\"" << xpos(d) << "\" y=\"" << height - 6 << "\" text-anchor=\"middle\">1e" << d
      << "</text>\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double y = 40 + row * static_cast<double>(i);
    o << "<text x=\"" << x0 - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << escape_xml(pairs[i].label) << "</text>\n";
    if (std::isfinite(pairs[i].coarse) && std::isfinite(pairs[i].fine))
      o << "<line x1=\"" << xpos(pairs[i].coarse) << "\" x2=\"" << xpos(pairs[i].fine) << "\" y1=\"" << y << "\" y2=\"" << y
        << "\" stroke=\"#999\"/>\n";
    if (std::isfinite(pairs[i].coarse))
      o << "<circle cx=\"" << xpos(pairs[i].coarse) << "\" cy=\"" << y << "\" r=\"3.5\" fill=\"#1f77b4\"/>\n";
    if (std::isfinite(pairs[i].fine))
      o << "<rect x=\"" << xpos(pairs[i].fine) - 3.5 << "\" y=\"" << y - 3.5
        << "\" width=\"7\" height=\"7\" fill=\"none\" stroke=\"#d62728\"/>\n";
  }
  o << "</svg>\n";
  files["resolution.svg"] = o.str();
  return files;
}

}  // namespace embedlab
