// Batch entry point: corpus generation, registry runs, probes and report rendering.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "embedlab/corpus.hpp"
#include "embedlab/probe.hpp"
#include "embedlab/registry.hpp"
#include "embedlab/report.hpp"
#include "embedlab/runner.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace embedlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssert = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw UsageError("cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(p.string() + ": " + e.what());
  }
}

// "L,N" -> (L, N).
std::pair<double, std::size_t> parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--grid expects L,Npts, got '" + text + "'");
  try {
    const double L = std::stod(text.substr(0, comma));
    const long n = std::stol(text.substr(comma + 1));
    if (!(L > 0.0) || n < 2 || n % 2 != 0) throw UsageError("--grid needs L > 0 and an even Npts >= 2");
    return {L, static_cast<std::size_t>(n)};
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects L,Npts, got '" + text + "'");
  }
}

// Options the command line left unset take their value from the config document:
// first the block named after the subcommand path ("verify all"), then top-level keys.
void apply_config(CLI::App* sub, const std::string& path, const json& cfg) {
  if (cfg.is_null()) return;
  const json* blocks[] = {cfg.contains(path) ? &cfg.at(path) : nullptr, &cfg};
  for (CLI::Option* opt : sub->get_options()) {
    if (opt->count() > 0 || opt->get_single_name() == "help") continue;
    for (const json* b : blocks) {
      if (!b || !b->is_object() || !b->contains(opt->get_single_name())) continue;
      const json& v = b->at(opt->get_single_name());
      auto text = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
      if (v.is_array())
        for (const auto& x : v) opt->add_result(text(x));
      else
        opt->add_result(text(v));
      opt->run_callback();
      break;
    }
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

// ---- corpus gen ----------------------------------------------------------------

struct CorpusGenArgs {
  std::uint64_t seed = 0;
  long count = -1;
  std::vector<int> dims;
  std::vector<std::string> grids;
  std::string out;
};

int corpus_gen(const CorpusGenArgs& a) {
  require(a.count >= 1, "--count must be at least 1");
  require(!a.dims.empty(), "--dim is required");
  require(!a.out.empty(), "--out is required");
  require(a.grids.size() == 1 || a.grids.size() == a.dims.size(), "give one --grid, or one per --dim");
  CorpusFile c;
  c.seed = a.seed;
  for (std::size_t i = 0; i < a.dims.size(); ++i) {
    const int dim = a.dims[i];
    require(dim >= 1 && dim <= kMaxDim, "--dim must be 1, 2 or 3");
    const auto [L, n] = parse_grid(a.grids.empty() ? "8,128" : a.grids[a.grids.size() == 1 ? 0 : i]);
    CorpusGroup g;
    g.dim = dim;
    g.half_extent = L;
    g.points = n;
    // Each group draws from its own stream so adding a dimension leaves the others unchanged.
    g.families = generate_families(a.seed + static_cast<std::uint64_t>(dim), static_cast<std::size_t>(a.count), dim, L);
    for (const auto& f : g.families) (void)sample(f, g.grid());
    c.groups.push_back(std::move(g));
  }
  write_atomic(a.out, dump_document(to_json(c)));
  std::cout << "wrote " << a.out << " (" << c.groups.size() << " groups, " << a.count << " members each)\n";
  return kExitOk;
}

// ---- verify run / verify all --------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> ids;
  std::string corpus;
  std::string out;
  std::size_t jobs = 0;
  std::size_t members = 0;
  std::size_t dilation_members = 10;
  std::size_t probe_depth = 2;
  bool no_fine = false;
};

int verify(const VerifyArgs& a, bool all) {
  require(!a.corpus.empty(), "--corpus is required");
  require(!a.out.empty(), "--out is required");
  require(all || !a.ids.empty(), "--id is required");
  std::vector<const InequalitySpec*> specs;
  if (all && a.ids.empty()) {
    for (const auto& e : registry()) specs.push_back(&e);
  } else {
    for (const auto& id : a.ids) {
      try {
        specs.push_back(&find_entry(id));
      } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
      }
    }
  }
  CorpusFile corpus;
  try {
    corpus = corpus_from_json(read_json(a.corpus));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(a.corpus + ": " + e.what());
  }
  const PreparedCorpus prepared = prepare_corpus(corpus, !a.no_fine, a.jobs);
  RunOptions opt;
  opt.jobs = a.jobs;
  opt.max_members = a.members;
  opt.dilation_members = a.dilation_members;
  opt.probe_depth = a.probe_depth;

  std::vector<InequalityReport> reports;
  std::map<std::string, double> runtimes;
  bool failed = false;
  for (const auto* spec : specs) {
    reports.push_back(run(*spec, prepared, opt));
    const auto& r = reports.back();
    runtimes[r.id] = r.runtime_seconds;
    failed = failed || is_failure(r);
    std::ostringstream line;
    line << (is_failure(r) ? "FAIL " : "ok   ") << r.id << " [" << to_string(r.kind) << "]";
    for (const auto& g : r.groups) {
      line << "  n=" << g.dim << " C=" << g.coarse.max_ratio;
      if (g.fine) line << "/" << g.fine->max_ratio;
      if (g.fine && !g.stable && r.kind != EntryKind::assert_kind) line << " (drift " << g.drift << ")";
    }
    if (r.groups.empty()) line << "  (no applicable corpus group)";
    std::cout << line.str() << std::endl;
  }
  json doc = verify_document(reports, corpus.seed);
  attach_metadata(doc, runtimes);
  const fs::path out = fs::path(a.out) / "report.json";
  write_atomic(out, dump_document(doc));
  std::cout << "wrote " << out.string() << "\n";
  return failed ? kExitAssert : kExitOk;
}

// ---- probe --------------------------------------------------------------------------

struct ProbeArgs {
  std::string question;
  std::size_t depth = 0;
  std::string out;
  std::string grid = "8,256";
  std::size_t jobs = 0;
};

int run_probe(const ProbeArgs& a) {
  require(!a.question.empty(), "--question is required");
  require(a.depth >= 1, "--depth must be at least 1");
  require(!a.out.empty(), "--out is required");
  const auto& qs = probe_questions();
  require(std::find(qs.begin(), qs.end(), a.question) != qs.end(), "unknown --question '" + a.question + "'");
  const auto [L, n] = parse_grid(a.grid);
  const ProbeReport r = probe(a.question, a.depth, GridSpec::symmetric(2, L, n), a.jobs);
  json doc = {{"format_version", kFormatVersion}, {"kind", "probe"}, {"probe", to_json(r)}};
  const fs::path out = fs::path(a.out) / ("probe_" + a.question + ".json");
  write_atomic(out, dump_document(doc));
  std::cout << r.label << ": " << r.question << "\n";
  for (const auto& l : r.levels)
    std::cout << "  depth " << l.depth << "  max ratio " << l.max_ratio << "  running max " << l.running_max
              << (l.resolution_limited ? "  (resolution-limited)" : "") << "\n";
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

// ---- report render --------------------------------------------------------------------

int render(const std::string& in, const std::string& format) {
  require(!in.empty(), "--in is required");
  require(format == "csv" || format == "svg", "--format must be csv or svg");
  const fs::path dir(in);
  const json doc = read_json(dir / "report.json");
  require(doc.value("kind", "") == "verify", "report.json is not a verify report");
  if (format == "csv") {
    write_atomic(dir / "report.csv", render_csv(doc));
    std::cout << "wrote " << (dir / "report.csv").string() << "\n";
  } else {
    const auto files = render_svg(doc);
    for (const auto& [name, content] : files) write_atomic(dir / name, content);
    std::cout << "wrote " << files.size() << " svg files to " << dir.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"embedlab: norms, rearrangements and Fourier functionals with an inequality registry"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file supplying defaults for any flag");

  CorpusGenArgs cg;
  auto* corpus = app.add_subcommand("corpus", "Corpus files");
  corpus->require_subcommand(1);
  auto* gen = corpus->add_subcommand("gen", "Generate a seeded corpus file");
  gen->add_option("--seed", cg.seed, "Corpus seed");
  gen->add_option("--count", cg.count, "Members per dimension");
  gen->add_option("--dim", cg.dims, "Dimensions (1, 2, 3)")->delimiter(',');
  gen->add_option("--grid", cg.grids, "L,Npts per dimension (or one for all)");
  gen->add_option("--out", cg.out, "Output corpus path");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run registry entries");
  verify_cmd->require_subcommand(1);
  auto add_common = [&](CLI::App* s) {
    s->add_option("--corpus", va.corpus, "Corpus file");
    s->add_option("--out", va.out, "Output directory");
    s->add_option("--jobs", va.jobs, "Worker threads (default: all cores)");
    s->add_option("--members", va.members, "Use only the first K members per group");
    s->add_option("--dilation-members", va.dilation_members, "Members per group in dilation sweeps");
    s->add_option("--probe-depth", va.probe_depth, "Escalation depth for probe entries");
    s->add_flag("--no-fine", va.no_fine, "Skip the fine grid");
  };
  auto* vrun = verify_cmd->add_subcommand("run", "Run one or more entries by id");
  vrun->add_option("--id", va.ids, "Registry id")->delimiter(',');
  add_common(vrun);
  auto* vall = verify_cmd->add_subcommand("all", "Run every registry entry");
  vall->add_option("--ids", va.ids, "Restrict to these ids")->delimiter(',');
  add_common(vall);
  auto* vlist = verify_cmd->add_subcommand("list", "Print registry ids");

  ProbeArgs pa;
  auto* probe_cmd = app.add_subcommand("probe", "Open-question probes (evidence only)");
  probe_cmd->add_option("--question", pa.question, "embed32_n2_p1 or obertype_n2");
  probe_cmd->add_option("--depth", pa.depth, "Escalation levels");
  probe_cmd->add_option("--out", pa.out, "Output directory");
  probe_cmd->add_option("--grid", pa.grid, "L,Npts of the 2-D probe grid");
  probe_cmd->add_option("--jobs", pa.jobs, "Worker threads");

  std::string render_in, render_format;
  auto* report_cmd = app.add_subcommand("report", "Report rendering");
  report_cmd->require_subcommand(1);
  auto* rrender = report_cmd->add_subcommand("render", "Render report.json as CSV or SVG");
  rrender->add_option("--in", render_in, "Directory holding report.json");
  rrender->add_option("--format", render_format, "csv or svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const json cfg = config_path.empty() ? json() : read_json(config_path);
    if (!cfg.is_null() && !cfg.is_object()) throw UsageError("--config must hold a JSON object");
    if (gen->parsed()) {
      apply_config(gen, "corpus gen", cfg);
      return corpus_gen(cg);
    }
    if (vrun->parsed()) {
      apply_config(vrun, "verify run", cfg);
      return verify(va, false);
    }
    if (vall->parsed()) {
      apply_config(vall, "verify all", cfg);
      return verify(va, true);
    }
    if (vlist->parsed()) {
      for (const auto& e : registry())
        std::cout << e.id << "\t" << to_string(e.kind) << "\t" << e.summary << "\n";
      return kExitOk;
    }
    if (probe_cmd->parsed()) {
      apply_config(probe_cmd, "probe", cfg);
      return run_probe(pa);
    }
    if (rrender->parsed()) {
      apply_config(rrender, "report render", cfg);
      return render(render_in, render_format);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
