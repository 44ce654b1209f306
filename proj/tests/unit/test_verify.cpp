#include <cmath>
#include <set>

#include "doctest.h"
#include "embedlab/corpus.hpp"
#include "embedlab/probe.hpp"
#include "embedlab/registry.hpp"
#include "embedlab/report.hpp"
#include "embedlab/runner.hpp"

using namespace embedlab;

namespace {

// Small grids that keep every entry cheap.
GridSpec small_grid(int dim) {
  switch (dim) {
    case 1: return GridSpec::symmetric(1, 8.0, 256);
    case 2: return GridSpec::symmetric(2, 8.0, 64);
    default: return GridSpec::symmetric(3, 4.0, 16);
  }
}

CorpusMember gaussian_member(int dim, double amplitude) {
  FamilySpec f;
  f.dim = dim;
  f.width[0] = dim == 3 ? 0.8 : 1.5;
  f.center = {0.1, -0.2, 0.05};
  f.amplitude = amplitude;
  return make_member(f, small_grid(dim));
}

}  // namespace

TEST_CASE("registry has at least twenty sorted, unique entries") {
  const auto& r = registry();
  CHECK(r.size() >= 20);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < r.size(); ++i) {
    ids.insert(r[i].id);
    if (i > 0) CHECK(r[i - 1].id < r[i].id);
    CHECK_FALSE(r[i].dims.empty());
    CHECK(static_cast<bool>(r[i].evaluate));
    if (r[i].kind == EntryKind::assert_kind) {
      CHECK(std::isfinite(r[i].constant));
    } else {
      CHECK(std::isnan(r[i].constant));
    }
    for (int dim : r[i].dims) CHECK(r[i].applies_to(dim));
  }
  CHECK(ids.size() == r.size());
  CHECK_THROWS_AS(find_entry("no-such-entry"), std::out_of_range);
  CHECK(find_entry("embed32").id == "embed32");
}

TEST_CASE("validity predicates reject out-of-window parameters") {
  const auto& e32 = find_entry("embed32");
  auto p = e32.params_for(3);
  CHECK(e32.valid(3, p));
  p.set("q", 4.0);  // alpha = 1 - 2 (1 - 1/4) < 0
  CHECK_FALSE(e32.valid(3, p));
  const auto& hardy = find_entry("hardy");
  auto hp = hardy.params_for(1);
  CHECK(hardy.valid(1, hp));
  const auto& ul2 = find_entry("Ulyanov2");
  auto up = ul2.params_for(1);
  up.set("q", 0.5);
  CHECK_FALSE(ul2.valid(1, up));
  const auto& e1 = find_entry("embed1");
  auto ep = e1.params_for(2);
  ep.set("q", 10.0);  // s = 1 - 2 (1 - 1/10) < 0
  CHECK_FALSE(e1.valid(2, ep));
}

TEST_CASE("params lookups") {
  const Params p{{"p", 1.5}};
  CHECK(p["p"] == 1.5);
  CHECK_THROWS_AS(p["q"], std::out_of_range);
  CHECK(side_ratio({0.0, 0.0, {}}) == 0.0);
  CHECK(std::isinf(side_ratio({1.0, 0.0, {}})));
  CHECK(side_ratio({1.0, 4.0, {}}) == 0.25);
}

TEST_CASE("every entry is invariant under amplitude scaling") {
  for (const auto& e : registry()) {
    for (int dim : e.dims) {
      const Params p = e.params_for(dim);
      if (!e.valid(dim, p)) continue;
      const Sides a = e.evaluate(gaussian_member(dim, 1.0), p);
      const Sides b = e.evaluate(gaussian_member(dim, -3.0), p);
      INFO(e.id << " n=" << dim);
      CHECK(std::isfinite(a.lhs));
      CHECK(std::isfinite(a.rhs));
      // Identity residuals sit at roundoff level, which is not homogeneous; they only need to stay there.
      if (side_ratio(a) < 1e-3)
        CHECK(side_ratio(b) < 1e-3);
      else
        CHECK(side_ratio(b) == doctest::Approx(side_ratio(a)).epsilon(1e-10));
    }
  }
}

TEST_CASE("the zero function passes with ratio zero") {
  FamilySpec f;
  f.amplitude = 0.0;
  const auto m = make_member(f, small_grid(1));
  const auto& e = find_entry("omega1");
  const auto r = evaluate_members(e, {m}, e.params_for(1), 1);
  REQUIRE(r.members.size() == 1);
  CHECK(r.members[0].ratio == 0.0);
  CHECK(r.members[0].pass);
}

TEST_CASE("runner reports are deterministic and carry refinement data") {
  CorpusFile c;
  c.seed = 5;
  CorpusGroup g;
  g.dim = 1;
  g.half_extent = 8.0;
  g.points = 256;
  g.families = generate_families(5, 4, 1, 8.0);
  c.groups.push_back(g);
  const auto prepared = prepare_corpus(c, true, 2);
  const auto& e = find_entry("omega1");
  const auto a = run(e, prepared, {});
  const auto b = run(e, prepared, {.jobs = 1});
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.pass);
  CHECK_FALSE(is_failure(a));
  REQUIRE(a.groups.size() == 1);
  REQUIRE(a.groups[0].fine.has_value());
  CHECK(a.groups[0].coarse.members.size() == 4);
  CHECK(a.max_ratio() <= 1.0 + e.tolerance);
  const auto doc = verify_document({a}, c.seed);
  CHECK(doc.at("format_version") == kFormatVersion);
  CHECK_FALSE(doc.contains("metadata"));
  CHECK(doc.at("summary").at("assert_failures") == 0);
}

TEST_CASE("entries skip corpus dimensions they do not cover") {
  CorpusFile c;
  CorpusGroup g;
  g.dim = 1;
  g.half_extent = 8.0;
  g.points = 128;
  g.families = generate_families(1, 2, 1, 8.0);
  c.groups.push_back(g);
  const auto r = run(find_entry("embed32"), prepare_corpus(c, false), {});
  CHECK(r.groups.empty());
  CHECK(r.skipped_dims == std::vector<int>{1});
}

TEST_CASE("worker pool rethrows the lowest-index exception") {
  std::vector<int> hit(50, 0);
  parallel_for(50, 4, [&](std::size_t i) { hit[i] = 1; });
  for (int h : hit) CHECK(h == 1);
  try {
    parallel_for(20, 3, [](std::size_t i) {
      if (i == 7 || i == 13) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
}

TEST_CASE("probes are labelled and keep monotone bookkeeping") {
  CHECK(probe_questions().size() == 2);
  const auto r = probe("obertype_n2", 2, GridSpec::symmetric(2, 8.0, 64), 1);
  CHECK(r.label == kOpenQuestionLabel);
  REQUIRE(r.levels.size() == 2);
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    CHECK(std::isfinite(r.levels[i].max_ratio));
    if (i > 0) {
      CHECK(r.levels[i].running_max >= r.levels[i - 1].running_max);
      CHECK(r.levels[i].growth == doctest::Approx(r.levels[i].max_ratio / r.levels[i - 1].max_ratio));
    }
  }
  CHECK(r.monotone == (r.levels[1].max_ratio >= r.levels[0].max_ratio));
  CHECK_THROWS(probe("nope", 1));
  CHECK_THROWS(probe("obertype_n2", 0));
  CHECK_THROWS(probe("obertype_n2", 1, GridSpec::symmetric(1, 8.0, 64)));
  const auto j = to_json(r);
  CHECK(j.at("label") == std::string(kOpenQuestionLabel));
}

TEST_CASE("non-finite numbers survive JSON") {
  CHECK(json_number(1.5) == 1.5);
  CHECK(json_number(INFINITY) == "inf");
  CHECK(std::isinf(number_from_json(json_number(-INFINITY))));
  CHECK(std::isnan(number_from_json(json_number(NAN))));
}
