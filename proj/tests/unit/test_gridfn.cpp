#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "embedlab/corpus.hpp"
#include "embedlab/families.hpp"
#include "embedlab/grid.hpp"

using namespace embedlab;

TEST_CASE("symmetric grid puts the origin on node N/2") {
  const auto g = GridSpec::symmetric(2, 8.0, 64);
  CHECK(g.size() == 64 * 64);
  CHECK(g.spacing[0] == doctest::Approx(0.25));
  CHECK(g.coordinate(0, 32) == 0.0);
  CHECK(g.coordinate(1, 0) == -8.0);
  CHECK(g.upper(1) == 8.0);
  CHECK(g.cell_volume() == doctest::Approx(0.0625));
  CHECK(g.complement(0).dim == 1);
  CHECK(g.scaled(2.0).spacing[1] == doctest::Approx(0.5));
}

TEST_CASE("line extraction follows row-major strides") {
  const auto g = GridSpec::symmetric(3, 1.0, 4);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  for (int axis = 0; axis < 3; ++axis) {
    const auto offs = line_offsets(g, axis);
    CHECK(offs.size() == 16);
    std::vector<int> seen(v.size(), 0);
    for (auto o : offs)
      for (double x : extract_line(v, g, axis, o)) ++seen[static_cast<std::size_t>(x)];
    for (int s : seen) CHECK(s == 1);
  }
  const auto line = extract_line(v, g, 0, 0);
  CHECK(line == std::vector<double>{0, 16, 32, 48});
}

TEST_CASE("gaussian samples match the closed form") {
  const auto g = GridSpec::symmetric(1, 8.0, 1024);
  FamilySpec f;
  const auto s = sample(f, g);
  for (std::size_t i = 0; i < g.size(); i += 37) {
    const double x = g.coordinate(0, i);
    CHECK(s.real()[i] == doctest::Approx(std::exp(-std::numbers::pi * x * x)).epsilon(1e-14));
  }
}

TEST_CASE("exact partial derivatives agree with central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int dim = 1; dim <= 3; ++dim) {
    for (const auto& f : generate_families(5, 6, dim, 4.0)) {
      for (int k = 0; k < 200; ++k) {
        std::array<double, 3> x{u(rng), u(rng), u(rng)};
        for (int a = 0; a < dim; ++a) {
          auto xp = x, xm = x;
          const double e = 1e-5;
          xp[a] += e;
          xm[a] -= e;
          const double fd = (evaluate(f, std::span<const double>(xp.data(), dim)) -
                             evaluate(f, std::span<const double>(xm.data(), dim))) / (2 * e);
          CHECK(evaluate_partial(f, a, std::span<const double>(x.data(), dim)) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("dilation parameters realise f(lambda x)") {
  for (const auto& f : generate_families(9, 6, 2, 8.0)) {
    for (double lambda : {0.5, 2.0}) {
      const auto d = dilate(f, lambda);
      for (double x0 : {-0.7, 0.0, 0.4})
        for (double x1 : {-0.3, 0.9}) {
          const double a[] = {x0, x1};
          const double b[] = {lambda * x0, lambda * x1};
          CHECK(evaluate(d, a) == doctest::Approx(evaluate(f, b)).epsilon(1e-12).scale(1.0));
        }
    }
  }
}

TEST_CASE("sampling rejects members whose support leaves the grid") {
  FamilySpec f;
  f.id = FamilyId::tensor_bump;
  f.width[0] = 3.0;
  CHECK_THROWS_AS(sample(f, GridSpec::symmetric(1, 2.0, 64)), std::exception);
  f.width[0] = 1.0;
  CHECK_NOTHROW(sample(f, GridSpec::symmetric(1, 2.0, 64)));
}

TEST_CASE("corpus generation is deterministic and cycles through the families") {
  const auto a = generate_families(42, 12, 2, 8.0);
  const auto b = generate_families(42, 12, 2, 8.0);
  CHECK(a == b);
  CHECK(generate_families(43, 12, 2, 8.0) != a);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].id == kAllFamilies[i % kAllFamilies.size()]);
  CHECK_THROWS(generate_families(1, 0, 2, 8.0));
}

TEST_CASE("corpus files round-trip through JSON") {
  CorpusFile c;
  c.seed = 99;
  CorpusGroup g;
  g.dim = 2;
  g.half_extent = 8.0;
  g.points = 64;
  g.families = generate_families(99, 6, 2, 8.0);
  c.groups.push_back(g);
  const auto j = to_json(c);
  CHECK(j.at("format_version") == kFormatVersion);
  const auto back = corpus_from_json(j);
  REQUIRE(back.groups.size() == 1);
  CHECK(back.seed == 99);
  CHECK(back.groups[0].families == g.families);
  CHECK(back.groups[0].fine_grid().count[0] == 128);
}
