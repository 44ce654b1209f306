#include <cmath>

#include "doctest.h"
#include "embedlab/corpus.hpp"
#include "embedlab/smoothness.hpp"

using namespace embedlab;

namespace {

// Indicator of `cells` consecutive nodes on a 1-D grid.
GridFunction cell_block(const GridSpec& g, std::size_t first, std::size_t cells) {
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t i = first; i < first + cells; ++i) v[i] = 1.0;
  return GridFunction(g, v);
}

}  // namespace

TEST_CASE("differences are exact on the padded grid") {
  const auto g = GridSpec::symmetric(1, 2.0, 8);
  const GridFunction f(g, {1, 2, 3, 4, 5, 6, 7, 8});
  for (long m : {-3L, -1L, 1L, 2L, 9L}) {
    const auto d = difference_cells(f, 0, m);
    const GridSpec& dg = d.spec();
    CHECK(dg.count[0] == 8 + static_cast<std::size_t>(std::abs(m)));
    for (std::size_t i = 0; i < dg.count[0]; ++i) {
      const double x = dg.coordinate(0, i);
      auto at = [&](double y) {
        const double k = std::round((y - g.lower[0]) / g.spacing[0]);
        return k >= 0 && k < 8 ? f.real()[static_cast<std::size_t>(k)] : 0.0;
      };
      CHECK(d.real()[i] == doctest::Approx(at(x + m * g.spacing[0]) - at(x)));
    }
  }
  CHECK(shift_cells(g, 0, 1.0) == 2);
  CHECK_THROWS(shift_cells(g, 0, 0.3));
}

TEST_CASE("difference norms of a block are 2 min(h, length) in L^1") {
  const auto g = GridSpec::symmetric(1, 8.0, 128);
  const auto f = cell_block(g, 40, 12);
  const auto table = difference_norm_table(f, 0, 40, NormSpec::lebesgue(1.0));
  for (long m = 0; m <= 40; ++m)
    CHECK(table[static_cast<std::size_t>(m)] == doctest::Approx(2.0 * std::min<double>(m, 12) * g.spacing[0]).epsilon(1e-14).scale(1.0));
  CHECK(difference_norm(f, 0, 500, NormSpec::lebesgue(2.0)) == doctest::Approx(std::sqrt(2.0 * 12 * g.spacing[0])));
  CHECK(modulus(f, 0, 3 * g.spacing[0], NormSpec::lebesgue(1.0)) == doctest::Approx(6 * g.spacing[0]));
}

TEST_CASE("the modulus is the running maximum of the table") {
  const auto g = GridSpec::symmetric(2, 8.0, 64);
  for (const auto& m : corpus_generate(4, 6, g)) {
    const auto t = difference_norm_table(m.values, 1, 30, NormSpec::lebesgue(1.0));
    const auto w = modulus_from_table(t);
    double run = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      run = std::max(run, t[i]);
      CHECK(w[i] == run);
    }
    CHECK(modulus(m.values, 1, 7 * g.spacing[1], NormSpec::lebesgue(1.0)) == doctest::Approx(w[7]));
  }
}

TEST_CASE("Besov seminorm of a block against the closed form") {
  // ||Delta(h) 1_E||_1 = 2 min(h, l) gives (int (h^-a 2 min(h, l))^theta dh/h)^(1/theta) in closed form.
  const auto g = GridSpec::symmetric(1, 8.0, 256);
  const auto f = cell_block(g, 100, 32);
  const double l = 32 * g.spacing[0];
  for (double alpha : {0.25, 0.5, 0.75}) {
    BesovSpec s;
    s.alpha = alpha;
    s.theta = 1.0;
    const double exact = 2.0 * std::pow(l, 1.0 - alpha) / (alpha * (1.0 - alpha));
    const auto r = besov_seminorm(f, s);
    CHECK(r.finite());
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-3));
    s.theta = 2.0;
    const double exact2 = 2.0 * std::pow(l, 1.0 - alpha) * std::sqrt(1.0 / (2.0 * (1.0 - alpha)) + 1.0 / (2.0 * alpha));
    CHECK(besov_seminorm(f, s).value == doctest::Approx(exact2).epsilon(1e-3));
  }
}

TEST_CASE("Besov seminorm diverges outside 0 < alpha < 1") {
  const auto g = GridSpec::symmetric(1, 8.0, 256);
  const auto m = corpus_generate(1, 1, g).front();
  BesovSpec s;
  s.alpha = 1.0;
  CHECK_FALSE(besov_seminorm(m.values, s).finite());
  s.alpha = 0.0;
  CHECK_FALSE(besov_seminorm(m.values, s).finite());
  s.alpha = 0.0;
  s.upper_tail = false;
  s.h_max = 1.0;
  CHECK(besov_seminorm(m.values, s).finite());
}

TEST_CASE("modulus-based seminorm dominates the difference-based one") {
  const auto g = GridSpec::symmetric(1, 8.0, 256);
  for (const auto& m : corpus_generate(6, 6, g)) {
    BesovSpec s;
    s.alpha = 0.6;
    s.theta = 2.0;
    CHECK(besov_seminorm_modulus(m.values, s).value >= besov_seminorm(m.values, s).value * (1 - 1e-12));
  }
}

TEST_CASE("Besov specs round-trip through text") {
  const auto s = BesovSpec::parse("Besov(alpha=0.5,theta=2,k=1,hmax=3,tail=0;Lor(3,1))");
  CHECK(s.alpha == 0.5);
  CHECK(s.theta == 2.0);
  CHECK(s.axis == 0);
  CHECK(s.h_max == 3.0);
  CHECK_FALSE(s.upper_tail);
  CHECK(s.base.kind() == NormSpec::Kind::lorentz);
  const auto back = BesovSpec::parse(s.to_string());
  CHECK(back.to_string() == s.to_string());
  CHECK(back.ratio == s.ratio);
  CHECK_THROWS(BesovSpec::parse("Besov(alpha=0.5;Leb(1))x"));
  CHECK_THROWS(BesovSpec::parse("Besov(theta=1;Leb(1))"));
}

TEST_CASE("pointwise and tail inequalities with constant 2 on the 1-D corpus") {
  const auto g = GridSpec::symmetric(1, 8.0, 512);
  for (const auto& m : corpus_generate(12, 12, g))
    for (double p : {1.0, 2.0}) {
      const std::vector<double> ts{g.spacing[0], 0.3, 1.0, 4.0};
      for (const auto& s : ulyanov_pointwise(m.values, p, ts)) CHECK(s.lhs <= s.rhs * (1 + 1e-12));
      for (const auto& s : ulyanov_tail(m.values, p, ts)) CHECK(s.lhs <= s.rhs * 1.05);
    }
}

TEST_CASE("modulus against three times its average") {
  const auto g = GridSpec::symmetric(1, 8.0, 512);
  for (const auto& m : corpus_generate(13, 6, g))
    for (long cells : {1L, 8L, 64L}) {
      const auto s = omega_average_check(m.values, 0, cells * g.spacing[0], NormSpec::lebesgue(1.0));
      CHECK(s.lhs <= s.rhs * 1.05);
    }
}
