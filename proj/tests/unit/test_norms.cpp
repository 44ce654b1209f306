#include <cmath>

#include "doctest.h"
#include "embedlab/corpus.hpp"
#include "embedlab/norm_spec.hpp"
#include "embedlab/norms.hpp"

using namespace embedlab;

namespace {

GridFunction box(const GridSpec& g, double half) {
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::abs(g.coordinate(0, i) + 0.01) < half ? 1.0 : 0.0;
  return GridFunction(g, v);
}

// Plain loops over the lines of a 2-D or 3-D grid: the slice oracle for mixed norms.
double slice_oracle(const GridFunction& f, int axis, double p_inner, double p_outer) {
  const GridSpec& g = f.spec();
  const auto st = g.strides();
  double outer = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if ((i / st[axis]) % g.count[axis] != 0) continue;
    double s = 0.0;
    for (std::size_t k = 0; k < g.count[axis]; ++k) s += std::pow(std::abs(f.real()[i + k * st[axis]]), p_inner);
    const double line = std::pow(s * g.spacing[axis], 1.0 / p_inner);
    outer += std::pow(line, p_outer) * g.cell_volume() / g.spacing[axis];
  }
  return std::pow(outer, 1.0 / p_outer);
}

}  // namespace

TEST_CASE("Lebesgue and Lorentz norms of an indicator") {
  const auto g = GridSpec::symmetric(1, 4.0, 128);
  const auto f = box(g, 1.0);
  const double a = 2.0;  // 32 cells of 1/16
  CHECK(lp_norm(f, 1.0) == doctest::Approx(a).epsilon(1e-14));
  CHECK(lp_norm(f, 3.0) == doctest::Approx(std::cbrt(a)).epsilon(1e-14));
  for (double p : {1.5, 2.0, 4.0})
    for (double r : {1.0, 2.0, 5.0})
      CHECK(lorentz_norm(f, p, r) == doctest::Approx(std::pow(p / r, 1.0 / r) * std::pow(a, 1.0 / p)).epsilon(1e-12));
}

TEST_CASE("L^{p,p} coincides with L^p") {
  for (const auto& m : corpus_generate(8, 6, GridSpec::symmetric(2, 8.0, 64)))
    for (double p : {1.0, 1.5, 3.0}) CHECK(lorentz_norm(m.values, p, p) == doctest::Approx(lp_norm(m.values, p)).epsilon(1e-12));
}

TEST_CASE("Lorentz norms decrease in the secondary index") {
  for (const auto& m : corpus_generate(8, 6, GridSpec::symmetric(1, 8.0, 256))) {
    CHECK(lorentz_norm(m.values, 2.0, 1.0) >= lorentz_norm(m.values, 2.0, 2.0));
    CHECK(lorentz_norm(m.values, 2.0, 2.0) >= lorentz_norm(m.values, 2.0, 4.0));
  }
}

TEST_CASE("mixed norm matches the slice oracle") {
  for (int dim : {2, 3}) {
    const auto g = GridSpec::symmetric(dim, 4.0, dim == 2 ? 48 : 16);
    for (const auto& m : corpus_generate(21, 6, g))
      for (int axis = 0; axis < dim; ++axis) {
        const auto spec = NormSpec::mixed(axis, NormSpec::lebesgue(1.0), NormSpec::lebesgue(2.5));
        CHECK(mixed_norm(m.values, spec) == doctest::Approx(slice_oracle(m.values, axis, 1.0, 2.5)).epsilon(1e-12));
      }
  }
}

TEST_CASE("mixed norm with equal exponents is the Lebesgue norm") {
  const auto g = GridSpec::symmetric(3, 4.0, 16);
  for (const auto& m : corpus_generate(2, 6, g))
    CHECK(mixed_norm(m.values, NormSpec::parse("Mix(k=2;Leb(2);Leb(2))")) == doctest::Approx(lp_norm(m.values, 2.0)).epsilon(1e-12));
}

TEST_CASE("iterated Lorentz norm of a product factorises") {
  const auto g = GridSpec::symmetric(2, 4.0, 32);
  const auto g1 = GridSpec::symmetric(1, 4.0, 32);
  std::vector<double> a(32), b(32), v(g.size());
  for (std::size_t i = 0; i < 32; ++i) {
    a[i] = std::exp(-0.1 * static_cast<double>((i - 13) * (i - 13)));
    b[i] = i % 5 == 0 ? 0.0 : 1.0 / (1.0 + static_cast<double>(i));
  }
  for (std::size_t i = 0; i < 32; ++i)
    for (std::size_t j = 0; j < 32; ++j) v[i * 32 + j] = a[i] * b[j];
  const GridFunction f(g, v);
  for (double p : {1.5, 2.0})
    for (double nu : {1.0, 2.0}) {
      const double expect = lorentz_norm(GridFunction(g1, a), p, nu) * lorentz_norm(GridFunction(g1, b), p, nu);
      CHECK(iterated_lorentz_norm(f, p, nu, 0) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("norm specs round-trip through text") {
  for (const char* text : {"Leb(2)", "Lor(3,1)", "Mix(k=1;Leb(1);Lor(3,1))", "ILor(2,1,k=1)", "Mix(k=2;Leb(1.5);Mix(k=1;Leb(2);Leb(3)))"}) {
    const auto s = NormSpec::parse(text);
    CHECK(NormSpec::parse(s.to_string()).to_string() == s.to_string());
  }
  CHECK(NormSpec::parse("Lor(q=3, r=1)").secondary() == 1.0);
  CHECK(NormSpec::parse("Mix(k=2;Leb(1);Leb(2))").axis() == 1);
  CHECK(NormSpec::parse("Mix(k=1;Leb(1);Mix(k=1;Leb(1);Leb(1)))").mixed_depth() == 2);
  for (const char* bad : {"", "Leb()", "Lor(2)", "Mix(k=0;Leb(1);Leb(1))", "Foo(1)", "Leb(2) x", "Leb(0.5)"})
    CHECK_THROWS(NormSpec::parse(bad));
}
