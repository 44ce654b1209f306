#include "embedlab/maximal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "embedlab/fourier.hpp"

namespace embedlab {

namespace {

// Range-maximum tables for every line along the last axis.
class RowMaxTable {
 public:
  RowMaxTable(const std::vector<double>& v, std::size_t row_len) : len_(row_len), rows_(v.size() / row_len) {
    levels_ = static_cast<std::size_t>(std::bit_width(row_len));
    table_.assign(levels_, {});
    table_[0] = v;
    for (std::size_t k = 1; k < levels_; ++k) {
      const std::size_t span = std::size_t{1} << k;
      table_[k].assign(v.size(), 0.0);
      const auto& prev = table_[k - 1];
      for (std::size_t r = 0; r < rows_; ++r) {
        const std::size_t base = r * len_;
        for (std::size_t i = 0; i + span <= len_; ++i)
          table_[k][base + i] = std::max(prev[base + i], prev[base + i + span / 2]);
      }
    }
  }

  // max over [lo, hi] of row r (inclusive, lo <= hi).
  double query(std::size_t r, std::size_t lo, std::size_t hi) const {
    const std::size_t k = static_cast<std::size_t>(std::bit_width(hi - lo + 1)) - 1;
    const std::size_t base = r * len_;
    return std::max(table_[k][base + lo], table_[k][base + hi + 1 - (std::size_t{1} << k)]);
  }

 private:
  std::size_t len_;
  std::size_t rows_;
  std::size_t levels_;
  std::vector<std::vector<double>> table_;
};

struct RowOffset {
  std::array<long, kMaxDim> d{0, 0, 0};  // offsets on the leading axes
  long half_width = 0;                   // along the last axis
};

std::vector<RowOffset> ball_rows(const GridSpec& g, double t) {
  const int last = g.dim - 1;
  std::array<long, kMaxDim> reach{0, 0, 0};
  for (int a = 0; a < last; ++a)
    reach[a] = std::min(static_cast<long>(g.count[a]) - 1, static_cast<long>(std::floor(t / g.spacing[a] + 1e-9)));
  std::vector<RowOffset> rows;
  for (long d0 = -reach[0]; d0 <= reach[0]; ++d0)
    for (long d1 = -reach[1]; d1 <= reach[1]; ++d1) {
      const double x0 = static_cast<double>(d0) * g.spacing[0];
      const double x1 = static_cast<double>(d1) * g.spacing[1];
      double rem = t * t;
      if (last >= 1) rem -= x0 * x0;
      if (last >= 2) rem -= x1 * x1;
      if (rem < -1e-12 * t * t) continue;
      RowOffset ro;
      ro.d = {d0, d1, 0};
      ro.half_width = static_cast<long>(std::floor(std::sqrt(std::max(0.0, rem)) / g.spacing[last] + 1e-9));
      rows.push_back(ro);
    }
  return rows;
}

double diameter(const GridSpec& g) {
  double s = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    const double e = static_cast<double>(g.count[a] - 1) * g.spacing[a];
    s += e * e;
  }
  return std::sqrt(s);
}

void ball_max_into(const GridSpec& g, const std::vector<double>& v, double t, std::vector<double>& out) {
  if (t >= diameter(g)) {
    const double m = *std::max_element(v.begin(), v.end());
    for (auto& o : out) o = std::max(o, m);
    return;
  }
  const int last = g.dim - 1;
  const std::size_t len = g.count[last];
  const RowMaxTable table(v, len);
  const auto rows = ball_rows(g, t);
  const long n0 = static_cast<long>(g.count[0]);
  const long n1 = static_cast<long>(g.count[1]);
  const std::size_t nrows = v.size() / len;
  for (std::size_t r = 0; r < nrows; ++r) {
    // Leading indices of row r.
    long i0 = 0, i1 = 0;
    if (last == 1) i0 = static_cast<long>(r);
    if (last == 2) {
      i0 = static_cast<long>(r) / n1;
      i1 = static_cast<long>(r) % n1;
    }
    for (std::size_t i = 0; i < len; ++i) {
      double m = out[r * len + i];
      for (const auto& ro : rows) {
        long j0 = i0 + ro.d[0], j1 = i1 + ro.d[1];
        if (last >= 1 && (j0 < 0 || j0 >= n0)) continue;
        if (last >= 2 && (j1 < 0 || j1 >= n1)) continue;
        const std::size_t rr = last == 0 ? 0 : last == 1 ? static_cast<std::size_t>(j0) : static_cast<std::size_t>(j0 * n1 + j1);
        const long lo = std::max(0L, static_cast<long>(i) - ro.half_width);
        const long hi = std::min(static_cast<long>(len) - 1, static_cast<long>(i) + ro.half_width);
        m = std::max(m, table.query(rr, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)));
      }
      out[r * len + i] = m;
    }
  }
}

std::vector<double> abs_values(const GridFunction& f) { return f.magnitudes(); }

void check_ts(const std::vector<double>& ts) {
  if (ts.empty()) throw std::invalid_argument("maximal functions need a nonempty height grid");
  for (double t : ts)
    if (!(t > 0.0)) throw std::invalid_argument("heights must be positive");
}

}  // namespace

std::vector<double> maximal_t_grid(const GridSpec& g, std::size_t levels) {
  if (levels < 2) throw std::invalid_argument("need at least two heights");
  double h = std::numeric_limits<double>::infinity();
  double L = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    h = std::min(h, g.spacing[a]);
    L = std::max(L, 0.5 * (g.upper(a) - g.lower[a]));
  }
  const double lo = h / 4.0, hi = 8.0 * L;
  std::vector<double> ts(levels);
  for (std::size_t i = 0; i < levels; ++i)
    ts[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(levels - 1));
  return ts;
}

GridFunction vertical_envelope(const GridSpec& g, const std::vector<double>& ts,
                               const std::function<std::vector<double>(double)>& field) {
  check_ts(ts);
  std::vector<double> out(g.size(), 0.0);
  for (double t : ts) {
    const auto v = field(t);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], std::abs(v[i]));
  }
  return GridFunction(g, std::move(out));
}

GridFunction cone_envelope(const GridSpec& g, const std::vector<double>& ts,
                           const std::function<std::vector<double>(double)>& field) {
  check_ts(ts);
  std::vector<double> out(g.size(), 0.0);
  for (double t : ts) {
    auto v = field(t);
    for (auto& x : v) x = std::abs(x);
    ball_max_into(g, v, t, out);
  }
  return GridFunction(g, std::move(out));
}

GridFunction vertical_maximal(const GridFunction& f, const std::vector<double>& ts) {
  return vertical_envelope(f.spec(), ts, [&](double t) { return abs_values(poisson(f, t)); });
}

GridFunction nontangential_maximal(const GridFunction& f, const std::vector<double>& ts) {
  return cone_envelope(f.spec(), ts, [&](double t) { return abs_values(poisson(f, t)); });
}

ConeDerivativeCheck cone_derivative_check(const GridFunction& f, const std::vector<GridFunction>& derivatives,
                                          const std::vector<double>& ts) {
  const GridSpec& g = f.spec();
  if (derivatives.size() != static_cast<std::size_t>(g.dim)) throw std::invalid_argument("need one derivative per axis");
  ConeDerivativeCheck c;
  c.lhs = cone_envelope(g, ts, [&](double t) { return abs_values(poisson_t_derivative(f, t)); });
  std::vector<double> rhs(g.size(), 0.0);
  for (const auto& d : derivatives) {
    if (!(d.spec() == g)) throw std::invalid_argument("derivative grid mismatch");
    const GridFunction rd = riesz(d, static_cast<int>(&d - derivatives.data()));
    const GridFunction n = cone_envelope(g, ts, [&](double t) { return abs_values(poisson(rd, t)); });
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += n.real()[i];
  }
  c.rhs = GridFunction(g, std::move(rhs));
  for (std::size_t i = 0; i < g.size(); ++i) {
    c.max_excess = std::max(c.max_excess, c.lhs.real()[i] - c.rhs.real()[i]);
    c.scale = std::max(c.scale, c.rhs.real()[i]);
  }
  return c;
}

}  // namespace embedlab
