#pragma once

#include <functional>
#include <vector>

#include "embedlab/grid.hpp"

namespace embedlab {

/// `levels` geometric heights from (min spacing)/4 to 8 L, L the largest half extent.
std::vector<double> maximal_t_grid(const GridSpec& g, std::size_t levels = 64);

/// Pointwise maximum over the heights of |field(t)|, where field(t) returns samples on g.
GridFunction vertical_envelope(const GridSpec& g, const std::vector<double>& ts,
                               const std::function<std::vector<double>(double)>& field);

/// Maximum of |field(t)(y)| over grid nodes y with |x - y| <= t and heights t in ts.
GridFunction cone_envelope(const GridSpec& g, const std::vector<double>& ts,
                           const std::function<std::vector<double>(double)>& field);

/// N_v f(x) = max_t |P_t f(x)|.
GridFunction vertical_maximal(const GridFunction& f, const std::vector<double>& ts);

/// N f(x) = max over the sampled cone of |P_t f(y)|.
GridFunction nontangential_maximal(const GridFunction& f, const std::vector<double>& ts);

/// Cone maximal function of d/dt P_t f against sum_j N(R_j D_j f), both sampled
/// on the same cone points; `derivatives[j]` holds D_j f on f's grid.
struct ConeDerivativeCheck {
  GridFunction lhs;
  GridFunction rhs;
  double max_excess = 0.0;  // max over x of lhs - rhs
  double scale = 0.0;       // max of rhs
};
ConeDerivativeCheck cone_derivative_check(const GridFunction& f, const std::vector<GridFunction>& derivatives,
                                          const std::vector<double>& ts);

}  // namespace embedlab
