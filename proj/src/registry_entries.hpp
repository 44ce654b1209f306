#pragma once

#include <vector>

#include "embedlab/registry.hpp"

namespace embedlab::detail {

// Entries built from transforms, Riesz multipliers and maximal functions.
void add_fourier_entries(std::vector<InequalitySpec>& out);

// Shared helpers.
Sides worst_of(const std::vector<Sides>& cases);
GridFunction gradient_magnitude(const CorpusMember& m);
double derivative_norm_sum(const CorpusMember& m, double p);

}  // namespace embedlab::detail
