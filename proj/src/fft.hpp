#pragma once

#include <complex>
#include <vector>

#include "embedlab/grid.hpp"

namespace embedlab::detail {

/// Unnormalized in-place n-D DFT over the grid's axes; sign < 0 is the forward
/// transform exp(-2 pi i j k / N). Planning is serialized, execution is not.
void fft_inplace(std::vector<std::complex<double>>& data, const GridSpec& g, int sign);

}  // namespace embedlab::detail
