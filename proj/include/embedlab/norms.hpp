#pragma once

#include <span>

#include "embedlab/grid.hpp"
#include "embedlab/norm_spec.hpp"
#include "embedlab/rearrange.hpp"

namespace embedlab {

/// (sum |f|^p * cell volume)^(1/p).
double lp_norm(const GridFunction& f, double p);

/// (integral_0^inf (t^(1/p) f*(t))^r dt/t)^(1/r), integrated exactly over the step profile.
double lorentz_norm(const GridFunction& f, double p, double r);
double lorentz_norm(const DecreasingProfile& profile, double p, double r);

/// Inner norm along spec.axis() on every line, outer norm on the resulting (n-1)-D function.
double mixed_norm(const GridFunction& f, const NormSpec& spec);

/// The (n-1)-D function of inner line norms used by mixed_norm.
GridFunction line_norms(const GridFunction& f, int axis, const NormSpec& inner);

/// (integral over R_+^2 of (st)^(nu/p-1) R_{1,2}|f|(s,t)^nu ds dt)^(1/nu); needs a 2-D grid.
double iterated_lorentz_norm(const GridFunction& f, double p, double nu, int axis);

/// Dispatch on the spec.
double norm(const GridFunction& f, const NormSpec& spec);

/// 1-D norm of raw samples with the given cell length (Leb or Lor specs only).
double line_norm(std::span<const double> samples, double cell_length, const NormSpec& spec);

}  // namespace embedlab
