#pragma once

// Serial brute-force versions of the kernels in kernels.hpp. They follow
// the defining formulas literally (no FFTs, no structure tricks) and serve
// as test oracles and benchmark baselines.

#include <span>
#include <vector>

#include "pulsekit/types.hpp"

namespace pulsekit::reference {

CMatrix ambiguity_grid(const Signal& g, const Signal& gamma);
CMatrix weighted_gram(const CMatrix& windows, std::span<const double> weights);
CMatrix weighted_frame_sum(const CMatrix& windows, std::span<const double> weights, int a, int b);
std::vector<double> lattice_power(const CMatrix& ambiguity, std::span<const TFCell> cells, int a, int b);
Signal apply_shifts(const Signal& x, std::span<const TFCell> cells, std::span<const cplx> coeffs);

} // namespace pulsekit::reference
