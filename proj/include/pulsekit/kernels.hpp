#pragma once

// Data-parallel kernels (OpenMP). Every kernel here has a serial twin in
// reference.hpp with the same signature; tests compare the two and
// bench/ times them against each other.
//
// Parallel loops only split independent outputs, never reductions, so
// results are bitwise reproducible regardless of thread count.

#include <span>
#include <vector>

#include "pulsekit/types.hpp"

namespace pulsekit::kernels {

/// A(k, l) = <g, S_(k,l) gamma> for all L^2 cells, one FFT per delay row.
CMatrix ambiguity_grid(const Signal& g, const Signal& gamma);

/// sum_j w_j h_j h_j^* where h_j are the columns of `windows`.
CMatrix weighted_gram(const CMatrix& windows, std::span<const double> weights);

/// sum_j w_j S_{h_j, Lambda}, the weighted sum of Gabor frame operators of the
/// columns of `windows` on the separable lattice aZ x bZ (a, b divide L).
/// Uses the Walnut structure: entry (t, t') vanishes unless t - t' = 0 mod L/b.
CMatrix weighted_frame_sum(const CMatrix& windows, std::span<const double> weights, int a, int b);

/// For each support cell mu_j: sum over lattice points d of |A(mu_j + d)|^2.
std::vector<double> lattice_power(const CMatrix& ambiguity, std::span<const TFCell> cells, int a, int b);

/// sum_j c_j S_{mu_j} x.
Signal apply_shifts(const Signal& x, std::span<const TFCell> cells, std::span<const cplx> coeffs);

} // namespace pulsekit::kernels
