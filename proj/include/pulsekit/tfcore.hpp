#pragma once

// Time-frequency algebra on the cyclic group Z_L.
//
// Conventions used everywhere in pulsekit:
//   (S_mu x)(t) = exp(2 pi i l t / L) x(t - k)        mu = (k, l), modulate after delay
//   <a, b>      = sum_t conj(a(t)) b(t)                 conjugate-linear in the first slot
//   A_{g,gamma}(mu) = <g, S_mu gamma>
//   (F_s F)(mu) = (1/L) sum_nu exp(-2 pi i (nu_k mu_l - nu_l mu_k) / L) F(nu)
//
// The 1/L factor in F_s is the area of one grid cell, so F_s is its own inverse.

#include "pulsekit/types.hpp"

namespace pulsekit {

/// Hermitian inner product, conjugate-linear in the first argument.
inline cplx inner(const Signal& a, const Signal& b) { return a.dot(b); }

Signal tf_shift(const Signal& x, TFCell mu);

/// S_mu^* x. Equals exp(-2 pi i k l / L) S_{-mu} x.
Signal tf_shift_adjoint(const Signal& x, TFCell mu);

/// Phase c with S_mu S_lambda = c S_{mu + lambda}.
inline cplx shift_product_phase(TFCell mu, TFCell lambda, int L)
{
    return unit_root(-static_cast<std::int64_t>(mu.k) * lambda.l, L);
}

/// Full L x L cross-ambiguity grid A(k, l) = <g, S_(k,l) gamma>.
TFFunction cross_ambiguity(const Signal& g, const Signal& gamma);

/// Single ambiguity sample, O(L).
cplx ambiguity_at(const Signal& g, const Signal& gamma, TFCell mu);

/// (F_s F)(mu) = (1/L) sum_nu exp(-2 pi i (nu_k mu_l - nu_l mu_k) / L) F(nu).
/// With this normalization F_s is its own inverse.
TFFunction symplectic_dft(const TFFunction& F);

} // namespace pulsekit
