#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "pulsekit/types.hpp"

namespace testutil {

using pulsekit::CMatrix;
using pulsekit::cplx;
using pulsekit::Signal;

inline Signal random_signal(int L, std::mt19937_64& rng, bool unit = true)
{
    std::normal_distribution<double> n;
    Signal x(L);
    for (int t = 0; t < L; ++t)
        x(t) = {n(rng), n(rng)};
    return unit ? Signal(x / x.norm()) : x;
}

inline cplx expi(double turns) { return std::polar(1.0, 2 * std::numbers::pi * turns); }

/// A(k, l) = sum_t conj(g(t)) gamma(t - k) exp(2 pi i l t / L), summed literally.
inline CMatrix brute_ambiguity(const Signal& g, const Signal& gamma)
{
    const int L = static_cast<int>(g.size());
    CMatrix A = CMatrix::Zero(L, L);
    for (int k = 0; k < L; ++k)
        for (int l = 0; l < L; ++l)
            for (int t = 0; t < L; ++t)
                A(k, l) += std::conj(g(t)) * gamma(((t - k) % L + L) % L) * expi(static_cast<double>(l) * t / L);
    return A;
}

/// Matrix of S_(k,l) acting on C^L, built entry by entry.
inline CMatrix shift_matrix(int L, int k, int l)
{
    CMatrix S = CMatrix::Zero(L, L);
    for (int t = 0; t < L; ++t)
        S(t, ((t - k) % L + L) % L) = expi(static_cast<double>(l) * t / L);
    return S;
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

/// |<a, b>| / (|a| |b|), insensitive to global phase.
inline double alignment(const Signal& a, const Signal& b) { return std::abs(a.dot(b)) / (a.norm() * b.norm()); }

} // namespace testutil
