#pragma once

// Separable signaling lattices, Gabor frame operators and prototype pulses.

#include <stdexcept>
#include <string>

#include "pulsekit/types.hpp"

namespace pulsekit {

/// Separable lattice aZ x bZ on the L x L grid: time step a samples,
/// frequency step b bins. Density (symbols per unit area) is L / (a b).
///
/// A lattice is cyclic when a and b both divide L; frame-theoretic
/// operations require that. Non-cyclic "burst" lattices (a not dividing L)
/// are only used for finite slot sets, e.g. cp-OFDM with a prefix.
struct Lattice {
    int a = 1;
    int b = 1;
    int L = 1;

    static Lattice make(int a, int b, int L);

    double density() const { return static_cast<double>(L) / (static_cast<double>(a) * b); }
    bool cyclic() const { return L % a == 0 && L % b == 0; }
    int time_slots() const { return L / a; }
    int freq_slots() const { return L / b; }
    int point_count() const { return time_slots() * freq_slots(); }
    TFCell point(int n1, int n2) const { return TFCell::reduced(static_cast<std::int64_t>(n1) * a, static_cast<std::int64_t>(n2) * b, L); }

    void require_cyclic(const char* what) const;

    friend bool operator==(const Lattice&, const Lattice&) = default;
};

/// Receive filter g and transmit filter gamma.
struct PulsePair {
    Signal g;
    Signal gamma;
};

/// Raised when a window does not generate a frame on the requested lattice.
struct NotAFrame : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Eigenvalue floor below which the frame operator counts as singular.
inline constexpr double kFrameFloor = 1e-10;

/// Grid scaling: the divisor pair (a, b) of L with a b = L / density whose
/// ratio a/b is closest to ratio_target in log distance; ties go to the larger a.
Lattice make_lattice(int L, double density, double ratio_target);

/// (L/b, L/a): the adjoint lattice, with reciprocal density.
Lattice adjoint_lattice(const Lattice& lattice);

/// S = sum over lattice points lambda of (S_lambda gamma)(S_lambda gamma)^*.
CMatrix frame_operator(const Signal& gamma, const Lattice& lattice);

struct FrameBounds {
    double lower = 0;  ///< smallest eigenvalue of the frame operator
    double upper = 0;  ///< spectral radius, B_gamma
    double condition() const { return upper / lower; }
};
FrameBounds frame_quality(const Signal& gamma, const Lattice& lattice);

/// Canonical tight window: normalize((S / density)^{-1/2} gamma).
/// Lattices with density < 1 are handled on the adjoint lattice, which makes
/// the output an orthonormal generator on the original lattice.
/// Throws NotAFrame if the frame operator is (numerically) singular.
Signal tighten(const Signal& gamma, const Lattice& lattice);

/// Unit-norm periodized Gaussian exp(-pi t^2 / (r L)) centred at t = 0. Its
/// time/frequency spread ratio (samples over bins) is r; r = 1 is DFT-invariant.
Signal make_gaussian(int L, double spread_ratio);

struct CpOfdm {
    PulsePair pair;
    Lattice lattice;     ///< a = T_u + T_cp, b = L / T_u
    double efficiency;   ///< T_u / (T_u + T_cp)
};

/// Cyclic-prefix OFDM: gamma ~ 1 on [-T_cp, T_u), g ~ 1 on [0, T_u), both unit norm.
/// Requires T_u | L and T_u + T_cp <= L. When T_u + T_cp does not divide L the
/// lattice is a burst lattice with floor(L / (T_u + T_cp)) symbols.
CpOfdm make_cp_ofdm(int L, int useful, int prefix);

} // namespace pulsekit
