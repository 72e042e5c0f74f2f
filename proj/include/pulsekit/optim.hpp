#pragma once

// Pulse design by eigen-localization: single-sided eigen steps, alternating
// ("mountain climbing") gain optimization, the one-shot SVD lower bound,
// the generalized-eigenvalue SINR iteration and localize-then-tighten.

#include <limits>
#include <vector>

#include "pulsekit/gabor.hpp"
#include "pulsekit/wssus.hpp"

namespace pulsekit {

struct EigenPulse {
    Signal pulse;      ///< unit norm, largest-magnitude sample real positive
    double value = 0;  ///< top eigenvalue = attained objective
    double gap = 0;    ///< spectral gap to the next eigenvalue
};

/// Transmit pulse maximizing localization_gain(g, ., C): top eigenvector of L_{C,g}.
/// For the receive side call it with C.reflected() and the transmit pulse.
EigenPulse max_eig_pulse(const ScatteringMass& C, const Signal& g);

/// Gaps below this are reported as near-degenerate.
inline constexpr double kDegenerateGap = 1e-8;

struct ClimbTrace {
    /// objective[0] is the starting value, then one entry per eigen step.
    std::vector<double> objective;
    int iterations = 0;  ///< eigen steps taken
    bool converged = false;
    double min_gap = std::numeric_limits<double>::infinity();

    bool near_degenerate() const { return min_gap < kDegenerateGap; }
};

struct ClimbOptions {
    double tol = 1e-9;
    int max_iter = 50;
};

struct ClimbResult {
    PulsePair pair;
    ClimbTrace trace;
};

/// Alternating maximization of the localization gain starting from receive pulse g0.
/// Each eigen step counts as one iteration; the first step updates gamma.
/// Stops when a step improves the objective by less than tol.
ClimbResult mountain_climb(const ScatteringMass& C, const Signal& g0, const ClimbOptions& opts = {});

struct SvdPulses {
    PulsePair pair;
    double lower_bound = 0;  ///< sigma_max(Q)^2 <= localization_gain(pair)
};
SvdPulses svd_pulses(const ScatteringMass& C);

/// Alternating generalized-eigenvector maximization of the analytic SINR on a
/// lattice with density >= 1. Objective values are analytic SINRs.
ClimbResult sinr_iteration(const ScatteringMass& C, const Lattice& lattice, double noise_var, const Signal& g0,
                           const ClimbOptions& opts = {});

/// Tighten gamma on the lattice, then match g = max_eig_pulse(C~, gamma°).
PulsePair tighten_and_match(const ScatteringMass& C, const Lattice& lattice, const Signal& gamma);

struct TightResult {
    PulsePair pair;
    ClimbTrace climb;
};

/// mountain_climb from g0 followed by tighten_and_match on its transmit pulse.
TightResult localize_then_tighten(const ScatteringMass& C, const Lattice& lattice, const Signal& g0,
                                  const ClimbOptions& opts = {});

} // namespace pulsekit
