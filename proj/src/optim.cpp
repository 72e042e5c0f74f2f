#include "pulsekit/optim.hpp"

#include <algorithm>
#include <cmath>

#include "pulsekit/kernels.hpp"
#include "pulsekit/linalg.hpp"
#include "pulsekit/tfcore.hpp"

namespace pulsekit {

namespace {

Signal unit(const Signal& x, const char* what)
{
    const double n = x.norm();
    if (!(n > 0))
        throw std::invalid_argument(std::string(what) + ": zero starting pulse");
    return x / n;
}

// Columns S_mu^* g for each support cell of C (the windows of L_{C,g}).
CMatrix adjoint_windows(const ScatteringMass& C, const Signal& g)
{
    CMatrix w(C.L, static_cast<Eigen::Index>(C.size()));
    for (std::size_t j = 0; j < C.size(); ++j)
        w.col(static_cast<Eigen::Index>(j)) = tf_shift_adjoint(g, C.support[j]);
    return w;
}

// Signal and interference-plus-noise forms of the SINR seen as a Rayleigh
// quotient in the free pulse, with the other pulse's shifted copies as windows.
linalg::TopEigen sinr_step(const CMatrix& windows, std::span<const double> weights, const Lattice& lattice,
                           double noise_var)
{
    const CMatrix signal = kernels::weighted_gram(windows, weights);
    CMatrix noise = kernels::weighted_frame_sum(windows, weights, lattice.a, lattice.b) - signal;
    noise.diagonal().array() += noise_var;
    return linalg::top_generalized_eigenpair(signal, noise);
}

void record(ClimbTrace& trace, double value, double gap)
{
    trace.objective.push_back(value);
    ++trace.iterations;
    trace.min_gap = std::min(trace.min_gap, gap);
}

} // namespace

EigenPulse max_eig_pulse(const ScatteringMass& C, const Signal& g)
{
    const auto top = linalg::top_eigenpair(localization_operator(C, g));
    return {top.vector, top.value, top.gap};
}

ClimbResult mountain_climb(const ScatteringMass& C, const Signal& g0, const ClimbOptions& opts)
{
    ClimbResult out;
    out.pair = {unit(g0, "mountain_climb"), unit(g0, "mountain_climb")};
    out.trace.objective.push_back(localization_gain(out.pair.g, out.pair.gamma, C));
    const ScatteringMass reflected = C.reflected();

    for (int it = 0; it < opts.max_iter; ++it) {
        const bool transmit_step = it % 2 == 0;
        const auto step = transmit_step ? max_eig_pulse(C, out.pair.g) : max_eig_pulse(reflected, out.pair.gamma);
        (transmit_step ? out.pair.gamma : out.pair.g) = step.pulse;
        const double previous = out.trace.objective.back();
        record(out.trace, step.value, step.gap);
        if (step.value - previous < opts.tol) {
            out.trace.converged = true;
            break;
        }
    }
    return out;
}

SvdPulses svd_pulses(const ScatteringMass& C)
{
    const auto top = linalg::top_singular_triple(q_operator(C));
    return {{top.left, top.right}, top.value * top.value};
}

ClimbResult sinr_iteration(const ScatteringMass& C, const Lattice& lattice, double noise_var, const Signal& g0,
                           const ClimbOptions& opts)
{
    lattice.require_cyclic("sinr_iteration");
    if (!(noise_var > 0))
        throw std::invalid_argument("sinr_iteration: noise variance must be positive");
    ClimbResult out;
    out.pair = {unit(g0, "sinr_iteration"), unit(g0, "sinr_iteration")};
    out.trace.objective.push_back(analytic_sinr(out.pair, lattice, C, noise_var).sinr);

    for (int it = 0; it < opts.max_iter; ++it) {
        const bool transmit_step = it % 2 == 0;
        CMatrix windows(C.L, static_cast<Eigen::Index>(C.size()));
        for (std::size_t j = 0; j < C.size(); ++j) {
            windows.col(static_cast<Eigen::Index>(j)) = transmit_step ? tf_shift_adjoint(out.pair.g, C.support[j])
                                                                      : tf_shift(out.pair.gamma, C.support[j]);
        }
        const auto step = sinr_step(windows, C.mass, lattice, noise_var);
        (transmit_step ? out.pair.gamma : out.pair.g) = step.vector;
        const double previous = out.trace.objective.back();
        record(out.trace, step.value, step.gap);
        if (step.value - previous < opts.tol) {
            out.trace.converged = true;
            break;
        }
    }
    return out;
}

PulsePair tighten_and_match(const ScatteringMass& C, const Lattice& lattice, const Signal& gamma)
{
    Signal tight = tighten(gamma, lattice);
    linalg::fix_phase(tight);
    const auto g = max_eig_pulse(C.reflected(), tight);
    return {g.pulse, tight};
}

TightResult localize_then_tighten(const ScatteringMass& C, const Lattice& lattice, const Signal& g0,
                                  const ClimbOptions& opts)
{
    auto climb = mountain_climb(C, g0, opts);
    return {tighten_and_match(C, lattice, climb.pair.gamma), std::move(climb.trace)};
}

} // namespace pulsekit
