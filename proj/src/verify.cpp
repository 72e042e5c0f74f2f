#include "pulsekit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "pulsekit/bounds.hpp"
#include "pulsekit/gabor.hpp"
#include "pulsekit/kernels.hpp"
#include "pulsekit/linalg.hpp"
#include "pulsekit/optim.hpp"
#include "pulsekit/reference.hpp"
#include "pulsekit/tfcore.hpp"
#include "pulsekit/wssus.hpp"

namespace pulsekit {

namespace {

class Suite {
public:
    explicit Suite(std::uint64_t seed) : rng_(seed) {}

    void check(const char* module, const char* name, double observed, double allowed)
    {
        results_.push_back({module, name, observed, allowed, observed <= allowed});
    }

    Signal random_unit(int L)
    {
        std::normal_distribution<double> n;
        Signal x(L);
        for (int t = 0; t < L; ++t)
            x(t) = {n(rng_), n(rng_)};
        return x / x.norm();
    }

    TFCell random_cell(int L)
    {
        std::uniform_int_distribution<int> u(0, L - 1);
        return {u(rng_), u(rng_)};
    }

    std::mt19937_64& rng() { return rng_; }
    std::vector<InvariantResult> take() { return std::move(results_); }

private:
    std::mt19937_64 rng_;
    std::vector<InvariantResult> results_;
};

Signal tight_window(const Signal& gamma, const Lattice& lattice, Fault fault)
{
    if (fault != Fault::TightenWithoutSqrt)
        return tighten(gamma, lattice);
    const auto eig = linalg::eigen_decomposition(frame_operator(gamma, lattice) / lattice.density());
    const Eigen::VectorXd inv = eig.values.cwiseInverse();
    Signal out = eig.vectors * (inv.asDiagonal() * (eig.vectors.adjoint() * gamma));
    return out / out.norm();
}

void core_identities(Suite& s)
{
    const int L = 16;
    const Signal g = s.random_unit(L), gamma = s.random_unit(L);
    const double energy = cross_ambiguity(g, gamma).values().cwiseAbs2().sum();
    s.check("tfcore", "moyal identity", std::abs(energy - L) / L, 1e-10);

    double iso = 0;
    for (int k = 0; k < L; ++k)
        for (int l = 0; l < L; ++l)
            iso = std::max(iso, std::abs(tf_shift(g, {k, l}).norm() - 1.0));
    s.check("tfcore", "shift isometry", iso, 1e-12);

    TFFunction F(L);
    for (int k = 0; k < L; ++k)
        F.values().row(k) = s.random_unit(L).transpose();
    const double invol = (symplectic_dft(symplectic_dft(F)).values() - F.values()).cwiseAbs().maxCoeff();
    s.check("tfcore", "symplectic transform involution", invol, 1e-12);

    const Lattice lat = Lattice::make(4, 2, L);
    const CMatrix S = frame_operator(gamma, lat);
    double comm = 0;
    for (int n1 = 0; n1 < lat.time_slots(); ++n1)
        for (int n2 = 0; n2 < lat.freq_slots(); ++n2) {
            const TFCell p = lat.point(n1, n2);
            comm = std::max(comm, (tf_shift(S * g, p) - S * tf_shift(g, p)).cwiseAbs().maxCoeff());
        }
    s.check("gabor", "frame operator commutes with lattice shifts", comm, 1e-12);
}

void kernel_agreement(Suite& s)
{
    const int L = 24;
    const Signal g = s.random_unit(L), gamma = s.random_unit(L);
    s.check("kernels", "ambiguity grid matches brute force",
            (kernels::ambiguity_grid(g, gamma) - reference::ambiguity_grid(g, gamma)).cwiseAbs().maxCoeff(), 1e-12);

    CMatrix windows(L, 3);
    for (int j = 0; j < 3; ++j)
        windows.col(j) = s.random_unit(L);
    const std::vector<double> w{0.5, 0.3, 0.2};
    s.check("kernels", "weighted frame sum matches brute force",
            (kernels::weighted_frame_sum(windows, w, 4, 3) - reference::weighted_frame_sum(windows, w, 4, 3))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

void tight_frames(Suite& s, Fault fault)
{
    const int L = 64;
    const Lattice lat = make_lattice(L, 2.0, 1.0);
    const Signal iota = tight_window(make_gaussian(L, static_cast<double>(lat.a) / lat.b), lat, fault);
    const CMatrix residual = frame_operator(iota, lat) - lat.density() * CMatrix::Identity(L, L);
    s.check("gabor", "tight window frame residual", residual.cwiseAbs().maxCoeff(), 1e-9);

    const auto C = make_brick_scattering(2, 2, L);
    const double noise = 0.01;
    const PulsePair pair{iota, iota};
    const double sinr = analytic_sinr(pair, lat, C, noise).sinr;
    const double bound =
        sinr_lower_bound(localization_gain(iota, iota, C), frame_quality(iota, lat).upper, noise);
    s.check("wssus", "lower bound is exact for tight frames", std::abs(sinr - bound) / sinr, 1e-6);
}

void wssus_statistics(Suite& s, std::uint64_t seed)
{
    const int L = 32;
    const auto C = make_brick_scattering(2, 1, L);
    const PulsePair pair{s.random_unit(L), s.random_unit(L)};
    const double gain = localization_gain(pair.g, pair.gamma, C);
    const auto est = sample_gain(pair, C, 10000, derive_seed(seed, 1));
    s.check("wssus", "sampled gain within 4 standard errors", std::abs(est.mean - gain) / est.std_error, 4.0);

    const Lattice lat = make_lattice(L, 2.0, 1.0);
    const auto mc = monte_carlo_sinr(pair, lat, C, 0.01, 8000, derive_seed(seed, 2));
    s.check("wssus", "OQAM signal power within 4 standard errors",
            std::abs(mc.signal.mean - gain / 2) / mc.signal.std_error, 4.0);
}

void lemma_checks(Suite& s)
{
    const int L = 64;
    const auto C = make_brick_scattering(2, 2, L);
    const Signal gauss = make_gaussian(L, 1.0);
    const PulsePair pair{gauss, gauss};
    for (const auto hp : {HoelderPair::make(2.0), HoelderPair::infinity()}) {
        double worst = 0;
        for (int draw = 0; draw < 20; ++draw) {
            const auto h = draw_channel(C, s.rng());
            std::vector<TFCell> mus;
            for (int i = 0; i < 10; ++i)
                mus.push_back(s.random_cell(L));
            worst = std::max(worst, e2_lemma1_check(h, pair, hp, mus).quotient());
        }
        s.check("bounds", std::isinf(hp.a) ? "approximate eigenstructure, a = inf" : "approximate eigenstructure, a = 2",
                worst, 1.0 + 1e-9);
    }

    double order = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 1000; ++i) {
        const auto b = lambda_max_bounds(std::numbers::e * i / 1000.0);
        order = std::max(order, b.lower - b.upper);
    }
    s.check("bounds", "lambda_max lower <= upper", order, 0.0);

    const double upper = lambda_max_bounds(C.area()).upper;
    const auto climb = mountain_climb(C, gauss);
    s.check("bounds", "gaussian gain below lambda_max upper bound", localization_gain(gauss, gauss, C), upper + 1e-9);
    s.check("bounds", "climbed gain below lambda_max upper bound",
            localization_gain(climb.pair.g, climb.pair.gamma, C), upper + 1e-9);

    double drop = 0;
    for (std::size_t i = 1; i < climb.trace.objective.size(); ++i)
        drop = std::max(drop, climb.trace.objective[i - 1] - climb.trace.objective[i]);
    s.check("optim", "mountain climb is non-decreasing", drop, 1e-12);

    const auto svd = svd_pulses(C);
    s.check("optim", "svd pair attains its bound", svd.lower_bound - localization_gain(svd.pair.g, svd.pair.gamma, C),
            1e-12);

    const Lattice lat = make_lattice(L, 2.0, 1.0);
    const auto sinr = sinr_iteration(C, lat, 0.01, climb.pair.g);
    double sinr_drop = 0;
    for (std::size_t i = 1; i < sinr.trace.objective.size(); ++i)
        sinr_drop = std::max(sinr_drop, sinr.trace.objective[i - 1] - sinr.trace.objective[i]);
    s.check("optim", "sinr iteration is non-decreasing", sinr_drop, 1e-9);
}

} // namespace

std::vector<InvariantResult> run_invariants(const VerifyOptions& opts)
{
    Suite s(opts.seed);
    core_identities(s);
    kernel_agreement(s);
    tight_frames(s, opts.fault);
    wssus_statistics(s, opts.seed);
    lemma_checks(s);
    return s.take();
}

bool all_pass(const std::vector<InvariantResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

void print_report(std::ostream& out, const std::vector<InvariantResult>& results)
{
    char line[256];
    for (const auto& r : results) {
        std::snprintf(line, sizeof line, "%-4s %-8s %-48s observed %.3e  allowed %.3e\n", r.pass ? "ok" : "FAIL",
                      r.module.c_str(), r.name.c_str(), r.observed, r.allowed);
        out << line;
    }
}

} // namespace pulsekit
