#pragma once

// WSSUS scattering statistics, channel realizations and the Weyl-Heisenberg
// signaling chain.
//
// Discrete dictionary: one grid cell has area 1/L, so a support of N cells
// has |U| = N / L. A realization is H = sum_mu coeff(mu) S_mu with
// E|coeff(mu)|^2 = p(mu); the matching continuous spreading density is
// L * coeff(mu) (see spreading_density()).

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pulsekit/gabor.hpp"
#include "pulsekit/types.hpp"

namespace pulsekit {

/// Probability masses p(mu) >= 0 on distinct cells, summing to one.
struct ScatteringMass {
    int L = 0;
    std::vector<TFCell> support;
    std::vector<double> mass;

    /// Validates and builds; cells are reduced mod L.
    static ScatteringMass make(int L, std::vector<TFCell> cells, std::vector<double> masses);
    static ScatteringMass delta(int L, TFCell at = {});

    std::size_t size() const { return support.size(); }
    double area() const { return static_cast<double>(support.size()) / L; }

    /// C~(mu) = C(-mu).
    ScatteringMass reflected() const;
    /// C(mu - offset).
    ScatteringMass shifted(TFCell offset) const;
};

/// Axis-aligned brick {0..tau_d} x {-B_D..B_D} with signed Doppler reduced mod L.
struct BrickSupport {
    int tau_d = 0;
    int doppler = 0;

    int cell_count() const { return (tau_d + 1) * (2 * doppler + 1); }
    double ratio() const { return static_cast<double>(tau_d + 1) / (2 * doppler + 1); }
};

/// Uniform mass on a brick support.
ScatteringMass make_brick_scattering(int tau_d, int doppler, int L);

/// Sum over mu of p(mu) |A_{g,gamma}(mu)|^2.
double localization_gain(const Signal& g, const Signal& gamma, const ScatteringMass& C);

/// L_{C,g} = sum p(mu) (S_mu^* g)(S_mu^* g)^*, so <gamma, L gamma> = localization_gain(g, gamma, C).
CMatrix localization_operator(const ScatteringMass& C, const Signal& g);

/// Q = sum p(mu) S_mu, the operator whose spreading function is C.
CMatrix q_operator(const ScatteringMass& C);

struct ChannelRealization {
    int L = 0;
    std::vector<TFCell> support;
    std::vector<cplx> coeffs;
};

/// Independent circular complex Gaussian coefficients with variance p(mu).
ChannelRealization draw_channel(const ScatteringMass& C, std::mt19937_64& rng);

/// H x = sum coeff(mu) S_mu x.
Signal apply_channel(const ChannelRealization& h, const Signal& x);

/// Continuous spreading density on the grid: L * coeff at support cells, zero elsewhere.
TFFunction spreading_density(const ChannelRealization& h);

/// Symbol L_H = F_s(spreading density). The identity channel has symbol 1.
TFFunction channel_symbol(const ChannelRealization& h);

/// Time-frequency slots n = (n1, n2) of a burst.
struct SlotGrid {
    std::vector<std::array<int, 2>> slots;

    /// Every slot of the lattice, n1 major.
    static SlotGrid full(const Lattice& lattice);
    std::size_t size() const { return slots.size(); }
};

/// Phase map for real-valued (OQAM) signaling: x_n = i^{e(n)} x^R_n.
enum class PhaseMap {
    Standard,     ///< e(n) = n1 + n2
    Alternative,  ///< e(n) = n1 + n2 + 2 n1 n2
};
int phase_exponent(PhaseMap map, int n1, int n2);

enum class SignalingMode { Complex, Real };

/// H_{m,n} = <S_{Lambda m} g, H S_{Lambda n} gamma>; in Real mode the entries are
/// Re(i^{e(n) - e(m)} H_{m,n}) (imaginary parts zero).
CMatrix channel_matrix(const ChannelRealization& h, const PulsePair& pair, const Lattice& lattice,
                       const SlotGrid& slots, SignalingMode mode, PhaseMap map = PhaseMap::Standard);

struct OqamResult {
    Eigen::VectorXd estimates;     ///< x~^R_m
    Eigen::VectorXd signal;        ///< H^R_{m,m} x^R_m
    Eigen::VectorXd interference;  ///< sum_{n != m} H^R_{m,n} x^R_n
    Eigen::VectorXd noise;         ///< Re(i^{-e(m)} <g_m, noise>)
};

/// One OQAM burst over all lattice slots: map, modulate, channel, white complex
/// Gaussian noise of variance noise_var per sample, demodulate. Requires density 2.
OqamResult oqam_roundtrip(const Eigen::VectorXd& symbols, const PulsePair& pair, const Lattice& lattice,
                          const ChannelRealization& h, double noise_var, std::mt19937_64& rng,
                          PhaseMap map = PhaseMap::Standard);

struct SinrBreakdown {
    double gain = 0;          ///< E|H_{0,0}|^2
    double interference = 0; ///< sum over nonzero lattice points
    double total = 0;         ///< gain + interference
    double sinr = 0;
};

/// WSSUS-averaged SINR, exact lattice sum in the cyclic model. Unit symbol variance.
SinrBreakdown analytic_sinr(const PulsePair& pair, const Lattice& lattice, const ScatteringMass& C, double noise_var);

/// gain / (noise_var + B_gamma - gain); throws std::domain_error when the denominator is not positive.
double sinr_lower_bound(double gain, double b_gamma, double noise_var);

// ---- Monte Carlo -----------------------------------------------------------

/// Deterministic sub-seed for (seed, index...) via splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

struct MeanEstimate {
    double mean = 0;
    double std_error = 0;
    int samples = 0;
};

/// Sample mean of |<g, H gamma>|^2 over independent draws of H, using apply_channel.
MeanEstimate sample_gain(const PulsePair& pair, const ScatteringMass& C, int trials, std::uint64_t seed);

struct SinrEstimate {
    MeanEstimate signal;
    MeanEstimate interference;
    double noise = 0;
    double sinr = 0;
};

/// Monte-Carlo SINR of slot 0 over random channels (ratio of averaged powers).
/// Noise enters through its known projected power: noise_var (complex) or noise_var / 2 (real).
SinrEstimate monte_carlo_sinr(const PulsePair& pair, const Lattice& lattice, const ScatteringMass& C,
                              double noise_var, int trials, std::uint64_t seed,
                              SignalingMode mode = SignalingMode::Real);

} // namespace pulsekit
