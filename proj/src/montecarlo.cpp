#include <cmath>

#include "pulsekit/kernels.hpp"
#include "pulsekit/tfcore.hpp"
#include "pulsekit/wssus.hpp"

namespace pulsekit {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

cplx i_pow(int e)
{
    static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[wrap(e, 4)];
}

MeanEstimate summarize(const std::vector<double>& v)
{
    MeanEstimate out;
    out.samples = static_cast<int>(v.size());
    if (v.empty())
        return out;
    double sum = 0.0;
    for (double x : v)
        sum += x;
    out.mean = sum / v.size();
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v)
            ss += (x - out.mean) * (x - out.mean);
        out.std_error = std::sqrt(ss / (v.size() - 1) / v.size());
    }
    return out;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return splitmix64(h ^ c);
}

MeanEstimate sample_gain(const PulsePair& pair, const ScatteringMass& C, int trials, std::uint64_t seed)
{
    if (trials <= 0)
        throw std::invalid_argument("sample_gain: trials must be positive");
    std::vector<double> values(trials);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < trials; ++i) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        const auto h = draw_channel(C, rng);
        values[i] = std::norm(inner(pair.g, apply_channel(h, pair.gamma)));
    }
    return summarize(values);
}

SinrEstimate monte_carlo_sinr(const PulsePair& pair, const Lattice& lattice, const ScatteringMass& C,
                              double noise_var, int trials, std::uint64_t seed, SignalingMode mode)
{
    lattice.require_cyclic("monte_carlo_sinr");
    if (trials <= 0)
        throw std::invalid_argument("monte_carlo_sinr: trials must be positive");
    const int L = lattice.L;
    const CMatrix A = kernels::ambiguity_grid(pair.g, pair.gamma);
    const auto slots = SlotGrid::full(lattice);
    const auto n_points = static_cast<Eigen::Index>(slots.size());
    const auto n_cells = static_cast<Eigen::Index>(C.size());

    // H_{0,n} = sum_mu coeff(mu) <g, S_mu S_{Lambda n} gamma>
    //         = sum_mu coeff(mu) phase(mu, Lambda n) A(mu + Lambda n).
    CMatrix response(n_points, n_cells);
    std::vector<cplx> unmap(n_points);
    for (Eigen::Index p = 0; p < n_points; ++p) {
        const auto [n1, n2] = slots.slots[p];
        const TFCell point = lattice.point(n1, n2);
        unmap[p] = i_pow(phase_exponent(PhaseMap::Standard, n1, n2));
        for (Eigen::Index j = 0; j < n_cells; ++j) {
            const TFCell mu = C.support[j];
            const TFCell shifted = add(mu, point, L);
            response(p, j) = shift_product_phase(mu, point, L) * A(shifted.k, shifted.l);
        }
    }

    constexpr int chunk = 256;
    const int n_chunks = (trials + chunk - 1) / chunk;
    std::vector<double> signal(trials), interference(trials);

#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < n_chunks; ++c) {
        const int first = c * chunk;
        const int count = std::min(chunk, trials - first);
        CMatrix coeffs(n_cells, count);
        for (int i = 0; i < count; ++i) {
            std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(first + i)));
            const auto h = draw_channel(C, rng);
            for (Eigen::Index j = 0; j < n_cells; ++j)
                coeffs(j, i) = h.coeffs[j];
        }
        const CMatrix H0 = response * coeffs;
        for (int i = 0; i < count; ++i) {
            double sig = 0.0, intf = 0.0;
            for (Eigen::Index p = 0; p < n_points; ++p) {
                const double power = mode == SignalingMode::Real ? std::pow((unmap[p] * H0(p, i)).real(), 2)
                                                                 : std::norm(H0(p, i));
                (p == 0 ? sig : intf) += power;
            }
            signal[first + i] = sig;
            interference[first + i] = intf;
        }
    }

    SinrEstimate out;
    out.signal = summarize(signal);
    out.interference = summarize(interference);
    out.noise = mode == SignalingMode::Real ? noise_var / 2.0 : noise_var;
    out.sinr = out.signal.mean / (out.noise + out.interference.mean);
    return out;
}

} // namespace pulsekit
