#include "pulsekit/wssus.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "pulsekit/kernels.hpp"
#include "pulsekit/tfcore.hpp"

namespace pulsekit {

namespace {

cplx i_pow(int e)
{
    switch (wrap(e, 4)) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

} // namespace

ScatteringMass ScatteringMass::make(int L, std::vector<TFCell> cells, std::vector<double> masses)
{
    if (L <= 0)
        throw std::invalid_argument("ScatteringMass: L must be positive");
    if (cells.empty() || cells.size() != masses.size())
        throw std::invalid_argument("ScatteringMass: need one mass per support cell");
    std::set<std::pair<int, int>> seen;
    double sum = 0.0;
    for (std::size_t j = 0; j < cells.size(); ++j) {
        cells[j] = TFCell::reduced(cells[j].k, cells[j].l, L);
        if (!seen.emplace(cells[j].k, cells[j].l).second)
            throw std::invalid_argument("ScatteringMass: duplicate support cell");
        if (!(masses[j] >= 0.0))
            throw std::invalid_argument("ScatteringMass: masses must be non-negative");
        sum += masses[j];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("ScatteringMass: masses must sum to one");
    return {L, std::move(cells), std::move(masses)};
}

ScatteringMass ScatteringMass::delta(int L, TFCell at) { return make(L, {at}, {1.0}); }

ScatteringMass ScatteringMass::reflected() const
{
    ScatteringMass out = *this;
    for (auto& c : out.support)
        c = negate(c, L);
    return out;
}

ScatteringMass ScatteringMass::shifted(TFCell offset) const
{
    ScatteringMass out = *this;
    for (auto& c : out.support)
        c = add(c, offset, L);
    return out;
}

ScatteringMass make_brick_scattering(int tau_d, int doppler, int L)
{
    if (tau_d < 0 || doppler < 0)
        throw std::invalid_argument("make_brick_scattering: extents must be non-negative");
    if (tau_d + 1 > L || 2 * doppler + 1 > L)
        throw std::invalid_argument("make_brick_scattering: brick does not fit on the L x L grid");
    const BrickSupport brick{tau_d, doppler};
    const int n = brick.cell_count();
    std::vector<TFCell> cells;
    cells.reserve(n);
    for (int k = 0; k <= tau_d; ++k)
        for (int l = -doppler; l <= doppler; ++l)
            cells.push_back(TFCell::reduced(k, l, L));
    return ScatteringMass::make(L, std::move(cells), std::vector<double>(n, 1.0 / n));
}

double localization_gain(const Signal& g, const Signal& gamma, const ScatteringMass& C)
{
    if (g.size() != C.L || gamma.size() != C.L)
        throw std::invalid_argument("localization_gain: length mismatch");
    double acc = 0.0;
    for (std::size_t j = 0; j < C.size(); ++j)
        acc += C.mass[j] * std::norm(ambiguity_at(g, gamma, C.support[j]));
    return acc;
}

CMatrix localization_operator(const ScatteringMass& C, const Signal& g)
{
    if (g.size() != C.L)
        throw std::invalid_argument("localization_operator: length mismatch");
    CMatrix windows(C.L, static_cast<Eigen::Index>(C.size()));
    for (std::size_t j = 0; j < C.size(); ++j)
        windows.col(static_cast<Eigen::Index>(j)) = tf_shift_adjoint(g, C.support[j]);
    return kernels::weighted_gram(windows, C.mass);
}

CMatrix q_operator(const ScatteringMass& C)
{
    const int L = C.L;
    CMatrix Q = CMatrix::Zero(L, L);
    for (std::size_t j = 0; j < C.size(); ++j) {
        const auto [k, l] = C.support[j];
        for (int t = 0; t < L; ++t)
            Q(t, wrap(t - k, L)) += C.mass[j] * unit_root(static_cast<std::int64_t>(l) * t, L);
    }
    return Q;
}

ChannelRealization draw_channel(const ScatteringMass& C, std::mt19937_64& rng)
{
    ChannelRealization h{C.L, C.support, {}};
    h.coeffs.reserve(C.size());
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double p : C.mass) {
        const double s = std::sqrt(p / 2.0);
        const double re = normal(rng);
        const double im = normal(rng);
        h.coeffs.emplace_back(s * re, s * im);
    }
    return h;
}

Signal apply_channel(const ChannelRealization& h, const Signal& x)
{
    if (x.size() != h.L)
        throw std::invalid_argument("apply_channel: length mismatch");
    return kernels::apply_shifts(x, h.support, h.coeffs);
}

TFFunction spreading_density(const ChannelRealization& h)
{
    TFFunction grid(h.L);
    for (std::size_t j = 0; j < h.support.size(); ++j)
        grid(h.support[j]) += static_cast<double>(h.L) * h.coeffs[j];
    return grid;
}

TFFunction channel_symbol(const ChannelRealization& h) { return symplectic_dft(spreading_density(h)); }

SlotGrid SlotGrid::full(const Lattice& lattice)
{
    SlotGrid grid;
    grid.slots.reserve(lattice.point_count());
    for (int n1 = 0; n1 < lattice.time_slots(); ++n1)
        for (int n2 = 0; n2 < lattice.freq_slots(); ++n2)
            grid.slots.push_back({n1, n2});
    return grid;
}

int phase_exponent(PhaseMap map, int n1, int n2)
{
    const int base = n1 + n2;
    return wrap(map == PhaseMap::Standard ? base : base + 2 * n1 * n2, 4);
}

CMatrix channel_matrix(const ChannelRealization& h, const PulsePair& pair, const Lattice& lattice,
                       const SlotGrid& slots, SignalingMode mode, PhaseMap map)
{
    const int L = lattice.L;
    if (pair.g.size() != L || pair.gamma.size() != L || h.L != L)
        throw std::invalid_argument("channel_matrix: length mismatch");
    const auto n = static_cast<Eigen::Index>(slots.size());
    CMatrix rx(L, n), tx(L, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto [n1, n2] = slots.slots[j];
        if (n1 < 0 || n2 < 0 || n1 >= lattice.time_slots() || n2 >= lattice.freq_slots())
            throw std::invalid_argument("channel_matrix: slot outside the lattice grid");
        const TFCell point = lattice.point(n1, n2);
        rx.col(j) = tf_shift(pair.g, point);
        tx.col(j) = apply_channel(h, tf_shift(pair.gamma, point));
    }
    CMatrix H = rx.adjoint() * tx;
    if (mode == SignalingMode::Real) {
        for (Eigen::Index m = 0; m < n; ++m)
            for (Eigen::Index k = 0; k < n; ++k) {
                const int e = phase_exponent(map, slots.slots[k][0], slots.slots[k][1]) -
                              phase_exponent(map, slots.slots[m][0], slots.slots[m][1]);
                H(m, k) = (i_pow(e) * H(m, k)).real();
            }
    }
    return H;
}

OqamResult oqam_roundtrip(const Eigen::VectorXd& symbols, const PulsePair& pair, const Lattice& lattice,
                          const ChannelRealization& h, double noise_var, std::mt19937_64& rng, PhaseMap map)
{
    lattice.require_cyclic("oqam_roundtrip");
    if (std::abs(lattice.density() - 2.0) > 1e-12)
        throw std::invalid_argument("oqam_roundtrip: OQAM requires lattice density 2");
    const auto slots = SlotGrid::full(lattice);
    const auto n = static_cast<Eigen::Index>(slots.size());
    if (symbols.size() != n)
        throw std::invalid_argument("oqam_roundtrip: one real symbol per lattice slot required");
    const int L = lattice.L;

    CMatrix rx(L, n);
    Signal s = Signal::Zero(L);
    std::vector<int> expo(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto [n1, n2] = slots.slots[j];
        const TFCell point = lattice.point(n1, n2);
        expo[j] = phase_exponent(map, n1, n2);
        rx.col(j) = tf_shift(pair.g, point);
        s += i_pow(expo[j]) * symbols(j) * tf_shift(pair.gamma, point);
    }
    const Signal r_clean = apply_channel(h, s);

    Signal w(L);
    std::normal_distribution<double> normal(0.0, std::sqrt(noise_var / 2.0));
    for (int t = 0; t < L; ++t) {
        const double re = normal(rng);
        const double im = normal(rng);
        w(t) = {re, im};
    }

    const Eigen::VectorXcd y_clean = rx.adjoint() * r_clean;
    const Eigen::VectorXcd y_noise = rx.adjoint() * w;

    OqamResult out{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (Eigen::Index m = 0; m < n; ++m) {
        const auto [n1, n2] = slots.slots[m];
        const cplx unmap = i_pow(-expo[m]);
        const double clean = (unmap * y_clean(m)).real();
        const double direct = inner(rx.col(m), apply_channel(h, tf_shift(pair.gamma, lattice.point(n1, n2)))).real();
        out.signal(m) = direct * symbols(m);
        out.interference(m) = clean - out.signal(m);
        out.noise(m) = (unmap * y_noise(m)).real();
        out.estimates(m) = clean + out.noise(m);
    }
    return out;
}

SinrBreakdown analytic_sinr(const PulsePair& pair, const Lattice& lattice, const ScatteringMass& C, double noise_var)
{
    lattice.require_cyclic("analytic_sinr");
    if (pair.g.size() != lattice.L || pair.gamma.size() != lattice.L || C.L != lattice.L)
        throw std::invalid_argument("analytic_sinr: length mismatch");
    const CMatrix A = kernels::ambiguity_grid(pair.g, pair.gamma);
    const auto power = kernels::lattice_power(A, C.support, lattice.a, lattice.b);
    SinrBreakdown out;
    for (std::size_t j = 0; j < C.size(); ++j) {
        const auto [k, l] = C.support[j];
        out.gain += C.mass[j] * std::norm(A(k, l));
        out.total += C.mass[j] * power[j];
    }
    out.interference = std::max(0.0, out.total - out.gain);
    out.sinr = out.gain / (noise_var + out.interference);
    return out;
}

double sinr_lower_bound(double gain, double b_gamma, double noise_var)
{
    const double denom = noise_var + b_gamma - gain;
    if (!(denom > 0.0))
        throw std::domain_error("sinr_lower_bound: non-positive denominator (gain exceeds B_gamma + noise)");
    return gain / denom;
}

} // namespace pulsekit
