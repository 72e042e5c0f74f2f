#include "pulsekit/gabor.hpp"

#include <cmath>
#include <limits>

#include "pulsekit/kernels.hpp"
#include "pulsekit/linalg.hpp"

namespace pulsekit {

Lattice Lattice::make(int a, int b, int L)
{
    if (L <= 0 || a <= 0 || b <= 0)
        throw std::invalid_argument("Lattice: a, b and L must be positive");
    if (a > L || L % b != 0)
        throw std::invalid_argument("Lattice: b must divide L and a must not exceed L");
    return {a, b, L};
}

void Lattice::require_cyclic(const char* what) const
{
    if (!cyclic())
        throw std::invalid_argument(std::string(what) + ": lattice (" + std::to_string(a) + ", " +
                                    std::to_string(b) + ") is not cyclic for L = " + std::to_string(L));
}

Lattice make_lattice(int L, double density, double ratio_target)
{
    if (L <= 0 || !(density > 0) || !(ratio_target > 0))
        throw std::invalid_argument("make_lattice: L, density and ratio_target must be positive");
    const double product_real = L / density;
    const auto product = static_cast<long long>(std::llround(product_real));
    if (product <= 0 || std::abs(product_real - static_cast<double>(product)) > 1e-9 * product_real)
        throw std::invalid_argument("make_lattice: L / density is not an integer");

    const double target = std::log(ratio_target);
    Lattice best{};
    double best_dist = std::numeric_limits<double>::infinity();
    for (int a = 1; a <= L; ++a) {
        if (L % a != 0 || product % a != 0)
            continue;
        const long long b = product / a;
        if (b > L || L % b != 0)
            continue;
        const double dist = std::abs(std::log(static_cast<double>(a) / static_cast<double>(b)) - target);
        // Ascending a, so "<=" within rounding keeps the larger a on ties.
        if (dist <= best_dist + 1e-12) {
            best_dist = std::min(dist, best_dist);
            best = {a, static_cast<int>(b), L};
        }
    }
    if (!std::isfinite(best_dist))
        throw std::invalid_argument("make_lattice: no divisor pair of L has product L / density");
    return best;
}

Lattice adjoint_lattice(const Lattice& lattice)
{
    lattice.require_cyclic("adjoint_lattice");
    return {lattice.L / lattice.b, lattice.L / lattice.a, lattice.L};
}

CMatrix frame_operator(const Signal& gamma, const Lattice& lattice)
{
    lattice.require_cyclic("frame_operator");
    if (gamma.size() != lattice.L)
        throw std::invalid_argument("frame_operator: length mismatch");
    const double one = 1.0;
    return kernels::weighted_frame_sum(gamma, {&one, 1}, lattice.a, lattice.b);
}

FrameBounds frame_quality(const Signal& gamma, const Lattice& lattice)
{
    const auto ev = linalg::eigenvalues(frame_operator(gamma, lattice));
    return {ev(0), ev(ev.size() - 1)};
}

Signal tighten(const Signal& gamma, const Lattice& lattice)
{
    lattice.require_cyclic("tighten");
    const Lattice work = lattice.density() < 1.0 ? adjoint_lattice(lattice) : lattice;
    const double norm = gamma.norm();
    if (!(norm > 0))
        throw NotAFrame("tighten: zero window");
    const Signal unit = gamma / norm;

    const CMatrix scaled = frame_operator(unit, work) / work.density();
    const auto eig = linalg::eigen_decomposition(scaled);
    if (eig.values(0) <= kFrameFloor)
        throw NotAFrame("tighten: window does not generate a frame (smallest eigenvalue " +
                        std::to_string(eig.values(0)) + ")");
    const Eigen::VectorXd inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
    Signal out = eig.vectors * (inv_sqrt.cast<cplx>().asDiagonal() * (eig.vectors.adjoint() * unit));
    out.normalize();
    return out;
}

Signal make_gaussian(int L, double spread_ratio)
{
    if (L <= 0 || !(spread_ratio > 0))
        throw std::invalid_argument("make_gaussian: L and spread_ratio must be positive");
    const double width = spread_ratio * L;
    // Periodize far enough that dropped terms are below exp(-50).
    const int reps = static_cast<int>(std::ceil(std::sqrt(50.0 * width / std::numbers::pi) / L)) + 1;
    Signal g(L);
    for (int t = 0; t < L; ++t) {
        double acc = 0.0;
        for (int n = -reps; n <= reps; ++n) {
            const double s = t + static_cast<double>(n) * L;
            acc += std::exp(-std::numbers::pi * s * s / width);
        }
        g(t) = acc;
    }
    g.normalize();
    return g;
}

CpOfdm make_cp_ofdm(int L, int useful, int prefix)
{
    if (useful <= 0 || prefix < 0 || L <= 0)
        throw std::invalid_argument("make_cp_ofdm: T_u must be positive and T_cp non-negative");
    if (L % useful != 0)
        throw std::invalid_argument("make_cp_ofdm: T_u must divide L");
    if (useful + prefix > L)
        throw std::invalid_argument("make_cp_ofdm: symbol longer than L");

    Signal gamma = Signal::Zero(L), g = Signal::Zero(L);
    for (int t = -prefix; t < useful; ++t)
        gamma(wrap(t, L)) = 1.0;
    for (int t = 0; t < useful; ++t)
        g(t) = 1.0;
    gamma.normalize();
    g.normalize();
    const Lattice lattice = Lattice::make(useful + prefix, L / useful, L);
    return {{g, gamma}, lattice, static_cast<double>(useful) / (useful + prefix)};
}

} // namespace pulsekit
