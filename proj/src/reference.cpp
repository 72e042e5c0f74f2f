#include "pulsekit/reference.hpp"

#include "pulsekit/tfcore.hpp"

namespace pulsekit::reference {

CMatrix ambiguity_grid(const Signal& g, const Signal& gamma)
{
    const int L = static_cast<int>(g.size());
    CMatrix A(L, L);
    for (int k = 0; k < L; ++k)
        for (int l = 0; l < L; ++l) {
            cplx acc = 0.0;
            for (int t = 0; t < L; ++t)
                acc += std::conj(g(t)) * gamma(wrap(t - k, L)) * unit_root(static_cast<std::int64_t>(l) * t, L);
            A(k, l) = acc;
        }
    return A;
}

CMatrix weighted_gram(const CMatrix& windows, std::span<const double> weights)
{
    const auto L = windows.rows();
    CMatrix G = CMatrix::Zero(L, L);
    for (Eigen::Index j = 0; j < windows.cols(); ++j)
        for (Eigen::Index r = 0; r < L; ++r)
            for (Eigen::Index c = 0; c < L; ++c)
                G(r, c) += weights[j] * windows(r, j) * std::conj(windows(c, j));
    return G;
}

CMatrix weighted_frame_sum(const CMatrix& windows, std::span<const double> weights, int a, int b)
{
    const int L = static_cast<int>(windows.rows());
    CMatrix S = CMatrix::Zero(L, L);
    for (Eigen::Index j = 0; j < windows.cols(); ++j) {
        const Signal h = windows.col(j);
        for (int n1 = 0; n1 < L / a; ++n1)
            for (int n2 = 0; n2 < L / b; ++n2) {
                const Signal v = tf_shift(h, {n1 * a, n2 * b});
                S += weights[j] * v * v.adjoint();
            }
    }
    return S;
}

std::vector<double> lattice_power(const CMatrix& ambiguity, std::span<const TFCell> cells, int a, int b)
{
    const int L = static_cast<int>(ambiguity.rows());
    std::vector<double> out;
    for (const auto& mu : cells) {
        double acc = 0.0;
        for (int d1 = 0; d1 < L / a; ++d1)
            for (int d2 = 0; d2 < L / b; ++d2) {
                const auto c = TFCell::reduced(mu.k + d1 * a, mu.l + d2 * b, L);
                acc += std::norm(ambiguity(c.k, c.l));
            }
        out.push_back(acc);
    }
    return out;
}

Signal apply_shifts(const Signal& x, std::span<const TFCell> cells, std::span<const cplx> coeffs)
{
    Signal y = Signal::Zero(x.size());
    for (std::size_t j = 0; j < cells.size(); ++j)
        y += coeffs[j] * tf_shift(x, cells[j]);
    return y;
}

} // namespace pulsekit::reference
