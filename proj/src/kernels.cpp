#include "pulsekit/kernels.hpp"

#include <vector>

#include "fft.hpp"

namespace pulsekit::kernels {

namespace {

std::vector<cplx> twiddles(int L)
{
    std::vector<cplx> w(L);
    for (int j = 0; j < L; ++j)
        w[j] = unit_root(j, L);
    return w;
}

} // namespace

CMatrix ambiguity_grid(const Signal& g, const Signal& gamma)
{
    const int L = static_cast<int>(g.size());
    const detail::Fft fft(L, detail::Fft::Sign::Backward);
    CMatrix A(L, L);

#pragma omp parallel
    {
        std::vector<cplx> prod(L), row(L);
#pragma omp for schedule(static)
        for (int k = 0; k < L; ++k) {
            for (int t = 0; t < L; ++t)
                prod[t] = std::conj(g(t)) * gamma(wrap(t - k, L));
            fft.execute(prod.data(), row.data());
            for (int l = 0; l < L; ++l)
                A(k, l) = row[l];
        }
    }
    return A;
}

CMatrix weighted_gram(const CMatrix& windows, std::span<const double> weights)
{
    const Eigen::Map<const Eigen::VectorXd> w(weights.data(), static_cast<Eigen::Index>(weights.size()));
    CMatrix scaled = windows * w.cast<cplx>().asDiagonal();
    return scaled * windows.adjoint();
}

CMatrix weighted_frame_sum(const CMatrix& windows, std::span<const double> weights, int a, int b)
{
    const int L = static_cast<int>(windows.rows());
    const int n_windows = static_cast<int>(windows.cols());
    const int spacing = L / b;
    CMatrix S = CMatrix::Zero(L, L);

#pragma omp parallel
    {
        std::vector<cplx> corr(L), folded(a);
#pragma omp for schedule(static)
        for (int j = 0; j < b; ++j) {
            const int offset = j * spacing;
            std::fill(corr.begin(), corr.end(), cplx{0.0});
            for (int n = 0; n < n_windows; ++n) {
                const double w = weights[n];
                if (w == 0.0)
                    continue;
                const auto h = windows.col(n);
                for (int s = 0; s < L; ++s)
                    corr[s] += w * h(s) * std::conj(h(wrap(s + offset, L)));
            }
            std::fill(folded.begin(), folded.end(), cplx{0.0});
            for (int s = 0; s < L; ++s)
                folded[s % a] += corr[s];
            for (int t = 0; t < L; ++t)
                S(t, wrap(t + offset, L)) = static_cast<double>(spacing) * folded[t % a];
        }
    }
    return S;
}

std::vector<double> lattice_power(const CMatrix& ambiguity, std::span<const TFCell> cells, int a, int b)
{
    const int L = static_cast<int>(ambiguity.rows());
    const int n_cells = static_cast<int>(cells.size());
    std::vector<double> out(n_cells, 0.0);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < n_cells; ++j) {
        double acc = 0.0;
        for (int k = cells[j].k % a; k < L; k += a) {
            for (int l = cells[j].l % b; l < L; l += b)
                acc += std::norm(ambiguity(k, l));
        }
        out[j] = acc;
    }
    return out;
}

Signal apply_shifts(const Signal& x, std::span<const TFCell> cells, std::span<const cplx> coeffs)
{
    const int L = static_cast<int>(x.size());
    const auto w = twiddles(L);
    Signal y(L);

#pragma omp parallel for schedule(static)
    for (int t = 0; t < L; ++t) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const auto [k, l] = cells[j];
            acc += coeffs[j] * w[(static_cast<std::int64_t>(l) * t) % L] * x(wrap(t - k, L));
        }
        y(t) = acc;
    }
    return y;
}

} // namespace pulsekit::kernels
