#include "pulsekit/tfcore.hpp"

#include <vector>

#include "fft.hpp"
#include "pulsekit/kernels.hpp"

namespace pulsekit {

Signal tf_shift(const Signal& x, TFCell mu)
{
    const int L = static_cast<int>(x.size());
    mu = TFCell::reduced(mu.k, mu.l, L);
    Signal y(L);
    for (int t = 0; t < L; ++t)
        y(t) = unit_root(static_cast<std::int64_t>(mu.l) * t, L) * x(wrap(t - mu.k, L));
    return y;
}

Signal tf_shift_adjoint(const Signal& x, TFCell mu)
{
    const int L = static_cast<int>(x.size());
    mu = TFCell::reduced(mu.k, mu.l, L);
    Signal y(L);
    for (int t = 0; t < L; ++t)
        y(t) = unit_root(-static_cast<std::int64_t>(mu.l) * (t + mu.k), L) * x(wrap(t + mu.k, L));
    return y;
}

TFFunction cross_ambiguity(const Signal& g, const Signal& gamma)
{
    if (g.size() != gamma.size())
        throw std::invalid_argument("cross_ambiguity: length mismatch");
    return TFFunction(kernels::ambiguity_grid(g, gamma));
}

cplx ambiguity_at(const Signal& g, const Signal& gamma, TFCell mu)
{
    if (g.size() != gamma.size())
        throw std::invalid_argument("ambiguity_at: length mismatch");
    const int L = static_cast<int>(g.size());
    mu = TFCell::reduced(mu.k, mu.l, L);
    cplx acc = 0.0;
    for (int t = 0; t < L; ++t)
        acc += std::conj(g(t)) * gamma(wrap(t - mu.k, L)) * unit_root(static_cast<std::int64_t>(mu.l) * t, L);
    return acc;
}

TFFunction symplectic_dft(const TFFunction& F)
{
    const int L = F.length();
    using detail::Fft;
    // Sum over nu_l carries exp(+2 pi i nu_l mu_k / L); sum over nu_k carries exp(-2 pi i nu_k mu_l / L).
    const Fft over_doppler(L, Fft::Sign::Backward);
    const Fft over_delay(L, Fft::Sign::Forward);

    // Y(nu_k, mu_k) = sum_{nu_l} F(nu_k, nu_l) exp(...)
    CMatrix Y(L, L);
    std::vector<cplx> in(L), out(L);
    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c)
            in[c] = F.values()(r, c);
        over_doppler.execute(in.data(), out.data());
        for (int c = 0; c < L; ++c)
            Y(r, c) = out[c];
    }
    // G(mu_k, mu_l) = (1/L) sum_{nu_k} Y(nu_k, mu_k) exp(...)
    TFFunction G(L);
    for (int mk = 0; mk < L; ++mk) {
        over_delay.execute(Y.col(mk).data(), out.data());
        for (int ml = 0; ml < L; ++ml)
            G.values()(mk, ml) = out[ml] / static_cast<double>(L);
    }
    return G;
}

} // namespace pulsekit
