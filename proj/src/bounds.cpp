#include "pulsekit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pulsekit/tfcore.hpp"

namespace pulsekit {

namespace {

double erf_ratio(double area)
{
    const double e = std::erf(std::sqrt(std::numbers::pi * area / 4.0));
    return e * e * e * e;
}

} // namespace

HoelderPair HoelderPair::make(double a)
{
    if (!(a > 1))
        throw std::invalid_argument("HoelderPair: a must exceed 1");
    return {a, std::isinf(a) ? 1.0 : a / (a - 1.0)};
}

LocalizationBounds lambda_max_bounds(double area)
{
    if (!(area > 0))
        throw std::invalid_argument("lambda_max_bounds: area must be positive");
    return {erf_ratio(area) / (area * area), std::min(std::exp(-area / std::numbers::e), 1.0 / area)};
}

E2Error e2_error(const ChannelRealization& h, const PulsePair& pair, TFCell mu)
{
    const Signal response = apply_channel(h, tf_shift(pair.gamma, mu));
    const Signal probe = tf_shift(pair.g, mu);
    const cplx lambda = inner(probe, response);
    return {lambda, (response - lambda * probe).norm()};
}

double spreading_norm(const ChannelRealization& h, const HoelderPair& hp)
{
    double acc = 0;
    for (const cplx& c : h.coeffs) {
        const double v = std::abs(c) * h.L;
        acc = std::isinf(hp.a) ? std::max(acc, v) : acc + std::pow(v, hp.a);
    }
    return std::isinf(hp.a) ? acc : std::pow(acc / h.L, 1.0 / hp.a);
}

E2BoundReport e2_lemma1_check(const ChannelRealization& h, const PulsePair& pair, const HoelderPair& hp,
                             std::span<const TFCell> mus)
{
    const double area = static_cast<double>(h.support.size()) / h.L;
    if (area > 1)
        throw std::invalid_argument("e2_lemma1_check: support area exceeds 1");

    double captured = 0;
    for (const TFCell& mu : h.support)
        captured += std::norm(ambiguity_at(pair.g, pair.gamma, mu));
    captured /= h.L;

    E2BoundReport report;
    report.rhs = std::pow(std::max(area - captured, 0.0), hp.exponent());
    const double norm = spreading_norm(h, hp);
    if (norm > 0) {
        for (const TFCell& mu : mus)
            report.max_ratio = std::max(report.max_ratio, e2_error(h, pair, mu).error / norm);
    }
    report.pass = report.max_ratio <= report.rhs + 1e-9;
    return report;
}

SinrStarBounds sinr_star_bounds(double noise_var, double density, double area)
{
    SinrStarBounds out;
    const double load = noise_var + density;
    if (area <= std::numbers::e)
        out.upper = 1.0 / (load * std::exp(area / std::numbers::e) - 1.0);
    out.lower_noblt = 1.0 / (load * area / erf_ratio(area) - 1.0);
    return out;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

} // namespace pulsekit
