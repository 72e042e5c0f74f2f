#pragma once

// Closed-form localization and SINR bounds, and approximate-eigenstructure errors.
//
// Grid dictionary: a cell has area 1/L, so |U| = N / L and integrals over U
// become (1/L) * sum over cells. A realization with coefficients c(mu) has
// spreading density L * c(mu).

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "pulsekit/gabor.hpp"
#include "pulsekit/wssus.hpp"

namespace pulsekit {

/// Exponents 1/a + 1/b = 1 with a in (1, inf].
struct HoelderPair {
    double a = 2;
    double b = 2;

    static HoelderPair make(double a);
    static HoelderPair infinity() { return make(std::numeric_limits<double>::infinity()); }
    double exponent() const { return 1.0 / std::max(b, 2.0); }
};

struct LocalizationBounds {
    double lower = 0;
    double upper = 0;
};

/// lower = erf(sqrt(pi |U| / 4))^4 / |U|^2, upper = min(exp(-|U| / e), 1 / |U|).
LocalizationBounds lambda_max_bounds(double area);

struct E2Error {
    cplx lambda;      ///< <S_mu g, H S_mu gamma>
    double error = 0; ///< || H S_mu gamma - lambda S_mu g ||_2
};
E2Error e2_error(const ChannelRealization& h, const PulsePair& pair, TFCell mu);

/// || Sigma_H ||_a for the spreading density L * c on cells of area 1/L.
double spreading_norm(const ChannelRealization& h, const HoelderPair& hp);

struct E2BoundReport {
    double max_ratio = 0;  ///< max over mu of E_2 / ||Sigma_H||_a
    double rhs = 0;        ///< (|U| - int_U |A|^2)^(1 / max(b, 2))
    bool pass = false;
    double quotient() const { return rhs > 0 ? max_ratio / rhs : (max_ratio > 0 ? std::numeric_limits<double>::infinity() : 0.0); }
};

/// Support U is the realization's support; requires |U| <= 1.
E2BoundReport e2_lemma1_check(const ChannelRealization& h, const PulsePair& pair, const HoelderPair& hp,
                             std::span<const TFCell> mus);

struct SinrStarBounds {
    std::optional<double> upper;  ///< present when |U| <= e
    double lower_noblt = 0;
};

/// upper = 1 / ((s2 + D) exp(|U| / e) - 1); lower_noblt = 1 / ((s2 + D) |U| / erf(sqrt(pi |U| / 4))^4 - 1).
SinrStarBounds sinr_star_bounds(double noise_var, double density, double area);

double to_db(double linear);
double from_db(double db);

} // namespace pulsekit
