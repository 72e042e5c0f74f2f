#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace pulsekit {

using cplx = std::complex<double>;

/// A cyclic discrete signal of length L = size().
using Signal = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Reduce v into [0, L).
inline int wrap(std::int64_t v, int L)
{
    auto r = static_cast<int>(v % L);
    return r < 0 ? r + L : r;
}

/// exp(2 pi i j / L), with j reduced first so large products stay accurate.
inline cplx unit_root(std::int64_t j, int L)
{
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(wrap(j, L)) / L;
    return {std::cos(angle), std::sin(angle)};
}

/// Delay-Doppler coordinate: k samples of delay, l bins of Doppler, both mod L.
struct TFCell {
    int k = 0;
    int l = 0;

    static TFCell reduced(std::int64_t k, std::int64_t l, int L) { return {wrap(k, L), wrap(l, L)}; }

    friend bool operator==(const TFCell&, const TFCell&) = default;
};

inline TFCell add(TFCell a, TFCell b, int L) { return TFCell::reduced(a.k + b.k, a.l + b.l, L); }
inline TFCell negate(TFCell a, int L) { return TFCell::reduced(-a.k, -a.l, L); }

/// Complex function on the L x L delay-Doppler grid; row = delay, column = Doppler.
class TFFunction {
public:
    explicit TFFunction(int L) : values_(CMatrix::Zero(L, L)) {}
    explicit TFFunction(CMatrix values) : values_(std::move(values))
    {
        if (values_.rows() != values_.cols())
            throw std::invalid_argument("TFFunction: grid must be square");
    }

    int length() const { return static_cast<int>(values_.rows()); }

    cplx operator()(TFCell c) const { return values_(c.k, c.l); }
    cplx& operator()(TFCell c) { return values_(c.k, c.l); }

    const CMatrix& values() const { return values_; }
    CMatrix& values() { return values_; }

private:
    CMatrix values_;
};

} // namespace pulsekit
