#include <doctest.h>

#include "helpers.hpp"
#include "pulsekit/tfcore.hpp"

using namespace pulsekit;
using namespace testutil;

TEST_CASE("tf_shift basic actions")
{
    std::mt19937_64 rng(1);
    const Signal x = random_signal(8, rng);
    CHECK(max_abs(tf_shift(x, {0, 0}) - x) == 0.0);

    Signal impulse = Signal::Zero(8);
    impulse(0) = 1;
    Signal expected = Signal::Zero(8);
    expected(3) = 1;
    CHECK(max_abs(tf_shift(impulse, {3, 0}) - expected) < 1e-15);

    SUBCASE("negative and oversized coordinates reduce mod L")
    {
        CHECK(max_abs(tf_shift(x, {-3, 10}) - tf_shift(x, {5, 2})) < 1e-13);
    }
}

TEST_CASE("composition of pure delays and pure modulations")
{
    std::mt19937_64 rng(2);
    const int L = 8;
    const Signal x = random_signal(L, rng);
    for (int k = 0; k < L; ++k)
        for (int l = 0; l < L; ++l) {
            const Signal joint = tf_shift(x, {k, l});
            CHECK(max_abs(tf_shift(tf_shift(x, {k, 0}), {0, l}) - joint) < 1e-12);
            const Signal swapped = tf_shift(tf_shift(x, {0, l}), {k, 0});
            CHECK(max_abs(swapped - expi(-static_cast<double>(l) * k / L) * joint) < 1e-12);
        }
}

TEST_CASE("tf_shift matches its matrix and the adjoint inverts it")
{
    std::mt19937_64 rng(3);
    const int L = 12;
    const Signal x = random_signal(L, rng);
    for (int k = 0; k < L; k += 5)
        for (int l = 0; l < L; l += 3) {
            const CMatrix S = shift_matrix(L, k, l);
            CHECK(max_abs(tf_shift(x, {k, l}) - S * x) < 1e-13);
            CHECK(max_abs(tf_shift_adjoint(x, {k, l}) - S.adjoint() * x) < 1e-13);
            CHECK(max_abs(tf_shift_adjoint(tf_shift(x, {k, l}), {k, l}) - x) < 1e-13);
        }
}

TEST_CASE("shift product rule")
{
    const int L = 10;
    for (int a = 0; a < L; a += 3)
        for (int b = 0; b < L; b += 4)
            for (int c = 1; c < L; c += 5)
                for (int d = 2; d < L; d += 3) {
                    const CMatrix lhs = shift_matrix(L, a, b) * shift_matrix(L, c, d);
                    const CMatrix rhs = shift_product_phase({a, b}, {c, d}, L) * shift_matrix(L, (a + c) % L, (b + d) % L);
                    CHECK(max_abs(lhs - rhs) < 1e-12);
                }
}

TEST_CASE("shift isometry over random signals and all cells")
{
    std::mt19937_64 rng(4);
    const int L = 16;
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Signal x = random_signal(L, rng, false);
        for (int k = 0; k < L; ++k)
            for (int l = 0; l < L; ++l)
                worst = std::max(worst, std::abs(tf_shift(x, {k, l}).norm() - x.norm()) / x.norm());
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("cross ambiguity")
{
    std::mt19937_64 rng(5);
    SUBCASE("matches the defining sum")
    {
        for (int L : {4, 7, 8, 16}) {
            const Signal g = random_signal(L, rng), gamma = random_signal(L, rng);
            CHECK(max_abs(cross_ambiguity(g, gamma).values() - brute_ambiguity(g, gamma)) < 1e-12);
        }
    }
    SUBCASE("origin is the inner product")
    {
        const Signal g = random_signal(8, rng), gamma = random_signal(8, rng);
        const auto A = cross_ambiguity(g, gamma);
        CHECK(std::abs(A({0, 0}) - g.dot(gamma)) < 1e-14);
        CHECK(std::abs(cross_ambiguity(g, g)({0, 0}) - 1.0) < 1e-14);
    }
    SUBCASE("constant pulses are Doppler-selective")
    {
        const int L = 8;
        const Signal c = Signal::Constant(L, 1.0 / std::sqrt(L));
        const auto A = cross_ambiguity(c, c);
        for (int k = 0; k < L; ++k)
            for (int l = 0; l < L; ++l)
                CHECK(std::abs(std::abs(A({k, l})) - (l == 0 ? 1.0 : 0.0)) < 1e-12);
    }
    SUBCASE("Moyal identity and Cauchy-Schwarz")
    {
        for (int L : {4, 8, 16}) {
            const Signal g = random_signal(L, rng, false), gamma = random_signal(L, rng, false);
            const CMatrix A = cross_ambiguity(g, gamma).values();
            const double scale = g.squaredNorm() * gamma.squaredNorm();
            CHECK(std::abs(A.cwiseAbs2().sum() - L * scale) / (L * scale) < 1e-10);
            CHECK(A.cwiseAbs().maxCoeff() <= std::sqrt(scale) * (1 + 1e-12));
        }
    }
    SUBCASE("covariance keeps the modulus")
    {
        const int L = 8;
        const Signal g = random_signal(L, rng), gamma = random_signal(L, rng);
        const CMatrix base = cross_ambiguity(g, gamma).values().cwiseAbs();
        for (int k = 0; k < L; k += 3)
            for (int l = 1; l < L; l += 2) {
                const CMatrix moved = cross_ambiguity(tf_shift(g, {k, l}), tf_shift(gamma, {k, l})).values().cwiseAbs();
                CHECK(max_abs(moved - base) < 1e-12);
            }
    }
    SUBCASE("point evaluation agrees with the grid")
    {
        const Signal g = random_signal(9, rng), gamma = random_signal(9, rng);
        const auto A = cross_ambiguity(g, gamma);
        for (int k = 0; k < 9; ++k)
            for (int l = 0; l < 9; ++l)
                CHECK(std::abs(ambiguity_at(g, gamma, {k, l}) - A({k, l})) < 1e-13);
    }
    CHECK_THROWS_AS(cross_ambiguity(Signal::Ones(4), Signal::Ones(5)), std::invalid_argument);
}

namespace {

CMatrix brute_symplectic(const CMatrix& F)
{
    const int L = static_cast<int>(F.rows());
    CMatrix G = CMatrix::Zero(L, L);
    for (int m1 = 0; m1 < L; ++m1)
        for (int m2 = 0; m2 < L; ++m2)
            for (int n1 = 0; n1 < L; ++n1)
                for (int n2 = 0; n2 < L; ++n2)
                    G(m1, m2) += expi(-static_cast<double>(n1 * m2 - n2 * m1) / L) * F(n1, n2);
    return G / static_cast<double>(L);
}

} // namespace

TEST_CASE("symplectic transform")
{
    SUBCASE("all-ones grid maps to a scaled delta")
    {
        const int L = 4;
        const auto G = symplectic_dft(TFFunction(CMatrix::Ones(L, L))).values();
        CMatrix expected = CMatrix::Zero(L, L);
        expected(0, 0) = L;
        CHECK(max_abs(G - expected) < 1e-13);
    }
    SUBCASE("delta maps to the constant 1/L")
    {
        const int L = 6;
        TFFunction F(L);
        F({0, 0}) = 1;
        CHECK(max_abs(symplectic_dft(F).values() - CMatrix::Constant(L, L, 1.0 / L)) < 1e-15);
    }
    SUBCASE("matches the defining sum")
    {
        std::mt19937_64 rng(6);
        for (int L : {4, 5, 8}) {
            CMatrix F(L, L);
            for (int r = 0; r < L; ++r)
                F.row(r) = random_signal(L, rng).transpose();
            CHECK(max_abs(symplectic_dft(TFFunction(F)).values() - brute_symplectic(F)) < 1e-12);
        }
    }
    SUBCASE("involution")
    {
        std::mt19937_64 rng(7);
        const int L = 8;
        CMatrix F(L, L);
        for (int r = 0; r < L; ++r)
            F.row(r) = random_signal(L, rng).transpose();
        const TFFunction T(F);
        CHECK(max_abs(symplectic_dft(symplectic_dft(T)).values() - F) < 1e-12);
    }
}

TEST_CASE("TFFunction rejects non-square grids")
{
    CHECK_THROWS_AS(TFFunction(CMatrix::Zero(3, 4)), std::invalid_argument);
}
