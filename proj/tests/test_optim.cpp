#include <doctest.h>

#include <limits>
#include <set>

#include "helpers.hpp"
#include "pulsekit/bounds.hpp"
#include "pulsekit/optim.hpp"
#include "pulsekit/tfcore.hpp"

using namespace pulsekit;
using namespace testutil;

namespace {

ScatteringMass spread_mass(int L, int n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> cell(0, L - 1);
    std::set<std::pair<int, int>> used;
    std::vector<TFCell> cells;
    while (static_cast<int>(cells.size()) < n) {
        const TFCell c{cell(rng), cell(rng)};
        if (used.emplace(c.k, c.l).second)
            cells.push_back(c);
    }
    return ScatteringMass::make(L, cells, std::vector<double>(n, 1.0 / n));
}

void check_non_decreasing(const ClimbTrace& trace)
{
    for (std::size_t i = 1; i < trace.objective.size(); ++i)
        CHECK(trace.objective[i] >= trace.objective[i - 1] - 1e-12);
}

} // namespace

TEST_CASE("max_eig_pulse")
{
    std::mt19937_64 rng(51);
    SUBCASE("delta at the origin returns the receive pulse")
    {
        const Signal g = random_signal(16, rng);
        const auto e = max_eig_pulse(ScatteringMass::delta(16), g);
        CHECK(e.value == doctest::Approx(1).epsilon(1e-12));
        CHECK(alignment(e.pulse, g) > 1 - 1e-12);
    }
    SUBCASE("global maximum over random probes, self-consistency and the mirrored problem")
    {
        const int L = 16;
        const auto C = spread_mass(L, 5, rng);
        const Signal g = random_signal(L, rng);
        const auto e = max_eig_pulse(C, g);
        CHECK(std::abs(localization_gain(g, e.pulse, C) - e.value) < 1e-10);
        const CMatrix Lop = localization_operator(C, g);
        double best_probe = 0;
        for (int i = 0; i < 100000; ++i) {
            const Signal p = random_signal(L, rng);
            best_probe = std::max(best_probe, p.dot(Lop * p).real());
        }
        CHECK(e.value >= best_probe);

        const auto back = max_eig_pulse(C.reflected(), e.pulse);
        CHECK(back.value >= e.value - 1e-12);
        CHECK(std::abs(localization_gain(back.pulse, e.pulse, C) - back.value) < 1e-10);

        Eigen::Index idx;
        e.pulse.cwiseAbs().maxCoeff(&idx);
        CHECK(std::abs(e.pulse(idx).imag()) < 1e-15);
        CHECK(e.pulse(idx).real() > 0);
    }
}

TEST_CASE("mountain climbing")
{
    std::mt19937_64 rng(52);
    SUBCASE("delta at the origin converges after one step")
    {
        const auto r = mountain_climb(ScatteringMass::delta(16), random_signal(16, rng));
        CHECK(r.trace.converged);
        CHECK(r.trace.iterations == 1);
        CHECK(localization_gain(r.pair.g, r.pair.gamma, ScatteringMass::delta(16)) == doctest::Approx(1));
    }
    SUBCASE("infinite tolerance stops after one half-step")
    {
        const auto C = spread_mass(16, 6, rng);
        const Signal g0 = random_signal(16, rng);
        const auto r = mountain_climb(C, g0, {std::numeric_limits<double>::infinity(), 50});
        const auto e = max_eig_pulse(C, g0);
        CHECK(r.trace.iterations == 1);
        CHECK(r.trace.objective.back() == doctest::Approx(e.value).epsilon(1e-14));
        CHECK(max_abs(r.pair.gamma - e.pulse) < 1e-12);
        CHECK(alignment(r.pair.g, g0) > 1 - 1e-14);
    }
    SUBCASE("iteration cap")
    {
        const auto C = spread_mass(32, 9, rng);
        const auto r = mountain_climb(C, random_signal(32, rng), {0.0, 3});
        CHECK(r.trace.iterations == 3);
        CHECK_FALSE(r.trace.converged);
        check_non_decreasing(r.trace);
    }
    SUBCASE("monotone on random masses, consistent at the fixed point")
    {
        for (int rep = 0; rep < 5; ++rep) {
            const auto C = spread_mass(24, 7, rng);
            const auto r = mountain_climb(C, random_signal(24, rng));
            check_non_decreasing(r.trace);
            CHECK(r.trace.objective.front() <= r.trace.objective.back());
            const double final_gain = localization_gain(r.pair.g, r.pair.gamma, C);
            CHECK(final_gain == doctest::Approx(r.trace.objective.back()).epsilon(1e-10));
            if (r.trace.converged) {
                const double extra = max_eig_pulse(C, r.pair.g).value;
                CHECK(extra - final_gain < ClimbOptions{}.tol);
            }
        }
    }
    SUBCASE("150-cell brick from the Gaussian at L = 512")
    {
        const auto C = make_brick_scattering(9, 7, 512);
        const Signal g0 = make_gaussian(512, 1.0);
        const auto r = mountain_climb(C, g0);
        const double gauss_gain = localization_gain(g0, g0, C);
        CHECK(r.trace.objective.front() == doctest::Approx(gauss_gain).epsilon(1e-12));
        check_non_decreasing(r.trace);
        CHECK(localization_gain(r.pair.g, r.pair.gamma, C) >= gauss_gain);
        CHECK(localization_gain(r.pair.g, r.pair.gamma, C) < lambda_max_bounds(C.area()).upper + 1e-9);
    }
}

TEST_CASE("SVD pulses")
{
    std::mt19937_64 rng(53);
    SUBCASE("delta at the origin")
    {
        const auto s = svd_pulses(ScatteringMass::delta(16));
        CHECK(s.lower_bound == doctest::Approx(1));
        CHECK(alignment(s.pair.g, s.pair.gamma) > 1 - 1e-12);
    }
    SUBCASE("delta off the origin")
    {
        const auto s = svd_pulses(ScatteringMass::delta(16, {5, 3}));
        CHECK(s.lower_bound == doctest::Approx(1));
        CHECK(max_abs(s.pair.g - tf_shift(s.pair.gamma, {5, 3})) < 1e-12);
    }
    SUBCASE("bound holds on random masses and the brick")
    {
        for (int rep = 0; rep < 5; ++rep) {
            const auto C = spread_mass(20, 6, rng);
            const auto s = svd_pulses(C);
            CHECK(localization_gain(s.pair.g, s.pair.gamma, C) >= s.lower_bound - 1e-10);
        }
        const auto C = make_brick_scattering(9, 7, 512);
        const auto s = svd_pulses(C);
        CHECK(localization_gain(s.pair.g, s.pair.gamma, C) >= s.lower_bound - 1e-10);
        CHECK(s.lower_bound > 0.5);
    }
}

TEST_CASE("SINR iteration")
{
    std::mt19937_64 rng(54);
    SUBCASE("identity channel on an orthonormal lattice reaches 1/noise")
    {
        const int L = 16;
        Signal g0 = Signal::Zero(L);
        g0(0) = 1;
        g0 += 0.05 * random_signal(L, rng);
        const auto r = sinr_iteration(ScatteringMass::delta(L), Lattice::make(1, L, L), 0.01, g0, {0.0, 1000});
        check_non_decreasing(r.trace);
        CHECK(r.trace.objective.back() == doctest::Approx(100).epsilon(1e-9));
    }
    SUBCASE("objective values are analytic SINRs")
    {
        const int L = 32;
        const auto C = make_brick_scattering(2, 1, L);
        const auto lat = Lattice::make(4, 4, L);
        const auto r = sinr_iteration(C, lat, 0.01, make_gaussian(L, 1.0));
        check_non_decreasing(r.trace);
        CHECK(r.trace.objective.back() ==
              doctest::Approx(analytic_sinr(r.pair, lat, C, 0.01).sinr).epsilon(1e-9));
        CHECK_THROWS_AS(sinr_iteration(C, lat, 0.0, make_gaussian(L, 1.0)), std::invalid_argument);
    }
    SUBCASE("large noise degenerates to gain optimization")
    {
        const int L = 24;
        const auto C = spread_mass(L, 5, rng);
        const auto lat = Lattice::make(4, 3, L);
        const Signal g0 = random_signal(L, rng);
        const auto climb = mountain_climb(C, g0, {1e-15, 400});
        const auto sinr = sinr_iteration(C, lat, 1e6, g0, {1e-22, 400});
        CHECK(alignment(climb.pair.g, sinr.pair.g) > 1 - 1e-6);
        CHECK(alignment(climb.pair.gamma, sinr.pair.gamma) > 1 - 1e-6);
    }
    SUBCASE("150-cell brick at L = 512 dominates the climb")
    {
        const auto C = make_brick_scattering(9, 7, 512);
        const auto lat = make_lattice(512, 2, BrickSupport{9, 7}.ratio());
        const auto climb = mountain_climb(C, make_gaussian(512, static_cast<double>(lat.a) / lat.b));
        const auto r = sinr_iteration(C, lat, 0.01, climb.pair.g);
        check_non_decreasing(r.trace);
        CHECK(analytic_sinr(r.pair, lat, C, 0.01).sinr >= analytic_sinr(climb.pair, lat, C, 0.01).sinr);
    }
}

TEST_CASE("localize then tighten")
{
    SUBCASE("tight, optimal input is unchanged")
    {
        const int L = 16;
        Signal impulse = Signal::Zero(L);
        impulse(0) = 1;
        const auto r = localize_then_tighten(ScatteringMass::delta(L), Lattice::make(1, L, L), impulse);
        CHECK(alignment(r.pair.g, impulse) > 1 - 1e-12);
        CHECK(alignment(r.pair.gamma, impulse) > 1 - 1e-12);
    }
    SUBCASE("Gaussian start on a brick, density 2")
    {
        const int L = 128;
        const auto C = make_brick_scattering(3, 2, L);
        const auto lat = make_lattice(L, 2, BrickSupport{3, 2}.ratio());
        const auto r = localize_then_tighten(C, lat, make_gaussian(L, static_cast<double>(lat.a) / lat.b));
        check_non_decreasing(r.climb);
        CHECK(max_abs(frame_operator(r.pair.gamma, lat) - 2.0 * CMatrix::Identity(L, L)) < 1e-6);
        const double b = frame_quality(r.pair.gamma, lat).upper;
        CHECK(b == doctest::Approx(2).epsilon(1e-6));
        const double gain = localization_gain(r.pair.g, r.pair.gamma, C);
        const double sinr = analytic_sinr(r.pair, lat, C, 0.01).sinr;
        CHECK(std::abs(sinr - sinr_lower_bound(gain, b, 0.01)) / sinr < 1e-6);
        const double matched = max_eig_pulse(C.reflected(), r.pair.gamma).value;
        CHECK(gain == doctest::Approx(matched).epsilon(1e-10));
    }
    SUBCASE("IOTA is the tightened Gaussian")
    {
        const int L = 64;
        const auto lat = Lattice::make(8, 4, L);
        const Signal iota = tighten(make_gaussian(L, 2.0), lat);
        CHECK(max_abs(frame_operator(iota, lat) - 2.0 * CMatrix::Identity(L, L)) < 1e-9);
        CHECK(alignment(iota, make_gaussian(L, 2.0)) > 0.9);
        CHECK(iota.imag().cwiseAbs().maxCoeff() < 1e-12);
    }
}
