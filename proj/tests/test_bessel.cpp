#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "latprop/bessel.hpp"
#include "test_helpers.hpp"

using namespace latprop;
using namespace latprop::testing;

TEST_CASE("Landau constant is pinned inside (0.785, 0.786)") {
    CHECK(landau_constant > 0.785);
    CHECK(landau_constant < 0.786);
}

TEST_CASE("exact values at t = 0") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(7, 0.0) == 0.0);
    const BesselRow row = bessel_row(5, 0.0);
    CHECK(row.values[0] == 1.0);
    for (int nu = 1; nu <= 5; ++nu) CHECK(row.values[nu] == 0.0);
}

TEST_CASE("reference values against the power-series oracle") {
    // series oracle frozen: J_0(2) = 0.22389077914123567, J_3(1.5) = 0.06096395114113963
    CHECK(bessel_j(0, 2.0) == doctest::Approx(0.22389077914123567).epsilon(1e-13));
    CHECK(bessel_j(3, 1.5) == doctest::Approx(0.06096395114113963).epsilon(1e-12));
    CHECK(bessel_j(1, 2.0) == doctest::Approx(0.57672480775687339).epsilon(1e-13));
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const int nu = static_cast<int>(uniform_int(rng, 0, 25));
        const double t = uniform_real(rng, 0.0, 20.0);
        CHECK(std::abs(bessel_j(nu, t) - series_bessel_j(nu, t)) < 1e-12);
    }
}

TEST_CASE("negative order parity is an exact reduction") {
    CHECK(bessel_j(-3, 1.5) == -bessel_j(3, 1.5));
    CHECK(bessel_j(-4, 2.7) == bessel_j(4, 2.7));
    CHECK(bessel_j(-1, 0.2) == -bessel_j(1, 0.2));
}

TEST_CASE("negative argument rejected") {
    CHECK_THROWS_AS(bessel_j(0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_row(4, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(bessel_row(-1, 1.0), std::invalid_argument);
}

TEST_CASE("row agrees with single evaluations and stays bounded") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        const double t = uniform_real(rng, 0.0, 60.0);
        const int nu_max = static_cast<int>(std::ceil(t)) + 45;
        const BesselRow row = bessel_row(nu_max, t);
        for (int nu = 0; nu <= nu_max; ++nu) CHECK(std::abs(row.values[nu]) <= 1.0);
        for (int nu : {0, 1, nu_max / 2, nu_max})
            CHECK(std::abs(row.values[nu] - bessel_j(nu, t)) < 1e-13);
    }
    CHECK(bessel_row(60, 2.0).values[0] == doctest::Approx(0.22389077914123567).epsilon(1e-13));
}

TEST_CASE("sum rule J_0^2 + 2 sum J_nu^2 = 1") {
    auto normalization = [](double t, int nu_max) {
        const BesselRow row = bessel_row(nu_max, t);
        double s = row.values[0] * row.values[0];
        for (int nu = 1; nu <= nu_max; ++nu) s += 2.0 * row.values[nu] * row.values[nu];
        return s;
    };
    CHECK(normalization(7.3, 60) == doctest::Approx(1.0).epsilon(1e-10));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const double t = uniform_real(rng, 0.0, 120.0);
        CHECK(normalization(t, static_cast<int>(std::ceil(t)) + 40) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("three-term recurrence") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const double t = uniform_real(rng, 0.5, 100.0);
        const int nu = 1 + static_cast<int>(uniform_int(rng, 0, static_cast<long long>(2.0 * t)));
        const double lhs = bessel_j(nu - 1, t) + bessel_j(nu + 1, t);
        const double rhs = (2.0 * nu / t) * bessel_j(nu, t);
        const double scale = std::abs(lhs) + std::abs(rhs) + 1e-30;
        CHECK(std::abs(lhs - rhs) / scale < 1e-10);
    }
}

TEST_CASE("integral identity quadrature") {
    SUBCASE("pinned cases") {
        CHECK(std::abs(bessel_integral_oracle(0, 0.0, 64) - cplx(1.0, 0.0)) < 1e-14);
        const cplx i1 = bessel_integral_oracle(1, 2.0, 128);
        CHECK(std::abs(i1 - cplx(0.0, bessel_j(1, 2.0))) < 1e-12);
        const cplx i4 = bessel_integral_oracle(4, 3.0, 128);  // i^4 = 1, purely real
        CHECK(std::abs(i4 - cplx(bessel_j(4, 3.0), 0.0)) < 1e-12);
        CHECK(std::abs(i4.imag()) < 1e-13);
    }
    SUBCASE("node precondition enforced") {
        CHECK_THROWS_AS(bessel_integral_oracle(10, 5.0, 40), std::invalid_argument);
    }
    SUBCASE("200 random orders and arguments, t <= 50") {
        std::mt19937_64 rng(123);
        for (int trial = 0; trial < 200; ++trial) {
            const double t = uniform_real(rng, 0.0, 50.0);
            const int nu = static_cast<int>(uniform_int(rng, 0, 70));
            const int nodes = 2 * (nu + static_cast<int>(std::ceil(t))) + 16;
            const cplx lhs = bessel_integral_oracle(nu, t, nodes);
            const cplx rhs = unit_imag_power_reference(nu) * bessel_j(nu, t);
            CHECK(std::abs(lhs - rhs) < 1e-11);
        }
    }
    SUBCASE("large-argument accuracy cross-check") {
        for (auto [nu, t] : std::initializer_list<std::pair<int, double>>{
                 {0, 500.0}, {250, 500.0}, {500, 500.0}, {700, 500.0}, {0, 1000.0}, {950, 1000.0}}) {
            const int nodes = 2 * (nu + static_cast<int>(std::ceil(t))) + 16;
            const cplx lhs = bessel_integral_oracle(nu, t, nodes);
            const cplx rhs = unit_imag_power_reference(nu) * bessel_j(nu, t);
            CHECK(std::abs(lhs - rhs) < 5e-12);
        }
    }
}

TEST_CASE("Landau envelope") {
    SUBCASE("coarse grid") {
        const LandauReport rep = landau_envelope_check({1.0, 10.0, 100.0});
        CHECK(rep.pass);
        CHECK(rep.max_scaled <= 0.7858);
    }
    SUBCASE("dense grid including the attaining region") {
        std::vector<double> grid;
        for (double t = 0.5; t <= 2.0; t += 0.005) grid.push_back(t);
        for (double t = 2.5; t <= 500.0; t *= 1.05) grid.push_back(t);
        const LandauReport rep = landau_envelope_check(grid);
        CHECK(rep.pass);
        CHECK(rep.max_scaled <= landau_constant);
        // sharpness indicator: the scan approaches the constant from below
        CHECK(rep.max_scaled >= 0.6);
        CHECK(rep.max_scaled == doctest::Approx(0.785747).epsilon(2e-5));
        CHECK(rep.max_scaled_t == doctest::Approx(0.784).epsilon(0.01));
    }
    SUBCASE("nonpositive grid entries rejected") {
        CHECK_THROWS_AS(landau_envelope_check({1.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(landau_envelope_check({-2.0}), std::invalid_argument);
    }
}
