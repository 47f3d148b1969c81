// SPDX-License-Identifier: Apache-2.0
#include "hfce/errors.hpp"
#include "hfce/propagation.hpp"
#include "hfce/system_config.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace hfce;

TEST_CASE("los gain without absorption or delay is c / (4 pi f r)")
{
    const auto g = los_gain(2.4e11, 37.0, AbsorptionTable(), 0.0);
    CHECK(g.imag() == 0.0);
    CHECK(g.real() > 0.0);
    CHECK(g.real() == doctest::Approx(oracle::fspl(2.4e11, 37.0)).epsilon(1e-14));
}

TEST_CASE("los gain at 100 GHz and 100 m")
{
    const double g0 = std::abs(los_gain(1e11, 100.0, AbsorptionTable(), 0.0));
    CHECK(g0 == doctest::Approx(oracle::fspl(1e11, 100.0)).scale(0).epsilon(1e-14));
    // 2.3873e-6 is the c = 3e8 figure; exact c sits 7e-4 below it
    CHECK(g0 == doctest::Approx(2.3873e-6).scale(0).epsilon(1e-3));

    const double g1 = std::abs(los_gain(1e11, 100.0, AbsorptionTable::constant(0.01), 0.0));
    CHECK(g1 / g0 == doctest::Approx(std::exp(-0.5)).epsilon(1e-13));
}

TEST_CASE("los gain delay only rotates phase")
{
    const double tau = 3.7e-7;
    const auto g = los_gain(1e11, 120.0, AbsorptionTable::constant(0.002), tau);
    const auto ref = oracle::los(1e11, 120.0, 0.002, tau);
    CHECK(std::abs(g - ref) < 1e-12 * std::abs(ref));
}

TEST_CASE("los gain decreases in range and absorption")
{
    double prev = 1e9;
    for (double r = 1.0; r < 500.0; r *= 1.7)
    {
        const double g = std::abs(los_gain(1e11, r, AbsorptionTable::constant(0.001), 0.0));
        CHECK(g < prev);
        prev = g;
    }
    prev = 1e9;
    for (double k : {0.0, 0.001, 0.01, 0.1})
    {
        const double g = std::abs(los_gain(1e11, 50.0, AbsorptionTable::constant(k), 0.0));
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("los gain rejects non-positive range")
{
    CHECK_THROWS_AS(los_gain(1e11, 0.0, AbsorptionTable(), 0.0), InvalidArgument);
    CHECK_THROWS_AS(los_gain(1e11, -5.0, AbsorptionTable(), 0.0), InvalidArgument);
    CHECK_THROWS_AS(los_gain(0.0, 5.0, AbsorptionTable(), 0.0), InvalidArgument);
}

TEST_CASE("nlos gain")
{
    SUBCASE("scalar evaluation, smooth surface at pi/4")
    {
        MaterialParams m;
        m.refractive_index = 2.0;
        m.roughness_std_m = 0.0;
        m.incidence_angle_rad = oracle::pi / 4;
        const auto g = nlos_gain(1e11, 50.0, 50.0, AbsorptionTable(), m, 0.0);
        const double expected = oracle::c0 / (4 * oracle::pi * 1e11 * 100.0) *
                                std::exp(-2.0 * std::cos(oracle::pi / 4) / std::sqrt(3.0));
        CHECK(std::abs(g) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(g.real() < 0.0); // gamma carries a minus sign
    }
    SUBCASE("full oracle with absorption, roughness and delay")
    {
        MaterialParams m{2.24, 5e-5, 0.7854};
        const auto g = nlos_gain(1.0003e11, 12.0, 3.5, AbsorptionTable::constant(0.004), m, 5.1e-8);
        const auto ref = oracle::nlos(1.0003e11, 12.0, 3.5, 0.004, 2.24, 5e-5, 0.7854, 5.1e-8);
        CHECK(std::abs(g - ref) < 1e-12 * std::abs(ref));
    }
    SUBCASE("grazing smooth limit approaches -los")
    {
        MaterialParams m{2.24, 0.0, kPi / 2 - 1e-9};
        const auto g = nlos_gain(1e11, 30.0, 20.0, AbsorptionTable(), m, 0.0);
        const auto l = los_gain(1e11, 50.0, AbsorptionTable(), 0.0);
        CHECK(std::abs(g + l) < 1e-8 * std::abs(l));
    }
    SUBCASE("reflection only attenuates")
    {
        for (double sigma : {0.0, 1e-5, 1e-4})
            for (double psi : {0.0, 0.5, 1.2})
            {
                MaterialParams m{1.8, sigma, psi};
                CHECK(std::abs(nlos_gain(1e11, 10.0, 10.0, AbsorptionTable(), m, 0.0)) <
                      std::abs(los_gain(1e11, 20.0, AbsorptionTable(), 0.0)));
            }
    }
    SUBCASE("very rough surface kills the path")
    {
        MaterialParams m{2.24, 1e-2, 0.3};
        CHECK(std::abs(nlos_gain(1e11, 10.0, 10.0, AbsorptionTable(), m, 0.0)) < 1e-300);
    }
    SUBCASE("eta <= 1 is invalid")
    {
        MaterialParams m{1.0, 0.0, 0.3};
        CHECK_THROWS_AS(nlos_gain(1e11, 10.0, 10.0, AbsorptionTable(), m, 0.0), InvalidArgument);
        m.refractive_index = 0.7;
        CHECK_THROWS_AS(nlos_gain(1e11, 10.0, 10.0, AbsorptionTable(), m, 0.0), InvalidArgument);
    }
}

TEST_CASE("absorption table")
{
    const AbsorptionTable t({{1e11, 0.001}, {2e11, 0.003}});
    CHECK(t.at(1.5e11) == doctest::Approx(0.002));
    CHECK(t.at(5e10) == 0.001);
    CHECK(t.at(9e11) == 0.003);
    CHECK(AbsorptionTable().at(1e11) == 0.0);

    CHECK_THROWS_AS(AbsorptionTable({{2e11, 0.1}, {1e11, 0.1}}), InvalidArgument);
    CHECK_THROWS_AS(AbsorptionTable({{1e11, 0.1}, {1e11, 0.2}}), InvalidArgument);
    CHECK_THROWS_AS(AbsorptionTable({{1e11, -0.1}}), InvalidArgument);
}

TEST_CASE("absorption csv")
{
    const auto dir = std::filesystem::temp_directory_path() / "hfce_absorption_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "ok.csv");
        f << "frequency_hz,k_per_m\n9e10,0.1\n1.1e11,0.3\n";
    }
    const auto t = AbsorptionTable::from_csv(dir / "ok.csv");
    CHECK(t.entries().size() == 2);
    CHECK(t.at(1e11) == doctest::Approx(0.2));

    {
        std::ofstream f(dir / "bad.csv");
        f << "frequency_hz,k_per_m\n9e10,0.1\nnonsense\n";
    }
    try
    {
        AbsorptionTable::from_csv(dir / "bad.csv");
        FAIL("expected a config error");
    }
    catch (const ConfigError& e)
    {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
    CHECK_THROWS_AS(AbsorptionTable::from_csv(dir / "missing.csv"), IoError);
    std::filesystem::remove_all(dir);
}
