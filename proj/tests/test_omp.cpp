// SPDX-License-Identifier: Apache-2.0
#include "hfce/errors.hpp"
#include "hfce/measurement.hpp"
#include "hfce/omp.hpp"
#include "hfce/polar_dictionary.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace hfce;

namespace
{

Eigen::MatrixXcd gaussian(int rows, int cols, Rng& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
        {
            const double re = g(rng);
            m(r, c) = {re, g(rng)};
        }
    return m;
}

// best single-column least-squares fit, by brute force
Eigen::Index exhaustive_best(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& y)
{
    Eigen::Index best = 0;
    double best_res = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < a.cols(); ++k)
    {
        const Eigen::VectorXcd col = a.col(k);
        const Eigen::RowVectorXcd c = (col.adjoint() * y) / col.squaredNorm();
        const double res = (y - col * c).squaredNorm();
        if (res < best_res)
        {
            best_res = res;
            best = k;
        }
    }
    return best;
}

SystemConfig cfg(int n, int n_rf, int p, int m)
{
    SystemConfig c;
    c.n_antennas = n;
    c.n_rf_chains = n_rf;
    c.n_pilot_slots = p;
    c.n_subcarriers = m;
    return c;
}

} // namespace

TEST_CASE("planted single atom")
{
    const auto c = cfg(32, 4, 4, 2);
    const auto d = build_polar_dictionary(c, 32, 1.2, 0.05);
    auto rng = make_stream(1);
    const auto w = generate_combiner(c, CombinerMode::UniformReal, rng);
    const Eigen::MatrixXcd a = w.matrix * d.matrix();
    Eigen::MatrixXcd y(a.rows(), 2);
    y.col(0) = a.col(7) * std::complex<double>(0.3, -1.1);
    y.col(1) = a.col(7) * std::complex<double>(2.0, 0.4);
    OmpOptions o;
    o.iterations = 1;
    const auto est = omp(y, w, d, o);
    REQUIRE(est.support.size() == 1);
    CHECK(est.support[0] == 7);
    CHECK(est.residual_norms.back() < 1e-8);
    CHECK(std::abs(est.coeffs_polar(7, 0) - std::complex<double>(0.3, -1.1)) < 1e-10);
}

TEST_CASE("T = 1 selection equals the exhaustive least-squares search")
{
    auto rng = make_stream(2024);
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto a = gaussian(8, 16, rng);
        const auto y = gaussian(8, 3, rng);
        OmpOptions o;
        o.iterations = 1;
        const auto est = omp_sensing(y, a, gaussian(8, 16, rng), o);
        CHECK(est.support[0] == exhaustive_best(a, y));
    }
}

TEST_CASE("raw selection is the plain correlation argmax")
{
    auto rng = make_stream(7);
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto a = gaussian(8, 16, rng);
        const auto y = gaussian(8, 2, rng);
        OmpOptions o;
        o.iterations = 1;
        o.selection = AtomSelection::Raw;
        const auto est = omp_sensing(y, a, a, o);
        Eigen::Index best = 0;
        double best_v = -1;
        for (Eigen::Index k = 0; k < 16; ++k)
        {
            const double v = (a.col(k).adjoint() * y).squaredNorm();
            if (v > best_v)
            {
                best_v = v;
                best = k;
            }
        }
        CHECK(est.support[0] == best);
    }
}

TEST_CASE("ties go to the lowest index")
{
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 3);
    a(0, 0) = 1.0;
    a(0, 1) = 1.0;
    a(1, 2) = 1.0;
    Eigen::MatrixXcd y(2, 1);
    y << 1.0, 0.0;
    OmpOptions o;
    o.iterations = 2;
    const auto est = omp_sensing(y, a, a, o);
    CHECK(est.support[0] == 0);
    CHECK(est.support[1] == 1); // zero correlation everywhere; column 1 is first not taken
    CHECK(est.rank_deficient);
}

TEST_CASE("iteration count checks")
{
    auto rng = make_stream(1);
    const auto a = gaussian(4, 6, rng);
    const auto y = gaussian(4, 1, rng);
    OmpOptions o;
    o.iterations = 0;
    CHECK_THROWS_AS(omp_sensing(y, a, a, o), InvalidArgument);
    o.iterations = 5;
    CHECK_THROWS_AS(omp_sensing(y, a, a, o), InvalidArgument);
    o.iterations = 2;
    CHECK_THROWS_AS(omp_sensing(gaussian(3, 1, rng), a, a, o), InvalidArgument);
}

TEST_CASE("planted 2-sparse recovery")
{
    const auto c = cfg(64, 8, 4, 4);
    const auto d = build_polar_dictionary(c, 64, 1.2, 0.1);
    auto rng = make_stream(99);
    std::uniform_int_distribution<Eigen::Index> pick(0, d.n_columns() - 1);
    int done = 0;
    while (done < 20)
    {
        const Eigen::Index i = pick(rng);
        const Eigen::Index j = pick(rng);
        const auto w = generate_combiner(c, CombinerMode::UniformReal, rng);
        // separation measured on the sensed atoms
        const Eigen::VectorXcd ai = (w.matrix * d.matrix().col(i)).normalized();
        const Eigen::VectorXcd aj = (w.matrix * d.matrix().col(j)).normalized();
        if (i == j || std::abs(ai.dot(aj)) > 0.2)
            continue;
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d.n_columns(), 4);
        x.row(i) = gaussian(1, 4, rng) + Eigen::MatrixXcd::Constant(1, 4, 2.0);
        x.row(j) = gaussian(1, 4, rng) + Eigen::MatrixXcd::Constant(1, 4, 2.0);
        const Eigen::MatrixXcd h = d.matrix() * x;
        OmpOptions o;
        o.iterations = 2;
        const auto est = omp(w.matrix * h, w, d, o);
        std::set<Eigen::Index> got(est.support.begin(), est.support.end());
        CHECK(got == std::set<Eigen::Index>{i, j});
        CHECK(nmse_db(h, est.reconstructed) <= -40.0);
        ++done;
    }
}

TEST_CASE("residuals never grow and the support never repeats")
{
    auto rng = make_stream(31);
    for (int trial = 0; trial < 30; ++trial)
    {
        const auto a = gaussian(12, 40, rng);
        const auto y = gaussian(12, 3, rng);
        OmpOptions o;
        o.iterations = 12;
        const auto est = omp_sensing(y, a, a, o);
        REQUIRE(est.residual_norms.size() == 12);
        REQUIRE(est.support.size() == 12);
        for (std::size_t i = 1; i < est.residual_norms.size(); ++i)
            CHECK(est.residual_norms[i] <= est.residual_norms[i - 1] * (1 + 1e-12));
        CHECK(std::set<Eigen::Index>(est.support.begin(), est.support.end()).size() == 12);
        // full rank square system leaves nothing behind
        CHECK(est.residual_norms.back() < 1e-9 * y.norm());
        // coefficients live on the support only
        for (Eigen::Index k = 0; k < 40; ++k)
            if (std::find(est.support.begin(), est.support.end(), k) == est.support.end())
                CHECK(est.coeffs_polar.row(k).norm() == 0.0);
    }
}

TEST_CASE("matched-filter update stays available")
{
    auto rng = make_stream(4);
    const auto a = gaussian(8, 10, rng);
    const auto y = gaussian(8, 1, rng);
    OmpOptions o;
    o.iterations = 2;
    o.update = CoefficientUpdate::MatchedFilter;
    const auto est = omp_sensing(y, a, a, o);
    const auto s0 = est.support[0];
    const auto s1 = est.support[1];
    CHECK(std::abs(est.coeffs_polar(s0, 0) - a.col(s0).dot(y.col(0))) < 1e-12);
    CHECK(std::abs(est.coeffs_polar(s1, 0) - a.col(s1).dot(y.col(0))) < 1e-12);
}

TEST_CASE("reconstruct")
{
    const auto c = cfg(16, 4, 4, 3);
    const auto d = build_polar_dictionary(c, 16, 1.2, 0.02);
    SparseEstimate e;
    e.coeffs_polar = Eigen::MatrixXcd::Zero(d.n_columns(), 3);
    CHECK(reconstruct(e, d).norm() == 0.0);
    e.coeffs_polar(4, 0) = 1.0;
    e.coeffs_polar(4, 2) = 2.0;
    const auto h = reconstruct(e, d);
    CHECK((h.col(0) - d.matrix().col(4)).norm() == 0.0);
    CHECK(h.col(1).norm() == 0.0);
    CHECK((h.col(2) - 2.0 * d.matrix().col(4)).norm() == 0.0);

    auto rng = make_stream(6);
    const auto w = generate_combiner(c, CombinerMode::UniformReal, rng);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d.n_columns(), 3);
    x.row(1) = gaussian(1, 3, rng);
    x.row(d.n_columns() - 2) = gaussian(1, 3, rng);
    const Eigen::MatrixXcd truth = d.matrix() * x;
    OmpOptions o;
    o.iterations = 2;
    const auto est = omp(w.matrix * truth, w, d, o);
    CHECK((reconstruct(est, d) - truth).norm() < 1e-8 * truth.norm());
    CHECK((est.reconstructed - truth).norm() < 1e-8 * truth.norm());
}

TEST_CASE("nmse")
{
    auto rng = make_stream(8);
    const auto h = gaussian(6, 3, rng);
    CHECK(nmse(h, h) == 0.0);
    CHECK(nmse(h, Eigen::MatrixXcd::Zero(6, 3)) == doctest::Approx(1.0));
    CHECK(nmse_db(h, Eigen::MatrixXcd::Zero(6, 3)) == doctest::Approx(0.0));
    CHECK(nmse(h, 2.0 * h) == doctest::Approx(1.0));
    CHECK(nmse(h, 1.1 * h) == doctest::Approx(0.01));
    CHECK(nmse_db(h, 1.1 * h) == doctest::Approx(-20.0));
    CHECK_THROWS_AS(nmse(Eigen::MatrixXcd::Zero(6, 3), h), InvalidArgument);
    CHECK_THROWS_AS(nmse(h, Eigen::MatrixXcd::Zero(5, 3)), InvalidArgument);
}
