#include <doctest.h>

#include <cmath>

#include "bdgsol/direct_scattering.hpp"
#include "bdgsol/soliton_construct.hpp"
#include "slabs.hpp"
#include "support.hpp"

using namespace bdgsol;
namespace bt = bdgsol::testing;

namespace {

PotentialSlab uniform_slab(int d, std::uint64_t seed) {
    auto rng = bt::make_rng(seed);
    PotentialSlab slab;
    slab.m = 1.0;
    slab.delta_minus = bt::random_unitary(d, rng);
    slab.delta_plus = slab.delta_minus;
    slab.x_left = -6.0;
    slab.x_right = 6.0;
    const Mat value = slab.m * slab.delta_minus;
    slab.sample = [value](double) { return value; };
    return slab;
}

}  // namespace

TEST_CASE("uniform slab scatters trivially") {
    const PotentialSlab slab = uniform_slab(2, 79);
    for (double s : {-3.0, -0.5, 0.4, 1.8}) {
        const Mat y = integrate_zs(slab, s);
        CHECK((y - plane_wave_basis(slab.delta_minus, slab.m, s, slab.x_right)).norm() < 1e-9);

        const ScatteringSample sm = scattering_matrix(slab, s);
        CHECK((sm.S - Mat::Identity(4, 4)).norm() < 1e-9);
        CHECK((sm.A - Mat::Identity(2, 2)).norm() < 1e-9);
        CHECK(sm.B.norm() < 1e-9);
    }
}

TEST_CASE("uniform slab constants match the closed forms") {
    const PotentialSlab slab = uniform_slab(2, 83);
    const std::vector<double> probes = {-5.0, -2.0, 0.0, 1.0, 4.0};
    for (double s : {0.5, 2.2, -1.7}) {
        const WronskianReport rep = wronskian_check(slab, s, probes);
        CHECK(rep.det_deviation < 1e-8 * std::pow(std::abs(s * s - 1.0), 2));
        CHECK(rep.j_deviation < 1e-8 * std::abs(s * s - 1.0));
    }
}

TEST_CASE("constructed kink is reflectionless") {
    const PotentialSlab slab = make_slab(bt::kink_spec());
    const auto grid = make_s_grid(0.2, 5.0, 41, 1e-3);
    const ReflectionScan scan = reflection_scan(slab, grid, {}, 2);
    CHECK(scan.max_r_raw <= 1e-7);
}

TEST_CASE("oracle flags a genuinely reflecting barrier") {
    const PotentialSlab slab = bt::box_slab(0.3, 2.0);
    const auto grid = make_s_grid(0.3, 3.0, 11, 1e-3);
    const ReflectionScan scan = reflection_scan(slab, grid, {}, 2);
    CHECK(scan.max_r > 1e-2);
}

TEST_CASE("wronskian stays constant across a soliton slab") {
    const PotentialSlab slab = make_slab(bt::three_soliton_spec(6.0, 89));
    const std::vector<double> probes = {-20.0, -10.0, -4.0, 0.0, 3.0, 8.0, 15.0, 22.0};
    const WronskianReport rep = wronskian_check(slab, 1.6, probes);
    CHECK(rep.det_deviation < 1e-9 * std::pow(1.6 * 1.6 - 1.0, 2));
    CHECK(rep.j_deviation < 1e-9);
}

TEST_CASE("scattering identity suite on random smooth slabs") {
    auto rng = bt::make_rng(97);
    for (Symmetry symmetry :
         {Symmetry::NonSymmetric, Symmetry::Symmetric, Symmetry::Antisymmetric}) {
        const PotentialSlab slab = bt::random_smooth_slab(2, symmetry, rng);
        for (double s : {0.45, 2.3}) {
            const ScatteringSample at_s = scattering_matrix(slab, s);
            const ScatteringSample at_inv = scattering_matrix(slab, 1.0 / s);

            CHECK(at_s.det_residual < 1e-8);
            CHECK(at_s.sigma3_residual < 1e-8);
            CHECK(at_s.unitarity_residual < 1e-8);
            if (symmetry != Symmetry::NonSymmetric) CHECK(at_s.symmetry_residual < 1e-8);

            // block structure of the scattering matrix
            const Mat& dm = slab.delta_minus;
            const Mat& dp = slab.delta_plus;
            CHECK((at_s.S.topRightCorner(2, 2) - dm * at_inv.B * dp).norm() < 1e-8);
            CHECK((at_s.S.bottomRightCorner(2, 2) - dm.adjoint() * at_inv.A * dp).norm() < 1e-8);

            // inverse relations written on the blocks
            CHECK((at_s.A.adjoint() * at_s.A - at_s.B.adjoint() * at_s.B -
                   Mat::Identity(2, 2)).norm() < 1e-8);
            CHECK((at_s.A.adjoint() * dm * at_inv.B - at_s.B.adjoint() * dm.adjoint() * at_inv.A)
                      .norm() < 1e-8);
            CHECK((at_s.A * at_s.A.adjoint() - dm * at_inv.B * at_inv.B.adjoint() * dm.adjoint() -
                   Mat::Identity(2, 2)).norm() < 1e-8);
            CHECK((at_s.A * at_s.B.adjoint() - dm * at_inv.B * at_inv.A.adjoint() * dm).norm() <
                  1e-8);

            // connection between s and 1/s
            const Mat mp = off_diagonal_block(dp);
            const Mat mm = off_diagonal_block(dm);
            CHECK((at_s.S * mp - mm * at_inv.S).norm() < 1e-8);

            // reflection symmetry through the asymptotes
            CHECK((dm * at_inv.R - at_s.R.adjoint() * dm.adjoint()).norm() < 1e-8);

            // conjugation in the symmetric classes
            if (symmetry != Symmetry::NonSymmetric) {
                const Mat tau = symmetry == Symmetry::Symmetric ? sigma1(2) : sigma2(2);
                CHECK((tau * at_s.S.conjugate() - at_s.S * tau).norm() < 1e-8);
            }
        }
    }
}

TEST_CASE("left-right and right-left extractions are mutually inverse") {
    auto rng = bt::make_rng(101);
    const PotentialSlab slab = bt::random_smooth_slab(2, Symmetry::NonSymmetric, rng);
    const Mat s3 = sigma3(2);
    for (double s : {0.6, 1.9}) {
        const Mat s_lr = scattering_matrix(slab, s).S;
        const Mat s_rl = reverse_scattering_matrix(slab, s);
        CHECK((s_rl - s3 * s_lr.adjoint() * s3).norm() < 1e-8);
    }
}

TEST_CASE("residual verifier behaves like a second-order stencil") {
    const PotentialSlab slab = uniform_slab(1, 103);
    const double s = 1.7;
    const double eps = 0.5 * (s + 1.0 / s);
    auto sample_residual = [&](int points) {
        std::vector<double> xs(points);
        std::vector<Mat> w(points), delta(points);
        for (int i = 0; i < points; ++i) {
            xs[i] = -2.0 + 4.0 * i / (points - 1);
            delta[i] = slab.sample(xs[i]);
            w[i] = plane_wave_basis(slab.delta_minus, slab.m, s, xs[i]).leftCols(1);
        }
        const auto res = zs_residual(xs, w, delta, eps);
        return *std::max_element(res.begin(), res.end());
    };
    const double coarse = sample_residual(101);
    const double fine = sample_residual(201);
    CHECK(coarse / fine > 3.5);
    CHECK(coarse / fine < 4.5);

    SUBCASE("wrong eigenvalue leaves an O(1) residual") {
        std::vector<double> xs(101);
        std::vector<Mat> w(101), delta(101);
        for (int i = 0; i < 101; ++i) {
            xs[i] = -2.0 + 4.0 * i / 100.0;
            delta[i] = slab.sample(xs[i]);
            w[i] = plane_wave_basis(slab.delta_minus, slab.m, s, xs[i]).leftCols(1);
        }
        const auto res = zs_residual(xs, w, delta, eps + 0.5);
        CHECK(*std::max_element(res.begin(), res.end()) > 0.4);
    }
    SUBCASE("grids below five points are rejected") {
        std::vector<double> xs(4, 0.0);
        std::vector<Mat> w(4, Mat::Zero(2, 1)), delta(4, Mat::Identity(1, 1));
        CHECK_THROWS_AS(zs_residual(xs, w, delta, 1.0), Error);
    }
}

TEST_CASE("guard band and truncation preconditions") {
    const PotentialSlab slab = uniform_slab(1, 107);
    try {
        integrate_zs(slab, 1.0005);
        FAIL("expected NearBandEdge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NearBandEdge);
    }
    CHECK_THROWS_AS(integrate_zs(slab, 0.0), Error);

    PotentialSlab truncated = make_slab(bt::kink_spec(), -2.0, 2.0);
    try {
        integrate_zs(truncated, 2.0);
        FAIL("expected TruncationInadequate");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TruncationInadequate);
    }
}

TEST_CASE("reflection scan reports the truncation floor") {
    const PotentialSlab slab = make_slab(bt::kink_spec());
    const ReflectionScan scan = reflection_scan(slab, {0.5, 2.0}, {}, 1);
    CHECK(scan.floor > 0.0);
    for (const auto& sample : scan.samples) CHECK(sample.r_norm >= sample.floor);
}
