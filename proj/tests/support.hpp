// Shared helpers for the test suites: seeded random matrices with the
// structure each symmetry class requires, and a few canned specs.

#pragma once

#include <random>

#include "bdgsol/scattering_data.hpp"
#include "bdgsol/types.hpp"

namespace bdgsol::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline cd random_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    return cd(gauss(rng), gauss(rng));
}

inline Mat random_matrix(int rows, int cols, std::mt19937_64& rng) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_complex(rng);
    return m;
}

inline Vec random_unit_vector(int d, std::mt19937_64& rng) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = random_complex(rng);
    return v / v.norm();
}

// QR of a Ginibre matrix with the R diagonal phases absorbed: Haar unitary.
inline Mat random_unitary(int d, std::mt19937_64& rng) {
    const Mat g = random_matrix(d, d, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

// U U^T is unitary and symmetric for unitary U.
inline Mat random_symmetric_unitary(int d, std::mt19937_64& rng) {
    const Mat u = random_unitary(d, rng);
    return u * u.transpose();
}

// U J U^T with J the standard symplectic block form: unitary, antisymmetric.
inline Mat random_antisymmetric_unitary(int d, std::mt19937_64& rng) {
    Mat j = Mat::Zero(d, d);
    for (int k = 0; k + 1 < d; k += 2) {
        j(k, k + 1) = 1.0;
        j(k + 1, k) = -1.0;
    }
    const Mat u = random_unitary(d, rng);
    return u * j * u.transpose();
}

// The one-component kink: d = 1, theta = pi/2, m = 1, Delta_- = 1.
inline ValidatedSpec kink_spec(double x0 = 0.0) {
    Background bg;
    bg.m = 1.0;
    bg.delta_minus = Mat::Identity(1, 1);
    Soliton sol;
    sol.theta = 1.5707963267948966;
    sol.p_hat = Vec::Ones(1);
    sol.x = x0;
    return validate(bg, {sol});
}

// A generic well-separated 3-soliton d = 2 spec used across the suites.
inline ValidatedSpec three_soliton_spec(double separation = 12.0, std::uint64_t seed = 7) {
    auto rng = make_rng(seed);
    Background bg;
    bg.m = 1.0;
    bg.delta_minus = random_unitary(2, rng);
    std::vector<Soliton> sols(3);
    sols[0] = {0.7, random_unit_vector(2, rng), -separation};
    sols[1] = {1.5707963267948966, random_unit_vector(2, rng), 0.0};
    sols[2] = {2.2, random_unit_vector(2, rng), separation};
    return validate(bg, sols);
}

}  // namespace bdgsol::testing
