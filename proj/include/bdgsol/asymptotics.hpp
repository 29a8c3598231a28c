// Isolated-soliton asymptotics: position shifts, per-soliton coefficient
// vectors, the intermediate background unitaries between solitons, and the
// determinant identities behind them.  All formulas assume solitons ordered
// by position; decompose() performs the sort and reports the permutation.

#pragma once

#include <utility>
#include <vector>

#include "bdgsol/scattering_data.hpp"
#include "bdgsol/types.hpp"

namespace bdgsol {

// Leading count x count block [Q]_{kl} = 2i p_k^dag p_l / (s_k - s_l^{-1})
// of the x-sorted spec; hermitian positive definite, diagonal 1/sin(theta_k).
Mat q_matrix(const ValidatedSpec& sorted, int count);

// Scattering-induced shifts y_j >= 0 with y_0 = 0; values within round-off
// below zero are clamped.
std::vector<double> position_shifts(const ValidatedSpec& sorted);

// Unit coefficient vectors (q_j, r_j) of the j-th isolated soliton (0-based),
// computed by cofactor expansion of the mixed determinant along its last row.
std::pair<Vec, Vec> coefficient_vectors(const ValidatedSpec& sorted, int j);

// Background unitaries Delta_bar_0..Delta_bar_n between consecutive solitons;
// Delta_bar_0 = Delta_-, Delta_bar_n = Delta(x -> +infinity) / m.
std::vector<Mat> intermediate_backgrounds(const ValidatedSpec& sorted);

struct AsymptoticDecomposition {
    ValidatedSpec sorted;           // x-ascending relabeling of the input spec
    std::vector<int> permutation;   // sorted index -> index in the input spec
    std::vector<double> shifts;     // y_j
    std::vector<double> positions;  // X_j = x_j + y_j
    Mat q_hat, r_hat;               // d x n
    std::vector<Mat> backgrounds;   // n + 1 unitaries
    double min_kappa_separation;    // min over adjacent pairs of kappa_min * gap
};

AsymptoticDecomposition decompose(const ValidatedSpec& spec);

// Below this many decay lengths of separation the isolated-soliton formulas
// degrade; reports carry a quality warning.
inline constexpr double kSeparationWarning = 10.0;

struct ApproxProfile {
    Vec h;          // one-soliton-shaped bound state
    Mat delta;      // Delta_bar_{j-1} (m(1 - r r^dag) + Delta_basic r r^dag)
    Mat delta_alt;  // (m(1 - q q^dag) + Delta_basic q q^dag) Delta_bar_{j-1}
};

ApproxProfile approx_profile(const AsymptoticDecomposition& dec, int j, double x);

// I + (e^{-i theta} - 1) v v^dag, the closed form of exp(-i theta v v^dag)
// for a unit vector v.
Mat rank_one_phase_rotation(const Vec& v, double theta);

// Adjugate (classical cofactor matrix) satisfying A adj(A) = det(A) I,
// computed honestly from minors.
Mat adjugate(const Mat& a);

// The rank-one right-hand side of the Jacobi submatrix-inverse identity
//   A^{-1} - [B^{-1} 0; 0 0] = (C_{1n},...,C_{nn})^T (C_{n1},...,C_{nn}) / (det A det B)
// where B is A with its last row and column removed.
Mat jacobi_submatrix_inverse(const Mat& a);

}  // namespace bdgsol
