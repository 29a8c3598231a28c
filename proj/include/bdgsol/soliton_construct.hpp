// Closed-form reflectionless n-soliton machinery: gap function, orthonormal
// bound states, scattering eigenfunctions, and the two-variable kernel.
//
// All x-dependent formulas are evaluated in a balanced form.  With
// E = diag(e_j), e_j = sqrt(kappa_j) e^{kappa_j (x - x_j)}, the Gram matrix is
// G = E C E where C is the cached x-independent coupling matrix, and every
// output reduces to the bounded solve
//     B(x) = (E^{-2} + C)^{-1},
// e.g. Delta = m Delta_- - 2i P B diag(1/s_j) P^dag Delta_-.  Solitons whose
// e_j underflows the solve are dropped from the active set; their
// contribution is below 1e-40 of scale.

#pragma once

#include <utility>
#include <vector>

#include "bdgsol/scattering_data.hpp"
#include "bdgsol/types.hpp"

namespace bdgsol {

// epsilon(s) = (m/2)(s + 1/s), k(s) = (m/2)(s - 1/s); epsilon^2 = k^2 + m^2.
std::pair<cd, cd> uniformize(cd s, double m);

// Balanced state of the Gram-matrix solve at one position.
struct CoreEval {
    std::vector<int> active;  // spec indices kept in the solve, ascending
    Mat solve;                // (E^{-2} + C)^{-1} on the active set
    RealVec inv_e;            // e_j^{-1} for active solitons (may underflow to 0)
    double condition = 1.0;   // condition number after symmetric equilibration
};

// Condition threshold above which the Gram solve is reported as unreliable.
inline constexpr double kGramConditionLimit = 1e12;

CoreEval evaluate_core(const ValidatedSpec& spec, double x);

// The literal Gram matrix G(x) of the ansatz; entries carry
// e^{kappa_i (x - x_i) + kappa_j (x - x_j)} and overflow where the raw
// formula does.  Hermitian positive semidefinite where representable.
Mat gram_matrix(const ValidatedSpec& spec, double x);

// d x d gap function Delta(x).
Mat gap_function(const ValidatedSpec& spec, double x);

// 2d x n matrix of orthonormal bound-state columns h_j(x).
Mat bound_states(const ValidatedSpec& spec, double x);

// H(x) E(x): the bounded combination entering scattering states and kernels.
Mat bound_states_scaled(const ValidatedSpec& spec, double x);

// 2d x d scattering eigenfunction F(x, s) for real s != 0, eigenvalue
// epsilon(s); equals the plane-wave column block when n = 0.
Mat scattering_state(const ValidatedSpec& spec, double x, double s);

// Phase-stripped profile F(x, s) e^{-i k(s) x}.
Mat scattering_profile(const ValidatedSpec& spec, double x, double s);

// 2d x 2d kernel K(x, y) = H(x) W(y)^dag for y <= x (y -> x-0 at equality).
Mat kernel_K(const ValidatedSpec& spec, double x, double y);

// One-soliton closed forms.
cd f_basic(double x_rel, double theta, double m);
cd delta_basic(double x_rel, double theta, double m);

// Quadrature of int H^dag H dx over the standard truncated domain.
// Returns the n x n matrix; the analytic tail bound of the dropped mass is
// written to *tail_bound when non-null.
Mat bound_state_overlap(const ValidatedSpec& spec, double* tail_bound = nullptr);

// Standard truncation window [x_min - margin, x_max + margin] used by
// quadratures and slabs; margin 40 / min_j kappa_j.
std::pair<double, double> quadrature_domain(const ValidatedSpec& spec);

}  // namespace bdgsol
