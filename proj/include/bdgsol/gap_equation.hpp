// Self-consistency checks: filling rates, the bound-state part of the
// mean-field matrix, and the commutator residual that vanishes exactly when
// the filling condition of the class holds.

#pragma once

#include <vector>

#include "bdgsol/scattering_data.hpp"
#include "bdgsol/types.hpp"

namespace bdgsol {

// Canonical assignment nu_j = theta_j / pi, valid in every symmetry class.
std::vector<double> filling_rates(const ValidatedSpec& spec);

// Antisymmetric one-parameter family: pair (2j, 2j+1) gets theta/pi +- split[j].
// Throws SplitOutOfRange when a rate would leave [0, 1] beyond round-off.
std::vector<double> filling_rates(const ValidatedSpec& spec, const std::vector<double>& split);

// Xi_bound(x) = 2 H(x) (N - Theta) H(x)^dag; hermitian, identically zero at
// the canonical assignment.
Mat xi_bound(const ValidatedSpec& spec, const std::vector<double>& nu, double x);

// Class-resolved bound part: Xi_bound itself for the non-symmetric and
// symmetric classes, Xi_bound + sigma2 Xi_bound^* sigma2 for the
// antisymmetric class.
Mat xi_bound_symmetrized(const ValidatedSpec& spec, const std::vector<double>& nu, double x);

// max over the grid of ||[sigma3, Xi(x)]||_F.
double gap_residual(const ValidatedSpec& spec, const std::vector<double>& nu,
                    const std::vector<double>& grid);

// 201 points covering every soliton core +- 10 decay lengths.
std::vector<double> default_residual_grid(const ValidatedSpec& spec);

// ||int H^dag H dx - I _n||; throws QuadratureTailTooLarge if the analytic
// tail bound of the truncated quadrature is not negligible.
double bound_orthonormality(const ValidatedSpec& spec);

// Smallest eigenvalue of the L^2 Gram matrix of the fields [sigma3, h_j h_j^dag];
// positive iff the fields are linearly independent.
double commutator_gram_min_eigenvalue(const ValidatedSpec& spec);

// Residuals at perturbation sizes delta and delta/2 of a single nu_j; the
// ratio near 2 confirms the linear growth of the residual.
struct PerturbationSlope {
    double residual = 0.0;
    double residual_half = 0.0;
    double slope = 0.0;  // residual / delta
};
PerturbationSlope gap_perturbation_slope(const ValidatedSpec& spec, int j, double delta,
                                         const std::vector<double>& grid);

}  // namespace bdgsol
