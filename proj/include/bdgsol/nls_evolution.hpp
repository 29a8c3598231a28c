// Matrix NLS flow of the constructed fields.  Evolution is exact position
// sliding at velocity 2 epsilon_j; the PDE enters only through the
// finite-difference residual verifier.

#pragma once

#include <vector>

#include "bdgsol/scattering_data.hpp"
#include "bdgsol/types.hpp"

namespace bdgsol {

// Spec at time t: x_j -> x_j + 2 epsilon_j t; angles and coefficient vectors
// are isospectral invariants.
ValidatedSpec evolve(const ValidatedSpec& spec, double t);

// max over interior grid points of
// || i Delta_t + 2 m^2 Delta + Delta_xx - 2 Delta Delta^dag Delta ||_F
// with centered differences of steps (grid.step(), tau).
double pde_residual(const ValidatedSpec& spec, double t, const Grid& grid, double tau);

struct Snapshot {
    double t = 0.0;
    std::vector<double> x;
    std::vector<Mat> delta;
};

std::vector<Snapshot> snapshot_series(const ValidatedSpec& spec, const std::vector<double>& times,
                                      const Grid& grid, int threads = 1);

}  // namespace bdgsol
