#include "bdgsol/nls_evolution.hpp"

#include <algorithm>
#include <cmath>

#include "bdgsol/parallel.hpp"
#include "bdgsol/soliton_construct.hpp"

namespace bdgsol {

ValidatedSpec evolve(const ValidatedSpec& spec, double t) {
    std::vector<Soliton> moved = spec.solitons();
    for (int j = 0; j < spec.n(); ++j) moved[j].x += 2.0 * spec.epsilon(j) * t;
    return validate(spec.background(), moved);
}

double pde_residual(const ValidatedSpec& spec, double t, const Grid& grid, double tau) {
    if (grid.n_points < 5)
        throw Error(ErrorCode::GridTooCoarse, "residual needs >= 5 grid points");
    const double h = grid.step();
    const double m = spec.m();
    const ValidatedSpec now = evolve(spec, t);
    const ValidatedSpec fwd = evolve(spec, t + tau);
    const ValidatedSpec bwd = evolve(spec, t - tau);

    double worst = 0.0;
    for (int i = 1; i + 1 < grid.n_points; ++i) {
        const double x = grid.point(i);
        const Mat d0 = gap_function(now, x);
        const Mat dxx =
            (gap_function(now, x + h) - 2.0 * d0 + gap_function(now, x - h)) / (h * h);
        const Mat dt = (gap_function(fwd, x) - gap_function(bwd, x)) / (2.0 * tau);
        const Mat residual =
            kI * dt + 2.0 * m * m * d0 + dxx - 2.0 * d0 * d0.adjoint() * d0;
        worst = std::max(worst, residual.norm());
    }
    return worst;
}

std::vector<Snapshot> snapshot_series(const ValidatedSpec& spec, const std::vector<double>& times,
                                      const Grid& grid, int threads) {
    std::vector<Snapshot> series(times.size());
    parallel_for(static_cast<int>(times.size()), threads, [&](int i) {
        Snapshot& snap = series[i];
        snap.t = times[i];
        const ValidatedSpec at_t = evolve(spec, times[i]);
        snap.x.resize(grid.n_points);
        snap.delta.resize(grid.n_points);
        for (int g = 0; g < grid.n_points; ++g) {
            snap.x[g] = grid.point(g);
            snap.delta[g] = gap_function(at_t, snap.x[g]);
        }
    });
    return series;
}

}  // namespace bdgsol
