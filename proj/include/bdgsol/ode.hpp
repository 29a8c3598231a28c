// Embedded Dormand-Prince 5(4) integrator for complex matrix-valued states.
// Elementwise mixed absolute/relative error control with a standard
// step-size controller.  (The odeint Eigen adapter shipped with this
// toolchain does not accept complex states, hence the local stepper.)

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>

#include "bdgsol/types.hpp"

namespace bdgsol {

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 0.0;   // 0: span/100
    std::size_t max_steps = 2'000'000;
};

namespace detail {

// Butcher tableau of the Dormand-Prince 5(4) pair.
inline constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order weights equal kA[6]; error weights are b5 - b4.
inline constexpr double kE[7] = {
    35.0 / 384 - 5179.0 / 57600,   0.0,
    500.0 / 1113 - 7571.0 / 16695, 125.0 / 192 - 393.0 / 640,
    -2187.0 / 6784 + 92097.0 / 339200, 11.0 / 84 - 187.0 / 2100, -1.0 / 40,
};

}  // namespace detail

// Integrates dy/dx = f(x, y) from x0 to x1 (either direction).  Throws
// Error(IntegrationFailure) if the step count limit is hit or the step size
// underflows.
template <typename Rhs>
Mat integrate_dopri5(Rhs&& f, Mat y, double x0, double x1, const IntegratorOptions& opt = {}) {
    const double span = x1 - x0;
    if (span == 0.0) return y;
    const double dir = span > 0 ? 1.0 : -1.0;

    double h = opt.initial_step > 0 ? opt.initial_step : std::abs(span) / 100.0;
    h = std::min(h, std::abs(span));
    double x = x0;

    Mat k[7];
    k[0] = f(x, y);
    std::size_t steps = 0;
    while (dir * (x1 - x) > 0) {
        if (++steps > opt.max_steps)
            throw Error(ErrorCode::IntegrationFailure, "step limit exceeded");
        h = std::min(h, std::abs(x1 - x));
        const double hs = dir * h;

        for (int stage = 1; stage < 7; ++stage) {
            Mat acc = y;
            for (int j = 0; j < stage; ++j)
                if (detail::kA[stage][j] != 0.0) acc += (hs * detail::kA[stage][j]) * k[j];
            k[stage] = f(x + detail::kC[stage] * hs, acc);
        }
        Mat y5 = y;
        for (int j = 0; j < 6; ++j)
            if (detail::kA[6][j] != 0.0) y5 += (hs * detail::kA[6][j]) * k[j];

        Mat err = Mat::Zero(y.rows(), y.cols());
        for (int j = 0; j < 7; ++j)
            if (detail::kE[j] != 0.0) err += (hs * detail::kE[j]) * k[j];

        double ratio = 0.0;
        for (Eigen::Index c = 0; c < y.cols(); ++c)
            for (Eigen::Index r = 0; r < y.rows(); ++r) {
                const double scale =
                    opt.abs_tol + opt.rel_tol * std::max(std::abs(y(r, c)), std::abs(y5(r, c)));
                ratio = std::max(ratio, std::abs(err(r, c)) / scale);
            }

        if (ratio <= 1.0) {
            x += hs;
            y.swap(y5);
            k[0] = k[6];  // FSAL
        }
        const double factor = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (!(h > 0.0) || x + dir * h == x)
            throw Error(ErrorCode::IntegrationFailure, "step size underflow");
    }
    return y;
}

}  // namespace bdgsol
