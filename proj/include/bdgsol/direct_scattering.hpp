// Forward-problem oracle: integrate the first-order spectral system across a
// sampled potential, extract the scattering matrix by plane-wave matching at
// the endpoints, and evaluate every scattering identity numerically.  This
// module never uses the closed-form construction internally, so it serves as
// an independent check on it.

#pragma once

#include <functional>
#include <vector>

#include "bdgsol/ode.hpp"
#include "bdgsol/scattering_data.hpp"
#include "bdgsol/types.hpp"

namespace bdgsol {

struct PotentialSlab {
    double x_left = 0.0;
    double x_right = 0.0;
    double m = 1.0;
    Mat delta_minus;   // unitary asymptote on the left
    Mat delta_plus;    // unitary asymptote on the right
    Symmetry symmetry = Symmetry::NonSymmetric;
    std::function<Mat(double)> sample;  // x -> d x d gap matrix, thread-safe
    double noise_floor = 0.0;  // sampling/interpolation error, relative to m

    int dim() const { return static_cast<int>(delta_minus.rows()); }
};

struct ScatterOptions {
    double guard_band = 1e-3;      // excluded neighborhoods of s = +-1
    double truncation_tol = 1e-8;  // boundary deviation limit, relative to m
    // Defaults keep the accumulated error over O(50)-unit slabs comfortably
    // below the 1e-8 level the identity checks run at.
    IntegratorOptions integrator{1e-12, 1e-13, 0.0, 2'000'000};
};

// Analytic slab backed by the closed-form gap function.  The default margin
// puts the boundary deviation about four orders below the truncation limit.
PotentialSlab make_slab(const ValidatedSpec& spec);
PotentialSlab make_slab(const ValidatedSpec& spec, double x_left, double x_right);

// Slab interpolated from samples on an x grid (order-8 local Lagrange).
PotentialSlab slab_from_samples(const std::vector<double>& x, const std::vector<Mat>& delta,
                                double m, Mat delta_minus, Mat delta_plus,
                                Symmetry symmetry = Symmetry::NonSymmetric);

// Boundary deviation (max of the two ends, relative to m); throws
// TruncationInadequate above options.truncation_tol.
double check_truncation(const PotentialSlab& slab, const ScatterOptions& opt = {});

// Plane-wave column blocks of the uniform problem:
// Psi(x, s) = (s I + M) e^{i k(s) x sigma3} with M = [0 D; D^dag 0].
Mat plane_wave_basis(const Mat& delta_asym, double m, double s, double x);

// Fundamental solution at x_right for the initial value
// Y(x_left) = Psi_-(x_left, s); integrates the phase-stripped unknown
// Y e^{-i k x sigma3} to keep large-|k| oscillations out of the stepper.
Mat integrate_zs(const PotentialSlab& slab, double s, const ScatterOptions& opt = {});

struct ScatteringSample {
    double s = 0.0;
    Mat S;                 // 2d x 2d
    Mat A, B, T, R;        // d x d blocks, T = A^{-1}, R = B A^{-1}
    double r_norm = 0.0;   // ||R||_F, clamped below by the truncation floor
    double r_norm_raw = 0.0;
    double floor = 0.0;    // truncation noise floor for reflection readings
    double det_residual = 0.0;        // |det S - 1|
    double sigma3_residual = 0.0;     // ||S^dag sigma3 S - sigma3||
    double unitarity_residual = 0.0;  // ||T^dag T + R^dag R - I||
    double symmetry_residual = 0.0;   // ||R -+ R^T|| in the symmetric classes
};

ScatteringSample scattering_matrix(const PotentialSlab& slab, double s,
                                   const ScatterOptions& opt = {});

// Mirror extraction: integrate right-to-left from Psi_+(x_right) and match
// against Psi_- at the left end.  Equals S(s)^{-1} = sigma3 S(s)^dag sigma3
// up to integration error, which makes it an independent consistency probe.
Mat reverse_scattering_matrix(const PotentialSlab& slab, double s,
                              const ScatterOptions& opt = {});

struct ReflectionScan {
    std::vector<ScatteringSample> samples;
    double max_r = 0.0;        // max over the grid of the clamped ||R||
    double max_r_raw = 0.0;
    double floor = 0.0;        // common truncation floor
};

ReflectionScan reflection_scan(const PotentialSlab& slab, const std::vector<double>& s_grid,
                               const ScatterOptions& opt = {}, int threads = 1);

// Symmetric s grid over [-s_max, -s_min] U [s_min, s_max] with guard bands
// around +-1 removed.
std::vector<double> make_s_grid(double s_min, double s_max, int count, double guard_band);

// Centered second-order residual of the spectral equation for an
// eigenfunction sampled on a uniform grid; one norm per interior point.
std::vector<double> zs_residual(const std::vector<double>& x, const std::vector<Mat>& w,
                                const std::vector<Mat>& delta, double epsilon);

struct WronskianReport {
    double det_deviation = 0.0;  // max |det Y - (s^2-1)^d| over probes
    double j_deviation = 0.0;    // max ||Y^dag sigma3 Y - (s^2-1) sigma3|| over probes
};

WronskianReport wronskian_check(const PotentialSlab& slab, double s,
                                const std::vector<double>& probes,
                                const ScatterOptions& opt = {});

}  // namespace bdgsol
