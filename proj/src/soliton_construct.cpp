#include "bdgsol/soliton_construct.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bdgsol/quadrature.hpp"

namespace bdgsol {

namespace {

// A soliton is dropped from the solve once e_j^2 < e^{-kDropExponent}; its
// contribution to any output is then below e^{-96} of scale, while the kept
// diagonal entries e_j^{-2} stay representable.
constexpr double kDropExponent = 96.0;

}  // namespace

std::pair<cd, cd> uniformize(cd s, double m) {
    if (s == cd(0.0, 0.0))
        throw Error(ErrorCode::ZeroArgument, "uniformization variable must be nonzero");
    const cd inv = 1.0 / s;
    return {0.5 * m * (s + inv), 0.5 * m * (s - inv)};
}

CoreEval evaluate_core(const ValidatedSpec& spec, double x) {
    const int n = spec.n();
    CoreEval core;
    std::vector<double> log_e;
    for (int j = 0; j < n; ++j) {
        const double lg = spec.kappa(j) * (x - spec.x(j)) + 0.5 * std::log(spec.kappa(j));
        if (-2.0 * lg <= kDropExponent) {
            core.active.push_back(j);
            log_e.push_back(lg);
        }
    }
    const int na = static_cast<int>(core.active.size());
    core.inv_e = RealVec(na);
    for (int a = 0; a < na; ++a) core.inv_e(a) = std::exp(-log_e[a]);

    Mat system(na, na);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            system(a, b) = spec.coupling()(core.active[a], core.active[b]);
    for (int a = 0; a < na; ++a) system(a, a) += core.inv_e(a) * core.inv_e(a);

    if (na == 0) {
        core.solve = Mat(0, 0);
        return core;
    }

    // Symmetric equilibration to unit diagonal separates benign magnitude
    // spread (solitons far from x) from genuine near-degeneracy.
    RealVec scale(na);
    for (int a = 0; a < na; ++a) scale(a) = 1.0 / std::sqrt(system(a, a).real());
    Mat equilibrated = scale.asDiagonal() * system * scale.asDiagonal();

    Eigen::JacobiSVD<Mat> svd(equilibrated, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()(na - 1);
    core.condition = smin > 0.0 ? svd.singularValues()(0) / smin
                                : std::numeric_limits<double>::infinity();
    if (core.condition > kGramConditionLimit) {
        std::ostringstream msg;
        msg << "I + G condition number " << core.condition << " at x = " << x
            << " (near-coincident solitons)";
        throw Error(ErrorCode::IllConditionedGram, msg.str());
    }

    Mat inv_eq = svd.solve(Mat::Identity(na, na));
    core.solve = scale.asDiagonal() * inv_eq * scale.asDiagonal();
    return core;
}

Mat gram_matrix(const ValidatedSpec& spec, double x) {
    const int n = spec.n();
    Mat g(n, n);
    for (int i = 0; i < n; ++i) {
        const double ei = std::sqrt(spec.kappa(i)) * std::exp(spec.kappa(i) * (x - spec.x(i)));
        for (int j = 0; j < n; ++j) {
            const double ej = std::sqrt(spec.kappa(j)) * std::exp(spec.kappa(j) * (x - spec.x(j)));
            g(i, j) = ei * ej * spec.coupling()(i, j);
        }
    }
    return g;
}

namespace {

// P and stack_p restricted to the active set.
Mat active_cols(const Mat& full, const std::vector<int>& active) {
    Mat out(full.rows(), static_cast<Eigen::Index>(active.size()));
    for (size_t a = 0; a < active.size(); ++a) out.col(a) = full.col(active[a]);
    return out;
}

}  // namespace

Mat gap_function(const ValidatedSpec& spec, double x) {
    const Mat& dm = spec.background().delta_minus;
    const CoreEval core = evaluate_core(spec, x);
    Mat delta = spec.m() * dm;
    if (core.active.empty()) return delta;

    const Mat p = active_cols(spec.p_matrix(), core.active);
    Vec inv_s(core.active.size());
    for (size_t a = 0; a < core.active.size(); ++a) inv_s(a) = 1.0 / spec.s(core.active[a]);
    delta.noalias() -= 2.0 * kI * (p * core.solve * inv_s.asDiagonal() * p.adjoint() * dm);
    return delta;
}

Mat bound_states(const ValidatedSpec& spec, double x) {
    const CoreEval core = evaluate_core(spec, x);
    Mat h = Mat::Zero(2 * spec.d(), spec.n());
    if (core.active.empty()) return h;
    const Mat stack = active_cols(spec.stack_p(), core.active);
    const Mat scaled = -stack * core.solve * core.inv_e.asDiagonal();
    for (size_t a = 0; a < core.active.size(); ++a) h.col(core.active[a]) = scaled.col(a);
    return h;
}

Mat bound_states_scaled(const ValidatedSpec& spec, double x) {
    const CoreEval core = evaluate_core(spec, x);
    Mat he = Mat::Zero(2 * spec.d(), spec.n());
    if (core.active.empty()) return he;
    const Mat stack = active_cols(spec.stack_p(), core.active);
    const Mat scaled = -stack * core.solve;
    for (size_t a = 0; a < core.active.size(); ++a) he.col(core.active[a]) = scaled.col(a);
    return he;
}

Mat scattering_profile(const ValidatedSpec& spec, double x, double s) {
    if (s == 0.0) throw Error(ErrorCode::ZeroArgument, "scattering state needs s != 0");
    const int d = spec.d();
    const Mat& dm = spec.background().delta_minus;
    Mat profile(2 * d, d);
    profile.topRows(d) = Mat::Identity(d, d);
    profile.bottomRows(d) = (1.0 / s) * dm.adjoint();
    if (spec.n() == 0) return profile;

    const Mat he = bound_states_scaled(spec, x);
    Vec pole(spec.n());
    for (int j = 0; j < spec.n(); ++j) pole(j) = 1.0 / (spec.s(j) - s);
    profile.noalias() +=
        (2.0 * kI / spec.m()) * (he * pole.asDiagonal() * spec.p_matrix().adjoint());
    return profile;
}

Mat scattering_state(const ValidatedSpec& spec, double x, double s) {
    const cd k = uniformize(cd(s, 0.0), spec.m()).second;
    return std::exp(kI * k * x) * scattering_profile(spec, x, s);
}

Mat kernel_K(const ValidatedSpec& spec, double x, double y) {
    const int d = spec.d();
    const CoreEval core = evaluate_core(spec, x);
    if (core.active.empty()) return Mat::Zero(2 * d, 2 * d);
    const Mat stack = active_cols(spec.stack_p(), core.active);
    // H(x) W(y)^dag = -stack B diag(e_j(y)/e_j(x)) stack^dag; the ratios are
    // <= 1 for y <= x.
    RealVec ratio(core.active.size());
    for (size_t a = 0; a < core.active.size(); ++a) {
        const int j = core.active[a];
        ratio(a) = std::exp(spec.kappa(j) * (y - x));
    }
    return -stack * core.solve * ratio.asDiagonal() * stack.adjoint();
}

cd f_basic(double x_rel, double theta, double m) {
    const double kappa = m * std::sin(theta);
    return -0.5 * std::sqrt(kappa) / std::cosh(kappa * x_rel);
}

cd delta_basic(double x_rel, double theta, double m) {
    const double kappa = m * std::sin(theta);
    return m * std::polar(1.0, -theta) *
           (std::cos(theta) - kI * std::sin(theta) * std::tanh(kappa * x_rel));
}

std::pair<double, double> quadrature_domain(const ValidatedSpec& spec) {
    if (spec.n() == 0) return {-5.0, 5.0};
    double lo = spec.x(0), hi = spec.x(0);
    for (int j = 1; j < spec.n(); ++j) {
        lo = std::min(lo, spec.x(j));
        hi = std::max(hi, spec.x(j));
    }
    const double margin = 40.0 / spec.min_kappa();
    return {lo - margin, hi + margin};
}

Mat bound_state_overlap(const ValidatedSpec& spec, double* tail_bound) {
    const int n = spec.n();
    if (n == 0) {
        if (tail_bound) *tail_bound = 0.0;
        return Mat(0, 0);
    }
    const auto [lo, hi] = quadrature_domain(spec);
    const double kmin = spec.min_kappa();
    double kmax = 0.0;
    for (int j = 0; j < n; ++j) kmax = std::max(kmax, spec.kappa(j));

    // |h_j| <= sqrt(2 kappa_j) e^{-kappa_j |x - x_j|}, so the dropped tail of
    // any overlap entry is bounded by 2 e^{-2 kappa_min margin}.
    if (tail_bound) {
        double margin = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            margin = std::min({margin, spec.x(j) - lo, hi - spec.x(j)});
        *tail_bound = 2.0 * std::exp(-2.0 * kmin * margin);
    }

    static const QuadratureRule rule = gauss_legendre(16);
    const int panels = std::max(16, static_cast<int>(std::ceil((hi - lo) * kmax)));
    auto integrand = [&](double x) -> Mat {
        const Mat h = bound_states(spec, x);
        return Mat(h.adjoint() * h);
    };
    return composite_quadrature<Mat>(integrand, lo, hi, panels, rule, Mat::Zero(n, n));
}

}  // namespace bdgsol
