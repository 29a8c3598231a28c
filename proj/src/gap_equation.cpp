#include "bdgsol/gap_equation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bdgsol/quadrature.hpp"
#include "bdgsol/soliton_construct.hpp"

namespace bdgsol {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::vector<double> filling_rates(const ValidatedSpec& spec) {
    std::vector<double> nu(spec.n());
    for (int j = 0; j < spec.n(); ++j) nu[j] = spec.theta(j) / kPi;
    return nu;
}

std::vector<double> filling_rates(const ValidatedSpec& spec, const std::vector<double>& split) {
    if (spec.background().symmetry != Symmetry::Antisymmetric)
        throw Error(ErrorCode::SplitOutOfRange,
                    "filling splits exist only in the antisymmetric class");
    if (spec.n() % 2 != 0)
        throw Error(ErrorCode::UnpairedAntisymmetricSoliton,
                    "antisymmetric spec must hold consecutive pairs");
    if (static_cast<int>(split.size()) != spec.n() / 2)
        throw Error(ErrorCode::SplitOutOfRange, "need one split per soliton pair");

    std::vector<double> nu(spec.n());
    for (int p = 0; p < spec.n() / 2; ++p) {
        const double base = spec.theta(2 * p) / kPi;
        const double lo = base - split[p];
        const double hi = base + split[p];
        if (lo < -1e-12 || hi > 1.0 + 1e-12) {
            std::ostringstream msg;
            msg << "pair " << p << " split " << split[p] << " pushes nu outside [0, 1]";
            throw Error(ErrorCode::SplitOutOfRange, msg.str());
        }
        nu[2 * p] = std::clamp(hi, 0.0, 1.0);
        nu[2 * p + 1] = std::clamp(lo, 0.0, 1.0);
    }
    return nu;
}

Mat xi_bound(const ValidatedSpec& spec, const std::vector<double>& nu, double x) {
    if (static_cast<int>(nu.size()) != spec.n())
        throw std::invalid_argument("filling vector length must equal the soliton count");
    const Mat h = bound_states(spec, x);
    RealVec weight(spec.n());
    for (int j = 0; j < spec.n(); ++j) weight(j) = 2.0 * (nu[j] - spec.theta(j) / kPi);
    return h * weight.asDiagonal() * h.adjoint();
}

Mat xi_bound_symmetrized(const ValidatedSpec& spec, const std::vector<double>& nu, double x) {
    Mat xi = xi_bound(spec, nu, x);
    if (spec.background().symmetry == Symmetry::Antisymmetric) {
        const Mat s2 = sigma2(spec.d());
        xi += s2 * xi.conjugate() * s2;
    }
    return xi;
}

double gap_residual(const ValidatedSpec& spec, const std::vector<double>& nu,
                    const std::vector<double>& grid) {
    const Mat s3 = sigma3(spec.d());
    double worst = 0.0;
    for (double x : grid) {
        const Mat xi = xi_bound_symmetrized(spec, nu, x);
        worst = std::max(worst, (s3 * xi - xi * s3).norm());
    }
    return worst;
}

std::vector<double> default_residual_grid(const ValidatedSpec& spec) {
    double lo = -5.0, hi = 5.0;
    if (spec.n() > 0) {
        const double margin = 10.0 / spec.min_kappa();
        lo = spec.x(0) - margin;
        hi = spec.x(0) + margin;
        for (int j = 1; j < spec.n(); ++j) {
            lo = std::min(lo, spec.x(j) - margin);
            hi = std::max(hi, spec.x(j) + margin);
        }
    }
    std::vector<double> grid(201);
    for (int i = 0; i < 201; ++i) grid[i] = lo + (hi - lo) * i / 200.0;
    return grid;
}

double bound_orthonormality(const ValidatedSpec& spec) {
    if (spec.n() == 0) return 0.0;
    double tail = 0.0;
    const Mat overlap = bound_state_overlap(spec, &tail);
    if (tail > 1e-9) {
        std::ostringstream msg;
        msg << "quadrature tail bound " << tail << " is not negligible";
        throw Error(ErrorCode::QuadratureTailTooLarge, msg.str());
    }
    return (overlap - Mat::Identity(spec.n(), spec.n())).norm();
}

double commutator_gram_min_eigenvalue(const ValidatedSpec& spec) {
    const int n = spec.n();
    if (n == 0) return 0.0;
    const Mat s3 = sigma3(spec.d());
    const auto [lo, hi] = quadrature_domain(spec);
    double kmax = 0.0;
    for (int j = 0; j < n; ++j) kmax = std::max(kmax, spec.kappa(j));

    static const QuadratureRule rule = gauss_legendre(16);
    const int panels = std::max(16, static_cast<int>(std::ceil((hi - lo) * kmax)));
    auto integrand = [&](double x) -> Mat {
        const Mat h = bound_states(spec, x);
        std::vector<Mat> fields(n);
        for (int j = 0; j < n; ++j) {
            const Mat hh = h.col(j) * h.col(j).adjoint();
            fields[j] = s3 * hh - hh * s3;
        }
        Mat gram(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) gram(a, b) = (fields[a].adjoint() * fields[b]).trace();
        return gram;
    };
    const Mat gram = composite_quadrature<Mat>(integrand, lo, hi, panels, rule, Mat::Zero(n, n));
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    return es.eigenvalues()(0);
}

PerturbationSlope gap_perturbation_slope(const ValidatedSpec& spec, int j, double delta,
                                         const std::vector<double>& grid) {
    PerturbationSlope out;
    std::vector<double> nu = filling_rates(spec);
    nu[j] += delta;
    out.residual = gap_residual(spec, nu, grid);
    nu[j] -= 0.5 * delta;
    out.residual_half = gap_residual(spec, nu, grid);
    out.slope = out.residual / delta;
    return out;
}

}  // namespace bdgsol
