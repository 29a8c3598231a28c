#include "bdgsol/scattering_data.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace bdgsol {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kUnitVectorTol = 1e-12;
constexpr double kOrthogonalityTol = 1e-12;
constexpr double kPairingTol = 1e-10;
constexpr double kPi = 3.14159265358979323846;

void check_background(const Background& bg) {
    if (bg.delta_minus.rows() == 0 || bg.delta_minus.rows() != bg.delta_minus.cols())
        throw std::invalid_argument("background Delta_- must be a nonempty square matrix");
    if (!(bg.m > 0.0))
        throw Error(ErrorCode::NonUnitaryBackground, "bulk gap m must be positive");
    const int d = bg.dim();
    const double udev = (bg.delta_minus.adjoint() * bg.delta_minus - Mat::Identity(d, d)).norm();
    if (udev > kUnitaryTol) {
        std::ostringstream msg;
        msg << "Delta_- deviates from unitarity by " << udev;
        throw Error(ErrorCode::NonUnitaryBackground, msg.str());
    }
    if (bg.symmetry == Symmetry::Symmetric) {
        const double dev = (bg.delta_minus - bg.delta_minus.transpose()).norm();
        if (dev > kUnitaryTol)
            throw Error(ErrorCode::SymmetryViolation, "symmetric class requires Delta_- = Delta_-^T");
    } else if (bg.symmetry == Symmetry::Antisymmetric) {
        if (d % 2 != 0)
            throw Error(ErrorCode::SymmetryViolation, "antisymmetric class requires even d");
        const double dev = (bg.delta_minus + bg.delta_minus.transpose()).norm();
        if (dev > kUnitaryTol)
            throw Error(ErrorCode::SymmetryViolation, "antisymmetric class requires Delta_- = -Delta_-^T");
    }
}

}  // namespace

DerivedSoliton ValidatedSpec::derived(int j) const {
    DerivedSoliton ds;
    ds.kappa = kappa_[j];
    ds.epsilon = epsilon_[j];
    ds.s = s_[j];
    ds.c = std::sqrt(kappa_[j]) * std::exp(-kappa_[j] * solitons_[j].x);
    return ds;
}

double ValidatedSpec::min_kappa() const {
    double k = std::numeric_limits<double>::infinity();
    for (double v : kappa_) k = std::min(k, v);
    return k;
}

ValidatedSpec validate(const Background& bg, const std::vector<Soliton>& solitons) {
    check_background(bg);
    const int d = bg.dim();
    const int n = static_cast<int>(solitons.size());

    for (int j = 0; j < n; ++j) {
        const Soliton& sol = solitons[j];
        if (!(sol.theta > 0.0 && sol.theta < kPi)) {
            std::ostringstream msg;
            msg << "soliton " << j << " has theta = " << sol.theta << " outside (0, pi)";
            throw Error(ErrorCode::BadAngle, msg.str());
        }
        if (sol.p_hat.size() != d)
            throw std::invalid_argument("soliton p_hat dimension does not match background");
        const double ndev = std::abs(sol.p_hat.norm() - 1.0);
        if (ndev > kUnitVectorTol) {
            std::ostringstream msg;
            msg << "soliton " << j << " coefficient vector norm deviates from 1 by " << ndev;
            throw Error(ErrorCode::NonUnitVector, msg.str());
        }
    }

    // Group by exact angle equality: degeneracy is a structural choice by the
    // caller, not a floating-point coincidence.
    std::map<double, std::vector<int>> groups;
    for (int j = 0; j < n; ++j) groups[solitons[j].theta].push_back(j);
    for (const auto& [theta, members] : groups) {
        if (static_cast<int>(members.size()) > d) {
            std::ostringstream msg;
            msg << members.size() << " solitons share theta = " << theta
                << "; the maximum degeneracy is d = " << d;
            throw Error(ErrorCode::DegeneracyOverflow, msg.str());
        }
        for (size_t a = 0; a < members.size(); ++a) {
            for (size_t b = a + 1; b < members.size(); ++b) {
                const cd ip = solitons[members[a]].p_hat.dot(solitons[members[b]].p_hat);
                if (std::abs(ip) > kOrthogonalityTol) {
                    std::ostringstream msg;
                    msg << "degenerate solitons " << members[a] << " and " << members[b]
                        << " have |p_i^dag p_j| = " << std::abs(ip);
                    throw Error(ErrorCode::NonOrthogonalDegenerate, msg.str());
                }
            }
        }
    }

    ValidatedSpec spec;
    spec.bg_ = bg;
    spec.solitons_ = solitons;
    spec.s_.resize(n);
    spec.kappa_.resize(n);
    spec.epsilon_.resize(n);
    spec.p_matrix_ = Mat(d, n);
    spec.stack_p_ = Mat(2 * d, n);
    for (int j = 0; j < n; ++j) {
        const double th = solitons[j].theta;
        spec.s_[j] = cd(std::cos(th), std::sin(th));
        spec.kappa_[j] = bg.m * std::sin(th);
        spec.epsilon_[j] = bg.m * std::cos(th);
        spec.p_matrix_.col(j) = solitons[j].p_hat;
        spec.stack_p_.col(j).head(d) = solitons[j].p_hat;
        spec.stack_p_.col(j).tail(d) = spec.s_[j] * (bg.delta_minus.adjoint() * solitons[j].p_hat);
    }
    spec.coupling_ = Mat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cd ip = spec.p_matrix_.col(i).dot(spec.p_matrix_.col(j));
            spec.coupling_(i, j) = (2.0 * kI / bg.m) * ip / (spec.s_[i] - 1.0 / spec.s_[j]);
        }
    return spec;
}

Mat principal_unitary_sqrt(const Mat& u) {
    // A unitary matrix is normal, so its Schur form is diagonal up to
    // round-off; halve the eigenphases on the branch (-pi, pi].
    Eigen::ComplexSchur<Mat> schur(u);
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("Schur decomposition failed");
    const int d = static_cast<int>(u.rows());
    Vec half(d);
    for (int k = 0; k < d; ++k) {
        const cd lambda = schur.matrixT()(k, k);
        half(k) = std::polar(std::sqrt(std::abs(lambda)), std::arg(lambda) / 2.0);
    }
    const Mat& q = schur.matrixU();
    return q * half.asDiagonal() * q.adjoint();
}

ValidatedSpec apply_symmetry(const Background& bg, const std::vector<Soliton>& solitons,
                             bool complete_pairs) {
    check_background(bg);
    if (bg.symmetry == Symmetry::NonSymmetric)
        throw Error(ErrorCode::SymmetryViolation,
                    "apply_symmetry requires a symmetric or antisymmetric background");

    if (bg.symmetry == Symmetry::Symmetric) {
        const Mat inv_sqrt = principal_unitary_sqrt(bg.delta_minus).adjoint();
        std::vector<Soliton> fixed = solitons;
        for (size_t j = 0; j < fixed.size(); ++j) {
            Vec z = inv_sqrt * fixed[j].p_hat;
            int lead = -1;
            for (int i = 0; i < z.size(); ++i)
                if (std::abs(z(i)) > 1e-10) { lead = i; break; }
            if (lead < 0)
                throw Error(ErrorCode::NonUnitVector, "coefficient vector is numerically zero");
            const double phi = std::arg(z(lead));
            fixed[j].p_hat *= std::polar(1.0, -phi);
            z *= std::polar(1.0, -phi);
            const double imag_norm = z.imag().norm();
            const double conj_dev =
                (fixed[j].p_hat - bg.delta_minus * fixed[j].p_hat.conjugate()).norm();
            if (imag_norm > kPairingTol || conj_dev > kPairingTol) {
                std::ostringstream msg;
                msg << "soliton " << j << " violates p = Delta_- p^*: |Im z| = " << imag_norm
                    << ", |p - Delta_- p^*| = " << conj_dev;
                throw Error(ErrorCode::SymmetricRealityViolation, msg.str());
            }
        }
        return validate(bg, fixed);
    }

    // Antisymmetric: eigenvectors come in pairs (p, Delta_- p^*).
    std::vector<Soliton> paired;
    if (complete_pairs) {
        paired.reserve(2 * solitons.size());
        for (const Soliton& sol : solitons) {
            paired.push_back(sol);
            Soliton partner = sol;
            partner.p_hat = bg.delta_minus * sol.p_hat.conjugate();
            paired.push_back(partner);
        }
    } else {
        if (solitons.size() % 2 != 0)
            throw Error(ErrorCode::UnpairedAntisymmetricSoliton,
                        "antisymmetric spec has an odd number of solitons");
        for (size_t j = 0; j + 1 < solitons.size(); j += 2) {
            const Soliton& a = solitons[j];
            const Soliton& b = solitons[j + 1];
            if (a.theta != b.theta || a.x != b.x)
                throw Error(ErrorCode::UnpairedAntisymmetricSoliton,
                            "pair members must share theta and x exactly");
            const double dev = (b.p_hat - bg.delta_minus * a.p_hat.conjugate()).norm();
            if (dev > kPairingTol) {
                std::ostringstream msg;
                msg << "pair (" << j << ", " << j + 1 << ") violates p_2 = Delta_- p_1^* by " << dev;
                throw Error(ErrorCode::UnpairedAntisymmetricSoliton, msg.str());
            }
        }
        paired = solitons;
    }
    return validate(bg, paired);
}

}  // namespace bdgsol
