// Core aliases, block matrices, and the error taxonomy shared by all modules.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace bdgsol {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr cd kI{0.0, 1.0};

enum class Symmetry { NonSymmetric, Symmetric, Antisymmetric };

inline const char* to_string(Symmetry s) {
    switch (s) {
        case Symmetry::NonSymmetric: return "none";
        case Symmetry::Symmetric: return "symmetric";
        case Symmetry::Antisymmetric: return "antisymmetric";
    }
    return "?";
}

// Error codes split into two families: bad inputs (CLI exit code 2) and
// numeric failures such as ill-conditioning or inadequate truncation (exit 3).
enum class ErrorCode {
    // input
    NonUnitaryBackground,
    DegeneracyOverflow,
    NonOrthogonalDegenerate,
    BadAngle,
    SymmetryViolation,
    NonUnitVector,
    UnpairedAntisymmetricSoliton,
    SymmetricRealityViolation,
    ZeroArgument,
    SplitOutOfRange,
    GridTooCoarse,
    ConfigParseError,
    // numeric
    IllConditionedGram,
    NearBandEdge,
    TruncationInadequate,
    QuadratureTailTooLarge,
    SingularSubmatrix,
    IntegrationFailure,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonUnitaryBackground: return "NonUnitaryBackground";
        case ErrorCode::DegeneracyOverflow: return "DegeneracyOverflow";
        case ErrorCode::NonOrthogonalDegenerate: return "NonOrthogonalDegenerate";
        case ErrorCode::BadAngle: return "BadAngle";
        case ErrorCode::SymmetryViolation: return "SymmetryViolation";
        case ErrorCode::NonUnitVector: return "NonUnitVector";
        case ErrorCode::UnpairedAntisymmetricSoliton: return "UnpairedAntisymmetricSoliton";
        case ErrorCode::SymmetricRealityViolation: return "SymmetricRealityViolation";
        case ErrorCode::ZeroArgument: return "ZeroArgument";
        case ErrorCode::SplitOutOfRange: return "SplitOutOfRange";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::ConfigParseError: return "ConfigParseError";
        case ErrorCode::IllConditionedGram: return "IllConditionedGram";
        case ErrorCode::NearBandEdge: return "NearBandEdge";
        case ErrorCode::TruncationInadequate: return "TruncationInadequate";
        case ErrorCode::QuadratureTailTooLarge: return "QuadratureTailTooLarge";
        case ErrorCode::SingularSubmatrix: return "SingularSubmatrix";
        case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    }
    return "?";
}

inline bool is_input_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::IllConditionedGram:
        case ErrorCode::NearBandEdge:
        case ErrorCode::TruncationInadequate:
        case ErrorCode::QuadratureTailTooLarge:
        case ErrorCode::SingularSubmatrix:
        case ErrorCode::IntegrationFailure:
            return false;
        default:
            return true;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return to_string(code_); }
    int exit_code() const { return is_input_error(code_) ? 2 : 3; }

private:
    ErrorCode code_;
};

// Uniform sampling grid.
struct Grid {
    double x_min = -20.0;
    double x_max = 20.0;
    int n_points = 1001;

    double step() const { return (x_max - x_min) / (n_points - 1); }
    double point(int i) const { return x_min + i * step(); }
};

// Block matrices of the 2d-component problem.
// sigma1 = [0 I; I 0], sigma2 = [0 -iI; iI 0], sigma3 = [I 0; 0 -I].
inline Mat sigma1(int d) {
    Mat s = Mat::Zero(2 * d, 2 * d);
    s.topRightCorner(d, d) = Mat::Identity(d, d);
    s.bottomLeftCorner(d, d) = Mat::Identity(d, d);
    return s;
}

inline Mat sigma2(int d) {
    Mat s = Mat::Zero(2 * d, 2 * d);
    s.topRightCorner(d, d) = -kI * Mat::Identity(d, d);
    s.bottomLeftCorner(d, d) = kI * Mat::Identity(d, d);
    return s;
}

inline Mat sigma3(int d) {
    Mat s = Mat::Identity(2 * d, 2 * d);
    s.bottomRightCorner(d, d) = -Mat::Identity(d, d);
    return s;
}

// M = [0 D; D^dag 0] for a unitary D; hermitian, unitary, anticommutes with sigma3.
inline Mat off_diagonal_block(const Mat& delta) {
    const int d = static_cast<int>(delta.rows());
    Mat m = Mat::Zero(2 * d, 2 * d);
    m.topRightCorner(d, d) = delta;
    m.bottomLeftCorner(d, d) = delta.adjoint();
    return m;
}

}  // namespace bdgsol
