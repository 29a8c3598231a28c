// Discrete scattering data: the bulk background, per-soliton data on the unit
// circle, validation of all structural invariants, and the symmetry-class
// constraints on coefficient vectors.

#pragma once

#include <vector>

#include "bdgsol/types.hpp"

namespace bdgsol {

struct Background {
    double m = 1.0;        // bulk gap magnitude, > 0
    Mat delta_minus;       // d x d unitary left asymptote
    Symmetry symmetry = Symmetry::NonSymmetric;

    int dim() const { return static_cast<int>(delta_minus.rows()); }
};

struct Soliton {
    double theta = 0.0;    // eigenvalue angle, s = e^{i theta}, 0 < theta < pi
    Vec p_hat;             // d-component unit coefficient vector
    double x = 0.0;        // position parameter
};

// Quantities derived from (theta, x): decay rate, bound-state energy, and the
// norming constant c = sqrt(kappa) e^{-kappa x}.
struct DerivedSoliton {
    double kappa = 0.0;
    double epsilon = 0.0;
    double c = 0.0;
    cd s;
};

// Immutable bundle produced by validate(). Caches the pieces every
// construction formula needs:
//   p_matrix   (p_1, ..., p_n)                                   d x n
//   stack_p    rows [p_j ; s_j Delta_-^dag p_j]                  2d x n
//   coupling   (2i/m) p_i^dag p_j / (s_i - s_j^{-1})             n x n
// coupling is hermitian positive definite; the x-dependent Gram matrix is
// G(x) = E coupling E with E = diag(e_j(x)).
class ValidatedSpec {
public:
    const Background& background() const { return bg_; }
    const std::vector<Soliton>& solitons() const { return solitons_; }

    int n() const { return static_cast<int>(solitons_.size()); }
    int d() const { return bg_.dim(); }
    double m() const { return bg_.m; }

    double theta(int j) const { return solitons_[j].theta; }
    double x(int j) const { return solitons_[j].x; }
    cd s(int j) const { return s_[j]; }
    double kappa(int j) const { return kappa_[j]; }
    double epsilon(int j) const { return epsilon_[j]; }
    DerivedSoliton derived(int j) const;

    const Mat& p_matrix() const { return p_matrix_; }
    const Mat& stack_p() const { return stack_p_; }
    const Mat& coupling() const { return coupling_; }

    double min_kappa() const;

private:
    friend ValidatedSpec validate(const Background&, const std::vector<Soliton>&);

    Background bg_;
    std::vector<Soliton> solitons_;
    std::vector<cd> s_;
    std::vector<double> kappa_, epsilon_;
    Mat p_matrix_, stack_p_, coupling_;
};

// Checks every type invariant and returns the precomputed bundle.
// Degeneracy is detected by exact equality of the input angles.
ValidatedSpec validate(const Background& bg, const std::vector<Soliton>& solitons);

// Enforces the symmetry-class constraints on the coefficient vectors.
//   Symmetric: each p must satisfy p = Delta_- p^* up to a global phase; the
//   phase is fixed deterministically so that Delta_-^{-1/2} p is real.
//   Antisymmetric: solitons must form consecutive pairs (2j-1, 2j) with equal
//   theta and x and p_{2j} = Delta_- p_{2j-1}^*.  With complete_pairs set, a
//   half-specified pair is completed by constructing the partner.
ValidatedSpec apply_symmetry(const Background& bg, const std::vector<Soliton>& solitons,
                             bool complete_pairs = true);

// Principal square root of a unitary matrix: eigenphases halved on the
// branch (-pi, pi].
Mat principal_unitary_sqrt(const Mat& u);

}  // namespace bdgsol
