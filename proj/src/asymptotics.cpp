#include "bdgsol/asymptotics.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bdgsol/soliton_construct.hpp"

namespace bdgsol {

namespace {

cd minor_det(const Mat& a, int drop_row, int drop_col) {
    const int n = static_cast<int>(a.rows());
    if (n == 1) return cd(1.0, 0.0);
    Mat sub(n - 1, n - 1);
    for (int i = 0, si = 0; i < n; ++i) {
        if (i == drop_row) continue;
        for (int j = 0, sj = 0; j < n; ++j) {
            if (j == drop_col) continue;
            sub(si, sj) = a(i, j);
            ++sj;
        }
        ++si;
    }
    return Eigen::PartialPivLU<Mat>(sub).determinant();
}

// Entries adj(A)_{i,c} = (-1)^{i+c} det(A without row c, column i).
Vec adjugate_column(const Mat& a, int c) {
    const int n = static_cast<int>(a.rows());
    Vec w(n);
    for (int i = 0; i < n; ++i)
        w(i) = ((i + c) % 2 == 0 ? 1.0 : -1.0) * minor_det(a, c, i);
    return w;
}

Vec adjugate_row(const Mat& a, int r) {
    const int n = static_cast<int>(a.rows());
    Vec w(n);
    for (int j = 0; j < n; ++j)
        w(j) = ((r + j) % 2 == 0 ? 1.0 : -1.0) * minor_det(a, j, r);
    return w;
}

double real_determinant(const Mat& a) {
    if (a.rows() == 0) return 1.0;
    return Eigen::PartialPivLU<Mat>(a).determinant().real();
}

}  // namespace

Mat q_matrix(const ValidatedSpec& sorted, int count) {
    // coupling = Q / m by definition.
    return sorted.m() * sorted.coupling().topLeftCorner(count, count);
}

std::vector<double> position_shifts(const ValidatedSpec& sorted) {
    const int n = sorted.n();
    std::vector<double> y(n, 0.0);
    if (n == 0) return y;
    double det_prev = real_determinant(q_matrix(sorted, 1));
    for (int j = 1; j < n; ++j) {
        const double det_j = real_determinant(q_matrix(sorted, j + 1));
        const double decay = std::sin(sorted.theta(j)) * det_j / det_prev;
        double yj = -std::log(decay) / (2.0 * sorted.kappa(j));
        if (yj < 0.0 && yj > -1e-12) yj = 0.0;
        y[j] = yj;
        det_prev = det_j;
    }
    return y;
}

std::pair<Vec, Vec> coefficient_vectors(const ValidatedSpec& sorted, int j) {
    const Mat& dm = sorted.background().delta_minus;
    if (j == 0) {
        const Vec q = sorted.p_matrix().col(0);
        const Vec r = sorted.s(0) * (dm.adjoint() * q);
        return {q, r};
    }
    const Mat q_full = q_matrix(sorted, j + 1);
    const Vec cof = adjugate_column(q_full, j);
    const double det_j = real_determinant(q_full);
    const double det_prev = real_determinant(q_matrix(sorted, j));
    const double norm = std::sqrt(std::sin(sorted.theta(j)) * det_prev * det_j);

    Vec q = Vec::Zero(sorted.d());
    Vec r = Vec::Zero(sorted.d());
    for (int l = 0; l <= j; ++l) {
        q += cof(l) * sorted.p_matrix().col(l);
        r += cof(l) * (sorted.s(l) * (dm.adjoint() * sorted.p_matrix().col(l)));
    }
    return {Vec(q / norm), Vec(r / norm)};
}

std::vector<Mat> intermediate_backgrounds(const ValidatedSpec& sorted) {
    const Mat& dm = sorted.background().delta_minus;
    std::vector<Mat> bars;
    bars.reserve(sorted.n() + 1);
    bars.push_back(dm);
    for (int j = 1; j <= sorted.n(); ++j) {
        const Mat q = q_matrix(sorted, j);
        const Mat p = sorted.p_matrix().leftCols(j);
        Vec inv_s(j);
        for (int k = 0; k < j; ++k) inv_s(k) = 1.0 / sorted.s(k);
        Mat bar = dm - 2.0 * kI * (p * q.lu().solve(inv_s.asDiagonal() * (p.adjoint() * dm)));
        bars.push_back(bar);
    }
    return bars;
}

AsymptoticDecomposition decompose(const ValidatedSpec& spec) {
    const int n = spec.n();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return spec.x(a) < spec.x(b); });
    std::vector<Soliton> ordered;
    ordered.reserve(n);
    for (int idx : perm) ordered.push_back(spec.solitons()[idx]);

    AsymptoticDecomposition dec;
    dec.sorted = validate(spec.background(), ordered);
    dec.permutation = std::move(perm);
    dec.shifts = position_shifts(dec.sorted);
    dec.positions.resize(n);
    dec.q_hat = Mat(spec.d(), n);
    dec.r_hat = Mat(spec.d(), n);
    for (int j = 0; j < n; ++j) {
        dec.positions[j] = dec.sorted.x(j) + dec.shifts[j];
        auto [q, r] = coefficient_vectors(dec.sorted, j);
        dec.q_hat.col(j) = q;
        dec.r_hat.col(j) = r;
    }
    dec.backgrounds = intermediate_backgrounds(dec.sorted);

    dec.min_kappa_separation = std::numeric_limits<double>::infinity();
    for (int j = 0; j + 1 < n; ++j) {
        const double gap = dec.sorted.x(j + 1) - dec.sorted.x(j);
        dec.min_kappa_separation =
            std::min(dec.min_kappa_separation, dec.sorted.min_kappa() * gap);
    }
    return dec;
}

ApproxProfile approx_profile(const AsymptoticDecomposition& dec, int j, double x) {
    const ValidatedSpec& spec = dec.sorted;
    const int d = spec.d();
    const double m = spec.m();
    const double rel = x - dec.positions[j];
    const double theta = spec.theta(j);

    ApproxProfile out;
    out.h = Vec(2 * d);
    out.h.head(d) = dec.q_hat.col(j);
    out.h.tail(d) = dec.r_hat.col(j);
    out.h *= f_basic(rel, theta, m);

    const cd core = delta_basic(rel, theta, m);
    const Mat rr = dec.r_hat.col(j) * dec.r_hat.col(j).adjoint();
    const Mat qq = dec.q_hat.col(j) * dec.q_hat.col(j).adjoint();
    const Mat& bar = dec.backgrounds[j];
    out.delta = bar * (m * (Mat::Identity(d, d) - rr) + core * rr);
    out.delta_alt = (m * (Mat::Identity(d, d) - qq) + core * qq) * bar;
    return out;
}

Mat rank_one_phase_rotation(const Vec& v, double theta) {
    const int d = static_cast<int>(v.size());
    return Mat::Identity(d, d) + (std::polar(1.0, -theta) - 1.0) * (v * v.adjoint());
}

Mat adjugate(const Mat& a) {
    const int n = static_cast<int>(a.rows());
    Mat c(n, n);
    for (int j = 0; j < n; ++j) c.col(j) = adjugate_column(a, j);
    return c;
}

Mat jacobi_submatrix_inverse(const Mat& a) {
    const int n = static_cast<int>(a.rows());
    if (n < 2) throw std::invalid_argument("identity needs a matrix of size >= 2");
    Eigen::FullPivLU<Mat> lu_a(a);
    if (!lu_a.isInvertible())
        throw Error(ErrorCode::SingularSubmatrix, "A is singular");
    const Mat b = a.topLeftCorner(n - 1, n - 1);
    Eigen::FullPivLU<Mat> lu_b(b);
    if (!lu_b.isInvertible())
        throw Error(ErrorCode::SingularSubmatrix, "leading submatrix B is singular");

    const Vec col = adjugate_column(a, n - 1);
    const Vec row = adjugate_row(a, n - 1);
    const cd det_a = lu_a.determinant();
    const cd det_b = lu_b.determinant();
    return (col * row.transpose()) / (det_a * det_b);
}

}  // namespace bdgsol
