// Composite Gauss-Legendre quadrature on a fixed interval.  Nodes and weights
// come from the Golub-Welsch eigenvalue problem for the Legendre recurrence.

#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bdgsol {

struct QuadratureRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

inline QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int k = 0; k < order; ++k) {
        rule.nodes[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        rule.weights[k] = 2.0 * v0 * v0;
    }
    return rule;
}

// Integrates f over [a, b] with `panels` equal panels of the given rule.
// F must be an additive type supporting scalar multiplication (double,
// complex, Eigen matrices).
template <typename F, typename Func>
F composite_quadrature(Func&& f, double a, double b, int panels, const QuadratureRule& rule,
                       const F& zero) {
    F total = zero;
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double left = a + p * width;
        const double mid = left + 0.5 * width;
        for (size_t k = 0; k < rule.nodes.size(); ++k) {
            const double xk = mid + 0.5 * width * rule.nodes[k];
            total += (0.5 * width * rule.weights[k]) * f(xk);
        }
    }
    return total;
}

}  // namespace bdgsol
