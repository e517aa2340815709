#include "rmtlab/fredholm.hpp"

#include <Eigen/Dense>

#include "rmtlab/common.hpp"
#include "rmtlab/kernel.hpp"
#include "rmtlab/quadrature.hpp"

namespace rmtlab {

NystromGrid NystromGrid::make(double s, int order) {
    if (order < 1) throw ConfigError("Nystrom order must be positive");
    NystromGrid g;
    g.s = s;
    g.order = order;
    const QuadratureRule& rule = gauss_legendre(order);
    g.nodes.resize(order);
    g.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        g.nodes[i] = 0.5 * s * (rule.nodes[i] + 1.0);
        g.weights[i] = 0.5 * s * rule.weights[i];
    }
    return g;
}

double gap_probability(double s, int order) {
    if (s == 0.0) return 1.0;
    const NystromGrid g = NystromGrid::make(s, order);
    // det(delta_ij - w_j K(x_i, x_j)) equals the symmetrized form for positive
    // weights and stays defined when they are negative.
    Eigen::MatrixXd a(order, order);
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            a(i, j) = (i == j ? 1.0 : 0.0) - g.weights[j] * sine_kernel(g.nodes[i], g.nodes[j]);
        }
    }
    return a.partialPivLu().determinant();
}

namespace {

double richardson(double (*stencil)(double, double, int), double s, double h, int order) {
    return (16.0 * stencil(s, h, order) - stencil(s, 2.0 * h, order)) / 15.0;
}

double first_stencil(double s, double h, int m) {
    return (-gap_probability(s + 2 * h, m) + 8 * gap_probability(s + h, m) - 8 * gap_probability(s - h, m) +
            gap_probability(s - 2 * h, m)) /
           (12 * h);
}

double second_stencil(double s, double h, int m) {
    return (-gap_probability(s + 2 * h, m) + 16 * gap_probability(s + h, m) - 30 * gap_probability(s, m) +
            16 * gap_probability(s - h, m) - gap_probability(s - 2 * h, m)) /
           (12 * h * h);
}

}  // namespace

double gap_derivative(double s, double h, int order) { return richardson(first_stencil, s, h, order); }

double spacing_density(double s, double h, int order) { return richardson(second_stencil, s, h, order); }

double spacing_cdf(double s, double h, int order) {
    if (s == 0.0) return 0.0;
    return gap_derivative(s, h, order) + 1.0;
}

double two_point_limit(double x, double y) {
    const double k = sine_kernel(x, y);
    return 1.0 - k * k;
}

}  // namespace rmtlab
