#pragma once

#include <vector>

namespace rmtlab {

// Gauss-Legendre nodes on (0, s). For s < 0 the weights are negative and the
// determinant below is the analytic continuation of the gap probability,
// which the finite-difference stencils near s = 0 rely on.
struct NystromGrid {
    double s = 0.0;
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    static NystromGrid make(double s, int order);
};

// det(I - K) on L^2(0, s) for the sine kernel.
double gap_probability(double s, int order = 40);

// First derivative of the gap probability (5-point stencil + Richardson).
double gap_derivative(double s, double h = 1e-3, int order = 40);

// Spacing density: second derivative of the gap probability.
double spacing_density(double s, double h = 1e-3, int order = 40);

// Integral of the spacing density from 0 to s, i.e. E'(s) - E'(0) with E'(0) = -1.
double spacing_cdf(double s, double h = 1e-3, int order = 40);

// 1 - sine_kernel(x, y)^2
double two_point_limit(double x, double y);

}  // namespace rmtlab
