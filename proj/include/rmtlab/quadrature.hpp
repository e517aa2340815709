#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rmtlab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule of the given order on [-1, 1]. Nodes come from Newton
// iteration on the three-term recurrence; rules are cached per order.
const QuadratureRule& gauss_legendre(int order);

// Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

// Gauss-Hermite rule for the weight exp(-x^2) (Golub-Welsch), cached.
const QuadratureRule& gauss_hermite(int order);

// Adaptive 1-D integration of a smooth function on [a, b] (Gauss-Kronrod 61
// with interval bisection). Optional breakpoints split the range first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13, std::span<const double> breaks = {});

// Integral over [a, +inf) for integrands with exponential decay.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-12);

// Pairwise (tree) summation in index order; the result does not depend on how
// the inputs were produced, which keeps parallel reductions reproducible.
double pairwise_sum(std::span<const double> values);

}  // namespace rmtlab
