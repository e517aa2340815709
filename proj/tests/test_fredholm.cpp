#include <doctest.h>

#include <cmath>

#include "rmtlab/fredholm.hpp"
#include "rmtlab/kernel.hpp"
#include "rmtlab/quadrature.hpp"

using namespace rmtlab;

namespace {

// Reference values from a 30-digit Nystrom determinant (40 nodes) with
// numerical differentiation in extended precision.
struct GapRef {
    double s, e, p, de;
};
constexpr GapRef kRefs[] = {
    {0.5, 0.51507339507285188, 0.593230158520768, -0.886944613058957},
    {1.0, 0.17021742137918523, 0.902903789581471, -0.46610143333235},
    {2.0, 0.0034973251491690977, 0.081298154149309, -0.017710443224175},
};

double integrate_panels(double (*f)(double), double a, double b, int panels) {
    const QuadratureRule r = gauss_legendre(16);
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * h;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            total += 0.5 * h * r.weights[i] * f(lo + 0.5 * h * (r.nodes[i] + 1.0));
        }
    }
    return total;
}

}  // namespace

TEST_SUITE("fredholm") {
    TEST_CASE("nystrom grid") {
        const NystromGrid g = NystromGrid::make(2.5, 20);
        double sum = 0.0;
        for (double w : g.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(2.5).epsilon(1e-14));
        for (double x : g.nodes) CHECK((x > 0.0 && x < 2.5));
    }

    TEST_CASE("gap probability reference values") {
        CHECK(gap_probability(0.0) == 1.0);
        for (const GapRef& r : kRefs) {
            CHECK(std::abs(gap_probability(r.s) - r.e) < 1e-13);
            CHECK(std::abs(gap_derivative(r.s) - r.de) < 1e-7);
            CHECK(std::abs(spacing_density(r.s) - r.p) < 1e-6);
        }
    }

    TEST_CASE("spectral convergence and monotonicity") {
        for (double s : {0.25, 1.0, 2.0, 3.0}) CHECK(std::abs(gap_probability(s, 40) - gap_probability(s, 80)) < 1e-10);
        double prev = 1.0;
        for (double s : {0.5, 1.0, 2.0, 3.0}) {
            const double e = gap_probability(s);
            CHECK(e < prev);
            CHECK(e > 0.0);
            prev = e;
        }
    }

    TEST_CASE("spacing density normalization") {
        CHECK(std::abs(integrate_panels([](double s) { return spacing_density(s); }, 0.0, 10.0, 20) - 1.0) < 1e-3);
        CHECK(std::abs(integrate_panels([](double s) { return s * spacing_density(s); }, 0.0, 10.0, 20) - 1.0) < 1e-3);
        CHECK(std::abs(spacing_density(0.0)) < 2e-3);
        for (double s = 0.0; s <= 4.0; s += 0.1) CHECK(spacing_density(s) >= -1e-6);
    }

    TEST_CASE("spacing cdf") {
        CHECK(spacing_cdf(0.0) == 0.0);
        CHECK(std::abs(spacing_cdf(10.0) - 1.0) < 1e-3);
        double prev = 0.0;
        for (double s = 0.2; s <= 4.0; s += 0.2) {
            const double c = spacing_cdf(s);
            CHECK(c >= prev - 1e-9);
            prev = c;
        }
        // Fundamental theorem of calculus on the implemented density.
        for (double s : {0.7, 1.5, 2.5}) {
            const QuadratureRule r = gauss_legendre(24);
            double q = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                q += 0.5 * s * r.weights[i] * spacing_density(0.5 * s * (r.nodes[i] + 1.0));
            }
            CHECK(std::abs(spacing_cdf(s) - q) < 1e-4);
        }
    }

    TEST_CASE("two-point limit") {
        CHECK(two_point_limit(0.4, 0.4) == 0.0);
        CHECK(two_point_limit(1.0, 0.0) == doctest::Approx(1.0));
        CHECK(two_point_limit(0.0, 0.5) == doctest::Approx(1.0 - 4.0 / (kPi * kPi)));
        for (double d : {0.1, 0.37, 1.3, 2.9}) {
            const double k = sine_kernel(d, 0.0);
            CHECK(std::abs(two_point_limit(d, 0.0) - (1.0 - k * k)) < 1e-15);
        }
    }
}
