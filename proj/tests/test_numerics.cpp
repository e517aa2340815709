#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "rmtlab/expr.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"

using namespace rmtlab;

TEST_SUITE("numerics") {
    TEST_CASE("gauss-legendre integrates polynomials exactly") {
        const QuadratureRule r = gauss_legendre(10, 0.0, 2.0);
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 19);
        CHECK(s == doctest::Approx(std::pow(2.0, 20) / 20.0).epsilon(1e-13));
    }

    TEST_CASE("gauss-hermite moments") {
        const QuadratureRule& r = gauss_hermite(40);
        double m0 = 0.0, m2 = 0.0, m4 = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            const double x = r.nodes[i];
            m0 += r.weights[i];
            m2 += r.weights[i] * x * x;
            m4 += r.weights[i] * x * x * x * x;
        }
        const double sp = std::sqrt(std::acos(-1.0));
        CHECK(m0 == doctest::Approx(sp).epsilon(1e-13));
        CHECK(m2 == doctest::Approx(sp / 2).epsilon(1e-13));
        CHECK(m4 == doctest::Approx(3 * sp / 4).epsilon(1e-13));
    }

    TEST_CASE("adaptive integration with a kink") {
        const std::vector<double> br{0.3};
        const double v = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-13, br);
        CHECK(v == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));
        CHECK(integrate_to_infinity([](double x) { return std::exp(-2 * x); }, 1.0) ==
              doctest::Approx(std::exp(-2.0) / 2).epsilon(1e-11));
    }

    TEST_CASE("pairwise sum matches exact sum of representable values") {
        std::vector<double> v(1000);
        for (int i = 0; i < 1000; ++i) v[i] = 0.5 * i;
        CHECK(pairwise_sum(v) == 0.5 * 999 * 1000 / 2);
    }

    TEST_CASE("counter streams are reproducible and distinct") {
        CounterStream a(hash_words(1, 2)), b(hash_words(1, 2)), c(hash_words(2, 1));
        const double x = a.normal();
        CHECK(x == b.normal());
        CHECK(x != c.normal());
        std::set<std::uint64_t> seen;
        for (int i = 0; i < 1000; ++i) seen.insert(derive_seed(7, i));
        CHECK(seen.size() == 1000);
    }

    TEST_CASE("normal draws have unit variance") {
        CounterStream s(42);
        double m = 0, m2 = 0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            const double x = s.normal();
            m += x;
            m2 += x * x;
        }
        CHECK(std::abs(m / n) < 0.01);
        CHECK(std::abs(m2 / n - 1.0) < 0.015);
    }

    TEST_CASE("parallel_for covers each index once") {
        std::vector<int> hits(500, 0);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
        for (int h : hits) CHECK(h == 1);
    }

    TEST_CASE("potential parsing and derivatives") {
        const Potential v = Potential::parse("x^4/10 + 0.5*x^2 - x");
        const double x = 0.7;
        CHECK(v(x) == doctest::Approx(std::pow(x, 4) / 10 + 0.5 * x * x - x).epsilon(1e-14));
        const Jet j = v.jet(x);
        CHECK(j.derivative(1) == doctest::Approx(0.4 * x * x * x + x - 1).epsilon(1e-13));
        CHECK(j.derivative(2) == doctest::Approx(1.2 * x * x + 1).epsilon(1e-13));
        CHECK(j.derivative(4) == doctest::Approx(2.4).epsilon(1e-13));
        CHECK(Potential::parse("exp(x)").jet(0.3).derivative(3) == doctest::Approx(std::exp(0.3)));
        CHECK(Potential().is_zero());
        CHECK_THROWS(Potential::parse("x^"));
        CHECK_THROWS(Potential::parse("foo(x)"));
    }
}
