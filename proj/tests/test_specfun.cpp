#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "rmtlab/specfun.hpp"

using namespace rmtlab;

namespace {

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("specfun") {
    TEST_CASE("real arguments agree with boost") {
        for (int nu : {0, 1, 2, 5, 12}) {
            for (double x : {0.1, 1.0, 3.5, 10.0, 40.0}) {
                const double bi = boost::math::cyl_bessel_i(nu, x);
                const double bk = boost::math::cyl_bessel_k(nu, x);
                CHECK(rel(bessel_i(nu, cd(x)).full(), cd(bi)) < 1e-10);
                CHECK(rel(bessel_k(nu, cd(x)).full(), cd(bk)) < 1e-10);
            }
        }
    }

    TEST_CASE("wronskian at complex arguments") {
        for (auto [nu, z] : {std::pair{0, cd(20, 5)}, std::pair{2, cd(10, 3)}, std::pair{1, cd(0.7, -0.4)}}) {
            const cd w = bessel_i(nu, z).full() * bessel_k(nu + 1, z).full() +
                         bessel_i(nu + 1, z).full() * bessel_k(nu, z).full();
            CHECK(rel(w, 1.0 / z) < 1e-10);
        }
    }

    TEST_CASE("leading large-argument behaviour") {
        const double k0 = bessel_k(0, cd(25.0)).full().real();
        const double lead = std::sqrt(std::acos(-1.0) / 50.0) * std::exp(-25.0);
        CHECK(std::abs(k0 / lead - 1.0) < 1e-2);
    }

    TEST_CASE("regime overlap") {
        for (cd z : {cd(30, 4), cd(25, -10), cd(40, 0)}) {
            const cd is = bessel_i_with(0, z, BesselRegime::Series).full();
            const cd ia = bessel_i_with(0, z, BesselRegime::BoundedOrderAsymptotic).full();
            CHECK(rel(ia, is) < 1e-8);
            const cd kc = bessel_k_with(1, z, BesselRegime::ContinuedFraction).full();
            const cd ka = bessel_k_with(1, z, BesselRegime::BoundedOrderAsymptotic).full();
            CHECK(rel(ka, kc) < 1e-8);
        }
        CHECK_THROWS_AS(bessel_i_with(0, cd(1.0), BesselRegime::BoundedOrderAsymptotic), NumericError);
        CHECK_THROWS_AS(bessel_i_with(0, cd(1.0), BesselRegime::ContinuedFraction), NumericError);
    }

    TEST_CASE("uniform large-order expansion") {
        const UniformPair u = bessel_uniform_large_order(50, cd(1.0));
        CHECK(rel(u.i.full(), cd(boost::math::cyl_bessel_i(50, 50.0))) < 1e-6);
        CHECK(rel(u.k.full(), cd(boost::math::cyl_bessel_k(50, 50.0))) < 1e-6);
        CHECK(u.i.regime == BesselRegime::UniformLargeOrder);
        // Fewer correction terms are less accurate.
        const UniformPair u0 = bessel_uniform_large_order(50, cd(1.0), 0);
        CHECK(rel(u0.k.full(), cd(boost::math::cyl_bessel_k(50, 50.0))) >
              rel(u.k.full(), cd(boost::math::cyl_bessel_k(50, 50.0))));
        CHECK_THROWS(bessel_uniform_large_order(5, cd(1.0)));
    }

    TEST_CASE("elementary values") {
        CHECK(std::abs(bessel_i(0, cd(0.0)).full() - 1.0) < 1e-15);
        CHECK(std::abs(bessel_i(3, cd(0.0)).full()) == 0.0);
        for (double x : {0.01, 0.5, 2.0, 7.0, 33.0, 120.0}) {
            for (int nu : {0, 1, 4}) CHECK(bessel_k(nu, cd(x)).full().real() > 0.0);
        }
    }

    TEST_CASE("uniform expansion: wronskian and order of accuracy") {
        // I_50(50) K_51(50) + I_51(50) K_50(50) = 1/50
        const UniformPair a = bessel_uniform_large_order(50, cd(1.0));
        const UniformPair b = bessel_uniform_large_order(51, cd(50.0 / 51.0));
        const cd w = a.i.full() * b.k.full() + b.i.full() * a.k.full();
        CHECK(rel(w, cd(1.0 / 50.0)) < 1e-6);
        const double ref = boost::math::cyl_bessel_k(200, 200.0);
        const double e0 = rel(bessel_uniform_large_order(200, cd(1.0), 0).k.full(), cd(ref));
        const double e2 = rel(bessel_uniform_large_order(200, cd(1.0), 2).k.full(), cd(ref));
        CHECK(e2 * 10.0 <= e0);
    }

    TEST_CASE("scaled representation") {
        for (double r : {1e3, 1e5, 1e6}) {
            const BesselEval i = bessel_i(0, cd(r, 0.3 * r));
            const BesselEval k = bessel_k(0, cd(r, 0.3 * r));
            CHECK(std::isfinite(std::abs(i.value)));
            CHECK(std::isfinite(std::abs(k.value)));
            CHECK(std::abs(i.value) > 1e-300);
            CHECK(std::abs(k.value) > 1e-300);
        }
        const BesselEval i = bessel_i(3, cd(800.0, 20.0));
        CHECK(std::isfinite(i.value.real()));
        CHECK(i.log().real() > 700.0);
        const BesselEval k = bessel_k(3, cd(800.0, 20.0));
        CHECK(k.log().real() < -700.0);
        CHECK_THROWS_AS(bessel_k(0, cd(0.0)), NumericError);
        CHECK_THROWS_AS(bessel_k(0, cd(-1.0, 0.0)), NumericError);
    }
}
