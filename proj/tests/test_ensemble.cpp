#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rmtlab/common.hpp"
#include "rmtlab/ensemble.hpp"
#include "rmtlab/quadrature.hpp"

using namespace rmtlab;

namespace {

double component_variance(const MatrixSample& m) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.y.size(); ++i) {
        s += std::norm(m.y.data()[i]);
    }
    return 0.5 * s / static_cast<double>(m.y.size());
}

// Integral against mu = N(0, 1/2) by a fine midpoint rule, independent of the
// library's quadrature.
double mu_expect(const std::function<double(double)>& f) {
    const int n = 200000;
    const double a = -9.0, h = 18.0 / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = a + (i + 0.5) * h;
        s += f(x) * std::exp(-x * x);
    }
    return s * h / std::sqrt(std::acos(-1.0));
}

}  // namespace

TEST_SUITE("ensemble") {
    TEST_CASE("dimensions") {
        CHECK_THROWS_AS(EnsembleDims({5, 4, 1.0}).validate(), ConfigError);
        const EnsembleDims d = EnsembleDims::from_ratio(100, 2.0);
        CHECK(d.p == 200);
        CHECK(d.nu() == 100);
    }

    TEST_CASE("sampling is deterministic in the seed") {
        const EnsembleDims d{6, 9, 1.5};
        const MatrixSample a = sample_matrix(EntryLaw::gaussian(), d, 11);
        const MatrixSample b = sample_matrix(EntryLaw::gaussian(), d, 11);
        const MatrixSample c = sample_matrix(EntryLaw::gaussian(), d, 12);
        CHECK(a.y == b.y);
        CHECK(a.y != c.y);
    }

    TEST_CASE("component variance is one half for built-in laws") {
        const EnsembleDims d{100, 100, 1.0};
        CHECK(component_variance(sample_matrix(EntryLaw::gaussian(), d, 3)) == doctest::Approx(0.5).epsilon(0.02));
        const MatrixSample tp = sample_matrix(EntryLaw::two_point(), d, 3);
        CHECK(std::abs(std::abs(tp.y(0, 0).real()) - std::sqrt(0.5)) < 1e-15);
        CHECK(component_variance(tp) == doctest::Approx(0.5).epsilon(1e-12));
        const EntryLaw quartic = EntryLaw::potential_tilted(Potential::parse("x^4/10"), 2, true);
        const MatrixSample q = sample_matrix(quartic, d, 3);
        CHECK(component_variance(q) == doctest::Approx(0.5).epsilon(0.02));
        CHECK(std::abs(q.y.mean()) < 0.02);
    }

    TEST_CASE("tilted moments against an independent quadrature") {
        const Potential v = Potential::parse("x^4/10 + x/3");
        const TiltedMoments m = tilted_moments(v);
        const double z = mu_expect([&](double x) { return std::exp(-v(x)); });
        const double m1 = mu_expect([&](double x) { return x * std::exp(-v(x)); }) / z;
        CHECK(m.log_normalizer == doctest::Approx(std::log(z)).epsilon(1e-9));
        CHECK(m.mean == doctest::Approx(m1).epsilon(1e-9));
    }

    TEST_CASE("non-normalizable tilt is rejected") {
        const EntryLaw bad = EntryLaw::potential_tilted(Potential::parse("-x^4"), 2);
        CHECK_THROWS(sample_matrix(bad, EnsembleDims{3, 3, 1.0}, 1));
    }

    TEST_CASE("gauss divisible scale") {
        const GaussDivisibleParams gd = GaussDivisibleParams::from_lambda(0.5, 100);
        CHECK(gd.a * gd.a == doctest::Approx(std::pow(100.0, -0.5)));
        CHECK(gd.s_scale == doctest::Approx(std::pow(100.0, -1.5)));
        const MatrixSample s = gauss_divisible_sample(EntryLaw::two_point(), gd, EnsembleDims{50, 50, 1.0}, 4);
        CHECK(component_variance(s) == doctest::Approx(0.5 * (1 + gd.a * gd.a)).epsilon(0.02));
    }

    TEST_CASE("OU flow") {
        const EnsembleDims d{100, 100, 1.0};
        const MatrixSample h = sample_matrix(EntryLaw::two_point(), d, 5);
        CHECK(ou_evolve(h, 0.0, 9).y == h.y);
        CHECK_THROWS(ou_evolve(h, -1.0, 9));
        CHECK(component_variance(ou_evolve(h, 0.7, 9)) == doctest::Approx(0.5).epsilon(0.02));
        // Long times forget the two-point law: fourth moment becomes gaussian (3/4 per component).
        const MatrixSample g = ou_evolve(h, 50.0, 9);
        double m4 = 0.0;
        for (Eigen::Index i = 0; i < g.y.size(); ++i) m4 += std::pow(g.y.data()[i].real(), 4);
        CHECK(m4 / g.y.size() == doctest::Approx(0.75).epsilon(0.06));
    }

    TEST_CASE("binary export round trip") {
        const MatrixSample s = sample_matrix(EntryLaw::gaussian(), EnsembleDims{3, 5, 5.0 / 3}, 8);
        std::stringstream buf;
        write_matrix_binary(s, buf);
        CHECK(buf.str().size() == 16 + 15 * 16);
        const MatrixSample r = read_matrix_binary(buf);
        CHECK(r.y == s.y);
        CHECK(r.dims.p == 5);
    }

    TEST_CASE("smooth cutoff") {
        CHECK(smooth_cutoff(0.5) == 1.0);
        CHECK(smooth_cutoff(-2.5) == 0.0);
        CHECK(smooth_cutoff(1.5) == doctest::Approx(0.5));
        const Jet j = smooth_cutoff(Jet::variable(1.3));
        const double h = 1e-5;
        CHECK(j.derivative(1) == doctest::Approx((smooth_cutoff(1.3 + h) - smooth_cutoff(1.3 - h)) / (2 * h)).epsilon(1e-7));
    }

    TEST_CASE("truncation and centering") {
        const TruncatedDensity zero = truncate_center_density(Potential(), TruncationParams{0.5, 1, 100});
        CHECK(zero.center == 0.0);
        CHECK(std::abs(zero.log_normalizer) < 1e-12);

        const TruncatedDensity q = truncate_center_density(Potential::parse("x^2/10"), TruncationParams{0.5, 1, 100});
        CHECK(std::abs(q.mass_residual) < 1e-10);
        CHECK(std::abs(q.mean_residual) < 1e-10);
        CHECK(mu_expect(q.density.value) == doctest::Approx(1.0).epsilon(1e-9));

        const TruncatedDensity c = truncate_center_density(Potential::parse("x^4/10 - x/2"), TruncationParams{0.5, 1, 100});
        CHECK(std::abs(c.center) > 1e-3);
        CHECK(std::abs(c.mass_residual) < 1e-10);
        CHECK(std::abs(c.mean_residual) < 1e-10);
        CHECK(std::abs(mu_expect([&](double x) { return x * c.density(x); })) < 1e-9);
        // A monotone tilt cannot be centred by moving the window.
        CHECK_THROWS_AS(truncate_center_density(Potential::parse("x^3/20"), TruncationParams{0.5, 1, 100}), NumericError);
    }

    TEST_CASE("OU semigroup on densities") {
        Density1D one;
        one.value = [](double) { return 1.0; };
        CHECK(ou_semigroup_1d(one, 0.8)(1.3) == doctest::Approx(1.0).epsilon(1e-12));

        Density1D g;
        g.value = [](double x) { return 1.0 + 0.5 * x * std::exp(-x * x / 4); };
        CHECK(mu_expect(ou_semigroup_1d(g, 1.0).value) == doctest::Approx(mu_expect(g.value)).epsilon(1e-8));
        const Density1D a = ou_semigroup_1d(ou_semigroup_1d(g, 0.3), 0.4);
        const Density1D b = ou_semigroup_1d(g, 0.7);
        for (double x : {-1.5, 0.0, 0.4, 2.0}) CHECK(std::abs(a(x) - b(x)) < 1e-7);
    }

    TEST_CASE("second-order OU correction") {
        Density1D one;
        one.value = [](double) { return 1.0; };
        one.jet = [](double) { return Jet(1.0); };
        CHECK(ou_taylor_apply(one, 0.1).g_t(0.7) == doctest::Approx(1.0));

        const TruncatedDensity v = truncate_center_density(Potential::parse("x^2/10"), TruncationParams{0.5, 1, 100});
        const TaylorApplied g = ou_taylor_apply(v.density, 1e-3);
        CHECK(mu_expect(g.g_t.value) == doctest::Approx(1.0).epsilon(1e-8));
        auto sup_diff = [&](double t) {
            const TaylorApplied gt = ou_taylor_apply(v.density, t);
            double m = 0.0;
            for (double x = -4.0; x <= 4.0; x += 0.01) m = std::max(m, std::abs(gt.g_t(x) - v.density(x)));
            return m;
        };
        CHECK(sup_diff(1e-3) / sup_diff(5e-4) == doctest::Approx(2.0).epsilon(0.2));
    }

    TEST_CASE("chi-square divergence of shifted gaussians") {
        const double m = 0.01;
        Density1D f, g;
        f.value = [](double) { return 1.0; };
        g.value = [m](double x) { return std::exp(2 * m * x - m * m); };
        CHECK(chi2_divergence_1d(f, f) == 0.0);
        CHECK(chi2_divergence_1d(f, g) == doctest::Approx(std::expm1(2 * m * m)).epsilon(1e-8));
        Density1D z;
        z.value = [](double x) { return x > 0 ? 1.0 : 0.0; };
        CHECK_THROWS(chi2_divergence_1d(f, z));
    }
}
