#include "rmtlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rmtlab/common.hpp"

namespace rmtlab {

namespace {

QuadratureRule build_legendre(int n) {
    if (n == 1) return {{0.0}, {2.0}};
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

QuadratureRule build_hermite(int n) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double mass = std::sqrt(std::numbers::pi);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        r.weights[i] = mass * v0 * v0;
    }
    return r;
}

std::mutex g_cache_mutex;

}  // namespace

const QuadratureRule& gauss_legendre(int order) {
    if (order < 1) throw NumericError("gauss_legendre: order must be positive");
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_legendre(order)).first;
    return it->second;
}

QuadratureRule gauss_legendre(int order, double a, double b) {
    const QuadratureRule& ref = gauss_legendre(order);
    QuadratureRule r = ref;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        r.nodes[i] = mid + half * ref.nodes[i];
        r.weights[i] = half * ref.weights[i];
    }
    return r;
}

const QuadratureRule& gauss_hermite(int order) {
    if (order < 1) throw NumericError("gauss_hermite: order must be positive");
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_hermite(order)).first;
    return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 std::span<const double> breaks) {
    std::vector<double> pts{a};
    for (double x : breaks) {
        if (x > a && x < b) pts.push_back(x);
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] <= pts[i]) continue;
        total += gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1], 12, rel_tol);
    }
    return total;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double rel_tol) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([&](double t) { return f(a + t); }, 0.0,
                                std::numeric_limits<double>::infinity(), rel_tol);
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

}  // namespace rmtlab
