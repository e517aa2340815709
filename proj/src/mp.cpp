#include "rmtlab/mp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmtlab/parallel.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

std::vector<double> MpParams::bulk_grid(int points, double margin) const {
    const double lo = u_minus(), hi = u_plus();
    const double eps = margin * (hi - lo);
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) {
        g[i] = (points == 1) ? 0.5 * (lo + hi) : lo + eps + (hi - lo - 2 * eps) * i / (points - 1);
    }
    return g;
}

bool mp_density_singular_at(const MpParams& mp, double x) { return x == 0.0 && mp.u_minus() == 0.0; }

double mp_density(const MpParams& mp, double x) {
    const double lo = mp.u_minus(), hi = mp.u_plus();
    if (mp_density_singular_at(mp, x)) return std::numeric_limits<double>::infinity();
    if (x <= lo || x >= hi) return 0.0;
    return std::sqrt((hi - x) * (x - lo)) / (2.0 * kPi * x * mp.sigma2);
}

double mp_cdf(const MpParams& mp, double x) {
    const double lo = mp.u_minus(), hi = mp.u_plus();
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    // x = c + r cos(theta) turns the square-root edges into a smooth integrand.
    const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    const double theta0 = std::acos(std::clamp((x - c) / r, -1.0, 1.0));
    auto integrand = [&](double th) {
        const double co = std::cos(th);
        if (lo == 0.0) return r * (1.0 - co) / (2.0 * kPi * mp.sigma2);
        const double s = std::sin(th);
        return r * r * s * s / (2.0 * kPi * mp.sigma2 * (c + r * co));
    };
    const double v = integrate(integrand, theta0, kPi, 1e-13);
    return std::clamp(v, 0.0, 1.0);
}

cd mp_stieltjes(const MpParams& mp, cd z) {
    if (!(z.imag() > 0.0)) throw NumericError("mp_stieltjes: need Im z > 0");
    const cd a = z * mp.sigma2;
    const cd b = z + mp.sigma2 * (1.0 - mp.gamma);
    cd root = std::sqrt(b * b - 4.0 * a);
    if ((std::conj(b) * root).real() < 0.0) root = -root;
    const cd q = -0.5 * (b + root);
    const cd m1 = q / a, m2 = 1.0 / q;
    cd m = m1.imag() > 0.0 ? m1 : m2;
    if (!(m.imag() > 0.0)) {
        // Flip to the other root if both tests failed through rounding.
        m = (m1.imag() >= m2.imag()) ? m1 : m2;
        if (!(m.imag() > 0.0)) throw NumericError("mp_stieltjes: no root in the upper half-plane");
    }
    return m;
}

double self_consistent_residual(cd m, cd z, double ratio, double sigma2) {
    const cd denom = 1.0 + sigma2 * m;
    if (std::abs(denom) == 0.0) throw NumericError("self_consistent_residual: 1 + sigma2 m = 0");
    return std::abs(1.0 + z * m - ratio + ratio / denom);
}

double kolmogorov_distance(const Spectrum& s, const MpParams& mp) {
    const std::vector<double> asc = s.ascending();
    const double n = static_cast<double>(asc.size());
    double d = 0.0;
    for (std::size_t i = 0; i < asc.size(); ++i) {
        const double f = mp_cdf(mp, asc[i]);
        d = std::max({d, std::abs((i + 1) / n - f), std::abs(i / n - f)});
    }
    return d;
}

std::vector<double> kolmogorov_trials(const EntryLaw& law, const EnsembleDims& dims, double sigma2,
                                      int trials, std::uint64_t seed, int threads) {
    const MpParams mp{dims.ratio(), sigma2};
    std::vector<double> out(trials);
    parallel_for(
        trials,
        [&](std::size_t t) {
            const MatrixSample y = sample_matrix(law, dims, derive_seed(seed, t));
            out[t] = kolmogorov_distance(covariance_spectrum(y), mp);
        },
        threads);
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

ConcentrationResult concentration_experiment(const EntryLaw& law, const EnsembleDims& dims,
                                             const ConcentrationConfig& cfg) {
    if (!(cfg.eta > 0.0)) throw ConfigError("concentration: eta must be positive");
    const MpParams mp{dims.ratio(), cfg.sigma2};
    const std::vector<double> grid = cfg.u_grid.empty() ? mp.bulk_grid() : cfg.u_grid;
    std::vector<double> deltas = cfg.delta_grid;
    if (deltas.empty()) {
        const int k = 40;
        for (int i = 0; i < k; ++i) deltas.push_back(0.005 * std::pow(100.0, static_cast<double>(i) / (k - 1)));
    }
    std::vector<cd> limit(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) limit[i] = mp_stieltjes(mp, cd(grid[i], cfg.eta));

    ConcentrationResult r;
    r.n = dims.n;
    r.eta = cfg.eta;
    r.sup_errors.resize(cfg.trials);
    parallel_for(
        cfg.trials,
        [&](std::size_t t) {
            const Spectrum s = covariance_spectrum(sample_matrix(law, dims, derive_seed(cfg.seed, t)));
            double sup = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                sup = std::max(sup, std::abs(empirical_stieltjes(s, cd(grid[i], cfg.eta)) - limit[i]));
            }
            r.sup_errors[t] = sup;
        },
        cfg.threads);
    r.median_sup_err = median(r.sup_errors);
    for (double d : deltas) {
        int exceed = 0;
        for (double e : r.sup_errors) exceed += e > d ? 1 : 0;
        r.rows.push_back({d, static_cast<double>(exceed) / cfg.trials});
    }
    return r;
}

}  // namespace rmtlab
