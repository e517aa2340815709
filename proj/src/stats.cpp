#include "rmtlab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rmtlab/fredholm.hpp"
#include "rmtlab/mp.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

TestFunction TestFunction::box(int m, double lo, double hi) {
    if (!(hi > lo)) throw ConfigError("box test function needs lo < hi");
    TestFunction f;
    f.name = "box[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
    f.arity = m;
    f.lo = lo;
    f.hi = hi;
    f.eval = [m, lo, hi](const double* x) {
        for (int k = 0; k < m; ++k) {
            if (x[k] < lo || x[k] > hi) return 0.0;
        }
        return 1.0;
    };
    return f;
}

TestFunction TestFunction::bump_product(int m, double center, double radius) {
    if (!(radius > 0.0)) throw ConfigError("bump radius must be positive");
    TestFunction f;
    f.name = "bump(" + std::to_string(center) + "," + std::to_string(radius) + ")";
    f.arity = m;
    f.lo = center - radius;
    f.hi = center + radius;
    f.eval = [m, center, radius](const double* x) {
        double v = 1.0;
        for (int k = 0; k < m; ++k) {
            const double t = (x[k] - center) / radius;
            if (std::abs(t) >= 1.0) return 0.0;
            v *= std::exp(-1.0 / (1.0 - t * t));
        }
        return v;
    };
    return f;
}

TestFunction TestFunction::zero(int m) {
    TestFunction f;
    f.name = "zero";
    f.arity = m;
    f.lo = 0.0;
    f.hi = 0.0;
    f.eval = [](const double*) { return 0.0; };
    return f;
}

TestFunction TestFunction::parse(const std::string& spec, int m) {
    if (spec == "zero") return zero(m);
    const auto a = spec.find(':');
    const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (b == std::string::npos) throw ConfigError("test function must be box:LO:HI, bump:C:R or zero");
    const std::string kind = spec.substr(0, a);
    double p = 0.0, q = 0.0;
    try {
        p = std::stod(spec.substr(a + 1, b - a - 1));
        q = std::stod(spec.substr(b + 1));
    } catch (const std::exception&) {
        throw ConfigError("bad test function parameters: " + spec);
    }
    if (kind == "box") return box(m, p, q);
    if (kind == "bump") return bump_product(m, p, q);
    throw ConfigError("unknown test function: " + kind);
}

void LocalStatRequest::validate() const {
    if (f.arity != 2 && f.arity != 3) throw ConfigError("local statistic supports m = 2 or 3");
    if (!(rho_n > 0.0)) throw ConfigError("rho_N must be positive");
    if (!f.eval) throw ConfigError("test function missing");
}

double local_statistic(const Spectrum& s, const LocalStatRequest& req) {
    req.validate();
    const double r = req.f.support_radius();
    std::vector<double> x;
    for (double l : s.eigs) {
        const double t = req.rho_n * (l - req.u);
        if (std::abs(t) <= r) x.push_back(t);
    }
    const std::size_t n = x.size();
    double total = 0.0;
    double arg[3];
    for (std::size_t i = 0; i < n; ++i) {
        arg[0] = x[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            arg[1] = x[j];
            if (req.f.arity == 2) {
                total += req.f.eval(arg);
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                arg[2] = x[k];
                total += req.f.eval(arg);
            }
        }
    }
    return total;
}

void SpacingRequest::validate() const {
    if (!(t_n > 0.0)) throw ConfigError("t_N must be positive");
    if (!(rho_n > 0.0)) throw ConfigError("rho_N must be positive");
}

std::vector<double> spacing_function(const Spectrum& s, const SpacingRequest& req,
                                     const std::vector<double>& s_grid) {
    req.validate();
    const std::vector<double> asc = s.ascending();
    const double half = req.t_n / req.rho_n;
    std::vector<double> gaps;
    for (std::size_t j = 0; j + 1 < asc.size(); ++j) {
        if (std::abs(asc[j] - req.u) <= half) gaps.push_back(asc[j + 1] - asc[j]);
    }
    std::sort(gaps.begin(), gaps.end());
    std::vector<double> out;
    out.reserve(s_grid.size());
    for (double sv : s_grid) {
        const double limit = sv / req.rho_n;
        const auto count = std::upper_bound(gaps.begin(), gaps.end(), limit) - gaps.begin();
        out.push_back(static_cast<double>(count) / (2.0 * req.t_n));
    }
    return out;
}

double spacing_function(const Spectrum& s, const SpacingRequest& req, double s_value) {
    return spacing_function(s, req, std::vector<double>{s_value}).front();
}

double ExperimentSetup::sigma2() const {
    double v = law.scale * law.scale;
    if (gauss_divisible) v += gauss_divisible->a * gauss_divisible->a;
    return v;
}

double ExperimentSetup::rho_n() const {
    return dims.n * mp_density(MpParams{dims.ratio(), sigma2()}, u);
}

void ExperimentSetup::validate() const {
    dims.validate();
    if (trials < 1) throw ConfigError("trials must be positive");
    const MpParams mp{dims.ratio(), sigma2()};
    if (!(u > mp.u_minus() && u < mp.u_plus())) throw ConfigError("u must lie inside the bulk");
}

Spectrum ExperimentSetup::sample(int trial) const {
    const std::uint64_t key = derive_seed(seed, static_cast<std::uint64_t>(trial));
    if (gauss_divisible) return covariance_spectrum(gauss_divisible_sample(law, *gauss_divisible, dims, key));
    return covariance_spectrum(sample_matrix(law, dims, key));
}

std::pair<double, double> mean_and_se(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    if (values.empty()) return {0.0, 0.0};
    const double mean = pairwise_sum(values) / n;
    if (values.size() < 2) return {mean, 0.0};
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

double two_point_theory(const TestFunction& f) {
    if (f.arity != 2) throw ConfigError("two-point theory needs a function of two variables");
    if (f.hi <= f.lo) return 0.0;
    // The integrand is smooth on the support box, so a fixed composite
    // Gauss-Legendre tensor rule is accurate to rounding.
    const int panels = 16;
    const QuadratureRule& rule = gauss_legendre(24);
    std::vector<double> xs, ws;
    const double h = (f.hi - f.lo) / panels;
    for (int k = 0; k < panels; ++k) {
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            xs.push_back(f.lo + h * (k + 0.5 * (rule.nodes[i] + 1.0)));
            ws.push_back(0.5 * h * rule.weights[i]);
        }
    }
    std::vector<double> rows(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const double arg[2] = {xs[i], xs[j]};
            acc += ws[j] * f.eval(arg) * two_point_limit(xs[i], xs[j]);
        }
        rows[i] = ws[i] * acc;
    }
    return pairwise_sum(rows);
}

TwoPointResult run_two_point_experiment(const ExperimentSetup& setup, const TestFunction& f) {
    setup.validate();
    TwoPointResult r;
    r.rho_n = setup.rho_n();
    const LocalStatRequest req{f, setup.u, r.rho_n};
    req.validate();
    r.values.assign(setup.trials, 0.0);
    parallel_for(
        setup.trials, [&](std::size_t t) { r.values[t] = local_statistic(setup.sample(static_cast<int>(t)), req); },
        setup.threads);
    std::tie(r.mean, r.se) = mean_and_se(r.values);
    r.theory = two_point_theory(f);
    return r;
}

SpacingExperimentResult run_spacing_experiment(const ExperimentSetup& setup, const std::vector<double>& s_grid,
                                               double t_n) {
    setup.validate();
    SpacingExperimentResult r;
    r.s_grid = s_grid;
    r.rho_n = setup.rho_n();
    r.t_n = t_n > 0.0 ? t_n : std::sqrt(static_cast<double>(setup.dims.n));
    const SpacingRequest req{setup.u, r.t_n, r.rho_n};
    std::vector<std::vector<double>>& per_trial = r.per_trial;
    per_trial.resize(setup.trials);
    parallel_for(
        setup.trials,
        [&](std::size_t t) { per_trial[t] = spacing_function(setup.sample(static_cast<int>(t)), req, s_grid); },
        setup.threads);
    std::vector<double> column(setup.trials);
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
        for (int t = 0; t < setup.trials; ++t) column[t] = per_trial[t][k];
        r.empirical.push_back(pairwise_sum(column) / setup.trials);
        r.theory.push_back(spacing_cdf(s_grid[k]));
        r.abs_err.push_back(std::abs(r.empirical.back() - r.theory.back()));
        r.sup_distance = std::max(r.sup_distance, r.abs_err.back());
    }
    return r;
}

std::vector<double> block_sup_distances(const SpacingExperimentResult& r, int blocks) {
    const int trials = static_cast<int>(r.per_trial.size());
    if (blocks < 1 || trials < blocks) throw ConfigError("need at least one trial per block");
    const int size = trials / blocks;
    std::vector<double> out;
    std::vector<double> column(size);
    for (int b = 0; b < blocks; ++b) {
        double sup = 0.0;
        for (std::size_t k = 0; k < r.s_grid.size(); ++k) {
            for (int t = 0; t < size; ++t) column[t] = r.per_trial[b * size + t][k];
            sup = std::max(sup, std::abs(pairwise_sum(column) / size - r.theory[k]));
        }
        out.push_back(sup);
    }
    return out;
}

}  // namespace rmtlab
