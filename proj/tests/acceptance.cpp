// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rmtlab/ensemble.hpp"
#include "rmtlab/fredholm.hpp"
#include "rmtlab/kernel.hpp"
#include "rmtlab/mp.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/specfun.hpp"
#include "rmtlab/spectral.hpp"
#include "rmtlab/stats.hpp"

using namespace rmtlab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

SaddleConfig small_config(int n) {
    SaddleConfig cfg;
    cfg.n = n;
    cfg.s_override = 0.05;
    return cfg;
}

Spectrum fixed_spectrum(std::vector<double> eigs) {
    Spectrum s;
    s.eigs = std::move(eigs);
    return s;
}

// ---- 1: algebraic identities ------------------------------------------------

Outcome exact_identities() {
    double worst_resolvent = 0.0;
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> re(-1.0, 5.0), im(0.01, 2.0);
    for (int t = 0; t < 100; ++t) {
        const MatrixSample w = sample_matrix(EntryLaw::gaussian(), EnsembleDims{8, 12, 1.5}, hash_words(1, t));
        worst_resolvent = std::max(worst_resolvent, resolvent_identity_residual(w, cd(re(gen), im(gen))));
    }
    bool interlace = true;
    int max_gap = 0;
    for (int t = 0; t < 50; ++t) {
        const MatrixSample w = sample_matrix(EntryLaw::gaussian(), EnsembleDims{5, 7, 1.4}, hash_words(2, t));
        for (int k = 1; k <= 7; ++k) {
            const InterlacingReport r = interlacing_check(w, k);
            interlace = interlace && r.ok;
            max_gap = std::max(max_gap, r.max_count_gap);
        }
    }
    const Spectrum s = fixed_spectrum({0.7, 0.3});
    const SaddleConfig cfg = small_config(2);
    double worst_det = 0.0;
    for (auto [x1, x2] : {std::pair{0.35, 0.52}, std::pair{0.45, 0.47}}) {
        const cd k11 = eval_kernel_residue(s, x1, x1, cfg).full(), k22 = eval_kernel_residue(s, x2, x2, cfg).full();
        const cd k12 = eval_kernel_residue(s, x1, x2, cfg).full(), k21 = eval_kernel_residue(s, x2, x1, cfg).full();
        const cd det = k11 * k22 - k12 * k21;
        for (double b : {-1.0, 0.2, 0.6, 1.5}) {
            const cd cdet = conjugate_kernel(k11, x1, x1, b, 0.05) * conjugate_kernel(k22, x2, x2, b, 0.05) -
                            conjugate_kernel(k12, x1, x2, b, 0.05) * conjugate_kernel(k21, x2, x1, b, 0.05);
            worst_det = std::max(worst_det, rel(cdet, det));
        }
    }
    const bool pass = worst_resolvent < 1e-9 && interlace && max_gap <= 1 && worst_det < 1e-12;
    return {pass, fmt("resolvent residual %.2e, ", worst_resolvent) + (interlace ? "interlacing ok" : "interlacing broken") +
                      fmt(", max count gap %.0f, det change %.2e", max_gap, worst_det)};
}

// ---- 2: empirical spectral distribution -------------------------------------

Outcome mp_law() {
    const std::vector<double> d = kolmogorov_trials(EntryLaw::gaussian(), EnsembleDims::from_ratio(1000, 2.0), 1.0, 10, 1);
    double mean = 0.0;
    for (double x : d) mean += x;
    mean /= d.size();
    std::vector<double> medians;
    for (int n : {100, 400, 1600}) {
        medians.push_back(median(kolmogorov_trials(EntryLaw::gaussian(), EnsembleDims::from_ratio(n, 2.0), 1.0, 10, 7)));
    }
    const bool trend = medians[0] > medians[1] && medians[1] > medians[2];
    std::string detail = fmt("mean distance %.4f at N=1000; medians", mean);
    for (double m : medians) detail += fmt(" %.4f", m);
    return {mean < 0.05 && trend, detail};
}

// ---- 3: self-consistent equation --------------------------------------------

Outcome self_consistency() {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> re(-3.0, 10.0), lim(-4.0, 1.0);
    double worst = 0.0;
    for (const MpParams mp : {MpParams{1.0, 1.0}, MpParams{2.0, 1.0}, MpParams{1.0, 0.25}}) {
        for (int i = 0; i < 100; ++i) {
            const cd z(re(gen), std::pow(10.0, lim(gen)));
            worst = std::max(worst, self_consistent_residual(mp_stieltjes(mp, z), z, mp.gamma, mp.sigma2));
        }
    }
    return {worst < 1e-12, fmt("max residual %.2e", worst)};
}

// ---- 4: gap probability and spacing law -------------------------------------

Outcome fredholm() {
    const double e0 = gap_probability(0.0);
    double diff = 0.0;
    for (double s = 0.25; s <= 3.0 + 1e-12; s += 0.25) diff = std::max(diff, std::abs(gap_probability(s, 40) - gap_probability(s, 80)));
    const double mass = integrate([](double s) { return spacing_density(s); }, 0.0, 10.0, 1e-9);
    const double mean = integrate([](double s) { return s * spacing_density(s); }, 0.0, 10.0, 1e-9);
    const double p0 = std::abs(spacing_density(0.0));
    const bool pass = e0 == 1.0 && diff < 1e-10 && std::abs(mass - 1) < 1e-3 && std::abs(mean - 1) < 1e-3 && p0 < 2e-3;
    return {pass, fmt("E(0)=%.17g, ", e0) + fmt("order gap %.2e, ", diff) + fmt("mass %.6f mean %.6f, ", mass, mean) +
                      fmt("p(0) %.2e", p0)};
}

// ---- 5: kernel oracles ------------------------------------------------------

Outcome kernel_oracles() {
    const double mass1 = BruteForce{{0.3}, 0.05, 0}.chamber_mass();
    const Spectrum s = fixed_spectrum({0.7, 0.3});
    const SaddleConfig cfg = small_config(2);
    const BruteForce bf{s.eigs, 0.05, 0};
    double worst_r2 = 0.0;
    for (auto [x1, x2] : {std::pair{0.3, 0.5}, std::pair{0.45, 0.47}, std::pair{0.2, 0.8}}) {
        const cd k11 = eval_kernel_raw(s, x1, x1, cfg, build_contours(s, cfg)).full();
        const cd k22 = eval_kernel_residue(s, x2, x2, cfg).full();
        const cd k12 = eval_kernel_residue(s, x1, x2, cfg).full(), k21 = eval_kernel_residue(s, x2, x1, cfg).full();
        worst_r2 = std::max(worst_r2, rel(k11 * k22 - k12 * k21, bf.r2(x1, x2)));
    }
    double worst_trace = 0.0;
    for (int n = 1; n <= 4; ++n) {
        std::vector<double> eigs;
        for (int i = 0; i < n; ++i) eigs.push_back(0.75 - 0.6 * i / std::max(1, n - 1));
        worst_trace = std::max(worst_trace, std::abs(kernel_trace(fixed_spectrum(eigs), small_config(n)) - n));
    }
    const KernelContours c = build_contours(s, cfg);
    double worst_path = 0.0;
    for (auto [u, v] : {std::pair{0.45, 0.47}, std::pair{0.4, 0.4}, std::pair{0.5, 0.3}}) {
        const cd saddle = eval_kernel_raw(s, u, v, cfg, c).full();
        worst_path = std::max({worst_path, rel(eval_kernel_circle(s, u, v, cfg).full(), saddle),
                               rel(eval_kernel_residue(s, u, v, cfg).full(), saddle)});
    }
    const bool pass = std::abs(mass1 - 1.0) < 1e-8 && worst_r2 < 1e-3 && worst_trace < 1e-3 && worst_path < 1e-6;
    return {pass, fmt("N=1 mass error %.1e, ", std::abs(mass1 - 1.0)) + fmt("R2 rel %.1e, ", worst_r2) +
                      fmt("trace error %.1e, contour change %.1e", worst_trace, worst_path)};
}

// ---- 6: kernel decomposition ------------------------------------------------

Outcome kernel_decomposition() {
    const int n = 8;
    const Spectrum s = covariance_spectrum(sample_matrix(EntryLaw::gaussian(0.5), EnsembleDims{n, n, 1.0}, 1));
    SaddleConfig cfg;
    cfg.n = n;
    cfg.lambda = 0.6;
    const KernelContours c = build_contours(s, cfg);
    const double rho = mp_density(MpParams{1.0, 0.25}, cfg.u_star);
    double worst = 0.0;
    std::string detail = "rel errors";
    for (double tau : {0.0, 0.25, 0.5}) {
        const double u = cfg.u_star, v = u + tau / (n * rho);
        const cd kb = conjugate_kernel(eval_kernel_raw(s, u, v, cfg, c).full(), u, v, c.b, cfg.s());
        const KernelDecomposition d = eval_kernel_decomposed(s, u, v, cfg, c);
        const double e = rel(d.k1 + d.k2, kb);
        worst = std::max(worst, e);
        detail += fmt(" %.4f", e);
    }
    return {worst < 0.05, detail};
}

// ---- 7: sine-kernel limit trend ---------------------------------------------

Outcome sine_limit() {
    const std::vector<double> taus{0.25, 0.5};
    std::vector<std::vector<double>> med(taus.size());
    for (int n : {16, 32, 64}) {
        std::vector<std::vector<double>> errs(taus.size());
        for (int k = 0; k < 5; ++k) {
            const Spectrum s = covariance_spectrum(
                sample_matrix(EntryLaw::gaussian(0.5), EnsembleDims{n, n, 1.0}, hash_words(1, n, k)));
            SaddleConfig cfg;
            cfg.n = n;
            cfg.lambda = 0.6;
            const std::vector<SineLimitRow> rows = sine_limit_check(s, cfg, taus);
            for (std::size_t i = 0; i < taus.size(); ++i) errs[i].push_back(rows[i].error);
        }
        for (std::size_t i = 0; i < taus.size(); ++i) med[i].push_back(median(errs[i]));
    }
    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        pass = pass && med[i][1] <= med[i][0] && med[i][2] <= med[i][1];
        detail += fmt("tau=%.2f medians", taus[i]);
        for (double m : med[i]) detail += fmt(" %.4f", m);
        detail += i + 1 < taus.size() ? "; " : "";
    }
    return {pass, detail};
}

// ---- 8: two-point statistic -------------------------------------------------

Outcome two_point() {
    ExperimentSetup setup;
    setup.dims = EnsembleDims{500, 500, 1.0};
    setup.u = 2.0;
    setup.trials = 500;
    const TwoPointResult r = run_two_point_experiment(setup, TestFunction::box(2, 0.0, 1.0));
    const double tol = std::max(3.0 * r.se, 0.1 * r.theory);
    return {std::abs(r.mean - r.theory) <= tol,
            fmt("mean %.5f theory %.5f", r.mean, r.theory) + fmt(" se %.5f tolerance %.5f", r.se, tol)};
}

// ---- 9: spacing statistic ---------------------------------------------------

Outcome spacing() {
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(0.05 * i);
    ExperimentSetup setup;
    setup.u = 2.0;
    setup.trials = 200;
    setup.dims = EnsembleDims{500, 500, 1.0};
    const SpacingExperimentResult big = run_spacing_experiment(setup, grid);
    setup.dims = EnsembleDims{100, 100, 1.0};
    const SpacingExperimentResult small = run_spacing_experiment(setup, grid);
    const double m_small = median(block_sup_distances(small, 5));
    const double m_big = median(block_sup_distances(big, 5));
    return {big.sup_distance < 0.05 && m_big <= m_small,
            fmt("sup distance %.4f at N=500; ", big.sup_distance) +
                fmt("block medians %.4f (N=100) %.4f (N=500)", m_small, m_big)};
}

// ---- 10: Bessel functions ---------------------------------------------------

using Big = boost::multiprecision::cpp_bin_float_50;

// I_nu(x) from its power series in 50-digit arithmetic.
Big big_bessel_i(int nu, const Big& x) {
    const Big h = x / 2;
    Big term = boost::multiprecision::pow(h, nu);
    for (int k = 1; k <= nu; ++k) term /= k;
    Big sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= h * h / (Big(k) * Big(k + nu));
        sum += term;
        if (term < sum * Big("1e-45")) break;
    }
    return sum;
}

Outcome bessel() {
    double overlap = 0.0, wronskian = 0.0;
    for (int nu : {0, 1, 2, 5}) {
        for (double r : {25.0, 30.0, 40.0, 60.0}) {
            // Phases where the ascending series still carries full precision:
            // its cancellation grows like e^{|z| - Re z}.
            for (double ph : {0.0, 0.3, 0.6}) {
                const cd z = std::polar(r, ph);
                overlap = std::max(overlap, rel(bessel_i_with(nu, z, BesselRegime::BoundedOrderAsymptotic).full(),
                                                bessel_i_with(nu, z, BesselRegime::Series).full()));
                overlap = std::max(overlap, rel(bessel_k_with(nu, z, BesselRegime::BoundedOrderAsymptotic).full(),
                                                bessel_k_with(nu, z, BesselRegime::ContinuedFraction).full()));
            }
        }
    }
    for (int nu : {0, 1, 2, 4}) {
        for (cd z : {cd(20, 5), cd(10, 3), cd(0.5, 0.2), cd(3, -4), cd(60, 10)}) {
            const cd w = bessel_i(nu, z).full() * bessel_k(nu + 1, z).full() +
                         bessel_i(nu + 1, z).full() * bessel_k(nu, z).full();
            wronskian = std::max(wronskian, std::abs(w * z - 1.0));
        }
    }
    const UniformPair u = bessel_uniform_large_order(50, cd(1.0));
    const double i_ref = static_cast<double>(big_bessel_i(50, Big(50)));
    const double k_ref = static_cast<double>(boost::math::cyl_bessel_k(Big(50), Big(50)));
    const double uni = std::max(rel(u.i.full(), i_ref), rel(u.k.full(), k_ref));
    return {overlap < 1e-7 && wronskian < 1e-8 && uni < 1e-6,
            fmt("overlap %.1e, wronskian %.1e, ", overlap, wronskian) + fmt("uniform expansion %.1e", uni)};
}

// ---- 11: OU regularization scaling ------------------------------------------

Outcome ou_scaling() {
    const TruncatedDensity td = truncate_center_density(Potential::parse("x^2/10"), TruncationParams{0.5, 1, 100});
    std::vector<double> d;
    for (double t : {1e-3, 5e-4}) {
        const TaylorApplied g = ou_taylor_apply(td.density, t);
        d.push_back(chi2_divergence_1d(ou_semigroup_1d(g.g_t, t), td.density));
    }
    const double ratio = std::log2(d[0] / d[1]);
    const double resid = std::max(std::abs(td.mass_residual), std::abs(td.mean_residual));
    return {ratio >= 5.0 && ratio <= 7.0 && resid < 1e-10,
            fmt("log2 ratio %.3f, truncation residual %.1e", ratio, resid)};
}

// ---- 12: concentration ------------------------------------------------------

Outcome concentration() {
    ConcentrationConfig cfg;
    cfg.eta = 0.1;
    cfg.trials = 50;
    const ConcentrationResult a = concentration_experiment(EntryLaw::gaussian(), EnsembleDims{100, 100, 1.0}, cfg);
    const ConcentrationResult b = concentration_experiment(EntryLaw::gaussian(), EnsembleDims{400, 400, 1.0}, cfg);
    bool monotone = true;
    for (const ConcentrationResult* r : {&a, &b}) {
        for (std::size_t i = 1; i < r->rows.size(); ++i) monotone = monotone && r->rows[i].exceed_freq <= r->rows[i - 1].exceed_freq;
    }
    return {b.median_sup_err < a.median_sup_err && monotone,
            fmt("median sup error %.4f (N=100) %.4f (N=400), ", a.median_sup_err, b.median_sup_err) +
                (monotone ? "exceedance non-increasing" : "exceedance not monotone")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact identities", exact_identities},
        {"spectral distribution", mp_law},
        {"self-consistent equation", self_consistency},
        {"gap probability", fredholm},
        {"kernel oracles", kernel_oracles},
        {"kernel decomposition", kernel_decomposition},
        {"sine-kernel limit", sine_limit},
        {"two-point statistic", two_point},
        {"spacing statistic", spacing},
        {"bessel functions", bessel},
        {"OU regularization", ou_scaling},
        {"stieltjes concentration", concentration},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += o.pass ? 0 : 1;
        std::printf("%-4s %2zu %-26s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
