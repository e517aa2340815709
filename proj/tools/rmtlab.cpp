// Command-line experiment runner. Every subcommand writes a CSV, a JSON
// summary with the resolved configuration, and a gnuplot script into
// --out-dir. Exit status: 0 ok, 1 error, 2 tolerance failure in --check mode.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmtlab/ensemble.hpp"
#include "rmtlab/fredholm.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/kernel.hpp"
#include "rmtlab/mp.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/specfun.hpp"
#include "rmtlab/stats.hpp"

using namespace rmtlab;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string out_dir = ".";
    std::string config;
    int threads = 0;
    std::uint64_t seed = 1;
    bool check = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out-dir", c.out_dir, "directory for CSV/JSON/gnuplot output");
    sub->add_option("--config", c.config, "JSON file with option values; flags override it");
    sub->add_option("--threads", c.threads, "worker threads (default: RMTLAB_THREADS or all cores)");
    sub->add_option("--seed", c.seed, "base seed");
    sub->add_flag("--check", c.check, "exit with status 2 if the tolerance check fails");
}

// Fills options that were not given on the command line from a JSON object.
// Keys are option names with dashes or underscores; unknown keys are errors.
void apply_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (!cfg.is_object()) throw ConfigError(path + ": top level must be an object");
    for (const auto& [key, value] : cfg.items()) {
        std::string name = key;
        for (char& ch : name) {
            if (ch == '_') ch = '-';
        }
        CLI::Option* opt = nullptr;
        try {
            opt = sub->get_option("--" + name);
        } catch (const CLI::OptionNotFound&) {
            throw ConfigError(path + ": unknown key '" + key + "' for " + sub->get_name());
        }
        if (name == "config") throw ConfigError(path + ": nested config files are not supported");
        if (opt->count() > 0) continue;
        auto as_text = [&](const json& v) -> std::string {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
            if (v.is_number()) return v.dump();
            throw ConfigError(path + ": key '" + key + "' must be a scalar or an array of scalars");
        };
        if (value.is_array()) {
            for (const auto& v : value) opt->add_result(as_text(v));
        } else {
            opt->add_result(as_text(value));
        }
        opt->run_callback();
    }
}

json resolved_options(const CLI::App* sub) {
    json j;
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help") continue;
        const auto& res = opt->results();
        if (res.empty()) continue;
        j[name] = res.size() == 1 ? json(res.front()) : json(res);
    }
    return j;
}

struct LawOptions {
    std::string kind = "gaussian";
    std::string potential = "x^4/10";
    int growth = 2;
    bool standardize = false;
    double scale = 1.0;

    EntryLaw build() const {
        if (kind == "gaussian") return EntryLaw::gaussian(scale);
        if (kind == "two-point") return EntryLaw::two_point(scale);
        if (kind == "potential") return EntryLaw::potential_tilted(Potential::parse(potential), growth, standardize, scale);
        throw ConfigError("unknown law '" + kind + "' (gaussian, two-point, potential)");
    }
};

void add_law(CLI::App* sub, LawOptions& l) {
    sub->add_option("--law", l.kind, "gaussian | two-point | potential");
    sub->add_option("--potential", l.potential, "V(x) for --law potential");
    sub->add_option("--growth", l.growth, "growth exponent k of V");
    sub->add_flag("--standardize", l.standardize, "shift/stretch the tilted law to mean 0, variance 1/2");
    sub->add_option("--scale", l.scale, "entry scale: E|Y_ij|^2 = scale^2");
}

EnsembleDims dims_from(int n, int p, double gamma) {
    EnsembleDims d = p > 0 ? EnsembleDims{n, p, static_cast<double>(p) / n} : EnsembleDims::from_ratio(n, gamma);
    d.validate();
    return d;
}

fs::path prepare(const Common& c) {
    fs::create_directories(c.out_dir);
    return fs::path(c.out_dir);
}

json header(const CLI::App* sub, const Common& c) {
    json j;
    j["command"] = sub->get_name();
    j["config"] = resolved_options(sub);
    j["seed"] = c.seed;
    j["threads"] = c.threads > 0 ? c.threads : default_threads();
    return j;
}

int verdict(const Common& c, bool pass) { return c.check && !pass ? 2 : 0; }

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) g.push_back(lo + step * i);
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rmtlab: random-matrix numerical laboratory"};
    app.require_subcommand(1);
    Common common;

    // ---- sample-spectrum
    auto* ss = app.add_subcommand("sample-spectrum", "sample one matrix and write the spectrum of YY*/N");
    int ss_n = 100, ss_p = 0;
    double ss_gamma = 1.0, ss_lambda = -1.0, ss_ou = 0.0;
    std::string ss_matrix;
    LawOptions ss_law;
    add_common(ss, common);
    add_law(ss, ss_law);
    ss->add_option("--n", ss_n, "rows N");
    ss->add_option("--p", ss_p, "columns p (overrides --gamma)");
    ss->add_option("--gamma", ss_gamma, "aspect ratio p/N");
    ss->add_option("--lambda", ss_lambda, "if in (0,1): Gauss-divisible Y = W + aX with a^2 = N^(lambda-1)");
    ss->add_option("--ou-time", ss_ou, "apply the entrywise OU flow for this time");
    ss->add_option("--export-matrix", ss_matrix, "write the sampled matrix in binary form");

    // ---- mp-check
    auto* mpc = app.add_subcommand("mp-check", "Kolmogorov distance between spectra and the limit law");
    int mp_n = 1000, mp_p = 0, mp_trials = 10;
    double mp_gamma = 2.0, mp_sigma2 = 1.0, mp_tol = 0.05;
    LawOptions mp_law;
    add_common(mpc, common);
    add_law(mpc, mp_law);
    mpc->add_option("--n", mp_n);
    mpc->add_option("--p", mp_p);
    mpc->add_option("--gamma", mp_gamma);
    mpc->add_option("--sigma2", mp_sigma2, "variance of the limit law");
    mpc->add_option("--trials", mp_trials);
    mpc->add_option("--tolerance", mp_tol, "bound on the mean distance");

    // ---- concentration
    auto* con = app.add_subcommand("concentration", "sup-bulk Stieltjes error and exceedance frequencies");
    int con_n = 100, con_p = 0, con_trials = 50;
    double con_gamma = 1.0, con_eta = 0.1, con_sigma2 = 1.0;
    std::vector<double> con_delta;
    LawOptions con_law;
    add_common(con, common);
    add_law(con, con_law);
    con->add_option("--n", con_n);
    con->add_option("--p", con_p);
    con->add_option("--gamma", con_gamma);
    con->add_option("--eta", con_eta, "imaginary part of the spectral parameter");
    con->add_option("--sigma2", con_sigma2);
    con->add_option("--trials", con_trials);
    con->add_option("--delta-grid", con_delta, "thresholds (default: 40 log-spaced in [0.005, 0.5])")->delimiter(',');

    // ---- kernel-eval
    auto* ke = app.add_subcommand("kernel-eval", "evaluate the correlation kernel of the deformed ensemble");
    SaddleConfig ke_cfg;
    std::vector<double> ke_tau{0.0, 0.25, 0.5, 1.0};
    std::string ke_route = "saddle";
    add_common(ke, common);
    ke->add_option("--n", ke_cfg.n);
    ke->add_option("--nu", ke_cfg.nu, "p - N");
    ke->add_option("--lambda", ke_cfg.lambda, "a^2 = N^(lambda-1)");
    ke->add_option("--s-override", ke_cfg.s_override, "use this S = a^2/N instead of lambda");
    ke->add_option("--u-star", ke_cfg.u_star, "bulk point (variance-1/4 scale)");
    ke->add_option("--eps", ke_cfg.eps);
    ke->add_option("--endpoint-divisor", ke_cfg.endpoint_divisor);
    ke->add_option("--b", ke_cfg.b, "conjugation parameter (default: real part of the crossing point)");
    ke->add_option("--tau-grid", ke_tau, "v = u* + tau/(N rho(u*))")->delimiter(',');
    ke->add_option("--route", ke_route, "saddle | circle | residue");

    // ---- sine-limit
    auto* sl = app.add_subcommand("sine-limit", "trend of the rescaled kernel towards the sine kernel");
    std::vector<int> sl_ns{16, 32, 64};
    std::vector<double> sl_tau{0.25, 0.5};
    int sl_spectra = 5;
    SaddleConfig sl_cfg;
    add_common(sl, common);
    sl->add_option("--n-list", sl_ns)->delimiter(',');
    sl->add_option("--tau-grid", sl_tau)->delimiter(',');
    sl->add_option("--spectra", sl_spectra, "spectra per N");
    sl->add_option("--lambda", sl_cfg.lambda);
    sl->add_option("--u-star", sl_cfg.u_star);
    sl->add_option("--endpoint-divisor", sl_cfg.endpoint_divisor);

    // ---- fredholm
    auto* fr = app.add_subcommand("fredholm", "gap probability, spacing density and its cdf");
    double fr_smax = 3.0, fr_ds = 0.05, fr_h = 1e-3;
    int fr_order = 40;
    add_common(fr, common);
    fr->add_option("--s-max", fr_smax);
    fr->add_option("--ds", fr_ds);
    fr->add_option("--order", fr_order, "Nystrom nodes");
    fr->add_option("--fd-step", fr_h, "finite-difference step");

    // ---- spacing
    auto* sp = app.add_subcommand("spacing", "Monte-Carlo spacing function against the limit cdf");
    int sp_n = 500, sp_p = 0, sp_trials = 200;
    double sp_gamma = 1.0, sp_u = 2.0, sp_smax = 3.0, sp_ds = 0.05, sp_tn = 0.0, sp_tol = 0.05, sp_lambda = -1.0;
    LawOptions sp_law;
    add_common(sp, common);
    add_law(sp, sp_law);
    sp->add_option("--n", sp_n);
    sp->add_option("--p", sp_p);
    sp->add_option("--gamma", sp_gamma);
    sp->add_option("--u", sp_u, "bulk point (variance-1 scale)");
    sp->add_option("--trials", sp_trials);
    sp->add_option("--s-max", sp_smax);
    sp->add_option("--ds", sp_ds);
    sp->add_option("--t-n", sp_tn, "window half-width (default sqrt(N))");
    sp->add_option("--lambda", sp_lambda, "Gauss-divisible sampling when in (0,1)");
    sp->add_option("--tolerance", sp_tol, "bound on the sup distance");

    // ---- two-point
    auto* tp = app.add_subcommand("two-point", "Monte-Carlo two-point statistic against the limit");
    int tp_n = 500, tp_p = 0, tp_trials = 500;
    double tp_gamma = 1.0, tp_u = 2.0, tp_lambda = -1.0, tp_rel = 0.1, tp_se = 3.0;
    std::string tp_f = "box:0:1";
    LawOptions tp_law;
    add_common(tp, common);
    add_law(tp, tp_law);
    tp->add_option("--n", tp_n);
    tp->add_option("--p", tp_p);
    tp->add_option("--gamma", tp_gamma);
    tp->add_option("--u", tp_u);
    tp->add_option("--trials", tp_trials);
    tp->add_option("--f", tp_f, "box:LO:HI | bump:C:R | zero");
    tp->add_option("--lambda", tp_lambda, "Gauss-divisible sampling when in (0,1)");
    tp->add_option("--rel-tolerance", tp_rel);
    tp->add_option("--se-multiple", tp_se);

    // ---- bessel-check
    auto* bc = app.add_subcommand("bessel-check", "regime overlap and Wronskian of the Bessel routines");
    std::vector<int> bc_nu{0, 1, 2, 5};
    std::vector<double> bc_r{25.0, 30.0, 40.0, 60.0};
    std::vector<double> bc_phase{0.0, 0.3, 0.6};
    double bc_tol = 1e-7;
    add_common(bc, common);
    bc->add_option("--nu-list", bc_nu)->delimiter(',');
    bc->add_option("--radius-list", bc_r)->delimiter(',');
    bc->add_option("--phase-list", bc_phase, "arguments z = r e^{i phase}")->delimiter(',');
    bc->add_option("--tolerance", bc_tol);

    // ---- ou-approx
    auto* ou = app.add_subcommand("ou-approx", "chi-square error of the OU-regularized density vs t");
    std::string ou_pot = "x^2/10";
    double ou_lambda = 0.5;
    int ou_k = 1, ou_n = 100;
    std::vector<double> ou_t{1e-3, 5e-4};
    add_common(ou, common);
    ou->add_option("--potential", ou_pot);
    ou->add_option("--lambda", ou_lambda);
    ou->add_option("--k", ou_k);
    ou->add_option("--n", ou_n);
    ou->add_option("--t-list", ou_t, "decreasing times, each half the previous")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        apply_config(sub, common.config);
        const fs::path dir = prepare(common);
        json summary = header(sub, common);
        std::string name = sub->get_name();
        std::replace(name.begin(), name.end(), '-', '_');
        int status = 0;

        if (sub == ss) {
            const EnsembleDims d = dims_from(ss_n, ss_p, ss_gamma);
            MatrixSample m;
            if (ss_lambda > 0.0 && ss_lambda < 1.0) {
                m = gauss_divisible_sample(ss_law.build(), GaussDivisibleParams::from_lambda(ss_lambda, ss_n), d, common.seed);
            } else {
                m = sample_matrix(ss_law.build(), d, common.seed);
            }
            if (ss_ou > 0.0) m = ou_evolve(m, ss_ou, hash_words(common.seed, 3));
            if (!ss_matrix.empty()) {
                std::ofstream bin(ss_matrix, std::ios::binary);
                write_matrix_binary(m, bin);
            }
            const Spectrum s = covariance_spectrum(m);
            std::ofstream csv(dir / "spectrum.csv");
            write_spectrum_csv(s, csv);
            summary["law"] = ss_law.build().describe();
            summary["largest"] = s.eigs.front();
            summary["smallest"] = s.eigs.back();
        } else if (sub == mpc) {
            const EnsembleDims d = dims_from(mp_n, mp_p, mp_gamma);
            const auto dist = kolmogorov_trials(mp_law.build(), d, mp_sigma2, mp_trials, common.seed, common.threads);
            CsvWriter csv(dir / "mp_check.csv", {"trial", "kolmogorov"});
            for (std::size_t t = 0; t < dist.size(); ++t) csv.row({static_cast<double>(t), dist[t]});
            const auto [mean, se] = mean_and_se(dist);
            summary["mean_distance"] = mean;
            summary["median_distance"] = median(dist);
            summary["se"] = se;
            summary["pass"] = mean < mp_tol;
            write_gnuplot(dir, "mp_check", "mp_check.csv", "trial", {{2, "Kolmogorov distance"}});
            status = verdict(common, mean < mp_tol);
        } else if (sub == con) {
            const EnsembleDims d = dims_from(con_n, con_p, con_gamma);
            ConcentrationConfig cc;
            cc.eta = con_eta;
            cc.sigma2 = con_sigma2;
            cc.delta_grid = con_delta;
            cc.trials = con_trials;
            cc.seed = common.seed;
            cc.threads = common.threads;
            const ConcentrationResult r = concentration_experiment(con_law.build(), d, cc);
            CsvWriter csv(dir / "concentration.csv", {"delta", "exceed_freq", "median_sup_err", "n", "eta"});
            bool decreasing = true;
            for (std::size_t i = 0; i < r.rows.size(); ++i) {
                csv.row({r.rows[i].delta, r.rows[i].exceed_freq, r.median_sup_err, static_cast<double>(r.n), r.eta});
                if (i && r.rows[i].exceed_freq > r.rows[i - 1].exceed_freq) decreasing = false;
            }
            summary["median_sup_err"] = r.median_sup_err;
            summary["exceedance_non_increasing"] = decreasing;
            write_gnuplot(dir, "concentration", "concentration.csv", "delta", {{2, "exceedance frequency"}});
            status = verdict(common, decreasing);
        } else if (sub == ke) {
            const EnsembleDims d{ke_cfg.n, ke_cfg.n + ke_cfg.nu, 1.0 + static_cast<double>(ke_cfg.nu) / ke_cfg.n};
            const Spectrum s = covariance_spectrum(sample_matrix(EntryLaw::gaussian(0.5), d, common.seed));
            const double rho = mp_density(MpParams{ke_cfg.gamma, 0.25}, ke_cfg.u_star);
            const double nrho = ke_cfg.n * rho;
            std::optional<KernelContours> contours;
            double b = ke_cfg.b;
            if (ke_route == "saddle") {
                contours = build_contours(s, ke_cfg);
                if (std::isnan(b)) b = contours->b;
                summary["crossing_point"] = {contours->p_plus.real(), contours->p_plus.imag()};
            } else if (std::isnan(b)) {
                b = critical_points_empirical(s.eigs, ke_cfg.u_star, ke_cfg.a(), ke_cfg.nu, ke_cfg.gamma).w_plus.real();
            }
            CsvWriter csv(dir / "kernel_eval.csv", {"u", "v", "re_K", "im_K", "rescaled", "sine_target", "rel_err"});
            for (double tau : ke_tau) {
                const double u = ke_cfg.u_star, v = u + tau / nrho;
                ScaledValue k;
                if (ke_route == "saddle") {
                    k = eval_kernel_raw(s, u, v, ke_cfg, *contours);
                } else if (ke_route == "circle") {
                    k = eval_kernel_circle(s, u, v, ke_cfg);
                } else if (ke_route == "residue") {
                    k = eval_kernel_residue(s, u, v, ke_cfg);
                } else {
                    throw ConfigError("unknown route '" + ke_route + "'");
                }
                const cd kb = conjugate_kernel(k, u, v, b, ke_cfg.s()).full();
                const double target = sine_kernel(tau, 0.0);
                const double rescaled = kb.real() / nrho;
                const double err = std::abs(kb / nrho - target) / (std::abs(target) > 1e-12 ? std::abs(target) : 1.0);
                csv.row({u, v, kb.real(), kb.imag(), rescaled, target, err});
            }
            summary["b"] = b;
            summary["S"] = ke_cfg.s();
            summary["kernel"] = "conjugated by exp(2b(sqrt v - sqrt u)/S)";
            write_gnuplot(dir, "kernel_eval", "kernel_eval.csv", "u", {{5, "rescaled"}, {6, "sine kernel"}});
        } else if (sub == sl) {
            CsvWriter csv(dir / "sine_limit.csv", {"n", "spectrum", "tau", "error"});
            std::map<double, std::vector<double>> medians;
            for (int n : sl_ns) {
                std::map<double, std::vector<double>> errs;
                for (int k = 0; k < sl_spectra; ++k) {
                    SaddleConfig cfg = sl_cfg;
                    cfg.n = n;
                    const EnsembleDims d{n, n, 1.0};
                    const Spectrum s =
                        covariance_spectrum(sample_matrix(EntryLaw::gaussian(0.5), d, hash_words(common.seed, n, k)));
                    for (const SineLimitRow& r : sine_limit_check(s, cfg, sl_tau)) {
                        errs[r.tau].push_back(r.error);
                        csv.row({static_cast<double>(n), static_cast<double>(k), r.tau, r.error});
                    }
                }
                for (auto& [tau, e] : errs) medians[tau].push_back(median(e));
            }
            bool trend = true;
            json med;
            for (const auto& [tau, m] : medians) {
                for (std::size_t i = 1; i < m.size(); ++i) trend = trend && m[i] <= m[i - 1];
                med[std::to_string(tau)] = m;
            }
            summary["medians_by_tau"] = med;
            summary["non_increasing"] = trend;
            status = verdict(common, trend);
        } else if (sub == fr) {
            CsvWriter csv(dir / "fredholm.csv", {"s", "E", "p", "cdf"});
            for (double s : grid(0.0, fr_smax, fr_ds)) {
                csv.row({s, gap_probability(s, fr_order), spacing_density(s, fr_h, fr_order), spacing_cdf(s, fr_h, fr_order)});
            }
            summary["E0"] = gap_probability(0.0, fr_order);
            write_gnuplot(dir, "fredholm", "fredholm.csv", "s", {{2, "E(s)"}, {3, "p(s)"}, {4, "cdf"}});
        } else if (sub == sp || sub == tp) {
            const bool spacing = sub == sp;
            ExperimentSetup st;
            st.law = (spacing ? sp_law : tp_law).build();
            st.dims = spacing ? dims_from(sp_n, sp_p, sp_gamma) : dims_from(tp_n, tp_p, tp_gamma);
            const double lambda = spacing ? sp_lambda : tp_lambda;
            if (lambda > 0.0 && lambda < 1.0) st.gauss_divisible = GaussDivisibleParams::from_lambda(lambda, st.dims.n);
            st.u = spacing ? sp_u : tp_u;
            st.trials = spacing ? sp_trials : tp_trials;
            st.seed = common.seed;
            st.threads = common.threads;
            summary["rho_n"] = st.rho_n();
            if (spacing) {
                const SpacingExperimentResult r = run_spacing_experiment(st, grid(0.0, sp_smax, sp_ds), sp_tn);
                CsvWriter csv(dir / "spacing.csv", {"s", "empirical", "theory", "abs_err"});
                for (std::size_t i = 0; i < r.s_grid.size(); ++i) {
                    csv.row({r.s_grid[i], r.empirical[i], r.theory[i], r.abs_err[i]});
                }
                summary["sup_distance"] = r.sup_distance;
                summary["t_n"] = r.t_n;
                summary["pass"] = r.sup_distance < sp_tol;
                write_gnuplot(dir, "spacing", "spacing.csv", "s", {{2, "empirical"}, {3, "limit"}});
                status = verdict(common, r.sup_distance < sp_tol);
            } else {
                const TwoPointResult r = run_two_point_experiment(st, TestFunction::parse(tp_f, 2));
                CsvWriter csv(dir / "two_point.csv", {"trial", "s2", "mean", "se", "theory"});
                std::vector<double> prefix;
                for (std::size_t t = 0; t < r.values.size(); ++t) {
                    prefix.push_back(r.values[t]);
                    const auto [m, se] = mean_and_se(prefix);
                    csv.row({static_cast<double>(t), r.values[t], m, se, r.theory});
                }
                const bool pass = std::abs(r.mean - r.theory) <= std::max(tp_se * r.se, tp_rel * std::abs(r.theory));
                summary["mc_mean"] = r.mean;
                summary["se"] = r.se;
                summary["theory"] = r.theory;
                summary["pass"] = pass;
                write_gnuplot(dir, "two_point", "two_point.csv", "trial", {{3, "running mean"}, {5, "limit"}});
                status = verdict(common, pass);
            }
        } else if (sub == bc) {
            CsvWriter csv(dir / "bessel_check.csv", {"nu", "r", "phase", "overlap_rel_i", "overlap_rel_k", "wronskian_rel"});
            double worst = 0.0;
            for (int nu : bc_nu) {
                for (double r : bc_r) {
                    for (double ph : bc_phase) {
                        const cd z = std::polar(r, ph);
                        const cd i_s = bessel_i_with(nu, z, BesselRegime::Series).full();
                        const cd i_a = bessel_i_with(nu, z, BesselRegime::BoundedOrderAsymptotic).full();
                        const cd k_c = bessel_k_with(nu, z, BesselRegime::ContinuedFraction).full();
                        const cd k_a = bessel_k_with(nu, z, BesselRegime::BoundedOrderAsymptotic).full();
                        const double oi = std::abs(i_s - i_a) / std::abs(i_s);
                        const double ok = std::abs(k_c - k_a) / std::abs(k_c);
                        const cd w = bessel_i(nu, z).full() * bessel_k(nu + 1, z).full() +
                                     bessel_i(nu + 1, z).full() * bessel_k(nu, z).full();
                        const double wr = std::abs(w * z - 1.0);
                        worst = std::max({worst, oi, ok});
                        csv.row({static_cast<double>(nu), r, ph, oi, ok, wr});
                    }
                }
            }
            summary["max_overlap_rel"] = worst;
            summary["pass"] = worst < bc_tol;
            status = verdict(common, worst < bc_tol);
        } else if (sub == ou) {
            const TruncatedDensity td = truncate_center_density(Potential::parse(ou_pot), TruncationParams{ou_lambda, ou_k, ou_n});
            CsvWriter csv(dir / "ou_approx.csv", {"t", "chi2", "log2_ratio"});
            double prev = std::nan("");
            bool pass = true;
            for (double t : ou_t) {
                const TaylorApplied g = ou_taylor_apply(td.density, t);
                const double dval = chi2_divergence_1d(ou_semigroup_1d(g.g_t, t), td.density);
                const double ratio = std::log2(prev / dval);
                if (!std::isnan(ratio)) pass = pass && ratio >= 5.0 && ratio <= 7.0;
                csv.row({t, dval, ratio});
                prev = dval;
            }
            pass = pass && std::abs(td.mass_residual) < 1e-10 && std::abs(td.mean_residual) < 1e-10;
            summary["mass_residual"] = td.mass_residual;
            summary["mean_residual"] = td.mean_residual;
            summary["center"] = td.center;
            summary["log_normalizer"] = td.log_normalizer;
            summary["pass"] = pass;
            write_gnuplot(dir, "ou_approx", "ou_approx.csv", "t", {{2, "chi-square"}});
            status = verdict(common, pass);
        }

        write_summary(dir, name, summary);
        return status;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
