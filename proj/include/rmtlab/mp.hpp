#pragma once

#include <cstdint>
#include <vector>

#include "rmtlab/common.hpp"
#include "rmtlab/ensemble.hpp"
#include "rmtlab/spectral.hpp"

namespace rmtlab {

struct MpParams {
    double gamma = 1.0;
    double sigma2 = 1.0;

    double u_minus() const { return sigma2 * (1.0 - std::sqrt(gamma)) * (1.0 - std::sqrt(gamma)); }
    double u_plus() const { return sigma2 * (1.0 + std::sqrt(gamma)) * (1.0 + std::sqrt(gamma)); }
    // Evenly spaced points over the bulk [u_- + eps, u_+ - eps], eps = margin * width.
    std::vector<double> bulk_grid(int points = 40, double margin = 0.05) const;
};

// Density of the limit law; +infinity at x = 0 when gamma = 1 (integrable).
double mp_density(const MpParams& mp, double x);
bool mp_density_singular_at(const MpParams& mp, double x);

double mp_cdf(const MpParams& mp, double x);

// Im > 0 root of z sigma2 m^2 + (z + sigma2 (1 - gamma)) m + 1 = 0.
cd mp_stieltjes(const MpParams& mp, cd z);

// |1 + z m - ratio + ratio / (1 + sigma2 m)|.
double self_consistent_residual(cd m, cd z, double ratio, double sigma2);

// sup_x |F_N(x) - F(x)| for the empirical CDF of the spectrum.
double kolmogorov_distance(const Spectrum& s, const MpParams& mp);

// Kolmogorov distances over independent trials of YY^*/N.
std::vector<double> kolmogorov_trials(const EntryLaw& law, const EnsembleDims& dims, double sigma2,
                                      int trials, std::uint64_t seed, int threads = 0);

struct ConcentrationConfig {
    double eta = 0.1;
    double sigma2 = 1.0;
    std::vector<double> u_grid;      // empty: MpParams::bulk_grid with the finite ratio
    std::vector<double> delta_grid;  // empty: 40 log-spaced points in [0.005, 0.5]
    int trials = 50;
    std::uint64_t seed = 1;
    int threads = 0;
};

struct ConcentrationRow {
    double delta;
    double exceed_freq;
};

struct ConcentrationResult {
    std::vector<double> sup_errors;  // one per trial
    std::vector<ConcentrationRow> rows;
    double median_sup_err = 0.0;
    int n = 0;
    double eta = 0.0;
};

// Per trial: sup over the grid of |m_N(u + i eta) - m(u + i eta)| with the
// limit transform taken at ratio p/N.
ConcentrationResult concentration_experiment(const EntryLaw& law, const EnsembleDims& dims,
                                             const ConcentrationConfig& cfg);

double median(std::vector<double> values);

}  // namespace rmtlab
