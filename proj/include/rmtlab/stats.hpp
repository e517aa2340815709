#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmtlab/ensemble.hpp"
#include "rmtlab/spectral.hpp"

namespace rmtlab {

// Bounded symmetric test function of m unfolded variables. Every argument
// lies in [lo, hi] on the support, which is what pruning and the theory
// quadrature rely on.
struct TestFunction {
    std::string name;
    int arity = 2;
    double lo = 0.0, hi = 0.0;
    std::function<double(const double*)> eval;

    double support_radius() const { return std::max(std::abs(lo), std::abs(hi)); }

    static TestFunction box(int m, double lo, double hi);
    // prod_k bump((x_k - center)/radius) with bump(t) = exp(-1/(1 - t^2)) on |t| < 1
    static TestFunction bump_product(int m, double center, double radius);
    static TestFunction zero(int m);
    // Parses "box:LO:HI", "bump:CENTER:RADIUS" or "zero".
    static TestFunction parse(const std::string& spec, int m);
};

struct LocalStatRequest {
    TestFunction f;
    double u = 0.0;
    double rho_n = 0.0;  // N times the limit density at u

    void validate() const;
};

// Sum of f(rho_N (lambda_{i_1} - u), ..., rho_N (lambda_{i_m} - u)) over ordered
// tuples of distinct indices. Only eigenvalues inside the support window enter.
double local_statistic(const Spectrum& s, const LocalStatRequest& req);

struct SpacingRequest {
    double u = 0.0;
    double t_n = 0.0;    // window half-width in unfolded units
    double rho_n = 0.0;

    void validate() const;
};

// (1/2t_N) #{j : lambda_{j+1} - lambda_j <= s/rho_N, |lambda_j - u| <= t_N/rho_N}
// with eigenvalues in ascending order; one value per entry of s_grid.
std::vector<double> spacing_function(const Spectrum& s, const SpacingRequest& req,
                                     const std::vector<double>& s_grid);
double spacing_function(const Spectrum& s, const SpacingRequest& req, double s_value);

// Sampling setup shared by the Monte-Carlo experiments. Spectra are those of
// YY^*/N with E|Y_ij|^2 = law scale^2 (+ a^2 when Gauss divisible).
struct ExperimentSetup {
    EntryLaw law = EntryLaw::gaussian(1.0);
    EnsembleDims dims;
    std::optional<GaussDivisibleParams> gauss_divisible;
    double u = 2.0;
    int trials = 100;
    std::uint64_t seed = 1;
    int threads = 0;

    double sigma2() const;
    double rho_n() const;  // N times the limit density at u
    void validate() const;
    Spectrum sample(int trial) const;
};

struct TwoPointResult {
    std::vector<double> values;  // statistic per trial
    double mean = 0.0;
    double se = 0.0;
    double theory = 0.0;
    double rho_n = 0.0;
};

// Double integral of f(x, y)(1 - sinc^2(x - y)) over f's support.
double two_point_theory(const TestFunction& f);

TwoPointResult run_two_point_experiment(const ExperimentSetup& setup, const TestFunction& f);

struct SpacingExperimentResult {
    std::vector<double> s_grid;
    std::vector<double> empirical;  // mean spacing function per grid point
    std::vector<double> theory;     // limit cdf
    std::vector<double> abs_err;
    double sup_distance = 0.0;
    double t_n = 0.0;
    double rho_n = 0.0;
    std::vector<std::vector<double>> per_trial;  // spacing function per trial and grid point
};

// Sup distance recomputed on `blocks` consecutive, equally sized groups of
// trials (independent repetitions of a smaller experiment).
std::vector<double> block_sup_distances(const SpacingExperimentResult& r, int blocks);

// t_n <= 0 selects sqrt(N).
SpacingExperimentResult run_spacing_experiment(const ExperimentSetup& setup, const std::vector<double>& s_grid,
                                               double t_n = 0.0);

// Mean and standard error with a fixed (pairwise) summation order.
std::pair<double, double> mean_and_se(const std::vector<double>& values);

}  // namespace rmtlab
