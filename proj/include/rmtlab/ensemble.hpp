#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rmtlab/expr.hpp"
#include "rmtlab/jet.hpp"

namespace rmtlab {

struct EnsembleDims {
    int n = 1;                  // rows
    int p = 1;                  // columns, p >= n
    double gamma_target = 1.0;  // intended limit of p/n

    int nu() const { return p - n; }
    double ratio() const { return static_cast<double>(p) / n; }
    void validate() const;
    static EnsembleDims from_ratio(int n, double gamma);
};

enum class LawKind { Gaussian, PotentialTilted, TwoPoint };

// Law of one real component of an entry. Every built-in law has mean 0 and,
// before `scale` is applied, variance 1/2 (gaussian, two-point) or the
// variance of the tilted density (potential; 1/2 again if `standardize`).
struct EntryLaw {
    LawKind kind = LawKind::Gaussian;
    Potential potential;
    int growth_exponent = 1;
    bool standardize = false;
    double scale = 1.0;

    static EntryLaw gaussian(double scale = 1.0);
    static EntryLaw two_point(double scale = 1.0);
    static EntryLaw potential_tilted(Potential v, int growth_exponent, bool standardize = false,
                                     double scale = 1.0);
    std::string describe() const;
};

struct MatrixSample {
    Eigen::MatrixXcd y;
    EnsembleDims dims;
    std::string law;
    std::uint64_t seed = 0;
};

// Moments of the tilted component law e^{-V} dmu, by quadrature.
struct TiltedMoments {
    double log_normalizer;  // log of the integral of e^{-V} against mu
    double mean;
    double variance;
};
TiltedMoments tilted_moments(const Potential& v);

// Expectation of f under mu = N(0, 1/2), adaptive quadrature on [-10, 10].
double gaussian_expectation(const std::function<double(double)>& f,
                            std::span<const double> breaks = {});

MatrixSample sample_matrix(const EntryLaw& law, const EnsembleDims& dims, std::uint64_t seed);

// YY^*/N, Hermitian by construction.
Eigen::MatrixXcd form_covariance(const MatrixSample& y);

struct GaussDivisibleParams {
    double lambda = 0.5;
    double a = 0.0;        // a^2 = N^(lambda - 1)
    double s_scale = 0.0;  // a^2 / N
    static GaussDivisibleParams from_lambda(double lambda, int n);
};

// Y = W + aX with W from w_law and X complex standard gaussian.
MatrixSample gauss_divisible_sample(const EntryLaw& w_law, const GaussDivisibleParams& gd,
                                    const EnsembleDims& dims, std::uint64_t seed);

// Entrywise e^{-t/2}(h + sqrt(e^t - 1) X) with fresh complex gaussian X.
MatrixSample ou_evolve(const MatrixSample& h, double t, std::uint64_t seed);

// Little-endian export: u64 N, u64 p, then (re, im) f64 pairs row-major.
void write_matrix_binary(const MatrixSample& s, std::ostream& out);
MatrixSample read_matrix_binary(std::istream& in);

// ---- one-dimensional regularization pipeline --------------------------------

// Smooth plateau: 1 on |x| <= 1, 0 on |x| >= 2, built from e^{-1/s}.
double smooth_cutoff(double x);
Jet smooth_cutoff(const Jet& x);

// Density against mu with exact derivatives when available.
struct Density1D {
    std::function<double(double)> value;
    std::function<Jet(double)> jet;  // optional
    std::vector<double> breaks;      // points where the density is not analytic

    double operator()(double x) const { return value(x); }
    Jet derivatives(double x) const;
};

struct TruncationParams {
    double lambda = 0.5;
    int k = 1;
    int n = 100;
};

struct TruncatedDensity {
    Density1D density;
    double center = 0.0;        // shift c_N
    double log_normalizer = 0.0;  // d_N
    double radius = 0.0;        // N^(lambda / 4k)
    double mass_residual = 0.0;
    double mean_residual = 0.0;
};

// v = exp(-(V(x) theta((x - c)/R) + d)) with c, d chosen so that v has unit
// mass and zero mean against mu.
TruncatedDensity truncate_center_density(const Potential& v, const TruncationParams& tp);

// Exact Ornstein-Uhlenbeck transition applied by Gauss-Hermite quadrature.
Density1D ou_semigroup_1d(const Density1D& g, double t, int nodes = 96);

struct TaylorApplied {
    Density1D g_t;
    bool negative = false;
    double min_value = 0.0;
};
// (1 - tL + t^2 L^2 / 2) v with L = (1/4) d^2 - (x/2) d.
TaylorApplied ou_taylor_apply(const Density1D& v, double t, double grid_half_width = 6.0,
                              int grid_points = 1201);

// int |f - g|^2 / g dmu.
double chi2_divergence_1d(const Density1D& f, const Density1D& g);

}  // namespace rmtlab
