#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "rmtlab/contour.hpp"
#include "rmtlab/spectral.hpp"

namespace rmtlab {

// Parameters of one kernel evaluation. Spectra live on the variance-1/4
// scale, so the bulk of the limit law is (u_-, u_+) = (0, 1) when gamma = 1.
struct SaddleConfig {
    int n = 8;                 // matrix size N
    int nu = 0;                // p - N
    double lambda = 0.6;       // a^2 = N^(lambda - 1)
    double s_override = 0.0;   // if > 0, use this S and set a^2 = N S
    double gamma = 1.0;        // aspect ratio used by the limit critical points
    double u_star = 0.5;       // bulk point defining the contours
    double eps = 0.05;         // bulk margin of the critical-point family
    double endpoint_divisor = 180.0;
    double b = std::numeric_limits<double>::quiet_NaN();  // conjugation; NaN: Re of the crossing point
    double panel_width = 0.5;  // panel length in units of sqrt(S)
    double tail_width = 14.0;  // truncation of the vertical contour in units of sqrt(S)
    int start_order = 16;
    int max_order = 128;
    double rel_tol = 1e-7;

    double a2() const;
    double a() const { return std::sqrt(a2()); }
    double s() const;
    void validate() const;
};

// Steepest-descent family t -> w_c(t) of critical points over the bulk
// window. Points are recomputed by Newton from a tabulated continuation, so
// every quadrature node lies exactly on the family.
class CriticalFamily {
public:
    static std::shared_ptr<const CriticalFamily> build(const std::vector<double>& y, const SaddleConfig& cfg);

    cd at(double t) const;
    cd derivative(double t) const;  // dw/dt
    double t_lo() const { return ts_.front(); }
    double t_hi() const { return ts_.back(); }
    CriticalPoints::Kind kind() const { return kind_; }

private:
    cd solve(double t, cd guess) const;
    cd second_derivative(cd w, double t) const;

    std::vector<double> y_;
    double a2_ = 0.0, s_ = 0.0, gamma_ = 1.0;
    int nu_ = 0;
    CriticalPoints::Kind kind_ = CriticalPoints::Kind::Empirical;
    std::vector<double> ts_;
    std::vector<cd> ws_;
};

struct KernelContours {
    std::shared_ptr<const CriticalFamily> family;
    cd p_plus, p_minus;  // crossing points of the two contours
    double b = 0.0;      // real part of the vertical contour
    cd x1_minus, x1_plus;
    ContourPath gamma_half;  // from -i T0 around the right of all sqrt(y_i) to +i T0
    ContourPath gamma_1;     // from x1_minus to x1_plus (gamma_half without connectors)
    ContourPath family_arcs; // the critical-point arcs of gamma_1 only
    ContourPath upsilon;     // b + i t
    ContourPath crossing;    // straight segment from p_minus to p_plus
};

KernelContours build_contours(const Spectrum& s, const SaddleConfig& cfg);

// Sampled-node extremality of Re f at the crossing points: along the vertical
// contour Re f is maximal there, along the family arcs it is minimal.
struct ExtremalityReport {
    double re_f_crossing = 0.0;
    double max_re_f_vertical = 0.0;
    double min_re_f_family = 0.0;
};
ExtremalityReport extremality_check(const Spectrum& s, const SaddleConfig& cfg, const KernelContours& c,
                                    int order = 16);

// Kernel K_N(u, v; H) from the contour double integral, saddle contours.
ScaledValue eval_kernel_raw(const Spectrum& s, double u, double v, const SaddleConfig& cfg,
                            const KernelContours& c);
// Same kernel with a circle-type contour and the vertical line far to the right.
ScaledValue eval_kernel_circle(const Spectrum& s, double u, double v, const SaddleConfig& cfg);
// Same kernel with the inner integral done by residues.
ScaledValue eval_kernel_residue(const Spectrum& s, double u, double v, const SaddleConfig& cfg);

// Multiplies by e^{2b(sqrt v - sqrt u)/S}.
cd conjugate_kernel(cd kval, double u, double v, double b, double s_scale);
ScaledValue conjugate_kernel(const ScaledValue& kval, double u, double v, double b, double s_scale);

struct KernelDecomposition {
    cd k1;
    cd k2;
    cd k1_direct;  // first part evaluated without the integration by parts
    cd x1_minus, x1_plus;
};

KernelDecomposition eval_kernel_decomposed(const Spectrum& s, double u, double v, const SaddleConfig& cfg,
                                           const KernelContours& c);

// Pieces of the decomposed integrand, exposed for tests.
cd decomposition_g(const Exponent& f, double b, cd w, cd z);
cd decomposition_theta(cd w, double b, double u, double v, double s_scale);

double sine_kernel(double x, double y);

struct SineLimitRow {
    double tau;
    double v;
    cd kb;
    cd rescaled;
    double target;
    double error;     // relative unless the target vanishes, then absolute
    bool relative;
};

// K^b(u*, u* + tau/(N rho(u*))) / (N rho(u*)) against the sine kernel.
std::vector<SineLimitRow> sine_limit_check(const Spectrum& s, const SaddleConfig& cfg,
                                           const std::vector<double>& tau_grid);

// ---- direct quadrature of the eigenvalue density (N <= 2) --------------------

struct BruteForce {
    std::vector<double> y;
    double s = 0.0;
    int nu = 0;

    // Transition density of one eigenvalue from y to x.
    double phi(double yi, double x) const;
    // Joint density with total mass N! over the positive orthant.
    double density(const std::vector<double>& x) const;
    double upper_limit() const;
    // Mass of the ordered chamber (should be 1).
    double chamber_mass() const;
    double r1(double x) const;
    double r2(double x1, double x2) const;
};

// Integral of K_N(x, x) over (0, infinity) by composite Gauss-Legendre.
double kernel_trace(const Spectrum& s, const SaddleConfig& cfg, int panels = 24, int order = 16);

}  // namespace rmtlab
