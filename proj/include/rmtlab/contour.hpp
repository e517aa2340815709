#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rmtlab/common.hpp"

namespace rmtlab {

// Marks a panel end that sits on a crossing point of the two contours, where
// the 1/(w - z) factor is singular. Panels meeting at the same crossing are
// integrated together with a Duffy split.
enum class Corner { None, StartPlus, EndPlus, StartMinus, EndMinus };

// Smooth arc parametrized over tau in [0, 1].
struct Panel {
    std::function<void(double, cd&, cd&)> map;  // tau -> (z, dz/dtau)
    Corner corner = Corner::None;

    cd at(double tau) const {
        cd z, dz;
        map(tau, z, dz);
        return z;
    }
    static Panel segment(cd from, cd to, Corner c = Corner::None);
};

struct ContourPath {
    std::vector<Panel> panels;
    std::string label;
    bool closed = false;

    cd start() const { return panels.front().at(0.0); }
    cd end() const { return panels.back().at(1.0); }

    // Splits [from, to] into straight panels no longer than max_len.
    void add_segment(cd from, cd to, double max_len);
    void append(const ContourPath& other);

    // Points and weighted tangents from a Gauss-Legendre rule on each panel.
    void nodes(int order, std::vector<cd>& z, std::vector<cd>& dz) const;

    // The path followed by its image under z -> -z; closes a right half that
    // runs between conjugate points on the imaginary axis.
    ContourPath with_mirror_image() const;

    // (1 / 2 pi i) times the integral of dz / (z - p) over the path.
    double winding_number(cd p, int order = 32) const;
};

// A number stored as value * e^{log_scale}.
struct ScaledValue {
    cd value = 0.0;
    double log_scale = 0.0;

    cd full() const { return value * std::exp(log_scale); }
    ScaledValue& operator+=(const ScaledValue& o);
    ScaledValue operator*(cd c) const { return {value * c, log_scale}; }
};

// Integrand of the form exp(log_a(w) + log_b(z)) * pair(w, z). The separable
// logarithmic factors are evaluated once per node and rescaled by their
// maxima before exponentiation.
struct SeparableIntegrand {
    std::function<cd(cd)> log_a;
    std::function<cd(cd)> log_b;
    std::function<cd(cd, cd)> pair;
};

// Tensor Gauss-Legendre over every (w panel, z panel) pair; pairs sharing a
// crossing point are reparametrized to start there and split into two
// triangles so the 1/(w - z) singularity is integrable.
ScaledValue double_integral(const ContourPath& wpath, const ContourPath& zpath,
                            const SeparableIntegrand& f, int order);

ScaledValue single_integral(const ContourPath& path, const std::function<cd(cd)>& log_f,
                            const std::function<cd(cd)>& factor, int order);

// Repeats `eval(order)` with doubled orders until the change drops below
// rel_tol times max(|estimate|, e^{log_floor}); the floor lets integrals that
// cancel to nearly zero be judged against the size of their integrand.
// Throws NumericError with the last two estimates otherwise.
ScaledValue converge_by_doubling(const std::function<ScaledValue(int)>& eval, int start_order,
                                 int max_order, double rel_tol, int* used_order = nullptr,
                                 double log_floor = -std::numeric_limits<double>::infinity());

// complex expm1, accurate for small arguments
cd expm1c(cd x);

// ---- critical points of the exponent ----------------------------------------

struct CriticalPoints {
    cd w_plus;
    cd w_minus;
    cd second_deriv;  // exponent's second derivative at w_plus
    double residual = 0.0;
    enum class Kind { Limit, Empirical } kind = Kind::Limit;
};

// Roots of 2w - 2 sqrt(u) - 2 a^2 w m(w^2) + a^2 (gamma - 1)/w with m the
// limit Stieltjes transform at variance 1/4. For gamma = 1 Newton starts from
// the closed form of the quadratic; otherwise from the first-order expansion.
CriticalPoints critical_points_limit(double u, double a, double gamma);

// Derivatives of the limit exponent in w at parameter u.
struct LimitExponent {
    double a2 = 0.0;
    double gamma = 1.0;
    cd d1(cd w, double u) const;
    cd d2(cd w, double u) const;
};

// Fixed point of w = sqrt(u) - S sum w/(w^2 - y_i) - S nu/(2w), S = a^2/N,
// iterated from the limit point (Newton if the map fails to contract).
CriticalPoints critical_points_empirical(const std::vector<double>& y, double u, double a, int nu,
                                         double gamma);

// Exponent of the finite-N integrand and its derivatives, at parameter u:
// f(z) = z^2 - 2 sqrt(u) z + S sum log(z^2 - y_i) + S nu log z + shift.
struct Exponent {
    const std::vector<double>* y = nullptr;
    double u = 0.0;
    double s = 0.0;
    int nu = 0;
    double shift = 0.0;

    cd value(cd z) const;
    cd d1(cd z) const;
    cd d2(cd z) const;
    // (d1(w) - d1(z)) / (w - z) in closed form (no cancellation at w = z).
    cd divided_difference(cd w, cd z) const;
};

}  // namespace rmtlab
