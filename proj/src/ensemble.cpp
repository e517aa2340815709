#include "rmtlab/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "rmtlab/common.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

static_assert(std::endian::native == std::endian::little,
              "binary matrix export assumes a little-endian host");

void EnsembleDims::validate() const {
    if (n < 1 || p < 1) throw ConfigError("dimensions must be positive");
    if (p < n) throw ConfigError("need p >= N (got N=" + std::to_string(n) + ", p=" + std::to_string(p) + ")");
}

EnsembleDims EnsembleDims::from_ratio(int n, double gamma) {
    EnsembleDims d;
    d.n = n;
    d.p = static_cast<int>(std::lround(gamma * n));
    d.gamma_target = gamma;
    d.validate();
    return d;
}

EntryLaw EntryLaw::gaussian(double scale) {
    EntryLaw l;
    l.kind = LawKind::Gaussian;
    l.scale = scale;
    return l;
}

EntryLaw EntryLaw::two_point(double scale) {
    EntryLaw l;
    l.kind = LawKind::TwoPoint;
    l.scale = scale;
    return l;
}

EntryLaw EntryLaw::potential_tilted(Potential v, int growth_exponent, bool standardize, double scale) {
    EntryLaw l;
    l.kind = LawKind::PotentialTilted;
    l.potential = std::move(v);
    l.growth_exponent = growth_exponent;
    l.standardize = standardize;
    l.scale = scale;
    return l;
}

std::string EntryLaw::describe() const {
    std::ostringstream os;
    switch (kind) {
        case LawKind::Gaussian: os << "gaussian"; break;
        case LawKind::TwoPoint: os << "two-point"; break;
        case LawKind::PotentialTilted:
            os << "potential[" << potential.label() << ", k=" << growth_exponent
               << (standardize ? ", standardized" : "") << "]";
            break;
    }
    if (scale != 1.0) os << "*" << scale;
    return os.str();
}

double gaussian_expectation(const std::function<double(double)>& f, std::span<const double> breaks) {
    const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
    std::vector<double> pts(breaks.begin(), breaks.end());
    pts.push_back(0.0);
    return integrate([&](double x) { return f(x) * std::exp(-x * x) * inv_sqrt_pi; }, -10.0, 10.0,
                     1e-14, pts);
}

TiltedMoments tilted_moments(const Potential& v) {
    const double z = gaussian_expectation([&](double x) { return std::exp(-v(x)); });
    if (!(z > 0.0) || !std::isfinite(z)) throw NumericError("potential is not normalizable against the gaussian base");
    const double m1 = gaussian_expectation([&](double x) { return x * std::exp(-v(x)); }) / z;
    const double m2 = gaussian_expectation([&](double x) { return x * x * std::exp(-v(x)); }) / z;
    return {std::log(z), m1, m2 - m1 * m1};
}

namespace {

constexpr std::uint64_t kTagSample = 0x53414d50ULL;
constexpr std::uint64_t kTagNoise = 0x4f554e53ULL;

// Draws one real component for a fixed law; the envelope for the tilted law
// is computed once per matrix.
class ComponentSampler {
public:
    explicit ComponentSampler(const EntryLaw& law) : law_(law) {
        if (law.kind != LawKind::PotentialTilted) return;
        // Log-density of the tilted law relative to Lebesgue: -V(x) - x^2.
        const double half = 8.0;
        const int grid = 4001;
        double best = -std::numeric_limits<double>::infinity();
        double best_x = 0.0;
        double max_log_density = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid; ++i) {
            const double x = -half + 2.0 * half * i / (grid - 1);
            const double nv = -law.potential(x);
            if (!std::isfinite(nv)) throw NumericError("potential is not finite at x=" + std::to_string(x));
            if (nv > best) {
                best = nv;
                best_x = x;
            }
            max_log_density = std::max(max_log_density, nv - x * x);
        }
        const double edge = std::max(-law.potential(-half) - half * half, -law.potential(half) - half * half);
        if (edge > max_log_density - 30.0) {
            throw NumericError("rejection envelope unbounded: e^{-V} does not decay against the gaussian base (potential '" +
                               law.potential.label() + "')");
        }
        // Refine the envelope near the grid maximum and keep a safety margin.
        const double step = 2.0 * half / (grid - 1);
        for (int i = -200; i <= 200; ++i) best = std::max(best, -law.potential(best_x + i * step / 100.0));
        log_envelope_ = best + 1e-3;
        if (law.standardize) {
            const TiltedMoments m = tilted_moments(law.potential);
            shift_ = m.mean;
            stretch_ = std::sqrt(0.5 / m.variance);
        }
    }

    double draw(CounterStream& rng) const {
        switch (law_.kind) {
            case LawKind::Gaussian: return law_.scale * rng.normal() * std::sqrt(0.5);
            case LawKind::TwoPoint: return law_.scale * (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::sqrt(0.5);
            case LawKind::PotentialTilted: break;
        }
        for (int attempt = 0; attempt < 100000; ++attempt) {
            const double x = rng.normal() * std::sqrt(0.5);
            const double accept = std::exp(-law_.potential(x) - log_envelope_);
            if (rng.uniform() < accept) return law_.scale * (x - shift_) * stretch_;
        }
        throw NumericError("rejection sampler exceeded its attempt budget");
    }

private:
    const EntryLaw& law_;
    double log_envelope_ = 0.0;
    double shift_ = 0.0;
    double stretch_ = 1.0;
};

}  // namespace

MatrixSample sample_matrix(const EntryLaw& law, const EnsembleDims& dims, std::uint64_t seed) {
    dims.validate();
    const ComponentSampler sampler(law);
    MatrixSample s;
    s.dims = dims;
    s.law = law.describe();
    s.seed = seed;
    s.y.resize(dims.n, dims.p);
    for (int j = 0; j < dims.p; ++j) {
        for (int i = 0; i < dims.n; ++i) {
            CounterStream re(hash_words(seed ^ kTagSample, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j), 0));
            CounterStream im(hash_words(seed ^ kTagSample, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j), 1));
            s.y(i, j) = cd(sampler.draw(re), sampler.draw(im));
        }
    }
    return s;
}

Eigen::MatrixXcd form_covariance(const MatrixSample& y) {
    const Eigen::Index n = y.y.rows();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    m.selfadjointView<Eigen::Lower>().rankUpdate(y.y, 1.0 / static_cast<double>(n));
    // Mirror the lower triangle so the matrix is exactly Hermitian.
    for (Eigen::Index j = 0; j < n; ++j) {
        m(j, j) = cd(m(j, j).real(), 0.0);
        for (Eigen::Index i = j + 1; i < n; ++i) m(j, i) = std::conj(m(i, j));
    }
    return m;
}

GaussDivisibleParams GaussDivisibleParams::from_lambda(double lambda, int n) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in (0, 1)");
    GaussDivisibleParams g;
    g.lambda = lambda;
    const double a2 = std::pow(static_cast<double>(n), lambda - 1.0);
    g.a = std::sqrt(a2);
    g.s_scale = a2 / n;
    return g;
}

MatrixSample gauss_divisible_sample(const EntryLaw& w_law, const GaussDivisibleParams& gd,
                                    const EnsembleDims& dims, std::uint64_t seed) {
    MatrixSample w = sample_matrix(w_law, dims, hash_words(seed, 1));
    if (gd.a == 0.0) return w;
    const MatrixSample x = sample_matrix(EntryLaw::gaussian(), dims, hash_words(seed, 2));
    w.y += gd.a * x.y;
    w.law = w_law.describe() + "+a*gaussian";
    w.seed = seed;
    return w;
}

MatrixSample ou_evolve(const MatrixSample& h, double t, std::uint64_t seed) {
    if (t < 0.0) throw ConfigError("ou_evolve: t must be nonnegative");
    if (t == 0.0) return h;
    MatrixSample out = h;
    const double damp = std::exp(-0.5 * t);
    const double spread = std::sqrt(std::expm1(t));
    const EntryLaw g = EntryLaw::gaussian();
    const ComponentSampler sampler(g);
    for (Eigen::Index j = 0; j < h.y.cols(); ++j) {
        for (Eigen::Index i = 0; i < h.y.rows(); ++i) {
            CounterStream re(hash_words(seed ^ kTagNoise, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j), 0));
            CounterStream im(hash_words(seed ^ kTagNoise, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j), 1));
            const cd noise(sampler.draw(re), sampler.draw(im));
            out.y(i, j) = damp * (h.y(i, j) + spread * noise);
        }
    }
    out.seed = seed;
    return out;
}

void write_matrix_binary(const MatrixSample& s, std::ostream& out) {
    const std::uint64_t header[2] = {static_cast<std::uint64_t>(s.y.rows()), static_cast<std::uint64_t>(s.y.cols())};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    for (Eigen::Index i = 0; i < s.y.rows(); ++i) {
        for (Eigen::Index j = 0; j < s.y.cols(); ++j) {
            const double pair[2] = {s.y(i, j).real(), s.y(i, j).imag()};
            out.write(reinterpret_cast<const char*>(pair), sizeof(pair));
        }
    }
}

MatrixSample read_matrix_binary(std::istream& in) {
    std::uint64_t header[2];
    if (!in.read(reinterpret_cast<char*>(header), sizeof(header))) throw ConfigError("matrix file: truncated header");
    MatrixSample s;
    s.dims.n = static_cast<int>(header[0]);
    s.dims.p = static_cast<int>(header[1]);
    s.dims.gamma_target = s.dims.ratio();
    s.y.resize(s.dims.n, s.dims.p);
    for (int i = 0; i < s.dims.n; ++i) {
        for (int j = 0; j < s.dims.p; ++j) {
            double pair[2];
            if (!in.read(reinterpret_cast<char*>(pair), sizeof(pair))) throw ConfigError("matrix file: truncated data");
            s.y(i, j) = cd(pair[0], pair[1]);
        }
    }
    return s;
}

// ---- one-dimensional pipeline ------------------------------------------------

double smooth_cutoff(double x) {
    const double a = std::abs(x);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double p = std::exp(-1.0 / (2.0 - a));
    const double q = std::exp(-1.0 / (a - 1.0));
    return p / (p + q);
}

Jet smooth_cutoff(const Jet& x) {
    const double a0 = std::abs(x.value());
    if (a0 <= 1.0) return Jet(1.0);
    if (a0 >= 2.0) return Jet(0.0);
    const Jet a = abs(x);
    const Jet p = exp(-1.0 / (2.0 - a));
    const Jet q = exp(-1.0 / (a - 1.0));
    return p / (p + q);
}

Jet Density1D::derivatives(double x) const {
    if (jet) return jet(x);
    return finite_difference_jet(value, x);
}

namespace {

// Composite Gauss-Legendre over [-10, 10] against mu, used as an independent
// check of the adaptive integrals.
double composite_expectation(const std::function<double(double)>& f, const std::vector<double>& breaks) {
    std::vector<double> pts{-10.0, 10.0};
    for (double b : breaks) {
        if (b > -10.0 && b < 10.0) pts.push_back(b);
    }
    std::sort(pts.begin(), pts.end());
    const QuadratureRule& rule = gauss_legendre(40);
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const int panels = 64;
        const double h = (pts[s + 1] - pts[s]) / panels;
        for (int k = 0; k < panels; ++k) {
            const double a = pts[s] + k * h;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = a + 0.5 * h * (rule.nodes[i] + 1.0);
                total += 0.5 * h * rule.weights[i] * f(x) * std::exp(-x * x);
            }
        }
    }
    return total / std::sqrt(kPi);
}

}  // namespace

TruncatedDensity truncate_center_density(const Potential& pot, const TruncationParams& tp) {
    constexpr double kMeanNoise = 1e-12;
    if (tp.k < 1) throw ConfigError("truncation: k must be positive");
    const double radius = std::pow(static_cast<double>(tp.n), tp.lambda / (4.0 * tp.k));
    auto tilted = [&](double c) {
        return [&pot, c, radius](double x) { return std::exp(-pot(x) * smooth_cutoff((x - c) / radius)); };
    };
    auto breaks_for = [radius](double c) {
        return std::vector<double>{c - 2 * radius, c - radius, c + radius, c + 2 * radius};
    };
    auto mean_of = [&](double c) {
        const auto w = tilted(c);
        const auto br = breaks_for(c);
        const double mass = gaussian_expectation(w, br);
        return gaussian_expectation([&](double x) { return x * w(x); }, br) / mass;
    };

    double center = 0.0;
    if (!pot.is_zero()) {
        const double m0 = mean_of(0.0);
        if (std::abs(m0) > 1e-15) {
            // Walk outward from 0 until the centered mean changes sign.
            double lo = 0.0, flo = m0, hi = 0.0, fhi = m0;
            bool found = false;
            const double step = radius / 16.0;
            for (int i = 1; i <= 96 && !found; ++i) {
                for (double dir : {-1.0, 1.0}) {
                    const double c = dir * i * step;
                    const double fc = mean_of(c);
                    const double prev = dir * (i - 1) * step;
                    const double fprev = (i == 1) ? m0 : mean_of(prev);
                    // Far from the bulk the mean decays to round-off, where
                    // its sign is meaningless; only clear changes count.
                    const bool clear = std::abs(fc) > kMeanNoise && std::abs(fprev) > kMeanNoise;
                    if (clear && (fc > 0) != (fprev > 0)) {
                        lo = std::min(prev, c);
                        hi = std::max(prev, c);
                        flo = (lo == prev) ? fprev : fc;
                        fhi = (hi == prev) ? fprev : fc;
                        found = true;
                        break;
                    }
                }
            }
            if (!found) {
                throw NumericError("truncate_center_density: no centering shift found, mean residual " +
                                   std::to_string(m0));
            }
            std::uintmax_t iters = 200;
            auto r = boost::math::tools::toms748_solve(mean_of, lo, hi, flo, fhi,
                                                       boost::math::tools::eps_tolerance<double>(52), iters);
            center = 0.5 * (r.first + r.second);
        }
    }

    const auto br = breaks_for(center);
    const double log_norm = std::log(gaussian_expectation(tilted(center), br));

    TruncatedDensity out;
    out.center = center;
    out.log_normalizer = log_norm;
    out.radius = radius;
    const Potential potc = pot;
    out.density.value = [potc, center, radius, log_norm](double x) {
        return std::exp(-potc(x) * smooth_cutoff((x - center) / radius) - log_norm);
    };
    out.density.jet = [potc, center, radius, log_norm](double x) {
        const Jet y = (Jet::variable(x) - center) / radius;
        return exp(-(potc.jet(x) * smooth_cutoff(y)) - log_norm);
    };
    out.density.breaks = br;
    out.mass_residual = std::abs(composite_expectation(out.density.value, br) - 1.0);
    out.mean_residual =
        std::abs(composite_expectation([&](double x) { return x * out.density.value(x); }, br));
    if (out.mass_residual > 1e-10 || out.mean_residual > 1e-10) {
        throw NumericError("truncate_center_density: residuals mass=" + std::to_string(out.mass_residual) +
                           " mean=" + std::to_string(out.mean_residual));
    }
    return out;
}

Density1D ou_semigroup_1d(const Density1D& g, double t, int nodes) {
    if (t < 0.0) throw ConfigError("ou_semigroup_1d: t must be nonnegative");
    if (t == 0.0) return g;
    const QuadratureRule& rule = gauss_hermite(nodes);
    const double damp = std::exp(-0.5 * t);
    const double spread = std::sqrt(-std::expm1(-t));
    const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
    auto value = g.value;
    Density1D out;
    out.value = [value, &rule, damp, spread, inv_sqrt_pi](double x) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            s += rule.weights[i] * value(damp * x + spread * rule.nodes[i]);
        }
        return s * inv_sqrt_pi;
    };
    return out;
}

TaylorApplied ou_taylor_apply(const Density1D& v, double t, double grid_half_width, int grid_points) {
    TaylorApplied out;
    auto combine = [v, t](double x) {
        const Jet j = v.derivatives(x);
        const double d1 = j.derivative(1), d2 = j.derivative(2), d3 = j.derivative(3), d4 = j.derivative(4);
        const double lv = 0.25 * d2 - 0.5 * x * d1;
        const double l2v = d4 / 16.0 - 0.25 * x * d3 + 0.25 * (x * x - 1.0) * d2 + 0.25 * x * d1;
        return j.value() - t * lv + 0.5 * t * t * l2v;
    };
    out.g_t.value = combine;
    out.g_t.breaks = v.breaks;
    out.min_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
        const double x = -grid_half_width + 2.0 * grid_half_width * i / (grid_points - 1);
        out.min_value = std::min(out.min_value, combine(x));
    }
    out.negative = out.min_value < 0.0;
    return out;
}

double chi2_divergence_1d(const Density1D& f, const Density1D& g) {
    // The integrand is of the size of the squared difference, often near
    // rounding level, so a fixed composite rule replaces adaptive refinement.
    std::vector<double> pts{-7.0, 7.0};
    for (const auto* br : {&f.breaks, &g.breaks}) {
        for (double b : *br) {
            if (b > -7.0 && b < 7.0) pts.push_back(b);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const QuadratureRule& rule = gauss_legendre(24);
    std::vector<double> terms;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const int panels = 16;
        const double h = (pts[s + 1] - pts[s]) / panels;
        for (int k = 0; k < panels; ++k) {
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = pts[s] + h * (k + 0.5 * (rule.nodes[i] + 1.0));
                const double gx = g(x);
                if (!(gx > 0.0)) {
                    throw NumericError("chi2_divergence_1d: reference density vanishes at x=" + std::to_string(x));
                }
                const double d = f(x) - gx;
                terms.push_back(0.5 * h * rule.weights[i] * d * d / gx * std::exp(-x * x));
            }
        }
    }
    return pairwise_sum(terms) / std::sqrt(kPi);
}

}  // namespace rmtlab
