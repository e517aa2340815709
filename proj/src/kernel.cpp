#include "rmtlab/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "rmtlab/mp.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/specfun.hpp"

namespace rmtlab {

double SaddleConfig::a2() const {
    if (s_override > 0.0) return n * s_override;
    return std::pow(static_cast<double>(n), lambda - 1.0);
}

double SaddleConfig::s() const { return s_override > 0.0 ? s_override : a2() / n; }

void SaddleConfig::validate() const {
    if (n < 1) throw ConfigError("saddle config: N must be positive");
    if (nu < 0) throw ConfigError("saddle config: nu must be nonnegative");
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("saddle config: eps must lie in (0, 1)");
    if (!(endpoint_divisor > 1.0)) throw ConfigError("saddle config: endpoint_divisor must exceed 1");
    if (!(panel_width > 0.0) || !(tail_width > 0.0)) throw ConfigError("saddle config: widths must be positive");
    if (start_order < 2 || max_order < start_order) throw ConfigError("saddle config: bad quadrature orders");
}

// ---- critical-point family ------------------------------------------------------

cd CriticalFamily::second_derivative(cd w, double t) const {
    if (kind_ == CriticalPoints::Kind::Limit) return LimitExponent{a2_, gamma_}.d2(w, t);
    return Exponent{&y_, t, s_, nu_, 0.0}.d2(w);
}

cd CriticalFamily::solve(double t, cd guess) const {
    cd w = guess;
    const Exponent ex{&y_, t, s_, nu_, 0.0};
    const LimitExponent lim{a2_, gamma_};
    for (int it = 0; it < 80; ++it) {
        const cd d1 = kind_ == CriticalPoints::Kind::Limit ? lim.d1(w, t) : ex.d1(w);
        const cd d2 = kind_ == CriticalPoints::Kind::Limit ? lim.d2(w, t) : ex.d2(w);
        const cd step = d1 / d2;
        w -= step;
        if (!std::isfinite(std::abs(w))) break;
        if (std::abs(step) <= 1e-15 * std::abs(w)) return w;
    }
    if (std::isfinite(std::abs(w)) && std::abs(w - guess) < 1e-3) return w;
    throw NumericError("critical family: Newton failed at t=" + std::to_string(t));
}

std::shared_ptr<const CriticalFamily> CriticalFamily::build(const std::vector<double>& y, const SaddleConfig& cfg) {
    auto fam = std::make_shared<CriticalFamily>();
    fam->y_ = y;
    fam->a2_ = cfg.a2();
    fam->s_ = cfg.s();
    fam->gamma_ = cfg.gamma;
    fam->nu_ = cfg.nu;
    const MpParams lim{cfg.gamma, 0.25};
    const double width = lim.u_plus() - lim.u_minus();
    const double lo = lim.u_minus() + 0.5 * cfg.eps * width;
    const double hi = lim.u_plus() - 0.5 * cfg.eps * width;
    const int m = 801;
    fam->ts_.resize(m);
    for (int i = 0; i < m; ++i) fam->ts_[i] = lo + (hi - lo) * i / (m - 1);

    auto tabulate = [&](CriticalPoints::Kind kind) {
        fam->kind_ = kind;
        fam->ws_.assign(m, cd(0.0));
        cd w = critical_points_limit(lo, std::sqrt(fam->a2_), cfg.gamma).w_plus;
        for (int i = 0; i < m; ++i) {
            // Continuation: the previous point seeds Newton at the next parameter.
            cd next;
            try {
                next = fam->solve(fam->ts_[i], w);
            } catch (const NumericError&) {
                return false;
            }
            if (!(next.imag() > 1e-8)) return false;
            w = next;
            fam->ws_[i] = w;
        }
        return true;
    };
    // At small N the empirical family can touch the real axis; the limit
    // family is then used for both the arcs and the crossing point.
    if (!tabulate(CriticalPoints::Kind::Empirical) && !tabulate(CriticalPoints::Kind::Limit)) {
        throw NumericError("critical family: no complex family over the bulk window");
    }
    for (int i = 0; i < m; ++i) {
        if (!(fam->derivative(fam->ts_[i]).real() > 0.0)) {
            throw NumericError("critical family: real part not increasing; contours would intersect");
        }
    }
    return fam;
}

cd CriticalFamily::at(double t) const {
    const double lo = ts_.front(), hi = ts_.back();
    if (t < lo - 1e-12 || t > hi + 1e-12) throw NumericError("critical family: parameter outside the window");
    const double pos = (t - lo) / (hi - lo) * (ts_.size() - 1);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(0.0, pos)), ts_.size() - 2);
    const double frac = pos - static_cast<double>(k);
    const cd guess = ws_[k] + (ws_[k + 1] - ws_[k]) * frac;
    return solve(t, guess);
}

cd CriticalFamily::derivative(double t) const {
    // d/dt of the critical-point equation: w' = 1 / (sqrt(t) f''(w)).
    const cd w = at(t);
    return 1.0 / (std::sqrt(t) * second_derivative(w, t));
}

// ---- contours ---------------------------------------------------------------------

namespace {

// Panels along the family between parameters t0 and t1 (either order), each
// no longer than max_len in arc length.
void add_family(ContourPath& path, const std::shared_ptr<const CriticalFamily>& fam, double t0, double t1,
                bool conjugate, double max_len, Corner first, Corner last) {
    const int probe = 256;
    std::vector<double> cum(probe + 1, 0.0);
    cd prev = fam->at(t0);
    for (int i = 1; i <= probe; ++i) {
        const cd cur = fam->at(t0 + (t1 - t0) * i / probe);
        cum[i] = cum[i - 1] + std::abs(cur - prev);
        prev = cur;
    }
    const int n = std::max(1, static_cast<int>(std::ceil(cum.back() / max_len)));
    std::vector<double> breaks(n + 1);
    breaks[0] = t0;
    breaks[n] = t1;
    for (int k = 1; k < n; ++k) {
        const double target = cum.back() * k / n;
        const auto it = std::lower_bound(cum.begin(), cum.end(), target);
        const int j = static_cast<int>(it - cum.begin());
        const double f = (target - cum[j - 1]) / (cum[j] - cum[j - 1]);
        breaks[k] = t0 + (t1 - t0) * (j - 1 + f) / probe;
    }
    for (int k = 0; k < n; ++k) {
        const double ta = breaks[k], tb = breaks[k + 1];
        Panel p;
        p.map = [fam, ta, tb, conjugate](double tau, cd& z, cd& dz) {
            const double t = ta + (tb - ta) * tau;
            z = fam->at(t);
            dz = fam->derivative(t) * (tb - ta);
            if (conjugate) {
                z = std::conj(z);
                dz = std::conj(dz);
            }
        };
        if (k == 0) p.corner = first;
        if (k == n - 1 && last != Corner::None) p.corner = last;
        path.panels.push_back(p);
    }
}

void add_vertical(ContourPath& path, double b, double lo, double hi, double max_len, Corner first, Corner last) {
    ContourPath part;
    part.add_segment(cd(b, lo), cd(b, hi), max_len);
    part.panels.front().corner = first;
    if (last != Corner::None) part.panels.back().corner = last;
    path.append(part);
}

}  // namespace

KernelContours build_contours(const Spectrum& s, const SaddleConfig& cfg) {
    cfg.validate();
    KernelContours c;
    const std::vector<double>& y = s.eigs;
    c.family = CriticalFamily::build(y, cfg);
    const auto& fam = c.family;
    if (!(cfg.u_star > fam->t_lo() && cfg.u_star < fam->t_hi())) {
        throw ConfigError("u_star must lie inside the bulk window of the critical family");
    }
    const double sq = std::sqrt(cfg.s());
    const double plen = cfg.panel_width * sq;

    c.p_plus = fam->at(cfg.u_star);
    c.p_minus = std::conj(c.p_plus);
    c.b = c.p_plus.real();
    const double h = c.p_plus.imag();

    const double ymin = *std::min_element(y.begin(), y.end());
    const double ymax = *std::max_element(y.begin(), y.end());
    double x1r = cfg.eps / cfg.endpoint_divisor;
    if (ymin > 0.0) x1r = std::min(x1r, 0.5 * std::sqrt(ymin));
    const cd w_lo = fam->at(fam->t_lo()), w_hi = fam->at(fam->t_hi());
    const double t0 = w_lo.imag();
    c.x1_minus = cd(x1r, -t0);
    c.x1_plus = cd(x1r, t0);
    const double xmax = std::max(w_hi.real(), std::sqrt(std::max(ymax, 0.0))) + 10.0 * sq;

    ContourPath& g = c.gamma_1;
    g.label = "Gamma_1";
    g.add_segment(c.x1_minus, std::conj(w_lo), plen);
    ContourPath arcs;
    add_family(arcs, fam, fam->t_lo(), cfg.u_star, true, plen, Corner::None, Corner::EndMinus);
    add_family(arcs, fam, cfg.u_star, fam->t_hi(), true, plen, Corner::StartMinus, Corner::None);
    g.append(arcs);
    const cd e = std::conj(w_hi);
    g.add_segment(e, cd(xmax, e.imag()), plen);
    g.add_segment(cd(xmax, e.imag()), cd(xmax, w_hi.imag()), plen);
    g.add_segment(cd(xmax, w_hi.imag()), w_hi, plen);
    ContourPath upper;
    add_family(upper, fam, fam->t_hi(), cfg.u_star, false, plen, Corner::None, Corner::EndPlus);
    add_family(upper, fam, cfg.u_star, fam->t_lo(), false, plen, Corner::StartPlus, Corner::None);
    g.append(upper);
    g.add_segment(w_lo, c.x1_plus, plen);
    arcs.append(upper);
    c.family_arcs = arcs;
    c.family_arcs.label = "Gamma_N";

    c.gamma_half.label = "Gamma_right_half";
    c.gamma_half.add_segment(cd(0.0, -t0), c.x1_minus, plen);
    c.gamma_half.append(g);
    c.gamma_half.add_segment(c.x1_plus, cd(0.0, t0), plen);

    const double tail = h + cfg.tail_width * sq;
    c.upsilon.label = "Upsilon_N";
    add_vertical(c.upsilon, c.b, -tail, -h, plen, Corner::None, Corner::EndMinus);
    add_vertical(c.upsilon, c.b, -h, 0.0, plen, Corner::StartMinus, Corner::None);
    add_vertical(c.upsilon, c.b, 0.0, h, plen, Corner::None, Corner::EndPlus);
    add_vertical(c.upsilon, c.b, h, tail, plen, Corner::StartPlus, Corner::None);

    c.crossing.label = "crossing";
    c.crossing.add_segment(c.p_minus, c.p_plus, plen);
    return c;
}

ExtremalityReport extremality_check(const Spectrum& s, const SaddleConfig& cfg, const KernelContours& c, int order) {
    const Exponent f{&s.eigs, cfg.u_star, cfg.s(), cfg.nu, 0.0};
    ExtremalityReport r;
    r.re_f_crossing = f.value(c.p_plus).real();
    std::vector<cd> z, dz;
    c.upsilon.nodes(order, z, dz);
    r.max_re_f_vertical = -1e300;
    for (const cd& x : z) r.max_re_f_vertical = std::max(r.max_re_f_vertical, f.value(x).real());
    c.family_arcs.nodes(order, z, dz);
    r.min_re_f_family = 1e300;
    for (const cd& x : z) r.min_re_f_family = std::min(r.min_re_f_family, f.value(x).real());
    return r;
}

// ---- kernel evaluation -------------------------------------------------------------

namespace {

cd log_product(const std::vector<double>& y, cd z) {
    cd s = 0.0;
    const cd z2 = z * z;
    for (double yi : y) s += std::log(z2 - yi);
    return s;
}

struct BesselFactors {
    const std::vector<double>* y;
    double u, v, s;
    int nu;

    // w-dependent part: e^{w^2/S} K_nu(2 w sqrt(v)/S) prod (w^2 - y) w^nu
    cd log_a(cd w) const {
        return w * w / s + bessel_k(nu, 2.0 * w * std::sqrt(v) / s).log() + log_product(*y, w) +
               static_cast<double>(nu) * std::log(w);
    }
    // z-dependent part: e^{-z^2/S} I_nu(2 z sqrt(u)/S) / prod (z^2 - y) z^-nu
    cd log_b(cd z) const {
        return -z * z / s + bessel_i(nu, 2.0 * z * std::sqrt(u) / s).log() - log_product(*y, z) -
               static_cast<double>(nu) * std::log(z);
    }
};

void check_args(double u, double v) {
    if (!(u > 0.0 && v > 0.0)) throw ConfigError("kernel arguments must be positive");
}

}  // namespace

ScaledValue eval_kernel_raw(const Spectrum& s, double u, double v, const SaddleConfig& cfg, const KernelContours& c) {
    check_args(u, v);
    const double sc = cfg.s();
    const BesselFactors bf{&s.eigs, u, v, sc, cfg.nu};
    SeparableIntegrand f;
    f.log_a = [&](cd w) { return bf.log_a(w); };
    f.log_b = [&](cd z) { return bf.log_b(z); };
    f.pair = [](cd w, cd z) { return 4.0 * w * z / ((w - z) * (w + z)); };
    auto log_res = [&](cd z) {
        return bessel_k(cfg.nu, 2.0 * z * std::sqrt(v) / sc).log() + bessel_i(cfg.nu, 2.0 * z * std::sqrt(u) / sc).log();
    };
    auto eval = [&](int order) {
        ScaledValue total = double_integral(c.upsilon, c.gamma_half, f, order);
        total += single_integral(c.crossing, log_res, [](cd z) { return 2.0 * z; }, order) * (2.0 * kPi * kI);
        return total;
    };
    const ScaledValue sum = converge_by_doubling(eval, cfg.start_order, cfg.max_order, cfg.rel_tol);
    return sum * cd(-1.0 / (2.0 * kPi * kPi * sc * sc));
}

ScaledValue eval_kernel_circle(const Spectrum& s, double u, double v, const SaddleConfig& cfg) {
    check_args(u, v);
    const double sc = cfg.s(), sq = std::sqrt(sc);
    const double ymax = *std::max_element(s.eigs.begin(), s.eigs.end());
    const double rx = std::sqrt(std::max(ymax, 0.0)) + 0.3, ry = 0.35, shift = rx + 0.3;
    const double plen = cfg.panel_width * sq;

    ContourPath ellipse;
    ellipse.label = "ellipse";
    ellipse.closed = true;
    const int np = std::max(32, static_cast<int>(std::ceil(2.0 * kPi * rx / plen)));
    for (int k = 0; k < np; ++k) {
        const double th0 = 2.0 * kPi * k / np, th1 = 2.0 * kPi * (k + 1) / np;
        Panel p;
        p.map = [=](double tau, cd& z, cd& dz) {
            const double th = th0 + (th1 - th0) * tau;
            z = cd(rx * std::cos(th), ry * std::sin(th));
            dz = cd(-rx * std::sin(th), ry * std::cos(th)) * (th1 - th0);
        };
        ellipse.panels.push_back(p);
    }
    ContourPath line;
    line.label = "Upsilon_A";
    const double tail = cfg.tail_width * sq;
    line.add_segment(cd(shift, -tail), cd(shift, tail), plen);

    const BesselFactors bf{&s.eigs, u, v, sc, cfg.nu};
    SeparableIntegrand f;
    f.log_a = [&](cd w) { return bf.log_a(w); };
    f.log_b = [&](cd z) { return bf.log_b(z); };
    f.pair = [](cd w, cd z) { return 4.0 * w * z / ((w - z) * (w + z)); };
    const ScaledValue sum = converge_by_doubling([&](int order) { return double_integral(line, ellipse, f, order); },
                                                 cfg.start_order, cfg.max_order, cfg.rel_tol);
    return sum * cd(-1.0 / (4.0 * kPi * kPi * sc * sc));
}

ScaledValue eval_kernel_residue(const Spectrum& s, double u, double v, const SaddleConfig& cfg) {
    check_args(u, v);
    const std::vector<double>& y = s.eigs;
    const double sc = cfg.s(), sq = std::sqrt(sc);
    const int nu = cfg.nu;
    ContourPath line;
    const double shift = std::sqrt(v), tail = cfg.tail_width * sq;
    line.add_segment(cd(shift, -tail), cd(shift, tail), cfg.panel_width * sq);

    ScaledValue total;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw NumericError("residue route needs positive eigenvalues");
        cd log_coef = -y[i] / sc + bessel_i(nu, cd(2.0 * std::sqrt(y[i] * u) / sc, 0.0)).log() -
                      0.5 * nu * std::log(y[i]);
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (j != i) log_coef -= std::log(cd(y[i] - y[j], 0.0));
        }
        auto log_f = [&, i](cd w) {
            cd acc = w * w / sc + bessel_k(nu, 2.0 * w * std::sqrt(v) / sc).log() + (nu + 1.0) * std::log(w);
            for (std::size_t j = 0; j < y.size(); ++j) {
                if (j != i) acc += std::log(w * w - y[j]);
            }
            return acc;
        };
        // Integral of |integrand| along the line (dz = i dt), the floor for
        // parts that nearly cancel.
        const ScaledValue l1 = single_integral(
            line, [&](cd w) { return cd(log_f(w).real(), 0.0); }, [](cd) { return cd(1.0); }, cfg.start_order);
        ScaledValue part = converge_by_doubling(
            [&](int order) { return single_integral(line, log_f, [](cd) { return cd(1.0); }, order); },
            cfg.start_order, cfg.max_order, 1e-12, nullptr, l1.log_scale + std::log(std::abs(l1.value)));
        part.value *= std::exp(cd(0.0, log_coef.imag()));
        part.log_scale += log_coef.real();
        total += part;
    }
    return total * (cd(-1.0 / (4.0 * kPi * kPi * sc * sc)) * 8.0 * kPi * kI);
}

cd conjugate_kernel(cd kval, double u, double v, double b, double s_scale) {
    return kval * std::exp(2.0 * b * (std::sqrt(v) - std::sqrt(u)) / s_scale);
}

ScaledValue conjugate_kernel(const ScaledValue& kval, double u, double v, double b, double s_scale) {
    return {kval.value, kval.log_scale + 2.0 * b * (std::sqrt(v) - std::sqrt(u)) / s_scale};
}

cd decomposition_theta(cd w, double b, double u, double v, double s_scale) {
    const cd x = 2.0 * (w - b) * (std::sqrt(u) - std::sqrt(v));
    const cd r = x / s_scale;
    if (std::abs(r) < 1e-6) return -(1.0 + r / 2.0 + r * r / 6.0) / s_scale;
    return -expm1c(r) / x;
}

cd decomposition_g(const Exponent& f, double b, cd w, cd z) { return (w - b) * f.divided_difference(w, z) + f.d1(z); }

KernelDecomposition eval_kernel_decomposed(const Spectrum& s, double u, double v, const SaddleConfig& cfg,
                                           const KernelContours& c) {
    check_args(u, v);
    const std::vector<double>& y = s.eigs;
    const double sc = cfg.s();
    const double b = c.b;
    const int nu = cfg.nu;
    const double su = std::sqrt(u), sv = std::sqrt(v);
    // Exponent without the order term; (w/z)^nu is carried separately.
    const Exponent f{&y, u, sc, 0, 2.0 * b * su};
    const double quarter = std::pow(u * v, 0.25);
    const cd c0 = -1.0 / (8.0 * kPi * kPi * quarter);

    auto g1 = [&](cd w, cd z) { return nu * b * sc / (w * z) + sc * b * (w - z) / (2.0 * w * z * (w + z)); };

    SeparableIntegrand main;
    main.log_a = [&](cd w) { return f.value(w) / sc + static_cast<double>(nu) * std::log(w); };
    main.log_b = [&](cd z) { return -f.value(z) / sc - static_cast<double>(nu) * std::log(z); };
    main.pair = [&](cd w, cd z) {
        return (w + z) / (std::sqrt(w) * std::sqrt(z)) * (decomposition_g(f, b, w, z) + g1(w, z)) *
               decomposition_theta(w, b, u, v, sc);
    };

    auto endpoint = [&](cd x, int order) {
        const cd fx = f.value(x);
        auto log_f = [&](cd w) {
            return (f.value(w) - fx) / sc + static_cast<double>(nu) * (std::log(w) - std::log(x));
        };
        auto factor = [&](cd w) {
            return (w + x) / (std::sqrt(w) * std::sqrt(x)) * decomposition_theta(w, b, u, v, sc) / (w - x);
        };
        return single_integral(c.upsilon, log_f, factor, order);
    };

    auto k1_eval = [&](int order) {
        ScaledValue t = double_integral(c.upsilon, c.gamma_1, main, order) * (c0 / sc);
        t += endpoint(c.x1_minus, order) * (c0 * (c.x1_minus - b));
        t += endpoint(c.x1_plus, order) * (-c0 * (c.x1_plus - b));
        return t;
    };

    // The un-rewritten forms: sign selects e^{+2z sqrt(u)/S} (first part) or
    // e^{-2z sqrt(u)/S} with the extra phase (second part).
    auto split_eval = [&](double sign, cd phase, int order) {
        SeparableIntegrand g;
        g.log_a = [&](cd w) {
            return w * w / sc - 2.0 * w * sv / sc + log_product(y, w) + static_cast<double>(nu) * std::log(w);
        };
        g.log_b = [&, sign](cd z) {
            return -z * z / sc + sign * 2.0 * z * su / sc - log_product(y, z) - static_cast<double>(nu) * std::log(z);
        };
        g.pair = [&](cd w, cd z) { return (w + z) / ((w - z) * std::sqrt(w) * std::sqrt(z) * quarter); };
        ScaledValue t = double_integral(c.upsilon, c.gamma_1, g, order);
        auto log_res = [&, sign](cd z) { return -2.0 * z * sv / sc + sign * 2.0 * z * su / sc; };
        t += single_integral(c.crossing, log_res, [&](cd z) { return 2.0 * z / (z * quarter); }, order) *
             (2.0 * kPi * kI);
        const double pre = 2.0 * b * (sv - su) / sc;
        t.log_scale += pre;
        return t * (phase * (-1.0 / (8.0 * kPi * kPi * sc)));
    };

    KernelDecomposition d;
    d.x1_minus = c.x1_minus;
    d.x1_plus = c.x1_plus;
    d.k1 = converge_by_doubling(k1_eval, cfg.start_order, cfg.max_order, cfg.rel_tol).full();
    d.k1_direct = converge_by_doubling([&](int o) { return split_eval(1.0, 1.0, o); }, cfg.start_order,
                                       cfg.max_order, cfg.rel_tol)
                      .full();
    const cd phase = std::exp(cd(0.0, kPi * (nu + 0.5)));
    // The second part is exponentially small; accept it once it stops moving
    // in absolute terms relative to the first.
    const ScaledValue k2a = split_eval(-1.0, phase, cfg.start_order);
    const ScaledValue k2b = split_eval(-1.0, phase, 2 * cfg.start_order);
    d.k2 = k2b.full();
    if (std::abs(k2a.full() - k2b.full()) > cfg.rel_tol * std::max(std::abs(d.k2), std::abs(d.k1))) {
        d.k2 = converge_by_doubling([&](int o) { return split_eval(-1.0, phase, o); }, cfg.start_order,
                                    cfg.max_order, cfg.rel_tol)
                   .full();
    }
    return d;
}

double sine_kernel(double x, double y) {
    const double d = x - y;
    if (d == 0.0) return 1.0;
    return std::sin(kPi * d) / (kPi * d);
}

std::vector<SineLimitRow> sine_limit_check(const Spectrum& s, const SaddleConfig& cfg,
                                           const std::vector<double>& tau_grid) {
    const KernelContours c = build_contours(s, cfg);
    const double rho = mp_density(MpParams{cfg.gamma, 0.25}, cfg.u_star);
    const double nrho = cfg.n * rho;
    const double b = std::isnan(cfg.b) ? c.b : cfg.b;
    std::vector<SineLimitRow> rows;
    for (double tau : tau_grid) {
        SineLimitRow r;
        r.tau = tau;
        r.v = cfg.u_star + tau / nrho;
        const ScaledValue raw = eval_kernel_raw(s, cfg.u_star, r.v, cfg, c);
        r.kb = conjugate_kernel(raw, cfg.u_star, r.v, b, cfg.s()).full();
        r.rescaled = r.kb / nrho;
        r.target = sine_kernel(tau, 0.0);
        r.relative = std::abs(r.target) > 1e-12;
        r.error = std::abs(r.rescaled - r.target) / (r.relative ? std::abs(r.target) : 1.0);
        rows.push_back(r);
    }
    return rows;
}

// ---- brute force -------------------------------------------------------------------

double BruteForce::phi(double yi, double x) const {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return nu == 0 ? std::exp(-yi / s) / s : 0.0;
    const double arg = 2.0 * std::sqrt(yi * x) / s;
    const double log_i = bessel_i(nu, cd(arg, 0.0)).log().real();
    return std::exp(-(yi + x) / s + log_i + 0.5 * nu * std::log(x / yi)) / s;
}

double BruteForce::density(const std::vector<double>& x) const {
    if (x.size() != y.size()) throw ConfigError("brute force: dimension mismatch");
    if (y.size() == 1) return phi(y[0], x[0]);
    if (y.size() == 2) {
        const double det = phi(y[0], x[0]) * phi(y[1], x[1]) - phi(y[0], x[1]) * phi(y[1], x[0]);
        return (x[1] - x[0]) / (y[1] - y[0]) * det;
    }
    throw ConfigError("brute force: only N <= 2 is supported");
}

double BruteForce::upper_limit() const {
    const double ymax = *std::max_element(y.begin(), y.end());
    const double r = std::sqrt(ymax) + 10.0 * std::sqrt(s);
    return r * r + 20.0 * s + 2.0 * nu * s;
}

double BruteForce::r1(double x) const {
    if (y.size() == 1) return phi(y[0], x);
    return integrate([&](double l) { return density({x, l}); }, 0.0, upper_limit(), 1e-10, y);
}

double BruteForce::r2(double x1, double x2) const {
    if (y.size() < 2) return 0.0;
    return density({x1, x2});
}

double BruteForce::chamber_mass() const {
    const double top = upper_limit();
    double total = integrate([&](double x) { return r1(x); }, 0.0, top, 1e-10, y);
    // r1 integrates to N; the ordered chamber carries 1/N! of the orthant mass
    // of the density, which for N = 2 is half the integral of r1.
    if (y.size() == 2) total *= 0.5;
    return total;
}

double kernel_trace(const Spectrum& s, const SaddleConfig& cfg, int panels, int order) {
    BruteForce bf{s.eigs, cfg.s(), cfg.nu};
    const double top = bf.upper_limit();
    const QuadratureRule& rule = gauss_legendre(order);
    double total = 0.0;
    const double h = top / panels;
    for (int k = 0; k < panels; ++k) {
        for (int i = 0; i < order; ++i) {
            const double x = h * (k + 0.5 * (rule.nodes[i] + 1.0));
            total += 0.5 * h * rule.weights[i] * eval_kernel_residue(s, x, x, cfg).full().real();
        }
    }
    return total;
}

}  // namespace rmtlab
