#include "rmtlab/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rmtlab/mp.hpp"
#include "rmtlab/quadrature.hpp"

namespace rmtlab {

Panel Panel::segment(cd from, cd to, Corner c) {
    Panel p;
    p.map = [from, to](double t, cd& z, cd& dz) {
        z = from + (to - from) * t;
        dz = to - from;
    };
    p.corner = c;
    return p;
}

void ContourPath::add_segment(cd from, cd to, double max_len) {
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(to - from) / max_len)));
    for (int i = 0; i < n; ++i) {
        panels.push_back(Panel::segment(from + (to - from) * (static_cast<double>(i) / n),
                                        from + (to - from) * (static_cast<double>(i + 1) / n)));
    }
}

void ContourPath::append(const ContourPath& other) {
    panels.insert(panels.end(), other.panels.begin(), other.panels.end());
}

void ContourPath::nodes(int order, std::vector<cd>& z, std::vector<cd>& dz) const {
    const QuadratureRule& rule = gauss_legendre(order);
    z.clear();
    dz.clear();
    z.reserve(panels.size() * order);
    dz.reserve(panels.size() * order);
    for (const Panel& p : panels) {
        for (int i = 0; i < order; ++i) {
            cd zz, dd;
            p.map(0.5 * (rule.nodes[i] + 1.0), zz, dd);
            z.push_back(zz);
            dz.push_back(0.5 * rule.weights[i] * dd);
        }
    }
}

ContourPath ContourPath::with_mirror_image() const {
    ContourPath out = *this;
    for (const Panel& p : panels) {
        Panel q;
        auto m = p.map;
        q.map = [m](double t, cd& z, cd& dz) {
            m(t, z, dz);
            z = -z;
            dz = -dz;
        };
        out.panels.push_back(q);
    }
    out.closed = true;
    out.label = label + "+mirror";
    return out;
}

double ContourPath::winding_number(cd p, int order) const {
    std::vector<cd> z, dz;
    nodes(order, z, dz);
    cd s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += dz[i] / (z[i] - p);
    return (s / (2.0 * kPi * kI)).real();
}

ScaledValue& ScaledValue::operator+=(const ScaledValue& o) {
    if (o.value == cd(0.0)) return *this;
    if (value == cd(0.0)) {
        *this = o;
        return *this;
    }
    if (o.log_scale > log_scale) {
        value = value * std::exp(log_scale - o.log_scale) + o.value;
        log_scale = o.log_scale;
    } else {
        value += o.value * std::exp(o.log_scale - log_scale);
    }
    return *this;
}

cd expm1c(cd x) {
    const double a = x.real(), b = x.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

namespace {

bool is_start(Corner c) { return c == Corner::StartPlus || c == Corner::StartMinus; }
bool is_plus(Corner c) { return c == Corner::StartPlus || c == Corner::EndPlus; }

double max_real(const std::vector<cd>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (const cd& x : v) m = std::max(m, x.real());
    return m;
}

// Panel evaluated from its crossing-point end.
void oriented(const Panel& p, double t, cd& z, cd& dz) { p.map(is_start(p.corner) ? t : 1.0 - t, z, dz); }

}  // namespace

ScaledValue double_integral(const ContourPath& wpath, const ContourPath& zpath, const SeparableIntegrand& f,
                            int order) {
    std::vector<cd> w, dw, z, dz;
    wpath.nodes(order, w, dw);
    zpath.nodes(order, z, dz);
    std::vector<cd> la(w.size()), lb(z.size());
    for (std::size_t i = 0; i < w.size(); ++i) la[i] = f.log_a(w[i]);
    for (std::size_t j = 0; j < z.size(); ++j) lb[j] = f.log_b(z[j]);
    const double ma = max_real(la), mb = max_real(lb);
    std::vector<cd> a(w.size()), b(z.size());
    for (std::size_t i = 0; i < w.size(); ++i) a[i] = std::exp(la[i] - ma) * dw[i];
    for (std::size_t j = 0; j < z.size(); ++j) b[j] = std::exp(lb[j] - mb) * dz[j];

    const QuadratureRule& rule = gauss_legendre(order);
    std::vector<double> x01(order), w01(order);
    for (int i = 0; i < order; ++i) {
        x01[i] = 0.5 * (rule.nodes[i] + 1.0);
        w01[i] = 0.5 * rule.weights[i];
    }

    const std::size_t np_w = wpath.panels.size(), np_z = zpath.panels.size();
    cd total = 0.0;
    for (std::size_t pw = 0; pw < np_w; ++pw) {
        const Panel& panel_w = wpath.panels[pw];
        for (std::size_t pz = 0; pz < np_z; ++pz) {
            const Panel& panel_z = zpath.panels[pz];
            const bool corner = panel_w.corner != Corner::None && panel_z.corner != Corner::None &&
                                is_plus(panel_w.corner) == is_plus(panel_z.corner);
            cd block = 0.0;
            if (!corner) {
                for (int i = 0; i < order; ++i) {
                    const std::size_t iw = pw * order + i;
                    cd row = 0.0;
                    for (int j = 0; j < order; ++j) {
                        const std::size_t jz = pz * order + j;
                        row += b[jz] * f.pair(w[iw], z[jz]);
                    }
                    block += a[iw] * row;
                }
            } else {
                // Both panels start at the crossing point after reorientation;
                // split the unit square along its diagonal.
                for (int tri = 0; tri < 2; ++tri) {
                    for (int i = 0; i < order; ++i) {
                        const double sigma = x01[i];
                        for (int j = 0; j < order; ++j) {
                            const double tw = tri == 0 ? sigma : sigma * x01[j];
                            const double tz = tri == 0 ? sigma * x01[j] : sigma;
                            cd ww, dww, zz, dzz;
                            oriented(panel_w, tw, ww, dww);
                            oriented(panel_z, tz, zz, dzz);
                            const cd val = std::exp(f.log_a(ww) - ma + f.log_b(zz) - mb) * f.pair(ww, zz);
                            block += val * dww * dzz * (sigma * w01[i] * w01[j]);
                        }
                    }
                }
            }
            total += block;
        }
    }
    return {total, ma + mb};
}

ScaledValue single_integral(const ContourPath& path, const std::function<cd(cd)>& log_f,
                            const std::function<cd(cd)>& factor, int order) {
    std::vector<cd> z, dz;
    path.nodes(order, z, dz);
    std::vector<cd> lf(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) lf[i] = log_f(z[i]);
    const double m = max_real(lf);
    cd s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += std::exp(lf[i] - m) * factor(z[i]) * dz[i];
    return {s, m};
}

ScaledValue converge_by_doubling(const std::function<ScaledValue(int)>& eval, int start_order, int max_order,
                                 double rel_tol, int* used_order, double log_floor) {
    ScaledValue prev = eval(start_order);
    for (int order = 2 * start_order; order <= max_order; order *= 2) {
        const ScaledValue cur = eval(order);
        // Compare on a common scale.
        const double common = std::max({prev.log_scale, cur.log_scale, log_floor});
        const cd a = prev.value * std::exp(prev.log_scale - common);
        const cd b = cur.value * std::exp(cur.log_scale - common);
        if (std::abs(a - b) <= rel_tol * std::max(std::abs(b), std::exp(log_floor - common))) {
            if (used_order) *used_order = order;
            return cur;
        }
        prev = cur;
    }
    char buf[160];
    const cd last = prev.full();
    std::snprintf(buf, sizeof buf, "quadrature did not converge by order %d; last estimate %.6e%+.6ei", max_order,
                  last.real(), last.imag());
    throw NumericError(buf);
}

// ---- exponent -----------------------------------------------------------------

cd Exponent::value(cd z) const {
    cd s = 0.0;
    for (double yi : *y) s += std::log(z * z - yi);
    cd v = z * z - 2.0 * std::sqrt(u) * z + this->s * s + shift;
    if (nu) v += this->s * static_cast<double>(nu) * std::log(z);
    return v;
}

cd Exponent::d1(cd z) const {
    cd s = 0.0;
    for (double yi : *y) s += z / (z * z - yi);
    cd v = 2.0 * z - 2.0 * std::sqrt(u) + 2.0 * this->s * s;
    if (nu) v += this->s * static_cast<double>(nu) / z;
    return v;
}

cd Exponent::d2(cd z) const {
    cd s = 0.0;
    for (double yi : *y) {
        const cd d = z * z - yi;
        s += (z * z + yi) / (d * d);
    }
    cd v = 2.0 - 2.0 * this->s * s;
    if (nu) v -= this->s * static_cast<double>(nu) / (z * z);
    return v;
}

cd Exponent::divided_difference(cd w, cd z) const {
    cd s = 0.0;
    const cd wz = w * z, w2 = w * w, z2 = z * z;
    for (double yi : *y) s += (wz + yi) / ((w2 - yi) * (z2 - yi));
    cd v = 2.0 - 2.0 * this->s * s;
    if (nu) v -= this->s * static_cast<double>(nu) / wz;
    return v;
}

// ---- critical points ----------------------------------------------------------

namespace {

struct LimitDerivs {
    cd d1, d2;
};

LimitDerivs limit_derivatives(cd w, double u, double a2, double gamma) {
    const MpParams mp{gamma, 0.25};
    const cd zeta = w * w;
    // The transform is evaluated on the upper half-plane; w stays in the first quadrant.
    const cd m = mp_stieltjes(mp, zeta);
    const double s2 = 0.25;
    const cd dm = -(s2 * m * m + m) / (2.0 * s2 * zeta * m + zeta + s2 * (1.0 - gamma));
    LimitDerivs d;
    d.d1 = 2.0 * w - 2.0 * std::sqrt(u) - 2.0 * a2 * w * m + a2 * (gamma - 1.0) / w;
    d.d2 = 2.0 - 2.0 * a2 * m - 4.0 * a2 * zeta * dm - a2 * (gamma - 1.0) / zeta;
    return d;
}

}  // namespace

cd LimitExponent::d1(cd w, double u) const { return limit_derivatives(w, u, a2, gamma).d1; }
cd LimitExponent::d2(cd w, double u) const { return limit_derivatives(w, u, a2, gamma).d2; }

CriticalPoints critical_points_limit(double u, double a, double gamma) {
    const MpParams mp{gamma, 0.25};
    if (!(u > mp.u_minus() && u < mp.u_plus())) throw NumericError("critical_points_limit: u outside the bulk");
    const double a2 = a * a;
    cd w;
    if (gamma == 1.0) {
        w = cd((1.0 + 2.0 * a2) * std::sqrt(u), 2.0 * a2 * std::sqrt(1.0 + 4.0 * a2 - u)) / (1.0 + 4.0 * a2);
    } else {
        w = cd(std::sqrt(u), a2 * kPi * std::sqrt(u) * mp_density(mp, u));
    }
    if (a == 0.0) return {w, std::conj(w), 2.0, 0.0, CriticalPoints::Kind::Limit};
    LimitDerivs d{};
    for (int it = 0; it < 100; ++it) {
        d = limit_derivatives(w, u, a2, gamma);
        const cd step = d.d1 / d.d2;
        w -= step;
        if (w.imag() <= 0.0) throw NumericError("critical_points_limit: Newton left the upper half-plane");
        if (std::abs(step) < 1e-15 * std::abs(w)) break;
    }
    d = limit_derivatives(w, u, a2, gamma);
    if (std::abs(d.d1) > 1e-12) throw NumericError("critical_points_limit: Newton did not converge");
    return {w, std::conj(w), d.d2, std::abs(d.d1), CriticalPoints::Kind::Limit};
}

CriticalPoints critical_points_empirical(const std::vector<double>& y, double u, double a, int nu,
                                         double gamma) {
    const double n = static_cast<double>(y.size());
    const double s = a * a / n;
    const Exponent ex{&y, u, s, nu, 0.0};
    auto fixed_map = [&](cd w) {
        cd acc = 0.0;
        for (double yi : y) acc += w / (w * w - yi);
        return std::sqrt(u) - s * acc - (nu ? s * nu / (2.0 * w) : cd(0.0));
    };
    const CriticalPoints start = critical_points_limit(u, a, gamma);
    cd w = start.w_plus;
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
        const cd next = fixed_map(w);
        const double change = std::abs(next - w);
        w = next;
        if (change < 1e-13) {
            ok = true;
            break;
        }
        if (!std::isfinite(change)) break;
    }
    if (!ok || !(std::abs(w - fixed_map(w)) < 1e-12)) {
        // The map need not contract at small N; polish with Newton.
        w = start.w_plus;
        for (int it = 0; it < 100; ++it) {
            const cd step = ex.d1(w) / ex.d2(w);
            w -= step;
            if (std::abs(step) < 1e-15 * std::abs(w)) break;
        }
    }
    const double residual = std::abs(w - fixed_map(w));
    if (!(residual < 1e-12) || !std::isfinite(residual)) {
        throw NumericError("critical_points_empirical: no convergence (spectrum likely far from the limit law)");
    }
    return {w, std::conj(w), ex.d2(w), residual, CriticalPoints::Kind::Empirical};
}

}  // namespace rmtlab
