#include "rmtlab/specfun.hpp"

#include <cmath>
#include <limits>

namespace rmtlab {

const char* regime_name(BesselRegime r) {
    switch (r) {
        case BesselRegime::Series: return "series";
        case BesselRegime::ContinuedFraction: return "continued-fraction";
        case BesselRegime::BoundedOrderAsymptotic: return "bounded-order-asymptotic";
        case BesselRegime::UniformLargeOrder: return "uniform-large-order";
    }
    return "?";
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

BesselEval make_eval(cd value, double scale, double preferred, BesselRegime regime) {
    // value * e^scale re-expressed against the preferred scale.
    BesselEval e;
    e.regime = regime;
    const double mag = std::abs(value);
    if (mag == 0.0 || !std::isfinite(mag)) {
        if (!std::isfinite(mag)) throw NumericError("bessel: non-finite intermediate");
        e.value = 0.0;
        e.log_scale = preferred;
        return e;
    }
    const double log_mag = std::log(mag) + scale;
    const double shift = scale - preferred;
    if (std::abs(log_mag - preferred) <= std::log(1e4)) {
        e.value = value * std::exp(shift);
        e.log_scale = preferred;
    } else {
        e.value = value / mag;
        e.log_scale = log_mag;
    }
    return e;
}

BesselEval from_log(cd log_value, double preferred, BesselRegime regime) {
    return make_eval(std::exp(cd(0.0, log_value.imag())), log_value.real(), preferred, regime);
}

// Ascending series for I_nu with running rescaling so that large arguments
// do not overflow. Returns the sum and its log scale separately.
BesselEval i_series(int nu, cd z) {
    if (z == cd(0.0)) return make_eval(nu == 0 ? 1.0 : 0.0, 0.0, 0.0, BesselRegime::Series);
    const cd q = 0.25 * z * z;
    cd term = 1.0, sum = 1.0;
    double scale = 0.0;
    double max_term = 1.0;
    const int kmin = static_cast<int>(std::abs(z)) + 2;
    for (int k = 1; k < 100000; ++k) {
        term *= q / (static_cast<double>(k) * (nu + k));
        sum += term;
        const double at = std::abs(term);
        max_term = std::max(max_term, at);
        if (at > 1e150) {
            term *= 1e-150;
            sum *= 1e-150;
            max_term *= 1e-150;
            scale += 150.0 * std::log(10.0);
        }
        if (k > kmin && at < 1e-17 * std::abs(sum)) break;
    }
    // (z/2)^nu / nu!
    const cd log_pre = static_cast<double>(nu) * std::log(0.5 * z) - std::lgamma(nu + 1.0);
    const cd log_value = std::log(sum) + log_pre + scale;
    return from_log(log_value, std::abs(z.real()), BesselRegime::Series);
}

// Sum_k c_k a_k(nu) / z^k with a_k = prod (4nu^2 - (2j-1)^2) / (k! 8^k),
// truncated at the smallest term. c_k = (-1)^k when alternate is set.
cd hankel_sum(int nu, cd z, bool alternate) {
    const double mu = 4.0 * nu * nu;
    cd term = 1.0, sum = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * z);
        if (alternate) term = -term;
        const double at = std::abs(term);
        if (at > last) break;
        sum += term;
        last = at;
        if (at < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

BesselEval i_hankel(int nu, cd z) {
    if (std::abs(z) < 8.0 + 0.5 * nu * nu) throw NumericError("bessel_i: argument too small for the asymptotic form");
    // e^z term plus the recessive e^{-z} term with the sector-dependent phase.
    const double sign = z.imag() >= 0.0 ? 1.0 : -1.0;
    const cd pre = 1.0 / std::sqrt(2.0 * kPi * z);
    const cd dom = std::exp(cd(0.0, z.imag())) * pre * hankel_sum(nu, z, true);
    const cd rec = std::exp(-2.0 * z.real()) * std::exp(cd(0.0, -z.imag())) *
                   std::exp(cd(0.0, sign * (nu + 0.5) * kPi)) * pre * hankel_sum(nu, z, false);
    return make_eval(dom + rec, z.real(), std::abs(z.real()), BesselRegime::BoundedOrderAsymptotic);
}

BesselEval k_hankel(int nu, cd z) {
    if (std::abs(z) < 8.0 + 0.5 * nu * nu) throw NumericError("bessel_k: argument too small for the asymptotic form");
    const cd v = std::sqrt(kPi / (2.0 * z)) * std::exp(cd(0.0, -z.imag())) * hankel_sum(nu, z, false);
    return make_eval(v, -z.real(), -z.real(), BesselRegime::BoundedOrderAsymptotic);
}

// K_0 and K_1 scaled by e^{z} from the logarithmic series (small |z|).
void k01_series(cd z, cd& k0, cd& k1) {
    const cd q = 0.25 * z * z;
    const cd lg = std::log(0.5 * z);
    cd t0 = 1.0, t1 = 1.0;  // q^k/(k!)^2 and q^k/(k!(k+1)!)
    double psi_k1 = -kEulerGamma;  // psi(k+1)
    cd i0 = 1.0, i1 = 1.0, s0 = psi_k1, s1 = psi_k1 + (1.0 - kEulerGamma);
    for (int k = 1; k < 500; ++k) {
        t0 *= q / (static_cast<double>(k) * k);
        t1 *= q / (static_cast<double>(k) * (k + 1));
        psi_k1 += 1.0 / k;
        const double psi_k2 = psi_k1 + 1.0 / (k + 1);
        i0 += t0;
        i1 += t1;
        s0 += psi_k1 * t0;
        s1 += (psi_k1 + psi_k2) * t1;
        if (std::abs(t0) < 1e-18 * std::abs(i0) && std::abs(t1) < 1e-18 * std::abs(i1)) break;
    }
    const cd I1 = 0.5 * z * i1;
    const cd K0 = -lg * i0 + s0;
    const cd K1 = 1.0 / z + lg * I1 - 0.25 * z * s1;
    const cd ez = std::exp(z);
    k0 = K0 * ez;
    k1 = K1 * ez;
}

// Steed's continued fraction (Temme's CF2) for K_0 and K_1 scaled by e^{z}.
void k01_continued_fraction(cd z, cd& k0, cd& k1) {
    cd b = 2.0 * (1.0 + z);
    cd d = 1.0 / b;
    cd h = d, delh = d;
    cd q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    cd q = a1, c = a1;
    double a = -a1;
    cd s = 1.0 + q * delh;
    bool converged = false;
    for (int i = 1; i < 100000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const cd qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const cd dels = q * delh;
        s += dels;
        if (std::abs(dels) < 1e-17 * std::abs(s)) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NumericError("bessel_k: continued fraction did not converge");
    h = a1 * h;
    k0 = std::sqrt(kPi / (2.0 * z)) / s;
    k1 = k0 * (z + 0.5 - h) / z;
}

// Upward recurrence K_{n+1} = K_{n-1} + (2n/z) K_n carried as ratios.
BesselEval k_from_pair(int nu, cd z, cd k0, cd k1, BesselRegime regime) {
    if (nu == 0) return make_eval(k0, -z.real(), -z.real(), regime);
    cd log_k = std::log(k1);
    cd ratio_prev = k1 / k0;  // K_1 / K_0
    for (int n = 1; n < nu; ++n) {
        const cd r = 1.0 / ratio_prev + 2.0 * n / z;  // K_{n+1} / K_n
        log_k += std::log(r);
        ratio_prev = r;
    }
    return from_log(log_k - z.real(), -z.real(), regime);
}

BesselEval k_small(int nu, cd z, BesselRegime regime) {
    cd k0, k1;
    if (regime == BesselRegime::Series) k01_series(z, k0, k1);
    else k01_continued_fraction(z, k0, k1);
    // Strip the e^{i Im z} phase so the scale is purely real.
    const cd phase = std::exp(cd(0.0, -z.imag()));
    return k_from_pair(nu, z, k0 * phase, k1 * phase, regime);
}

cd debye_sum(const cd& t, const cd& nu_inv, int terms, bool alternate) {
    const cd t2 = t * t;
    const cd u1 = t * (3.0 - 5.0 * t2) / 24.0;
    const cd u2 = t2 * (81.0 - 462.0 * t2 + 385.0 * t2 * t2) / 1152.0;
    cd s = 1.0;
    if (terms >= 1) s += (alternate ? -1.0 : 1.0) * u1 * nu_inv;
    if (terms >= 2) s += u2 * nu_inv * nu_inv;
    return s;
}

}  // namespace

UniformPair bessel_uniform_large_order(int nu, cd x, int terms) {
    if (nu < 10) throw NumericError("bessel_uniform_large_order: requires nu >= 10");
    if (terms < 0 || terms > 2) throw NumericError("bessel_uniform_large_order: terms must be 0, 1 or 2");
    if (x == cd(0.0) || std::abs(std::arg(x)) > 0.5 * kPi - 1e-3) {
        throw NumericError("bessel_uniform_large_order: argument outside |arg x| < pi/2");
    }
    const cd root = std::sqrt(1.0 + x * x);
    const cd t = 1.0 / root;
    const cd eta = root + std::log(x / (1.0 + root));
    const double n = nu;
    const cd quarter = 0.25 * std::log(1.0 + x * x);
    const cd log_i = n * eta - 0.5 * std::log(2.0 * kPi * n) - quarter + std::log(debye_sum(t, 1.0 / n, terms, false));
    const cd log_k = -n * eta + 0.5 * std::log(kPi / (2.0 * n)) - quarter + std::log(debye_sum(t, 1.0 / n, terms, true));
    const cd z = n * x;
    return {from_log(log_i, std::abs(z.real()), BesselRegime::UniformLargeOrder),
            from_log(log_k, -z.real(), BesselRegime::UniformLargeOrder)};
}

BesselEval bessel_i_with(int nu, cd z, BesselRegime regime) {
    if (nu < 0) throw NumericError("bessel_i: negative order");
    // I_nu(-z) = (-1)^nu I_nu(z) for integer order.
    if (z.real() < 0.0) {
        BesselEval e = bessel_i_with(nu, -z, regime);
        if (nu % 2) e.value = -e.value;
        return e;
    }
    switch (regime) {
        case BesselRegime::Series: return i_series(nu, z);
        case BesselRegime::BoundedOrderAsymptotic: return i_hankel(nu, z);
        case BesselRegime::UniformLargeOrder: return bessel_uniform_large_order(nu, z / static_cast<double>(nu)).i;
        case BesselRegime::ContinuedFraction: break;
    }
    throw NumericError("bessel_i: regime not available");
}

BesselEval bessel_i(int nu, cd z) {
    const double az = std::abs(z);
    if (az > 12.0 && az >= 8.0 + 0.5 * nu * nu) return bessel_i_with(nu, z, BesselRegime::BoundedOrderAsymptotic);
    if (nu >= 10 && az > nu * nu / 3.0 && std::abs(z.real()) > 1e-3 * az) {
        return bessel_i_with(nu, z, BesselRegime::UniformLargeOrder);
    }
    return bessel_i_with(nu, z, BesselRegime::Series);
}

BesselEval bessel_k_with(int nu, cd z, BesselRegime regime) {
    if (nu < 0) throw NumericError("bessel_k: negative order");
    if (z == cd(0.0)) throw NumericError("bessel_k: K is singular at 0");
    if (z.imag() == 0.0 && z.real() < 0.0) throw NumericError("bessel_k: argument on the branch cut");
    switch (regime) {
        case BesselRegime::Series:
        case BesselRegime::ContinuedFraction: return k_small(nu, z, regime);
        case BesselRegime::BoundedOrderAsymptotic: return k_hankel(nu, z);
        case BesselRegime::UniformLargeOrder: return bessel_uniform_large_order(nu, z / static_cast<double>(nu)).k;
    }
    throw NumericError("bessel_k: regime not available");
}

BesselEval bessel_k(int nu, cd z) {
    const double az = std::abs(z);
    // Orders above 1 come from upward recurrence, which is stable for K, so
    // the Debye form is only used on request.
    if (az <= 2.0) return bessel_k_with(nu, z, BesselRegime::Series);
    if (az > std::max(30.0, 8.0 + 0.5 * nu * nu)) return bessel_k_with(nu, z, BesselRegime::BoundedOrderAsymptotic);
    return bessel_k_with(nu, z, BesselRegime::ContinuedFraction);
}

}  // namespace rmtlab
