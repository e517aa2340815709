#pragma once

#include <array>
#include <cmath>

namespace rmtlab {

// Truncated Taylor expansion f(x0 + h) = sum_k c[k] h^k, k <= 4. Arithmetic on
// jets propagates exact derivatives through smooth expressions.
struct Jet {
    static constexpr int kOrder = 4;
    std::array<double, kOrder + 1> c{};

    Jet() = default;
    explicit Jet(double value) { c[0] = value; }
    static Jet variable(double x0) {
        Jet j(x0);
        j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }
    // k-th derivative at the expansion point.
    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }
};

inline Jet operator+(Jet a, const Jet& b) {
    for (int k = 0; k <= Jet::kOrder; ++k) a.c[k] += b.c[k];
    return a;
}
inline Jet operator-(Jet a, const Jet& b) {
    for (int k = 0; k <= Jet::kOrder; ++k) a.c[k] -= b.c[k];
    return a;
}
inline Jet operator-(Jet a) {
    for (double& v : a.c) v = -v;
    return a;
}
inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= Jet::kOrder; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
        r.c[k] = s;
    }
    return r;
}
inline Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= Jet::kOrder; ++k) {
        double s = a.c[k];
        for (int j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
        r.c[k] = s / b.c[0];
    }
    return r;
}
inline Jet operator+(Jet a, double s) { a.c[0] += s; return a; }
inline Jet operator+(double s, Jet a) { a.c[0] += s; return a; }
inline Jet operator-(Jet a, double s) { a.c[0] -= s; return a; }
inline Jet operator-(double s, const Jet& a) { return Jet(s) - a; }
inline Jet operator*(Jet a, double s) { for (double& v : a.c) v *= s; return a; }
inline Jet operator*(double s, Jet a) { return a * s; }
inline Jet operator/(Jet a, double s) { for (double& v : a.c) v /= s; return a; }
inline Jet operator/(double s, const Jet& a) { return Jet(s) / a; }

inline Jet exp(const Jet& f) {
    Jet g;
    g.c[0] = std::exp(f.c[0]);
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * f.c[j] * g.c[k - j];
        g.c[k] = s / k;
    }
    return g;
}

inline Jet log(const Jet& f) {
    Jet g;
    g.c[0] = std::log(f.c[0]);
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double s = 0.0;
        for (int j = 1; j < k; ++j) s += j * g.c[j] * f.c[k - j];
        g.c[k] = (f.c[k] - s / k) / f.c[0];
    }
    return g;
}

inline Jet sqrt(const Jet& f) {
    Jet g;
    g.c[0] = std::sqrt(f.c[0]);
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double s = 0.0;
        for (int j = 1; j < k; ++j) s += g.c[j] * g.c[k - j];
        g.c[k] = (f.c[k] - s) / (2.0 * g.c[0]);
    }
    return g;
}

inline void sincos(const Jet& f, Jet& s, Jet& co) {
    s = Jet();
    co = Jet();
    s.c[0] = std::sin(f.c[0]);
    co.c[0] = std::cos(f.c[0]);
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * f.c[j] * co.c[k - j];
            cc -= j * f.c[j] * s.c[k - j];
        }
        s.c[k] = ss / k;
        co.c[k] = cc / k;
    }
}
inline Jet sin(const Jet& f) { Jet s, c; sincos(f, s, c); return s; }
inline Jet cos(const Jet& f) { Jet s, c; sincos(f, s, c); return c; }

inline Jet abs(const Jet& f) { return f.c[0] < 0.0 ? -f : f; }

inline Jet ipow(const Jet& f, int n) {
    if (n < 0) return 1.0 / ipow(f, -n);
    Jet r(1.0), base = f;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

}  // namespace rmtlab
