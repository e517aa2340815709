#pragma once

#include "rmtlab/common.hpp"

namespace rmtlab {

enum class BesselRegime {
    Series,                // ascending power series (K: logarithmic series for orders 0, 1)
    ContinuedFraction,     // Steed/Temme continued fraction for K_0, K_1
    BoundedOrderAsymptotic,  // large-argument Hankel expansion
    UniformLargeOrder,     // Debye expansion in nu with two correction terms
};

const char* regime_name(BesselRegime r);

// value * exp(log_scale). For I the default scale is |Re z|, for K it is
// -Re z; when that leaves |value| outside [1e-4, 1e4] the scale is reset to
// log|result| so that value has unit modulus.
struct BesselEval {
    cd value;
    double log_scale = 0.0;
    BesselRegime regime = BesselRegime::Series;

    cd full() const { return value * std::exp(log_scale); }
    // Complex logarithm of the result (principal branch of log(value)).
    cd log() const { return std::log(value) + log_scale; }
};

BesselEval bessel_i(int nu, cd z);
BesselEval bessel_k(int nu, cd z);

// Same quantities with the evaluation route fixed; used for regime-overlap
// checks. Throws NumericError if the route does not apply to (nu, z).
BesselEval bessel_i_with(int nu, cd z, BesselRegime regime);
BesselEval bessel_k_with(int nu, cd z, BesselRegime regime);

struct UniformPair {
    BesselEval i;  // I_nu(nu x)
    BesselEval k;  // K_nu(nu x)
};

// Debye expansion of I_nu(nu x) and K_nu(nu x) keeping `terms` (0..2)
// corrections. Requires nu >= 10 and |arg x| <= pi/2 - 1e-3.
UniformPair bessel_uniform_large_order(int nu, cd x, int terms = 2);

}  // namespace rmtlab
