#pragma once

// Self-contained special functions: J_nu by power series for real order
// nu > -1, its smallest positive zero, the ratio J_nu/J_{nu-1} by backward
// recurrence of the continued fraction, and the semicircle moment
// generating function (2pi)^{-1} int_{-2}^{2} e^{theta x} sqrt(4-x^2) dx.

#include <cmath>
#include <limits>

#include "kraichnan/errors.hpp"

namespace kraichnan {

struct BesselEval {
    double order = 0.0;
    double argument = 0.0;
    double value = 0.0;
    int terms_used = 0;
    double truncation_error = 0.0;
};

namespace detail {

// Lanczos (g=7, n=9); relative error below 1e-13 on the positive axis.
inline double gamma_fn(double x) {
    static const double coef[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection; x is never a nonpositive integer in our uses
        return 3.14159265358979323846 /
               (std::sin(3.14159265358979323846 * x) * gamma_fn(1.0 - x));
    }
    x -= 1.0;
    double a = coef[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += coef[i] / (x + static_cast<double>(i));
    return std::sqrt(2.0 * 3.14159265358979323846) * std::pow(t, x + 0.5) *
           std::exp(-t) * a;
}

// Power series J_nu(z) = sum_m (-1)^m (z/2)^{nu+2m} / (m! Gamma(nu+m+1)).
// No argument cap here; the public entry point enforces the validated
// range, the zero finder needs slightly larger brackets.
inline BesselEval bessel_series(double nu, double z) {
    BesselEval out;
    out.order = nu;
    out.argument = z;
    if (z == 0.0) {
        out.value = (nu == 0.0) ? 1.0
                                : (nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        out.terms_used = 1;
        return out;
    }
    const long double q = static_cast<long double>(z) * z / 4.0L;
    long double term = std::pow(static_cast<long double>(z) / 2.0L, static_cast<long double>(nu)) /
                       static_cast<long double>(gamma_fn(nu + 1.0));
    long double sum = 0.0L, carry = 0.0L;
    int m = 0;
    for (; m < 400; ++m) {
        const long double y = term - carry;
        const long double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        term *= -q / ((m + 1.0L) * (static_cast<long double>(nu) + m + 1.0L));
        const long double mag = term < 0 ? -term : term;
        if (mag < 1e-19L * std::max(1.0L, sum < 0 ? -sum : sum) &&
            static_cast<double>(m) > z / 2.0)
            break;
    }
    out.value = static_cast<double>(sum);
    out.terms_used = m + 1;
    out.truncation_error = 2.0 * std::abs(static_cast<double>(term));
    return out;
}

} // namespace detail

inline BesselEval bessel_j(double nu, double z) {
    if (!(nu > -1.0)) throw domain_error("bessel_j: order must satisfy nu > -1");
    if (!(z >= 0.0 && z <= 20.0))
        throw domain_error("bessel_j: argument outside validated range [0, 20]");
    return detail::bessel_series(nu, z);
}

// nu + 1.85575 nu^{1/3}: leading behaviour of the smallest zero for large order.
inline double zero_asymptotic(double nu) {
    if (!(nu > 0.0)) throw domain_error("zero_asymptotic: nu > 0 required");
    return nu + 1.85575 * std::cbrt(nu);
}

// Smallest z > 0 with J_nu(z) = 0, by bisection. The bracket end
// nu + 1.85575 max(nu,1)^{1/3} + 3 sits between the first and second zero
// throughout the supported order range; below order zero the zeros drop
// toward 0 monotonically, so (1e-8, j_0] brackets them.
inline double smallest_zero(double nu) {
    if (!(nu > -1.0)) throw domain_error("smallest_zero: nu > -1 required");
    double lo, hi;
    if (nu < 0.0) {
        static const double j0 = smallest_zero(0.0);
        lo = 1e-8;
        hi = j0;
    } else {
        lo = std::max(1e-8, nu);
        hi = nu + 1.85575 * std::cbrt(std::max(nu, 1.0)) + 3.0;
    }
    double flo = detail::bessel_series(nu, lo).value;
    double fhi = detail::bessel_series(nu, hi).value;
    if (!(flo > 0.0) || !(fhi < 0.0))
        throw numeric_error("smallest_zero: bracket [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "] failed for nu=" + std::to_string(nu));
    for (int it = 0; it < 200 && hi - lo > 1e-11; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (detail::bessel_series(nu, mid).value > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// h(nu,z) = J_nu(z)/J_{nu-1}(z) via the backward recurrence
//   h(nu,z) = (z/2nu) / (1 - (z/2nu) h(nu+1,z)),   h(infinity,z) = 0,
// started 40 orders up.
inline double bessel_ratio(double nu, double z) {
    if (!(nu > 0.0)) throw domain_error("bessel_ratio: nu > 0 required");
    if (!(z > 0.0 && z < 20.0)) throw domain_error("bessel_ratio: z in (0, 20) required");
    const double denom = detail::bessel_series(nu - 1.0, z).value;
    // pole tolerance relative to the leading series term, which sets the
    // natural magnitude of J at large order
    const double lead = std::pow(z / 2.0, nu - 1.0) / detail::gamma_fn(nu);
    if (std::abs(denom) < 1e-12 * std::max(std::abs(lead), std::abs(denom)))
        throw pole_error("bessel_ratio: J_{nu-1}(z) vanishes at nu=" + std::to_string(nu) +
                         ", z=" + std::to_string(z));
    double h = 0.0;
    for (int k = 39; k >= 0; --k) {
        const double w = z / (2.0 * (nu + static_cast<double>(k)));
        h = w / (1.0 - w * h);
    }
    return h;
}

// E[e^{theta S}] for the standard semicircle law: sum_n theta^{2n}/(n!(n+1)!).
inline double semicircle_mgf(double theta) {
    const double q = theta * theta;
    double sum = 0.0, carry = 0.0, term = 1.0;
    for (int n = 0; n < 1000; ++n) {
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        term *= q / ((n + 1.0) * (n + 2.0));
        if (term < 1e-17 * std::max(1.0, sum)) break;
    }
    return sum;
}

} // namespace kraichnan
