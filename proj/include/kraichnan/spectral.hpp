#pragma once

// Laplace-domain analysis. Transforms are trapezoid on [0,T] plus a
// closed-form tail from the fitted model H(u) ~ A e^{lam u} u^p, so the
// O(e^{-(lambda-lam)T}) truncation bias cannot poison the Lyapunov
// solvers near the singularity. The exponential-kernel route goes through
// Bessel zeros instead and needs no transform at all.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "kraichnan/asymptotics.hpp"
#include "kraichnan/bessel.hpp"
#include "kraichnan/errors.hpp"
#include "kraichnan/kernel.hpp"
#include "kraichnan/volterra.hpp"

namespace kraichnan {

struct SpectralReport {
    std::string method; // bessel-zero | bessel-zero-asymptotic | vanishing-fixed-point |
                        // mixed-sqrt | algebraic-sqrt
    double lambda_c = 0.0;
    double residual = 0.0;
    double z = std::numeric_limits<double>::quiet_NaN();    // exponential kernels
    double nu_c = std::numeric_limits<double>::quiet_NaN(); // lambda_c/delta - 1
    double A = std::numeric_limits<double>::quiet_NaN();    // d/dlam (lam - (Hk)^) at lambda_c
};

struct LaplaceProfile {
    std::vector<double> lambda;
    std::vector<double> value;
    double lambda_hat = 0.0;
    double p_hat = 0.0;
    double lnA_hat = 0.0;
    double horizon = 0.0;
};

namespace detail {

// upper incomplete gamma, a > 0: series below the crossover, Lentz
// continued fraction above
inline double gamma_upper(double a, double x) {
    if (x < 0.0) throw domain_error("gamma_upper: x >= 0 required");
    if (x == 0.0) return gamma_fn(a);
    if (x < a + 1.0) {
        double term = 1.0 / a, sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= x / (a + n);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return gamma_fn(a) - sum * std::exp(-x + a * std::log(x));
    }
    double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, f = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x)) * f;
}

// int_T^inf e^{-s u} u^b du for s > 0: integrate by parts until the power
// is positive, then the incomplete-gamma identity. b is nudged off
// negative integers where the recursion pivot vanishes.
inline double exp_power_tail(double s, double b, double T) {
    int k = 0;
    while (b + k <= 0.25) ++k;
    for (int j = 1; j <= k; ++j)
        if (std::abs(b + j) < 1e-3) {
            b += 2e-3;
            break;
        }
    const double x = s * T;
    double val = gamma_upper(b + k + 1.0, x) * std::pow(s, -(b + k + 1.0));
    const double eT = std::exp(-x);
    for (int j = k; j >= 1; --j)
        val = (-std::pow(T, b + j) * eT + s * val) / (b + j);
    return val;
}

// one component of a stationary weight: amp * e^{-rate u} (1+u)^{-pw}
struct WeightComponent {
    double amp;
    double rate;
    double pw;
};

inline void weight_components(const KernelSpec& k, std::vector<WeightComponent>& out) {
    using namespace kernels;
    if (!is_stationary(k))
        throw usage_error("laplace_of: weight kernel must be stationary");
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                out.push_back({v.C, 0.0, 0.0});
            } else if constexpr (std::is_same_v<T, Exponential>) {
                out.push_back({v.c, v.delta, 0.0});
            } else if constexpr (std::is_same_v<T, MixedExponential>) {
                out.push_back({v.c2, 0.0, 0.0});
                out.push_back({v.c1, v.delta, 0.0});
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                out.push_back({v.C, 0.0, v.a});
            } else if constexpr (std::is_same_v<T, AlgebraicMixed>) {
                out.push_back({v.c2, 0.0, 0.0});
                out.push_back({v.c1, 0.0, v.a});
            } else if constexpr (std::is_same_v<T, RatioFlat>) {
                if (v.C != 0.0) out.push_back({v.C, 0.0, 0.0}); // stationary only if a==0 or C==0
                if (v.stationary_part) weight_components(*v.stationary_part, out);
            } else {
                throw usage_error("laplace_of: weight kernel must be stationary");
            }
        },
        k.variant());
}

struct TailModel {
    double lambda_hat;
    double p_hat;
    double lnA_hat;
};

inline TailModel tail_model(const AsymptoticsFit& fit) {
    return {fit.lambda_hat, fit.p_hat, fit.lnA_hat};
}

// trapezoid on [0,T] plus per-component model tail
inline double laplace_core(const StationarySolution& sol, double lambda,
                           const std::function<double(double)>& weight,
                           const std::vector<WeightComponent>& comps, const TailModel& tm) {
    const double T = sol.horizon;
    for (const auto& c : comps) {
        const double s = lambda + c.rate - tm.lambda_hat;
        const double b = tm.p_hat - c.pw;
        const bool ok = (s > 0.05) || (b < -1.1 && s > -0.1 / T);
        if (!ok)
            throw divergence_error(
                "laplace_of: lambda too close to the fitted growth rate (lambda=" +
                std::to_string(lambda) + ", lambda_hat=" + std::to_string(tm.lambda_hat) + ")");
    }
    KahanSum acc;
    const std::size_t n = sol.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = sol.time_at(i);
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        double f = std::exp((sol.tilt - lambda) * t) * sol.g_at(i);
        if (weight) f *= weight(t);
        acc.add(w * f);
    }
    double value = acc.value() * sol.step;
    const double Ahat = std::exp(tm.lnA_hat);
    for (const auto& c : comps) {
        const double s = lambda + c.rate - tm.lambda_hat;
        const double b = tm.p_hat - c.pw;
        double tail;
        if (s > 1e-9)
            tail = exp_power_tail(s, b, T);
        else
            tail = std::exp(-s * T) * std::pow(T, b + 1.0) / (-b - 1.0);
        value += c.amp * Ahat * tail;
    }
    return value;
}

template <class F>
inline double bisect_increasing(F&& f, double lo, double hi, double tol, const char* what) {
    double flo = f(lo), fhi = f(hi);
    if (!(flo < 0.0) || !(fhi > 0.0))
        throw bracket_error(std::string(what) + ": no sign change on [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "] (f=" + std::to_string(flo) + ", " +
                            std::to_string(fhi) + "); is the solution horizon sufficient?");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline double mcmahon_zero(double nu) {
    const double u = std::cbrt(nu);
    return nu + 1.8557571 * u + 1.033150 / u - 0.00397 / nu - 0.0908 / (nu * u * u) +
           0.043 / (nu * nu * u);
}

} // namespace detail

inline double laplace_of(const StationarySolution& sol, double lambda,
                         const AsymptoticsFit& fit) {
    return detail::laplace_core(sol, lambda, nullptr, {{1.0, 0.0, 0.0}},
                                detail::tail_model(fit));
}

inline double laplace_of(const StationarySolution& sol, double lambda) {
    return laplace_of(sol, lambda, fit_exponential_power(sol));
}

inline double laplace_of(const StationarySolution& sol, double lambda,
                         const KernelSpec& weight, const AsymptoticsFit& fit) {
    std::vector<detail::WeightComponent> comps;
    detail::weight_components(weight, comps);
    return detail::laplace_core(
        sol, lambda, [&](double u) { return evaluate(weight, u, 0.0); }, comps,
        detail::tail_model(fit));
}

inline double laplace_of(const StationarySolution& sol, double lambda,
                         const KernelSpec& weight) {
    return laplace_of(sol, lambda, weight, fit_exponential_power(sol));
}

inline LaplaceProfile make_laplace_profile(const StationarySolution& sol,
                                           const std::vector<double>& grid) {
    const AsymptoticsFit fit = fit_exponential_power(sol);
    LaplaceProfile prof;
    prof.lambda = grid;
    prof.lambda_hat = fit.lambda_hat;
    prof.p_hat = fit.p_hat;
    prof.lnA_hat = fit.lnA_hat;
    prof.horizon = sol.horizon;
    for (double lam : grid) prof.value.push_back(laplace_of(sol, lam, fit));
    return prof;
}

// 2 sqrt(c) - 2.34 c^{1/3} delta^{2/3}: small-delta expansion of the
// exponential-kernel Lyapunov exponent.
inline double lambda_c_asymptotic(double c, double delta) {
    if (!(c > 0.0 && delta >= 0.0))
        throw domain_error("lambda_c_asymptotic: c > 0, delta >= 0 required");
    return 2.0 * std::sqrt(c) - 2.34 * std::cbrt(c) * std::pow(delta, 2.0 / 3.0);
}

// Solves j_{lambda/delta - 1} = z, z = 2 sqrt(c)/delta. The zeros increase
// with the order, so bisection in nu is monotone. Above the validated
// Bessel range (z > 20, vanishing delta) the same equation is inverted
// through the large-order zero expansion instead; the expansion error is
// O(nu^{-7/3}), far below the O(delta) term of the closed-form asymptotics.
inline SpectralReport lambda_c_exponential(double c, double delta) {
    if (!(c > 0.0 && delta > 0.0))
        throw domain_error("lambda_c_exponential: c > 0, delta > 0 required");
    const double z = 2.0 * std::sqrt(c) / delta;
    SpectralReport rep;
    rep.z = z;
    if (z <= 20.0) {
        rep.method = "bessel-zero";
        const double nu_c = detail::bisect_increasing(
            [&](double nu) { return smallest_zero(nu) - z; }, -1.0 + 1e-9, z, 1e-12,
            "lambda_c_exponential");
        rep.nu_c = nu_c;
        rep.lambda_c = delta * (nu_c + 1.0);
        rep.residual = std::abs(smallest_zero(nu_c) - z);
    } else {
        rep.method = "bessel-zero-asymptotic";
        const double nu_c = detail::bisect_increasing(
            [&](double nu) { return detail::mcmahon_zero(nu) - z; }, 1.0, z, 1e-12,
            "lambda_c_exponential");
        rep.nu_c = nu_c;
        rep.lambda_c = delta * (nu_c + 1.0);
        rep.residual = std::abs(detail::mcmahon_zero(nu_c) - z);
    }
    return rep;
}

// Root of F(lambda) = lambda - (Hk)^(lambda) for kernels vanishing at
// infinity; F = 1/Hhat > 0 above lambda_c and the transform blows up
// below, so the bracket (0, 2 sqrt(sup k)] always straddles the root.
inline SpectralReport lambda_c_vanishing(const KernelSpec& kernel,
                                         const StationarySolution& sol) {
    if (family_name(kernel) != "exponential" && family_name(kernel) != "power_law")
        throw domain_error("lambda_c_vanishing: kernel must vanish at infinity "
                           "(exponential or power_law family)");
    const AsymptoticsFit fit = fit_exponential_power(sol);
    if (!(std::exp(-fit.lambda_hat * sol.horizon) < 1e-6))
        throw domain_error("lambda_c_vanishing: horizon too short for the fitted rate");
    std::vector<detail::WeightComponent> comps;
    detail::weight_components(kernel, comps);
    const auto tm = detail::tail_model(fit);
    auto wf = [&](double u) { return evaluate(kernel, u, 0.0); };
    auto F = [&](double lam) {
        try {
            return lam - detail::laplace_core(sol, lam, wf, comps, tm);
        } catch (const divergence_error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    SpectralReport rep;
    rep.method = "vanishing-fixed-point";
    rep.lambda_c = detail::bisect_increasing(F, 1e-6, 2.0 * std::sqrt(diagonal_sup(kernel)),
                                             1e-10, "lambda_c_vanishing");
    rep.residual = std::abs(F(rep.lambda_c));
    rep.A = (F(rep.lambda_c + 1e-4) - F(rep.lambda_c - 1e-4)) / 2e-4;
    if (!(rep.A >= 1.0 - 1e-6))
        throw numeric_error("lambda_c_vanishing: A = " + std::to_string(rep.A) +
                            " violates A >= 1");
    return rep;
}

// Root of lambda - c1 Hhat(lambda + delta) = 2 sqrt(c2) for the kernel
// c2 + c1 e^{-delta u}; bracketed by the Lyapunov rates of the two
// enclosing constant kernels.
inline SpectralReport lambda_c_mixed(double c2, double c1, double delta,
                                     const StationarySolution& sol) {
    if (!(c1 > 0.0 && c2 > 0.0 && delta > 0.0))
        throw domain_error("lambda_c_mixed: c1, c2, delta > 0 required");
    const AsymptoticsFit fit = fit_exponential_power(sol);
    auto F = [&](double lam) {
        try {
            return lam - c1 * laplace_of(sol, lam + delta, fit) - 2.0 * std::sqrt(c2);
        } catch (const divergence_error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    SpectralReport rep;
    rep.method = "mixed-sqrt";
    rep.lambda_c = detail::bisect_increasing(F, 2.0 * std::sqrt(c2),
                                             2.0 * std::sqrt(c2 + c1), 1e-10, "lambda_c_mixed");
    rep.residual = std::abs(F(rep.lambda_c));
    return rep;
}

// As lambda_c_mixed with Ghat(lambda) = (H k1)^(lambda), k1 = (1+u)^{-a}.
inline SpectralReport lambda_c_algebraic(double c2, double c1, double a,
                                         const StationarySolution& sol) {
    if (!(c1 > 0.0 && c2 > 0.0 && a >= 1.0))
        throw domain_error("lambda_c_algebraic: c1, c2 > 0 and a >= 1 required");
    const AsymptoticsFit fit = fit_exponential_power(sol);
    const auto tm = detail::tail_model(fit);
    const std::vector<detail::WeightComponent> comps{{1.0, 0.0, a}};
    auto wf = [=](double u) { return std::pow(1.0 + u, -a); };
    auto F = [&](double lam) {
        try {
            return lam - c1 * detail::laplace_core(sol, lam, wf, comps, tm) -
                   2.0 * std::sqrt(c2);
        } catch (const divergence_error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    SpectralReport rep;
    rep.method = "algebraic-sqrt";
    rep.lambda_c = detail::bisect_increasing(F, 2.0 * std::sqrt(c2),
                                             2.0 * std::sqrt(c2 + c1), 1e-10,
                                             "lambda_c_algebraic");
    rep.residual = std::abs(F(rep.lambda_c));
    return rep;
}

namespace detail {

template <class F>
inline double adaptive_simpson(F&& f, double a, double b, double fa, double fm, double fb,
                               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

template <class F>
inline double integrate_adaptive(F&& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace detail

// lim_{t->inf} e^{-lambda_c t} H(t) for k(u) = c e^{-delta u}, nu_c > 0.
// Near lambda_c the transform behaves as K/(nu - nu_c) in the order
// variable; with nu - nu_c = (lambda - lambda_c)/delta and the c = 1
// normalization this makes the time-domain constant gamma * K with
// gamma = delta/sqrt(c) and
//   K = z J_{nu_c+1}(z)^2 / (2 nu_c int_0^z J_{nu_c}(t)^2 dt/t).
inline double mittag_leffler_amplitude(double c, double delta) {
    if (!(c > 0.0 && delta > 0.0))
        throw domain_error("mittag_leffler_amplitude: c > 0, delta > 0 required");
    const double z = 2.0 * std::sqrt(c) / delta;
    if (z > 20.0) throw domain_error("mittag_leffler_amplitude: z > 20 (Bessel cap)");
    const SpectralReport rep = lambda_c_exponential(c, delta);
    const double nu = rep.nu_c;
    if (!(nu > 0.0))
        throw domain_error("mittag_leffler_amplitude: nu_c <= 0, the weight integral "
                           "int_0^z J^2 dt/t diverges at 0");
    // analytic head on [0, eps] where the integrand ~ t^{2 nu - 1}
    const double eps = std::min(0.1, 0.1 * z);
    const double lead = std::pow(eps / 2.0, 2.0 * nu) /
                        (detail::gamma_fn(nu + 1.0) * detail::gamma_fn(nu + 1.0));
    double integral =
        lead * (1.0 / (2.0 * nu) - eps * eps / (2.0 * (nu + 1.0) * (2.0 * nu + 2.0)));
    integral += detail::integrate_adaptive(
        [&](double t) {
            const double j = detail::bessel_series(nu, t).value;
            return j * j / t;
        },
        eps, z, 1e-11);
    const double jt = detail::bessel_series(nu + 1.0, z).value;
    const double gamma_scale = delta / std::sqrt(c);
    return gamma_scale * z * jt * jt / (2.0 * nu * integral);
}

} // namespace kraichnan
