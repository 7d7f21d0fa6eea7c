#pragma once

// Time-domain solvers for dH(s,t)/ds = int_t^s H(s,u) H(u,t) k(s,u) du,
// H(t,t) = 1, in the tilted gauge G = e^{-mu (s-t)} H. The tilt is an
// exact change of variables (the convolution structure is unchanged), so
// it only prevents floating-point overflow.
//
// Discretization: uniform grid, trapezoidal memory integral, one explicit
// predictor step followed by one trapezoid corrector per node, and a
// Taylor seed H(t+h,t) = 1 + k(t,t) h^2/2 for the first lag.

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "kraichnan/errors.hpp"
#include "kraichnan/kernel.hpp"
#include "kraichnan/rng.hpp"

namespace kraichnan {

inline double default_tilt(const KernelSpec& kernel) {
    return 2.0 * std::sqrt(diagonal_sup(kernel));
}

struct StationarySolution {
    KernelSpec kernel;
    double step = 0.0;
    double horizon = 0.0;
    double tilt = 0.0;
    std::vector<double> values; // G[i] = e^{-mu t_i} H(t_i)

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t i) const { return static_cast<double>(i) * step; }
    double g_at(std::size_t i) const { return values[i]; }
    // reconstituted H; saturates to +inf when e^{mu t} overflows
    double h_at(std::size_t i) const { return values[i] * std::exp(tilt * time_at(i)); }
    double log_h_at(std::size_t i) const { return std::log(values[i]) + tilt * time_at(i); }
};

struct TwoTimeSolution {
    KernelSpec kernel;
    double base_time = 0.0;
    double step = 0.0;
    double horizon = 0.0;
    double tilt = 0.0;
    std::vector<double> tri; // row j holds G[j][i] = e^{-mu(s_j-t_i)} H(s_j,t_i), i <= j

    std::size_t rows() const {
        // tri holds n(n+1)/2 entries for n rows
        std::size_t n = 0;
        while (n * (n + 1) / 2 < tri.size()) ++n;
        return n;
    }
    double time_at(std::size_t j) const { return base_time + static_cast<double>(j) * step; }
    double g_at(std::size_t j, std::size_t i) const { return tri[j * (j + 1) / 2 + i]; }
    double h_at(std::size_t j, std::size_t i) const {
        return g_at(j, i) * std::exp(tilt * static_cast<double>(j - i) * step);
    }
    double log_h_at(std::size_t j, std::size_t i) const {
        return std::log(g_at(j, i)) + tilt * static_cast<double>(j - i) * step;
    }
};

namespace detail {

[[noreturn]] inline void throw_tilt_too_small(const KernelSpec& kernel, double T,
                                              std::size_t node) {
    const double mu_min =
        std::max(0.0, 2.0 * std::sqrt(diagonal_sup(kernel)) - 700.0 / T);
    throw overflow_error("solver overflow at node " + std::to_string(node) +
                         "; smallest admissible tilt is approximately mu >= " +
                         std::to_string(mu_min));
}

inline void check_solver_grid(double T, double h, double mu) {
    if (!(T > 0.0)) throw domain_error("solver: horizon T > 0 required");
    if (!(h > 0.0)) throw domain_error("solver: step h > 0 required");
    if (!(mu >= 0.0)) throw domain_error("solver: tilt mu >= 0 required");
}

} // namespace detail

inline StationarySolution solve_stationary(const KernelSpec& kernel, double T, double h,
                                           double mu) {
    if (!is_stationary(kernel))
        throw usage_error("solve_stationary: kernel is not stationary");
    detail::check_solver_grid(T, h, mu);
    StationarySolution sol{kernel, h, T, mu, {}};
    if (h > T) { // degenerate grid: boundary value only
        sol.values = {1.0};
        return sol;
    }
    const auto n = static_cast<std::size_t>(std::llround(T / h));
    std::vector<double> kt(n + 1);
    for (std::size_t i = 0; i <= n; ++i) kt[i] = evaluate(kernel, static_cast<double>(i) * h, 0.0);

    std::vector<double>& G = sol.values;
    G.assign(n + 1, 0.0);
    G[0] = 1.0;
    const double emh = std::exp(-mu * h);
    if (n >= 1) G[1] = emh * (1.0 + kt[0] * h * h / 2.0);

    // The tilt is applied through exact e^{-mu h} factors (integrating
    // factor); only the memory integral M(t) = int_0^t G(t-u)G(u)k(t-u)du
    // is discretized, so the discrete map commutes with retilting.
    double S_prev = 0.0; // interior memory sum at the current node
    for (std::size_t i = 1; i < n; ++i) {
        const double Mi = h * (S_prev + 0.5 * G[i] * (kt[i] + kt[0]));
        const double Gp = emh * (G[i] + h * Mi);
        // S_i = sum_{m=1..i} G[i+1-m] G[m] k[i+1-m]
        KahanSum S;
        for (std::size_t m = 1; m <= i; ++m) S.add(G[i + 1 - m] * G[m] * kt[i + 1 - m]);
        const double Si = S.value();
        const double Ms = h * (Si + 0.5 * Gp * (kt[i + 1] + kt[0]));
        G[i + 1] = emh * G[i] + 0.5 * h * (emh * Mi + Ms);
        if (!std::isfinite(G[i + 1])) detail::throw_tilt_too_small(kernel, T, i + 1);
        if (!(G[i + 1] > 0.0))
            throw numeric_error("solve_stationary: nonpositive iterate; step too large");
        S_prev = Si;
    }
    if (n >= 1 && !std::isfinite(G[n])) detail::throw_tilt_too_small(kernel, T, n);
    return sol;
}

inline StationarySolution solve_stationary(const KernelSpec& kernel, double T, double h) {
    return solve_stationary(kernel, T, h, default_tilt(kernel));
}

inline TwoTimeSolution solve_two_time(const KernelSpec& kernel, double t0, double T,
                                      double h, double mu) {
    if (!(t0 >= 0.0)) throw domain_error("solve_two_time: base time t0 >= 0 required");
    if (!(T > t0)) throw domain_error("solve_two_time: horizon T > t0 required");
    detail::check_solver_grid(T - t0, h, mu);
    TwoTimeSolution sol{kernel, t0, h, T, mu, {}};
    if (h > T - t0) {
        sol.tri = {1.0};
        return sol;
    }
    const auto n = static_cast<std::size_t>(std::llround((T - t0) / h));
    auto tg = [&](std::size_t i) { return t0 + static_cast<double>(i) * h; };

    // K[j][m] = k(s_j, t_m), lower triangle
    std::vector<double> K((n + 1) * (n + 2) / 2);
    auto kat = [&](std::size_t j, std::size_t m) -> double& { return K[j * (j + 1) / 2 + m]; };
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t m = 0; m <= j; ++m) kat(j, m) = evaluate(kernel, tg(j), tg(m));

    sol.tri.assign((n + 1) * (n + 2) / 2, 0.0);
    auto g = [&](std::size_t j, std::size_t i) -> double& { return sol.tri[j * (j + 1) / 2 + i]; };
    g(0, 0) = 1.0;

    const double emh = std::exp(-mu * h);
    std::vector<double> M(n + 1), Gp(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        // predictor across row j; M is the tilted memory integral at s_j
        for (std::size_t i = 0; i < j; ++i) {
            KahanSum acc;
            acc.add(0.5 * g(j, i) * kat(j, i)); // m = i endpoint, G(t_i,t_i) = 1
            for (std::size_t m = i + 1; m < j; ++m) acc.add(g(j, m) * kat(j, m) * g(m, i));
            acc.add(0.5 * g(j, i) * kat(j, j)); // m = j endpoint, G(s_j,s_j) = 1
            M[i] = h * acc.value();
            Gp[i] = emh * (g(j, i) + h * M[i]);
        }
        g(j + 1, j + 1) = 1.0;
        g(j + 1, j) = emh * (1.0 + kat(j, j) * h * h / 2.0);
        // corrector, ascending lag so interior entries of row j+1 are final
        for (std::size_t ii = j; ii-- > 0;) {
            const std::size_t i = ii;
            KahanSum acc;
            acc.add(0.5 * Gp[i] * kat(j + 1, i));
            for (std::size_t m = i + 1; m <= j; ++m)
                acc.add(g(j + 1, m) * kat(j + 1, m) * g(m, i));
            acc.add(0.5 * Gp[i] * kat(j + 1, j + 1));
            const double Ms = h * acc.value();
            g(j + 1, i) = emh * g(j, i) + 0.5 * h * (emh * M[i] + Ms);
            if (!std::isfinite(g(j + 1, i))) detail::throw_tilt_too_small(kernel, T - t0, j + 1);
            if (!(g(j + 1, i) > 0.0))
                throw numeric_error("solve_two_time: nonpositive iterate; step too large");
        }
    }
    return sol;
}

// max over t > 0 of H / exp(2 int k(u,u)^{1/2} du) - 1; nonpositive up to
// discretization for a correct solver. The boundary node is excluded:
// both sides equal 1 there by construction.
inline double check_upper_bound(const StationarySolution& sol) {
    const std::size_t n = sol.size();
    if (n <= 1) return 0.0;
    double cum = 0.0;
    double prev = std::sqrt(evaluate(sol.kernel, 0.0, 0.0));
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < n; ++i) {
        const double cur = std::sqrt(evaluate(sol.kernel, sol.time_at(i), sol.time_at(i)));
        cum += 0.5 * sol.step * (prev + cur);
        prev = cur;
        worst = std::max(worst, std::expm1(sol.log_h_at(i) - 2.0 * cum));
    }
    return worst;
}

inline double check_upper_bound(const TwoTimeSolution& sol) {
    const std::size_t n = sol.rows();
    if (n <= 1) return 0.0;
    std::vector<double> cum(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        const double a = std::sqrt(evaluate(sol.kernel, sol.time_at(j - 1), sol.time_at(j - 1)));
        const double b = std::sqrt(evaluate(sol.kernel, sol.time_at(j), sol.time_at(j)));
        cum[j] = cum[j - 1] + 0.5 * sol.step * (a + b);
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i)
            worst = std::max(worst, std::expm1(sol.log_h_at(j, i) - 2.0 * (cum[j] - cum[i])));
    return worst;
}

namespace detail {

inline std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

inline void write_csv(std::ostream& os, const StationarySolution& sol,
                      const std::string& kernel_json,
                      const std::string& extra_header = {}) {
    os << "# kernel=" << kernel_json << ", h=" << detail::fmt_g17(sol.step)
       << ", T=" << detail::fmt_g17(sol.horizon) << ", mu=" << detail::fmt_g17(sol.tilt)
       << "\n";
    if (!extra_header.empty()) os << extra_header;
    os << "t,G,H\n";
    for (std::size_t i = 0; i < sol.size(); ++i)
        os << detail::fmt_g17(sol.time_at(i)) << ',' << detail::fmt_g17(sol.g_at(i)) << ','
           << detail::fmt_g17(sol.h_at(i)) << "\n";
}

inline void write_csv(std::ostream& os, const TwoTimeSolution& sol,
                      const std::string& kernel_json,
                      const std::string& extra_header = {}) {
    os << "# kernel=" << kernel_json << ", h=" << detail::fmt_g17(sol.step)
       << ", T=" << detail::fmt_g17(sol.horizon) << ", mu=" << detail::fmt_g17(sol.tilt)
       << ", t0=" << detail::fmt_g17(sol.base_time) << "\n";
    if (!extra_header.empty()) os << extra_header;
    os << "s,t,G,H\n";
    for (std::size_t j = 0; j < sol.rows(); ++j)
        for (std::size_t i = 0; i <= j; ++i)
            os << detail::fmt_g17(sol.time_at(j)) << ',' << detail::fmt_g17(sol.time_at(i))
               << ',' << detail::fmt_g17(sol.g_at(j, i)) << ','
               << detail::fmt_g17(sol.h_at(j, i)) << "\n";
}

} // namespace kraichnan
