#pragma once

// Extraction of (lambda, p, A) from time-domain solutions under the model
// H(t) ~ A e^{lambda t} t^p. Every asymptotic law handled here is of this
// form, so the fit basis is {1, t, ln t} on log-values.

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "kraichnan/errors.hpp"
#include "kraichnan/kernel.hpp"
#include "kraichnan/volterra.hpp"

namespace kraichnan {

struct FitWindow {
    double lo = 0.0;
    double hi = 0.0;
};

inline FitWindow default_window(const StationarySolution& sol) {
    return {sol.horizon / 2.0, sol.horizon};
}

struct AsymptoticsFit {
    FitWindow window;
    double lambda_hat = 0.0;
    double p_hat = 0.0;
    double lnA_hat = 0.0;
    double rms = 0.0;
    // delete-one-block jackknife spreads over 4 sub-windows
    double spread_lambda = 0.0;
    double spread_p = 0.0;
    double spread_lnA = 0.0;
};

namespace detail {

// ordinary least squares of y against {1, t, ln t}; long double normal
// equations, fixed elimination order, bit-reproducible
inline std::array<double, 3> ols3(const std::vector<double>& t, const std::vector<double>& y,
                                  std::size_t lo, std::size_t hi) {
    long double A[3][3] = {};
    long double b[3] = {};
    for (std::size_t i = lo; i < hi; ++i) {
        const long double u[3] = {1.0L, static_cast<long double>(t[i]),
                                  std::log(static_cast<long double>(t[i]))};
        for (int r = 0; r < 3; ++r) {
            for (int c = r; c < 3; ++c) A[r][c] += u[r] * u[c];
            b[r] += u[r] * static_cast<long double>(y[i]);
        }
    }
    for (int r = 1; r < 3; ++r)
        for (int c = 0; c < r; ++c) A[r][c] = A[c][r];
    // Gaussian elimination with partial pivoting on the 3x3 system
    int idx[3] = {0, 1, 2};
    for (int k = 0; k < 3; ++k) {
        int piv = k;
        for (int r = k + 1; r < 3; ++r)
            if (std::abs(A[idx[r]][k]) > std::abs(A[idx[piv]][k])) piv = r;
        std::swap(idx[k], idx[piv]);
        for (int r = k + 1; r < 3; ++r) {
            const long double f = A[idx[r]][k] / A[idx[k]][k];
            for (int c = k; c < 3; ++c) A[idx[r]][c] -= f * A[idx[k]][c];
            b[idx[r]] -= f * b[idx[k]];
        }
    }
    long double x[3];
    for (int k = 2; k >= 0; --k) {
        long double acc = b[idx[k]];
        for (int c = k + 1; c < 3; ++c) acc -= A[idx[k]][c] * x[c];
        x[k] = acc / A[idx[k]][k];
    }
    return {static_cast<double>(x[0]), static_cast<double>(x[1]), static_cast<double>(x[2])};
}

inline std::pair<std::size_t, std::size_t> window_indices(const StationarySolution& sol,
                                                          FitWindow w) {
    if (!(w.lo > 0.0) || !(w.hi <= sol.horizon + 1e-12) || !(w.lo < w.hi))
        throw domain_error("fit: window must lie inside (0, T]");
    const auto lo = static_cast<std::size_t>(std::ceil(w.lo / sol.step - 1e-9));
    const auto hi = std::min(sol.size(), static_cast<std::size_t>(
                                             std::floor(w.hi / sol.step + 1e-9)) + 1);
    if (hi <= lo || hi - lo < 50) throw domain_error("fit: need at least 50 grid points");
    return {std::max<std::size_t>(lo, 1), hi};
}

} // namespace detail

inline AsymptoticsFit fit_exponential_power(const StationarySolution& sol, FitWindow w) {
    auto [lo, hi] = detail::window_indices(sol, w);
    std::vector<double> t(hi - lo), y(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
        t[i - lo] = sol.time_at(i);
        y[i - lo] = sol.log_h_at(i);
    }
    AsymptoticsFit fit;
    fit.window = w;
    const auto beta = detail::ols3(t, y, 0, t.size());
    fit.lnA_hat = beta[0];
    fit.lambda_hat = beta[1];
    fit.p_hat = beta[2];
    KahanSum ss;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - (beta[0] + beta[1] * t[i] + beta[2] * std::log(t[i]));
        ss.add(r * r);
    }
    fit.rms = std::sqrt(ss.value() / static_cast<double>(t.size()));

    // jackknife over 4 contiguous blocks
    const std::size_t m = t.size();
    std::array<std::array<double, 3>, 4> part{};
    for (int kblk = 0; kblk < 4; ++kblk) {
        std::vector<double> tt, yy;
        tt.reserve(m);
        yy.reserve(m);
        const std::size_t b0 = m * kblk / 4, b1 = m * (kblk + 1) / 4;
        for (std::size_t i = 0; i < m; ++i)
            if (i < b0 || i >= b1) {
                tt.push_back(t[i]);
                yy.push_back(y[i]);
            }
        part[kblk] = detail::ols3(tt, yy, 0, tt.size());
    }
    for (int c = 0; c < 3; ++c) {
        double mean = 0.0;
        for (int kblk = 0; kblk < 4; ++kblk) mean += part[kblk][c];
        mean /= 4.0;
        double var = 0.0;
        for (int kblk = 0; kblk < 4; ++kblk)
            var += (part[kblk][c] - mean) * (part[kblk][c] - mean);
        const double spread = std::sqrt(0.75 * var);
        if (c == 0) fit.spread_lnA = spread;
        if (c == 1) fit.spread_lambda = spread;
        if (c == 2) fit.spread_p = spread;
    }
    return fit;
}

inline AsymptoticsFit fit_exponential_power(const StationarySolution& sol) {
    return fit_exponential_power(sol, default_window(sol));
}

// Theil-Sen line slope of ln H over the window; robust to the unknown
// power correction only in the sense of outliers, see the module notes.
inline double fit_lyapunov_only(const StationarySolution& sol, FitWindow w) {
    auto [lo, hi] = detail::window_indices(sol, w);
    const std::size_t count = hi - lo;
    const std::size_t stride = std::max<std::size_t>(1, count / 1200);
    std::vector<double> t, y;
    for (std::size_t i = lo; i < hi; i += stride) {
        t.push_back(sol.time_at(i));
        y.push_back(sol.log_h_at(i));
    }
    std::vector<double> slopes;
    slopes.reserve(t.size() * (t.size() - 1) / 2);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            slopes.push_back((y[j] - y[i]) / (t[j] - t[i]));
    const std::size_t mid = slopes.size() / 2;
    std::nth_element(slopes.begin(), slopes.begin() + mid, slopes.end());
    double med = slopes[mid];
    if (slopes.size() % 2 == 0) {
        std::nth_element(slopes.begin(), slopes.begin() + mid - 1, slopes.begin() + mid);
        med = 0.5 * (med + slopes[mid - 1]);
    }
    return med;
}

inline double fit_lyapunov_only(const StationarySolution& sol) {
    return fit_lyapunov_only(sol, default_window(sol));
}

// For each base time t, solves the two-time equation on [t, t+gap] and
// extracts the growth rate of ln H(s,t) in x = s-t over the upper half of
// the gap, using the {1, x, ln x} model so the power prefactor does not
// bias the rate. The rates approach the Lyapunov exponent of the
// flat-limit stationary kernel as t grows.
inline std::vector<std::pair<double, double>> flat_kernel_limit_check(
    const KernelSpec& kernel, const std::vector<double>& t_values, double gap, double h,
    double mu) {
    if (!(gap > 0.0)) throw domain_error("flat_kernel_limit_check: gap > 0 required");
    const auto budget = static_cast<std::size_t>(std::llround(gap / h));
    if (budget > 4000)
        throw resource_error("flat_kernel_limit_check: gap/h exceeds the two-time budget");
    std::vector<std::pair<double, double>> out;
    for (double t : t_values) {
        const TwoTimeSolution tt = solve_two_time(kernel, t, t + gap, h, mu);
        const std::size_t n = tt.rows();
        std::vector<double> x, y;
        for (std::size_t j = 0; j < n; ++j) {
            const double xx = static_cast<double>(j) * h;
            if (xx >= gap / 2.0) {
                x.push_back(xx);
                y.push_back(tt.log_h_at(j, 0));
            }
        }
        if (x.size() < 50)
            throw domain_error("flat_kernel_limit_check: need at least 50 fit points");
        const auto beta = detail::ols3(x, y, 0, x.size());
        out.emplace_back(t, beta[1]);
    }
    return out;
}

inline std::vector<std::pair<double, double>> flat_kernel_limit_check(
    const KernelSpec& kernel, const std::vector<double>& t_values, double gap,
    double h = 0.02) {
    return flat_kernel_limit_check(kernel, t_values, gap, h, default_tilt(kernel));
}

} // namespace kraichnan
