#pragma once

// Combinatorial route to H: non-crossing pair partitions, the Wick sum
// over them, and ordered-simplex integrals of the Wick moments. This is
// deliberately independent of the time-domain solver so the two can
// cross-validate each other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "kraichnan/errors.hpp"
#include "kraichnan/kernel.hpp"
#include "kraichnan/rng.hpp"

namespace kraichnan {

inline constexpr int ncp_enumeration_cap = 8; // C_8 = 1430
inline constexpr int ncp_integration_cap = 6;

// Fixed-point-free non-crossing involution of {0,...,2n-1}; sigma[i] is
// the partner of i.
struct Pairing {
    std::vector<int> sigma;

    int order() const { return static_cast<int>(sigma.size()) / 2; }
};

inline std::int64_t catalan(int n) {
    if (n < 0) throw domain_error("catalan: n >= 0 required");
    if (n >= 35) throw overflow_error("catalan: value exceeds 64-bit range for n >= 35");
    unsigned __int128 c = 1;
    for (int k = 0; k < n; ++k) c = c * 2u * (2u * k + 1u) / (k + 2u);
    return static_cast<std::int64_t>(c);
}

namespace detail {

// Element `lo` pairs with a partner at odd distance, splitting the block
// into an inside and an outside part; recursing on both yields exactly
// the non-crossing pairings, Catalan many, with no postfiltering.
inline void enumerate_ncp_range(std::vector<int>& sigma, int lo, int hi,
                                std::vector<int>& outside,
                                std::vector<Pairing>& out) {
    if (lo >= hi) {
        if (outside.empty()) {
            out.push_back(Pairing{sigma});
            return;
        }
        const int nlo = outside[0];
        const int nhi = outside[1];
        std::vector<int> rest(outside.begin() + 2, outside.end());
        enumerate_ncp_range(sigma, nlo, nhi, rest, out);
        return;
    }
    for (int p = lo + 1; p < hi; p += 2) {
        sigma[lo] = p;
        sigma[p] = lo;
        std::vector<int> next = outside;
        if (p + 1 < hi) {
            next.insert(next.begin(), {p + 1, hi});
        }
        enumerate_ncp_range(sigma, lo + 1, p, next, out);
    }
}

} // namespace detail

inline std::vector<Pairing> enumerate_ncp(int n) {
    if (n < 0) throw domain_error("enumerate_ncp: n >= 0 required");
    if (n > ncp_enumeration_cap)
        throw resource_error("enumerate_ncp: order capped at n <= 8");
    std::vector<Pairing> out;
    if (n == 0) {
        out.push_back(Pairing{{}});
        return out;
    }
    std::vector<int> sigma(2 * n, -1);
    std::vector<int> outside;
    detail::enumerate_ncp_range(sigma, 0, 2 * n, outside, out);
    std::sort(out.begin(), out.end(),
              [](const Pairing& a, const Pairing& b) { return a.sigma < b.sigma; });
    return out;
}

inline double wick_product(const Pairing& p, std::span<const double> times,
                           const KernelSpec& kernel) {
    double prod = 1.0;
    const int m = static_cast<int>(p.sigma.size());
    for (int i = 0; i < m; ++i) {
        if (i < p.sigma[i]) prod *= evaluate(kernel, times[p.sigma[i]], times[i]);
    }
    return prod;
}

// sum over NCP_n of prod_{i < sigma(i)} k(t_i, t_{sigma(i)}); odd moments
// vanish.
inline double wick_moment(std::span<const double> times, const KernelSpec& kernel) {
    if (times.size() % 2 != 0) return 0.0;
    const int n = static_cast<int>(times.size()) / 2;
    double sum = 0.0;
    for (const Pairing& p : enumerate_ncp(n)) sum += wick_product(p, times, kernel);
    return sum;
}

struct QuadratureConfig {
    int det_points = 64;        // base grid for the iterated trapezoid, n <= 2
    int romberg_levels = 3;     // grid refinements feeding the Richardson table
    long mc_samples = 40000;    // ordered-simplex Monte Carlo, 3 <= n <= 6
    std::uint64_t seed = 1;
};

struct SeriesTerm {
    double value = 0.0;
    double stderr_est = 0.0; // 0 for deterministic quadrature
    bool monte_carlo = false;
};

// Partial sum of H(s,t) = sum_n B_n(s,t) with the per-order terms kept.
struct SeriesApprox {
    int n_max = 0;
    std::vector<double> terms;        // B_0 .. B_{n_max}
    std::vector<double> term_stderr;
    double total = 0.0;
    double stderr_total = 0.0;        // quadrature-quadrature combined MC error
    double tail_bound = 0.0;          // sum_{n > n_max} (2 sqrt(sup k) (s-t))^{2n} / (2n)!
    long mc_samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

// Iterated trapezoid over the ordered simplex t <= t_1 <= ... <= t_{2n} <= s
// on a shared uniform grid of m intervals; each nesting level is a
// composite trapezoid up to the next variable's node.
inline double simplex_trapezoid(const KernelSpec& kernel, double t, double s, int n, int m) {
    const double h = (s - t) / m;
    if (n == 1) {
        // sum_{i2} w(i2|m) sum_{i1<=i2} w(i1|i2) k(x_{i1}, x_{i2})
        double outer = 0.0;
        for (int i2 = 1; i2 <= m; ++i2) {
            double inner = 0.0;
            for (int i1 = 0; i1 <= i2; ++i1) {
                const double w1 = (i1 == 0 || i1 == i2) ? 0.5 : 1.0;
                inner += w1 * evaluate(kernel, t + i2 * h, t + i1 * h);
            }
            const double w2 = (i2 == m) ? 0.5 : 1.0;
            outer += w2 * inner * h;
        }
        return outer * h;
    }
    // n == 2: wick integrand k12 k34 + k14 k23 over four nested levels
    std::vector<double> K(static_cast<std::size_t>(m + 1) * (m + 1));
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = evaluate(kernel, t + i * h, t + j * h);
            K[static_cast<std::size_t>(i) * (m + 1) + j] = v;
            K[static_cast<std::size_t>(j) * (m + 1) + i] = v;
        }
    auto k = [&](int i, int j) { return K[static_cast<std::size_t>(i) * (m + 1) + j]; };
    KahanSum total;
    for (int i4 = 1; i4 <= m; ++i4) {
        const double w4 = (i4 == m) ? 0.5 : 1.0;
        for (int i3 = 0; i3 <= i4; ++i3) {
            const double w3 = (i3 == 0 || i3 == i4) ? 0.5 : 1.0;
            for (int i2 = 1; i2 <= i3; ++i2) {
                const double w2 = (i2 == i3) ? 0.5 : 1.0;
                double inner = 0.0;
                for (int i1 = 0; i1 <= i2; ++i1) {
                    const double w1 = (i1 == 0 || i1 == i2) ? 0.5 : 1.0;
                    inner += w1 * (k(i1, i2) * k(i3, i4) + k(i1, i4) * k(i2, i3));
                }
                total.add(w4 * w3 * w2 * inner);
            }
            // i2 == 0 contributes only through i1 == i2 == 0 with zero-width
            // inner integral; nothing to add.
        }
    }
    return total.value() * h * h * h * h;
}

inline double romberg_simplex(const KernelSpec& kernel, double t, double s, int n,
                              const QuadratureConfig& q) {
    const int levels = std::max(1, q.romberg_levels);
    std::vector<double> row(levels);
    int m = q.det_points;
    for (int l = levels - 1; l >= 0; --l) {
        row[l] = simplex_trapezoid(kernel, t, s, n, m);
        m /= 2;
        if (m < 2) m = 2;
    }
    // Richardson in h^2
    double fac = 4.0;
    for (int j = 1; j < levels; ++j) {
        for (int l = levels - 1; l >= j; --l)
            row[l] = (fac * row[l] - row[l - 1]) / (fac - 1.0);
        fac *= 4.0;
    }
    return row[levels - 1];
}

} // namespace detail

// B_n(s,t): the 2n-fold ordered integral of the Wick moment. Deterministic
// for n <= 2; sorted-uniform Monte Carlo with the simplex volume factor
// (s-t)^{2n}/(2n)! for 3 <= n <= 6.
inline SeriesTerm series_term(const KernelSpec& kernel, double t, double s, int n,
                              const QuadratureConfig& q = {}) {
    if (!(s >= t)) throw domain_error("series_term: s >= t required");
    if (n < 0) throw domain_error("series_term: n >= 0 required");
    if (n > ncp_integration_cap)
        throw resource_error("series_term: integration capped at n <= 6");
    SeriesTerm out;
    if (n == 0) {
        out.value = 1.0;
        return out;
    }
    if (s == t) return out; // zero-width simplex
    if (n <= 2) {
        out.value = detail::romberg_simplex(kernel, t, s, n, q);
        return out;
    }
    const auto pairings = enumerate_ncp(n);
    const int d = 2 * n;
    double vol = 1.0;
    for (int j = 1; j <= d; ++j) vol *= (s - t) / j;
    std::vector<double> pts(d);
    KahanSum mean_acc, sq_acc;
    for (long sample = 0; sample < q.mc_samples; ++sample) {
        // stream = sample index, counters offset by order: draws are a pure
        // function of (seed, n, sample, j)
        const CounterRng rng(q.seed, static_cast<std::uint64_t>(sample));
        for (int j = 0; j < d; ++j)
            pts[j] = t + (s - t) * rng.uniform(static_cast<std::uint64_t>(j) +
                                               1000ull * static_cast<std::uint64_t>(n));
        std::sort(pts.begin(), pts.end());
        double w = 0.0;
        for (const Pairing& p : pairings) w += wick_product(p, pts, kernel);
        mean_acc.add(w);
        sq_acc.add(w * w);
    }
    const double S = static_cast<double>(q.mc_samples);
    const double mean = mean_acc.value() / S;
    const double var = std::max(0.0, sq_acc.value() / S - mean * mean);
    out.value = vol * mean;
    out.stderr_est = (q.mc_samples > 1) ? vol * std::sqrt(var / (S - 1.0)) : 0.0;
    out.monte_carlo = true;
    return out;
}

// sum_{n <= n_max} B_n plus the analytic remainder bound
// sum_{n > n_max} x^{2n}/(2n)! with x = 2 sqrt(sup k) (s-t).
inline SeriesApprox series_partial_sum(const KernelSpec& kernel, double t, double s,
                                       int n_max, const QuadratureConfig& q = {}) {
    if (!(s >= t)) throw domain_error("series_partial_sum: s >= t required");
    if (n_max < 0) throw domain_error("series_partial_sum: n_max >= 0 required");
    SeriesApprox out;
    out.n_max = n_max;
    out.seed = q.seed;
    double var = 0.0;
    KahanSum total;
    for (int n = 0; n <= n_max; ++n) {
        const SeriesTerm term = series_term(kernel, t, s, n, q);
        out.terms.push_back(term.value);
        out.term_stderr.push_back(term.stderr_est);
        total.add(term.value);
        var += term.stderr_est * term.stderr_est;
        if (term.monte_carlo) out.mc_samples = q.mc_samples;
    }
    out.total = total.value();
    out.stderr_total = std::sqrt(var);
    const double x = 2.0 * std::sqrt(diagonal_sup(kernel)) * (s - t);
    double partial = 0.0, term = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        partial += term;
        term *= x * x / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
    }
    out.tail_bound = std::max(0.0, std::cosh(x) - partial);
    return out;
}

} // namespace kraichnan
