#pragma once

// Monte Carlo validation of the operator picture: sample symmetric
// matrices whose entries (p <= q, diagonal included) are independent
// Gaussian paths with time covariance k/N, integrate dX/ds = L(s) X with
// X(t0) = I, and average the normalized trace. The estimate converges to
// H(s, t0) as N grows.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "kraichnan/errors.hpp"
#include "kraichnan/kernel.hpp"
#include "kraichnan/rng.hpp"

namespace kraichnan {

struct EnsembleConfig {
    KernelSpec kernel;
    int dimension = 2;       // N
    long samples = 1;        // S
    double t0 = 0.0;
    double horizon = 1.0;    // T
    double step = 0.05;      // h, must divide T - t0
    std::uint64_t seed = 0;

    void validate() const {
        if (dimension < 2) throw domain_error("ensemble: dimension N >= 2 required");
        if (samples < 1) throw domain_error("ensemble: sample count S >= 1 required");
        if (!(t0 >= 0.0)) throw domain_error("ensemble: t0 >= 0 required");
        if (!(horizon > t0)) throw domain_error("ensemble: T > t0 required");
        if (!(step > 0.0)) throw domain_error("ensemble: step h > 0 required");
        const double ratio = (horizon - t0) / step;
        if (std::abs(ratio - std::llround(ratio)) > 1e-9)
            throw domain_error("ensemble: step h must divide T - t0");
    }

    std::size_t nodes() const {
        return static_cast<std::size_t>(std::llround((horizon - t0) / step)) + 1;
    }
};

struct TraceEstimate {
    std::vector<double> times;
    std::vector<double> mean;    // averaged (1/N) tr X_{s,t0}
    std::vector<double> stderr_; // per-time standard error over samples
};

namespace detail {

inline Eigen::MatrixXd time_cholesky(const EnsembleConfig& cfg) {
    const std::size_t n = cfg.nodes();
    Eigen::MatrixXd K(n, n);
    double maxdiag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = evaluate(cfg.kernel, cfg.t0 + cfg.step * static_cast<double>(i),
                                      cfg.t0 + cfg.step * static_cast<double>(j));
            K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            K(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
        maxdiag = std::max(maxdiag, K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
    }
    if (maxdiag == 0.0) return Eigen::MatrixXd::Zero(n, n); // zero kernel: L = 0
    K.diagonal().array() += 1e-10 * maxdiag;
    Eigen::LLT<Eigen::MatrixXd> llt(K);
    if (llt.info() != Eigen::Success)
        throw not_psd_error("sample_process: time covariance matrix of the kernel is not "
                            "positive semidefinite (after jitter)");
    return llt.matrixL();
}

// entry paths for one sample: column p holds the path of pair p in the
// fixed (p <= q) ordering; a pure function of (seed, sample)
inline Eigen::MatrixXd entry_paths(const EnsembleConfig& cfg, const Eigen::MatrixXd& chol,
                                   std::uint64_t sample) {
    const std::size_t n = cfg.nodes();
    const int N = cfg.dimension;
    const std::size_t P = static_cast<std::size_t>(N) * (N + 1) / 2;
    const CounterRng rng(cfg.seed, sample);
    Eigen::MatrixXd xi(n, P);
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t i = 0; i < n; ++i)
            xi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) =
                rng.normal(p * n + i);
    return (chol * xi) / std::sqrt(static_cast<double>(N));
}

inline void fill_symmetric(const Eigen::MatrixXd& paths, std::size_t node, int N,
                           Eigen::MatrixXd& L) {
    std::size_t p = 0;
    for (int r = 0; r < N; ++r)
        for (int c = r; c < N; ++c, ++p) {
            const double v = paths(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(p));
            L(r, c) = v;
            L(c, r) = v;
        }
}

inline unsigned default_thread_count() {
    if (const char* env = std::getenv("KRAICHNAN_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// normalized trace of X along one sampled realization
inline std::vector<double> evolve_one(const EnsembleConfig& cfg, const Eigen::MatrixXd& chol,
                                      std::uint64_t sample) {
    const std::size_t n = cfg.nodes();
    const int N = cfg.dimension;
    const double h = cfg.step;
    const Eigen::MatrixXd paths = entry_paths(cfg, chol, sample);
    Eigen::MatrixXd La(N, N), Lb(N, N), Lm(N, N);
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(N, N);
    Eigen::MatrixXd k1(N, N), k2(N, N), k3(N, N), k4(N, N);
    std::vector<double> trace(n);
    trace[0] = 1.0;
    fill_symmetric(paths, 0, N, Lb);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        La = Lb;
        fill_symmetric(paths, i + 1, N, Lb);
        if (h * La.norm() > 1.0)
            throw step_size_error("evolve_trace: ||h L|| > 1; reduce the step");
        Lm = 0.5 * (La + Lb);
        k1.noalias() = La * X;
        k2.noalias() = Lm * (X + (0.5 * h) * k1);
        k3.noalias() = Lm * (X + (0.5 * h) * k2);
        k4.noalias() = Lb * (X + h * k3);
        X += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        trace[i + 1] = X.trace() / static_cast<double>(N);
    }
    return trace;
}

} // namespace detail

// One realization of the driving process {L(t_i)}.
inline std::vector<Eigen::MatrixXd> sample_process(const EnsembleConfig& cfg,
                                                   std::uint64_t sample = 0) {
    cfg.validate();
    const Eigen::MatrixXd chol = detail::time_cholesky(cfg);
    const Eigen::MatrixXd paths = detail::entry_paths(cfg, chol, sample);
    const std::size_t n = cfg.nodes();
    std::vector<Eigen::MatrixXd> out(n, Eigen::MatrixXd(cfg.dimension, cfg.dimension));
    for (std::size_t i = 0; i < n; ++i)
        detail::fill_symmetric(paths, i, cfg.dimension, out[i]);
    return out;
}

// Sample-averaged normalized trace of X_{s,t0}. Per-sample RNG streams are
// derived from (seed, sample index) and the accumulator merges in index
// order, so the estimate is bit-identical for any thread count.
inline TraceEstimate evolve_trace(const EnsembleConfig& cfg) {
    cfg.validate();
    const Eigen::MatrixXd chol = detail::time_cholesky(cfg);
    const std::size_t n = cfg.nodes();
    const long S = cfg.samples;
    std::vector<std::vector<double>> per_sample(static_cast<std::size_t>(S));

    const unsigned threads =
        std::min<unsigned>(detail::default_thread_count(), static_cast<unsigned>(S));
    if (threads <= 1) {
        for (long s = 0; s < S; ++s)
            per_sample[static_cast<std::size_t>(s)] =
                detail::evolve_one(cfg, chol, static_cast<std::uint64_t>(s));
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex fail_mutex;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t]() {
                try {
                    for (long s = t; s < S; s += threads)
                        per_sample[static_cast<std::size_t>(s)] =
                            detail::evolve_one(cfg, chol, static_cast<std::uint64_t>(s));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(fail_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    TraceEstimate est;
    est.times.resize(n);
    est.mean.assign(n, 0.0);
    est.stderr_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        est.times[i] = cfg.t0 + cfg.step * static_cast<double>(i);
    for (std::size_t i = 0; i < n; ++i) {
        KahanSum acc;
        for (long s = 0; s < S; ++s) acc.add(per_sample[static_cast<std::size_t>(s)][i]);
        est.mean[i] = acc.value() / static_cast<double>(S);
        if (S > 1) {
            KahanSum sq;
            for (long s = 0; s < S; ++s) {
                const double d = per_sample[static_cast<std::size_t>(s)][i] - est.mean[i];
                sq.add(d * d);
            }
            est.stderr_[i] = std::sqrt(sq.value() / (static_cast<double>(S) *
                                                     (static_cast<double>(S) - 1.0)));
        }
    }
    return est;
}

} // namespace kraichnan
