// Command-line front end. Subcommands: solve, solve2d, series, lambdac,
// laplace, fit, flatcheck, mc, validate. Artifacts embed the resolved run
// configuration and an artifact version so identical reruns are
// byte-identical. Exit codes: 0 success, 2 usage error, 3 numeric/domain
// error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kraichnan/asymptotics.hpp"
#include "kraichnan/bessel.hpp"
#include "kraichnan/kernel.hpp"
#include "kraichnan/kernel_json.hpp"
#include "kraichnan/matrix_oracle.hpp"
#include "kraichnan/ncp.hpp"
#include "kraichnan/spectral.hpp"
#include "kraichnan/volterra.hpp"

namespace {

using nlohmann::json;
using namespace kraichnan;

constexpr int artifact_version = 1;

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw usage_error("cannot open output file '" + path + "'");
    os << text;
}

std::string csv_preamble(const json& config) {
    std::string out;
    out += "# artifact_version=" + std::to_string(artifact_version) + "\n";
    out += "# config=" + config.dump() + "\n";
    return out;
}

json report_json(const json& config, json result) {
    json j;
    j["artifact_version"] = artifact_version;
    j["config"] = config;
    j["result"] = std::move(result);
    return j;
}

struct CommonArgs {
    std::string kernel_text;
    std::string out = "-";
};

KernelSpec parse_kernel(const CommonArgs& a) { return kernel_from_json_text(a.kernel_text); }

// ---- validate: condensed per-module invariant suite ----

int run_validate() {
    std::ostringstream log;
    auto ok = [&](const char* what) { log << "ok " << what << "\n"; };

    { // kernels: bounds, stationarity, flatness
        std::vector<KernelSpec> cat = {
            KernelSpec::constant(1.0), KernelSpec::exponential(1.0, 1.0),
            KernelSpec::mixed_exponential(1.0, 1.0, 1.0), KernelSpec::power_law(1.0, 2.0),
            KernelSpec::algebraic_mixed(1.0, 1.0, 2.0), KernelSpec::ratio_flat(1.0, 1.0)};
        for (const auto& k : cat) {
            const double sup = diagonal_sup(k);
            for (double t = 0.0; t <= 4.0; t += 0.5)
                for (double ds = 0.0; ds <= 3.0; ds += 0.5) {
                    const double v = evaluate(k, t + ds, t);
                    if (!(v >= 0.0 && v <= sup * (1 + 1e-12)))
                        throw numeric_error("kernel bound violated");
                    if (is_stationary(k) && v != evaluate(k, (t + ds) - t, 0.0))
                        throw numeric_error("stationarity violated");
                }
        }
        double prev = 1e300;
        for (double T : {10.0, 100.0, 1000.0}) {
            double sup = 0.0;
            for (double ds = 0.0; ds <= 5.0; ds += 0.25)
                sup = std::max(sup, std::abs(evaluate(KernelSpec::ratio_flat(1.0, 2.0), T + ds, T) - 1.0));
            if (!(sup < prev)) throw numeric_error("ratio flatness not decreasing");
            prev = sup;
        }
        ok("kernels");
    }
    { // bessel: zeros, monotonicity, ratio identity, mgf shape
        for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.0, 5.0})
            if (std::abs(detail::bessel_series(nu, smallest_zero(nu)).value) > 1e-10)
                throw numeric_error("J(j_nu) != 0");
        double prev = 0.0;
        for (double nu = -0.9; nu <= 10.0; nu += 1.09) {
            const double j = smallest_zero(nu);
            if (!(j > prev)) throw numeric_error("zero not increasing");
            prev = j;
        }
        const double w = 1.0 / 4.0;
        if (std::abs(bessel_ratio(2.0, 1.0) - w / (1.0 - w * bessel_ratio(3.0, 1.0))) > 1e-10)
            throw numeric_error("ratio recursion identity");
        for (double th = 0.5; th <= 4.0; th += 0.5) {
            if (!(semicircle_mgf(th) >= 1.0) || semicircle_mgf(-th) != semicircle_mgf(th))
                throw numeric_error("mgf shape");
        }
        ok("bessel");
    }
    { // ncp: counts, positivity, monotone partial sums
        for (int n = 0; n <= 6; ++n)
            if (static_cast<std::int64_t>(enumerate_ncp(n).size()) != catalan(n))
                throw numeric_error("ncp count mismatch");
        QuadratureConfig q;
        q.mc_samples = 2000;
        q.seed = 3;
        double prev = 0.0;
        for (int nmax = 0; nmax <= 4; ++nmax) {
            const auto s = series_partial_sum(KernelSpec::exponential(1.0, 1.0), 0.0, 0.5,
                                              nmax, q);
            for (double b : s.terms)
                if (!(b >= 0.0)) throw numeric_error("negative series term");
            if (!(s.total >= prev)) throw numeric_error("partial sums not monotone");
            prev = s.total;
        }
        ok("ncp");
    }
    { // volterra: gauge exactness, order, two-time consistency, monotone pair
        const auto a = solve_stationary(KernelSpec::exponential(1.0, 1.0), 1.0, 1e-3, 0.5);
        const auto b = solve_stationary(KernelSpec::exponential(1.0, 1.0), 1.0, 1e-3, 2.0);
        for (std::size_t i = 0; i < a.size(); i += 97) {
            const double t = a.time_at(i);
            if (std::abs(a.g_at(i) * std::exp(-2.0 * t) - b.g_at(i) * std::exp(-0.5 * t)) >
                1e-12 * a.g_at(i))
                throw numeric_error("gauge invariance");
        }
        double vals[3];
        int kk = 0;
        for (double h : {4e-3, 2e-3, 1e-3})
            vals[kk++] = solve_stationary(KernelSpec::constant(1.0), 2.0, h, 2.0).h_at(
                static_cast<std::size_t>(std::llround(2.0 / h)));
        if (std::log2(std::abs(vals[0] - vals[1]) / std::abs(vals[1] - vals[2])) < 1.8)
            throw numeric_error("convergence order");
        const auto two = solve_two_time(KernelSpec::exponential(1.0, 1.0), 0.0, 1.5, 0.01, 2.0);
        const auto one = solve_stationary(KernelSpec::exponential(1.0, 1.0), 1.5, 0.01, 2.0);
        for (std::size_t j = 0; j < two.rows(); j += 13)
            if (std::abs(two.g_at(j, 0) - one.g_at(j)) > 1e-8 * one.g_at(j))
                throw numeric_error("two-time consistency");
        const auto lo = solve_stationary(KernelSpec::exponential(1.0, 1.0), 4.0, 5e-3, 2.0);
        const auto hi = solve_stationary(KernelSpec::constant(1.0), 4.0, 5e-3, 2.0);
        for (std::size_t i = 0; i < lo.size(); i += 41)
            if (lo.log_h_at(i) > hi.log_h_at(i) + std::log1p(1e-9))
                throw numeric_error("kernel monotonicity");
        if (check_upper_bound(hi) > 1e-3) throw numeric_error("upper bound");
        ok("volterra");
    }
    { // spectral: transform shape, fixed point residual, scaling law
        const auto sol = solve_stationary(KernelSpec::exponential(1.0, 1.0), 30.0, 5e-3);
        const auto fit = fit_exponential_power(sol);
        double prev = 1e300;
        for (double lam : {1.0, 1.5, 2.0, 4.0, 50.0}) {
            const double v = laplace_of(sol, lam, fit);
            if (!(v < prev)) throw numeric_error("Hhat not decreasing");
            prev = v;
        }
        if (std::abs(50.0 * laplace_of(sol, 50.0, fit) - 1.0) > 0.05)
            throw numeric_error("lambda Hhat -> 1");
        const double lam = fit.lambda_hat + 1.0;
        const double Hh = laplace_of(sol, lam, fit);
        const double Hk = laplace_of(sol, lam, sol.kernel, fit);
        if (std::abs(lam * Hh - 1.0 - Hh * Hk) > 1e-3) throw numeric_error("fixed point");
        if (std::abs(Hh - 1.0 / (lam - laplace_of(sol, lam + 1.0, fit))) > 1e-3)
            throw numeric_error("exponential functional identity");
        const double l1 = lambda_c_exponential(2.0, 1.0).lambda_c;
        const double l2 = std::sqrt(2.0) * lambda_c_exponential(1.0, 1.0 / std::sqrt(2.0)).lambda_c;
        if (std::abs(l1 - l2) > 1e-8) throw numeric_error("lambda_c scaling");
        for (double d : {0.5, 1.0, 2.0})
            if (lambda_c_exponential(1.0, d).lambda_c > 2.0)
                throw numeric_error("lambda_c kernel monotonicity");
        ok("spectral");
    }
    { // asymptotics: tilt invariance and window stability
        const auto a = solve_stationary(KernelSpec::exponential(1.0, 1.0), 30.0, 5e-3, 1.0);
        const auto b = solve_stationary(KernelSpec::exponential(1.0, 1.0), 30.0, 5e-3, 2.0);
        const auto fa = fit_exponential_power(a);
        const auto fb = fit_exponential_power(b);
        if (std::abs(fa.lambda_hat - fb.lambda_hat) > 1e-10)
            throw numeric_error("fit tilt invariance");
        const auto half = fit_exponential_power(a, {22.5, 30.0});
        if (std::abs(fa.lambda_hat - half.lambda_hat) > 3.0 * std::max(fa.spread_lambda, 1e-6))
            throw numeric_error("window stability");
        ok("asymptotics");
    }
    { // matrix oracle: boundary, zero kernel, determinism
        EnsembleConfig cfg{KernelSpec::constant(0.0), 8, 3, 0.0, 0.5, 0.1, 1};
        const auto z = evolve_trace(cfg);
        for (double m : z.mean)
            if (m != 1.0) throw numeric_error("zero-kernel trace");
        EnsembleConfig cfg2{KernelSpec::exponential(1.0, 1.0), 12, 4, 0.0, 0.5, 0.1, 2};
        const auto e1 = evolve_trace(cfg2);
        const auto e2 = evolve_trace(cfg2);
        if (e1.mean != e2.mean) throw numeric_error("seed determinism");
        if (e1.mean[0] != 1.0) throw numeric_error("boundary trace");
        ok("matrix_oracle");
    }
    std::cout << log.str() << "validate: all module invariants hold\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the nonlinear Kraichnan equation "
                 "dH(s,t)/ds = int_t^s H(s,u)H(u,t)k(s,u)du, H(t,t)=1"};
    app.set_help_flag("--help", "print help"); // leave -h to the step option --h
    app.require_subcommand(1);

    CommonArgs solve_a, solve2d_a, series_a, lambdac_a, laplace_a, fit_a, flat_a, mc_a;

    // solve
    auto* solve = app.add_subcommand("solve", "stationary solver; CSV t,G,H");
    double solve_T = 0, solve_h = 0;
    std::optional<double> solve_mu;
    solve->add_option("--kernel", solve_a.kernel_text, "kernel JSON")->required();
    solve->add_option("--T", solve_T, "horizon")->required();
    solve->add_option("--h", solve_h, "step")->required();
    solve->add_option("--mu", solve_mu, "tilt (default 2 sqrt(sup k))");
    solve->add_option("--out", solve_a.out, "output path or -");

    // solve2d
    auto* solve2d = app.add_subcommand("solve2d", "two-time solver; CSV s,t,G,H");
    double s2_t0 = 0, s2_T = 0, s2_h = 0;
    std::optional<double> s2_mu;
    solve2d->add_option("--kernel", solve2d_a.kernel_text, "kernel JSON")->required();
    solve2d->add_option("--t0", s2_t0, "base time")->required();
    solve2d->add_option("--T", s2_T, "horizon")->required();
    solve2d->add_option("--h", s2_h, "step")->required();
    solve2d->add_option("--mu", s2_mu, "tilt (default 2 sqrt(sup k))");
    solve2d->add_option("--out", solve2d_a.out, "output path or -");

    // series
    auto* series = app.add_subcommand("series", "pairing series terms; CSV n,B_n,stderr");
    double se_t = 0, se_s = 0;
    int se_nmax = 0, se_det = 64;
    long se_mc = 40000;
    std::optional<std::uint64_t> se_seed;
    series->add_option("--kernel", series_a.kernel_text, "kernel JSON")->required();
    series->add_option("--t", se_t, "lower time")->required();
    series->add_option("--s", se_s, "upper time")->required();
    series->add_option("--nmax", se_nmax, "highest order")->required();
    series->add_option("--det-points", se_det, "deterministic grid points");
    series->add_option("--mc-samples", se_mc, "Monte Carlo samples per order");
    series->add_option("--seed", se_seed, "RNG seed (required for nmax >= 3)");
    series->add_option("--out", series_a.out, "output path or -");

    // lambdac
    auto* lambdac = app.add_subcommand("lambdac", "Lyapunov exponent report; JSON");
    double lc_T = 60.0, lc_h = 5e-3;
    lambdac->add_option("--kernel", lambdac_a.kernel_text, "kernel JSON")->required();
    lambdac->add_option("--T", lc_T, "solver horizon for transform-based methods");
    lambdac->add_option("--h", lc_h, "solver step");
    lambdac->add_option("--out", lambdac_a.out, "output path or -");

    // laplace
    auto* laplace = app.add_subcommand("laplace", "Laplace transform values; CSV lambda,Hhat");
    std::vector<double> lp_lambdas;
    double lp_T = 40.0, lp_h = 5e-3;
    std::string lp_weight;
    laplace->add_option("--kernel", laplace_a.kernel_text, "kernel JSON")->required();
    laplace->add_option("--lambda", lp_lambdas, "evaluation points")->required()->expected(-1);
    laplace->add_option("--T", lp_T, "solver horizon");
    laplace->add_option("--h", lp_h, "solver step");
    laplace->add_option("--weight", lp_weight, "optional weight kernel JSON");
    laplace->add_option("--out", laplace_a.out, "output path or -");

    // fit
    auto* fitc = app.add_subcommand("fit", "asymptotics fit; JSON");
    double ft_T = 40.0, ft_h = 5e-3;
    std::optional<double> ft_mu;
    std::vector<double> ft_window;
    fitc->add_option("--kernel", fit_a.kernel_text, "kernel JSON")->required();
    fitc->add_option("--T", ft_T, "horizon");
    fitc->add_option("--h", ft_h, "step");
    fitc->add_option("--mu", ft_mu, "tilt");
    fitc->add_option("--window", ft_window, "fit window lo hi (default T/2 T)")->expected(2);
    fitc->add_option("--out", fit_a.out, "output path or -");

    // flatcheck
    auto* flat = app.add_subcommand("flatcheck", "flat-kernel rate table; CSV t,slope");
    std::vector<double> fl_ts;
    double fl_gap = 20.0, fl_h = 0.02;
    flat->add_option("--kernel", flat_a.kernel_text, "kernel JSON")->required();
    flat->add_option("--t", fl_ts, "base times")->required()->expected(-1);
    flat->add_option("--gap", fl_gap, "horizon gap above each base time");
    flat->add_option("--h", fl_h, "step");
    flat->add_option("--out", flat_a.out, "output path or -");

    // mc
    auto* mc = app.add_subcommand("mc", "random-matrix trace estimate; CSV s,mean,trace_stderr");
    int mc_N = 0;
    long mc_S = 0;
    double mc_T = 0, mc_t0 = 0.0, mc_h = 0;
    std::optional<std::uint64_t> mc_seed;
    mc->add_option("--kernel", mc_a.kernel_text, "kernel JSON")->required();
    mc->add_option("--N", mc_N, "matrix dimension")->required();
    mc->add_option("--S", mc_S, "sample count")->required();
    mc->add_option("--T", mc_T, "horizon")->required();
    mc->add_option("--t0", mc_t0, "base time");
    mc->add_option("--h", mc_h, "step")->required();
    mc->add_option("--seed", mc_seed, "RNG seed")->required();
    mc->add_option("--out", mc_a.out, "output path or -");

    // validate
    app.add_subcommand("validate", "run every module invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) {
            const KernelSpec k = parse_kernel(solve_a);
            const double mu = solve_mu ? *solve_mu : default_tilt(k);
            const std::string kj = kernel_to_json(k).dump();
            json cfg{{"subcommand", "solve"}, {"kernel", kernel_to_json(k)},
                     {"T", solve_T},          {"h", solve_h},
                     {"mu", mu}};
            const auto sol = solve_stationary(k, solve_T, solve_h, mu);
            std::ostringstream os;
            write_csv(os, sol, kj, csv_preamble(cfg));
            write_text(solve_a.out, os.str());
        } else if (solve2d->parsed()) {
            const KernelSpec k = parse_kernel(solve2d_a);
            const double mu = s2_mu ? *s2_mu : default_tilt(k);
            const std::string kj = kernel_to_json(k).dump();
            json cfg{{"subcommand", "solve2d"}, {"kernel", kernel_to_json(k)},
                     {"t0", s2_t0},             {"T", s2_T},
                     {"h", s2_h},               {"mu", mu}};
            const auto sol = solve_two_time(k, s2_t0, s2_T, s2_h, mu);
            std::ostringstream os;
            write_csv(os, sol, kj, csv_preamble(cfg));
            write_text(solve2d_a.out, os.str());
        } else if (series->parsed()) {
            const KernelSpec k = parse_kernel(series_a);
            if (se_nmax >= 3 && !se_seed)
                throw usage_error("series: --seed is mandatory for Monte Carlo orders "
                                  "(nmax >= 3)");
            QuadratureConfig q;
            q.det_points = se_det;
            q.mc_samples = se_mc;
            q.seed = se_seed ? *se_seed : 1;
            json cfg{{"subcommand", "series"},
                     {"kernel", kernel_to_json(k)},
                     {"t", se_t},
                     {"s", se_s},
                     {"nmax", se_nmax},
                     {"det_points", se_det},
                     {"mc_samples", se_mc},
                     {"seed", q.seed}};
            const SeriesApprox sa = series_partial_sum(k, se_t, se_s, se_nmax, q);
            std::ostringstream os;
            os << csv_preamble(cfg) << "n,B_n,stderr\n";
            for (int n = 0; n <= sa.n_max; ++n)
                os << n << ',' << g17(sa.terms[n]) << ',' << g17(sa.term_stderr[n]) << "\n";
            os << "# total=" << g17(sa.total) << "\n";
            os << "# stderr_total=" << g17(sa.stderr_total) << "\n";
            os << "# tail_bound=" << g17(sa.tail_bound) << "\n";
            write_text(series_a.out, os.str());
        } else if (lambdac->parsed()) {
            const KernelSpec k = parse_kernel(lambdac_a);
            json cfg{{"subcommand", "lambdac"},
                     {"kernel", kernel_to_json(k)},
                     {"T", lc_T},
                     {"h", lc_h}};
            SpectralReport rep;
            const std::string fam = family_name(k);
            if (fam == "constant") {
                const double C = diagonal_sup(k);
                rep.method = "constant-growth-rate";
                rep.lambda_c = 2.0 * std::sqrt(C);
                rep.residual = 0.0;
            } else if (fam == "exponential") {
                const auto* e = k.get_if<kernels::Exponential>();
                rep = lambda_c_exponential(e->c, e->delta);
            } else if (fam == "power_law") {
                rep = lambda_c_vanishing(k, solve_stationary(k, lc_T, lc_h));
            } else if (fam == "mixed_exponential") {
                const auto* m = k.get_if<kernels::MixedExponential>();
                rep = lambda_c_mixed(m->c2, m->c1, m->delta, solve_stationary(k, lc_T, lc_h));
            } else if (fam == "algebraic_mixed") {
                const auto* m = k.get_if<kernels::AlgebraicMixed>();
                rep = lambda_c_algebraic(m->c2, m->c1, m->a, solve_stationary(k, lc_T, lc_h));
            } else {
                throw usage_error("lambdac: kernel family '" + fam +
                                  "' has no Lyapunov solver (stationary families only)");
            }
            json res{{"method", rep.method},
                     {"lambda_c", rep.lambda_c},
                     {"residual", rep.residual}};
            if (std::isfinite(rep.z)) res["z"] = rep.z;
            if (std::isfinite(rep.nu_c)) res["nu_c"] = rep.nu_c;
            if (std::isfinite(rep.A)) res["A"] = rep.A;
            write_text(lambdac_a.out, report_json(cfg, res).dump(2) + "\n");
        } else if (laplace->parsed()) {
            const KernelSpec k = parse_kernel(laplace_a);
            json cfg{{"subcommand", "laplace"},
                     {"kernel", kernel_to_json(k)},
                     {"lambda", lp_lambdas},
                     {"T", lp_T},
                     {"h", lp_h}};
            std::optional<KernelSpec> weight;
            if (!lp_weight.empty()) {
                weight = kernel_from_json_text(lp_weight);
                cfg["weight"] = kernel_to_json(*weight);
            }
            const auto sol = solve_stationary(k, lp_T, lp_h);
            const auto fit = fit_exponential_power(sol);
            std::ostringstream os;
            os << csv_preamble(cfg) << "lambda,Hhat\n";
            for (double lam : lp_lambdas) {
                const double v = weight ? laplace_of(sol, lam, *weight, fit)
                                        : laplace_of(sol, lam, fit);
                os << g17(lam) << ',' << g17(v) << "\n";
            }
            write_text(laplace_a.out, os.str());
        } else if (fitc->parsed()) {
            const KernelSpec k = parse_kernel(fit_a);
            const double mu = ft_mu ? *ft_mu : default_tilt(k);
            json cfg{{"subcommand", "fit"}, {"kernel", kernel_to_json(k)},
                     {"T", ft_T},           {"h", ft_h},
                     {"mu", mu}};
            const auto sol = solve_stationary(k, ft_T, ft_h, mu);
            FitWindow w = default_window(sol);
            if (!ft_window.empty()) w = {ft_window[0], ft_window[1]};
            cfg["window"] = {w.lo, w.hi};
            const auto fit = fit_exponential_power(sol, w);
            json res{{"lambda_hat", fit.lambda_hat},
                     {"p_hat", fit.p_hat},
                     {"lnA_hat", fit.lnA_hat},
                     {"rms", fit.rms},
                     {"spread",
                      {{"lambda", fit.spread_lambda},
                       {"p", fit.spread_p},
                       {"lnA", fit.spread_lnA}}}};
            write_text(fit_a.out, report_json(cfg, res).dump(2) + "\n");
        } else if (flat->parsed()) {
            const KernelSpec k = parse_kernel(flat_a);
            json cfg{{"subcommand", "flatcheck"},
                     {"kernel", kernel_to_json(k)},
                     {"t", fl_ts},
                     {"gap", fl_gap},
                     {"h", fl_h}};
            const auto table = flat_kernel_limit_check(k, fl_ts, fl_gap, fl_h);
            std::ostringstream os;
            os << csv_preamble(cfg) << "t,slope\n";
            for (const auto& [t, slope] : table) os << g17(t) << ',' << g17(slope) << "\n";
            write_text(flat_a.out, os.str());
        } else if (mc->parsed()) {
            const KernelSpec k = parse_kernel(mc_a);
            EnsembleConfig ecfg{k, mc_N, mc_S, mc_t0, mc_T, mc_h, *mc_seed};
            json cfg{{"subcommand", "mc"}, {"kernel", kernel_to_json(k)},
                     {"N", mc_N},          {"S", mc_S},
                     {"t0", mc_t0},        {"T", mc_T},
                     {"h", mc_h},          {"seed", *mc_seed}};
            const TraceEstimate est = evolve_trace(ecfg);
            std::ostringstream os;
            os << csv_preamble(cfg) << "s,mean,trace_stderr\n";
            for (std::size_t i = 0; i < est.times.size(); ++i)
                os << g17(est.times[i]) << ',' << g17(est.mean[i]) << ','
                   << g17(est.stderr_[i]) << "\n";
            write_text(mc_a.out, os.str());
        } else { // validate
            return run_validate();
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const kraichnan::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
