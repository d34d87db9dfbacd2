// cli.hpp -- command-line front end: scenario selection, parameter plumbing,
// CSV emission and the oracle-check harness. Kept in a header so the test
// suite can drive the exact surface the binary exposes.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "jcm/distance.hpp"
#include "jcm/dynamics.hpp"
#include "jcm/experiments.hpp"
#include "jcm/model.hpp"
#include "jcm/oracle.hpp"
#include "jcm/random.hpp"
#include "jcm/states.hpp"

namespace jcm::cli {

namespace detail {

inline constexpr double unset = std::numeric_limits<double>::quiet_NaN();

// 12 significant digits: below every test tolerance, above noise.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvOut {
public:
    explicit CsvOut(const std::string& path) {
        if (path.empty() || path == "-") {
            os_ = &std::cout;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }

    void comment(const std::string& line) { *os_ << "# " << line << "\n"; }

    void kv(const std::string& key, const std::string& value) { comment(key + "=" + value); }
    void kv(const std::string& key, double value) { kv(key, fmt(value)); }
    void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }

    void line(const std::string& s) { *os_ << s << "\n"; }

    void row(const std::vector<double>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ',';
            s += fmt(cells[i]);
        }
        line(s);
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_ = nullptr;
};

inline std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Flat key=value configuration files. Lines starting with '#' are comments.
// The pairs are appended as "--key value" arguments unless the same option
// was already given on the command line, so explicit flags win.
inline std::vector<std::string> apply_flat_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw CLI::FileError("could not read config file '" + path + "'");

    std::set<std::string> given;
    for (const std::string& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));

    std::vector<std::string> out = args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::FileError("config file '" + path + "' line " + std::to_string(lineno) +
                                 ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") continue;
        if (given.count("--" + key)) continue;  // command line overrides the file
        if (value == "true" || value == "false") {
            if (value == "true") out.push_back("--" + key);
        } else {
            out.push_back("--" + key);
            out.push_back(value);
        }
    }
    return out;
}

// requested <= 0 means "pick for me"; JCM_THREADS caps the result either way
inline int resolve_threads(int requested) {
    const unsigned hc = std::thread::hardware_concurrency();
    int n = requested > 0 ? requested : (hc == 0 ? 1 : static_cast<int>(hc));
    if (const char* env = std::getenv("JCM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

inline void stamp(CsvOut& out, const std::string& command, bool deterministic) {
    out.comment("jcm " + command);
    if (!deterministic) out.comment("generated: " + timestamp_utc());
}

struct OracleCheck {
    std::string name;
    double max_deviation;
    double tolerance;
};

inline std::vector<OracleCheck> run_oracle_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<OracleCheck> checks;
    const auto wanted = [&suite](const char* name) { return suite == "all" || suite == name; };
    const ModelParams p = ModelParams::detuned(3.0, 0.5, 1.0);

    if (wanted("unitarity")) {
        const int n_max = 12;
        double dev = 0.0;
        for (double t : {0.0, 0.7, 3.3, 17.9}) {
            const ComplexMatrix u = oracle::oracle_unitary_interaction(p, t, n_max);
            dev = std::max(dev, max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim())));
        }
        checks.push_back({"unitarity", dev, 1e-10});
    }

    if (wanted("coefficients")) {
        const int n_max = 12;
        double dev = 0.0;
        for (double t : {0.4, 2.9, 11.3}) {
            const ComplexMatrix u = oracle::oracle_unitary_interaction(p, t, n_max);
            for (int n = 1; n <= n_max - 2; ++n) {
                const JCCoefficients k = jc_coefficients(n, t, p);
                const double sq = std::sqrt(static_cast<double>(n));
                dev = std::max(dev, std::abs(u(TotalState::index(1, n - 1), TotalState::index(1, n - 1)) - k.c));
                dev = std::max(dev, std::abs(u(TotalState::index(0, n), TotalState::index(0, n)) - std::conj(k.c)));
                dev = std::max(dev, std::abs(u(TotalState::index(1, n - 1), TotalState::index(0, n)) - sq * k.d));
            }
        }
        checks.push_back({"coefficients", dev, 1e-9});
    }

    if (wanted("gibbs")) {
        double dev = 0.0;
        for (double g : {1.7, 5.5, 8.2})
            for (double beta : {1.0, 5.0, 20.0}) {
                const ModelParams q = ModelParams::detuned(3.0, 0.5, g);
                const TotalState lib = gibbs_state(q, beta);
                const TotalState ora = oracle::oracle_gibbs(q, beta, lib.n_max() + 8);
                for (int n = 0; n <= lib.n_max(); ++n)
                    for (int alpha = 0; alpha < 2; ++alpha)
                        for (int m = 0; m <= lib.n_max(); ++m)
                            for (int b = 0; b < 2; ++b)
                                dev = std::max(dev, std::abs(lib.coeff(alpha, n, b, m) -
                                                             ora.coeff(alpha, n, b, m)));
            }
        checks.push_back({"gibbs", dev, 1e-8});
    }

    if (wanted("dynamics")) {
        Rng rng(seed);
        double dev = 0.0;
        for (int k = 0; k < 10; ++k) {
            const TotalState rho0 = random_pure_mixture(rng, 4, 10);
            for (int it = 1; it <= 10; ++it) {
                const double t = 2.0 * it;
                const QubitState a = reduced_state_at(rho0, t, p);
                const QubitState b = oracle::oracle_reduced_state(rho0, t, p, rho0.n_max() + 8);
                dev = std::max({dev, std::abs(a.rho11 - b.rho11), std::abs(a.rho00 - b.rho00),
                                std::abs(a.rho10 - b.rho10)});
            }
        }
        checks.push_back({"dynamics", dev, 1e-9});
    }

    if (wanted("stationarity")) {
        const ModelParams q = ModelParams::detuned(3.0, 0.5, 6.0);
        const TotalState gibbs = gibbs_state(q, 5.0);
        const QubitState q0 = marginals(gibbs).first;
        double dev = 0.0;
        for (int i = 0; i <= 50; ++i) {
            const QubitState qt = reduced_state_at(gibbs, 4.0 * i, q);
            dev = std::max(dev, trace_distance_qubit(qt, q0));
        }
        checks.push_back({"stationarity", dev, 1e-8});
    }

    if (wanted("energies")) {
        double dev = 0.0;
        for (double g : {2.0, 5.5}) {
            const ModelParams q = ModelParams::detuned(3.0, 0.5, g);
            const HermitianMatrix h = oracle::dense_hamiltonian(q, 30);
            for (int n = 1; n <= 28; ++n) {
                ComplexMatrix blk(2);
                const int i0 = TotalState::index(1, n - 1), i1 = TotalState::index(0, n);
                blk(0, 0) = h(i0, i0);
                blk(0, 1) = h(i0, i1);
                blk(1, 0) = h(i1, i0);
                blk(1, 1) = h(i1, i1);
                const std::vector<double> ev = hermitian_eigenvalues(HermitianMatrix(blk));
                const DressedLevel d = dressed_level(n, q);
                dev = std::max({dev, std::abs(ev[0] - d.e_minus), std::abs(ev[1] - d.e_plus)});
            }
        }
        checks.push_back({"energies", dev, 1e-10});
    }

    if (checks.empty()) throw CLI::ValidationError("--suite", "unknown suite '" + suite + "'");
    return checks;
}

}  // namespace detail

// Entry point shared by the binary and the tests. args excludes the program
// name. Exit codes: 0 success, 1 oracle-check failure, 2 usage error.
inline int run(std::vector<std::string> args) {
    CLI::App app{"Exact Jaynes-Cummings dynamics with trace-distance diagnostics"};
    app.require_subcommand(1);

    // ---- levels ----
    auto* levels = app.add_subcommand("levels", "dressed energy branches E_n^-(g)");
    struct {
        double omega = 3.0, delta = 0.5, g_min = 0.0, g_max = 12.0;
        int g_steps = 600, n_levels = 4;
        std::string out;
        bool deterministic = false;
    } lv;
    levels->add_option("--omega", lv.omega, "field mode frequency");
    levels->add_option("--delta", lv.delta, "detuning omega0 - omega");
    levels->add_option("--g-min", lv.g_min);
    levels->add_option("--g-max", lv.g_max);
    levels->add_option("--g-steps", lv.g_steps)->check(CLI::PositiveNumber);
    levels->add_option("--n-levels", lv.n_levels)->check(CLI::PositiveNumber);
    levels->add_option("--out", lv.out, "output CSV path, '-' for stdout")->required();
    levels->add_flag("--deterministic", lv.deterministic, "suppress the timestamp comment");

    // ---- gibbs-corr ----
    auto* gc = app.add_subcommand("gibbs-corr",
                                  "correlations of the thermal state over a (g, beta) grid");
    struct {
        double omega = 3.0, delta = 0.5;
        double g = detail::unset, g_min = 0.0, g_max = 12.0;
        int g_steps = 240;
        double beta = detail::unset, beta_min = 0.5, beta_max = 10.0;
        int beta_steps = 40;
        double tail_tol = default_tail_tol;
        int threads = 0;
        std::string out;
        bool deterministic = false;
    } gcv;
    gc->add_option("--omega", gcv.omega);
    gc->add_option("--delta", gcv.delta);
    gc->add_option("--g", gcv.g, "single coupling value (overrides the g grid)");
    gc->add_option("--g-min", gcv.g_min);
    gc->add_option("--g-max", gcv.g_max);
    gc->add_option("--g-steps", gcv.g_steps)->check(CLI::PositiveNumber);
    gc->add_option("--beta", gcv.beta, "single inverse temperature (overrides the beta grid)");
    gc->add_option("--beta-min", gcv.beta_min);
    gc->add_option("--beta-max", gcv.beta_max);
    gc->add_option("--beta-steps", gcv.beta_steps)->check(CLI::PositiveNumber);
    gc->add_option("--tail-tol", gcv.tail_tol, "admitted thermal tail weight");
    gc->add_option("--threads", gcv.threads, "0 = JCM_THREADS or hardware");
    gc->add_option("--out", gcv.out)->required();
    gc->add_flag("--deterministic", gcv.deterministic);

    // ---- trajectory ----
    auto* tr = app.add_subcommand("trajectory", "trace distance between evolved reduced states");
    struct {
        std::string scenario;
        double omega = 3.0, delta = detail::unset, g = detail::unset, beta = detail::unset;
        double t_max = 200.0;
        int steps = 20000;
        double alpha1_sq = 7.0 / 9.0, alpha2_sq = 8.0 / 9.0;
        int n = -1;
        double tail_tol = default_tail_tol;
        std::string state1, state2, out;
        bool deterministic = false;
    } trv;
    tr->add_option("--scenario", trv.scenario)
        ->required()
        ->check(CLI::IsMember({"fig1a", "fig1b", "gibbs-product", "custom"}));
    tr->add_option("--omega", trv.omega);
    tr->add_option("--delta", trv.delta);
    tr->add_option("--g", trv.g);
    tr->add_option("--beta", trv.beta, "inverse temperature (gibbs-product)");
    tr->add_option("--t-max", trv.t_max)->check(CLI::PositiveNumber);
    tr->add_option("--steps", trv.steps)->check(CLI::PositiveNumber);
    tr->add_option("--alpha1-sq", trv.alpha1_sq, "population weight of the first mixture")
        ->check(CLI::Range(0.0, 1.0));
    tr->add_option("--alpha2-sq", trv.alpha2_sq, "population weight of the second mixture")
        ->check(CLI::Range(0.0, 1.0));
    tr->add_option("--n", trv.n, "Fock level of the scenario states");
    tr->add_option("--tail-tol", trv.tail_tol);
    tr->add_option("--state1", trv.state1, "state dump for the custom scenario");
    tr->add_option("--state2", trv.state2, "state dump for the custom scenario");
    tr->add_option("--out", trv.out)->required();
    tr->add_flag("--deterministic", trv.deterministic);

    // ---- supremum ----
    auto* sup = app.add_subcommand(
        "supremum", "finite-window supremum of the Gibbs-versus-product trace distance");
    struct {
        double omega = 3.0, delta = 0.5;
        double g = detail::unset, g_min = 0.5, g_max = 12.0;
        int g_steps = 120;
        double beta = detail::unset, beta_min = 0.5, beta_max = 10.0;
        int beta_steps = 20;
        double t_max = 200.0;
        int steps = 20000;
        double tail_tol = default_tail_tol;
        int threads = 0;
        std::string out;
        bool deterministic = false;
    } sv;
    sup->add_option("--omega", sv.omega);
    sup->add_option("--delta", sv.delta);
    sup->add_option("--g", sv.g);
    sup->add_option("--g-min", sv.g_min);
    sup->add_option("--g-max", sv.g_max);
    sup->add_option("--g-steps", sv.g_steps)->check(CLI::PositiveNumber);
    sup->add_option("--beta", sv.beta);
    sup->add_option("--beta-min", sv.beta_min);
    sup->add_option("--beta-max", sv.beta_max);
    sup->add_option("--beta-steps", sv.beta_steps)->check(CLI::PositiveNumber);
    sup->add_option("--t-max", sv.t_max)->check(CLI::PositiveNumber);
    sup->add_option("--steps", sv.steps)->check(CLI::PositiveNumber);
    sup->add_option("--tail-tol", sv.tail_tol);
    sup->add_option("--threads", sv.threads);
    sup->add_option("--out", sv.out)->required();
    sup->add_flag("--deterministic", sv.deterministic);

    // ---- zero-t ----
    auto* zt = app.add_subcommand("zero-t",
                                  "zero-temperature correlation plateaus and crossing dips");
    struct {
        double omega = 3.0, delta = 0.5, g_min = 0.0, g_max = 12.0;
        int g_steps = 600;
        std::string out;
        bool deterministic = false;
    } zv;
    zt->add_option("--omega", zv.omega);
    zt->add_option("--delta", zv.delta);
    zt->add_option("--g-min", zv.g_min);
    zt->add_option("--g-max", zv.g_max);
    zt->add_option("--g-steps", zv.g_steps)->check(CLI::PositiveNumber);
    zt->add_option("--out", zv.out)->required();
    zt->add_flag("--deterministic", zv.deterministic);

    // ---- oracle-check ----
    auto* oc = app.add_subcommand("oracle-check",
                                  "compare the analytic path against the dense-matrix oracle");
    struct {
        std::string suite = "all";
        std::string out = "-";
        std::uint64_t seed = 20110517;
        bool deterministic = false;
    } ov;
    oc->add_option("--suite", ov.suite,
                   "all|unitarity|coefficients|gibbs|dynamics|stationarity|energies");
    oc->add_option("--out", ov.out, "report CSV path, '-' for stdout");
    oc->add_option("--seed", ov.seed, "seed for the random-state checks");
    oc->add_flag("--deterministic", ov.deterministic);

    std::string config_path;
    for (CLI::App* sub : {levels, gc, tr, sup, zt, oc})
        sub->add_option("--config", config_path,
                        "flat key=value configuration file; flags override it");

    try {
        args = detail::apply_flat_config(args);
    } catch (const CLI::Error& e) {
        std::cerr << "jcm: " << e.what() << "\n";
        return 2;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*levels) {
            detail::CsvOut out(lv.out);
            detail::stamp(out, "levels", lv.deterministic);
            out.kv("omega", lv.omega);
            out.kv("delta", lv.delta);
            out.kv("g_min", lv.g_min);
            out.kv("g_max", lv.g_max);
            out.kv("g_steps", lv.g_steps);
            out.kv("n_levels", lv.n_levels);
            const ModelParams p = ModelParams::detuned(lv.omega, lv.delta, 0.0);
            const SweepTable tab =
                level_diagram(p, linspace(lv.g_min, lv.g_max, lv.g_steps), lv.n_levels);
            std::string header = "g";
            for (int n = 1; n <= lv.n_levels; ++n) header += ",E" + std::to_string(n);
            out.line(header);
            for (std::size_t ig = 0; ig < tab.g_grid.size(); ++ig) {
                std::vector<double> cells{tab.g_grid[ig]};
                for (int n = 1; n <= lv.n_levels; ++n) cells.push_back(tab.value(ig, n));
                out.row(cells);
            }
            return 0;
        }

        const auto write_sweep_csv = [](detail::CsvOut& out, const SweepTable& tab) {
            out.line("g,beta,value");
            for (std::size_t ig = 0; ig < tab.g_grid.size(); ++ig)
                for (std::size_t ib = 0; ib < tab.beta_grid.size(); ++ib)
                    out.row({tab.g_grid[ig], tab.beta_grid[ib],
                             tab.value(static_cast<int>(ig), static_cast<int>(ib))});
        };

        if (*gc) {
            const std::vector<double> g_grid = std::isnan(gcv.g)
                                                   ? linspace(gcv.g_min, gcv.g_max, gcv.g_steps)
                                                   : std::vector<double>{gcv.g};
            const std::vector<double> beta_grid =
                std::isnan(gcv.beta) ? linspace(gcv.beta_min, gcv.beta_max, gcv.beta_steps)
                                     : std::vector<double>{gcv.beta};
            const int threads = detail::resolve_threads(gcv.threads);
            detail::CsvOut out(gcv.out);
            detail::stamp(out, "gibbs-corr", gcv.deterministic);
            out.kv("omega", gcv.omega);
            out.kv("delta", gcv.delta);
            out.kv("g_grid", std::to_string(g_grid.size()) + " points in [" +
                                 detail::fmt(g_grid.front()) + "," + detail::fmt(g_grid.back()) + "]");
            out.kv("beta_grid", std::to_string(beta_grid.size()) + " points in [" +
                                    detail::fmt(beta_grid.front()) + "," +
                                    detail::fmt(beta_grid.back()) + "]");
            out.kv("tail_tol", gcv.tail_tol);
            out.kv("threads", threads);
            const ModelParams p = ModelParams::detuned(gcv.omega, gcv.delta, 0.0);
            write_sweep_csv(out, sweep(SweepQuantity::gibbs_correlations, g_grid, beta_grid, p,
                                       TimeGrid{}, gcv.tail_tol, threads));
            return 0;
        }

        if (*sup) {
            const std::vector<double> g_grid = std::isnan(sv.g)
                                                   ? linspace(sv.g_min, sv.g_max, sv.g_steps)
                                                   : std::vector<double>{sv.g};
            const std::vector<double> beta_grid =
                std::isnan(sv.beta) ? linspace(sv.beta_min, sv.beta_max, sv.beta_steps)
                                    : std::vector<double>{sv.beta};
            const int threads = detail::resolve_threads(sv.threads);
            TimeGrid tg;
            tg.t_max = sv.t_max;
            tg.steps = sv.steps;
            detail::CsvOut out(sv.out);
            detail::stamp(out, "supremum", sv.deterministic);
            out.kv("omega", sv.omega);
            out.kv("delta", sv.delta);
            out.kv("g_grid", std::to_string(g_grid.size()) + " points in [" +
                                 detail::fmt(g_grid.front()) + "," + detail::fmt(g_grid.back()) + "]");
            out.kv("beta_grid", std::to_string(beta_grid.size()) + " points in [" +
                                    detail::fmt(beta_grid.front()) + "," +
                                    detail::fmt(beta_grid.back()) + "]");
            out.kv("tail_tol", sv.tail_tol);
            out.kv("threads", threads);
            out.kv("t_max", tg.t_max);
            out.kv("steps", tg.steps);
            const ModelParams p = ModelParams::detuned(sv.omega, sv.delta, 0.0);
            write_sweep_csv(out, sweep(SweepQuantity::supremum_of_gibbs_product_distance, g_grid,
                                       beta_grid, p, tg, sv.tail_tol, threads));
            return 0;
        }

        if (*zt) {
            detail::CsvOut out(zv.out);
            detail::stamp(out, "zero-t", zv.deterministic);
            out.kv("omega", zv.omega);
            out.kv("delta", zv.delta);
            out.kv("g_min", zv.g_min);
            out.kv("g_max", zv.g_max);
            out.kv("g_steps", zv.g_steps);
            const ModelParams p = ModelParams::detuned(zv.omega, zv.delta, 0.0);
            const std::vector<double> g_grid = linspace(zv.g_min, zv.g_max, zv.g_steps);
            const SweepTable tab =
                sweep(SweepQuantity::zero_t_correlations, g_grid, {}, p, TimeGrid{});
            out.line("g,beta,value");
            for (std::size_t ig = 0; ig < g_grid.size(); ++ig)
                out.row({g_grid[ig], std::numeric_limits<double>::infinity(),
                         tab.value(static_cast<int>(ig), 0)});
            return 0;
        }

        if (*tr) {
            TimeGrid grid;
            grid.t_max = trv.t_max;
            grid.steps = trv.steps;
            detail::CsvOut out(trv.out);
            detail::stamp(out, "trajectory " + trv.scenario, trv.deterministic);

            const auto fill = [](double& v, double dflt) {
                if (std::isnan(v)) v = dflt;
            };
            std::vector<std::pair<double, double>> series;
            double bound = 0.0;

            if (trv.scenario == "fig1a") {
                fill(trv.delta, 0.1);
                fill(trv.g, 1.0);
                if (trv.n < 0) trv.n = 7;
                if (trv.n < 1) throw CLI::ValidationError("--n", "fig1a needs n >= 1");
                const ModelParams p = ModelParams::detuned(trv.omega, trv.delta, trv.g);
                QubitState qs;
                qs.rho00 = trv.alpha1_sq;
                qs.rho11 = 1.0 - trv.alpha1_sq;
                const int n_max = trv.n + 1;
                const FieldState f1 = FieldState::number_mixture(
                    {{trv.n, trv.alpha1_sq}, {trv.n - 1, 1.0 - trv.alpha1_sq}}, n_max);
                const FieldState f2 = FieldState::number_mixture(
                    {{trv.n, trv.alpha2_sq}, {trv.n - 1, 1.0 - trv.alpha2_sq}}, n_max);
                const TotalState r1 = product_state(qs, f1);
                const TotalState r2 = product_state(qs, f2);
                bound = trace_distance_total(r1, r2);
                out.kv("omega", trv.omega);
                out.kv("delta", trv.delta);
                out.kv("g", trv.g);
                out.kv("n", trv.n);
                out.kv("alpha1_sq", trv.alpha1_sq);
                out.kv("alpha2_sq", trv.alpha2_sq);
                out.kv("bound", bound);
                series = distance_trajectory(r1, r2, grid, p);
            } else if (trv.scenario == "fig1b") {
                fill(trv.delta, 0.1);
                fill(trv.g, 1.0);
                if (trv.n < 0) trv.n = 1;
                if (trv.n < 1) throw CLI::ValidationError("--n", "fig1b needs n >= 1");
                const ModelParams p = ModelParams::detuned(trv.omega, trv.delta, trv.g);
                const complex alpha = complex{0.0, 1.0} * std::sqrt(3.0 / 7.0);
                const complex beta_amp = std::sqrt(4.0 / 7.0);
                const TotalState r1 = pure_entangled(alpha, beta_amp, trv.n, trv.n - 1);
                QubitState qs;
                qs.rho00 = std::norm(beta_amp);
                qs.rho11 = std::norm(alpha);
                const FieldState f2 = FieldState::number_mixture(
                    {{trv.n, std::norm(alpha)}, {trv.n - 1, std::norm(beta_amp)}}, trv.n + 1);
                const TotalState r2 = product_state(qs, f2);
                bound = trace_distance_total(r1, r2);
                out.kv("omega", trv.omega);
                out.kv("delta", trv.delta);
                out.kv("g", trv.g);
                out.kv("n", trv.n);
                out.kv("alpha_sq", std::norm(alpha));
                out.kv("beta_sq", std::norm(beta_amp));
                out.kv("bound", bound);
                series = distance_trajectory(r1, r2, grid, p);
            } else if (trv.scenario == "gibbs-product") {
                fill(trv.delta, 0.5);
                fill(trv.g, 6.0);
                fill(trv.beta, 5.0);
                const ModelParams p = ModelParams::detuned(trv.omega, trv.delta, trv.g);
                const GibbsData gd = gibbs_data(p, trv.beta, trv.tail_tol);
                bound = gibbs_correlations(p, trv.beta, trv.tail_tol);
                out.kv("omega", trv.omega);
                out.kv("delta", trv.delta);
                out.kv("g", trv.g);
                out.kv("beta", trv.beta);
                out.kv("tail_tol", trv.tail_tol);
                out.kv("n_max", gd.n_max);
                out.kv("bound", bound);
                series.reserve(grid.steps + 1);
                for (int i = 0; i <= grid.steps; ++i) {
                    const double t = grid.t_max * i / grid.steps;
                    series.emplace_back(t, gibbs_product_distance(gd, t, p));
                }
            } else {  // custom
                fill(trv.delta, 0.5);
                fill(trv.g, 1.0);
                if (trv.state1.empty() || trv.state2.empty())
                    throw CLI::ValidationError("--state1/--state2",
                                               "the custom scenario needs two state dumps");
                std::ifstream f1(trv.state1), f2(trv.state2);
                if (!f1) throw CLI::ValidationError("--state1", "cannot read '" + trv.state1 + "'");
                if (!f2) throw CLI::ValidationError("--state2", "cannot read '" + trv.state2 + "'");
                const TotalState r1 = read_text(f1);
                const TotalState r2 = read_text(f2);
                const ModelParams p = ModelParams::detuned(trv.omega, trv.delta, trv.g);
                bound = trace_distance_total(r1, r2);
                out.kv("omega", trv.omega);
                out.kv("delta", trv.delta);
                out.kv("g", trv.g);
                out.kv("state1", trv.state1);
                out.kv("state2", trv.state2);
                out.kv("bound", bound);
                series = distance_trajectory(r1, r2, grid, p);
            }
            out.kv("t_max", grid.t_max);
            out.kv("steps", grid.steps);
            out.line("t,distance,bound");
            for (const auto& [t, dist] : series) out.row({t, dist, bound});
            return 0;
        }

        if (*oc) {
            const std::vector<detail::OracleCheck> checks =
                detail::run_oracle_suite(ov.suite, ov.seed);
            detail::CsvOut out(ov.out);
            detail::stamp(out, "oracle-check " + ov.suite, ov.deterministic);
            out.kv("seed", std::to_string(ov.seed));
            out.line("check,max_deviation,tolerance,pass");
            bool all_pass = true;
            for (const detail::OracleCheck& c : checks) {
                const bool pass = c.max_deviation <= c.tolerance;
                all_pass = all_pass && pass;
                out.line(c.name + "," + detail::fmt(c.max_deviation) + "," +
                         detail::fmt(c.tolerance) + "," + (pass ? "1" : "0"));
            }
            return all_pass ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "jcm: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "jcm: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace jcm::cli
