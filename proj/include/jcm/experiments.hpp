// experiments.hpp -- top-level scenarios: trace-distance trajectories,
// closed-form special cases, the finite-window supremum search, the
// zero-temperature correlation plateaus and dips, and sweep engines over
// the coupling and temperature axes.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "jcm/distance.hpp"
#include "jcm/dynamics.hpp"
#include "jcm/model.hpp"
#include "jcm/states.hpp"

namespace jcm {

struct TimeGrid {
    double t_max = 200.0;
    int steps = 20000;
    enum class Refine { none, local } refine = Refine::local;

    void validate() const {
        if (!(t_max > 0.0)) throw std::invalid_argument("TimeGrid: t_max must be positive");
        if (steps < 2) throw std::invalid_argument("TimeGrid: steps must be >= 2");
    }
};

// Labeled grid of computed scalars for CSV export. values is row-major over
// (g index, column index); for (g, beta) sweeps the columns are the beta
// grid, for the level diagram they are the energy branches.
struct SweepTable {
    std::string quantity;
    std::vector<std::string> columns;  // labels of the value columns
    std::vector<double> g_grid;
    std::vector<double> beta_grid;  // empty when the quantity has no beta axis
    std::vector<double> values;
    double omega = 0.0;
    double delta = 0.0;

    int n_cols() const { return static_cast<int>(columns.size()); }
    double value(int ig, int ic) const { return values[static_cast<std::size_t>(ig) * columns.size() + ic]; }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) throw std::invalid_argument("linspace: steps must be >= 1");
    std::vector<double> v(steps);
    if (steps == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < steps; ++i) v[i] = lo + (hi - lo) * i / (steps - 1);
    return v;
}

// D(t) between the reduced states evolved from r1 and r2.
inline std::vector<std::pair<double, double>> distance_trajectory(const TotalState& r1,
                                                                  const TotalState& r2,
                                                                  const TimeGrid& grid,
                                                                  const ModelParams& p) {
    grid.validate();
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.steps + 1);
    for (int i = 0; i <= grid.steps; ++i) {
        const double t = grid.t_max * i / grid.steps;
        out.emplace_back(t, trace_distance_qubit(reduced_state_at(r1, t, p),
                                                 reduced_state_at(r2, t, p)));
    }
    return out;
}

// Distance between the evolution of the pure state alpha|0,n> + beta|1,m>
// and the evolution of the product of its marginals, in closed form.
inline double pure_state_distance_closed_form(complex alpha, complex beta_amp, int n, int m,
                                              double t, const ModelParams& p) {
    if (n < 0 || m < 0)
        throw std::invalid_argument("pure_state_distance_closed_form: n, m must be nonnegative");
    const double ab2 = std::norm(alpha) * std::norm(beta_amp);
    const auto cmag2 = [&](int k) { return std::norm(jc_coefficients(k, t, p).c); };
    double val = ab2 * (cmag2(m + 1) - cmag2(n) + cmag2(m) - cmag2(n + 1));
    if (m == n - 1) {
        const JCCoefficients k = jc_coefficients(n, t, p);
        val += 2.0 * std::sqrt(static_cast<double>(n)) *
               (std::conj(alpha) * beta_amp * std::conj(k.d) * k.c).real();
    }
    return std::abs(val);
}

// Large-n form of the same distance, valid for n, m >> Delta^2 / 4g^2.
inline double pure_state_asymptotic(complex alpha, complex beta_amp, int n, int m, double t,
                                    const ModelParams& p) {
    if (n < 0 || m < 0)
        throw std::invalid_argument("pure_state_asymptotic: n, m must be nonnegative");
    const double delta = p.delta();
    if (p.g > 0.0 && delta != 0.0) {
        const double floor_n = 25.0 * delta * delta / (4.0 * p.g * p.g);
        if (n < floor_n || m < floor_n)
            std::cerr << "jcm: pure_state_asymptotic called with n or m below "
                      << floor_n << "; the large-n form is unreliable here\n";
    }
    const double ab2 = std::norm(alpha) * std::norm(beta_amp);
    const auto cos2 = [&](int k) {
        const double x = std::cos(p.g * std::sqrt(static_cast<double>(k)) * t);
        return x * x;
    };
    double val = ab2 * (cos2(m + 1) - cos2(n) + cos2(m) - cos2(n + 1));
    if (m == n - 1)
        val -= (std::conj(alpha) * beta_amp).imag() *
               std::sin(2.0 * p.g * std::sqrt(static_cast<double>(n)) * t);
    return std::abs(val);
}

// Correlations of the pure state alpha|0,n> + beta|1,m> for n != m.
inline double pure_state_bound(complex alpha, complex beta_amp) {
    const double ab = std::abs(alpha) * std::abs(beta_amp);
    return ab * ab + ab;
}

// Trace distance between the (stationary) Gibbs reduced state and the
// reduced state evolved from the product of the Gibbs marginals. Only the
// thermal populations enter.
inline double gibbs_product_distance(const GibbsData& gd, double t, const ModelParams& p) {
    std::vector<complex> c, d;
    detail::jc_coefficient_table(gd.n_max + 1, t, p, c, d);
    double sum1 = 0.0, sum2 = 0.0;
    for (int n = 0; n <= gd.n_max; ++n) {
        sum1 += (n + 1.0) * gd.field_diag[n] * std::norm(d[n + 1]);
        sum2 += n * gd.field_diag[n] * std::norm(d[n]);
    }
    return std::abs((gd.rho00 - 1.0) * sum1 + gd.rho00 * sum2);
}

inline double gibbs_product_distance(const ModelParams& p, double beta, double t,
                                     double tail_tol = default_tail_tol) {
    return gibbs_product_distance(gibbs_data(p, beta, tail_tol), t, p);
}

struct Supremum {
    double t_star = 0.0;
    double d_star = 0.0;
};

namespace detail {

// Golden-section maximization on [lo, hi] to absolute time tolerance.
inline Supremum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                   double tol = 1e-6) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double tm = 0.5 * (a + b);
    return {tm, f(tm)};
}

}  // namespace detail

// Supremum of the evaluator over the finite window [0, t_max]: coarse grid
// scan, then golden-section refinement around the best local maxima. The
// result is never below the best grid sample.
inline Supremum supremum_over_time(const std::function<double(double)>& evaluator,
                                   const TimeGrid& grid) {
    grid.validate();
    const int n = grid.steps;
    const double dt = grid.t_max / n;
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) {
        v[i] = evaluator(i * dt);
        if (!std::isfinite(v[i]))
            throw std::runtime_error("supremum_over_time: evaluator returned a non-finite value at t = " +
                                     std::to_string(i * dt));
    }
    Supremum best;
    for (int i = 0; i <= n; ++i)
        if (v[i] > best.d_star) best = {i * dt, v[i]};

    if (grid.refine == TimeGrid::Refine::local) {
        std::vector<int> peaks;
        for (int i = 1; i < n; ++i)
            if (v[i] >= v[i - 1] && v[i] >= v[i + 1]) peaks.push_back(i);
        std::sort(peaks.begin(), peaks.end(), [&v](int a, int b) { return v[a] > v[b]; });
        const int refine_count = std::min<int>(8, static_cast<int>(peaks.size()));
        for (int k = 0; k < refine_count; ++k) {
            const int i = peaks[k];
            const Supremum r = detail::golden_section_max(evaluator, (i - 1) * dt, (i + 1) * dt);
            if (r.d_star > best.d_star) best = r;
        }
    }
    return best;
}

// Estimate of the Gibbs-versus-product distance deep in the strong-coupling,
// low-temperature regime with ground index k; bounded by 1/4.
inline double large_coupling_estimate(int k, double g, double t) {
    if (k < 1) throw std::invalid_argument("large_coupling_estimate: k must be >= 1");
    const double sk = std::sqrt(static_cast<double>(k));
    return 0.25 * std::abs(std::sin(2.0 * sk * g * t) * std::sin(g * t / sk));
}

// Correlations of the zero-temperature (ground-state) Gibbs limit as a
// function of the coupling: zero below the first crossing, the dressed
// plateau a_i^2 b_i^2 + a_i b_i between crossings, and the two-state-mixture
// value exactly at a crossing.
inline double zero_temperature_correlations(const ModelParams& p, double g) {
    const GroundLevel gl = ground_level_index(g, p);
    const ModelParams q = p.with_coupling(g);
    if (gl.kind == GroundKind::unique) {
        if (gl.index == 0) return 0.0;
        const DressedLevel d = dressed_level(gl.index, q);
        return d.a * d.a * d.b * d.b + d.a * d.b;
    }
    // Degenerate ground space at the crossing g = g_i: equal mixture of
    // |Phi_{i-1}^-> and |Phi_i^->. The i = 1 case is covered by the vacuum
    // convention (a_0, b_0) = (1, 0).
    const int i = gl.index;
    double am, bm, ep, em;
    dressed_amplitudes(i - 1, q, am, bm, ep, em);
    const DressedLevel di = dressed_level(i, q);
    const double a1 = am * am, b1 = bm * bm;
    const double a2 = di.a * di.a, b2 = di.b * di.b;

    const double alpha = 0.25 * b1 * (a1 + a2);
    const double gamma1 = 0.5 * b1 - 0.25 * b1 * (b1 + b2);
    const double delta1 = 0.5 * a1 - 0.25 * (a1 + a2) * (a1 + b2);
    const double eps1 = -0.5 * am * bm;
    const double gamma2 = 0.5 * b2 - 0.25 * (b1 + b2) * (a1 + b2);
    const double delta2 = 0.5 * a2 - 0.25 * a2 * (a1 + a2);
    const double eps2 = -0.5 * di.a * di.b;
    const double chi = 0.25 * a2 * (b1 + b2);

    const auto block = [](double ga, double de, double ep_) {
        const double s = std::sqrt((ga - de) * (ga - de) + 4.0 * ep_ * ep_);
        return 0.5 * std::abs(ga + de + s) + 0.5 * std::abs(ga + de - s);
    };
    return 0.5 * (alpha + block(gamma1, delta1, eps1) + block(gamma2, delta2, eps2) + chi);
}

// E_n^-(g) branches over a coupling grid; row n = 0 is identically zero.
inline SweepTable level_diagram(const ModelParams& p, const std::vector<double>& g_grid,
                                int n_levels) {
    if (n_levels < 0) throw std::invalid_argument("level_diagram: n_levels must be >= 0");
    SweepTable tab;
    tab.quantity = "level_diagram";
    tab.g_grid = g_grid;
    tab.omega = p.omega;
    tab.delta = p.delta();
    for (int n = 0; n <= n_levels; ++n) tab.columns.push_back("E" + std::to_string(n));
    tab.values.resize(g_grid.size() * (n_levels + 1));
    for (std::size_t ig = 0; ig < g_grid.size(); ++ig) {
        const ModelParams q = p.with_coupling(g_grid[ig]);
        tab.values[ig * (n_levels + 1)] = 0.0;
        for (int n = 1; n <= n_levels; ++n)
            tab.values[ig * (n_levels + 1) + n] = dressed_level(n, q).e_minus;
    }
    return tab;
}

enum class SweepQuantity {
    gibbs_correlations,
    supremum_of_gibbs_product_distance,
    zero_t_correlations,
};

inline const char* to_string(SweepQuantity q) {
    switch (q) {
        case SweepQuantity::gibbs_correlations: return "gibbs_correlations";
        case SweepQuantity::supremum_of_gibbs_product_distance:
            return "supremum_of_gibbs_product_distance";
        case SweepQuantity::zero_t_correlations: return "zero_t_correlations";
    }
    return "unknown";
}

namespace detail {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Results are
// written by index, so execution order does not matter.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex err_mutex;
    const int nw = std::min(threads, count);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!failed.exchange(true)) first_error = e.what();
                    return;
                }
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (failed.load()) throw std::runtime_error(first_error);
}

}  // namespace detail

// Evaluates the chosen scalar over the Cartesian (g, beta) grid. Grid points
// are independent pure evaluations; per-point failures are reported with
// their grid coordinates.
inline SweepTable sweep(SweepQuantity quantity, const std::vector<double>& g_grid,
                        const std::vector<double>& beta_grid, const ModelParams& p,
                        const TimeGrid& time_grid, double tail_tol = default_tail_tol,
                        int threads = 1) {
    if (g_grid.empty()) throw std::invalid_argument("sweep: empty g grid");
    const bool has_beta = quantity != SweepQuantity::zero_t_correlations;
    if (has_beta && beta_grid.empty()) throw std::invalid_argument("sweep: empty beta grid");

    SweepTable tab;
    tab.quantity = to_string(quantity);
    tab.g_grid = g_grid;
    tab.omega = p.omega;
    tab.delta = p.delta();
    if (has_beta) {
        tab.beta_grid = beta_grid;
        for (double b : beta_grid) {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "beta=%.12g", b);
            tab.columns.emplace_back(buf);
        }
    } else {
        tab.columns.emplace_back("value");
    }
    const int ncols = tab.n_cols();
    const int count = static_cast<int>(g_grid.size()) * ncols;
    tab.values.assign(count, 0.0);

    detail::parallel_for(count, threads, [&](int idx) {
        const int ig = idx / ncols;
        const int ib = idx % ncols;
        const double g = g_grid[ig];
        try {
            double v = 0.0;
            switch (quantity) {
                case SweepQuantity::gibbs_correlations:
                    v = gibbs_correlations(p.with_coupling(g), beta_grid[ib], tail_tol);
                    break;
                case SweepQuantity::supremum_of_gibbs_product_distance: {
                    const ModelParams q = p.with_coupling(g);
                    const GibbsData gd = gibbs_data(q, beta_grid[ib], tail_tol);
                    v = supremum_over_time(
                            [&](double t) { return gibbs_product_distance(gd, t, q); }, time_grid)
                            .d_star;
                    break;
                }
                case SweepQuantity::zero_t_correlations:
                    v = zero_temperature_correlations(p, g);
                    break;
            }
            tab.values[idx] = v;
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep failed at g = " + std::to_string(g) +
                                     (has_beta ? ", beta = " + std::to_string(beta_grid[ib]) : std::string{}) +
                                     ": " + e.what());
        }
    });
    return tab;
}

}  // namespace jcm
