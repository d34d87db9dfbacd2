#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"

using namespace jcm;
using jcm_test::seeded_rng;

namespace {

const double pi = std::acos(-1.0);

TotalState fig1b_state() {
    return pure_entangled(complex{0.0, std::sqrt(3.0 / 7.0)}, complex{std::sqrt(4.0 / 7.0), 0.0},
                          1, 0);
}

}  // namespace

TEST_CASE("distance trajectory basics") {
    const ModelParams p = ModelParams::detuned(3.0, 0.1, 1.0);
    TimeGrid grid;
    grid.t_max = 30.0;
    grid.steps = 600;

    SUBCASE("identical inputs give the zero trajectory") {
        const TotalState r = fig1b_state();
        for (const auto& [t, d] : distance_trajectory(r, r, grid, p)) {
            (void)t;
            CHECK(d <= 1e-13);
        }
    }
    SUBCASE("starts at the marginal distance and respects the total-state bound") {
        const TotalState r1 = fig1b_state();
        const TotalState r2 = product_of_marginals(r1);
        const double bound = correlations(r1);
        const auto series = distance_trajectory(r1, r2, grid, p);
        CHECK(series.front().second <= 1e-13);  // equal marginals at t = 0
        for (const auto& [t, d] : series) {
            (void)t;
            CHECK(d <= bound + 1e-9);
        }
    }
    SUBCASE("information gain is bounded by the outside information") {
        auto rng = seeded_rng(40);
        const TotalState r1 = random_total_state(rng, 3);
        const TotalState r2 = random_total_state(rng, 3);
        const double i_out = outside_information(r1, r2);
        const auto series = distance_trajectory(r1, r2, grid, p);
        const double d0 = series.front().second;
        for (const auto& [t, d] : series) {
            (void)t;
            CHECK(d - d0 <= i_out + 1e-9);
        }
    }
}

TEST_CASE("pure-state closed form") {
    const ModelParams p = ModelParams::detuned(3.0, 0.1, 1.0);
    const complex alpha{0.0, std::sqrt(3.0 / 7.0)};
    const complex beta{std::sqrt(4.0 / 7.0), 0.0};

    SUBCASE("zero at t = 0 and for product inputs") {
        CHECK(pure_state_distance_closed_form(alpha, beta, 1, 0, 0.0, p) == 0.0);
        for (double t : {0.3, 2.2, 9.9}) {
            CHECK(pure_state_distance_closed_form(complex{1.0, 0.0}, complex{}, 3, 1, t, p) <=
                  1e-14);
            CHECK(pure_state_distance_closed_form(complex{}, complex{1.0, 0.0}, 3, 1, t, p) <=
                  1e-14);
        }
    }
    SUBCASE("agrees with the generic path") {
        // every index relation with a coherence-free product evolution
        for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 0}, {3, 2}, {2, 5}, {2, 2}, {5, 2}}) {
            const TotalState r1 = pure_entangled(alpha, beta, n, m);
            const TotalState r2 = product_of_marginals(r1);
            for (int i = 1; i <= 25; ++i) {
                const double t = 0.71 * i;
                const double closed = pure_state_distance_closed_form(alpha, beta, n, m, t, p);
                const double generic = trace_distance_qubit(reduced_state_at(r1, t, p),
                                                            reduced_state_at(r2, t, p));
                CHECK(std::abs(closed - generic) <= 1e-10);
            }
        }
    }
}

TEST_CASE("pure-state asymptotic form") {
    const complex alpha{0.0, std::sqrt(3.0 / 7.0)};
    const complex beta{std::sqrt(4.0 / 7.0), 0.0};

    SUBCASE("coincides with the closed form at zero detuning") {
        const ModelParams p = ModelParams::detuned(3.0, 0.0, 1.0);
        for (int i = 0; i <= 40; ++i) {
            const double t = 0.43 * i;
            CHECK(std::abs(pure_state_asymptotic(alpha, beta, 4, 3, t, p) -
                           pure_state_distance_closed_form(alpha, beta, 4, 3, t, p)) <= 1e-13);
        }
    }
    SUBCASE("converges to the closed form deep in the ladder") {
        // The two almost-periodic signals dephase slowly (relative frequency
        // error ~ 1/n), so the comparison is between their attained suprema
        // and pointwise at fixed time for growing n.
        const ModelParams p = ModelParams::detuned(3.0, 1.0, 0.5);
        const int n = 110;  // >= 100 Delta^2 / (4 g^2) = 100
        TimeGrid grid;
        grid.t_max = 100.0;
        grid.steps = 20000;
        const double sup_closed =
            supremum_over_time([&](double t) {
                return pure_state_distance_closed_form(alpha, beta, n, n - 1, t, p);
            }, grid).d_star;
        const double sup_asympt =
            supremum_over_time([&](double t) {
                return pure_state_asymptotic(alpha, beta, n, n - 1, t, p);
            }, grid).d_star;
        CHECK(std::abs(sup_closed - sup_asympt) <= 5e-2 * sup_closed);

        // pointwise agreement at fixed time once the ladder index dwarfs the
        // frequency correction
        const double t_fixed = 1.0;
        const auto gap_at = [&](int big) {
            return std::abs(pure_state_asymptotic(alpha, beta, big, big - 1, t_fixed, p) -
                            pure_state_distance_closed_form(alpha, beta, big, big - 1, t_fixed, p));
        };
        CHECK(gap_at(200) <= 1e-1);
        CHECK(gap_at(20000) <= 1e-2);
    }
    SUBCASE("supremum for the resonant ladder pair reaches the interference value") {
        // m = n - 1 with Re{conj(alpha) beta} = 0
        const ModelParams p = ModelParams::detuned(3.0, 0.0, 1.0);
        CHECK(std::abs((std::conj(alpha) * beta).real()) < 1e-15);
        const double target = std::norm(alpha) * std::norm(beta) +
                              std::abs((std::conj(alpha) * beta).imag());
        TimeGrid grid;
        const Supremum s = supremum_over_time(
            [&](double t) { return pure_state_asymptotic(alpha, beta, 7, 6, t, p); }, grid);
        CHECK(s.d_star <= target + 1e-9);
        CHECK(s.d_star >= target - 1e-2);
    }
    SUBCASE("supremum for distant levels stays below twice the squared overlap") {
        const ModelParams p = ModelParams::detuned(3.0, 0.0, 1.0);
        TimeGrid grid;
        const Supremum s = supremum_over_time(
            [&](double t) { return pure_state_asymptotic(alpha, beta, 2, 5, t, p); }, grid);
        CHECK(s.d_star <= 2.0 * std::norm(alpha) * std::norm(beta) + 1e-3);
    }
}

TEST_CASE("pure-state bound") {
    CHECK(pure_state_bound(complex{}, complex{1.0, 0.0}) == 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(pure_state_bound(complex{r, 0.0}, complex{0.0, r}) == doctest::Approx(0.75));
    CHECK(pure_state_bound(complex{0.0, std::sqrt(3.0 / 7.0)}, complex{std::sqrt(4.0 / 7.0), 0.0}) ==
          doctest::Approx(12.0 / 49.0 + 2.0 * std::sqrt(3.0) / 7.0).epsilon(1e-14));
}

TEST_CASE("gibbs-versus-product distance") {
    const ModelParams p = ModelParams::detuned(3.0, 0.5, 6.0);
    const double beta = 5.0;

    SUBCASE("zero at t = 0") { CHECK(gibbs_product_distance(p, beta, 0.0) == 0.0); }

    SUBCASE("population formula equals the generic evolution") {
        const GibbsData gd = gibbs_data(p, beta);
        const TotalState gibbs = gibbs_state(p, beta);
        const TotalState prod = product_of_marginals(gibbs);
        for (int i = 1; i <= 30; ++i) {
            const double t = 0.9 * i;
            const double generic = trace_distance_qubit(reduced_state_at(gibbs, t, p),
                                                        reduced_state_at(prod, t, p));
            CHECK(std::abs(gibbs_product_distance(gd, t, p) - generic) <= 1e-9);
        }
    }
    SUBCASE("stays below the correlation bound") {
        const double bound = gibbs_correlations(p, beta);
        const GibbsData gd = gibbs_data(p, beta);
        for (int i = 0; i <= 400; ++i)
            CHECK(gibbs_product_distance(gd, 0.5 * i, p) <= bound + 1e-9);
    }
    SUBCASE("zero-detuning supremum between crossings is one quarter") {
        const ModelParams q = ModelParams::detuned(3.0, 0.0, 5.12);
        const GibbsData gd = gibbs_data(q, 100.0);
        const Supremum s = supremum_over_time(
            [&](double t) { return gibbs_product_distance(gd, t, q); }, TimeGrid{});
        CHECK(s.d_star == doctest::Approx(0.25).epsilon(4e-3));
    }
}

TEST_CASE("supremum search") {
    SUBCASE("constant evaluator") {
        TimeGrid grid;
        grid.t_max = 5.0;
        grid.steps = 50;
        const Supremum s = supremum_over_time([](double) { return 0.37; }, grid);
        CHECK(s.d_star == doctest::Approx(0.37));
    }
    SUBCASE("single sine peak is located to the time tolerance") {
        TimeGrid grid;
        grid.t_max = 2.5;
        grid.steps = 100;
        const Supremum s = supremum_over_time(
            [](double t) { return std::sin(t) * std::sin(t); }, grid);
        CHECK(s.d_star == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(s.t_star - pi / 2.0) <= 1e-6);
    }
    SUBCASE("never below the best grid sample, refinement can only help") {
        TimeGrid coarse;
        coarse.t_max = 10.0;
        coarse.steps = 37;
        coarse.refine = TimeGrid::Refine::none;
        TimeGrid fine = coarse;
        fine.refine = TimeGrid::Refine::local;
        const auto f = [](double t) { return std::sin(1.7 * t) * std::cos(0.3 * t) + 1.0; };
        CHECK(supremum_over_time(f, fine).d_star >= supremum_over_time(f, coarse).d_star);
    }
    SUBCASE("non-finite evaluator output aborts with the offending time") {
        TimeGrid grid;
        grid.t_max = 1.0;
        grid.steps = 10;
        CHECK_THROWS_WITH_AS(
            supremum_over_time([](double t) { return t > 0.55 ? std::nan("") : 0.0; }, grid),
            doctest::Contains("non-finite"), std::runtime_error);
    }
}

TEST_CASE("large-coupling estimate") {
    CHECK(large_coupling_estimate(3, 11.0, 0.0) == 0.0);
    for (int k : {1, 4, 9})
        for (double t : {0.3, 1.7, 42.0}) CHECK(large_coupling_estimate(k, 17.3, t) <= 0.25);
    CHECK_THROWS_AS(large_coupling_estimate(0, 1.0, 1.0), std::invalid_argument);

    // tracks the exact trajectory at strong coupling and low temperature
    const ModelParams p = ModelParams::detuned(3.0, 0.5, 20.0);
    const GibbsData gd = gibbs_data(p, 100.0);
    const int k = ground_level_index(20.0, p).index;
    double dev = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double t = (5.0 / p.g) * i / 200.0;
        dev = std::max(dev,
                       std::abs(gibbs_product_distance(gd, t, p) - large_coupling_estimate(k, p.g, t)));
    }
    CHECK(dev <= 0.05);
}

TEST_CASE("zero-temperature correlations") {
    const ModelParams p = ModelParams::detuned(3.0, 0.5, 0.0);

    SUBCASE("piecewise plateaus") {
        CHECK(zero_temperature_correlations(p, 1.7) == 0.0);
        const double x = 30.25 / 121.25;
        CHECK(zero_temperature_correlations(p, 5.5) ==
              doctest::Approx(x + std::sqrt(x)).epsilon(1e-12));
    }
    SUBCASE("dips at the crossings sit below both plateaus") {
        for (int i : {2, 3}) {
            const double gi = critical_coupling(i, p);
            const double dip = zero_temperature_correlations(p, gi);
            const double left = zero_temperature_correlations(p, gi - 0.2);
            const double right = zero_temperature_correlations(p, gi + 0.2);
            CHECK(dip < left - 1e-3);
            CHECK(dip < right - 1e-3);
        }
    }
    SUBCASE("agrees with the cold thermal state away from crossings") {
        for (double g : {1.0, 2.5, 4.5, 5.5, 8.2, 10.5})
            CHECK(std::abs(zero_temperature_correlations(p, g) -
                           gibbs_correlations(p.with_coupling(g), 100.0)) <= 5e-3);
    }
    SUBCASE("matches the cold thermal state at the crossing itself") {
        const double g2 = critical_coupling(2, p);
        CHECK(std::abs(zero_temperature_correlations(p, g2) -
                       gibbs_correlations(p.with_coupling(g2), 100.0)) <= 5e-3);
    }
    SUBCASE("first crossing mixes the vacuum with the dressed state") {
        const double g1 = critical_coupling(1, p);
        const double at_crossing = zero_temperature_correlations(p, g1);
        // mixture of |0,0> and |Phi_1^->: strictly between zero and the plateau
        CHECK(at_crossing > 1e-3);
        CHECK(at_crossing < zero_temperature_correlations(p, g1 + 0.2));
        CHECK(std::abs(at_crossing - gibbs_correlations(p.with_coupling(g1), 100.0)) <= 5e-3);
    }
}

TEST_CASE("level diagram") {
    const ModelParams p = ModelParams::detuned(3.0, 0.5, 0.0);
    const std::vector<double> g_grid = linspace(0.0, 12.0, 601);
    const SweepTable tab = level_diagram(p, g_grid, 4);
    CHECK(tab.all_finite());
    CHECK(tab.n_cols() == 5);

    for (std::size_t ig = 0; ig < g_grid.size(); ++ig) CHECK(tab.value(ig, 0) == 0.0);

    // E_1^- changes sign at the first critical coupling
    const double g1 = critical_coupling(1, p);
    for (std::size_t ig = 0; ig + 1 < g_grid.size(); ++ig) {
        if (tab.value(ig, 1) >= 0.0 && tab.value(ig + 1, 1) < 0.0) {
            CHECK(std::abs(g_grid[ig] - g1) <= 0.03);
        }
    }
    // E_2^- crosses E_1^- at the second critical coupling
    const double g2 = critical_coupling(2, p);
    CHECK(g2 == doctest::Approx(7.24569).epsilon(1e-5));
    for (std::size_t ig = 0; ig + 1 < g_grid.size(); ++ig) {
        const double d0 = tab.value(ig, 2) - tab.value(ig, 1);
        const double d1 = tab.value(ig + 1, 2) - tab.value(ig + 1, 1);
        if (d0 >= 0.0 && d1 < 0.0) CHECK(std::abs(g_grid[ig] - g2) <= 0.03);
    }
}

TEST_CASE("sweep engine") {
    const ModelParams p = ModelParams::detuned(3.0, 0.5, 0.0);

    SUBCASE("correlations against temperature reproduce the two regimes") {
        const std::vector<double> betas = {0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0};
        const SweepTable weak =
            sweep(SweepQuantity::gibbs_correlations, {1.7}, betas, p, TimeGrid{}, 1e-10);
        // below the critical coupling: a peak followed by decay to zero
        double peak = 0.0;
        for (int ib = 0; ib < weak.n_cols(); ++ib) peak = std::max(peak, weak.value(0, ib));
        CHECK(peak > 0.1);
        CHECK(weak.value(0, weak.n_cols() - 1) < 0.01);
        CHECK(weak.value(0, weak.n_cols() - 1) < peak / 10.0);

        const SweepTable strong =
            sweep(SweepQuantity::gibbs_correlations, {5.5}, betas, p, TimeGrid{}, 1e-10);
        // above it: monotone growth to the plateau
        for (int ib = 1; ib < strong.n_cols(); ++ib)
            CHECK(strong.value(0, ib) >= strong.value(0, ib - 1) - 1e-9);
        CHECK(strong.value(0, strong.n_cols() - 1) == doctest::Approx(0.74897).epsilon(1e-2));
    }

    SUBCASE("supremum surface dips near the second crossing at low temperature") {
        TimeGrid tg;
        tg.t_max = 100.0;
        tg.steps = 4000;
        const std::vector<double> g_grid = linspace(6.9, 7.7, 41);
        const SweepTable tab = sweep(SweepQuantity::supremum_of_gibbs_product_distance, g_grid,
                                     {100.0}, p, tg, default_tail_tol, 2);
        std::size_t imin = 0;
        for (std::size_t ig = 0; ig < g_grid.size(); ++ig)
            if (tab.value(ig, 0) < tab.value(imin, 0)) imin = ig;
        CHECK(std::abs(g_grid[imin] - critical_coupling(2, p)) <= 0.1);
    }

    SUBCASE("zero-temperature sweep ignores the beta grid") {
        const SweepTable tab =
            sweep(SweepQuantity::zero_t_correlations, {1.0, 5.5}, {}, p, TimeGrid{});
        CHECK(tab.value(0, 0) == 0.0);
        CHECK(tab.value(1, 0) == doctest::Approx(0.748969).epsilon(1e-4));
    }

    SUBCASE("per-point failures carry the grid coordinates") {
        CHECK_THROWS_WITH_AS(sweep(SweepQuantity::gibbs_correlations, {1.0}, {-3.0}, p, TimeGrid{}),
                             doctest::Contains("beta"), std::runtime_error);
    }

    SUBCASE("threaded evaluation matches serial") {
        const std::vector<double> g_grid = linspace(1.0, 9.0, 9);
        const std::vector<double> betas = {1.0, 5.0};
        const SweepTable serial =
            sweep(SweepQuantity::gibbs_correlations, g_grid, betas, p, TimeGrid{}, 1e-12, 1);
        const SweepTable parallel =
            sweep(SweepQuantity::gibbs_correlations, g_grid, betas, p, TimeGrid{}, 1e-12, 4);
        for (std::size_t k = 0; k < serial.values.size(); ++k)
            CHECK(serial.values[k] == parallel.values[k]);
    }
}

TEST_CASE("time grid validation") {
    TimeGrid bad;
    bad.t_max = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.t_max = 1.0;
    bad.steps = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
