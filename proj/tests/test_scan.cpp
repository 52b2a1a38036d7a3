#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <cstring>
#include <functional>

#include "qbell/scan.hpp"

using namespace qbell;

namespace {

double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("two-party scan") {
    ScanGrid grid;
    SUBCASE("Shannon-case landmark") {
        const auto s = scan_chsh(QOrder(1.0), grid);
        CHECK(std::abs(s.best.max_cq_relative - 0.2369) < 1e-3);
        // The true stationary point of the objective, frozen from a
        // high-precision root of its derivative.
        CHECK(std::abs(s.best.argmax.at(0).second - 0.9140505) < 1e-4);
        CHECK(s.series.size() == 400);
    }
    SUBCASE("the maximum moves right as q grows") {
        const double g1 = scan_chsh(QOrder(1.0), grid).best.argmax.at(0).second;
        const double g23 = scan_chsh(QOrder(2.3), grid).best.argmax.at(0).second;
        CHECK(g23 > g1);
    }
    SUBCASE("refinement never loses to the coarse grid") {
        ScanGrid tiny = grid;
        tiny.points_per_axis = 7;
        const auto s = scan_chsh(QOrder(1.3), tiny);
        double coarse_best = -1e300;
        for (const auto& [g, c] : s.series) coarse_best = std::max(coarse_best, c);
        CHECK(s.best.max_cq_relative >= coarse_best - 1e-14);
    }
    SUBCASE("single-point grid degenerates to that point") {
        ScanGrid one = grid;
        one.points_per_axis = 1;
        one.gamma_range = {0.9, 0.9};
        const auto s = scan_chsh(QOrder(1.0), one);
        CHECK(s.best.argmax.at(0).second == doctest::Approx(0.9));
        CHECK(s.series.size() == 1);
    }
    SUBCASE("stationarity at the reported maximum") {
        const auto s = scan_chsh(QOrder(1.0), grid);
        const double g = s.best.argmax.at(0).second;
        const auto f = [](double x) { return chsh_cq(x, QOrder(1.0)).c_q; };
        CHECK(std::abs(central_diff(f, g, 1e-5)) < 1e-3);
    }
}

TEST_CASE("pentagon scan") {
    ScanGrid grid;
    SUBCASE("reference maxima") {
        const struct {
            double q, c, a, t;
        } rows[] = {{1.0, 0.0631, 0.1698, 0.2366}, {1.8, 0.1113, 0.2085, 0.3761}};
        for (const auto& r : rows) {
            const auto s = scan_kcbs(QOrder(r.q), grid);
            CHECK(std::abs(s.best.max_cq - r.c) < 1e-3);
            CHECK(std::abs(s.best.argmax.at(0).second - r.a) < 2e-3);
            CHECK(std::abs(s.best.argmax.at(1).second - r.t) < 2e-3);
        }
    }
    SUBCASE("determinism") {
        const auto a = scan_kcbs(QOrder(1.4), grid);
        const auto b = scan_kcbs(QOrder(1.4), grid);
        CHECK(std::memcmp(&a.best.max_cq, &b.best.max_cq, sizeof(double)) == 0);
        CHECK(a.best.argmax == b.best.argmax);
        REQUIRE(a.samples.size() == b.samples.size());
        CHECK(std::memcmp(a.samples.data(), b.samples.data(),
                          a.samples.size() * sizeof(a.samples[0])) == 0);
    }
    SUBCASE("interior maximum is stationary in both parameters") {
        const auto s = scan_kcbs(QOrder(2.0), grid);
        const double a = s.best.argmax.at(0).second;
        const double t = s.best.argmax.at(1).second;
        const auto fa = [&](double x) { return kcbs_cq(KcbsConfig(x, t), QOrder(2.0)).c_q; };
        const auto ft = [&](double x) { return kcbs_cq(KcbsConfig(a, x), QOrder(2.0)).c_q; };
        CHECK(std::abs(central_diff(fa, a, 1e-5)) < 1e-3);
        CHECK(std::abs(central_diff(ft, t, 1e-5)) < 1e-3);
    }
}

TEST_CASE("theta series") {
    CHECK(kcbs_theta_series(0.1885, QOrder(1.3), {}).empty());
    SUBCASE("no violation at theta = 0, violation near the peak") {
        const auto s = kcbs_theta_series(0.1885, QOrder(1.3), {0.0, 0.35, 0.45});
        CHECK(s.at(0).second <= 0.0);
        CHECK(std::max(s.at(1).second, s.at(2).second) > 0.0);
    }
}

TEST_CASE("q threshold") {
    SUBCASE("reference crossing") {
        const auto r = q_threshold(0.1885, 0.4765, {1.0, 3.0});
        REQUIRE(r.crossed);
        CHECK(std::abs(r.q_star - 1.13) < 5e-3);
    }
    SUBCASE("constant sign ranges") {
        CHECK_FALSE(q_threshold(0.1698, 0.2366, {1.0, 1.05}).crossed);
        CHECK_FALSE(q_threshold(0.1698, 0.2366, {1.0, 3.0}).crossed);
    }
}

TEST_CASE("ratios at scan maxima are self-consistent") {
    ScanGrid grid;
    grid.points_per_axis = 120;  // keep this test quick
    const auto ratios = table2_ratios({1.0, 2.0}, Efficiency(0.99), grid);
    REQUIRE(ratios.size() == 2);
    for (double qv : {1.0, 2.0}) {
        const auto s = scan_kcbs(QOrder(qv), grid);
        const KcbsConfig cfg(s.best.argmax.at(0).second, s.best.argmax.at(1).second);
        const auto rep = two_detector_report(cfg, Efficiency(0.99), QOrder(qv));
        REQUIRE(rep.ratio.has_value());
        CHECK(ratios.at(qv == 1.0 ? 0 : 1) == doctest::Approx(*rep.ratio).epsilon(1e-12));
    }
}

TEST_CASE("relative maximum rises then falls across orders") {
    ScanGrid grid;
    grid.points_per_axis = 150;
    const std::vector<double> qs = {1.0, 1.1, 1.2, 1.4, 1.6, 1.8,
                                    2.0, 2.5, 3.0, 5.0, 8.0, 11.0};
    std::vector<double> peaks;
    for (double qv : qs) peaks.push_back(scan_kcbs(QOrder(qv), grid).best.max_cq_relative);
    int direction_changes = 0;
    for (std::size_t i = 2; i < peaks.size(); ++i) {
        const bool was_rising = peaks[i - 1] > peaks[i - 2];
        const bool is_rising = peaks[i] > peaks[i - 1];
        if (was_rising != is_rising) ++direction_changes;
    }
    CHECK(direction_changes == 1);
    const auto argmax = std::max_element(peaks.begin(), peaks.end()) - peaks.begin();
    CHECK(qs.at(argmax) == doctest::Approx(2.0));
}

TEST_CASE("grid validation") {
    ScanGrid g;
    g.points_per_axis = 0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    ScanGrid g2;
    g2.alpha_range = {0.0, 0.5};
    CHECK_THROWS_AS(g2.validate(), std::invalid_argument);
    ScanGrid g3;
    g3.gamma_range = {0.5, 3.2};
    CHECK_THROWS_AS(g3.validate(), std::invalid_argument);
}
