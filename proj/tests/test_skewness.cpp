#include <doctest.h>

#include <cmath>

#include "iftsim/error.hpp"
#include "iftsim/skewness.hpp"

using namespace ift;

TEST_SUITE_BEGIN("skewness");

namespace {

// brute-force moment oracle
double gamma_oracle(const std::vector<double>& e, int offset = 0) {
    double tot = 0;
    for (double v : e) tot += v;
    double mu = 0;
    for (size_t j = 0; j < e.size(); ++j) mu += (offset + double(j)) * e[j] / tot;
    double v2 = 0, v3 = 0;
    for (size_t j = 0; j < e.size(); ++j) {
        double x = offset + double(j) - mu;
        v2 += x * x * e[j] / tot;
        v3 += x * x * x * e[j] / tot;
    }
    return v3 / std::pow(v2, 1.5);
}

} // namespace

TEST_CASE("window selection on the left half") {
    std::vector<double> e{0, 0, 1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    auto w = select_window(e, {}, 0.5, LatticeHalf::Left);
    REQUIRE(w.has_value());
    CHECK(w->lo == 2);
    CHECK(w->hi == 4);
}

TEST_CASE("cutoff above the maximum leaves no window") {
    std::vector<double> e{0.1, 0.2, 0.1, 0.0, 0.0, 0.0};
    CHECK_FALSE(select_window(e, {}, 0.5, LatticeHalf::Left).has_value());
}

TEST_CASE("sigma lifts sites over the cutoff") {
    std::vector<double> e{0.0, 0.4, 0.4, 0.0, 0.0, 0.0};
    std::vector<double> s{0.0, 0.2, 0.2, 0.0, 0.0, 0.0};
    auto w = select_window(e, s, 0.5, LatticeHalf::Left);
    REQUIRE(w.has_value());
    CHECK(w->lo == 1);
    CHECK(w->hi == 2);
}

TEST_CASE("the longest run wins") {
    std::vector<double> e{1.0, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    auto w = select_window(e, {}, 0.5, LatticeHalf::Left);
    REQUIRE(w.has_value());
    CHECK(w->lo == 2);
    CHECK(w->hi == 4);
}

TEST_CASE("symmetric profiles have zero skewness") {
    CHECK(skewness({1, 2, 3, 2, 1}) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(skewness({1, 1, 1}) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("mass at low index skews right") {
    std::vector<double> e{3, 2, 1};
    double g = skewness(e);
    CHECK(g > 0.0);
    CHECK(g == doctest::Approx(gamma_oracle(e)).epsilon(1e-12));
    // frozen oracle value: third moment 7/27, variance 5/9
    CHECK(g == doctest::Approx((7.0 / 27.0) / std::pow(5.0 / 9.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("reflection flips the sign exactly") {
    std::vector<double> e{0.2, 0.9, 0.5, 0.1, 0.05};
    std::vector<double> r(e.rbegin(), e.rend());
    CHECK(skewness(e) == doctest::Approx(-skewness(r)).epsilon(1e-12));
}

TEST_CASE("scale invariance") {
    std::vector<double> e{0.3, 0.8, 0.2, 0.05};
    std::vector<double> s;
    for (double v : e) s.push_back(17.3 * v);
    CHECK(skewness(e) == doctest::Approx(skewness(s)).epsilon(1e-12));
}

TEST_CASE("translation covariance through the index offset") {
    std::vector<double> e{0.3, 0.8, 0.2, 0.05};
    CHECK(skewness(e, 0) == doctest::Approx(skewness(e, 25)).epsilon(1e-10));
}

TEST_CASE("degenerate windows are rejected") {
    CHECK_THROWS_AS(skewness({1.0, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(skewness({0.0, 0.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(skewness({-1.0, 3.0, -1.9, -0.2}), InvalidArgument);
}

TEST_CASE("sweep zeroes out when the peak sits at the midpoint") {
    std::vector<double> e(14, 0.0);
    e[7] = 1.0; // L/2
    e[3] = 0.4;
    e[4] = 0.5;
    e[5] = 0.45;
    auto rep = skewness_sweep(e, {}, 0.1, 0.3, 0.05, LatticeHalf::Left, 0);
    CHECK(rep.zeroed);
    CHECK(rep.gamma == 0.0);
}

TEST_CASE("sweep zeroes out when nothing clears the cutoffs") {
    std::vector<double> e(10, 0.01);
    e[2] = 0.02;
    auto rep = skewness_sweep(e, {}, 0.5, 0.6, 0.05, LatticeHalf::Left, 0);
    CHECK(rep.zeroed);
}

TEST_CASE("sweep aggregates the cutoff band and combines errors in quadrature") {
    std::vector<double> e{0.0, 0.3, 0.9, 0.5, 0.25, 0.1, 0.0, 0.0, 0.0, 0.0};
    std::vector<double> s(e.size(), 0.02);
    auto rep = skewness_sweep(e, s, 0.05, 0.25, 0.05, LatticeHalf::Left, 200, 5);
    CHECK_FALSE(rep.zeroed);
    double lo = 1e300, hi = -1e300;
    for (double g : rep.gamma_eps) {
        if (std::isnan(g)) continue;
        lo = std::min(lo, g);
        hi = std::max(hi, g);
    }
    CHECK(rep.gamma == doctest::Approx((lo + hi) / 2).epsilon(1e-12));
    CHECK(rep.cutoff_spread == doctest::Approx((hi - lo) / 2).epsilon(1e-12));
    CHECK(rep.error == doctest::Approx(std::sqrt(rep.cutoff_spread * rep.cutoff_spread +
                                                 rep.sigma_bootstrap * rep.sigma_bootstrap))
                           .epsilon(1e-12));
}

TEST_SUITE_END();
