#include <doctest.h>

#include <cmath>
#include <vector>

#include "tsvolterra/calculus.hpp"

using namespace tsv;

namespace {

TimeScale integer_points(int lo, int hi) {
    std::vector<Component> c;
    for (int i = lo; i <= hi; ++i) {
        c.push_back(Component::point(i));
    }
    return TimeScale(std::move(c));
}

// independent oracle: e_p(t, t0) as the direct product of (1 + mu*p)
// over scattered grid points, times exp(p * continuous length)
double exp_product_oracle(const TimeScale& ts, const Grid& g, double p,
                          double t, double t0) {
    double prod = 1.0;
    double len = 0.0;
    for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        if (g[j] < t0 - 1e-14 || g[j] > t - 1e-14) {
            continue;
        }
        double mu = ts.mu(g[j]);
        if (mu > 0) {
            prod *= 1.0 + mu * p;
        } else {
            len += g[j + 1] - g[j];
        }
    }
    return prod * std::exp(p * len);
}

} // namespace

TEST_CASE("delta integral: component-measure oracle") {
    // oracle: integral of 1 = sum of interval lengths + sum of graininess
    auto ts = TimeScale({Component::interval(0, 1), Component::point(2)});
    Grid g(ts, 0.25);
    auto one = GridFunction::constant(g, 1.0);
    CHECK(delta_integral(one, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("delta integral: sum oracle on the integers") {
    auto ts = integer_points(0, 5);
    Grid g(ts, 1.0);
    auto id = GridFunction::sample(g, [](double t) { return t; });
    // closed form: 0+1+2+3+4 = n(n-1)/2 with n=5
    CHECK(delta_integral(id, 0.0, 5.0) == doctest::Approx(10.0));
    CHECK(delta_integral(id, 3.0, 3.0) == 0.0);
}

TEST_CASE("delta integral rejects off-grid endpoints") {
    auto ts = TimeScale({Component::interval(0, 1)});
    Grid g(ts, 0.5);
    auto one = GridFunction::constant(g, 1.0);
    CHECK_THROWS_AS(delta_integral(one, 0.3, 1.0), Error);
}

TEST_CASE("quadrature weights sum to the delta measure of [a,b)") {
    auto ts = TimeScale({Component::interval(0, 1), Component::point(1.5),
                         Component::interval(2, 2.75)});
    Grid g(ts, 0.2);
    QuadratureWeights w(g);
    // interval lengths 1 + 0.75, gaps 0.5 and 0.5
    CHECK(w.total() == doctest::Approx(2.75).epsilon(1e-14));
}

TEST_CASE("ts_exp: product oracle on the integers") {
    auto ts = integer_points(0, 10);
    Grid g(ts, 1.0);
    CHECK(ts_exp(g, 5.0, 3.0, 0.0) == doctest::Approx(216.0).epsilon(1e-12)); // 6^3
    CHECK(ts_exp(g, 5.0, 0.0, 0.0) == 1.0);
    for (int n = 0; n <= 10; ++n) {
        CHECK(ts_exp(g, 5.0, double(n), 0.0) ==
              doctest::Approx(exp_product_oracle(ts, g, 5.0, n, 0)).epsilon(1e-12));
    }
}

TEST_CASE("ts_exp: decomposition oracle on a mixed scale") {
    auto ts = TimeScale({Component::interval(0, 1), Component::point(2), Component::point(3)});
    Grid g(ts, 0.05);
    // exp(5) over [0,1], factor 6 at the 1->2 gap, factor 6 at 2->3
    CHECK(ts_exp(g, 5.0, 3.0, 0.0) ==
          doctest::Approx(36.0 * std::exp(5.0)).epsilon(1e-12));
}

TEST_CASE("ts_exp: non-regressive coefficient rejected") {
    auto ts = integer_points(0, 3);
    Grid g(ts, 1.0);
    CHECK_THROWS_AS(ts_exp(g, -1.0, 3.0, 0.0), Error); // 1 + mu*p = 0
    CHECK_THROWS_AS(ts_exp(g, -2.0, 3.0, 0.0), Error);
    CHECK(ts_exp(g, -0.5, 1.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("ts_exp: hZ closed form (1+hp)^n") {
    const double h = 0.5, p = 5.0;
    std::vector<Component> c;
    for (int i = 0; i <= 10; ++i) {
        c.push_back(Component::point(i * h));
    }
    TimeScale ts(std::move(c));
    Grid g(ts, 1.0);
    for (int n = 0; n <= 10; ++n) {
        CHECK(ts_exp(g, p, n * h, 0.0) ==
              doctest::Approx(std::pow(1 + h * p, n)).epsilon(1e-10));
    }
}

TEST_CASE("exponential identity residual") {
    SUBCASE("t = a vanishes exactly") {
        auto ts = integer_points(0, 5);
        Grid g(ts, 1.0);
        CHECK(exp_identity_residual(g, 5.0, 0, 0) == 0.0);
    }
    SUBCASE("telescoping is exact on pure discrete scales") {
        auto ts = integer_points(0, 5);
        Grid g(ts, 1.0);
        CHECK(exp_identity_residual(g, 5.0, 5, 0) <= 1e-12);
    }
    SUBCASE("trapezoid accuracy on [0,1]") {
        auto ts = TimeScale({Component::interval(0, 1)});
        Grid g(ts, 1e-3);
        std::size_t last = g.size() - 1;
        CHECK(exp_identity_residual(g, 5.0, last, 0) <= 1e-5);
        // and the closed-form right-hand side really is 1 - e^{-5}
        CHECK(1.0 - 1.0 / ts_exp(g, 5.0, last, 0) ==
              doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-10));
    }
}

TEST_CASE("bernoulli gap") {
    SUBCASE("t = a") {
        auto ts = integer_points(0, 10);
        Grid g(ts, 1.0);
        CHECK(bernoulli_gap(g, 5.0, 0) == 0.0);
    }
    SUBCASE("integers: product oracle 6^2 vs 1+5*2") {
        auto ts = integer_points(0, 10);
        Grid g(ts, 1.0);
        CHECK(bernoulli_gap(g, 5.0, 2) == doctest::Approx(25.0));
    }
    SUBCASE("interval: e^5 - 6") {
        auto ts = TimeScale({Component::interval(0, 1)});
        Grid g(ts, 1e-3);
        CHECK(bernoulli_gap(g, 5.0, g.size() - 1) ==
              doctest::Approx(std::exp(5.0) - 6.0).epsilon(1e-10));
    }
    SUBCASE("nonnegative everywhere for p > 0") {
        auto ts = TimeScale({Component::interval(0, 0.4), Component::point(0.7),
                             Component::interval(1, 1.6), Component::point(2)});
        Grid g(ts, 0.13);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(bernoulli_gap(g, 2.5, i) >= -1e-12);
        }
    }
}
