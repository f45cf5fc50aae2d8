#include <doctest.h>

#include <vector>

#include "tsvolterra/timescale.hpp"

using namespace tsv;

namespace {

TimeScale integers_0_10() {
    std::vector<Component> c;
    for (int i = 0; i <= 10; ++i) {
        c.push_back(Component::point(i));
    }
    return TimeScale(std::move(c));
}

TimeScale unit_interval_plus_2() {
    return TimeScale({Component::interval(0, 1), Component::point(2)});
}

} // namespace

TEST_CASE("component validation") {
    CHECK_THROWS_AS(Component::interval(1, 1), Error);
    CHECK_THROWS_AS(Component::interval(2, 1), Error);
    CHECK_THROWS_AS(TimeScale({}), Error);
    // touching components are not disjoint
    CHECK_THROWS_AS(TimeScale({Component::interval(0, 1), Component::point(1)}), Error);
    CHECK_THROWS_AS(TimeScale({Component::point(2), Component::point(1)}), Error);
}

TEST_CASE("sigma") {
    auto z = integers_0_10();
    CHECK(z.sigma(3) == 4);
    CHECK(z.sigma(10) == 10); // max convention

    auto m = unit_interval_plus_2();
    CHECK(m.sigma(0.5) == 0.5); // right-dense interior
    CHECK(m.sigma(1) == 2);     // right-scattered interval endpoint
    CHECK(m.sigma(2) == 2);

    CHECK_THROWS_AS(m.sigma(1.5), Error);
}

TEST_CASE("mu") {
    auto m = unit_interval_plus_2();
    CHECK(m.mu(1) == 1);
    CHECK(m.mu(0.5) == 0);
    auto s = TimeScale({Component::point(0), Component::point(0.5), Component::point(1.5)});
    CHECK(s.mu(0.5) == 1);
}

TEST_CASE("classify") {
    auto m = unit_interval_plus_2();
    auto pc = m.classify(1);
    CHECK(pc.right == RightClass::Scattered);
    CHECK(pc.left == LeftClass::Dense);

    auto z = integers_0_10();
    auto pz = z.classify(5);
    CHECK(pz.right == RightClass::Scattered);
    CHECK(pz.left == LeftClass::Scattered);
    CHECK(z.classify(0).left == LeftClass::Min);
    CHECK(z.classify(10).right == RightClass::Max);

    auto r = TimeScale({Component::interval(0, 1)});
    auto pr = r.classify(0.3);
    CHECK(pr.right == RightClass::Dense);
    CHECK(pr.left == LeftClass::Dense);
}

TEST_CASE("build_grid") {
    auto r = TimeScale({Component::interval(0, 1)});
    Grid g1(r, 0.5);
    REQUIRE(g1.size() == 3);
    CHECK(g1[0] == 0.0);
    CHECK(g1[1] == 0.5);
    CHECK(g1[2] == 1.0);

    auto z = TimeScale({Component::point(0), Component::point(1), Component::point(2)});
    Grid g2(z, 0.01);
    REQUIRE(g2.size() == 3);
    CHECK(g2[1] == 1.0);
    CHECK_FALSE(g2.segment_is_interval(0));

    auto m = unit_interval_plus_2();
    Grid g3(m, 1.0);
    REQUIRE(g3.size() == 3);
    CHECK(g3[0] == 0.0);
    CHECK(g3[1] == 1.0);
    CHECK(g3[2] == 2.0);
    CHECK(g3.segment_is_interval(0));
    CHECK_FALSE(g3.segment_is_interval(1));

    CHECK_THROWS_AS(Grid(m, 0.0), Error);
    CHECK_THROWS_AS(Grid(m, -1.0), Error);
}

TEST_CASE("grid pairs are either in one interval or bridge a scattered gap") {
    auto m = TimeScale({Component::interval(0, 1), Component::point(1.5),
                        Component::interval(2, 3.25)});
    Grid g(m, 0.3);
    for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        CHECK(m.contains(g[j]));
        if (g.segment_is_interval(j)) {
            // both in the same interval: graininess 0 at the left point
            CHECK(m.sigma(g[j]) == g[j]);
        } else {
            CHECK(m.sigma(g[j]) == doctest::Approx(g[j + 1]).epsilon(1e-14));
        }
    }
    CHECK(m.contains(g[g.size() - 1]));
}

TEST_CASE("sigma is monotone on grid points") {
    auto m = TimeScale({Component::interval(0, 1), Component::point(2),
                        Component::interval(2.5, 3)});
    Grid g(m, 0.17);
    double prev = -1.0;
    for (double t : g.points()) {
        double s = m.sigma(t);
        CHECK(s >= t);
        CHECK(s >= prev);
        prev = s;
    }
}

TEST_CASE("truncation") {
    auto m = TimeScale({Component::interval(0, 1), Component::point(2), Component::point(3)});
    auto t1 = m.truncated(0.5);
    REQUIRE(t1.components().size() == 1);
    CHECK(t1.max() == 0.5);
    auto t2 = m.truncated(2.0);
    REQUIRE(t2.components().size() == 2);
    CHECK(t2.max() == 2.0);
    auto t3 = m.truncated(0.0); // degenerate: single point
    REQUIRE(t3.components().size() == 1);
    CHECK(t3.components()[0].is_point());
    CHECK_THROWS_AS(m.truncated(-1.0), Error);
}
