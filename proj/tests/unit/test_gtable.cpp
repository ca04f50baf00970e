#include "zenoscat/gtable.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>

using namespace zenoscat;

TEST_CASE("table validation") {
    CHECK_THROWS(TransitionProbabilityTable(0, {1.0, 1.0}, {1.0, 2.0}));
    CHECK_THROWS(TransitionProbabilityTable(0, {1.0, 2.0}, {1.0, -2.0}));
    CHECK_THROWS(TransitionProbabilityTable(0, {-1.0, 2.0}, {1.0, 2.0}));
    CHECK_THROWS(TransitionProbabilityTable(0, {1.0, 2.0}, {1.0}));
    CHECK_NOTHROW(TransitionProbabilityTable(0, {-1.0, 2.0}, {0.0, 2.0}));
}

TEST_CASE("linear interpolation, zero below threshold, undefined above the grid") {
    TransitionProbabilityTable t(-1, {0.01, 0.02, 0.04}, {1.0, 3.0, 2.0});
    CHECK(t.value(-0.5).value() == 0.0);
    CHECK(t.value(0.0).value() == 0.0);
    CHECK(t.value(0.005).value() == doctest::Approx(0.5));
    CHECK(t.value(0.01).value() == 1.0);
    CHECK(t.value(0.015).value() == doctest::Approx(2.0));
    CHECK(t.value(0.03).value() == doctest::Approx(2.5));
    CHECK(t.value(0.04).value() == 2.0);
    CHECK_FALSE(t.value(0.0401).has_value());
    CHECK_THROWS(t(0.05));
}

TEST_CASE("log-spaced monotone interpolation reproduces power laws between nodes") {
    std::vector<double> E, G;
    for (int i = 0; i <= 40; ++i) {
        E.push_back(1e-5 * std::pow(10.0, i / 10.0));
        G.push_back(std::pow(E.back(), 2.5));
    }
    TransitionProbabilityTable t(0, E, G, GInterpolation::pchip_log);
    for (double e : {1.7e-5, 3.3e-4, 5.5e-2}) CHECK(t(e) == doctest::Approx(std::pow(e, 2.5)).epsilon(2e-2));
    for (std::size_t i = 0; i < E.size(); ++i) CHECK(t(E[i]) == doctest::Approx(G[i]).epsilon(1e-14));
}

TEST_CASE("normalization and CSV round trip") {
    TransitionProbabilityTable t(0, {0.001, 0.002, 0.005}, {2.0, 4.0, 6.0});
    t.normalize_to(0.002, 1.0);
    CHECK(t(0.005) == doctest::Approx(1.5));
    REQUIRE(t.reference.has_value());
    const auto csv = t.to_csv();
    CHECK(csv.rfind("E_out_K,G_rel\n", 0) == 0);
    const auto back = TransitionProbabilityTable::from_csv(csv, 0);
    CHECK(back == t);
    const std::string path = "gtable_roundtrip.csv";
    t.save(path);
    CHECK(TransitionProbabilityTable::load(path, 0) == t);
    std::remove(path.c_str());
    CHECK_THROWS(TransitionProbabilityTable::from_csv("E_out_K,G_rel\n0.1,abc\n", 0));
}
