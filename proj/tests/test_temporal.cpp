#include "cocite/error.hpp"
#include "cocite/temporal.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace cocite;
using namespace testsupport;

TEST_CASE("burst DP equals exhaustive enumeration for every length up to 12") {
    std::mt19937_64 rng(17);
    for (int len = 1; len <= 12; ++len) {
        for (int trial = 0; trial < 25; ++trial) {
            std::map<int, int> base;
            std::map<int, int> series;
            for (int y = 0; y < len; ++y) {
                const int n = 1 + static_cast<int>(rng() % 40);
                base[2000 + y] = n;
                series[2000 + y] = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
            }
            for (const double gamma : {0.0, 0.5, 1.0, 2.0}) {
                const auto model = make_burst_model(series, base, {2.0, gamma});
                if (model.p0 <= 0.0) continue;
                CHECK(sequence_cost(model, optimal_states(model)) == enumerate_min_cost(model));
            }
        }
    }
}

TEST_CASE("flat series has no burst") {
    const auto r = detect_bursts(flat(11, 10), flat(11, 100));
    CHECK(r.intervals.empty());
    CHECK(r.burstness == 0.0);
}

TEST_CASE("eight quiet years then three hot years give one interval") {
    std::map<int, int> series;
    for (int y = 0; y < 11; ++y) series[2000 + y] = y < 8 ? 2 : 30;
    const auto r = detect_bursts(series, flat(11, 100));
    REQUIRE(r.intervals.size() == 1);
    CHECK(r.intervals[0].start_year == 2008);
    CHECK(r.intervals[0].end_year == 2010);
    CHECK(r.burstness == r.intervals[0].weight);
    CHECK(r.burstness > 0.0);
}

TEST_CASE("zero baseline is flagged") {
    const auto r = detect_bursts({}, flat(5, 10));
    CHECK(r.no_baseline);
    CHECK(r.intervals.empty());
}

TEST_CASE("burst model input validation") {
    CHECK_THROWS_AS(detect_bursts({{2000, 1}}, {}), InvalidArgument);
    CHECK_THROWS_AS(detect_bursts({{2000, 5}}, {{2000, 3}}), InvalidArgument);
    CHECK_THROWS_AS(detect_bursts({{2000, 1}}, {{2000, 3}, {2002, 3}}), InvalidArgument);
    CHECK_THROWS_AS(detect_bursts({{1999, 1}}, {{2000, 3}}), InvalidArgument);
    CHECK_THROWS_AS(detect_bursts({}, flat(3, 1), {1.0, 1.0}), InvalidArgument);
}

TEST_CASE("intervals are chronological, disjoint and positive (property)") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int len = 3 + static_cast<int>(rng() % 15);
        std::map<int, int> base;
        std::map<int, int> series;
        for (int y = 0; y < len; ++y) {
            base[1990 + y] = 50;
            series[1990 + y] = static_cast<int>(rng() % 20);
        }
        const auto r = detect_bursts(series, base);
        double max_w = 0.0;
        for (std::size_t i = 0; i < r.intervals.size(); ++i) {
            CHECK(r.intervals[i].start_year <= r.intervals[i].end_year);
            CHECK(r.intervals[i].weight > 0.0);
            if (i > 0) CHECK(r.intervals[i - 1].end_year + 1 < r.intervals[i].start_year);
            max_w = std::max(max_w, r.intervals[i].weight);
        }
        CHECK(r.burstness == max_w);
    }
}

TEST_CASE("sigma identities and monotonicity") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double c = u(rng);
        const double b = u(rng);
        CHECK(sigma(c, 0.0) == 1.0);
        CHECK(sigma(0.0, b) == 1.0);
    }
    for (double c = 0.0; c <= 1.0; c += 0.05) {
        for (double b = 0.0; b <= 20.0; b += 0.5) {
            CHECK(sigma(c + 0.05, b) >= sigma(c, b));
            CHECK(sigma(c, b + 0.5) >= sigma(c, b));
        }
    }
    CHECK_THROWS_AS(sigma(-0.1, 1.0), InvalidArgument);
}

TEST_CASE("time span reproduces the published examples") {
    const struct {
        int citer;
        int member;
        double tau;
    } cases[] = {{2000, 1973, 28}, {2000, 1979, 22}, {2000, 1992, 9}, {2003, 1999, 5}, {2007, 2005, 3}};
    for (const auto& c : cases) {
        const auto span = time_span(0, {static_cast<double>(c.member)}, {c.citer});
        CHECK(span.tau == c.tau);
    }
    const auto span = time_span(4, {1990.0, 1994.0}, {2000, 2002, 2004});
    CHECK(span.mean_member_year == 1992.0);
    CHECK(span.mean_citer_year == 2002.0);
    CHECK(span.tau == 11.0);
    CHECK_THROWS_AS(time_span(0, {1990.0}, {}), InvalidArgument);
}
