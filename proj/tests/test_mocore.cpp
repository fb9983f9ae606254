#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "microgrid/mocore.hpp"
#include "microgrid/rng.hpp"

using namespace microgrid;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// O(n^2) peeling oracle, independent of the production sort.
std::vector<std::vector<std::size_t>> brute_force_fronts(
    const std::vector<std::vector<double>>& objs) {
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<bool> assigned(objs.size(), false);
    std::size_t remaining = objs.size();
    while (remaining > 0) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < objs.size(); ++i) {
            if (assigned[i]) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < objs.size() && !dominated; ++j)
                if (!assigned[j] && j != i && dominates(objs[j], objs[i]))
                    dominated = true;
            if (!dominated) front.push_back(i);
        }
        for (std::size_t i : front) assigned[i] = true;
        remaining -= front.size();
        fronts.push_back(std::move(front));
    }
    return fronts;
}

ScoredSolution make_solution(double f, double ce) {
    ScoredSolution s;
    s.objectives = {f, ce, 0.0};
    s.penalized = {f, ce};
    return s;
}

}  // namespace

TEST_CASE("dominance basics") {
    CHECK(dominates(ObjectivePair{1, 2}, ObjectivePair{2, 3}));
    CHECK(!dominates(ObjectivePair{1, 3}, ObjectivePair{3, 1}));
    CHECK(!dominates(ObjectivePair{3, 1}, ObjectivePair{1, 3}));
    CHECK(!dominates(ObjectivePair{1, 1}, ObjectivePair{1, 1}));  // irreflexive
    CHECK(dominates(ObjectivePair{1, 1}, ObjectivePair{1, 2}));   // weak + strict
}

TEST_CASE("dominance is irreflexive, antisymmetric, transitive") {
    rng::Stream s(11);
    for (int trial = 0; trial < 20000; ++trial) {
        // small integer coordinates force plenty of ties
        auto draw = [&] {
            return ObjectivePair{double(s.integer(5)), double(s.integer(5))};
        };
        const auto a = draw(), b = draw(), c = draw();
        CHECK(!dominates(a, a));
        if (dominates(a, b)) CHECK(!dominates(b, a));
        if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
    }
}

TEST_CASE("non-dominated sort basics") {
    const std::vector<ObjectivePair> single = {{1, 1}};
    auto fronts = non_dominated_sort(std::span<const ObjectivePair>(single));
    REQUIRE(fronts.size() == 1);
    CHECK(fronts[0] == std::vector<std::size_t>{0});

    const std::vector<ObjectivePair> two = {{1, 1}, {2, 2}};
    fronts = non_dominated_sort(std::span<const ObjectivePair>(two));
    REQUIRE(fronts.size() == 2);
    CHECK(fronts[0] == std::vector<std::size_t>{0});
    CHECK(fronts[1] == std::vector<std::size_t>{1});
}

TEST_CASE("non-dominated sort matches the brute-force oracle") {
    rng::Stream s(23);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + s.integer(200);
        const int m = 2 + int(s.integer(2));  // 2 or 3 objectives
        std::vector<std::vector<double>> objs(n, std::vector<double>(m));
        for (auto& o : objs)
            for (auto& v : o) v = double(s.integer(20));
        const auto fronts = non_dominated_sort(std::span<const std::vector<double>>(objs));
        const auto expected = brute_force_fronts(objs);
        REQUIRE(fronts.size() == expected.size());
        for (std::size_t f = 0; f < fronts.size(); ++f) {
            auto got = fronts[f];
            auto want = expected[f];
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            CHECK(got == want);
        }
        // partition property: every index exactly once
        std::set<std::size_t> seen;
        for (const auto& f : fronts) seen.insert(f.begin(), f.end());
        CHECK(seen.size() == n);
    }
}

TEST_CASE("crowding distance") {
    const std::vector<ObjectivePair> pair = {{0, 1}, {1, 0}};
    for (double d : crowding_distance(pair)) CHECK(std::isinf(d));

    const std::vector<ObjectivePair> three = {{0, 2}, {1, 1}, {2, 0}};
    const auto d = crowding_distance(three);
    CHECK(std::isinf(d[0]));
    CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::isinf(d[2]));

    const std::vector<ObjectivePair> dup = {{0, 3}, {1, 1}, {1, 1}, {3, 0}};
    const auto dd = crowding_distance(dup);
    CHECK(std::isinf(dd[0]));
    CHECK(dd[1] > 0.0);
    CHECK(dd[2] == 0.0);  // duplicate scores zero
    CHECK(std::isinf(dd[3]));
}

TEST_CASE("normalization") {
    const std::vector<ObjectivePair> vals = {{10, 1}, {20, 1}, {30, 1}};
    const auto norm = normalize(vals);
    CHECK(norm[0][0] == 0.0);
    CHECK(norm[1][0] == 0.5);
    CHECK(norm[2][0] == 1.0);
    for (const auto& v : norm) CHECK(v[1] == 0.5);  // degenerate column

    // affine transforms of the inputs leave the outputs unchanged
    std::vector<ObjectivePair> scaled = vals;
    for (auto& v : scaled) v = {v[0] * 7.0 + 3.0, v[1]};
    const auto norm2 = normalize(scaled);
    for (std::size_t i = 0; i < vals.size(); ++i)
        CHECK(norm2[i][0] == doctest::Approx(norm[i][0]).epsilon(1e-12));
}

TEST_CASE("hypervolume") {
    const std::vector<ObjectivePair> one = {{1, 1}};
    CHECK(hypervolume_2d(one, {2, 2}) == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<ObjectivePair> two = {{0, 1}, {1, 0}};
    CHECK(hypervolume_2d(two, {2, 2}) == doctest::Approx(3.0).epsilon(1e-12));

    // order invariance
    const std::vector<ObjectivePair> reversed = {{1, 0}, {0, 1}};
    CHECK(hypervolume_2d(reversed, {2, 2}) == doctest::Approx(3.0).epsilon(1e-12));

    // monotone under adding a non-dominated point
    const std::vector<ObjectivePair> three = {{0, 1}, {1, 0}, {0.4, 0.4}};
    CHECK(hypervolume_2d(three, {2, 2}) >= 3.0);

    // dominated points change nothing
    const std::vector<ObjectivePair> with_dominated = {{0, 1}, {1, 0}, {1.5, 1.5}};
    CHECK(hypervolume_2d(with_dominated, {2, 2}) == doctest::Approx(3.0).epsilon(1e-12));

    const std::vector<ObjectivePair> outside = {{3, 3}};
    CHECK_THROWS_AS(hypervolume_2d(outside, {2, 2}), std::invalid_argument);

    CHECK(hypervolume_2d(std::span<const ObjectivePair>{}, {2, 2}) == 0.0);
}

TEST_CASE("archive: accept, reject, evict") {
    ParetoArchive arch(10);
    CHECK(arch.insert(make_solution(1, 1)));
    CHECK(!arch.insert(make_solution(2, 2)));       // dominated
    CHECK(!arch.insert(make_solution(1, 1)));       // duplicate
    CHECK(arch.insert(make_solution(0.5, 1.5)));    // incomparable
    CHECK(arch.insert(make_solution(0.5, 0.5)));    // dominates both
    CHECK(arch.size() == 1);
    CHECK(arch.members()[0].penalized == ObjectivePair{0.5, 0.5});
}

TEST_CASE("archive capacity eviction follows the crowding rule") {
    ParetoArchive arch(3);
    const std::vector<ObjectivePair> pts = {{0, 10}, {10, 0}, {3, 6}, {6, 2}};
    for (const auto& p : pts) CHECK(arch.insert(make_solution(p[0], p[1])));
    CHECK(arch.size() == 3);

    // oracle: the evicted member is the lowest-crowding one over the union
    const auto crowd = crowding_distance(pts);
    std::size_t expect_evicted = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (crowd[i] < crowd[expect_evicted]) expect_evicted = i;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool present =
            std::any_of(arch.members().begin(), arch.members().end(),
                        [&](const ScoredSolution& m) { return m.penalized == pts[i]; });
        CHECK(present == (i != expect_evicted));
    }
}

TEST_CASE("archive invariants under randomized insertion") {
    rng::Stream s(31);
    ParetoArchive arch(40);
    double last_hv = 0.0;
    const ObjectivePair ref{110.0, 110.0};
    for (int i = 0; i < 2000; ++i) {
        const double f = s.uniform(0.0, 100.0);
        const double ce = s.uniform(0.0, 100.0);
        arch.insert(make_solution(f, ce));
        CHECK(arch.size() <= arch.capacity());
        const auto& m = arch.members();
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = 0; b < m.size(); ++b)
                if (a != b) CHECK(!dominates(m[a].penalized, m[b].penalized));
        if (i % 100 == 0) {
            const double hv = hypervolume_2d(arch.objective_points(), ref);
            CHECK(hv >= last_hv - 1e-9);
            last_hv = hv;
        }
    }
}
